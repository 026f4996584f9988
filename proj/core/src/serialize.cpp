#include "qpir/serialize.hpp"

namespace qpir {

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const FieldElement& e : v) a.push_back(e.value());
    return a;
}

Vec vec_from_json(const json& j, const Field* field) {
    Vec v;
    for (const auto& x : j) v.push_back(field->element(x.get<uint64_t>()));
    return v;
}

json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) entries.push_back(m.at(r, c).value());
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j, const Field* field) {
    size_t rows = j.at("rows").get<size_t>();
    size_t cols = j.at("cols").get<size_t>();
    const json& entries = j.at("entries");
    if (entries.size() != rows * cols) throw Error("IoError", "matrix entry count mismatch");
    Matrix m(field, rows, cols);
    size_t i = 0;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = field->element(entries[i++].get<uint64_t>());
    return m;
}

json field_to_json(const Field* field) {
    return json{{"p", field->p()}, {"m", field->m()}, {"modulus", field->modulus()}};
}

FieldPtr field_from_json(const json& j) {
    return Field::make(j.at("p").get<uint64_t>(), j.at("m").get<uint32_t>(),
                       j.at("modulus").get<std::vector<uint32_t>>());
}

json code_to_json(const GrsCode& code) {
    return json{{"field", field_to_json(code.field)},
                {"locators", vec_to_json(code.locators)},
                {"multipliers", vec_to_json(code.multipliers)},
                {"dim", code.dim}};
}

GrsCode code_from_json(const json& j, const Field* field) {
    GrsCode code{field, vec_from_json(j.at("locators"), field),
                 vec_from_json(j.at("multipliers"), field), j.at("dim").get<size_t>()};
    code.validate();
    return code;
}

json transcript_to_json(const Transcript& tr, bool include_queries) {
    const SchemeParams& p = tr.params;
    json rounds = json::array();
    for (const RoundRecord& r : tr.rounds) {
        json jr{{"r", r.r + 1},
                {"J_r_b", r.j_rb},
                {"A", vec_to_json(r.A)},
                {"o", vec_to_json(r.o)}};
        if (include_queries) jr["Q"] = matrix_to_json(r.Q);
        rounds.push_back(std::move(jr));
    }
    json doc{{"params",
              {{"q", p.q}, {"n", p.n}, {"k", p.k}, {"t", p.t}, {"m", p.m},
               {"t_eff", p.t_eff}, {"n_eff", p.n_eff}, {"c", p.c}, {"beta", p.beta},
               {"rho", p.rho}, {"normalized", p.normalized}}},
             {"seed", tr.seed},
             {"K", tr.K + 1},
             {"rounds", rounds},
             {"decoded_file", matrix_to_json(tr.decoded)},
             {"q_in", tr.q_in},
             {"q_out", tr.q_out},
             {"rate", {{"num", tr.rate.num}, {"den", tr.rate.den}}}};
    if (tr.oracle_phase_sign != 0) doc["oracle_phase_sign"] = tr.oracle_phase_sign;
    return doc;
}

json privacy_report_to_json(const PrivacyReport& rep) {
    return json{{"collusion", rep.collusion},
                {"algebraic_ok", rep.algebraic_ok},
                {"chi_square", rep.chi_square},
                {"dof", rep.dof},
                {"p_value", rep.p_value},
                {"samples", rep.samples},
                {"distinguishable", rep.distinguishable}};
}

json lemma5_report_to_json(const Lemma5Report& rep) {
    json j{{"cond_a", rep.cond_a},
           {"cond_b", rep.cond_b},
           {"subsets_checked", rep.subsets_checked},
           {"exhaustive", rep.exhaustive}};
    if (rep.witness) j["witness"] = *rep.witness;
    return j;
}

Matrix files_from_json(const json& j, const SchemeParams& p, const Field* field) {
    if (!j.contains("files") || !j.at("files").is_array() || j.at("files").size() != p.m)
        throw Error("IoError", "input must hold \"files\": " + std::to_string(p.m) + " arrays");
    Matrix x(field, p.m * p.beta, 2 * p.k);
    for (size_t i = 0; i < p.m; ++i) {
        const json& file = j.at("files")[i];
        if (file.size() != p.file_symbols())
            throw Error("IoError", "file " + std::to_string(i + 1) + " must hold " +
                                       std::to_string(p.file_symbols()) + " symbols");
        // Symbol order: block b ascending, within a block the 2k columns.
        size_t idx = 0;
        for (size_t b = 0; b < p.beta; ++b)
            for (size_t col = 0; col < 2 * p.k; ++col)
                x.at(coord(i, b, p.beta, p.m), col) = field->element(file[idx++].get<uint64_t>());
    }
    return x;
}

json files_to_json(const Matrix& x, const SchemeParams& p) {
    json files = json::array();
    for (size_t i = 0; i < p.m; ++i) {
        json f = json::array();
        for (size_t b = 0; b < p.beta; ++b)
            for (size_t col = 0; col < 2 * p.k; ++col)
                f.push_back(x.at(coord(i, b, p.beta, p.m), col).value());
        files.push_back(std::move(f));
    }
    return json{{"files", files}};
}

} // namespace qpir
