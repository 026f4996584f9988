// Command-line laboratory for the coded QPIR scheme: run the protocol on
// GRS-coded storage, replay the worked [6,3] example over GF(7), execute the
// verification suites, and tabulate achievable rates.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qpir/serialize.hpp"

using namespace qpir;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidParams = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitIo = 4;

FieldPtr field_for(uint64_t q) {
    // factor q = p^m
    for (uint64_t p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        uint64_t rem = q;
        uint32_t m = 0;
        while (rem % p == 0) { rem /= p; ++m; }
        if (rem != 1) throw Error("InvalidParams", "q is not a prime power");
        return Field::make(p, m);
    }
    throw Error("InvalidParams", "bad q");
}

void write_or_print(const json& doc, const std::string& out_path, bool always_print) {
    if (!out_path.empty()) {
        std::ofstream of(out_path);
        if (!of) throw Error("IoError", "cannot open " + out_path);
        of << doc.dump(2) << "\n";
    }
    if (out_path.empty() || always_print) std::cout << doc.dump(2) << "\n";
}

void print_transcript_summary(const Transcript& tr, bool verbose) {
    const SchemeParams& p = tr.params;
    std::cout << "params: q=" << p.q << " n=" << p.n << " k=" << p.k << " t=" << p.t
              << " m=" << p.m;
    if (p.normalized)
        std::cout << " (normalized: n_eff=" << p.n_eff << " t_eff=" << p.t_eff << ")";
    std::cout << "\nrounds: " << p.rho << ", qudits downloaded: " << tr.q_in
              << ", symbols retrieved: " << tr.q_out << "\n";
    for (const RoundRecord& r : tr.rounds) {
        std::cout << "  round " << r.r + 1 << ": J =";
        for (size_t b = 0; b < r.j_rb.size(); ++b) {
            std::cout << " {";
            for (size_t j = 0; j < r.j_rb[b].size(); ++j)
                std::cout << (j ? "," : "") << r.j_rb[b][j] + 1;
            std::cout << "}";
        }
        if (verbose) {
            std::cout << "  o =";
            for (const FieldElement& e : r.o) std::cout << " " << e.value();
        }
        std::cout << "\n";
    }
    std::cout << "rate " << tr.rate.num << "/" << tr.rate.den << "\n";
}

struct SuiteResult {
    int failures = 0;
    json report = json::array();

    void record(const std::string& name, bool ok, json detail = {}) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        json entry{{"check", name}, {"pass", ok}};
        if (!detail.is_null() && !detail.empty()) entry["detail"] = std::move(detail);
        report.push_back(std::move(entry));
        if (!ok) ++failures;
    }
};

Matrix random_files(const SchemeParams& p, const Field* field, uint64_t seed) {
    Rng rng(seed);
    return rng.uniform_matrix(field, p.m * p.beta, 2 * p.k);
}

void suite_codes(SuiteResult& res) {
    for (uint64_t q : {8u, 16u}) {
        FieldPtr f = field_for(q);
        Vec loc = default_locators(f.get(), q == 8 ? 4 : 8);
        GrsCode sd = self_dual_grs_char2(f.get(), loc);
        Matrix g = sd.generator();
        bool ok = same_row_space(g, kernel(g));
        res.record("self-dual GRS over GF(" + std::to_string(q) + ")", ok);
    }
    {
        FieldPtr f7 = field_for(7);
        SchemeParams p = derive_params(7, 6, 3, 2, 1);
        SchemeCodes codes = build_codes(f7.get(), p);
        res.record("S' weakly self-dual over GF(7)", is_weakly_self_dual(codes.sp));
        res.record("star-span brute force, GF(7) [6,3]*[6,2]",
                   star_span_bruteforce(codes.cp, codes.dp));
        res.record("d_{S'} = n-k-t+2", min_distance_bruteforce(codes.sp) == p.n - p.k - p.t + 2);
    }
    {
        FieldPtr f8 = field_for(8);
        for (size_t n : {6u, 8u})
            for (size_t k = 1; k < n; ++k)
                for (size_t t = 1; t + k <= n && k + t - 1 < n; ++t) {
                    if (2 * (k + t - 1) < n) continue;
                    Vec loc = default_locators(f8.get(), n);
                    Vec ones(n, f8->one());
                    GrsCode cp{f8.get(), loc, ones, k};
                    GrsCode dp = retrieval_code(cp, t);
                    if (!star_span_bruteforce(cp, dp)) {
                        res.record("star-span sweep GF(8)", false,
                                   json{{"n", n}, {"k", k}, {"t", t}});
                        return;
                    }
                }
        res.record("star-span sweep GF(8), n <= 8", true);
    }
}

void suite_protocol(SuiteResult& res) {
    size_t runs = 0, good = 0;
    for (uint64_t q : {7u, 8u, 11u, 13u}) {
        FieldPtr f = field_for(q);
        for (size_t n = 3; n <= std::min<uint64_t>(q, 8); ++n)
            for (size_t k = 1; k < n; ++k)
                for (size_t t = 1; t <= n - k && k + t - 1 < n; ++t) {
                    SchemeParams p;
                    SchemeCodes codes;
                    try {
                        p = derive_params(q, n, k, t, 2);
                        codes = build_codes(f.get(), p);
                    } catch (const Error&) {
                        continue;
                    }
                    Matrix x = random_files(p, f.get(), 11 * n + k);
                    StorageSystem st = encode_storage(x, codes, p);
                    for (uint64_t seed : {1u, 2u}) {
                        Transcript tr = run_protocol(p, codes, st, 1, seed);
                        ++runs;
                        good += tr.decoded == file_block(x, p, 1) &&
                                tr.rate == qpir_rate(p);
                    }
                }
    }
    res.record("correctness sweep (" + std::to_string(runs) + " runs)", good == runs,
               json{{"runs", runs}, {"good", good}});
}

void suite_privacy(SuiteResult& res) {
    FieldPtr f7 = field_for(7);
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    res.record("user privacy rank, all t-subsets", user_privacy_all_subsets(codes, p));

    FieldPtr f3 = field_for(3);
    SchemeParams p3 = derive_params(3, 3, 1, 2, 2);
    SchemeCodes codes3 = build_codes(f3.get(), p3);
    PrivacyReport rep = user_privacy_empirical(p3, codes3, {0, 1}, 0, 1, 20000, 7);
    res.record("user privacy empirical (q=3)", !rep.distinguishable,
               privacy_report_to_json(rep));
    PrivacyReport ctrl = user_privacy_empirical(p3, codes3, {0, 1}, 0, 1, 20000, 7, true);
    res.record("negative control Z=0 distinguishable", ctrl.distinguishable,
               privacy_report_to_json(ctrl));

    Matrix x1 = random_files(p, f7.get(), 21);
    Matrix x2 = x1;
    x2.at(coord(0, 0, p.beta, p.m), 0) += f7->one(); // perturb file 1, request K=2
    ServerPrivacyResult sp = server_privacy_check(p, codes, x1, x2, 1, 5);
    res.record("server privacy: non-target perturbation invisible", sp.identical);
    Matrix x3 = x1;
    x3.at(coord(1, 0, p.beta, p.m), 0) += f7->one(); // perturb the target file
    ServerPrivacyResult sp2 = server_privacy_check(p, codes, x1, x3, 1, 5);
    res.record("server privacy control: target perturbation visible", !sp2.identical);
}

void suite_oracle(SuiteResult& res) {
    FieldPtr f5 = field_for(5);
    for (auto [k, t] : std::vector<std::pair<size_t, size_t>>{{1, 3}, {2, 2}, {3, 1}}) {
        SchemeParams p = derive_params(5, 4, k, t, 2);
        SchemeCodes codes = build_codes(f5.get(), p);
        Matrix x = random_files(p, f5.get(), 31 + k + t);
        StorageSystem st = encode_storage(x, codes, p);
        Transcript dense = run_dense_protocol(p, codes, st, 1, 9);
        Transcript coset = run_protocol(p, codes, st, 1, 9);
        bool ok = dense.decoded == coset.decoded && dense.decoded == file_block(x, p, 1);
        for (size_t r = 0; r < p.rho; ++r)
            ok = ok && dense.rounds[r].o == coset.rounds[r].o;
        res.record("dense vs coset, q=5 n=4 k=" + std::to_string(k) + " t=" + std::to_string(t),
                   ok);
    }
}

int cmd_verify(const std::string& suite, const std::string& out) {
    SuiteResult res;
    if (suite == "codes" || suite == "all") suite_codes(res);
    if (suite == "protocol" || suite == "all") suite_protocol(res);
    if (suite == "privacy" || suite == "all") suite_privacy(res);
    if (suite == "oracle" || suite == "all") suite_oracle(res);
    if (!out.empty()) write_or_print(res.report, out, false);
    return res.failures == 0 ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QPIR over GRS-coded storage with t-collusion: protocol simulator "
                 "and verification laboratory"};
    app.require_subcommand(1);

    uint64_t q = 7, seed = 1;
    size_t n = 6, k = 3, t = 2, m = 2, K = 1;
    std::string in_path, out_path, suite = "all";
    bool verbose = false, demo_verify = false;

    auto add_common = [&](CLI::App* cmd, bool with_params) {
        if (with_params) {
            cmd->add_option("--q", q, "field size (prime power)");
            cmd->add_option("--n", n, "number of servers");
            cmd->add_option("--k", k, "storage code dimension");
            cmd->add_option("--t", t, "collusion parameter");
            cmd->add_option("--m", m, "number of files");
            cmd->add_option("--K", K, "requested file index (1-based)");
        }
        cmd->add_option("--seed", seed, "rng seed");
        cmd->add_option("--out", out_path, "transcript/report output path");
        cmd->add_flag("--verbose", verbose, "per-round detail");
    };

    CLI::App* demo = app.add_subcommand("demo", "run the [6,3] GF(7) worked example");
    add_common(demo, false);
    demo->add_option("--m", m, "number of files");
    demo->add_flag("--verify", demo_verify, "also run lemma 5 and privacy checks");

    CLI::App* run = app.add_subcommand("run", "run the protocol on given parameters");
    add_common(run, true);
    run->add_option("--in", in_path, "input JSON with \"files\"");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "codes | protocol | privacy | oracle | all")
        ->check(CLI::IsMember({"codes", "protocol", "privacy", "oracle", "all"}));
    add_common(verify, false);

    CLI::App* rate_cmd = app.add_subcommand("rate", "tabulate R_QPIR over an (n,k,t) grid");
    rate_cmd->add_option("--n", n, "maximum number of servers");
    add_common(rate_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (demo->parsed()) {
            FieldPtr f = field_for(7);
            SchemeParams p = derive_params(7, 6, 3, 2, m);
            SchemeCodes codes = build_codes(f.get(), p);
            Matrix x = random_files(p, f.get(), seed);
            StorageSystem st = encode_storage(x, codes, p);
            size_t kk = std::min(K, m) - 1;
            Transcript tr = run_protocol(p, codes, st, kk, seed + 1);
            print_transcript_summary(tr, verbose);
            if (tr.decoded != file_block(x, p, kk)) {
                std::cerr << "decode mismatch\n";
                return kExitCheckFailed;
            }
            if (!out_path.empty()) write_or_print(transcript_to_json(tr), out_path, false);
            if (demo_verify) {
                SuiteResult res;
                Lemma5Report l5 = lemma5_checks(codes, p);
                res.record("lemma 5 (a)", l5.cond_a, lemma5_report_to_json(l5));
                res.record("lemma 5 (b)", l5.cond_b);
                res.record("user privacy rank", user_privacy_all_subsets(codes, p));
                if (res.failures) return kExitCheckFailed;
            }
            return kExitOk;
        }
        if (run->parsed()) {
            FieldPtr f = field_for(q);
            SchemeParams p = derive_params(q, n, k, t, m);
            SchemeCodes codes = build_codes(f.get(), p);
            Matrix x(f.get(), 0, 0);
            if (in_path.empty()) {
                x = random_files(p, f.get(), seed);
            } else {
                std::ifstream ifs(in_path);
                if (!ifs) throw Error("IoError", "cannot open " + in_path);
                json doc = json::parse(ifs, nullptr, true, true);
                x = files_from_json(doc, p, f.get());
            }
            if (K < 1 || K > m) throw Error("InvalidParams", "K out of range");
            StorageSystem st = encode_storage(x, codes, p);
            Transcript tr = run_protocol(p, codes, st, K - 1, seed);
            print_transcript_summary(tr, verbose);
            std::cout << "decoded file " << K << ": " << files_to_json(tr.decoded, [&] {
                SchemeParams one = p;
                one.m = 1;
                return one;
            }()).at("files")[0].dump() << "\n";
            if (!out_path.empty()) write_or_print(transcript_to_json(tr), out_path, false);
            return kExitOk;
        }
        if (verify->parsed()) return cmd_verify(suite, out_path);
        if (rate_cmd->parsed()) {
            std::cout << "n\tk\tt\tR_QPIR\tnormalized\n";
            for (size_t nn = 2; nn <= n; ++nn)
                for (size_t kk = 1; kk < nn; ++kk)
                    for (size_t tt = 1; tt <= nn - kk && kk + tt - 1 < nn; ++tt) {
                        try {
                            SchemeParams p = derive_params(std::max<uint64_t>(nn, 16), nn,
                                                           kk, tt, 1);
                            Rational r = qpir_rate(p);
                            std::cout << nn << "\t" << kk << "\t" << tt << "\t" << r.num
                                      << "/" << r.den << "\t" << (p.normalized ? "yes" : "no")
                                      << "\n";
                        } catch (const Error&) {
                        }
                    }
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error " << e.what() << "\n";
        if (e.code() == "InvalidParams" || e.code() == "NonPrimeP" ||
            e.code() == "ConstraintViolated" || e.code() == "NotFound")
            return kExitInvalidParams;
        if (e.code() == "IoError") return kExitIo;
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
