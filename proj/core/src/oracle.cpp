#include "qpir/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qpir {

namespace {

constexpr uint64_t kMaxStateDim = 1000000;

uint64_t ipow(uint64_t b, size_t e) {
    uint64_t r = 1;
    for (size_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::complex<double> root_of_unity(uint64_t p, int64_t exponent) {
    int64_t e = ((exponent % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) %
                static_cast<int64_t>(p);
    double ang = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p);
    return {std::cos(ang), std::sin(ang)};
}

int64_t trace_int(FieldElement x) { return x.field()->trace(x).value(); }

// Independent rows of the basis matrix.
std::vector<Vec> independent_rows(const Matrix& v_basis) {
    RrefResult rr = rref(v_basis);
    std::vector<Vec> rows;
    for (size_t r = 0; r < rr.rank; ++r) rows.push_back(rr.R.row(r));
    return rows;
}

// All q^dim(V) elements of the subspace.
std::vector<Vec> enumerate_subspace(const Matrix& v_basis) {
    const Field* f = v_basis.field();
    std::vector<Vec> basis = independent_rows(v_basis);
    uint64_t q = f->q();
    uint64_t total = ipow(q, basis.size());
    if (total > kMaxStateDim) throw Error("TooLarge", "stabilizer group enumeration too large");
    std::vector<Vec> out;
    out.reserve(total);
    for (uint64_t enc = 0; enc < total; ++enc) {
        Vec v(v_basis.cols(), f->zero());
        uint64_t e = enc;
        for (const Vec& row : basis) {
            FieldElement coef = f->element(e % q);
            e /= q;
            if (!coef.is_zero())
                for (size_t i = 0; i < v.size(); ++i) v[i] += coef * row[i];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Twisted Weyl operator applied to the system factor:
// Wt(a,b) = omega^{inv2 * tr(a.b)} X(a) Z(b). The half-phase twist makes
// v -> Wt(v) a genuine representation on any self-orthogonal space, so the
// character-weighted averages below are exact projectors.
void apply_twisted_weyl(const std::vector<std::complex<double>>& in,
                        std::vector<std::complex<double>>& out, const Field* f,
                        size_t n, size_t ref_dim, const Vec& v) {
    uint64_t p = f->p(), q = f->q();
    int64_t inv2 = static_cast<int64_t>((p + 1) / 2);
    Vec a(v.begin(), v.begin() + static_cast<long>(n));
    Vec b(v.begin() + static_cast<long>(n), v.end());
    int64_t twist = inv2 * trace_int(dot(a, b));

    size_t sys_dim = in.size() / ref_dim;
    std::vector<size_t> shifted(sys_dim);
    std::vector<std::complex<double>> phase(sys_dim);
    for (size_t x = 0; x < sys_dim; ++x) {
        uint64_t e = x;
        size_t y = 0;
        uint64_t mul = 1;
        int64_t ph = twist;
        for (size_t s = 0; s < n; ++s) {
            FieldElement xs = f->element(e % q);
            e /= q;
            ph += trace_int(b[s] * xs);
            y += (xs + a[s]).value() * mul;
            mul *= q;
        }
        shifted[x] = y;
        phase[x] = root_of_unity(p, ph);
    }
    std::fill(out.begin(), out.end(), std::complex<double>(0, 0));
    for (size_t x = 0; x < sys_dim; ++x) {
        size_t src = x * ref_dim, dst = shifted[x] * ref_dim;
        for (size_t r = 0; r < ref_dim; ++r) out[dst + r] += phase[x] * in[src + r];
    }
}

// P_0 applied to a vector: the average of Wt(v) over the group.
std::vector<std::complex<double>> apply_p0(const std::vector<std::complex<double>>& in,
                                           const Field* f, size_t n, size_t ref_dim,
                                           const std::vector<Vec>& group) {
    std::vector<std::complex<double>> acc(in.size(), {0, 0});
    std::vector<std::complex<double>> tmp(in.size());
    for (const Vec& v : group) {
        apply_twisted_weyl(in, tmp, f, n, ref_dim, v);
        for (size_t i = 0; i < in.size(); ++i) acc[i] += tmp[i];
    }
    double inv = 1.0 / static_cast<double>(group.size());
    for (auto& x : acc) x *= inv;
    return acc;
}

} // namespace

size_t StateVector::sys_dim() const { return ipow(field->q(), n); }
size_t StateVector::ref_dim() const { return ipow(field->q(), aux_exp); }

double StateVector::norm() const {
    double s = 0;
    for (const auto& x : amp) s += std::norm(x);
    return std::sqrt(s);
}

StateVector weyl_apply(const StateVector& state, const WeylLabel& label) {
    const Field* f = state.field;
    if (f->p() == 2) throw Error("EvenCharacteristicUnsupported", "dense oracle is odd-char only");
    if (label.a.size() != state.n || label.b.size() != state.n)
        throw Error("LengthMismatch", "Weyl label width mismatch");
    uint64_t p = f->p(), q = f->q();
    size_t ref_dim = state.ref_dim();
    size_t sys_dim = state.sys_dim();
    StateVector out = state;
    std::fill(out.amp.begin(), out.amp.end(), std::complex<double>(0, 0));
    for (size_t x = 0; x < sys_dim; ++x) {
        uint64_t e = x;
        size_t y = 0;
        uint64_t mul = 1;
        int64_t ph = 0;
        for (size_t s = 0; s < state.n; ++s) {
            FieldElement xs = f->element(e % q);
            e /= q;
            ph += trace_int(label.b[s] * xs);
            y += (xs + label.a[s]).value() * mul;
            mul *= q;
        }
        std::complex<double> w = root_of_unity(p, ph);
        for (size_t r = 0; r < ref_dim; ++r)
            out.amp[y * ref_dim + r] += w * state.amp[x * ref_dim + r];
    }
    return out;
}

StateVector stabilizer_initial_state(const Matrix& v_basis, const Field* field, size_t n,
                                     size_t aux_exp) {
    if (field->p() == 2) throw Error("EvenCharacteristicUnsupported", "dense oracle is odd-char only");
    if (!is_self_orthogonal(v_basis)) throw Error("NotSelfOrthogonal", "V is not self-orthogonal");
    uint64_t q = field->q();
    size_t sys_dim = ipow(q, n);
    size_t ref_dim = ipow(q, aux_exp);
    if (sys_dim * ref_dim > kMaxStateDim) throw Error("TooLarge", "state dimension too large");

    std::vector<Vec> group = enumerate_subspace(v_basis);

    // Orthonormal basis of range(P_0) by projecting standard basis vectors.
    std::vector<std::vector<std::complex<double>>> range_basis;
    for (size_t cand = 0; cand < sys_dim && range_basis.size() < ref_dim; ++cand) {
        std::vector<std::complex<double>> e(sys_dim, {0, 0});
        e[cand] = 1.0;
        auto v = apply_p0(e, field, n, 1, group);
        for (const auto& u : range_basis) {
            std::complex<double> ip{0, 0};
            for (size_t i = 0; i < sys_dim; ++i) ip += std::conj(u[i]) * v[i];
            for (size_t i = 0; i < sys_dim; ++i) v[i] -= ip * u[i];
        }
        double nrm = 0;
        for (const auto& x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (auto& x : v) x /= nrm;
        range_basis.push_back(std::move(v));
    }
    if (range_basis.size() != ref_dim)
        throw Error("InternalFault", "projector rank below reference dimension");

    StateVector st;
    st.field = field;
    st.n = n;
    st.aux_exp = aux_exp;
    st.amp.assign(sys_dim * ref_dim, {0, 0});
    double scale = 1.0 / std::sqrt(static_cast<double>(ref_dim));
    for (size_t j = 0; j < ref_dim; ++j)
        for (size_t x = 0; x < sys_dim; ++x)
            st.amp[x * ref_dim + j] = scale * range_basis[j][x];
    return st;
}

uint64_t label_encode(const Vec& x) {
    uint64_t enc = 0;
    for (size_t i = x.size(); i-- > 0;) enc = enc * x[i].field()->q() + x[i].value();
    return enc;
}

Vec label_decode(const Field* field, uint64_t enc, size_t len) {
    Vec x(len, field->zero());
    for (size_t i = 0; i < len; ++i) {
        x[i] = field->element(enc % field->q());
        enc /= field->q();
    }
    return x;
}

std::vector<double> pvm_probabilities(const StateVector& state, const Matrix& v_basis,
                                      const Matrix& m, int sign) {
    const Field* f = state.field;
    uint64_t p = f->p();
    size_t ref_dim = state.ref_dim();
    std::vector<Vec> group = enumerate_subspace(v_basis);

    // c_v = <psi| Wt(v) |psi>; each outcome probability is a character sum
    // over these amplitudes.
    std::vector<std::complex<double>> cv(group.size());
    std::vector<std::complex<double>> tmp(state.amp.size());
    for (size_t gidx = 0; gidx < group.size(); ++gidx) {
        apply_twisted_weyl(state.amp, tmp, f, state.n, ref_dim, group[gidx]);
        std::complex<double> ip{0, 0};
        for (size_t i = 0; i < tmp.size(); ++i) ip += std::conj(state.amp[i]) * tmp[i];
        cv[gidx] = ip;
    }

    size_t clen = m.rows();
    uint64_t outcomes = ipow(f->q(), clen);
    if (outcomes > kMaxStateDim) throw Error("TooLarge", "outcome space too large");
    std::vector<double> probs(outcomes, 0.0);
    double inv_group = 1.0 / static_cast<double>(group.size());
    for (uint64_t enc = 0; enc < outcomes; ++enc) {
        Vec rep = vec_mat(label_decode(f, enc, clen), m);
        std::complex<double> acc{0, 0};
        for (size_t gidx = 0; gidx < group.size(); ++gidx) {
            int64_t e = -sign * trace_int(symp_pairing(rep, group[gidx]));
            acc += root_of_unity(p, e) * cv[gidx];
        }
        probs[enc] = std::max(0.0, acc.real() * inv_group);
    }
    return probs;
}

int calibrate_phase_sign(const Matrix& v_basis, const Matrix& m, const Field* field,
                         size_t n, size_t aux_exp) {
    StateVector init = stabilizer_initial_state(v_basis, field, n, aux_exp);
    Vec label = basis_vec(field, m.rows(), 0);
    Vec rep = vec_mat(label, m);
    WeylLabel wl{Vec(rep.begin(), rep.begin() + static_cast<long>(n)),
                 Vec(rep.begin() + static_cast<long>(n), rep.end())};
    StateVector shifted = weyl_apply(init, wl);
    uint64_t want = label_encode(label);
    for (int sign : {+1, -1}) {
        auto probs = pvm_probabilities(shifted, v_basis, m, sign);
        if (probs[want] > 1.0 - 1e-6) return sign;
    }
    throw Error("InternalFault", "no phase convention reproduces the displacement");
}

Transcript run_dense_protocol(const SchemeParams& p, const SchemeCodes& codes,
                              const StorageSystem& storage, size_t K, uint64_t seed) {
    const Field* field = codes.cp.field;
    if (field->p() == 2) throw Error("EvenCharacteristicUnsupported", "dense oracle is odd-char only");
    size_t n = p.n_eff;
    size_t aux_exp = 2 * (p.k + p.t_eff - 1) - n;

    // V = span of the H-blocks (first 2c rows of G_S).
    std::vector<size_t> vrows(2 * p.c);
    for (size_t i = 0; i < 2 * p.c; ++i) vrows[i] = i;
    Matrix v_basis = codes.bundle.G_S.select_rows(vrows);

    StateVector init = stabilizer_initial_state(v_basis, field, n, aux_exp);
    int sign = calibrate_phase_sign(v_basis, schedule(p, field, 0).M, field, n, aux_exp);

    Transcript tr;
    tr.params = p;
    tr.seed = seed;
    tr.K = K;
    tr.oracle_phase_sign = sign;
    Rng rng(seed);
    std::vector<RoundState> rounds;
    for (size_t r = 0; r < p.rho; ++r) {
        RoundState st = build_queries(p, codes, K, r, rng);
        st.A.assign(2 * n, field->zero());
        for (size_t s = 0; s < n; ++s) {
            auto [a1, a2] = server_response(storage, s, st.Q);
            st.A[s] = a1;
            st.A[n + s] = a2;
        }
        WeylLabel wl{Vec(st.A.begin(), st.A.begin() + static_cast<long>(n)),
                     Vec(st.A.begin() + static_cast<long>(n), st.A.end())};
        StateVector after = weyl_apply(init, wl);
        auto probs = pvm_probabilities(after, v_basis, st.sched.M, sign);
        double total = 0, best = -1;
        uint64_t best_enc = 0;
        for (uint64_t enc = 0; enc < probs.size(); ++enc) {
            total += probs[enc];
            if (probs[enc] > best) { best = probs[enc]; best_enc = enc; }
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw Error("InternalFault", "PVM probabilities do not sum to 1");
        if (best < 1.0 - 1e-9)
            throw Error("InternalFault", "PVM distribution is not a point mass");
        st.o = label_decode(field, best_enc, 2 * p.c);
        tr.rounds.push_back(RoundRecord{r, st.sched.j_rb, st.Q, st.A, st.o});
        rounds.push_back(std::move(st));
    }
    tr.decoded = retrieve(p, codes, rounds);
    tr.q_in = tr.q_out = p.rho * n;
    tr.rate = qpir_rate(p);
    return tr;
}

} // namespace qpir
