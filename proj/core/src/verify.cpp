#include "qpir/verify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

namespace qpir {

namespace {

// All size-k subsets of [0, n), lexicographic.
bool next_subset(std::vector<size_t>& s, size_t n) {
    size_t k = s.size();
    for (size_t i = k; i-- > 0;) {
        if (s[i] < n - k + i) {
            ++s[i];
            for (size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<size_t> paired_columns(const std::vector<size_t>& subset, size_t n) {
    std::vector<size_t> cols;
    for (size_t s : subset) cols.push_back(s);
    for (size_t s : subset) cols.push_back(s + n);
    return cols;
}

} // namespace

Lemma5Report lemma5_checks(const SchemeCodes& codes, const SchemeParams& p,
                           size_t sample_count, uint64_t seed) {
    Lemma5Report rep;
    const Matrix& gs = codes.bundle.G_S;
    size_t n = p.n_eff;
    size_t kp = p.k + p.t_eff - 1;

    // (b) H_S J^T G_S^T = 0, exact.
    std::vector<size_t> hrows(2 * p.c);
    for (size_t i = 0; i < 2 * p.c; ++i) hrows[i] = i;
    Matrix hs = gs.select_rows(hrows);
    Matrix jt = symplectic_J(gs.field(), n).transposed();
    rep.cond_b = (hs * jt * gs.transposed()).is_zero();

    // (a) independence of every subset of column pairs (column order cannot
    // affect independence, so subsets suffice for all permutations).
    rep.cond_a = true;
    rep.exhaustive = n <= 8;
    auto check = [&](const std::vector<size_t>& subset) {
        ++rep.subsets_checked;
        Matrix sub = gs.select_cols(paired_columns(subset, n));
        if (rank(sub) != 2 * kp) {
            rep.cond_a = false;
            rep.witness = subset;
            return false;
        }
        return true;
    };
    if (rep.exhaustive) {
        std::vector<size_t> subset(kp);
        for (size_t i = 0; i < kp; ++i) subset[i] = i;
        do {
            if (!check(subset)) break;
        } while (next_subset(subset, n));
    } else {
        std::mt19937_64 rng(seed);
        std::vector<size_t> all(n);
        for (size_t i = 0; i < n; ++i) all[i] = i;
        for (size_t trial = 0; trial < sample_count; ++trial) {
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<size_t> subset(all.begin(), all.begin() + static_cast<long>(kp));
            std::sort(subset.begin(), subset.end());
            if (!check(subset)) break;
        }
    }
    return rep;
}

bool user_privacy_rank(const SchemeCodes& codes, const std::vector<size_t>& T) {
    if (T.empty()) return true;
    size_t n = codes.dp.length();
    Matrix sub = codes.g_d.select_cols(paired_columns(T, n));
    return rank(sub) == std::min(codes.g_d.rows(), sub.cols());
}

bool user_privacy_all_subsets(const SchemeCodes& codes, const SchemeParams& p) {
    std::vector<size_t> subset(p.t_eff);
    for (size_t i = 0; i < p.t_eff; ++i) subset[i] = i;
    do {
        if (!user_privacy_rank(codes, subset)) return false;
    } while (next_subset(subset, p.n_eff));
    return true;
}

PrivacyReport user_privacy_empirical(const SchemeParams& p, const SchemeCodes& codes,
                                     const std::vector<size_t>& T, size_t K1, size_t K2,
                                     size_t samples, uint64_t seed, bool zero_randomness) {
    const Field* field = codes.cp.field;
    PrivacyReport rep;
    rep.collusion = T;
    rep.samples = samples;
    rep.algebraic_ok = user_privacy_rank(codes, T);

    // Support of the colluding view: all query entries on columns owned by T.
    uint64_t support = 1;
    for (size_t i = 0; i < p.m * p.beta * 2 * T.size(); ++i) {
        support *= field->q();
        if (support > 10000) throw Error("SupportTooLarge", "colluding view support > 10^4");
    }

    auto view_key = [&](const Matrix& q) {
        uint64_t key = 0;
        for (size_t s : T)
            for (size_t pp = 0; pp < 2; ++pp)
                for (size_t r = 0; r < q.rows(); ++r)
                    key = key * field->q() + q.at(r, pp * p.n_eff + s).value();
        return key;
    };

    std::map<uint64_t, std::pair<size_t, size_t>> counts;
    Rng rng(seed);
    for (size_t i = 0; i < samples; ++i) {
        for (size_t which = 0; which < 2; ++which) {
            size_t K = which == 0 ? K1 : K2;
            RoundState st = build_queries(p, codes, K, 0, rng);
            if (zero_randomness) st.Q = st.E * st.sched.M;
            uint64_t key = view_key(st.Q);
            if (which == 0)
                counts[key].first++;
            else
                counts[key].second++;
        }
    }

    double n1 = static_cast<double>(samples), n2 = static_cast<double>(samples);
    double f1 = std::sqrt(n2 / n1), f2 = std::sqrt(n1 / n2);
    double stat = 0;
    size_t bins = 0;
    for (const auto& [key, rc] : counts) {
        double r = static_cast<double>(rc.first), s = static_cast<double>(rc.second);
        if (r + s == 0) continue;
        double d = f1 * r - f2 * s;
        stat += d * d / (r + s);
        ++bins;
    }
    rep.chi_square = stat;
    rep.dof = bins > 1 ? bins - 1 : 1;
    boost::math::chi_squared dist(static_cast<double>(rep.dof));
    rep.p_value = bins > 1 ? boost::math::cdf(boost::math::complement(dist, stat)) : 1.0;
    rep.distinguishable = rep.p_value < 0.01;
    return rep;
}

ServerPrivacyResult server_privacy_check(const SchemeParams& p, const SchemeCodes& codes,
                                         const Matrix& x1, const Matrix& x2, size_t K,
                                         uint64_t seed) {
    StorageSystem st1 = encode_storage(x1, codes, p);
    StorageSystem st2 = encode_storage(x2, codes, p);
    Transcript t1 = run_protocol(p, codes, st1, K, seed);
    Transcript t2 = run_protocol(p, codes, st2, K, seed);
    ServerPrivacyResult res;
    res.identical = true;
    for (size_t r = 0; r < p.rho; ++r) {
        if (t1.rounds[r].o != t2.rounds[r].o) {
            res.identical = false;
            res.differing_round = r;
            break;
        }
    }
    return res;
}

bool star_span_bruteforce(const GrsCode& cp, const GrsCode& dp) {
    const Field* field = cp.field;
    Matrix gc = cp.generator();
    Matrix gd = dp.generator();
    std::vector<Vec> stars;
    for (size_t i = 0; i < gc.rows(); ++i)
        for (size_t j = 0; j < gd.rows(); ++j)
            stars.push_back(star(gc.row(i), gd.row(j)));
    Matrix span = Matrix::from_rows(field, stars);
    GrsCode sp = star_grs(cp, dp);
    if (!same_row_space(span, sp.generator())) return false;

    // Cartesian identity on the block-diagonal generators.
    Matrix gcc = Matrix::block_diag(gc, gc);
    Matrix gdd = Matrix::block_diag(gd, gd);
    std::vector<Vec> stars2;
    for (size_t i = 0; i < gcc.rows(); ++i)
        for (size_t j = 0; j < gdd.rows(); ++j)
            stars2.push_back(star(gcc.row(i), gdd.row(j)));
    Matrix gsp = sp.generator();
    return same_row_space(Matrix::from_rows(field, stars2), Matrix::block_diag(gsp, gsp));
}

} // namespace qpir
