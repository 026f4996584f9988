#pragma once

#include <optional>

#include "qpir/protocol.hpp"

namespace qpir {

struct Lemma5Report {
    bool cond_a = false; // every (k+t-1)-subset of column pairs independent
    bool cond_b = false; // H_S J^T G_S^T = 0
    size_t subsets_checked = 0;
    bool exhaustive = false;
    std::optional<std::vector<size_t>> witness; // failing subset, if any
};

/// Condition (a) exhaustively for n <= 8, otherwise on `sample_count` random
/// subsets; condition (b) as an exact matrix product.
Lemma5Report lemma5_checks(const SchemeCodes& codes, const SchemeParams& p,
                           size_t sample_count = 1000, uint64_t seed = 1);

/// The 2t x 2t submatrix of G_D on column pairs {(1,s),(2,s) : s in T} is
/// invertible, which makes the colluding view of Z*G_D uniform.
bool user_privacy_rank(const SchemeCodes& codes, const std::vector<size_t>& T);

/// All C(n, t) collusion sets. Exhaustive; callers cap n themselves.
bool user_privacy_all_subsets(const SchemeCodes& codes, const SchemeParams& p);

struct PrivacyReport {
    std::vector<size_t> collusion;
    bool algebraic_ok = false;
    double chi_square = 0;
    size_t dof = 0;
    double p_value = 1;
    size_t samples = 0;
    bool distinguishable = false; // at significance 0.01
};

/// Chi-square two-sample test on the colluding servers' query view for
/// requests K1 vs K2. `zero_randomness` replaces Z by 0 (negative control:
/// the selector becomes visible).
PrivacyReport user_privacy_empirical(const SchemeParams& p, const SchemeCodes& codes,
                                     const std::vector<size_t>& T, size_t K1, size_t K2,
                                     size_t samples, uint64_t seed,
                                     bool zero_randomness = false);

struct ServerPrivacyResult {
    bool identical = false;
    std::optional<size_t> differing_round;
};

/// Runs the protocol with the same seed on both storages; per-round
/// measurement outputs must match exactly when the storages differ only in
/// files other than K.
ServerPrivacyResult server_privacy_check(const SchemeParams& p, const SchemeCodes& codes,
                                         const Matrix& x1, const Matrix& x2, size_t K,
                                         uint64_t seed);

/// Span of all pairwise stars of generator rows equals the GRS star code,
/// and the Cartesian identity holds on the block-diagonal generators.
bool star_span_bruteforce(const GrsCode& cp, const GrsCode& dp);

} // namespace qpir
