#pragma once

#include <optional>

#include "qpir/linalg.hpp"

namespace qpir {

/// [n, k] generalized Reed-Solomon code: codewords (v_j f(l_j))_j for
/// polynomials f of degree < k, with pairwise distinct locators l and
/// nonzero column multipliers v.
struct GrsCode {
    const Field* field = nullptr;
    Vec locators;
    Vec multipliers;
    size_t dim = 0;

    size_t length() const { return locators.size(); }

    /// k x n generator: entry (i, j) = v_j * l_j^i.
    Matrix generator() const;

    /// [n, n-k] GRS dual on the same locators, multipliers
    /// u_j = v_j^{-1} * prod_{i != j} (l_j - l_i)^{-1}.
    GrsCode dual() const;

    void validate() const; // throws on broken invariants
};

/// Default locators: first n powers 1, g, g^2, ... of the primitive element
/// (primitive Reed-Solomon convention). Requires n <= q - 1... n <= q via
/// appending 0 when n == q.
Vec default_locators(const Field* field, size_t n);

/// prod_{i != j} (l_j - l_i) for each j.
Vec locator_products(const Field* field, const Vec& locators);

/// Star product of two GRS codes on the same locators:
/// [n, k + t - 1] GRS with multipliers v_C * v_D component-wise.
GrsCode star_grs(const GrsCode& cp, const GrsCode& dp);

/// Char 2, n = 2k: multipliers v_j = sqrt((prod_{i != j}(l_j - l_i))^{-1})
/// give a self-dual [2k, k] GRS.
GrsCode self_dual_grs_char2(const Field* field, const Vec& locators);

/// Char 2, k >= n/2: [n, k] GRS with C^perp contained in C, same multiplier
/// formula as the self-dual case (the dual then has the same multipliers and
/// smaller dimension).
GrsCode weakly_self_dual_grs_char2(const Field* field, const Vec& locators, size_t k);

struct WsdSearchBudget {
    size_t max_nonzero_coeffs = 3; // monic f with at most this many nonzero terms
    size_t random_trials = 10000;
};

/// Any characteristic: searches for multipliers v with v_j^2 = (L_j f(l_j))^{-1}
/// over polynomials f of degree <= 2k - n, which forces C^perp into C.
/// Returns nullopt when the budget is exhausted.
std::optional<GrsCode> find_wsd_multipliers(const Field* field, const Vec& locators,
                                            size_t k, const WsdSearchBudget& budget = {},
                                            uint64_t seed = 1);

/// [n, t] GRS D' with star_grs(C', D') weakly self-dual, per the multiplier
/// transfer v_D = v_C^{-1} * v_S. Throws ConstraintViolated / NotFound.
GrsCode retrieval_code(const GrsCode& cp, size_t t,
                       const WsdSearchBudget& budget = {});

bool is_weakly_self_dual(const GrsCode& code);

/// Pieces of the measurement generator built from a weakly self-dual S':
/// H spans S'^perp (inside S'), F completes it to a basis of S', and
/// G_S = vstack(diag(H, H), diag(F, F)).
struct StarGeneratorBundle {
    Matrix H;   // (n - k') x n, k' = dim S'
    Matrix F;   // (2k' - n) x n
    Matrix G_S; // 2k' x 2n
};

StarGeneratorBundle split_wsd_generator(const GrsCode& sp);

/// Minimum distance by exhaustive codeword enumeration (q^k enumeration).
size_t min_distance_bruteforce(const GrsCode& code, uint64_t max_words = 100000);

} // namespace qpir
