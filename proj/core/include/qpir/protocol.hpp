#pragma once

#include <cstdint>
#include <random>

#include "qpir/codes.hpp"
#include "qpir/symplectic.hpp"

namespace qpir {

/// Derived scheme parameters. All counts; n_eff/t_eff reflect the rate-1
/// normalization for instances with k + t - 1 < n/2.
struct SchemeParams {
    uint64_t q = 0;
    size_t n = 0, k = 0, t = 0, m = 0;
    size_t n_eff = 0, t_eff = 0;
    size_t c = 0;     // d_{S'} - 1 = n_eff - k - t_eff + 1
    size_t beta = 0;  // lcm(c, k) / k
    size_t rho = 0;   // lcm(c, k) / c
    size_t g = 0;     // c / beta, symbols per block per round
    size_t j_max = 0; // |J| = max(c, k)
    bool normalized = false;

    size_t file_symbols() const { return 2 * beta * k; }
};

SchemeParams derive_params(uint64_t q, size_t n, size_t k, size_t t, size_t m);

/// Exact rational, always reduced, denominator positive.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    bool operator==(const Rational&) const = default;
};
Rational make_rational(int64_t num, int64_t den);

/// Theorem rate 2(n - k - t + 1)/n on the effective parameters.
Rational qpir_rate(const SchemeParams& p);

/// Per-round targeting: the sets J_r^b, the ordered target list (blocks
/// ascending, then position), and the selector matrices N (c x n) and
/// M = diag(N, N).
struct RoundSchedule {
    size_t r = 0;                          // 0-based round
    std::vector<std::vector<size_t>> j_rb; // per block b: g server indices, 0-based
    std::vector<size_t> targets;           // flattened, length c
    Matrix N, M;
};

RoundSchedule schedule(const SchemeParams& p, const Field* field, size_t r);

/// Code material for one scheme instance. Locators default to primitive
/// powers; C' multipliers default to all ones.
struct SchemeCodes {
    GrsCode cp, dp, sp;        // C', D', S' = C' * D'
    StarGeneratorBundle bundle; // H_{S'}, F_{S'}, G_S
    Matrix g_c, g_d;           // diag generators of C, D
};

SchemeCodes build_codes(const Field* field, const SchemeParams& p);
SchemeCodes build_codes(const Field* field, const SchemeParams& p, const GrsCode& cp);

/// Encoded storage: Y = X * diag(G_{C'}, G_{C'}); server s holds columns
/// s and n + s of Y.
struct StorageSystem {
    Matrix X; // m*beta x 2k
    Matrix Y; // m*beta x 2n
    std::pair<Vec, Vec> server_columns(size_t s) const; // (Y_{1,s}, Y_{2,s})
};

StorageSystem encode_storage(const Matrix& x, const SchemeCodes& codes, const SchemeParams& p);

/// Deterministic seeded randomness; field elements drawn digit-wise base p.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    uint64_t next() { return gen_(); }
    FieldElement uniform(const Field* field);
    Matrix uniform_matrix(const Field* field, size_t rows, size_t cols);

  private:
    std::mt19937_64 gen_;
};

/// Selector E_{(K)} (m*beta x 2c): column (p, a) is the standard basis vector
/// picking row (K, b(a)) where b(a) is the block owning target position a.
Matrix selector_matrix(const SchemeParams& p, const Field* field, size_t K);

/// One round of client-side state.
struct RoundState {
    RoundSchedule sched;
    Matrix Z; // m*beta x 2t_eff
    Matrix E; // m*beta x 2c
    Matrix Q; // m*beta x 2n_eff
    Vec A;    // length 2n_eff, assembled responses
    Vec o;    // length 2c, measurement output
};

/// Query step: Q = Z * G_D + E_(K) * M^(r). K is 0-based.
RoundState build_queries(const SchemeParams& p, const SchemeCodes& codes, size_t K,
                         size_t r, Rng& rng);

/// A_{p,s} = Y_{p,s}^T . Q_{p,s}; the server touches only its own columns.
std::pair<FieldElement, FieldElement> server_response(const StorageSystem& storage,
                                                      size_t s, const Matrix& q);

/// Coset decode of the accumulated displacement (the classical shadow of the
/// stabilizer PVM).
Vec simulate_measurement(const Vec& a, const Matrix& g_s, const Matrix& m);

/// Collected (server, value) pairs from all rounds -> X^K (beta x 2k block).
Matrix retrieve(const SchemeParams& p, const SchemeCodes& codes,
                const std::vector<RoundState>& rounds);

struct RoundRecord {
    size_t r;
    std::vector<std::vector<size_t>> j_rb;
    Matrix Q;
    Vec A;
    Vec o;
};

struct Transcript {
    SchemeParams params;
    uint64_t seed = 0;
    size_t K = 0; // 0-based
    std::vector<RoundRecord> rounds;
    Matrix decoded; // beta x 2k
    size_t q_in = 0, q_out = 0;
    Rational rate;
    int oracle_phase_sign = 0; // set only by the dense-oracle runner
};

Transcript run_protocol(const SchemeParams& p, const SchemeCodes& codes,
                        const StorageSystem& storage, size_t K, uint64_t seed);

/// Convenience: the requested file block of X (beta x 2k), K 0-based.
Matrix file_block(const Matrix& x, const SchemeParams& p, size_t K);

} // namespace qpir
