#include "qpir/protocol.hpp"

#include <numeric>

namespace qpir {

SchemeParams derive_params(uint64_t q, size_t n, size_t k, size_t t, size_t m) {
    if (k < 1 || t < 1 || m < 1 || n < 2)
        throw Error("InvalidParams", "need k, t, m >= 1 and n >= 2");
    if (n > q) throw Error("InvalidParams", "n > q");
    if (t > n - k) throw Error("InvalidParams", "t > n - k");
    if (k + t - 1 >= n) throw Error("InvalidParams", "k + t - 1 >= n");

    SchemeParams p;
    p.q = q; p.n = n; p.k = k; p.t = t; p.m = m;
    p.n_eff = n;
    p.t_eff = t;
    p.normalized = false;
    if (2 * (k + t - 1) < n) {
        // Rate-1 regime: raise the effective collusion (and for odd n drop a
        // server) so that k + t_eff - 1 = n_eff / 2.
        p.normalized = true;
        if (n % 2 == 0) {
            p.t_eff = n / 2 - k + 1;
        } else {
            p.n_eff = n - 1;
            p.t_eff = (n + 1) / 2 - k;
        }
    }
    if (!(p.n_eff <= 2 * (k + p.t_eff - 1) && k + p.t_eff - 1 < p.n_eff))
        throw Error("InvalidParams", "n/2 <= k + t - 1 < n violated after normalization");
    p.c = p.n_eff - k - p.t_eff + 1;
    size_t l = std::lcm(p.c, k);
    p.beta = l / k;
    p.rho = l / p.c;
    p.g = p.c / p.beta;
    p.j_max = std::max(p.c, k);
    return p;
}

Rational make_rational(int64_t num, int64_t den) {
    if (den == 0) throw Error("InvalidParams", "zero denominator");
    if (den < 0) { num = -num; den = -den; }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return Rational{num, den};
}

Rational qpir_rate(const SchemeParams& p) {
    return make_rational(2 * static_cast<int64_t>(p.c), static_cast<int64_t>(p.n_eff));
}

RoundSchedule schedule(const SchemeParams& p, const Field* field, size_t r) {
    if (r >= p.rho) throw Error("IndexOutOfRange", "round index");
    RoundSchedule s;
    s.r = r;
    for (size_t b = 0; b < p.beta; ++b) {
        std::vector<size_t> set;
        for (size_t j = 0; j < p.g; ++j) {
            size_t idx = ((r + b) * p.g + j) % p.j_max;
            set.push_back(idx);
            s.targets.push_back(idx);
        }
        s.j_rb.push_back(std::move(set));
    }
    s.N = Matrix(field, p.c, p.n_eff);
    for (size_t a = 0; a < p.c; ++a)
        s.N.at(a, s.targets[a]) = field->one();
    s.M = Matrix::block_diag(s.N, s.N);
    return s;
}

SchemeCodes build_codes(const Field* field, const SchemeParams& p) {
    Vec ones(p.n_eff, field->one());
    // Primitive-power locators first. In odd characteristic a weakly self-dual
    // star code may exist only for particular locator sets (the square-ness
    // pattern of the locator products depends on them), so retry over random
    // distinct locator subsets before giving up. The storage and retrieval
    // codes always share whatever locators are chosen.
    std::mt19937_64 gen(0x10c5eed);
    std::vector<uint64_t> pool(field->q());
    for (uint64_t v = 0; v < field->q(); ++v) pool[v] = v;
    const size_t attempts = field->p() == 2 ? 1 : 64;
    for (size_t attempt = 0; attempt < attempts; ++attempt) {
        Vec loc;
        if (attempt == 0) {
            loc = default_locators(field, p.n_eff);
        } else {
            std::shuffle(pool.begin(), pool.end(), gen);
            for (size_t j = 0; j < p.n_eff; ++j) loc.push_back(field->element(pool[j]));
        }
        try {
            return build_codes(field, p, GrsCode{field, loc, ones, p.k});
        } catch (const Error& e) {
            if (e.code() != "NotFound" || attempt + 1 == attempts) throw;
        }
    }
    throw Error("NotFound", "no weakly self-dual star code found");
}

SchemeCodes build_codes(const Field* field, const SchemeParams& p, const GrsCode& cp) {
    cp.validate();
    if (cp.length() != p.n_eff || cp.dim != p.k)
        throw Error("InvalidParams", "storage code does not match scheme parameters");
    SchemeCodes codes;
    codes.cp = cp;
    codes.dp = retrieval_code(cp, p.t_eff);
    codes.sp = star_grs(codes.cp, codes.dp);
    codes.bundle = split_wsd_generator(codes.sp);
    Matrix gcp = codes.cp.generator();
    Matrix gdp = codes.dp.generator();
    codes.g_c = Matrix::block_diag(gcp, gcp);
    codes.g_d = Matrix::block_diag(gdp, gdp);
    return codes;
}

std::pair<Vec, Vec> StorageSystem::server_columns(size_t s) const {
    size_t n = Y.cols() / 2;
    if (s >= n) throw Error("IndexOutOfRange", "server index");
    return {Y.col(s), Y.col(n + s)};
}

StorageSystem encode_storage(const Matrix& x, const SchemeCodes& codes, const SchemeParams& p) {
    if (x.rows() != p.m * p.beta || x.cols() != 2 * p.k)
        throw Error("DimensionMismatch", "file matrix must be m*beta x 2k");
    StorageSystem st;
    st.X = x;
    st.Y = x * codes.g_c;
    return st;
}

FieldElement Rng::uniform(const Field* field) {
    uint64_t v = 0, mul = 1;
    for (uint32_t i = 0; i < field->m(); ++i) {
        v += (next() % field->p()) * mul;
        mul *= field->p();
    }
    return field->element(v);
}

Matrix Rng::uniform_matrix(const Field* field, size_t rows, size_t cols) {
    Matrix m(field, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = uniform(field);
    return m;
}

Matrix selector_matrix(const SchemeParams& p, const Field* field, size_t K) {
    if (K >= p.m) throw Error("IndexOutOfRange", "file index");
    Matrix e(field, p.m * p.beta, 2 * p.c);
    for (size_t pp = 0; pp < 2; ++pp)
        for (size_t a = 0; a < p.c; ++a) {
            size_t block = a / p.g; // owning block of target position a
            e.at(coord(K, block, p.beta, p.m), pp * p.c + a) = field->one();
        }
    return e;
}

RoundState build_queries(const SchemeParams& p, const SchemeCodes& codes, size_t K,
                         size_t r, Rng& rng) {
    const Field* field = codes.cp.field;
    RoundState st;
    st.sched = schedule(p, field, r);
    st.Z = rng.uniform_matrix(field, p.m * p.beta, 2 * p.t_eff);
    st.E = selector_matrix(p, field, K);
    st.Q = st.Z * codes.g_d + st.E * st.sched.M;
    return st;
}

std::pair<FieldElement, FieldElement> server_response(const StorageSystem& storage,
                                                      size_t s, const Matrix& q) {
    size_t n = storage.Y.cols() / 2;
    if (q.cols() != storage.Y.cols())
        throw Error("DimensionMismatch", "query width mismatch");
    auto [y1, y2] = storage.server_columns(s);
    return {dot(y1, q.col(s)), dot(y2, q.col(n + s))};
}

Vec simulate_measurement(const Vec& a, const Matrix& g_s, const Matrix& m) {
    CosetDecoder dec(g_s, m);
    return dec.decode(a);
}

Matrix retrieve(const SchemeParams& p, const SchemeCodes& codes,
                const std::vector<RoundState>& rounds) {
    if (rounds.size() != p.rho) throw Error("IncompleteRounds", "expected rho rounds");
    const Field* field = codes.cp.field;
    Matrix gcp = codes.cp.generator();
    Matrix out(field, p.beta, 2 * p.k);
    for (size_t b = 0; b < p.beta; ++b) {
        // gather (server, value) pairs for this block, per half
        std::vector<size_t> servers;
        std::vector<Vec> vals(2, Vec{});
        for (const RoundState& st : rounds)
            for (size_t a = 0; a < p.c; ++a) {
                if (a / p.g != b) continue;
                servers.push_back(st.sched.targets[a]);
                vals[0].push_back(st.o[a]);
                vals[1].push_back(st.o[p.c + a]);
            }
        if (servers.size() != p.k) throw Error("InternalFault", "schedule did not cover k positions");
        Matrix sub = gcp.select_cols(servers); // k x k, MDS submatrix
        for (size_t pp = 0; pp < 2; ++pp) {
            Vec x;
            try {
                x = solve_left(sub, vals[pp]);
            } catch (const Error&) {
                throw Error("SingularSubmatrix", "MDS submatrix unexpectedly singular");
            }
            for (size_t j = 0; j < p.k; ++j) out.at(b, pp * p.k + j) = x[j];
        }
    }
    return out;
}

Matrix file_block(const Matrix& x, const SchemeParams& p, size_t K) {
    std::vector<size_t> idx;
    for (size_t b = 0; b < p.beta; ++b) idx.push_back(coord(K, b, p.beta, p.m));
    return x.select_rows(idx);
}

Transcript run_protocol(const SchemeParams& p, const SchemeCodes& codes,
                        const StorageSystem& storage, size_t K, uint64_t seed) {
    const Field* field = codes.cp.field;
    Transcript tr;
    tr.params = p;
    tr.seed = seed;
    tr.K = K;
    Rng rng(seed);
    std::vector<RoundState> rounds;
    for (size_t r = 0; r < p.rho; ++r) {
        RoundState st = build_queries(p, codes, K, r, rng);
        st.A.assign(2 * p.n_eff, field->zero());
        for (size_t s = 0; s < p.n_eff; ++s) {
            auto [a1, a2] = server_response(storage, s, st.Q);
            st.A[s] = a1;
            st.A[p.n_eff + s] = a2;
        }
        st.o = simulate_measurement(st.A, codes.bundle.G_S, st.sched.M);
        tr.rounds.push_back(RoundRecord{r, st.sched.j_rb, st.Q, st.A, st.o});
        rounds.push_back(std::move(st));
    }
    tr.decoded = retrieve(p, codes, rounds);
    tr.q_in = p.rho * p.n_eff;      // downloaded qudits
    tr.q_out = p.file_symbols();    // retrieved classical symbols
    tr.rate = qpir_rate(p);
    // accounting cross-check: 2*rho*c = 2*beta*k symbols over rho*n qudits
    Rational measured = make_rational(static_cast<int64_t>(2 * p.beta * p.k),
                                      static_cast<int64_t>(p.rho * p.n_eff));
    if (!(measured == tr.rate)) throw Error("InternalFault", "rate accounting mismatch");
    return tr;
}

} // namespace qpir
