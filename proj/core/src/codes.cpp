#include "qpir/codes.hpp"

#include <random>

namespace qpir {

Matrix GrsCode::generator() const {
    Matrix g(field, dim, length());
    for (size_t j = 0; j < length(); ++j) {
        FieldElement pw = field->one();
        for (size_t i = 0; i < dim; ++i) {
            g.at(i, j) = multipliers[j] * pw;
            pw *= locators[j];
        }
    }
    return g;
}

void GrsCode::validate() const {
    size_t n = length();
    if (dim < 1 || dim > n) throw Error("InvalidParams", "GRS dimension out of range");
    if (multipliers.size() != n) throw Error("InvalidParams", "multiplier count mismatch");
    if (n > field->q()) throw Error("InvalidParams", "length exceeds field size");
    for (size_t j = 0; j < n; ++j) {
        if (multipliers[j].is_zero()) throw Error("InvalidParams", "zero column multiplier");
        for (size_t i = j + 1; i < n; ++i)
            if (locators[i] == locators[j]) throw Error("InvalidParams", "repeated locator");
    }
}

Vec locator_products(const Field* field, const Vec& locators) {
    size_t n = locators.size();
    Vec out(n, field->one());
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i)
            if (i != j) out[j] *= locators[j] - locators[i];
    return out;
}

GrsCode GrsCode::dual() const {
    if (dim >= length()) throw Error("InvalidParams", "dual requires k < n");
    Vec lp = locator_products(field, locators);
    Vec u(length());
    for (size_t j = 0; j < length(); ++j)
        u[j] = (multipliers[j] * lp[j]).inv();
    return GrsCode{field, locators, u, length() - dim};
}

Vec default_locators(const Field* field, size_t n) {
    if (n > field->q()) throw Error("InvalidParams", "n > q");
    Vec loc;
    FieldElement g = field->primitive_element();
    FieldElement x = field->one();
    for (size_t j = 0; j < n && j < field->q() - 1; ++j) {
        loc.push_back(x);
        x *= g;
    }
    if (n == field->q()) loc.push_back(field->zero());
    return loc;
}

GrsCode star_grs(const GrsCode& cp, const GrsCode& dp) {
    if (cp.locators != dp.locators) throw Error("LocatorMismatch", "star requires equal locators");
    size_t k = cp.dim + dp.dim - 1;
    if (k > cp.length()) throw Error("DimensionOverflow", "k + t - 1 > n");
    return GrsCode{cp.field, cp.locators, star(cp.multipliers, dp.multipliers), k};
}

GrsCode weakly_self_dual_grs_char2(const Field* field, const Vec& locators, size_t k) {
    if (field->p() != 2) throw Error("OddCharacteristic", "construction requires characteristic 2");
    size_t n = locators.size();
    if (2 * k < n) throw Error("DimensionTooSmall", "k < n/2");
    Vec lp = locator_products(field, locators);
    Vec v(n);
    for (size_t j = 0; j < n; ++j)
        v[j] = field->sqrt_char2(lp[j].inv());
    return GrsCode{field, locators, v, k};
}

GrsCode self_dual_grs_char2(const Field* field, const Vec& locators) {
    if (locators.size() % 2 != 0) throw Error("OddLength", "self-dual needs even length");
    return weakly_self_dual_grs_char2(field, locators, locators.size() / 2);
}

bool is_weakly_self_dual(const GrsCode& code) {
    Matrix g = code.generator();
    Matrix ker = kernel(g);
    if (ker.rows() == 0) return true; // full code
    return rank(Matrix::vstack(g, ker)) == rank(g);
}

namespace {

// Multipliers from v_j^2 = (L_j f(l_j))^{-1}, if every right side is a square
// and f vanishes at no locator.
std::optional<Vec> multipliers_from_poly(const Field* field, const Vec& locators,
                                         const Vec& lp, const Vec& fcoeffs) {
    size_t n = locators.size();
    Vec v(n);
    for (size_t j = 0; j < n; ++j) {
        FieldElement fval = field->zero();
        FieldElement pw = field->one();
        for (const FieldElement& coef : fcoeffs) {
            fval += coef * pw;
            pw *= locators[j];
        }
        if (fval.is_zero()) return std::nullopt;
        auto root = field->sqrt((lp[j] * fval).inv());
        if (!root) return std::nullopt;
        v[j] = *root;
    }
    return v;
}

} // namespace

std::optional<GrsCode> find_wsd_multipliers(const Field* field, const Vec& locators,
                                            size_t k, const WsdSearchBudget& budget,
                                            uint64_t seed) {
    size_t n = locators.size();
    if (2 * k < n) throw Error("DimensionTooSmall", "k < n/2");
    size_t maxdeg = 2 * k - n;
    Vec lp = locator_products(field, locators);

    auto try_poly = [&](const Vec& f) -> std::optional<GrsCode> {
        auto v = multipliers_from_poly(field, locators, lp, f);
        if (!v) return std::nullopt;
        GrsCode code{field, locators, *v, k};
        if (is_weakly_self_dual(code)) return code;
        return std::nullopt;
    };

    // Structured pass: scalar c times a monic polynomial with few nonzero
    // terms. The scalar only matters through its square class.
    Vec scalars = {field->one()};
    for (uint64_t x = 2; x < field->q(); ++x) {
        FieldElement e = field->element(x);
        if (!field->is_square(e)) { scalars.push_back(e); break; }
    }
    for (size_t deg = 0; deg <= maxdeg; ++deg) {
        // choose up to (max_nonzero_coeffs - 1) extra nonzero terms below deg
        std::vector<Vec> candidates;
        Vec base(deg + 1, field->zero());
        base[deg] = field->one();
        candidates.push_back(base);
        size_t extra = budget.max_nonzero_coeffs > 0 ? budget.max_nonzero_coeffs - 1 : 0;
        if (extra >= 1) {
            for (size_t i = 0; i < deg; ++i)
                for (uint64_t a = 1; a < field->q(); ++a) {
                    Vec f = base;
                    f[i] = field->element(a);
                    candidates.push_back(f);
                }
        }
        if (extra >= 2) {
            for (size_t i = 0; i < deg; ++i)
                for (size_t j = i + 1; j < deg; ++j)
                    for (uint64_t a = 1; a < field->q(); ++a)
                        for (uint64_t b = 1; b < field->q(); ++b) {
                            Vec f = base;
                            f[i] = field->element(a);
                            f[j] = field->element(b);
                            candidates.push_back(f);
                        }
        }
        for (const Vec& f : candidates)
            for (FieldElement c : scalars) {
                Vec fc(f.size());
                for (size_t i = 0; i < f.size(); ++i) fc[i] = c * f[i];
                if (auto code = try_poly(fc)) return code;
            }
    }

    // Degree 0 means the structured pass was already exhaustive (only the
    // square class of the constant matters).
    if (maxdeg == 0) return std::nullopt;

    // Random pass over arbitrary coefficient vectors of degree <= maxdeg.
    std::mt19937_64 rng(seed);
    for (size_t trial = 0; trial < budget.random_trials; ++trial) {
        Vec f(maxdeg + 1);
        bool all_zero = true;
        for (size_t i = 0; i <= maxdeg; ++i) {
            f[i] = field->element(rng() % field->q());
            all_zero = all_zero && f[i].is_zero();
        }
        if (all_zero) continue;
        if (auto code = try_poly(f)) return code;
    }
    return std::nullopt;
}

GrsCode retrieval_code(const GrsCode& cp, size_t t, const WsdSearchBudget& budget) {
    size_t n = cp.length();
    size_t kprime = cp.dim + t - 1;
    if (!(2 * kprime >= n && kprime < n))
        throw Error("ConstraintViolated", "need n/2 <= k + t - 1 < n");
    GrsCode sp{};
    // Preferred solution: keep the storage code's own multipliers for the
    // star code, which makes D' the unit-multiplier [n, t] code. This is the
    // canonical choice whenever it already yields a weakly self-dual S'.
    GrsCode keep{cp.field, cp.locators, cp.multipliers, kprime};
    if (is_weakly_self_dual(keep)) {
        sp = keep;
    } else if (cp.field->p() == 2) {
        sp = weakly_self_dual_grs_char2(cp.field, cp.locators, kprime);
    } else {
        auto found = find_wsd_multipliers(cp.field, cp.locators, kprime, budget);
        if (!found) throw Error("NotFound", "no weakly self-dual multipliers within budget");
        sp = *found;
    }
    Vec vd(n);
    for (size_t j = 0; j < n; ++j)
        vd[j] = cp.multipliers[j].inv() * sp.multipliers[j];
    return GrsCode{cp.field, cp.locators, vd, t};
}

StarGeneratorBundle split_wsd_generator(const GrsCode& sp) {
    if (!is_weakly_self_dual(sp)) throw Error("NotWeaklySelfDual", "S' must contain its dual");
    size_t n = sp.length();
    size_t kp = sp.dim;
    Matrix h = sp.dual().generator(); // rows span S'^perp, itself a GRS generator
    Matrix g = sp.generator();
    // Complete H to a basis of S' with generator rows.
    Matrix stack = h;
    std::vector<Vec> frows;
    for (size_t r = 0; r < g.rows() && stack.rows() < kp; ++r) {
        Matrix cand = Matrix::vstack(stack, Matrix::from_rows(sp.field, {g.row(r)}));
        if (rank(cand) > rank(stack)) {
            stack = cand;
            frows.push_back(g.row(r));
        }
    }
    if (stack.rows() != kp) throw Error("InternalFault", "completion to basis failed");
    Matrix f = frows.empty() ? Matrix(sp.field, 0, n) : Matrix::from_rows(sp.field, frows);
    Matrix gs = Matrix::vstack(Matrix::block_diag(h, h), Matrix::block_diag(f, f));
    return StarGeneratorBundle{h, f, gs};
}

size_t min_distance_bruteforce(const GrsCode& code, uint64_t max_words) {
    uint64_t q = code.field->q();
    uint64_t total = 1;
    for (size_t i = 0; i < code.dim; ++i) {
        total *= q;
        if (total > max_words) throw Error("TooLarge", "codeword enumeration too large");
    }
    Matrix g = code.generator();
    size_t best = code.length() + 1;
    for (uint64_t enc = 1; enc < total; ++enc) {
        Vec msg(code.dim);
        uint64_t e = enc;
        for (size_t i = 0; i < code.dim; ++i) { msg[i] = code.field->element(e % q); e /= q; }
        Vec cw = vec_mat(msg, g);
        size_t w = 0;
        for (const FieldElement& x : cw) w += !x.is_zero();
        best = std::min(best, w);
    }
    return best;
}

} // namespace qpir
