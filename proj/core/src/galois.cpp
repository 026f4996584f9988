#include "qpir/galois.hpp"

#include <algorithm>
#include <numeric>

namespace qpir {

namespace {

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over GF(p), coefficients low degree first, trailing zeros allowed.
using Poly = std::vector<uint32_t>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mod(Poly a, const Poly& f, uint64_t p) {
    a = trim(a);
    Poly g = trim(f);
    while (a.size() >= g.size() && !a.empty()) {
        uint64_t lead = a.back();
        // g is monic in all our uses; divide defensively anyway
        uint64_t inv_lead = 1;
        if (g.back() != 1) {
            for (uint64_t x = 1; x < p; ++x)
                if (x * g.back() % p == 1) { inv_lead = x; break; }
        }
        uint64_t factor = lead * inv_lead % p;
        size_t shift = a.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) {
            uint64_t sub = factor * g[i] % p;
            a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
        }
        a = trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<uint32_t>((c[i + j] + uint64_t(a[i]) * b[j]) % p);
    return poly_mod(std::move(c), f, p);
}

} // namespace

bool is_irreducible_mod_p(const std::vector<uint32_t>& poly, uint64_t p) {
    Poly f = trim(poly);
    if (f.size() < 2) return false;
    size_t deg = f.size() - 1;
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (size_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t enc = 0; enc < count; ++enc) {
            Poly g(d + 1, 0);
            uint64_t e = enc;
            for (size_t i = 0; i < d; ++i) { g[i] = static_cast<uint32_t>(e % p); e /= p; }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field::Field(uint64_t p, uint32_t m, std::vector<uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < m_; ++i) q_ *= p_;
    build_tables();
}

FieldPtr Field::make(uint64_t p, uint32_t m, std::optional<std::vector<uint32_t>> modulus) {
    if (!is_prime(p)) throw Error("NonPrimeP", "p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw Error("InvalidParams", "extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > (1u << 16)) throw Error("FieldTooLarge", "q > 2^16 unsupported");
    }
    std::vector<uint32_t> mod;
    if (modulus) {
        mod = *modulus;
        while (!mod.empty() && mod.back() == 0) mod.pop_back();
        if (mod.size() != m + 1 || mod.back() != 1 || !is_irreducible_mod_p(mod, p))
            throw Error("ReducibleModulus", "modulus is not a monic irreducible of degree m");
    } else if (m == 1) {
        mod = {0, 1}; // x, unused for m = 1
    } else {
        // Canonical choice: smallest base-p encoding among monic irreducibles.
        uint64_t count = 1;
        for (uint32_t i = 0; i < m; ++i) count *= p;
        for (uint64_t enc = 0; enc < count; ++enc) {
            std::vector<uint32_t> cand(m + 1, 0);
            uint64_t e = enc;
            for (uint32_t i = 0; i < m; ++i) { cand[i] = static_cast<uint32_t>(e % p); e /= p; }
            cand[m] = 1;
            if (is_irreducible_mod_p(cand, p)) { mod = cand; break; }
        }
    }
    return FieldPtr(new Field(p, m, std::move(mod)));
}

uint32_t Field::mul_raw(uint32_t a, uint32_t b) const {
    // Polynomial-basis multiplication, used only while bootstrapping tables.
    Poly pa, pb;
    for (uint64_t v = a; v; v /= p_) pa.push_back(static_cast<uint32_t>(v % p_));
    for (uint64_t v = b; v; v /= p_) pb.push_back(static_cast<uint32_t>(v % p_));
    Poly c = poly_mulmod(pa, pb, modulus_, p_);
    uint64_t out = 0;
    for (size_t i = c.size(); i-- > 0;) out = out * p_ + c[i];
    return static_cast<uint32_t>(out);
}

void Field::build_tables() {
    if (m_ == 1) {
        // Direct modular arithmetic also uses the tables, for uniformity.
        exp_.assign(2 * (q_ - 1), 0);
        log_.assign(q_, 0);
        // find smallest generator
        for (uint64_t g = 1; g < q_; ++g) {
            uint64_t x = 1;
            uint64_t ord = 0;
            do { x = x * g % q_; ++ord; } while (x != 1);
            if (ord == q_ - 1) { generator_ = static_cast<uint32_t>(g); break; }
        }
        uint64_t x = 1;
        for (uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = static_cast<uint32_t>(x);
            exp_[i + q_ - 1] = static_cast<uint32_t>(x);
            log_[x] = static_cast<uint32_t>(i);
            x = x * generator_ % q_;
        }
        return;
    }
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    for (uint32_t g = 1; g < q_; ++g) {
        uint64_t ord = 0;
        uint32_t x = 1;
        do { x = mul_raw(x, g); ++ord; } while (x != 1);
        if (ord == q_ - 1) { generator_ = g; break; }
    }
    uint32_t x = 1;
    for (uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        exp_[i + q_ - 1] = x;
        log_[x] = static_cast<uint32_t>(i);
        x = mul_raw(x, generator_);
    }
}

FieldElement Field::element(uint64_t v) const {
    if (v >= q_) throw Error("InvalidElement", "encoding out of range");
    return {this, static_cast<uint32_t>(v)};
}

FieldElement Field::from_int(int64_t v) const {
    int64_t pp = static_cast<int64_t>(p_);
    int64_t r = ((v % pp) + pp) % pp;
    return {this, static_cast<uint32_t>(r)};
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    if (a.field() != this || b.field() != this)
        throw Error("FieldMismatch", "operands from different fields");
    if (m_ == 1) return {this, static_cast<uint32_t>((uint64_t(a.value()) + b.value()) % p_)};
    if (p_ == 2) return {this, a.value() ^ b.value()};
    uint64_t out = 0, mul = 1, av = a.value(), bv = b.value();
    for (uint32_t i = 0; i < m_; ++i) {
        out += (av % p_ + bv % p_) % p_ * mul;
        av /= p_; bv /= p_; mul *= p_;
    }
    return {this, static_cast<uint32_t>(out)};
}

FieldElement Field::neg(FieldElement a) const {
    if (a.field() != this) throw Error("FieldMismatch", "operand from different field");
    if (m_ == 1) return {this, static_cast<uint32_t>((p_ - a.value()) % p_)};
    if (p_ == 2) return a;
    uint64_t out = 0, mul = 1, av = a.value();
    for (uint32_t i = 0; i < m_; ++i) {
        out += (p_ - av % p_) % p_ * mul;
        av /= p_; mul *= p_;
    }
    return {this, static_cast<uint32_t>(out)};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    if (a.field() != this || b.field() != this)
        throw Error("FieldMismatch", "operands from different fields");
    if (a.is_zero() || b.is_zero()) return zero();
    return {this, exp_[uint64_t(log_[a.value()]) + log_[b.value()]]};
}

FieldElement Field::inv(FieldElement a) const {
    if (a.field() != this) throw Error("FieldMismatch", "operand from different field");
    if (a.is_zero()) throw Error("DivideByZero", "inverse of zero");
    return {this, exp_[(q_ - 1 - log_[a.value()]) % (q_ - 1)]};
}

FieldElement Field::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement Field::pow(FieldElement a, int64_t e) const {
    if (a.field() != this) throw Error("FieldMismatch", "operand from different field");
    if (a.is_zero()) {
        if (e < 0) throw Error("DivideByZero", "negative power of zero");
        return e == 0 ? one() : zero();
    }
    int64_t ord = static_cast<int64_t>(q_ - 1);
    int64_t ee = ((e % ord) + ord) % ord;
    return {this, exp_[uint64_t(log_[a.value()]) * ee % (q_ - 1)]};
}

FieldElement Field::trace(FieldElement x) const {
    if (x.field() != this) throw Error("FieldMismatch", "operand from different field");
    FieldElement acc = zero();
    FieldElement frob = x;
    uint64_t pk = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        acc = add(acc, frob);
        frob = pow(frob, static_cast<int64_t>(p_));
    }
    (void)pk;
    return acc; // lies in the prime subfield: index < p
}

FieldElement Field::sqrt_char2(FieldElement x) const {
    if (p_ != 2) throw Error("OddCharacteristic", "sqrt_char2 requires characteristic 2");
    if (x.is_zero()) return zero();
    int64_t e = 1;
    for (uint32_t i = 0; i + 1 < m_; ++i) e *= 2;
    return pow(x, e);
}

bool Field::is_square(FieldElement x) const {
    if (p_ == 2 || x.is_zero()) return true;
    return log_[x.value()] % 2 == 0;
}

std::optional<FieldElement> Field::sqrt(FieldElement x) const {
    if (x.is_zero()) return zero();
    if (p_ == 2) return sqrt_char2(x);
    uint32_t l = log_[x.value()];
    if (l % 2 != 0) return std::nullopt;
    return FieldElement{this, exp_[l / 2]};
}

uint32_t Field::log(FieldElement a) const {
    if (a.is_zero()) throw Error("DivideByZero", "log of zero");
    return log_[a.value()];
}

FieldElement FieldElement::operator+(FieldElement o) const { return field_->add(*this, o); }
FieldElement FieldElement::operator-(FieldElement o) const { return field_->sub(*this, o); }
FieldElement FieldElement::operator*(FieldElement o) const { return field_->mul(*this, o); }
FieldElement FieldElement::operator/(FieldElement o) const { return field_->div(*this, o); }
FieldElement FieldElement::operator-() const { return field_->neg(*this); }
FieldElement FieldElement::inv() const { return field_->inv(*this); }
FieldElement FieldElement::pow(int64_t e) const { return field_->pow(*this, e); }

} // namespace qpir
