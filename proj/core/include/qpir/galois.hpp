#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qpir/errors.hpp"

namespace qpir {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// One element of GF(p^m), stored as its integer index: the base-p digit
/// encoding (little-endian) of the coefficient vector in the polynomial basis.
/// Elements are plain values; arithmetic requires both operands to belong to
/// the same field object.
class FieldElement {
  public:
    FieldElement() : field_(nullptr), v_(0) {}
    FieldElement(const Field* field, uint32_t v) : field_(field), v_(v) {}

    uint32_t value() const { return v_; }
    const Field* field() const { return field_; }

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator/(FieldElement o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(int64_t e) const;

    FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
    FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
    FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

    bool operator==(FieldElement o) const { return v_ == o.v_; }
    bool operator!=(FieldElement o) const { return v_ != o.v_; }
    bool is_zero() const { return v_ == 0; }

  private:
    const Field* field_;
    uint32_t v_;
};

/// GF(p^m) for prime p, q = p^m <= 2^16. Multiplication runs over exp/log
/// tables built at construction; addition is digit-wise mod p.
class Field {
  public:
    /// Builds GF(p^m). If `modulus` is omitted a canonical irreducible is
    /// chosen: the monic degree-m polynomial with the smallest base-p integer
    /// encoding of its coefficient list. Throws NonPrimeP / ReducibleModulus.
    static FieldPtr make(uint64_t p, uint32_t m = 1,
                         std::optional<std::vector<uint32_t>> modulus = std::nullopt);

    uint64_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint64_t q() const { return q_; }
    /// Modulus coefficients, low degree first, length m+1, monic.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {this, 0}; }
    FieldElement one() const { return {this, 1}; }
    /// Element from its integer (base-p digit) encoding, 0 <= v < q.
    FieldElement element(uint64_t v) const;
    /// Element from an integer reduced mod p, lifted into the prime subfield.
    FieldElement from_int(int64_t v) const;
    /// Smallest-index generator of the multiplicative group.
    FieldElement primitive_element() const { return {this, generator_}; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, int64_t e) const;

    /// Absolute trace to GF(p): sum of x^{p^i}, i = 0..m-1. Returned as the
    /// prime-subfield element (index < p).
    FieldElement trace(FieldElement x) const;
    /// Square root in characteristic 2: x^{2^{m-1}}. Throws OddCharacteristic.
    FieldElement sqrt_char2(FieldElement x) const;
    /// Whether x is a square in the field (always true in char 2).
    bool is_square(FieldElement x) const;
    /// A square root of x if one exists.
    std::optional<FieldElement> sqrt(FieldElement x) const;

    /// Discrete log of a nonzero element w.r.t. the primitive element.
    uint32_t log(FieldElement a) const;

    bool same(const Field* o) const { return o == this; }

  private:
    Field(uint64_t p, uint32_t m, std::vector<uint32_t> modulus);
    void build_tables();
    uint32_t mul_raw(uint32_t a, uint32_t b) const;

    uint64_t p_;
    uint32_t m_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;  // exp_[i] = g^i, length 2(q-1)
    std::vector<uint32_t> log_;  // log_[v] for v != 0
    uint32_t generator_ = 0;
};

/// Irreducibility of a monic polynomial over GF(p) by trial division.
bool is_irreducible_mod_p(const std::vector<uint32_t>& poly, uint64_t p);

} // namespace qpir
