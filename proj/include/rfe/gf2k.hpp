// Binary extension field arithmetic GF(2^k), 1 <= k <= 128, over bit-string
// representations where addition is exclusive-or. Two bases are supported:
// the standard polynomial basis (x^{k-1}, ..., x, 1) and, for even k, the
// parity-split reordering (x^{k-1}, x^{k-3}, ..., x, x^{k-2}, ..., 1) that
// separates odd and even powers.
#pragma once

#include "rfe/bits.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace rfe {

using u128 = unsigned __int128;

enum class Basis { standard, parity_split };

class FieldSpec {
public:
    // Default modulus: a fixed table of conventional low-weight irreducible
    // polynomials (lowest-exponent trinomial, else pentanomial), verified
    // irreducible at construction.
    static std::shared_ptr<const FieldSpec> make(int degree, Basis basis = Basis::standard);
    // Explicit modulus given as the full (k+1)-bit polynomial; the x^k term
    // is required. Irreducibility is checked: trial division for k <= 16,
    // a Rabin test otherwise.
    static std::shared_ptr<const FieldSpec> make_with_modulus(int degree, u128 modulus_low,
                                                              Basis basis = Basis::standard);

    int degree() const { return degree_; }
    Basis basis() const { return basis_; }
    u128 modulus_low() const { return modulus_low_; }  // modulus minus the implicit x^k term
    std::string modulus_hex() const;                   // full (k+1)-bit polynomial
    std::string id() const;                            // "gf2^k/<modulus-hex>/<basis>"

    bool same_structure(const FieldSpec& other) const {
        return degree_ == other.degree_ && modulus_low_ == other.modulus_low_ &&
               basis_ == other.basis_;
    }

    // Raw operations on k-bit words holding this spec's bit-string
    // representation (string position 1 <-> machine bit k-1). All are pure.
    u128 mask() const { return mask_; }
    u128 add_raw(u128 a, u128 b) const { return a ^ b; }
    u128 mul_raw(u128 a, u128 b) const;
    u128 inv_raw(u128 a) const;
    u128 div_raw(u128 a, u128 b) const;
    u128 div_by_x_raw(u128 a) const;
    u128 x_element_raw() const;  // the monomial x in this representation

    // Representation change between the split bit layout and coefficients.
    u128 to_standard_raw(u128 a) const;    // this basis  -> coefficient word
    u128 from_standard_raw(u128 a) const;  // coefficient word -> this basis

    // Dense multiplication table for degree <= 8 (row-major, size 2^k * 2^k),
    // nullptr for larger degrees.
    const std::uint8_t* mul_table() const { return mul_table_.empty() ? nullptr : mul_table_.data(); }

private:
    FieldSpec(int degree, u128 modulus_low, Basis basis);
    u128 mul_standard(u128 a, u128 b) const;

    int degree_;
    u128 modulus_low_;
    Basis basis_;
    u128 mask_;
    std::vector<std::uint8_t> mul_table_;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(u128 raw, FieldSpecPtr spec);
    FieldElement(const Bits& bits, FieldSpecPtr spec);

    u128 raw() const { return raw_; }
    const FieldSpecPtr& spec() const { return spec_; }
    Bits bits() const;
    std::string to_hex() const { return bits().to_hex(); }
    bool is_zero() const { return raw_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    u128 raw_ = 0;
    FieldSpecPtr spec_;
};

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement div(const FieldElement& x, const FieldElement& y);
FieldElement div_by_x(const FieldElement& z);
FieldElement change_basis(const FieldElement& x, Basis target);
// Polynomial evaluation, coefficients highest degree first; empty list -> 0.
FieldElement eval_poly(const std::vector<FieldElement>& coeffs, const FieldElement& point);

// GF(2)[x] irreducibility of modulus_low + x^degree (exposed for tests).
bool is_irreducible_poly(int degree, u128 modulus_low);
// The pinned default modulus for a degree (low bits, x^degree implicit).
u128 default_modulus_low(int degree);

}  // namespace rfe
