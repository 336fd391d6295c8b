#pragma once

// Exact arithmetic in F_p and in single extensions F_p[x]/(f).
//
// A Field is a cheap handle on an immutable descriptor; Elements carry a
// handle to the field they live in.  Mixing elements of different fields
// throws Errc::FieldMismatch.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmtheta/error.hpp"

namespace rmtheta {

namespace detail {
struct FieldImpl;
}

class Element;

/// Miller-Rabin round count used when certifying a characteristic.
inline constexpr int kPrimalityRounds = 40;

class Field {
public:
    /// Prime field F_p.  Throws EvenCharacteristic or CompositeCharacteristic.
    static Field prime(const mpz_class &p);

    /// F_p[name]/(f) with f given by its coefficients c0..cn (cn must be 1
    /// after reduction mod p).  Only prime fields can be extended.
    Field extend(std::vector<mpz_class> modulus, std::string name,
                 bool check_irreducible = false) const;

    const mpz_class &characteristic() const;
    std::size_t degree() const;
    const mpz_class &cardinality() const;
    bool is_extension() const;
    const std::string &generator_name() const;
    /// Monic modulus c0..cn; empty for a prime field.
    const std::vector<mpz_class> &modulus() const;

    Element zero() const;
    Element one() const;
    Element constant(long c) const;
    Element constant(const mpz_class &c) const;
    /// The class of the generator; only valid for extensions.
    Element generator() const;
    /// Coefficients are reduced mod p; the count must equal degree().
    Element from_coefficients(std::vector<mpz_class> coeffs) const;
    /// The element whose base-p digits are its coefficients (index in [0, q)).
    Element element_at(const mpz_class &index) const;

    Element parse(std::string_view text) const;
    std::string format(const Element &a) const;

    /// A fixed quadratic non-residue, found by deterministic search.
    Element non_residue() const;

    bool operator==(const Field &other) const;
    bool operator!=(const Field &other) const { return !(*this == other); }

    /// Ben-Or test: gcd(x^(p^i) - x, f) = 1 for i <= deg f / 2.
    static bool is_irreducible(const mpz_class &p, const std::vector<mpz_class> &modulus);

private:
    explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const detail::FieldImpl> impl_;

    friend class Element;
    friend bool is_square(const Element &a);
    friend std::optional<Element> sqrt(const Element &a);
};

class Element {
public:
    /// Unbound element; any arithmetic on it throws FieldMismatch.
    Element() = default;

    Field field() const;
    bool bound() const { return impl_ != nullptr; }
    std::span<const mpz_class> coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    Element operator-() const;
    Element &operator+=(const Element &b);
    Element &operator-=(const Element &b);
    Element &operator*=(const Element &b);
    Element &operator*=(long c);

    friend Element operator+(Element a, const Element &b) { return a += b; }
    friend Element operator-(Element a, const Element &b) { return a -= b; }
    friend Element operator*(const Element &a, const Element &b);
    friend Element operator*(Element a, long c) { return a *= c; }
    friend Element operator*(long c, Element a) { return a *= c; }

    Element square() const;
    /// Throws DivisionByZero on zero.
    Element inverse() const;
    Element pow(const mpz_class &e) const;
    Element pow(unsigned long e) const { return pow(mpz_class(e)); }
    /// The p-th power map.
    Element frobenius() const;
    /// Norm down to F_p.
    mpz_class norm() const;

    bool operator==(const Element &b) const;
    bool operator!=(const Element &b) const { return !(*this == b); }
    /// Total order: coefficient vectors compared from the highest
    /// coefficient down.  Used for sqrt canonicalization and as a map key.
    bool operator<(const Element &b) const;

    std::string to_string() const;

private:
    Element(std::shared_ptr<const detail::FieldImpl> impl, std::vector<mpz_class> coeffs)
        : impl_(std::move(impl)), coeffs_(std::move(coeffs)) {}

    const detail::FieldImpl &same_field(const Element &b) const;

    std::shared_ptr<const detail::FieldImpl> impl_;
    std::vector<mpz_class> coeffs_;

    friend class Field;
    friend struct detail::FieldImpl;
};

/// Euler criterion over F_q; 0 counts as a square.
bool is_square(const Element &a);

/// Square root, canonicalized to the smaller of {r, -r} under Element::operator<.
std::optional<Element> sqrt(const Element &a);

/// Image of a under the homomorphism sending the generator of a's field to
/// `generator_image` in `target` (the identity on F_p).
Element map_by_generator(const Element &a, const Field &target, const Element &generator_image);

/// Embed a prime-field element into any field of the same characteristic.
Element lift_constant(const Element &a, const Field &target);

} // namespace rmtheta
