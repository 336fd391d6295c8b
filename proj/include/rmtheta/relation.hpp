#pragma once

// Sparse multivariate polynomials with integer coefficients over the theta
// coordinates a(i,j) (family A) and a^sqrt3(i,j) (family B).

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtheta/index.hpp"

namespace rmtheta {

enum class Family : std::uint8_t { A = 0, B = 1 };

struct VarRef {
    Family family = Family::A;
    Index index;

    constexpr auto operator<=>(const VarRef &) const = default;

    constexpr int ordinal() const { return 16 * static_cast<int>(family) + index.ordinal(); }
    static constexpr VarRef from_ordinal(int k) {
        return VarRef{k < 16 ? Family::A : Family::B, Index::from_ordinal(k % 16)};
    }
    std::string to_string() const;
};

inline constexpr int kVarCount = 32;

constexpr VarRef A(int i, int j) { return VarRef{Family::A, Index(i, j)}; }
constexpr VarRef B(int i, int j) { return VarRef{Family::B, Index(i, j)}; }

class Monomial {
public:
    Monomial() { exps_.fill(0); }
    explicit Monomial(VarRef v, unsigned e = 1) : Monomial() { exps_[v.ordinal()] = static_cast<std::uint8_t>(e); }

    unsigned exponent(VarRef v) const { return exps_[v.ordinal()]; }
    unsigned exponent(int ordinal) const { return exps_[ordinal]; }
    unsigned degree() const;
    unsigned degree_in(Family f) const;

    /// Variables with multiplicity, in canonical variable order.
    std::vector<VarRef> factors() const;

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    bool operator==(const Monomial &o) const { return exps_ == o.exps_; }

    /// Graded reverse-lexicographic comparison: true iff a sorts before b
    /// (higher degree first; on ties the monomial with the smaller exponent
    /// in the last differing variable comes first).
    static bool precedes(const Monomial &a, const Monomial &b);

    std::string to_string() const;

private:
    std::array<std::uint8_t, kVarCount> exps_;
};

struct Term {
    Monomial monomial;
    mpz_class coeff;
};

class Relation {
public:
    Relation() = default;
    static Relation variable(VarRef v);
    static Relation constant(const mpz_class &c);

    /// Terms in canonical monomial order, like terms merged, no zeros.
    const std::vector<Term> &terms() const { return terms_; }
    const std::string &id() const { return id_; }
    Relation &set_id(std::string id) {
        id_ = std::move(id);
        return *this;
    }

    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;
    bool is_homogeneous() const;
    std::vector<VarRef> variables() const;

    friend Relation operator+(const Relation &a, const Relation &b);
    friend Relation operator-(const Relation &a, const Relation &b);
    friend Relation operator*(const Relation &a, const Relation &b);
    friend Relation operator*(long c, const Relation &a);
    Relation operator-() const;

    /// Content 1 and positive leading coefficient; idempotent.
    Relation normalized() const;

    /// Rename variables (a ring homomorphism sending variables to variables).
    Relation substitute(const std::function<VarRef(VarRef)> &f) const;

    /// Same polynomial, ignoring ids.
    bool same_polynomial(const Relation &o) const;

    /// `+c*var^e*var...` terms separated by spaces; "0" for the zero polynomial.
    std::string body_string() const;
    /// `rel <id>: <body>`
    std::string serialize() const;

private:
    explicit Relation(std::vector<Term> terms) : terms_(std::move(terms)) {}
    static Relation from_terms(std::vector<Term> terms);

    std::vector<Term> terms_;
    std::string id_;
};

inline Relation var(VarRef v) { return Relation::variable(v); }
inline Relation poly_add(const Relation &a, const Relation &b) { return a + b; }
inline Relation poly_mul(const Relation &a, const Relation &b) { return a * b; }
inline Relation poly_scale(long c, const Relation &a) { return c * a; }
inline Relation normalize(const Relation &a) { return a.normalized(); }

enum class Provenance { Mumford, RMBilinear, RM, SplitProduct, SplitSquare };

std::string_view to_string(Provenance p);

class RelationSet {
public:
    explicit RelationSet(Provenance tag) : tag_(tag) {}

    Provenance tag() const { return tag_; }
    const std::vector<Relation> &relations() const { return relations_; }
    std::size_t size() const { return relations_.size(); }
    auto begin() const { return relations_.begin(); }
    auto end() const { return relations_.end(); }
    const Relation &operator[](std::size_t k) const { return relations_[k]; }

    /// Normalizes r; drops it if zero or already present.  Returns whether it was added.
    bool add(const Relation &r);
    bool contains(const Relation &r) const;

    std::string serialize() const;

private:
    Provenance tag_;
    std::vector<Relation> relations_;
};

/// Parses one relation body (the part after `rel <id>:`).
Relation parse_relation_body(std::string_view body);

/// Parses a relation file; blank lines and `#` comments are ignored.  The
/// relations are stored as given (they must already be canonical for a
/// serialize/parse round trip).
RelationSet parse_relations(std::string_view text, Provenance tag);

/// Whether `target` lies in the Q-linear span of `rs` (exact rational
/// elimination).  Throws DegreeMismatch unless every polynomial involved is
/// homogeneous of the same degree.
bool span_contains(const Relation &target, const RelationSet &rs);

/// Rank over Q of the coefficient matrix of rs.
std::size_t rational_rank(const RelationSet &rs);

} // namespace rmtheta
