#pragma once

// Thomae formulas, going down and up between level-4 and level-2 theta null
// points, Rosenhain recovery, and the sqrt(3) RM search.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmtheta/field.hpp"
#include "rmtheta/theta_point.hpp"

namespace rmtheta {

/// Five finite branch points; the sixth is at infinity.
class BranchPoints {
public:
    /// Throws RepeatedBranchPoint.
    explicit BranchPoints(std::array<Element, 5> e);

    const Element &operator[](std::size_t k) const { return e_[k]; }
    const std::array<Element, 5> &values() const { return e_; }
    Field field() const { return e_[0].field(); }

private:
    std::array<Element, 5> e_;
};

/// y^2 = x(x-1)(x-l1)(x-l2)(x-l3).
class RosenhainCurve {
public:
    /// Throws InvalidCurve unless the l_i avoid {0,1} and are distinct.
    explicit RosenhainCurve(std::array<Element, 3> lambda);

    /// Six finite pairwise distinct branch points; (e1, e2, e3) go to (0, 1, inf).
    static RosenhainCurve from_branch_points(std::span<const Element, 6> e);

    const Element &operator[](std::size_t k) const { return lambda_[k]; }
    const std::array<Element, 3> &lambdas() const { return lambda_; }
    Field field() const { return lambda_[0].field(); }

    /// (0, 1, l1, l2, l3).
    BranchPoints branch_points() const;

    bool operator==(const RosenhainCurve &o) const { return lambda_ == o.lambda_; }

private:
    std::array<Element, 3> lambda_;
};

/// The four difference products r_i with T_i^2 = r_i, where
/// T = (b00^2+b01^2+b10^2+b11^2, b00^2-b01^2+b10^2-b11^2,
///      b00^2+b01^2-b10^2-b11^2, b00^2-b01^2-b10^2+b11^2).
std::array<Element, 4> thomae_squares(const BranchPoints &e);

/// The combinations T_1..T_4 of a level-2 point, in the order above.
std::array<Element, 4> thomae_combinations(const ThetaPoint2 &b);

/// Memo for square roots in rm_test; keys are the radicands.
using SqrtCache = std::map<Element, std::optional<Element>>;

/// Candidate (b00^2, b01^2, b10^2, b11^2) tuples, one per sign class of the
/// roots of r modulo the global sign.  Throws NoSquareRoots when none exist.
std::vector<std::array<Element, 4>> level2_squares_from_thomae(std::span<const Element, 4> r,
                                                               SqrtCache *cache = nullptr);

struct Level2Data {
    std::array<Element, 4> squares; // b00^2, b01^2, b10^2, b11^2
    /// b00b01, b00b10, b00b11, b01b10, b01b11, b10b11; absent when only the
    /// squares are known.
    std::optional<std::array<Element, 6>> products;

    /// Slot of b_i b_j (i < j) in products.
    static constexpr std::size_t slot(std::size_t i, std::size_t j) {
        return i == 0 ? j - 1 : (i == 1 ? j + 1 : 5);
    }

    /// squares[i] * squares[j] == products[ij]^2 for all pairs.
    bool consistent() const;
    std::string to_text() const;
};

/// Throws NotAThetaNullPoint unless P passes the Mumford relations.
Level2Data level4_to_level2(const ThetaPoint4 &p);

/// Squares and products of a known level-2 point.
Level2Data level2_data_of(const ThetaPoint2 &b);

/// With products: the single projective class.  Squares only: every sign
/// class whose roots exist in F (possibly none).  Throws AllZero.
std::vector<ThetaPoint2> level2_point_from_data(const Level2Data &d, SqrtCache *cache = nullptr);

/// Mumford-filtered, projectively distinct lifts.  Throws NoLift when no
/// sign choice has all its roots in F.
std::vector<ThetaPoint4> level2_to_level4(const ThetaPoint2 &b, SqrtCache *cache = nullptr);

/// Throws DegenerateThetaPoint if some T_i = 0 and NoSolutionInField when
/// the needed roots are missing.  Each result passes the forward check.
std::vector<RosenhainCurve> rosenhain_from_level2(const ThetaPoint2 &b);

/// Whether thomae_squares(c) is proportional to (T_1^2 : ... : T_4^2).
bool thomae_ratios_match(const RosenhainCurve &c, const ThetaPoint2 &b);

struct SearchConfig {
    std::size_t max_orderings = 120;
    std::size_t max_candidates = 100000;
    bool auto_extend = false;
};

struct RmDecision {
    bool positive = false;
    std::optional<ThetaPoint4> witness;
    std::array<int, 5> ordering{}; // positions into (0, 1, l1, l2, l3)
    std::size_t orderings_tried = 0;
    std::size_t candidates_tested = 0;
    bool truncated = false; // stopped by max_candidates
    /// Set when auto_extend moved the search to an extension.
    std::optional<Field> extended_field;

    std::string summary() const;
};

/// Throws CharacteristicDividesSix, and FieldTooSmall when every branch
/// dies for lack of square roots and the field cannot be extended.
RmDecision rm_test(const RosenhainCurve &c, const SearchConfig &cfg = {});

/// Whether (x0, x1, x2, x3) has x1 = x3 and (x0^2+x2^2) x0 x2 = 2 x1^4.
bool is_elliptic_theta_null(std::span<const Element, 4> x);

/// a(i,j) = x_i y_j.  Throws NotEllipticThetaNull.
ThetaPoint4 product_point(std::span<const Element, 4> x, std::span<const Element, 4> y);

/// Monic irreducible polynomial of degree d over F_p, found by a fixed
/// search order.
std::vector<mpz_class> find_irreducible(const mpz_class &p, std::size_t d);

} // namespace rmtheta
