#pragma once

// Level-4 and level-2 theta null points.  Both are projective: comparisons
// go through projectively_equal().

#include <array>
#include <span>

#include "rmtheta/field.hpp"
#include "rmtheta/index.hpp"

namespace rmtheta {

/// The ten indexes u with u = min(u, -u), in lexicographic order.
inline constexpr std::array<Index, 10> kReducedIndexes = {Index(0, 0), Index(0, 1), Index(0, 2), Index(1, 0),
                                                          Index(1, 1), Index(1, 2), Index(1, 3), Index(2, 0),
                                                          Index(2, 1), Index(2, 2)};

/// Whether (x_k) and (y_k) agree up to a nonzero scalar (both nonzero).
bool projectively_equal(std::span<const Element> x, std::span<const Element> y);

/// Scale so the first nonzero coordinate is 1.
void normalize_projective(std::span<Element> x);

class ThetaPoint4 {
public:
    /// Coordinates by Index::ordinal().  Throws NotSymmetric unless
    /// a_u = a_{-u}, AllZero if every coordinate vanishes.
    explicit ThetaPoint4(std::array<Element, 16> coords);

    /// Expand the ten coordinates at kReducedIndexes by symmetry.
    static ThetaPoint4 from_reduced(std::span<const Element, 10> reduced);

    const Element &operator[](Index u) const { return coords_[u.ordinal()]; }
    std::span<const Element, 16> coordinates() const { return coords_; }
    Field field() const { return coords_[0].field(); }

    ThetaPoint4 normalized() const;
    bool projectively_equal(const ThetaPoint4 &o) const;

private:
    std::array<Element, 16> coords_;
};

enum class Level2Index { b00 = 0, b01 = 1, b10 = 2, b11 = 3 };

class ThetaPoint2 {
public:
    /// Coordinates b00, b01, b10, b11.  Throws AllZero.
    explicit ThetaPoint2(std::array<Element, 4> coords);

    const Element &operator[](std::size_t k) const { return coords_[k]; }
    std::span<const Element, 4> coordinates() const { return coords_; }
    Field field() const { return coords_[0].field(); }

    ThetaPoint2 normalized() const;
    bool projectively_equal(const ThetaPoint2 &o) const;

private:
    std::array<Element, 4> coords_;
};

} // namespace rmtheta
