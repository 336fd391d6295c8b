#pragma once

// Combinatorics of the index group (Z/4Z)^2.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rmtheta {

struct Index {
    std::uint8_t i = 0;
    std::uint8_t j = 0;

    constexpr Index() = default;
    constexpr Index(int i_, int j_)
        : i(static_cast<std::uint8_t>(((i_ % 4) + 4) % 4)), j(static_cast<std::uint8_t>(((j_ % 4) + 4) % 4)) {}

    constexpr auto operator<=>(const Index &) const = default;

    /// Position 0..15 in lexicographic order.
    constexpr int ordinal() const { return 4 * i + j; }
    static constexpr Index from_ordinal(int k) { return Index(k / 4, k % 4); }

    /// Both components even, i.e. membership in Z2 = {0,2}^2.
    constexpr bool is_two_torsion() const { return i % 2 == 0 && j % 2 == 0; }

    friend constexpr Index operator+(Index a, Index b) { return Index(a.i + b.i, a.j + b.j); }
    friend constexpr Index operator-(Index a, Index b) { return Index(a.i - b.i, a.j - b.j); }
    friend constexpr Index operator*(int k, Index a) { return Index(k * a.i, k * a.j); }

    std::string to_string() const;
};

constexpr Index neg_index(Index u) { return Index(-u.i, -u.j); }

/// Representative of {u, -u}: the lexicographically smaller one.
constexpr Index neg_canonical(Index u) { return std::min(u, neg_index(u)); }

/// The matrix ((0 3) (1 0)) acting on column vectors.
constexpr Index apply_M(Index u) { return Index(3 * u.j, u.i); }

/// Z2 = {0,2}^2 in lexicographic order.
inline constexpr std::array<Index, 4> kTwoTorsion = {Index(0, 0), Index(0, 2), Index(2, 0), Index(2, 2)};

struct Triple {
    Index x, y, z;
    constexpr auto operator<=>(const Triple &) const = default;
};

/// Sorted multiset {x - 2y, x + y - z, x + y + z}.
using TripleKey = std::array<Index, 3>;

TripleKey triple_key(const Triple &t);

bool in_S(const Triple &t);

/// Members of S in lexicographic order (x, then y, then z).
std::vector<Triple> enumerate_S();

/// Unordered pairs of distinct triples of S with the same x and the same key,
/// ordered by (position of first, position of second) in enumerate_S().
std::vector<std::pair<Triple, Triple>> equivalent_pairs();

} // namespace rmtheta
