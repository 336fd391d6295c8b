#include <doctest.h>

#include <algorithm>
#include <array>

#include "rmtheta/index.hpp"
#include "test_support.hpp"

using namespace rmtheta;
using namespace rmtheta::testing;

TEST_CASE("negation") {
    CHECK(neg_index(Index(0, 0)) == Index(0, 0));
    CHECK(neg_index(Index(1, 3)) == Index(3, 1));
    CHECK(neg_index(Index(2, 2)) == Index(2, 2));
    for (int k = 0; k < 16; ++k) {
        Index u = Index::from_ordinal(k);
        CHECK(neg_index(neg_index(u)) == u);
        CHECK(neg_canonical(u) == neg_canonical(neg_index(u)));
    }
    CHECK(neg_canonical(Index(3, 3)) == Index(1, 1));
    CHECK(neg_canonical(Index(3, 2)) == Index(1, 2));
    CHECK(neg_canonical(Index(2, 3)) == Index(2, 1));
}

TEST_CASE("matrix action") {
    CHECK(apply_M(Index(0, 0)) == Index(0, 0));
    CHECK(apply_M(Index(1, 0)) == Index(0, 1));
    CHECK(apply_M(Index(0, 1)) == Index(3, 0));
    for (int k = 0; k < 16; ++k) {
        Index u = Index::from_ordinal(k);
        CHECK(apply_M(apply_M(u)) == 3 * u);
        CHECK(apply_M(neg_index(u)) == neg_index(apply_M(u)));
    }
}

TEST_CASE("membership in S") {
    CHECK(in_S({Index(0, 0), Index(0, 0), Index(0, 0)}));
    CHECK(in_S({Index(2, 0), Index(1, 1), Index(1, 1)}));
    CHECK_FALSE(in_S({Index(1, 0), Index(0, 0), Index(0, 0)}));
}

TEST_CASE("S matches brute force over all 4096 triples") {
    auto s = enumerate_S();
    auto raw = raw_S();
    REQUIRE(s.size() == 256);
    REQUIRE(raw.size() == 256);
    CHECK(s.front() == Triple{Index(0, 0), Index(0, 0), Index(0, 0)});
    CHECK(std::is_sorted(s.begin(), s.end()));
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(in_S(s[k]));
        Raw r = raw[k];
        CHECK(s[k] == Triple{Index(r[0], r[1]), Index(r[2], r[3]), Index(r[4], r[5])});
        CHECK(s[k].x.is_two_torsion());
    }
}

TEST_CASE("equivalent pairs match a permutation-matrix search") {
    auto pairs = equivalent_pairs();
    auto raw = raw_S();
    std::size_t brute = 0;
    for (std::size_t a = 0; a < raw.size(); ++a)
        for (std::size_t b = a + 1; b < raw.size(); ++b)
            if (raw[a][0] == raw[b][0] && raw[a][1] == raw[b][1] && raw_equivalent(raw[a], raw[b]))
                ++brute;
    CHECK(brute == 1920);
    CHECK(pairs.size() == 1920);
    for (const auto &[s, t] : pairs) {
        CHECK(s.x == t.x);
        CHECK(triple_key(s) == triple_key(t));
        CHECK(s < t);
    }
    CHECK(equivalent_pairs() == pairs);
}
