#include <doctest.h>

#include <set>

#include "rmtheta/field.hpp"
#include "test_support.hpp"

using namespace rmtheta;
using rmtheta::testing::RandomElements;

namespace {

Field f9() { return Field::prime(3).extend({1, 0, 1}, "t"); }

Errc code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::Io;
}

} // namespace

TEST_CASE("prime field construction") {
    Field f7 = Field::prime(7);
    CHECK(f7.degree() == 1);
    CHECK(f7.cardinality() == 7);
    CHECK_FALSE(f7.is_extension());
    CHECK(code_of([] { Field::prime(9); }) == Errc::CompositeCharacteristic);
    CHECK(code_of([] { Field::prime(8); }) == Errc::EvenCharacteristic);
    CHECK(code_of([] { Field::prime(2); }) == Errc::EvenCharacteristic);
    CHECK(code_of([] { Field::prime(1); }) == Errc::CompositeCharacteristic);
    // 2^89 - 1 is prime, 2^67 - 1 is not.
    mpz_class m89 = (mpz_class(1) << 89) - 1;
    mpz_class m67 = (mpz_class(1) << 67) - 1;
    CHECK(Field::prime(m89).characteristic() == m89);
    CHECK(code_of([&] { Field::prime(m67); }) == Errc::CompositeCharacteristic);
}

TEST_CASE("extension construction") {
    Field fp = Field::prime(7);
    Field f = fp.extend({3, 0, 1}, "y");
    CHECK(f.degree() == 2);
    CHECK(f.cardinality() == 49);
    CHECK(f.generator_name() == "y");
    CHECK(code_of([&] { fp.extend({3, 0, 2}, "y"); }) == Errc::NotMonic);
    CHECK(code_of([&] { fp.extend({3, 1}, "y"); }) == Errc::InvalidModulus);
    CHECK(code_of([&] { f.extend({1, 0, 1}, "z"); }) == Errc::TowerTooDeep);
    // Coefficients are reduced mod p; -4 = 3 and 8 = 1 over F_7.
    Field g = fp.extend({-4, 0, 8}, "y");
    CHECK(g == f);
}

TEST_CASE("irreducibility check") {
    Field f3 = Field::prime(3);
    // t^2 + 1 has no root in F_3 (values 1, 2, 2), so it is irreducible.
    CHECK_NOTHROW(f3.extend({1, 0, 1}, "t", true));
    // t^2 + 2 = (t + 1)(t + 2) over F_3.
    CHECK(code_of([&] { f3.extend({2, 0, 1}, "t", true); }) == Errc::Reducible);
    // Without checking, the modulus is trusted.
    CHECK_NOTHROW(f3.extend({2, 0, 1}, "t"));
    // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3: no roots but reducible.
    CHECK_FALSE(Field::is_irreducible(3, {1, 0, 0, 0, 1}));
    CHECK(Field::is_irreducible(3, {2, 1, 0, 0, 1})); // x^4 + x + 2
}

TEST_CASE("irreducibility agrees with root search for degrees 2 and 3") {
    // A quadratic or cubic is reducible iff it has a root.
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
        for (std::size_t deg : {2u, 3u}) {
            unsigned long total = 1;
            for (std::size_t i = 0; i < deg; ++i)
                total *= p;
            for (unsigned long code = 0; code < total; ++code) {
                std::vector<mpz_class> f(deg + 1);
                unsigned long c = code;
                for (std::size_t i = 0; i < deg; ++i) {
                    f[i] = c % p;
                    c /= p;
                }
                f[deg] = 1;
                bool has_root = false;
                for (unsigned long x = 0; x < p && !has_root; ++x) {
                    mpz_class v = 0;
                    for (std::size_t i = deg + 1; i-- > 0;)
                        v = v * x + f[i];
                    has_root = (v % p) == 0;
                }
                CHECK(Field::is_irreducible(p, f) == !has_root);
            }
        }
    }
}

TEST_CASE("prime field arithmetic") {
    Field f7 = Field::prime(7);
    CHECK(f7.constant(3) * f7.constant(5) == f7.one());
    CHECK(f7.constant(3).inverse() == f7.constant(5));
    CHECK(f7.one().inverse() == f7.one());
    CHECK(code_of([&] { f7.zero().inverse(); }) == Errc::DivisionByZero);
    CHECK(f7.constant(3).pow(6ul) == f7.one());
    CHECK(f7.constant(3).pow(0ul) == f7.one());
    CHECK(f7.constant(3) + (-f7.constant(3)) == f7.zero());
    CHECK(f7.constant(-1) == f7.constant(6));
    CHECK(f7.constant(2) * 4l == f7.one());
}

TEST_CASE("extension arithmetic") {
    Field f = f9();
    Element t = f.generator();
    CHECK(t * t == f.constant(2));
    CHECK(t.pow(8ul) == f.one());
    CHECK(t.pow(4ul) == f.one());
    CHECK(t.inverse() * t == f.one());
    CHECK(t.frobenius() == t.pow(3ul));
    CHECK(t.norm() == 1); // t * t^3 = t^4 = 1
}

TEST_CASE("field mismatch") {
    Field a = Field::prime(7);
    Field b = Field::prime(11);
    CHECK(code_of([&] { (void)(a.one() + b.one()); }) == Errc::FieldMismatch);
    CHECK(code_of([&] { (void)(a.one() * b.one()); }) == Errc::FieldMismatch);
    CHECK(code_of([&] { (void)(Element() + a.one()); }) == Errc::FieldMismatch);
    // Separately built descriptors of the same field interoperate.
    Field a2 = Field::prime(7);
    CHECK(a.one() + a2.one() == a.constant(2));
}

TEST_CASE("squares and square roots in F_7 and F_9") {
    Field f7 = Field::prime(7);
    CHECK(is_square(f7.constant(2)));
    CHECK_FALSE(is_square(f7.constant(3)));
    CHECK(is_square(f7.one()));
    CHECK(is_square(f7.zero()));
    CHECK(*sqrt(f7.constant(2)) == f7.constant(3));
    CHECK_FALSE(sqrt(f7.constant(3)).has_value());
    CHECK(*sqrt(f7.zero()) == f7.zero());

    Field f = f9();
    CHECK(*sqrt(f.constant(2)) == f.generator());
    CHECK(is_square(f.constant(2)));
}

TEST_CASE("square roots agree with exhaustive search for all p < 200") {
    for (unsigned long p = 3; p < 200; ++p) {
        if (!rmtheta::testing::is_odd_prime(p))
            continue;
        Field f = Field::prime(p);
        std::set<unsigned long> squares;
        for (unsigned long x = 0; x < p; ++x)
            squares.insert(x * x % p);
        for (unsigned long a = 0; a < p; ++a) {
            Element e = f.constant(static_cast<long>(a));
            bool expect = squares.count(a) > 0;
            REQUIRE(is_square(e) == expect);
            auto r = sqrt(e);
            REQUIRE(r.has_value() == expect);
            if (r) {
                REQUIRE(r->square() == e);
                unsigned long rv = r->coefficients()[0].get_ui();
                // canonical: the smaller of r, p - r
                REQUIRE((rv == 0 || rv <= p - rv));
            }
        }
    }
}

TEST_CASE("is_square equals the Euler criterion in small extensions") {
    for (auto [p, mod] : std::vector<std::pair<long, std::vector<mpz_class>>>{
             {3, {1, 0, 1}}, {5, {2, 0, 1}}, {7, {3, 0, 0, 1}}, {3, {2, 1, 0, 0, 1}}, {11, {4, 1, 1}}}) {
        Field f = Field::prime(p).extend(mod, "x", true);
        mpz_class half = (f.cardinality() - 1) / 2;
        for (mpz_class i = 0; i < f.cardinality(); ++i) {
            Element a = f.element_at(i);
            bool euler = a.is_zero() || a.pow(half).is_one();
            REQUIRE(is_square(a) == euler);
            auto r = sqrt(a);
            REQUIRE(r.has_value() == euler);
            if (r) {
                REQUIRE(r->square() == a);
                REQUIRE_FALSE(-*r < *r);
            }
            // Frobenius fixed point
            REQUIRE(a.pow(f.cardinality()) == a);
            REQUIRE(a.frobenius() == a.pow(f.characteristic()));
        }
    }
}

TEST_CASE("field axioms on random elements") {
    RandomElements rnd(12345);
    mpz_class big("1000000000000000000000000000057");
    std::vector<Field> fields = {Field::prime(101), Field::prime(101).extend({1, 1, 0, 1}, "x", true),
                                 Field::prime(big).extend({5, 0, 0, 0, 0, 0, 0, 0, 1}, "x", true)};
    for (const Field &f : fields) {
        for (int i = 0; i < 200; ++i) {
            Element a = rnd(f), b = rnd(f), c = rnd(f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == f.zero());
            CHECK(a.square() == a * a);
            if (!a.is_zero())
                CHECK(a * a.inverse() == f.one());
            Element s = a.square();
            CHECK(sqrt(s)->square() == s);
        }
    }
}

TEST_CASE("non-residues") {
    Field f7 = Field::prime(7);
    CHECK_FALSE(is_square(f7.non_residue()));
    Field f = Field::prime(7).extend({1, 1, 0, 0, 1}, "x", true);
    CHECK_FALSE(is_square(f.non_residue()));
    // Every F_p constant is a square in an even-degree extension.
    CHECK(is_square(f.constant(3)));
}

TEST_CASE("parse and format") {
    Field f7 = Field::prime(7);
    CHECK(f7.parse("5") == f7.constant(5));
    CHECK(f7.parse(" 12 ") == f7.constant(5));
    CHECK(f7.format(f7.constant(5)) == "5");
    CHECK(code_of([&] { f7.parse("[1,2]"); }) == Errc::CoefficientCountMismatch);
    CHECK(code_of([&] { f7.parse("abc"); }) == Errc::SyntaxError);
    CHECK(code_of([&] { f7.parse(""); }) == Errc::SyntaxError);

    Field f = Field::prime(7).extend({1, 1, 0, 1}, "x");
    Element e = f.parse("[2,0,1]");
    CHECK(e == f.constant(2) + f.generator().square());
    CHECK(f.format(e) == "[2,0,1]");
    CHECK(f.parse("[ 9, 0 ,-1 ]") == f.parse("[2,0,6]"));
    CHECK(code_of([&] { f.parse("[1,2"); }) == Errc::SyntaxError);
    CHECK(code_of([&] { f.parse("[1,,2]"); }) == Errc::SyntaxError);
    CHECK(code_of([&] { f.parse("[1,2]"); }) == Errc::CoefficientCountMismatch);

    RandomElements rnd(99);
    for (int i = 0; i < 100; ++i) {
        Element a = rnd(f);
        CHECK(f.parse(f.format(a)) == a);
    }
}

TEST_CASE("embedding F_p[y]/(y^2+3) into F_p[x]/(x^8+3) by y -> x^4") {
    Field fp = Field::prime(1009);
    Field f2 = fp.extend({3, 0, 1}, "y");
    Field f8 = fp.extend({3, 0, 0, 0, 0, 0, 0, 0, 1}, "x");
    Element image = f8.generator().pow(4ul);
    CHECK(map_by_generator(f2.generator(), f8, image).square() == f8.constant(-3));
    RandomElements rnd(7);
    for (int i = 0; i < 50; ++i) {
        Element a = rnd(f2), b = rnd(f2);
        CHECK(map_by_generator(a * b, f8, image) == map_by_generator(a, f8, image) * map_by_generator(b, f8, image));
        CHECK(map_by_generator(a + b, f8, image) == map_by_generator(a, f8, image) + map_by_generator(b, f8, image));
    }
}
