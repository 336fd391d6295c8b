#include "rmtheta/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <tuple>
#include <sstream>

#include "rmtheta/relation_eval.hpp"
#include "rmtheta/relation_sets.hpp"

namespace rmtheta {

namespace {

const RelationSet &mumford() {
    static const RelationSet rs = mumford_relations();
    return rs;
}

const RelationSet &rm() {
    static const RelationSet rs = rm_relations();
    return rs;
}

bool passes(const RelationSet &rs, const ThetaPoint4 &p) {
    return all_vanish(rs, Assignment::from_point(p), p.field());
}

void require_odd(const Field &f) {
    if (f.characteristic() == 2)
        throw Error(Errc::EvenCharacteristic, "division by 2 needs odd characteristic");
}

std::optional<Element> root_of(const Element &a, SqrtCache *cache) {
    if (!cache)
        return sqrt(a);
    auto it = cache->find(a);
    if (it != cache->end())
        return it->second;
    auto r = sqrt(a);
    cache->emplace(a, r);
    return r;
}

// Square roots of q_k / q_anchor, anchor = first nonzero q_k (whose root is
// 1).  Dividing first keeps the result projective and avoids requiring a
// root of the anchor itself.
struct RatioRoots {
    std::size_t anchor = 0;
    std::vector<Element> roots;
    std::vector<std::size_t> free; // nonzero non-anchor positions: their sign is a choice
};

std::optional<RatioRoots> ratio_roots(std::span<const Element> q, SqrtCache *cache) {
    RatioRoots rr;
    auto it = std::find_if(q.begin(), q.end(), [](const Element &e) { return !e.is_zero(); });
    if (it == q.end())
        return std::nullopt;
    rr.anchor = static_cast<std::size_t>(it - q.begin());
    Element inv = it->inverse();
    rr.roots.resize(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k == rr.anchor) {
            rr.roots[k] = q[k].field().one();
        } else if (q[k].is_zero()) {
            rr.roots[k] = q[k];
        } else {
            auto r = root_of(q[k] * inv, cache);
            if (!r)
                return std::nullopt;
            rr.roots[k] = *r;
            rr.free.push_back(k);
        }
    }
    return rr;
}

std::vector<Element> signed_roots(const RatioRoots &rr, unsigned mask) {
    std::vector<Element> s = rr.roots;
    for (std::size_t t = 0; t < rr.free.size(); ++t)
        if (mask >> t & 1U)
            s[rr.free[t]] = -s[rr.free[t]];
    return s;
}

} // namespace

BranchPoints::BranchPoints(std::array<Element, 5> e) : e_(std::move(e)) {
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (e_[i] == e_[j])
                throw Error(Errc::RepeatedBranchPoint,
                            "e" + std::to_string(i + 1) + " = e" + std::to_string(j + 1));
}

RosenhainCurve::RosenhainCurve(std::array<Element, 3> lambda) : lambda_(std::move(lambda)) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (lambda_[i].field() != lambda_[0].field())
            throw Error(Errc::FieldMismatch, "Rosenhain invariants lie in different fields");
        if (lambda_[i].is_zero() || lambda_[i].is_one())
            throw Error(Errc::InvalidCurve, "lambda" + std::to_string(i + 1) + " is 0 or 1");
        for (std::size_t j = 0; j < i; ++j)
            if (lambda_[i] == lambda_[j])
                throw Error(Errc::InvalidCurve,
                            "lambda" + std::to_string(j + 1) + " = lambda" + std::to_string(i + 1));
    }
}

RosenhainCurve RosenhainCurve::from_branch_points(std::span<const Element, 6> e) {
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            if (e[i] == e[j])
                throw Error(Errc::RepeatedBranchPoint,
                            "e" + std::to_string(i + 1) + " = e" + std::to_string(j + 1));
    // x -> (x - e1)(e2 - e3) / ((x - e3)(e2 - e1))
    Element scale = (e[1] - e[2]) * (e[1] - e[0]).inverse();
    auto m = [&](const Element &x) { return (x - e[0]) * scale * (x - e[2]).inverse(); };
    return RosenhainCurve({m(e[3]), m(e[4]), m(e[5])});
}

BranchPoints RosenhainCurve::branch_points() const {
    Field f = field();
    return BranchPoints({f.zero(), f.one(), lambda_[0], lambda_[1], lambda_[2]});
}

std::array<Element, 4> thomae_squares(const BranchPoints &e) {
    auto d = [&](int i, int j) { return e[i - 1] - e[j - 1]; };
    return {d(1, 3) * d(1, 5) * d(2, 4) * d(3, 5), d(1, 3) * d(1, 4) * d(2, 5) * d(3, 4),
            d(1, 2) * d(1, 4) * d(2, 4) * d(3, 5), d(1, 2) * d(1, 5) * d(2, 5) * d(3, 4)};
}

std::array<Element, 4> thomae_combinations(const ThetaPoint2 &b) {
    Element s0 = b[0].square(), s1 = b[1].square(), s2 = b[2].square(), s3 = b[3].square();
    return {s0 + s1 + s2 + s3, s0 - s1 + s2 - s3, s0 + s1 - s2 - s3, s0 - s1 - s2 + s3};
}

std::vector<std::array<Element, 4>> level2_squares_from_thomae(std::span<const Element, 4> r, SqrtCache *cache) {
    Field f = r[0].field();
    require_odd(f);
    auto rr = ratio_roots(r, cache);
    if (!rr)
        throw Error(Errc::NoSquareRoots, "the Thomae products have no compatible square roots in the field");
    Element quarter = f.constant(4).inverse();
    std::vector<std::array<Element, 4>> out;
    for (unsigned mask = 0; mask < (1U << rr->free.size()); ++mask) {
        auto s = signed_roots(*rr, mask);
        std::array<Element, 4> sq = {(s[0] + s[1] + s[2] + s[3]) * quarter, (s[0] - s[1] + s[2] - s[3]) * quarter,
                                     (s[0] + s[1] - s[2] - s[3]) * quarter, (s[0] - s[1] - s[2] + s[3]) * quarter};
        if (std::all_of(sq.begin(), sq.end(), [](const Element &x) { return x.is_zero(); }))
            continue;
        out.push_back(std::move(sq));
    }
    return out;
}

bool Level2Data::consistent() const {
    if (!products)
        return true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (squares[i] * squares[j] != (*products)[slot(i, j)].square())
                return false;
    return true;
}

std::string Level2Data::to_text() const {
    static const char *names[4] = {"b00", "b01", "b10", "b11"};
    Field f = squares[0].field();
    std::ostringstream os;
    for (std::size_t i = 0; i < 4; ++i)
        os << names[i] << "^2 " << f.format(squares[i]) << '\n';
    if (products)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                os << names[i] << '*' << names[j] << ' ' << f.format((*products)[slot(i, j)]) << '\n';
    os << "consistent " << (consistent() ? "yes" : "no") << '\n';
    return os.str();
}

Level2Data level4_to_level2(const ThetaPoint4 &p) {
    Field f = p.field();
    auto values = evaluate_all(mumford(), Assignment::from_point(p), f);
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!values[k].is_zero())
            throw Error(Errc::NotAThetaNullPoint, "relation " + mumford()[k].id() + " does not vanish");
    auto a = [&](int i, int j) -> const Element & { return p[Index(i, j)]; };
    Level2Data d;
    d.squares = {a(0, 0).square() + a(0, 2).square() + a(2, 0).square() + a(2, 2).square(),
                 2 * (a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2)), 2 * (a(0, 0) * a(2, 0) + a(0, 2) * a(2, 2)),
                 2 * (a(0, 0) * a(2, 2) + a(0, 2) * a(2, 0))};
    std::array<Element, 6> pr;
    pr[Level2Data::slot(0, 1)] = 2 * (a(0, 1).square() + a(2, 1).square());
    pr[Level2Data::slot(0, 2)] = 2 * (a(1, 2).square() + a(1, 0).square());
    pr[Level2Data::slot(0, 3)] = 2 * (a(1, 1).square() + a(1, 3).square());
    pr[Level2Data::slot(1, 2)] = 4 * (a(1, 1) * a(1, 3));
    pr[Level2Data::slot(1, 3)] = 4 * (a(1, 0) * a(1, 2));
    pr[Level2Data::slot(2, 3)] = 4 * (a(0, 1) * a(2, 1));
    d.products = std::move(pr);
    return d;
}

Level2Data level2_data_of(const ThetaPoint2 &b) {
    Level2Data d;
    std::array<Element, 6> pr;
    for (std::size_t i = 0; i < 4; ++i) {
        d.squares[i] = b[i].square();
        for (std::size_t j = i + 1; j < 4; ++j)
            pr[Level2Data::slot(i, j)] = b[i] * b[j];
    }
    d.products = std::move(pr);
    return d;
}

std::vector<ThetaPoint2> level2_point_from_data(const Level2Data &d, SqrtCache *cache) {
    auto it = std::find_if(d.squares.begin(), d.squares.end(), [](const Element &e) { return !e.is_zero(); });
    if (it == d.squares.end())
        throw Error(Errc::AllZero, "all level-2 squares vanish");
    auto anchor = static_cast<std::size_t>(it - d.squares.begin());
    if (d.products) {
        const auto &pr = *d.products;
        auto prod = [&](std::size_t k) { return pr[Level2Data::slot(std::min(anchor, k), std::max(anchor, k))]; };
        std::array<Element, 4> b;
        if (auto r = root_of(d.squares[anchor], cache)) {
            Element inv = r->inverse();
            for (std::size_t k = 0; k < 4; ++k)
                b[k] = k == anchor ? *r : prod(k) * inv;
        } else {
            // b * b_anchor needs no root.
            for (std::size_t k = 0; k < 4; ++k)
                b[k] = k == anchor ? d.squares[anchor] : prod(k);
        }
        return {ThetaPoint2(std::move(b))};
    }
    auto rr = ratio_roots(d.squares, cache);
    if (!rr)
        return {};
    std::vector<ThetaPoint2> out;
    for (unsigned mask = 0; mask < (1U << rr->free.size()); ++mask) {
        auto s = signed_roots(*rr, mask);
        out.emplace_back(std::array<Element, 4>{s[0], s[1], s[2], s[3]});
    }
    return out;
}

namespace {

// Calls visit on the coordinates of every Mumford-filtered lift until it
// returns false.
using Coords = std::array<const Element *, 16>;

ThetaPoint4 point_of(const Coords &c) {
    std::array<Element, 16> v;
    for (std::size_t k = 0; k < 16; ++k)
        v[k] = *c[k];
    return ThetaPoint4(std::move(v));
}

// The pairs (a01, a21), (a11, a13), (a10, a12).
constexpr std::array<std::array<Index, 2>, 3> kPairs = {
    {{Index(0, 1), Index(2, 1)}, {Index(1, 1), Index(1, 3)}, {Index(1, 0), Index(1, 2)}}};

void for_each_lift(const ThetaPoint2 &b, SqrtCache *cache, const std::function<bool(const Coords &)> &visit) {
    Field f = b.field();
    require_odd(f);
    auto d = level2_data_of(b);
    const auto &s = d.squares;
    const auto &pr = *d.products;
    Element half = f.constant(2).inverse();
    auto P = [&](std::size_t i, std::size_t j) -> const Element & { return pr[Level2Data::slot(i, j)]; };
    // Squares of a00 +- a02 +- a20 +- a22, then of a01 +- a21, a11 +- a13, a10 +- a12.
    std::array<Element, 10> q = {s[0] + s[1] + s[2] + s[3],
                                 s[0] - s[1] + s[2] - s[3],
                                 s[0] + s[1] - s[2] - s[3],
                                 s[0] - s[1] - s[2] + s[3],
                                 (P(0, 1) + P(2, 3)) * half,
                                 (P(0, 1) - P(2, 3)) * half,
                                 (P(0, 3) + P(1, 2)) * half,
                                 (P(0, 3) - P(1, 2)) * half,
                                 (P(0, 2) + P(1, 3)) * half,
                                 (P(0, 2) - P(1, 3)) * half};
    auto rr = ratio_roots(q, cache);
    if (!rr)
        throw Error(Errc::NoLift, "the level-4 coordinates need square roots outside the field");

    RatioRoots outer = *rr;
    std::erase_if(outer.free, [](std::size_t k) { return k >= 4; });
    std::vector<std::size_t> inner;
    std::copy_if(rr->free.begin(), rr->free.end(), std::back_inserter(inner), [](std::size_t k) { return k >= 4; });

    // pair_values[k][sv] with bit 0 of sv negating the root of the + square
    // and bit 1 the root of the - square.
    std::array<std::array<std::array<Element, 2>, 4>, 3> pair_values;
    for (std::size_t k = 0; k < 3; ++k)
        for (unsigned sv = 0; sv < 4; ++sv) {
            Element u = sv & 1U ? -rr->roots[4 + 2 * k] : rr->roots[4 + 2 * k];
            Element v = sv & 2U ? -rr->roots[5 + 2 * k] : rr->roots[5 + 2 * k];
            pair_values[k][sv] = {(u + v) * half, (u - v) * half};
        }
    Element quarter = half.square();

    Coords c;
    auto set = [&](Index u, const Element &v) {
        c[u.ordinal()] = &v;
        c[neg_index(u).ordinal()] = &v;
    };
    auto set_pairs = [&](const std::array<unsigned, 3> &sv) {
        for (std::size_t k = 0; k < 3; ++k) {
            set(kPairs[k][0], pair_values[k][sv[k]][0]);
            set(kPairs[k][1], pair_values[k][sv[k]][1]);
        }
    };
    for (unsigned om = 0; om < (1U << outer.free.size()); ++om) {
        auto sg = signed_roots(outer, om);
        std::array<Element, 4> o = {(sg[0] + sg[1] + sg[2] + sg[3]) * quarter, (sg[0] - sg[1] + sg[2] - sg[3]) * quarter,
                                    (sg[0] + sg[1] - sg[2] - sg[3]) * quarter, (sg[0] - sg[1] - sg[2] + sg[3]) * quarter};
        set(Index(0, 0), o[0]);
        set(Index(0, 2), o[1]);
        set(Index(2, 0), o[2]);
        set(Index(2, 2), o[3]);
        // The Mumford relations see a01, a21 only through a01 a21 and
        // a01^2 + a21^2 (likewise for the other two pairs), and those do not
        // depend on the inner signs.  One representative decides the filter.
        set_pairs({0, 0, 0});
        if (!passes(mumford(), point_of(c)))
            continue;
        // The anchor sum is 1 in every candidate, so distinct sign choices
        // are projectively distinct.
        for (unsigned im = 0; im < (1U << inner.size()); ++im) {
            std::array<unsigned, 3> sv = {0, 0, 0};
            for (std::size_t t = 0; t < inner.size(); ++t)
                if (im >> t & 1U)
                    sv[(inner[t] - 4) / 2] |= 1U << ((inner[t] - 4) % 2);
            set_pairs(sv);
            if (!visit(c))
                return;
        }
    }
}

} // namespace

std::vector<ThetaPoint4> level2_to_level4(const ThetaPoint2 &b, SqrtCache *cache) {
    std::vector<ThetaPoint4> out;
    for_each_lift(b, cache, [&](const Coords &c) {
        out.push_back(point_of(c));
        return true;
    });
    return out;
}

bool thomae_ratios_match(const RosenhainCurve &c, const ThetaPoint2 &b) {
    auto r = thomae_squares(c.branch_points());
    auto t = thomae_combinations(b);
    std::array<Element, 4> t2 = {t[0].square(), t[1].square(), t[2].square(), t[3].square()};
    return projectively_equal(r, t2);
}

std::vector<RosenhainCurve> rosenhain_from_level2(const ThetaPoint2 &b) {
    Field f = b.field();
    require_odd(f);
    auto t = thomae_combinations(b);
    for (std::size_t i = 0; i < 4; ++i)
        if (t[i].is_zero())
            throw Error(Errc::DegenerateThetaPoint, "T" + std::to_string(i + 1) + " vanishes");
    std::array<Element, 4> t2 = {t[0].square(), t[1].square(), t[2].square(), t[3].square()};
    Element rho = t2[2] * t2[3].inverse();
    Element base = t[0] * t[1] * (t[2] * t[3]).inverse();

    std::vector<RosenhainCurve> out;
    bool missing_root = false;
    auto consider = [&](const Element &l1, const Element &l2, const Element &l3) {
        try {
            RosenhainCurve c({l1, l2, l3});
            if (thomae_ratios_match(c, b) && std::find(out.begin(), out.end(), c) == out.end())
                out.push_back(std::move(c));
        } catch (const Error &) {
        }
    };
    for (const Element &l1 : {base, -base}) {
        // l3 = k l2, and l2 is a root of c2 x^2 + c1 x + c0.
        Element k = t2[0] * (t2[2] * l1).inverse();
        Element rk = rho * k;
        Element c2 = k - rk * k;
        Element c1 = rk - k - l1 + rk * k * l1;
        Element c0 = l1 - rk * l1;
        if (c2.is_zero()) {
            if (!c1.is_zero()) {
                Element l2 = -c0 * c1.inverse();
                consider(l1, l2, k * l2);
            }
            continue;
        }
        auto root = sqrt(c1.square() - 4 * (c2 * c0));
        if (!root) {
            missing_root = true;
            continue;
        }
        Element inv = (2 * c2).inverse();
        for (const Element &sgn : {*root, -*root}) {
            Element l2 = (sgn - c1) * inv;
            consider(l1, l2, k * l2);
        }
    }
    if (out.empty() && missing_root)
        throw Error(Errc::NoSolutionInField, "the Rosenhain invariants need a square root outside the field");
    return out;
}

std::vector<mpz_class> find_irreducible(const mpz_class &p, std::size_t d) {
    for (mpz_class c1 = 0; c1 < p; ++c1)
        for (mpz_class c0 = 1; c0 < p; ++c0) {
            std::vector<mpz_class> f(d + 1, 0);
            f[0] = c0;
            f[1] += c1;
            f[d] = 1;
            if (d == 1 || Field::is_irreducible(p, f))
                return f;
        }
    throw Error(Errc::Reducible, "no irreducible polynomial found");
}

std::string RmDecision::summary() const {
    std::ostringstream os;
    if (positive) {
        os << "POSITIVE ordering";
        for (int k : ordering)
            os << ' ' << k;
    } else {
        os << "NEGATIVE no witness found under enumerated structures";
    }
    os << " (" << orderings_tried << " orderings, " << candidates_tested << " candidates"
       << (truncated ? ", truncated" : "") << ")";
    return os.str();
}

namespace {

struct SearchState {
    bool any_lift = false;
};

// The rm relations as lists of (coefficient, coordinate, coordinate).
struct QuadraticForm {
    std::vector<std::tuple<long, int, int>> terms;
};

const std::vector<QuadraticForm> &rm_forms() {
    static const std::vector<QuadraticForm> forms = [] {
        std::vector<QuadraticForm> out;
        for (const auto &r : rm()) {
            QuadraticForm q;
            for (const auto &t : r.terms()) {
                auto v = t.monomial.factors();
                q.terms.emplace_back(t.coeff.get_si(), v.at(0).index.ordinal(), v.at(1).index.ordinal());
            }
            out.push_back(std::move(q));
        }
        return out;
    }();
    return forms;
}

bool rm_vanishes(const Coords &c) {
    for (const auto &q : rm_forms()) {
        Element acc = c[0]->field().zero();
        for (const auto &[coeff, u, v] : q.terms)
            acc += (*c[u] * *c[v]) * coeff;
        if (!acc.is_zero())
            return false;
    }
    return true;
}

RmDecision search(const RosenhainCurve &c, const SearchConfig &cfg, SearchState &st) {
    Field f = c.field();
    RmDecision dec;
    std::array<Element, 5> base = {f.zero(), f.one(), c[0], c[1], c[2]};
    std::array<int, 5> perm = {0, 1, 2, 3, 4};
    SqrtCache cache;
    do {
        if (dec.orderings_tried >= cfg.max_orderings)
            break;
        ++dec.orderings_tried;
        BranchPoints e({base[perm[0]], base[perm[1]], base[perm[2]], base[perm[3]], base[perm[4]]});
        auto r = thomae_squares(e);
        std::vector<std::array<Element, 4>> squares;
        try {
            squares = level2_squares_from_thomae(r, &cache);
        } catch (const Error &err) {
            if (err.code() != Errc::NoSquareRoots)
                throw;
            continue;
        }
        for (const auto &sq : squares) {
            for (const auto &b : level2_point_from_data(Level2Data{sq, std::nullopt}, &cache)) {
                bool stop = false;
                try {
                    for_each_lift(b, &cache, [&](const Coords &p) {
                        if (dec.candidates_tested >= cfg.max_candidates) {
                            dec.truncated = stop = true;
                            return false;
                        }
                        ++dec.candidates_tested;
                        if (rm_vanishes(p)) {
                            dec.positive = stop = true;
                            dec.witness = point_of(p);
                            dec.ordering = perm;
                            return false;
                        }
                        return true;
                    });
                } catch (const Error &err) {
                    if (err.code() != Errc::NoLift)
                        throw;
                    continue;
                }
                st.any_lift = true;
                if (stop)
                    return dec;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return dec;
}

} // namespace

RmDecision rm_test(const RosenhainCurve &c, const SearchConfig &cfg) {
    Field f = c.field();
    if (f.characteristic() == 2 || f.characteristic() == 3)
        throw Error(Errc::CharacteristicDividesSix, "rm_test needs 6 to be invertible");
    if (cfg.max_orderings == 0 || cfg.max_candidates == 0)
        throw Error(Errc::InvalidArgument, "search limits must be positive");
    SearchState st;
    RmDecision dec = search(c, cfg, st);
    if (st.any_lift || dec.truncated)
        return dec;
    if (!cfg.auto_extend || f.is_extension())
        throw Error(Errc::FieldTooSmall, f.is_extension()
                                             ? "every branch needs square roots outside the field"
                                             : "every branch needs square roots outside the field; "
                                               "retry over an extension of degree 2, 4 or 8");
    for (std::size_t d : {2, 4, 8}) {
        Field k = f.extend(find_irreducible(f.characteristic(), d), "t");
        RosenhainCurve ck({lift_constant(c[0], k), lift_constant(c[1], k), lift_constant(c[2], k)});
        SearchState sk;
        RmDecision dk = search(ck, cfg, sk);
        if (sk.any_lift || dk.truncated) {
            dk.extended_field = k;
            return dk;
        }
    }
    throw Error(Errc::FieldTooSmall, "no lift found up to an extension of degree 8");
}

bool is_elliptic_theta_null(std::span<const Element, 4> x) {
    if (x[1] != x[3])
        return false;
    return (x[0].square() + x[2].square()) * x[0] * x[2] == 2 * x[1].square().square();
}

ThetaPoint4 product_point(std::span<const Element, 4> x, std::span<const Element, 4> y) {
    if (!is_elliptic_theta_null(x) || !is_elliptic_theta_null(y))
        throw Error(Errc::NotEllipticThetaNull, "factor is not an elliptic theta null point");
    std::array<Element, 16> c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            c[Index(i, j).ordinal()] = x[i] * y[j];
    return ThetaPoint4(std::move(c));
}

} // namespace rmtheta
