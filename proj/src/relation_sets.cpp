#include "rmtheta/relation_sets.hpp"

#include <cstdio>
#include <string>

#include "rmtheta/error.hpp"

namespace rmtheta {

namespace {

Relation a(int i, int j) { return var(A(i, j)); }
Relation sq(const Relation &r) { return r * r; }

std::string make_id(const char *prefix, std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02zu", prefix, k);
    return buf;
}

RelationSet with_ids(RelationSet rs, const char *prefix) {
    RelationSet out(rs.tag());
    std::size_t k = 0;
    for (const auto &r : rs) {
        Relation copy = r;
        out.add(copy.set_id(make_id(prefix, ++k)));
    }
    return out;
}

} // namespace

RelationSet mumford_relations() {
    const Relation s4 = sq(a(0, 0)) + sq(a(0, 2)) + sq(a(2, 0)) + sq(a(2, 2));
    const Relation p0002 = a(0, 0) * a(0, 2) + a(2, 0) * a(2, 2);
    const Relation p0020 = a(0, 0) * a(2, 0) + a(0, 2) * a(2, 2);
    const Relation p0022 = a(0, 0) * a(2, 2) + a(2, 0) * a(0, 2);
    const Relation q01 = sq(a(0, 1)) + sq(a(2, 1));
    const Relation q10 = sq(a(1, 0)) + sq(a(1, 2));
    const Relation q11 = sq(a(1, 1)) + sq(a(1, 3));
    const Relation m01 = a(0, 1) * a(2, 1);
    const Relation m10 = a(1, 0) * a(1, 2);
    const Relation m11 = a(1, 1) * a(1, 3);

    RelationSet rs(Provenance::Mumford);
    rs.add(s4 * p0002 - 2 * sq(q01));
    rs.add(s4 * p0020 - 2 * sq(q10));
    rs.add(s4 * p0022 - 2 * sq(q11));
    rs.add(p0020 * p0022 - 4 * (sq(a(0, 1)) * sq(a(2, 1))));
    rs.add(p0002 * p0022 - 4 * (sq(a(1, 0)) * sq(a(1, 2))));
    rs.add(p0002 * p0020 - 4 * (sq(a(1, 1)) * sq(a(1, 3))));
    rs.add(s4 * (a(1, 3) * a(1, 1)) - q10 * q01);
    rs.add(s4 * (a(0, 1) * a(2, 1)) - q10 * q11);
    rs.add(s4 * (a(1, 0) * a(1, 2)) - q01 * q11);
    rs.add(p0022 * m11 - 2 * (a(0, 1) * a(1, 0) * a(2, 1) * a(1, 2)));
    rs.add(p0020 * m10 - 2 * (m11 * m01));
    rs.add(p0002 * m01 - 2 * (m11 * m10));
    rs.add(p0022 * q01 - 2 * (m10 * q11));
    rs.add(p0002 * q11 - 2 * (m10 * q01));
    rs.add(p0022 * q10 - 2 * (m01 * q11));
    rs.add(p0020 * q11 - 2 * (m01 * q10));
    rs.add(p0020 * q01 - 2 * (m11 * q10));
    rs.add(p0002 * q10 - 2 * (m11 * q01));
    rs.add(m01 * q01 - m10 * q10);
    rs.add(m01 * q01 - m11 * q11);
    rs.add(a(1, 1) - a(3, 3));
    rs.add(a(1, 0) - a(3, 0));
    rs.add(a(0, 1) - a(0, 3));
    rs.add(a(1, 3) - a(3, 1));
    rs.add(a(3, 2) - a(1, 2));
    rs.add(a(2, 1) - a(2, 3));
    return with_ids(std::move(rs), "m");
}

RelationSet rm_bilinear_relations() {
    RelationSet rs(Provenance::RMBilinear);
    for (const auto &[s, t] : equivalent_pairs()) {
        Relation lhs, rhs;
        for (Index u : kTwoTorsion) {
            lhs = lhs + var(VarRef{Family::B, s.y + u}) * var(VarRef{Family::A, s.z + u});
            rhs = rhs + var(VarRef{Family::B, t.y + u}) * var(VarRef{Family::A, t.z + u});
        }
        rs.add(lhs - rhs);
    }
    return with_ids(std::move(rs), "bil");
}

RelationSet rm_relations() {
    RelationSet rs(Provenance::RM);
    for (const auto &r : rm_bilinear_relations()) {
        rs.add(r.substitute([](VarRef v) {
            Index u = v.family == Family::B ? apply_M(v.index) : v.index;
            return VarRef{Family::A, neg_canonical(u)};
        }));
    }
    return with_ids(std::move(rs), "rm");
}

Relation split_product_relation() {
    const Relation s4 = sq(a(0, 0)) + sq(a(0, 2)) + sq(a(2, 0)) + sq(a(2, 2));
    Relation r = (4 * sq(sq(a(1, 1))) - s4 * a(0, 0) * a(2, 2)).normalized();
    return r.set_id("sp01");
}

RelationSet split_square_relations() {
    RelationSet rs(Provenance::SplitSquare);
    rs.add(a(1, 1) * a(2, 2) - sq(a(2, 1)));
    rs.add(a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    rs.add(a(1, 0) * a(2, 2) - a(2, 0) * a(2, 1));
    rs.add(2 * sq(a(1, 1)) - a(0, 0) * a(2, 0) - a(2, 0) * a(2, 2));
    rs.add(a(0, 0) * a(2, 1) - a(1, 0) * a(2, 0));
    rs.add(a(0, 0) * a(1, 1) - sq(a(1, 0)));
    rs.add(a(0, 0) * a(2, 2) - sq(a(2, 0)));
    // The linear identities as listed, repeats included; add() drops repeats.
    const int linear[][4] = {{1, 3, 3, 1}, {0, 3, 3, 0}, {2, 3, 3, 2}, {0, 1, 1, 0}, {1, 1, 3, 3}, {1, 3, 3, 1},
                             {0, 1, 0, 3}, {1, 2, 3, 2}, {1, 1, 1, 3}, {0, 2, 2, 0}, {1, 2, 2, 1}, {2, 1, 2, 3},
                             {3, 1, 3, 3}, {2, 1, 2, 3}, {0, 1, 0, 3}, {1, 0, 3, 0}};
    for (const auto &l : linear)
        rs.add(a(l[0], l[1]) - a(l[2], l[3]));
    return with_ids(std::move(rs), "sq");
}

RelationSet relation_set_by_name(std::string_view name) {
    if (name == "mumford")
        return mumford_relations();
    if (name == "rm")
        return rm_relations();
    if (name == "rm-bilinear")
        return rm_bilinear_relations();
    if (name == "split-product") {
        RelationSet rs(Provenance::SplitProduct);
        rs.add(split_product_relation());
        return rs;
    }
    if (name == "split-square")
        return split_square_relations();
    throw Error(Errc::UnknownSet, "unknown relation set '" + std::string(name) + "'");
}

} // namespace rmtheta
