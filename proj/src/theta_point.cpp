#include "rmtheta/theta_point.hpp"

#include <algorithm>

namespace rmtheta {

namespace {

void check_same_field(std::span<const Element> x) {
    for (const auto &e : x)
        if (!e.bound() || e.field() != x[0].field())
            throw Error(Errc::FieldMismatch, "coordinates lie in different fields");
}

bool all_zero(std::span<const Element> x) {
    return std::all_of(x.begin(), x.end(), [](const Element &e) { return e.is_zero(); });
}

} // namespace

bool projectively_equal(std::span<const Element> x, std::span<const Element> y) {
    if (x.size() != y.size())
        return false;
    std::size_t k = 0;
    while (k < x.size() && x[k].is_zero())
        ++k;
    if (k == x.size() || y[k].is_zero())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] * y[k] != y[i] * x[k])
            return false;
    return true;
}

void normalize_projective(std::span<Element> x) {
    auto it = std::find_if(x.begin(), x.end(), [](const Element &e) { return !e.is_zero(); });
    if (it == x.end())
        throw Error(Errc::AllZero, "cannot normalize the zero vector");
    if (it->is_one())
        return;
    Element inv = it->inverse();
    for (auto &e : x)
        e *= inv;
}

ThetaPoint4::ThetaPoint4(std::array<Element, 16> coords) : coords_(std::move(coords)) {
    check_same_field(coords_);
    for (int k = 0; k < 16; ++k) {
        Index u = Index::from_ordinal(k);
        if (coords_[k] != coords_[neg_index(u).ordinal()])
            throw Error(Errc::NotSymmetric, "a" + u.to_string() + " != a" + neg_index(u).to_string());
    }
    if (all_zero(coords_))
        throw Error(Errc::AllZero, "all theta coordinates vanish");
}

ThetaPoint4 ThetaPoint4::from_reduced(std::span<const Element, 10> reduced) {
    std::array<Element, 16> c;
    for (int k = 0; k < 16; ++k) {
        Index u = neg_canonical(Index::from_ordinal(k));
        auto pos = std::find(kReducedIndexes.begin(), kReducedIndexes.end(), u) - kReducedIndexes.begin();
        c[k] = reduced[pos];
    }
    return ThetaPoint4(std::move(c));
}

ThetaPoint4 ThetaPoint4::normalized() const {
    ThetaPoint4 r = *this;
    normalize_projective(r.coords_);
    return r;
}

bool ThetaPoint4::projectively_equal(const ThetaPoint4 &o) const {
    return rmtheta::projectively_equal(coords_, o.coords_);
}

ThetaPoint2::ThetaPoint2(std::array<Element, 4> coords) : coords_(std::move(coords)) {
    check_same_field(coords_);
    if (all_zero(coords_))
        throw Error(Errc::AllZero, "all level-2 coordinates vanish");
}

ThetaPoint2 ThetaPoint2::normalized() const {
    ThetaPoint2 r = *this;
    normalize_projective(r.coords_);
    return r;
}

bool ThetaPoint2::projectively_equal(const ThetaPoint2 &o) const {
    return rmtheta::projectively_equal(coords_, o.coords_);
}

} // namespace rmtheta
