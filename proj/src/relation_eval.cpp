#include "rmtheta/relation_eval.hpp"

#include <algorithm>
#include <chrono>

namespace rmtheta {

Assignment Assignment::from_point(const ThetaPoint4 &p) {
    Assignment x;
    for (int k = 0; k < 16; ++k) {
        Index u = Index::from_ordinal(k);
        x.set(VarRef{Family::A, u}, p[u]);
        x.set(VarRef{Family::B, u}, p[apply_M(u)]);
    }
    return x;
}

namespace {

// Monomial values built from cached pairwise products.
class MonomialCache {
public:
    MonomialCache(const Assignment &x, const Field &f) : x_(x), f_(f) {}

    Element value(const Monomial &m) {
        auto vars = m.factors();
        Element acc = f_.one();
        bool first = true;
        std::size_t k = 0;
        auto take = [&](const Element &e) {
            if (first) {
                acc = e;
                first = false;
            } else {
                acc *= e;
            }
        };
        for (; k + 1 < vars.size(); k += 2)
            take(pair(vars[k], vars[k + 1]));
        if (k < vars.size())
            take(single(vars[k]));
        return acc;
    }

private:
    const Element &single(VarRef v) {
        const Element *e = x_.get(v);
        if (!e)
            throw Error(Errc::MissingVariable, "no value for " + v.to_string());
        if (e->field() != f_)
            throw Error(Errc::FieldMismatch, "value for " + v.to_string() + " lies in another field");
        return *e;
    }

    const Element &pair(VarRef a, VarRef b) {
        auto &slot = pairs_[a.ordinal() * kVarCount + b.ordinal()];
        if (!slot)
            slot = single(a) * single(b);
        return *slot;
    }

    const Assignment &x_;
    const Field &f_;
    std::array<std::optional<Element>, kVarCount * kVarCount> pairs_;
};

Element evaluate_with(const Relation &r, MonomialCache &cache, const Field &f) {
    Element acc = f.zero();
    for (const auto &t : r.terms()) {
        Element v = cache.value(t.monomial);
        if (t.coeff.fits_slong_p())
            v *= t.coeff.get_si();
        else
            v *= f.constant(t.coeff);
        acc += v;
    }
    return acc;
}

} // namespace

Element evaluate(const Relation &r, const Assignment &x, const Field &f) {
    MonomialCache cache(x, f);
    return evaluate_with(r, cache, f);
}

std::vector<Element> evaluate_all(const RelationSet &rs, const Assignment &x, const Field &f) {
    MonomialCache cache(x, f);
    std::vector<Element> out;
    out.reserve(rs.size());
    for (const auto &r : rs)
        out.push_back(evaluate_with(r, cache, f));
    return out;
}

bool all_vanish(const RelationSet &rs, const Assignment &x, const Field &f) {
    MonomialCache cache(x, f);
    for (const auto &r : rs)
        if (!evaluate_with(r, cache, f).is_zero())
            return false;
    return true;
}

std::string VerificationReport::first_failure() const {
    for (const auto &o : outcomes)
        if (!o.passed)
            return o.id;
    return {};
}

std::string VerificationReport::to_text() const {
    std::string out;
    std::size_t fails = 0;
    for (const auto &o : outcomes) {
        out += o.id + (o.passed ? " PASS" : " FAIL") + "\n";
        fails += o.passed ? 0 : 1;
    }
    out += std::string(passed ? "OVERALL PASS" : "OVERALL FAIL") + " (" + std::to_string(outcomes.size() - fails) +
           "/" + std::to_string(outcomes.size()) + " relations vanish)\n";
    return out;
}

VerificationReport verify(const ThetaPoint4 &p, const RelationSet &rs) {
    auto start = std::chrono::steady_clock::now();
    const Field f = p.field();
    auto values = evaluate_all(rs, Assignment::from_point(p), f);
    VerificationReport report;
    report.passed = true;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        bool zero = values[k].is_zero();
        report.outcomes.push_back(RelationOutcome{rs[k].id(), zero, values[k]});
        report.passed = report.passed && zero;
    }
    std::stable_sort(report.outcomes.begin(), report.outcomes.end(),
                     [](const RelationOutcome &a, const RelationOutcome &b) { return a.id < b.id; });
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace rmtheta
