#pragma once

// Evaluating relations at points over a finite field.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rmtheta/field.hpp"
#include "rmtheta/relation.hpp"
#include "rmtheta/theta_point.hpp"

namespace rmtheta {

class Assignment {
public:
    void set(VarRef v, Element value) { values_[v.ordinal()] = std::move(value); }
    const Element *get(VarRef v) const {
        const auto &slot = values_[v.ordinal()];
        return slot ? &*slot : nullptr;
    }

    /// a(u) from the point and b(v) := a(Mv): the sqrt(3)-transform with unit scalar.
    static Assignment from_point(const ThetaPoint4 &p);

private:
    std::array<std::optional<Element>, kVarCount> values_;
};

/// Throws MissingVariable or FieldMismatch.
Element evaluate(const Relation &r, const Assignment &x, const Field &f);

/// Values of every relation, sharing quadratic subproducts.
std::vector<Element> evaluate_all(const RelationSet &rs, const Assignment &x, const Field &f);

/// Whether every relation vanishes; stops at the first that does not.
bool all_vanish(const RelationSet &rs, const Assignment &x, const Field &f);

struct RelationOutcome {
    std::string id;
    bool passed = false; // residual is exactly zero
    Element residual;
};

struct VerificationReport {
    std::vector<RelationOutcome> outcomes; // sorted by id
    bool passed = false;
    double seconds = 0;

    /// First failing relation id, or empty.
    std::string first_failure() const;
    /// One `<id> PASS|FAIL` line per relation and a closing summary line.
    std::string to_text() const;
};

VerificationReport verify(const ThetaPoint4 &p, const RelationSet &rs);

} // namespace rmtheta
