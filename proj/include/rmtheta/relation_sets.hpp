#pragma once

#include <string_view>

#include "rmtheta/relation.hpp"

namespace rmtheta {

/// The quartic theta relations cutting out level-4 theta null points in
/// P^15: 20 quartics plus the 6 symmetry identities a_u = a_{-u}.
/// Ids m01..m26.
RelationSet mumford_relations();

/// Correspondence relations between a theta null point (family A) and its
/// sqrt(3)-transform (family B), one per pair of equivalent triples of S,
/// normalized and deduplicated.  Ids bil01...
RelationSet rm_bilinear_relations();

/// rm_bilinear_relations() with b(v) -> a(Mv) and every a(u) folded to
/// a(min(u, -u)).  Quadratic in family A.  Ids rm01...
RelationSet rm_relations();

/// Products E1 x E2 of elliptic curves: 4 a11^4 = (a00^2+a02^2+a20^2+a22^2) a00 a22.  Id sp01.
Relation split_product_relation();

/// Squares E x E: 7 quadrics plus the 13 distinct linear identities.  Ids sq01..sq20.
RelationSet split_square_relations();

/// Lookup by CLI name: mumford, rm, rm-bilinear, split-product, split-square.
/// Throws UnknownSet.
RelationSet relation_set_by_name(std::string_view name);

} // namespace rmtheta
