#pragma once

#include <optional>
#include <vector>

#include "santalo/bodies.hpp"

namespace santalo {

// One-dimensional fiber of H over a point of the axis^perp chart:
// {t : embed(y) + t e_axis in H}. Empty fibers are values, not errors.
std::optional<Interval> fiber_interval(const HPolytope& H, int axis,
                                       const Vector& y_chart);

// Exact H-representation of the Steiner symmetral along a coordinate axis.
// Constraints with axis coefficient of magnitude <= 1e-12 pass through
// unchanged; every (positive, negative) coefficient pair contributes the two
// mirrored halfspaces bounding the recentered fiber. Redundancy is removed
// before returning so facet counts stay polynomial along pipelines.
HPolytope steiner(const HPolytope& H, int axis);

// Symmetrizes along e_n, ..., e_2 in that order. The e_1 step is unnecessary
// for symmetric input: the remaining mirror symmetries compose with central
// symmetry to give the full sign-flip group. The returned representation
// passes is_unconditional exactly.
HPolytope unconditionalize(const HPolytope& H);

// Intermediate bodies of the unconditionalization pipeline; front() is the
// input, back() the final (representation-closed) unconditional body.
std::vector<HPolytope> steiner_chain(const HPolytope& H);

// Rewrites the facet list of a (mathematically) unconditional body as exact
// sign-flip orbits, so the exact closure test passes on stored reals.
// Coordinates below 1e-12 relative are snapped to zero first.
HPolytope enforce_unconditional_representation(const HPolytope& H);

}  // namespace santalo
