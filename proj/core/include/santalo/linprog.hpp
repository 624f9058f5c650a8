#pragma once

#include <optional>

#include "santalo/types.hpp"

namespace santalo {

// Dense two-phase simplex for equality-form problems
//
//   min c·lambda   s.t.   A lambda = b,  lambda >= 0,
//
// where A is k x m with k small (k <= dim+1 in this library) and m possibly
// in the thousands. Every linear program in the library is routed through
// this form: supports and Chebyshev radii enter through LP duality, so the
// row count never exceeds the ambient dimension plus one.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;  // objective at the optimum, min orientation
  Vector lambda;       // optimal point (size m), valid when Optimal
};

LpResult simplex_min(const Matrix& A, const Vector& b, const Vector& c);

// Feasibility of {lambda >= 0 : A lambda = b} decided by the phase-1
// artificial residual against `tol`.
bool simplex_feasible(const Matrix& A, const Vector& b, double tol);

// max dir·x over {x : A x <= b} with x free; A rows are constraint normals.
// Returns nullopt when the constraint set is empty. Throws GeometryError when
// the maximum is unbounded.
std::optional<double> polytope_support(const Matrix& A, const Vector& b,
                                       const Vector& dir);

// min of sum(lambda) over {lambda >= 0 : sum_i lambda_i q_i = x} where q_i are
// the rows of `points`. This is the gauge of x with respect to conv(points)
// for symmetric full-dimensional point sets. Returns +inf when x is not in
// the cone spanned by the points.
double hull_combination_value(const Matrix& points, const Vector& x);

// p within `tol` of conv(rows of points)?
bool in_convex_hull(const Matrix& points, const Vector& p, double tol);

// Largest r such that some y satisfies A y + r*||a_i|| <= b_i for all i
// (inradius when positive). Negative values mean the constraint set is empty;
// values near zero mean it has empty interior. Rows with ||a_i|| ~ 0 are
// treated as pure feasibility flags on b_i.
double chebyshev_radius(const Matrix& A, const Vector& b);

}  // namespace santalo
