#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace santalo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Hard cap for exact polytope operations. Facet growth under pairwise
// constructions is quadratic per step, so larger dimensions are rejected
// at construction instead of silently degrading.
inline constexpr int kMaxExactDim = 6;

// Axis-aligned box, per-axis bounds. lo[i] <= hi[i].
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  bool contains(const Vector& x, double tol = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
    return true;
  }
  bool contains(const Box& inner, double tol = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (inner.lo[i] < lo[i] - tol || inner.hi[i] > hi[i] + tol) return false;
    return true;
  }
  static Box centered(int n, double half_width) {
    Box b;
    b.lo = Vector::Constant(n, -half_width);
    b.hi = Vector::Constant(n, half_width);
    return b;
  }
  Box intersect(const Box& other) const {
    Box b;
    b.lo = lo.cwiseMax(other.lo);
    b.hi = hi.cwiseMin(other.hi);
    return b;
  }
};

struct Interval {
  double lo;
  double hi;
  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool empty(double tol = 0.0) const { return hi < lo - tol; }
};

// ---- error types -----------------------------------------------------------

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Degenerate or lower-dimensional input rejected at construction.
struct DegenerateBodyError : GeometryError {
  using GeometryError::GeometryError;
};

struct DimensionMismatchError : GeometryError {
  using GeometryError::GeometryError;
};

void require_dim_match(int a, int b, const std::string& where);

}  // namespace santalo
