#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "santalo/types.hpp"

namespace santalo {

// Symmetric convex bodies in two polytopal representations. Halfspace bodies
// are stored offset-normalized, {x : a_i.x <= 1}, which keeps the origin
// interior by construction and makes polarity a transpose of the row list.

class HPolytope {
 public:
  // Canonicalizes (drops zero rows, deduplicates at relative tolerance 1e-12,
  // closes the row set under exact negation when `symmetric`) and validates
  // boundedness. Throws DegenerateBodyError for unbounded or trivial input.
  HPolytope(Matrix normals, bool symmetric);

  int dim() const { return dim_; }
  const Matrix& normals() const { return normals_; }
  bool symmetric() const { return symmetric_; }
  int facet_count() const { return static_cast<int>(normals_.rows()); }
  const Box& box() const { return box_; }

  static HPolytope cube(int n, double half_width = 1.0);
  // L1 ball of the given radius ("diamond" in the plane)
  static HPolytope cross_polytope(int n, double radius = 1.0);

 private:
  Matrix normals_;
  int dim_;
  bool symmetric_;
  Box box_;
};

class VPolytope {
 public:
  // Deduplicates, closes under negation when `symmetric`, filters non-extreme
  // points, and requires a full-dimensional hull.
  VPolytope(Matrix vertices, bool symmetric);

  int dim() const { return dim_; }
  const Matrix& vertices() const { return vertices_; }
  bool symmetric() const { return symmetric_; }
  int vertex_count() const { return static_cast<int>(vertices_.rows()); }

  static VPolytope cross_polytope(int n, double radius = 1.0);
  static VPolytope cube(int n, double half_width = 1.0);

 private:
  Matrix vertices_;
  int dim_;
  bool symmetric_;
};

// Halfspace list with general offsets, A y <= c. Used for hyperplane slices,
// which need not contain their chart origin.
struct GeneralHPoly {
  Matrix A;
  Vector c;
  int dim() const { return static_cast<int>(A.cols()); }
  bool contains(const Vector& y, double tol = 1e-9) const;
  GeneralHPoly substitute(int col, double value) const;
};

// Membership/gauge oracle for non-polytopal bodies (Euclidean ball,
// geometric-mean body). `fiber`, when set, returns the exact intersection of
// the body with an axis line: {t : point + t e_axis in body} where the axis
// entry of `point` is ignored.
struct BodyOracle {
  int dim = 0;
  std::string name;
  std::function<double(const Vector&)> gauge;
  Box box;
  std::function<std::optional<Interval>(int axis, const Vector& point)> fiber;
};

BodyOracle ball_oracle(int n, double radius = 1.0);

// ---- operations ------------------------------------------------------------

double gauge(const HPolytope& H, const Vector& x);
double gauge(const VPolytope& V, const Vector& x);  // LP, see linprog.hpp

// polar of conv(vertices): one halfspace v.y <= 1 per vertex
HPolytope polar(const VPolytope& V);
// polar of {a_i.x <= 1}: conv of the normals
VPolytope polar(const HPolytope& H);

HPolytope intersect(const HPolytope& H1, const HPolytope& H2);

enum class SliceStatus { NonEmpty, Empty, LowerDim };
struct SliceResult {
  SliceStatus status = SliceStatus::Empty;
  GeneralHPoly poly;      // chart of axis^perp, valid when NonEmpty
  bool origin_interior = false;
  std::optional<HPolytope> normalized;  // present when origin interior
};
// (H - z e_axis) ∩ axis^perp in the coordinate chart that drops `axis`
SliceResult slice(const HPolytope& H, int axis, double height);

HPolytope linear_image(const HPolytope& H, const Matrix& M);
VPolytope linear_image(const VPolytope& V, const Matrix& M);

// row set closed under every coordinate sign flip, exact on stored reals
bool is_unconditional(const HPolytope& H);

VPolytope random_symmetric_polytope(int n, int vertex_pairs,
                                    std::uint64_t seed);

Box enclosing_box(const HPolytope& H);
Box enclosing_box(const VPolytope& V);
Box enclosing_box(const BodyOracle& O);

// Drops every halfspace whose support over the others is < 1 - 1e-9
// (touching halfspaces stay, per the redundancy criterion).
HPolytope remove_redundant(const HPolytope& H);

// Stronger pruning for pipelines: also drops halfspaces implied by the rest
// (support < 1 + 1e-12), which leaves the body unchanged but keeps facet
// counts polynomial along repeated symmetrization.
HPolytope remove_implied_rows(const HPolytope& H);

// Exact representation changes (vertex/facet enumeration, n <= 6 desk scale).
VPolytope to_vrep(const HPolytope& H);
HPolytope to_hrep(const VPolytope& V);

// H-representation of K^o (facets of the hull of K's normals)
HPolytope polar_hrep(const HPolytope& K);

HPolytope scale(const HPolytope& H, double t);
VPolytope scale(const VPolytope& V, double t);

bool approx_equal(const HPolytope& a, const HPolytope& b, double tol);
bool approx_equal(const VPolytope& a, const VPolytope& b, double tol);

// support boxes used by samplers: per-axis bounds of a general slice
Box enclosing_box(const GeneralHPoly& P);

}  // namespace santalo
