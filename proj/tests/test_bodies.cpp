#include <doctest.h>

#include <cmath>

#include "santalo/bodies.hpp"
#include "santalo/linprog.hpp"
#include "santalo/rng.hpp"

using namespace santalo;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  Matrix m(static_cast<Eigen::Index>(r.size()),
           static_cast<Eigen::Index>(r.begin()->size()));
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}
}  // namespace

TEST_CASE("gauge of H-polytopes on the cube and diamond") {
  HPolytope cube = HPolytope::cube(2);
  HPolytope diamond = HPolytope::cross_polytope(2);

  CHECK(gauge(diamond, vec({1, 0})) == doctest::Approx(1.0));
  CHECK(gauge(cube, vec({0, 0})) == 0.0);
  CHECK(gauge(cube, vec({3, -2})) == doctest::Approx(3.0));
  CHECK_THROWS_AS(gauge(cube, vec({1, 2, 3})), DimensionMismatchError);
}

TEST_CASE("gauge of V-polytopes solves the combination program") {
  VPolytope diamond = VPolytope::cross_polytope(2);
  VPolytope square = VPolytope::cube(2);

  CHECK(gauge(diamond, vec({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(gauge(square, vec({1, 1})) == doctest::Approx(1.0));
  CHECK(gauge(diamond, vec({0.3, 0.1})) == doctest::Approx(0.4));
}

TEST_CASE("gauge_v agrees with the gauge of the double polar") {
  RngStream rng(11);
  for (int t = 0; t < 10; ++t) {
    VPolytope V = random_symmetric_polytope(2, 5, 100 + t);
    HPolytope H = to_hrep(V);
    for (int s = 0; s < 20; ++s) {
      Vector x = rng.sphere_direction(2) * rng.uniform(0.0, 3.0);
      CHECK(gauge(V, x) == doctest::Approx(gauge(H, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("polar of the diamond is the cube and vice versa") {
  VPolytope diamond = VPolytope::cross_polytope(2);
  HPolytope cube_h = polar(diamond);
  CHECK(cube_h.facet_count() == 4);
  CHECK(gauge(cube_h, vec({1, 1})) == doctest::Approx(1.0));

  VPolytope square = VPolytope::cube(2);
  HPolytope diamond_h = polar(square);
  CHECK(diamond_h.facet_count() == 4);
  CHECK(gauge(diamond_h, vec({0.5, 0.5})) == doctest::Approx(1.0));

  // scaling duality (tK)^o = K^o / t
  VPolytope stretched(rows({{2, 0}, {-2, 0}, {0, 1}, {0, -1}}), true);
  HPolytope p = polar(stretched);
  CHECK(gauge(p, vec({0.5, 0})) == doctest::Approx(1.0));
}

TEST_CASE("polar of H-representation filters non-extreme normals") {
  HPolytope cube = HPolytope::cube(2);
  VPolytope v = polar(cube);
  CHECK(v.vertex_count() == 4);  // the diamond

  // bipolar of the cube: diamond normals give back cube vertices
  HPolytope diamond_h(rows({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}), true);
  VPolytope cube_v = polar(diamond_h);
  CHECK(cube_v.vertex_count() == 4);
  CHECK(gauge(cube_v, vec({1, 1})) == doctest::Approx(1.0));

  // a duplicated normal changes nothing
  HPolytope dup(rows({{1, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}), true);
  CHECK(polar(dup).vertex_count() == 4);
}

TEST_CASE("bipolar round-trip returns the original vertices") {
  for (int n = 2; n <= 3; ++n)
    for (int t = 0; t < 15; ++t) {
      VPolytope V = random_symmetric_polytope(n, 4 + n, 500 + t);
      VPolytope W = polar(polar(V));
      CHECK(approx_equal(V, W, 1e-9));
    }
}

TEST_CASE("intersect removes redundancy but keeps touching facets") {
  HPolytope cube = HPolytope::cube(2);

  CHECK(intersect(cube, cube).facet_count() == 4);  // idempotent

  // diamond inside cube: the body is the diamond; the cube rows survive only
  // as touching halfspaces at the diamond vertices
  HPolytope cap = intersect(cube, HPolytope::cross_polytope(2));
  CHECK(gauge(cap, vec({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(gauge(cap, vec({1, 0})) == doctest::Approx(1.0));
  CHECK(gauge(cap, vec({0.9, 0})) < 1.0);

  // scaled diamond through the cube corners: touching halfspaces stay
  HPolytope big_diamond = HPolytope::cross_polytope(2, 2.0);
  CHECK(intersect(cube, big_diamond).facet_count() == 8);

  // strictly cutting diamond: a genuine octagon, checked against a 2-d
  // brute-force vertex enumeration oracle
  HPolytope cutting = HPolytope::cross_polytope(2, 1.5);
  HPolytope octagon = intersect(cube, cutting);
  CHECK(octagon.facet_count() == 8);

  const Matrix& A = octagon.normals();
  int verts = 0;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = i + 1; j < A.rows(); ++j) {
      double det = A(i, 0) * A(j, 1) - A(i, 1) * A(j, 0);
      if (std::abs(det) < 1e-12) continue;
      Vector x(2);
      x[0] = (A(j, 1) - A(i, 1)) / det;
      x[1] = (A(i, 0) - A(j, 0)) / det;
      if (((A * x).array() <= 1.0 + 1e-9).all()) ++verts;
    }
  CHECK(verts == 8);
}

TEST_CASE("slices of standard bodies") {
  HPolytope cube3 = HPolytope::cube(3);
  SliceResult s = slice(cube3, 2, 0.0);
  REQUIRE(s.status == SliceStatus::NonEmpty);
  REQUIRE(s.normalized.has_value());
  CHECK(s.normalized->facet_count() == 4);
  CHECK(s.normalized->symmetric());
  CHECK(gauge(*s.normalized, vec({1, 1})) == doctest::Approx(1.0));

  HPolytope diamond = HPolytope::cross_polytope(2);
  SliceResult seg = slice(diamond, 1, 0.5);
  REQUIRE(seg.status == SliceStatus::NonEmpty);
  Box b = enclosing_box(seg.poly);
  CHECK(b.lo[0] == doctest::Approx(-0.5));
  CHECK(b.hi[0] == doctest::Approx(0.5));

  CHECK(slice(HPolytope::cube(2), 0, 1.5).status == SliceStatus::Empty);
  // a boundary slice of the diamond is a single point of the chart
  CHECK(slice(HPolytope::cross_polytope(2), 0, 1.0).status ==
        SliceStatus::LowerDim);
  // a boundary slice of the cube is a whole face, full-dimensional in chart
  CHECK(slice(HPolytope::cube(2), 0, 1.0).status == SliceStatus::NonEmpty);
}

TEST_CASE("slice at z=0 of a symmetric body is symmetric") {
  for (int t = 0; t < 10; ++t) {
    VPolytope V = random_symmetric_polytope(3, 6, 900 + t);
    HPolytope H = to_hrep(V);
    SliceResult s = slice(H, 1, 0.0);
    REQUIRE(s.status == SliceStatus::NonEmpty);
    REQUIRE(s.normalized.has_value());
    CHECK(s.normalized->symmetric());
  }
}

TEST_CASE("linear images map vertices and preserve membership") {
  VPolytope square = VPolytope::cube(2);
  Matrix M = rows({{1, 1}, {0, 1}});  // shear
  VPolytope sheared = linear_image(square, M);
  CHECK(sheared.vertex_count() == 4);
  CHECK(gauge(sheared, vec({2, 1})) == doctest::Approx(1.0));
  CHECK(gauge(sheared, vec({0, -1})) == doctest::Approx(1.0));

  HPolytope cube = HPolytope::cube(2);
  HPolytope doubled = linear_image(cube, 2.0 * Matrix::Identity(2, 2));
  CHECK(gauge(doubled, vec({2, 2})) == doctest::Approx(1.0));

  CHECK(approx_equal(linear_image(cube, Matrix::Identity(2, 2)), cube, 1e-12));
  CHECK_THROWS_AS(linear_image(cube, Matrix::Zero(2, 2)), GeometryError);

  // membership is preserved: x in K iff Mx in MK
  RngStream rng(3);
  HPolytope sheared_h = linear_image(cube, M);
  for (int s = 0; s < 200; ++s) {
    Vector x = rng.uniform_in_box(Box::centered(2, 2.0));
    bool in_cube = gauge(cube, x) <= 1.0;
    bool image_in = gauge(sheared_h, M * x) <= 1.0 + 1e-12;
    CHECK(in_cube == image_in);
  }
}

TEST_CASE("is_unconditional detects sign-flip closure exactly") {
  CHECK(is_unconditional(HPolytope::cube(2)));
  CHECK(is_unconditional(HPolytope::cross_polytope(2)));
  CHECK(is_unconditional(HPolytope::cube(3)));

  Matrix M = rows({{1, 1}, {0, 1}});
  CHECK(!is_unconditional(linear_image(HPolytope::cube(2), M)));
}

TEST_CASE("random symmetric polytopes are deterministic and full-dimensional") {
  VPolytope a = random_symmetric_polytope(2, 2, 42);
  VPolytope b = random_symmetric_polytope(2, 2, 42);
  CHECK(a.vertex_count() == 4);
  CHECK(approx_equal(a, b, 0.0));

  VPolytope c = random_symmetric_polytope(3, 10, 7);
  CHECK(c.dim() == 3);
  CHECK(c.vertex_count() >= 4);
  Eigen::JacobiSVD<Matrix> svd(c.vertices());
  CHECK(svd.singularValues().minCoeff() > 1e-9);
  CHECK(!is_unconditional(to_hrep(c)));

  CHECK_THROWS_AS(random_symmetric_polytope(3, 2, 1), GeometryError);
}

TEST_CASE("enclosing boxes") {
  Box bc = enclosing_box(HPolytope::cube(3));
  CHECK(bc.lo.isApprox(-Vector::Ones(3)));
  CHECK(bc.hi.isApprox(Vector::Ones(3)));

  Box bd = enclosing_box(HPolytope::cross_polytope(2));
  CHECK(bd.hi[0] == doctest::Approx(1.0));

  Box bo = enclosing_box(ball_oracle(2, 2.0));
  CHECK(bo.hi[1] == doctest::Approx(2.0));
}

TEST_CASE("membership of H- and V-forms agrees away from the boundary") {
  RngStream rng(17);
  for (int t = 0; t < 5; ++t) {
    VPolytope V = random_symmetric_polytope(2, 6, 700 + t);
    HPolytope H = to_hrep(V);
    int checked = 0;
    for (int s = 0; s < 2000; ++s) {
      Vector x = rng.uniform_in_box(Box::centered(2, 2.5));
      double gh = gauge(H, x);
      if (std::abs(gh - 1.0) <= 1e-9) continue;  // boundary tolerance band
      CHECK((gauge(V, x) <= 1.0 + 1e-9) == (gh <= 1.0));
      ++checked;
    }
    CHECK(checked > 1500);
  }
}

TEST_CASE("gauge-polar duality inequality with near-equality attained") {
  RngStream rng(23);
  for (int t = 0; t < 8; ++t) {
    VPolytope V = random_symmetric_polytope(2, 5, 300 + t);
    HPolytope H = to_hrep(V);
    const Matrix& normals = H.normals();  // K^o = conv(normals)
    double best_ratio = 0.0;
    for (int s = 0; s < 300; ++s) {
      Vector x = rng.sphere_direction(2) * rng.uniform(0.2, 2.0);
      Vector y = rng.sphere_direction(2) * rng.uniform(0.2, 2.0);
      double bound = gauge(H, x) * hull_combination_value(normals, y);
      CHECK(x.dot(y) <= bound + 1e-9);
      if (bound > 1e-12) best_ratio = std::max(best_ratio, x.dot(y) / bound);
    }
    // equality is attained along dual boundary pairs: push one pair there
    Vector x = V.vertices().row(0).transpose();
    for (int i = 0; i < normals.rows(); ++i) {
      Vector y = normals.row(i).transpose();
      if (std::abs(x.dot(y) - 1.0) < 1e-9) best_ratio = 1.0;
    }
    CHECK(best_ratio > 1.0 - 1e-6);
  }
}

TEST_CASE("degenerate inputs are rejected with distinct errors") {
  // unbounded: a half-plane
  CHECK_THROWS_AS(HPolytope(rows({{1, 0}, {0, 1}}), false),
                  DegenerateBodyError);
  // lower-dimensional vertex set
  CHECK_THROWS_AS(VPolytope(rows({{1, 0}, {-1, 0}}), true),
                  DegenerateBodyError);
  // dimension cap
  Matrix big = Matrix::Identity(7, 7);
  CHECK_THROWS_AS(VPolytope(big, true), DegenerateBodyError);
}

TEST_CASE("scale and to_vrep round out the representation toolkit") {
  HPolytope cube = HPolytope::cube(2);
  VPolytope v = to_vrep(cube);
  CHECK(v.vertex_count() == 4);
  CHECK(gauge(v, vec({1, 1})) == doctest::Approx(1.0));

  HPolytope half = scale(cube, 0.5);
  CHECK(gauge(half, vec({0.5, 0})) == doctest::Approx(1.0));
}
