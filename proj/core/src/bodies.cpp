#include "santalo/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "santalo/linprog.hpp"
#include "santalo/rng.hpp"

namespace santalo {

void require_dim_match(int a, int b, const std::string& where) {
  if (a != b)
    throw DimensionMismatchError(where + ": dimension mismatch (" +
                                 std::to_string(a) + " vs " +
                                 std::to_string(b) + ")");
}

namespace {

constexpr double kDupTol = 1e-12;

bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

bool rows_close(const Vector& a, const Vector& b, double tol) {
  double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix gather_rows(const Matrix& rows, const std::vector<int>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), rows.cols());
  for (size_t i = 0; i < idx.size(); ++i) out.row(i) = rows.row(idx[i]);
  return out;
}

Matrix sort_rows(const Matrix& rows) {
  std::vector<int> idx(rows.rows());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return lex_less(rows.row(a).transpose(), rows.row(b).transpose());
  });
  return gather_rows(rows, idx);
}

Matrix dedupe_rows(const Matrix& rows, double tol) {
  std::vector<int> keep;
  for (int i = 0; i < rows.rows(); ++i) {
    bool dup = false;
    for (int j : keep)
      if (rows_close(rows.row(i).transpose(), rows.row(j).transpose(), tol)) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(i);
  }
  return gather_rows(rows, keep);
}

// Rewrites a near-symmetric row set as exact +-pairs: one canonical
// representative per negation orbit, its mirror emitted by exact negation.
Matrix close_under_negation(const Matrix& rows) {
  Matrix reps(rows.rows(), rows.cols());
  for (int i = 0; i < rows.rows(); ++i) {
    Vector r = rows.row(i).transpose();
    Vector neg = -r;
    reps.row(i) = lex_less(r, neg) ? neg.transpose() : r.transpose();
  }
  reps = dedupe_rows(reps, kDupTol);
  Matrix out(2 * reps.rows(), rows.cols());
  for (int i = 0; i < reps.rows(); ++i) {
    out.row(2 * i) = reps.row(i);
    out.row(2 * i + 1) = -reps.row(i);
  }
  return out;
}

Matrix drop_zero_rows(const Matrix& rows) {
  std::vector<int> keep;
  for (int i = 0; i < rows.rows(); ++i)
    if (rows.row(i).norm() > 1e-12) keep.push_back(i);
  return gather_rows(rows, keep);
}

void check_dim(int n, const char* what) {
  if (n < 1) throw DegenerateBodyError(std::string(what) + ": dimension < 1");
  if (n > kMaxExactDim)
    throw DegenerateBodyError(std::string(what) + ": dimension " +
                              std::to_string(n) + " exceeds exact-op cap " +
                              std::to_string(kMaxExactDim));
}

Box support_box(const Matrix& A, const Vector& c) {
  const int n = static_cast<int>(A.cols());
  Box box;
  box.lo.resize(n);
  box.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    Vector dir = Vector::Zero(n);
    dir[i] = 1.0;
    auto hi = polytope_support(A, c, dir);
    dir[i] = -1.0;
    auto lo = polytope_support(A, c, dir);
    if (!hi || !lo) throw GeometryError("support_box: empty constraint set");
    box.hi[i] = *hi;
    box.lo[i] = -*lo;
  }
  return box;
}

int affine_rank(const Matrix& pts) {
  if (pts.rows() < 2) return 0;
  Matrix d(pts.rows() - 1, pts.cols());
  for (int i = 1; i < pts.rows(); ++i) d.row(i - 1) = pts.row(i) - pts.row(0);
  Eigen::JacobiSVD<Matrix> svd(d);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9 * std::max(1.0, smax)) ++rank;
  return rank;
}

}  // namespace

// ---- HPolytope --------------------------------------------------------------

HPolytope::HPolytope(Matrix normals, bool symmetric) : symmetric_(symmetric) {
  dim_ = static_cast<int>(normals.cols());
  check_dim(dim_, "HPolytope");
  normals = drop_zero_rows(normals);
  if (normals.rows() == 0)
    throw DegenerateBodyError("HPolytope: no nontrivial halfspaces");
  normals = dedupe_rows(normals, kDupTol);
  if (symmetric_) normals = close_under_negation(normals);
  normals_ = sort_rows(normals);
  try {
    box_ = support_box(normals_, Vector::Ones(normals_.rows()));
  } catch (const GeometryError&) {
    throw DegenerateBodyError("HPolytope: unbounded halfspace intersection");
  }
}

HPolytope HPolytope::cube(int n, double half_width) {
  if (half_width <= 0) throw DegenerateBodyError("cube: nonpositive width");
  Matrix A = Matrix::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    A(2 * i, i) = 1.0 / half_width;
    A(2 * i + 1, i) = -1.0 / half_width;
  }
  return HPolytope(A, true);
}

HPolytope HPolytope::cross_polytope(int n, double radius) {
  if (radius <= 0) throw DegenerateBodyError("cross_polytope: nonpositive radius");
  const int m = 1 << n;
  Matrix A(m, n);
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < n; ++i)
      A(s, i) = ((s >> i) & 1 ? -1.0 : 1.0) / radius;
  return HPolytope(A, true);
}

// ---- VPolytope --------------------------------------------------------------

VPolytope::VPolytope(Matrix vertices, bool symmetric) : symmetric_(symmetric) {
  dim_ = static_cast<int>(vertices.cols());
  check_dim(dim_, "VPolytope");
  vertices = dedupe_rows(vertices, kDupTol);
  if (symmetric_) vertices = close_under_negation(vertices);
  vertices = sort_rows(vertices);
  if (vertices.rows() < dim_ + 1 || affine_rank(vertices) < dim_)
    throw DegenerateBodyError("VPolytope: hull is not full-dimensional");

  // extreme-point filter; symmetric bodies are filtered per +-pair so the
  // negation closure survives borderline LP calls
  std::vector<char> kept(vertices.rows(), 1);
  auto mirror_of = [&](int i) {
    Vector neg = -vertices.row(i).transpose();
    for (int j = 0; j < vertices.rows(); ++j)
      if (j != i && (vertices.row(j).transpose() - neg).cwiseAbs().maxCoeff() == 0.0)
        return j;
    return -1;
  };
  for (int i = 0; i < vertices.rows(); ++i) {
    if (!kept[i]) continue;
    int j = symmetric_ ? mirror_of(i) : -1;
    if (symmetric_ && j >= 0 && j < i) continue;  // pair already decided
    std::vector<int> others;
    for (int q = 0; q < vertices.rows(); ++q)
      if (q != i && kept[q]) others.push_back(q);
    if (others.size() < 2) continue;
    if (in_convex_hull(gather_rows(vertices, others),
                       vertices.row(i).transpose(), 1e-9)) {
      kept[i] = 0;
      if (j >= 0) kept[j] = 0;
    }
  }
  std::vector<int> keep_idx;
  for (int i = 0; i < vertices.rows(); ++i)
    if (kept[i]) keep_idx.push_back(i);
  vertices_ = gather_rows(vertices, keep_idx);
  if (vertices_.rows() < dim_ + 1 || affine_rank(vertices_) < dim_)
    throw DegenerateBodyError("VPolytope: degenerate after extreme filtering");
}

VPolytope VPolytope::cross_polytope(int n, double radius) {
  Matrix V = Matrix::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    V(2 * i, i) = radius;
    V(2 * i + 1, i) = -radius;
  }
  return VPolytope(V, true);
}

VPolytope VPolytope::cube(int n, double half_width) {
  const int m = 1 << n;
  Matrix V(m, n);
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < n; ++i)
      V(s, i) = ((s >> i) & 1 ? -1.0 : 1.0) * half_width;
  return VPolytope(V, true);
}

// ---- GeneralHPoly -----------------------------------------------------------

bool GeneralHPoly::contains(const Vector& y, double tol) const {
  if (A.rows() == 0) return true;
  return ((A * y - c).array() <= tol).all();
}

GeneralHPoly GeneralHPoly::substitute(int col, double value) const {
  GeneralHPoly out;
  const int n = dim();
  out.A.resize(A.rows(), n - 1);
  out.c = c - A.col(col) * value;
  int w = 0;
  for (int j = 0; j < n; ++j) {
    if (j == col) continue;
    out.A.col(w++) = A.col(j);
  }
  return out;
}

// ---- oracles ----------------------------------------------------------------

BodyOracle ball_oracle(int n, double radius) {
  if (radius <= 0) throw DegenerateBodyError("ball_oracle: nonpositive radius");
  BodyOracle o;
  o.dim = n;
  o.name = "ball(r=" + std::to_string(radius) + ")";
  o.box = Box::centered(n, radius);
  o.gauge = [radius](const Vector& x) { return x.norm() / radius; };
  o.fiber = [n, radius](int axis, const Vector& p) -> std::optional<Interval> {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != axis) s += p[i] * p[i];
    double rem = radius * radius - s;
    if (rem < 0) return std::nullopt;
    double h = std::sqrt(rem);
    return Interval{-h, h};
  };
  return o;
}

// ---- operations -------------------------------------------------------------

double gauge(const HPolytope& H, const Vector& x) {
  require_dim_match(H.dim(), static_cast<int>(x.size()), "gauge");
  double g = (H.normals() * x).maxCoeff();
  return std::max(g, 0.0);
}

double gauge(const VPolytope& V, const Vector& x) {
  require_dim_match(V.dim(), static_cast<int>(x.size()), "gauge");
  double g = hull_combination_value(V.vertices(), x);
  if (!std::isfinite(g))
    throw GeometryError("gauge: LP infeasible for full-dimensional body");
  return g;
}

HPolytope polar(const VPolytope& V) {
  if (!V.symmetric())
    throw GeometryError("polar: V-representation must be symmetric");
  return remove_redundant(HPolytope(V.vertices(), true));
}

VPolytope polar(const HPolytope& H) {
  if (!H.symmetric())
    throw GeometryError("polar: H-representation must be symmetric");
  return VPolytope(H.normals(), true);
}

HPolytope intersect(const HPolytope& H1, const HPolytope& H2) {
  require_dim_match(H1.dim(), H2.dim(), "intersect");
  Matrix A(H1.facet_count() + H2.facet_count(), H1.dim());
  A.topRows(H1.facet_count()) = H1.normals();
  A.bottomRows(H2.facet_count()) = H2.normals();
  return remove_redundant(HPolytope(A, H1.symmetric() && H2.symmetric()));
}

SliceResult slice(const HPolytope& H, int axis, double height) {
  const int n = H.dim();
  if (n < 2) throw GeometryError("slice: dimension must be at least 2");
  if (axis < 0 || axis >= n) throw GeometryError("slice: axis out of range");

  SliceResult res;
  const Matrix& A = H.normals();
  std::vector<int> live;
  for (int i = 0; i < A.rows(); ++i) {
    Vector ap(n - 1);
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (j != axis) ap[w++] = A(i, j);
    double ci = 1.0 - A(i, axis) * height;
    if (ap.norm() <= 1e-12) {
      if (ci < -1e-12) {
        res.status = SliceStatus::Empty;
        return res;
      }
      continue;  // vacuous row in the chart
    }
    live.push_back(i);
  }
  if (live.empty()) throw GeometryError("slice: no chart constraints");

  GeneralHPoly P;
  P.A.resize(static_cast<Eigen::Index>(live.size()), n - 1);
  P.c.resize(static_cast<Eigen::Index>(live.size()));
  for (size_t r = 0; r < live.size(); ++r) {
    int i = live[r];
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (j != axis) P.A(r, w++) = A(i, j);
    P.c[r] = 1.0 - A(i, axis) * height;
  }

  double r = chebyshev_radius(P.A, P.c);
  if (r < -1e-10) {
    res.status = SliceStatus::Empty;
    return res;
  }
  if (r <= 1e-10) {
    res.status = SliceStatus::LowerDim;
    res.poly = P;
    return res;
  }
  res.status = SliceStatus::NonEmpty;
  res.poly = P;
  res.origin_interior = (P.c.minCoeff() > 1e-12);
  if (res.origin_interior) {
    Matrix N = P.A;
    for (int i = 0; i < N.rows(); ++i) N.row(i) /= P.c[i];
    res.normalized = HPolytope(N, H.symmetric() && height == 0.0);
  }
  return res;
}

HPolytope linear_image(const HPolytope& H, const Matrix& M) {
  require_dim_match(H.dim(), static_cast<int>(M.rows()), "linear_image");
  require_dim_match(H.dim(), static_cast<int>(M.cols()), "linear_image");
  Eigen::JacobiSVD<Matrix> svd(M);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0 || smax / smin > 1e10)
    throw GeometryError("linear_image: matrix singular or ill-conditioned");
  Matrix Minv = M.inverse();
  return HPolytope(H.normals() * Minv, H.symmetric());
}

VPolytope linear_image(const VPolytope& V, const Matrix& M) {
  require_dim_match(V.dim(), static_cast<int>(M.rows()), "linear_image");
  require_dim_match(V.dim(), static_cast<int>(M.cols()), "linear_image");
  Eigen::JacobiSVD<Matrix> svd(M);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0 || smax / smin > 1e10)
    throw GeometryError("linear_image: matrix singular or ill-conditioned");
  return VPolytope(V.vertices() * M.transpose(), V.symmetric());
}

bool is_unconditional(const HPolytope& H) {
  const Matrix& A = H.normals();
  const int n = H.dim();
  const int m = static_cast<int>(A.rows());
  for (int i = 0; i < m; ++i) {
    for (int s = 1; s < (1 << n); ++s) {
      Vector f = A.row(i).transpose();
      for (int j = 0; j < n; ++j)
        if ((s >> j) & 1) f[j] = -f[j];
      bool found = false;
      for (int q = 0; q < m && !found; ++q) {
        bool eq = true;
        for (int j = 0; j < n && eq; ++j) eq = (A(q, j) == f[j]);
        found = eq;
      }
      if (!found) return false;
    }
  }
  return true;
}

VPolytope random_symmetric_polytope(int n, int vertex_pairs,
                                    std::uint64_t seed) {
  check_dim(n, "random_symmetric_polytope");
  if (vertex_pairs < n)
    throw GeometryError("random_symmetric_polytope: need at least dim pairs");
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    RngStream rng = RngStream::derive(seed, attempt);
    Matrix V(vertex_pairs, n);
    for (int i = 0; i < vertex_pairs; ++i) {
      double radius = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
      V.row(i) = (radius * rng.sphere_direction(n)).transpose();
    }
    try {
      return VPolytope(V, true);
    } catch (const DegenerateBodyError&) {
      continue;
    }
  }
  throw GeometryError("random_symmetric_polytope: generator kept degenerating");
}

Box enclosing_box(const HPolytope& H) { return H.box(); }

Box enclosing_box(const VPolytope& V) {
  Box b;
  b.lo = V.vertices().colwise().minCoeff().transpose();
  b.hi = V.vertices().colwise().maxCoeff().transpose();
  return b;
}

Box enclosing_box(const BodyOracle& O) { return O.box; }

Box enclosing_box(const GeneralHPoly& P) { return support_box(P.A, P.c); }

namespace {
// Drops every row whose support over the remaining rows is < threshold.
// threshold 1 - 1e-9 is the strict public rule (touching halfspaces stay);
// threshold 1 + 1e-12 additionally drops rows implied by the others, leaving
// the point set unchanged up to ~1e-12.
HPolytope drop_rows_below(const HPolytope& H, double threshold) {
  const Matrix& A = H.normals();
  const int m = static_cast<int>(A.rows());
  std::vector<char> kept(m, 1);

  auto exact_mirror = [&](int i) {
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      bool eq = true;
      for (int q = 0; q < A.cols() && eq; ++q) eq = (A(j, q) == -A(i, q));
      if (eq) return j;
    }
    return -1;
  };

  for (int i = 0; i < m; ++i) {
    if (!kept[i]) continue;
    int j = H.symmetric() ? exact_mirror(i) : -1;
    if (H.symmetric() && j >= 0 && j < i) continue;
    std::vector<int> others;
    for (int q = 0; q < m; ++q)
      if (q != i && kept[q]) others.push_back(q);
    if (others.empty()) continue;
    double v = hull_combination_value(gather_rows(A, others),
                                      A.row(i).transpose());
    if (v < threshold) {
      kept[i] = 0;
      if (j >= 0) kept[j] = 0;
    }
  }
  std::vector<int> keep_idx;
  for (int i = 0; i < m; ++i)
    if (kept[i]) keep_idx.push_back(i);
  return HPolytope(gather_rows(A, keep_idx), H.symmetric());
}
}  // namespace

HPolytope remove_redundant(const HPolytope& H) {
  return drop_rows_below(H, 1.0 - 1e-9);
}

HPolytope remove_implied_rows(const HPolytope& H) {
  return drop_rows_below(H, 1.0 + 1e-12);
}

VPolytope to_vrep(const HPolytope& H) {
  const Matrix& A = H.normals();
  const int n = H.dim();
  const int m = static_cast<int>(A.rows());

  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= static_cast<double>(m - i) / (i + 1);
  if (combos > 3e6)
    throw GeometryError("to_vrep: facet count too large for enumeration");

  std::vector<Vector> verts;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;

  auto emit = [&](const std::vector<int>& sel) {
    Matrix S(n, n);
    for (int i = 0; i < n; ++i) S.row(i) = A.row(sel[i]);
    Eigen::FullPivLU<Matrix> lu(S);
    lu.setThreshold(1e-10);
    if (lu.rank() < n) return;
    Vector x = lu.solve(Vector::Ones(n));
    if (!x.allFinite()) return;
    if ((S * x - Vector::Ones(n)).cwiseAbs().maxCoeff() > 1e-8) return;
    if (((A * x).array() > 1.0 + 1e-9).any()) return;
    for (const Vector& v : verts)
      if ((v - x).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff()))
        return;
    verts.push_back(x);
  };

  // iterate n-subsets of rows in lexicographic order
  while (true) {
    emit(idx);
    int p = n - 1;
    while (p >= 0 && idx[p] == m - n + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < n; ++q) idx[q] = idx[q - 1] + 1;
  }

  if (verts.empty()) throw GeometryError("to_vrep: no vertices found");
  Matrix V(static_cast<Eigen::Index>(verts.size()), n);
  for (size_t i = 0; i < verts.size(); ++i) V.row(i) = verts[i].transpose();
  return VPolytope(V, H.symmetric());
}

HPolytope to_hrep(const VPolytope& V) {
  HPolytope polar_h = polar(V);
  VPolytope facet_normals = to_vrep(polar_h);
  return HPolytope(facet_normals.vertices(), V.symmetric());
}

HPolytope polar_hrep(const HPolytope& K) { return to_hrep(polar(K)); }

HPolytope scale(const HPolytope& H, double t) {
  if (t <= 0) throw GeometryError("scale: factor must be positive");
  return HPolytope(H.normals() / t, H.symmetric());
}

VPolytope scale(const VPolytope& V, double t) {
  if (t <= 0) throw GeometryError("scale: factor must be positive");
  return VPolytope(V.vertices() * t, V.symmetric());
}

namespace {
// set equality up to tol; greedy matching tolerates sort-order flips of
// nearly tied rows
bool rows_approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<char> used(b.rows(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    bool matched = false;
    for (int j = 0; j < b.rows() && !matched; ++j) {
      if (used[j]) continue;
      if ((a.row(i) - b.row(j)).cwiseAbs().maxCoeff() <= tol) {
        used[j] = 1;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}
}  // namespace

bool approx_equal(const HPolytope& a, const HPolytope& b, double tol) {
  return rows_approx_equal(a.normals(), b.normals(), tol);
}

bool approx_equal(const VPolytope& a, const VPolytope& b, double tol) {
  return rows_approx_equal(a.vertices(), b.vertices(), tol);
}

}  // namespace santalo
