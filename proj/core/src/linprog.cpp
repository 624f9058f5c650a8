#include "santalo/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace santalo {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

struct Tableau {
  Matrix A;                // k x (m + k), artificials appended
  Vector b;                // k, nonnegative
  int m = 0;               // real column count
  std::vector<int> basis;  // size k
  Eigen::PartialPivLU<Matrix> lu;

  void refactor() {
    const int k = static_cast<int>(b.size());
    Matrix B(k, k);
    for (int i = 0; i < k; ++i) B.col(i) = A.col(basis[i]);
    lu.compute(B);
  }
};

Tableau make_tableau(const Matrix& A_in, const Vector& b_in) {
  const int k = static_cast<int>(A_in.rows());
  const int m = static_cast<int>(A_in.cols());
  Tableau t;
  t.m = m;
  t.A.resize(k, m + k);
  t.A.leftCols(m) = A_in;
  t.A.rightCols(k).setZero();
  t.b = b_in;
  for (int i = 0; i < k; ++i) {
    if (t.b[i] < 0) {
      t.b[i] = -t.b[i];
      t.A.row(i).head(m) = -A_in.row(i);
    }
    t.A(i, m + i) = 1.0;
  }
  t.basis.resize(k);
  for (int i = 0; i < k; ++i) t.basis[i] = m + i;
  return t;
}

// One simplex phase; `allowed` masks columns permitted to enter. Returns
// false when the objective is unbounded below.
bool run_phase(Tableau& t, const Vector& c, const std::vector<char>& allowed,
               double* out_value) {
  const int k = static_cast<int>(t.b.size());
  const int ncols = static_cast<int>(t.A.cols());
  const long max_iters = 200L + 10L * ncols + 50L * k;

  const double cost_scale = 1.0 + c.cwiseAbs().maxCoeff();
  int degenerate_streak = 0;
  double last_obj = std::numeric_limits<double>::infinity();

  std::vector<char> is_basic(ncols, 0);
  for (int i : t.basis) is_basic[i] = 1;

  for (long iter = 0; iter < max_iters; ++iter) {
    t.refactor();
    Vector xb = t.lu.solve(t.b);

    Vector cb(k);
    for (int i = 0; i < k; ++i) cb[i] = c[t.basis[i]];
    Vector y = t.lu.transpose().solve(cb);

    double obj = cb.dot(xb);
    if (obj >= last_obj - 1e-13 * (1.0 + std::abs(last_obj)))
      ++degenerate_streak;
    else
      degenerate_streak = 0;
    last_obj = obj;
    const bool bland = degenerate_streak > 2 * (k + 2);

    int enter = -1;
    double best = -kCostTol * cost_scale;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[j] || is_basic[j]) continue;
      double dj = c[j] - y.dot(t.A.col(j));
      if (bland) {
        if (dj < -kCostTol * cost_scale) { enter = j; break; }
      } else if (dj < best) {
        best = dj;
        enter = j;
      }
    }
    if (enter < 0) {
      if (out_value) *out_value = obj;
      return true;
    }

    Vector w = t.lu.solve(t.A.col(enter));
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      if (w[i] > kPivotTol) {
        double ratio = std::max(xb[i], 0.0) / w[i];
        bool better = ratio < best_ratio - 1e-12;
        bool tie = !better && ratio < best_ratio + 1e-12 && leave >= 0;
        if (tie) {
          // Bland: smallest basis column; otherwise evict the largest
          // column index, which prefers artificials (appended last)
          better = bland ? t.basis[i] < t.basis[leave]
                         : t.basis[i] > t.basis[leave];
        }
        if (better || leave < 0) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;
    is_basic[t.basis[leave]] = 0;
    is_basic[enter] = 1;
    t.basis[leave] = enter;
  }
  throw GeometryError("simplex: iteration limit exceeded");
}

}  // namespace

LpResult simplex_min(const Matrix& A_in, const Vector& b_in, const Vector& c) {
  Matrix A = A_in;
  Vector b = b_in;

  // Phase 1, re-run after deleting dependent rows whose artificial cannot be
  // driven out of the basis. Degenerate inputs make this loop run at most a
  // couple of times; well-posed ones exit on the first pass.
  Tableau t;
  for (int attempt = 0; ; ++attempt) {
    t = make_tableau(A, b);
    const int k = static_cast<int>(b.size());
    const int m = t.m;
    Vector c1 = Vector::Zero(m + k);
    c1.tail(k).setOnes();
    std::vector<char> allowed(m + k, 1);
    double phase1 = 0.0;
    if (!run_phase(t, c1, allowed, &phase1))
      throw GeometryError("simplex: phase 1 unbounded");

    const double feas_scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (phase1 > 1e-9 * feas_scale) {
      LpResult r;
      r.status = LpStatus::Infeasible;
      r.value = phase1;
      return r;
    }

    // pivot basic artificials out where a real column is available
    t.refactor();
    std::vector<int> dead_rows;
    for (int i = 0; i < k; ++i) {
      if (t.basis[i] < m) continue;
      int replacement = -1;
      for (int j = 0; j < m && replacement < 0; ++j) {
        bool basic = false;
        for (int q = 0; q < k; ++q)
          if (t.basis[q] == j) { basic = true; break; }
        if (basic) continue;
        Vector w = t.lu.solve(t.A.col(j));
        if (std::abs(w[i]) > 1e-7) replacement = j;
      }
      if (replacement >= 0) {
        t.basis[i] = replacement;
        t.refactor();
      } else {
        dead_rows.push_back(i);
      }
    }
    if (dead_rows.empty()) break;
    if (attempt > 4) throw GeometryError("simplex: row elimination stalled");

    std::vector<char> drop(k, 0);
    for (int i : dead_rows) drop[i] = 1;
    Matrix A2(k - static_cast<int>(dead_rows.size()), A.cols());
    Vector b2(A2.rows());
    for (int i = 0, r = 0; i < k; ++i) {
      if (drop[i]) continue;
      A2.row(r) = t.A.row(i).head(A.cols());
      b2[r] = t.b[i];
      ++r;
    }
    A = A2;
    b = b2;
  }

  const int k = static_cast<int>(t.b.size());
  const int m = t.m;
  Vector c2 = Vector::Zero(m + k);
  c2.head(m) = c;
  std::vector<char> allowed(m + k, 1);
  for (int j = m; j < m + k; ++j) allowed[j] = 0;
  double value = 0.0;
  if (!run_phase(t, c2, allowed, &value)) {
    LpResult r;
    r.status = LpStatus::Unbounded;
    return r;
  }

  LpResult r;
  r.status = LpStatus::Optimal;
  r.value = value;
  r.lambda = Vector::Zero(m);
  t.refactor();
  Vector xb = t.lu.solve(t.b);
  for (int i = 0; i < k; ++i)
    if (t.basis[i] < m) r.lambda[t.basis[i]] = std::max(xb[i], 0.0);
  return r;
}

bool simplex_feasible(const Matrix& A, const Vector& b, double tol) {
  LpResult r = simplex_min(A, b, Vector::Zero(A.cols()));
  if (r.status == LpStatus::Optimal) return true;
  return r.status == LpStatus::Infeasible && r.value <= tol;
}

std::optional<double> polytope_support(const Matrix& A, const Vector& b,
                                       const Vector& dir) {
  // dual of max dir.x s.t. Ax <= b:  min b.lambda s.t. A^T lambda = dir
  LpResult r = simplex_min(A.transpose(), dir, b);
  switch (r.status) {
    case LpStatus::Optimal:
      return r.value;
    case LpStatus::Unbounded:
      return std::nullopt;  // Farkas certificate: primal empty
    case LpStatus::Infeasible:
      break;
  }
  // dual infeasible: the primal is unbounded unless it is empty as well
  Matrix F(A.cols() + 1, A.rows());
  F.topRows(A.cols()) = A.transpose();
  F.bottomRows(1) = b.transpose();
  Vector rhs = Vector::Zero(A.cols() + 1);
  rhs[A.cols()] = -1.0;
  if (simplex_feasible(F, rhs, 1e-9)) return std::nullopt;
  throw GeometryError("polytope_support: unbounded direction");
}

double hull_combination_value(const Matrix& points, const Vector& x) {
  LpResult r = simplex_min(points.transpose(), x, Vector::Ones(points.rows()));
  if (r.status == LpStatus::Optimal) return r.value;
  if (r.status == LpStatus::Infeasible)
    return std::numeric_limits<double>::infinity();
  throw GeometryError("hull_combination_value: unbounded");
}

bool in_convex_hull(const Matrix& points, const Vector& p, double tol) {
  const int n = static_cast<int>(points.cols());
  const int m = static_cast<int>(points.rows());
  Matrix A(n + 1, m);
  A.topRows(n) = points.transpose();
  A.bottomRows(1).setOnes();
  Vector b(n + 1);
  b.head(n) = p;
  b[n] = 1.0;
  return simplex_feasible(A, b, tol);
}

double chebyshev_radius(const Matrix& A_in, const Vector& b_in) {
  const int n = static_cast<int>(A_in.cols());
  std::vector<int> keep;
  for (int i = 0; i < A_in.rows(); ++i) {
    if (A_in.row(i).norm() <= 1e-12) {
      if (b_in[i] < -1e-12) return -std::numeric_limits<double>::infinity();
    } else {
      keep.push_back(i);
    }
  }
  if (keep.empty()) return std::numeric_limits<double>::infinity();

  const int m = static_cast<int>(keep.size());
  // primal: max r s.t. A y + r s <= b over free (y, r), s_i = ||a_i||.
  // dual:   min b.lambda s.t. A^T lambda = 0, s.lambda = 1, lambda >= 0
  Matrix D(n + 1, m);
  Vector cost(m);
  for (int j = 0; j < m; ++j) {
    D.col(j).head(n) = A_in.row(keep[j]).transpose();
    D(n, j) = A_in.row(keep[j]).norm();
    cost[j] = b_in[keep[j]];
  }
  Vector rhs = Vector::Zero(n + 1);
  rhs[n] = 1.0;
  LpResult r = simplex_min(D, rhs, cost);
  if (r.status == LpStatus::Optimal) return r.value;
  if (r.status == LpStatus::Unbounded)
    return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::infinity();
}

}  // namespace santalo
