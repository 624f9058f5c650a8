#include "santalo/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "santalo/linprog.hpp"

namespace santalo {

namespace {
constexpr double kAxisZeroTol = 1e-12;
}

std::optional<Interval> fiber_interval(const HPolytope& H, int axis,
                                       const Vector& y_chart) {
  const int n = H.dim();
  if (axis < 0 || axis >= n) throw GeometryError("fiber_interval: bad axis");
  require_dim_match(n - 1, static_cast<int>(y_chart.size()), "fiber_interval");

  const Matrix& A = H.normals();
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < A.rows(); ++i) {
    double b = A(i, axis);
    double dot = 0.0;
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (j != axis) dot += A(i, j) * y_chart[w++];
    if (std::abs(b) <= kAxisZeroTol) {
      if (dot > 1.0 + 1e-12) return std::nullopt;
      continue;
    }
    double t = (1.0 - dot) / b;
    if (b > 0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
  }
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

HPolytope steiner(const HPolytope& H, int axis) {
  const int n = H.dim();
  if (axis < 0 || axis >= n) throw GeometryError("steiner: axis out of range");

  const Matrix& A = H.normals();
  std::vector<int> pos, neg, flat;
  for (int i = 0; i < A.rows(); ++i) {
    double b = A(i, axis);
    if (b > kAxisZeroTol)
      pos.push_back(i);
    else if (b < -kAxisZeroTol)
      neg.push_back(i);
    else
      flat.push_back(i);
  }
  if (pos.empty() || neg.empty())
    throw GeometryError("steiner: body unbounded along axis?");

  std::vector<Vector> rows;
  rows.reserve(flat.size() + 2 * pos.size() * neg.size());
  for (int i : flat) rows.push_back(A.row(i).transpose());

  for (int i : pos) {
    const double bi = A(i, axis);
    for (int j : neg) {
      const double bj = A(j, axis);
      const double beta = 0.5 * (1.0 / bi - 1.0 / bj);
      if (beta < kAxisZeroTol) continue;  // boundary-touching slab, no width
      Vector up(n), down(n);
      for (int q = 0; q < n; ++q) {
        if (q == axis) continue;
        double w = 0.5 * (A(i, q) / bi - A(j, q) / bj);
        up[q] = w / beta;
        down[q] = w / beta;
      }
      up[axis] = 1.0 / beta;
      down[axis] = -(1.0 / beta);
      rows.push_back(up);
      rows.push_back(down);
    }
  }

  Matrix R(static_cast<Eigen::Index>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) R.row(i) = rows[i].transpose();
  return remove_implied_rows(HPolytope(R, H.symmetric()));
}

std::vector<HPolytope> steiner_chain(const HPolytope& H) {
  if (!H.symmetric())
    throw GeometryError("steiner_chain: input must be symmetric");
  std::vector<HPolytope> chain;
  chain.push_back(H);
  for (int axis = H.dim() - 1; axis >= 1; --axis)
    chain.push_back(steiner(chain.back(), axis));
  chain.back() = enforce_unconditional_representation(chain.back());
  return chain;
}

HPolytope unconditionalize(const HPolytope& H) {
  return steiner_chain(H).back();
}

HPolytope enforce_unconditional_representation(const HPolytope& H) {
  const int n = H.dim();
  Matrix A = H.normals();

  // Snap tiny coordinates so orbit members stay exactly distinct. The snap
  // threshold sits above the 1e-12 dedupe tolerance so that sign flips of a
  // surviving coordinate can never be merged as duplicates.
  for (int i = 0; i < A.rows(); ++i) {
    double scale = std::max(1e-300, A.row(i).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j)
      if (std::abs(A(i, j)) <= 1e-11 * scale) A(i, j) = 0.0;
  }

  // orbit representatives: coordinatewise absolute values
  std::vector<Vector> reps;
  for (int i = 0; i < A.rows(); ++i) {
    Vector r = A.row(i).cwiseAbs().transpose();
    bool dup = false;
    for (const Vector& q : reps) {
      double s = std::max({1.0, r.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff()});
      if ((r - q).cwiseAbs().maxCoeff() <= 1e-12 * s) {
        dup = true;
        break;
      }
    }
    if (!dup) reps.push_back(r);
  }

  // redundancy per orbit: one LP decides the whole orbit (the closed body is
  // exactly unconditional, so orbit members share their support value)
  std::vector<Vector> all_rows;
  for (const Vector& r : reps) {
    std::vector<int> nz;
    for (int j = 0; j < n; ++j)
      if (r[j] != 0.0) nz.push_back(j);
    for (int s = 0; s < (1 << nz.size()); ++s) {
      Vector row = r;
      for (size_t q = 0; q < nz.size(); ++q)
        if ((s >> q) & 1) row[nz[q]] = -row[nz[q]];
      all_rows.push_back(row);
    }
  }
  Matrix Full(static_cast<Eigen::Index>(all_rows.size()), n);
  for (size_t i = 0; i < all_rows.size(); ++i)
    Full.row(i) = all_rows[i].transpose();

  std::vector<char> rep_kept(reps.size(), 1);
  for (size_t ri = 0; ri < reps.size(); ++ri) {
    std::vector<Vector> others;
    for (size_t i = 0; i < all_rows.size(); ++i) {
      // skip rows belonging to dropped orbits or to the candidate's own orbit
      const Vector abs_row = all_rows[i].cwiseAbs();
      size_t owner = reps.size();
      for (size_t q = 0; q < reps.size(); ++q)
        if ((abs_row - reps[q]).cwiseAbs().maxCoeff() == 0.0) {
          owner = q;
          break;
        }
      if (owner == ri || (owner < reps.size() && !rep_kept[owner])) continue;
      others.push_back(all_rows[i]);
    }
    if (others.empty()) continue;
    Matrix O(static_cast<Eigen::Index>(others.size()), n);
    for (size_t i = 0; i < others.size(); ++i) O.row(i) = others[i].transpose();
    if (hull_combination_value(O, reps[ri]) < 1.0 - 1e-9) rep_kept[ri] = 0;
  }

  std::vector<Vector> final_rows;
  for (size_t i = 0; i < all_rows.size(); ++i) {
    const Vector abs_row = all_rows[i].cwiseAbs();
    for (size_t q = 0; q < reps.size(); ++q)
      if (rep_kept[q] && (abs_row - reps[q]).cwiseAbs().maxCoeff() == 0.0) {
        final_rows.push_back(all_rows[i]);
        break;
      }
  }
  Matrix R(static_cast<Eigen::Index>(final_rows.size()), n);
  for (size_t i = 0; i < final_rows.size(); ++i)
    R.row(i) = final_rows[i].transpose();
  return HPolytope(R, true);
}

}  // namespace santalo
