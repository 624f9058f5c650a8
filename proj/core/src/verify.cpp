#include "santalo/verify.hpp"
#include <memory>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "santalo/linprog.hpp"
#include "santalo/rng.hpp"

namespace santalo {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Vector embed_chart(const Vector& chart, int axis, double height) {
  Vector x(chart.size() + 1);
  int w = 0;
  for (int j = 0; j < x.size(); ++j)
    x[j] = (j == axis) ? height : chart[w++];
  return x;
}

}  // namespace

VerificationReport make_report(std::string inequality_id, int dim,
                               std::string body_id, std::string measure_id,
                               const VolumeEstimate& lhs,
                               const VolumeEstimate& rhs, std::uint64_t seed,
                               std::string context, double slack_floor) {
  VerificationReport r;
  r.inequality_id = std::move(inequality_id);
  r.dim = dim;
  r.body_id = std::move(body_id);
  r.measure_id = std::move(measure_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs.value - lhs.value;
  r.slack = 3.0 * (lhs.err + rhs.err) + slack_floor;
  r.passed = r.margin >= -r.slack;
  r.seed = seed;
  r.context = std::move(context);
  return r;
}

std::string reports_csv_header() {
  return "inequality_id,n,body_id,measure_id,lhs,lhs_err,rhs,rhs_err,margin,"
         "slack,passed,seed";
}

std::string report_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.inequality_id << ',' << r.dim << ',' << r.body_id << ','
     << r.measure_id << ',' << fmt17(r.lhs.value) << ',' << fmt17(r.lhs.err)
     << ',' << fmt17(r.rhs.value) << ',' << fmt17(r.rhs.err) << ','
     << fmt17(r.margin) << ',' << fmt17(r.slack) << ','
     << (r.passed ? "true" : "false") << ',' << r.seed;
  return os.str();
}

void write_reports_csv(const std::string& path,
                       const std::vector<VerificationReport>& reports) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path + " for writing");
  out << reports_csv_header() << '\n';
  for (const auto& r : reports) out << report_csv_row(r) << '\n';
}

VolumeEstimate multiply_estimates(const VolumeEstimate& a,
                                  const VolumeEstimate& b) {
  VolumeEstimate p;
  p.method = (a.method == VolumeMethod::Exact && b.method == VolumeMethod::Exact)
                 ? VolumeMethod::Exact
                 : VolumeMethod::Quadrature;
  p.value = a.value * b.value;
  p.err = std::abs(a.value) * b.err + std::abs(b.value) * a.err + a.err * b.err;
  p.tolerance_reached = a.tolerance_reached && b.tolerance_reached;
  return p;
}

// ---- volume products ---------------------------------------------------------

VolumeEstimate volume_product_lebesgue(const HPolytope& K) {
  return multiply_estimates(volume_exact(K), volume_exact(polar(K)));
}

VolumeEstimate volume_product_over_body(const HPolytope& K,
                                        const HPolytope& L) {
  VolumeEstimate a = volume_exact(intersect(K, L));
  VolumeEstimate b = volume_exact(intersect(polar_hrep(K), L));
  return multiply_estimates(a, b);
}

VolumeEstimate volume_product_measure(const HPolytope& K,
                                      const LogConcaveMeasure& mu,
                                      double quad_tol) {
  VolumeEstimate a = measure_quadrature(mu, IntegrandBody::from(K), quad_tol);
  VolumeEstimate b =
      measure_quadrature(mu, IntegrandBody::from(polar_hrep(K)), quad_tol);
  return multiply_estimates(a, b);
}

// ---- checks ------------------------------------------------------------------

VerificationReport verify_santalo_lebesgue(const HPolytope& K,
                                           const std::string& body_id) {
  const int n = K.dim();
  VolumeEstimate lhs = volume_product_lebesgue(K);
  VolumeEstimate rhs;
  rhs.method = VolumeMethod::Exact;
  double kn = unit_ball_volume(n);
  rhs.value = kn * kn;
  return make_report("santalo", n, body_id, "lebesgue", lhs, rhs, 0);
}

SteinerStepReports verify_claim1(const LogConcaveMeasure& mu,
                                 const HPolytope& K, int axis, double quad_tol,
                                 const std::string& body_id) {
  if (!mu.flags.unconditional)
    throw GeometryError("verify_claim1: measure must be unconditional");
  HPolytope SK = steiner(K, axis);

  VolumeEstimate muK = measure_quadrature(mu, IntegrandBody::from(K), quad_tol);
  VolumeEstimate muSK =
      measure_quadrature(mu, IntegrandBody::from(SK), quad_tol);
  VolumeEstimate muKo =
      measure_quadrature(mu, IntegrandBody::from(polar_hrep(K)), quad_tol);
  VolumeEstimate muSKo =
      measure_quadrature(mu, IntegrandBody::from(polar_hrep(SK)), quad_tol);

  std::string ctx = "axis=" + std::to_string(axis + 1);
  SteinerStepReports out{
      make_report("claim1.body", K.dim(), body_id, mu.id, muK, muSK, 0, ctx),
      make_report("claim1.polar", K.dim(), body_id, mu.id, muKo, muSKo, 0, ctx),
      make_report("claim1.product", K.dim(), body_id, mu.id,
                  multiply_estimates(muK, muKo),
                  multiply_estimates(muSK, muSKo), 0, ctx)};
  return out;
}

std::vector<VerificationReport> verify_chain(const LogConcaveMeasure& mu,
                                             const HPolytope& K,
                                             double quad_tol,
                                             const std::string& body_id) {
  if (!mu.flags.unconditional)
    throw GeometryError("verify_chain: measure must be unconditional");
  std::vector<HPolytope> chain = steiner_chain(K);
  std::vector<VolumeEstimate> products;
  products.reserve(chain.size());
  for (const HPolytope& body : chain)
    products.push_back(volume_product_measure(body, mu, quad_tol));

  std::vector<VerificationReport> reports;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    std::string id = "chain.step" + std::to_string(i + 1);
    std::string ctx = "axis=" + std::to_string(K.dim() - static_cast<int>(i));
    reports.push_back(make_report(id, K.dim(), body_id, mu.id, products[i],
                                  products[i + 1], 0, ctx));
  }
  return reports;
}

VolumeEstimate ball_measure(const LogConcaveMeasure& mu, double radius,
                            double quad_tol) {
  try {
    return ball_measure_radial(mu, radius);
  } catch (const GeometryError&) {
    BodyOracle ball = ball_oracle(mu.dim, radius);
    return measure_quadrature(mu, IntegrandBody::from(ball), quad_tol);
  }
}

VerificationReport verify_main(const LogConcaveMeasure& mu, const HPolytope& K,
                               double quad_tol, const std::string& body_id) {
  if (!mu.flags.unconditional)
    throw GeometryError("verify_main: measure must be unconditional");
  VolumeEstimate lhs = volume_product_measure(K, mu, quad_tol);
  VolumeEstimate muB = ball_measure(mu, 1.0, quad_tol);
  VolumeEstimate rhs = multiply_estimates(muB, muB);  // B^o = B at radius 1
  return make_report("main", K.dim(), body_id, mu.id, lhs, rhs, 0);
}

VerificationReport verify_corollary_inclusion(const HPolytope& K, long samples,
                                              std::uint64_t seed,
                                              const std::string& body_id) {
  if (!is_unconditional(K))
    throw GeometryError("verify_corollary_inclusion: K must be unconditional");
  const int n = K.dim();
  const Matrix& normals = K.normals();  // K^o = conv(normals)
  RngStream rng = RngStream::derive(seed, 0);

  double worst = 0.0;
  for (long s = 0; s < samples; ++s) {
    Vector dx = rng.sphere_direction(n);
    Vector dy = rng.sphere_direction(n);
    double gx = gauge(K, dx);
    double gy = hull_combination_value(normals, dy);
    Vector x = dx / gx;
    Vector y = dy / gy;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::abs(x[i] * y[i]);
    worst = std::max(worst, acc);
  }

  VolumeEstimate lhs, rhs;
  lhs.value = worst;
  rhs.value = 1.0;
  return make_report("corollary", n, body_id, "-", lhs, rhs, seed,
                     "pairs=" + std::to_string(samples));
}

VerificationReport verify_meyer_pajor(const HPolytope& K, int axis, double z,
                                      long samples, std::uint64_t seed,
                                      const std::string& body_id,
                                      const HPolytope* Ko_hrep) {
  const int n = K.dim();
  HPolytope Ko = Ko_hrep ? *Ko_hrep : polar_hrep(K);
  VPolytope SKo = polar(steiner(K, axis));
  std::string ctx =
      "axis=" + std::to_string(axis + 1) + " z=" + fmt17(z);

  SliceResult plus = slice(Ko, axis, z);
  SliceResult minus = slice(Ko, axis, -z);
  if (plus.status != SliceStatus::NonEmpty ||
      minus.status != SliceStatus::NonEmpty) {
    VolumeEstimate lhs, rhs;
    rhs.value = 1.0;
    return make_report("meyer_pajor", n, body_id, "-", lhs, rhs, seed,
                       ctx + " vacuous:empty-slice", 1e-7);
  }

  Box bp = enclosing_box(plus.poly);
  Box bm = enclosing_box(minus.poly);
  RngStream rng = RngStream::derive(seed, 1);
  auto draw = [&](const GeneralHPoly& P, const Box& box) {
    for (long attempt = 0; attempt < 2000000L; ++attempt) {
      Vector y = rng.uniform_in_box(box);
      if (P.contains(y, 1e-12)) return y;
    }
    throw GeometryError("verify_meyer_pajor: slice rejection sampling stalled");
  };

  double worst = 0.0;
  for (long s = 0; s < samples; ++s) {
    Vector p = draw(plus.poly, bp);
    Vector q = draw(minus.poly, bm);
    Vector w = embed_chart(0.5 * (p + q), axis, z);
    worst = std::max(worst, gauge(SKo, w));
  }

  VolumeEstimate lhs, rhs;
  lhs.value = worst;
  rhs.value = 1.0;
  return make_report("meyer_pajor", n, body_id, "-", lhs, rhs, seed,
                     ctx + " samples=" + std::to_string(samples), 1e-7);
}

// ---- geometric-mean body -----------------------------------------------------

namespace {

// compact Nelder-Mead; returns the best value, best point written back
double nelder_mead(const std::function<double(const Vector&)>& F, Vector& w,
                   int iters, double init_step = 0.3) {
  const int d = static_cast<int>(w.size());
  if (d == 0) return F(w);

  std::vector<Vector> pts(d + 1, w);
  std::vector<double> val(d + 1);
  for (int i = 1; i <= d; ++i) pts[i][i - 1] += init_step;
  for (int i = 0; i <= d; ++i) val[i] = F(pts[i]);

  for (int it = 0; it < iters; ++it) {
    // order: lo best, hi worst, sh second-worst
    int lo = 0, hi = 0;
    for (int i = 1; i <= d; ++i) {
      if (val[i] < val[lo]) lo = i;
      if (val[i] > val[hi]) hi = i;
    }
    int sh = lo;
    for (int i = 0; i <= d; ++i)
      if (i != hi && val[i] > val[sh]) sh = i;
    if (val[hi] - val[lo] < 1e-13 * (1.0 + std::abs(val[lo]))) break;

    Vector centroid = Vector::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != hi) centroid += pts[i];
    centroid /= d;

    Vector xr = centroid + (centroid - pts[hi]);
    double fr = F(xr);
    if (fr < val[lo]) {
      Vector xe = centroid + 2.0 * (centroid - pts[hi]);
      double fe = F(xe);
      if (fe < fr) {
        pts[hi] = xe;
        val[hi] = fe;
      } else {
        pts[hi] = xr;
        val[hi] = fr;
      }
    } else if (fr < val[sh]) {
      pts[hi] = xr;
      val[hi] = fr;
    } else {
      Vector xc = centroid + 0.5 * (pts[hi] - centroid);
      double fc = F(xc);
      if (fc < val[hi]) {
        pts[hi] = xc;
        val[hi] = fc;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          val[i] = F(pts[i]);
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i <= d; ++i)
    if (val[i] < val[lo]) lo = i;
  w = pts[lo];
  return val[lo];
}

double raw_gauge(const Matrix& A, const Vector& x) {
  if (A.rows() == 0) return 0.0;
  return std::max(0.0, (A * x).maxCoeff());
}

struct GmProblem {
  Matrix AK, AL;   // section normals over the active coordinates
  Vector zabs;     // |z| on active coordinates
  std::vector<int> active;

  GmProblem(const HPolytope& K, const HPolytope& L, const Vector& z) {
    const int n = static_cast<int>(z.size());
    for (int i = 0; i < n; ++i)
      if (z[i] != 0.0) active.push_back(i);
    const int d = static_cast<int>(active.size());
    AK.resize(K.facet_count(), d);
    AL.resize(L.facet_count(), d);
    zabs.resize(d);
    for (int j = 0; j < d; ++j) {
      AK.col(j) = K.normals().col(active[j]);
      AL.col(j) = L.normals().col(active[j]);
      zabs[j] = std::abs(z[active[j]]);
    }
  }

  double max_form(const Vector& w) const {
    const int d = static_cast<int>(w.size());
    Vector x(d), y(d);
    for (int j = 0; j < d; ++j) {
      double e = std::exp(w[j]);
      x[j] = zabs[j] * e;
      y[j] = zabs[j] / e;
    }
    return std::max(raw_gauge(AK, x), raw_gauge(AL, y));
  }

  // multistart from 0 and +-0.5 coordinate perturbations
  double minimize(Vector& w_best, int iters, const Vector* hint) const {
    const int d = static_cast<int>(zabs.size());
    std::vector<Vector> starts;
    if (hint && hint->size() == d) {
      starts.push_back(*hint);
    } else {
      starts.emplace_back(Vector::Zero(d));
      for (int j = 0; j < d; ++j) {
        Vector s = Vector::Zero(d);
        s[j] = 0.5;
        starts.push_back(s);
        starts.push_back(-s);
      }
    }
    auto F = [this](const Vector& w) { return max_form(w); };
    double best = std::numeric_limits<double>::infinity();
    for (Vector s : starts) {
      double v = nelder_mead(F, s, iters);
      if (v < best) {
        best = v;
        w_best = s;
      }
    }
    return best;
  }
};

}  // namespace

GmMembership gm_membership(const HPolytope& K, const HPolytope& L,
                           const Vector& z, int iters) {
  require_dim_match(K.dim(), L.dim(), "gm_membership");
  require_dim_match(K.dim(), static_cast<int>(z.size()), "gm_membership");
  if (!is_unconditional(K) || !is_unconditional(L))
    throw GeometryError("gm_membership: bodies must be unconditional");

  GmMembership res;
  GmProblem prob(K, L, z);
  const int n = K.dim();
  res.witness_x = Vector::Zero(n);
  res.witness_y = Vector::Zero(n);

  if (prob.active.empty()) {  // z = 0 lies in every body here
    res.member = true;
    res.f_min = 0.0;
    return res;
  }

  Vector w;
  res.f_min = prob.minimize(w, iters, nullptr);
  res.member = res.f_min <= 1.0 + 1e-6;
  res.inconclusive = !res.member;
  for (size_t j = 0; j < prob.active.size(); ++j) {
    double e = std::exp(w[j]);
    res.witness_x[prob.active[j]] = prob.zabs[j] * e;
    res.witness_y[prob.active[j]] = prob.zabs[j] / e;
  }
  return res;
}

BodyOracle geometric_mean_oracle(const HPolytope& K, const HPolytope& L,
                                 int iters) {
  require_dim_match(K.dim(), L.dim(), "geometric_mean_oracle");
  if (!is_unconditional(K) || !is_unconditional(L))
    throw GeometryError("geometric_mean_oracle: bodies must be unconditional");
  const int n = K.dim();

  Box bK = enclosing_box(K);
  Box bL = enclosing_box(L);
  Box box;
  box.lo.resize(n);
  box.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    box.hi[i] = std::sqrt(bK.hi[i] * bL.hi[i]);
    box.lo[i] = -box.hi[i];
  }

  // shared immutable state; per-call warm starts stay on the stack
  auto K_copy = std::make_shared<HPolytope>(K);
  auto L_copy = std::make_shared<HPolytope>(L);

  BodyOracle o;
  o.dim = n;
  o.name = "geometric_mean";
  o.box = box;
  o.gauge = [K_copy, L_copy, iters](const Vector& x) {
    GmProblem prob(*K_copy, *L_copy, x);
    if (prob.active.empty()) return 0.0;
    Vector w;
    return prob.minimize(w, iters, nullptr);
  };
  o.fiber = [K_copy, L_copy, iters, box](
                int axis, const Vector& p) -> std::optional<Interval> {
    // the body is unconditional, so the fiber is a symmetric interval; track
    // the minimizer along the bisection as a warm start
    Vector w_warm;
    bool have_warm = false;
    auto gauge_at = [&](double t) {
      Vector x = p;
      x[axis] = t;
      GmProblem prob(*K_copy, *L_copy, x);
      if (prob.active.empty()) return 0.0;
      Vector w;
      double v = prob.minimize(
          w, iters, have_warm && w_warm.size() == static_cast<int>(prob.active.size())
                        ? &w_warm
                        : nullptr);
      w_warm = w;
      have_warm = true;
      return v;
    };
    if (gauge_at(0.0) > 1.0) return std::nullopt;
    double hi = box.hi[axis];
    if (gauge_at(hi) <= 1.0) return Interval{-hi, hi};
    double in = 0.0, out = hi;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (in + out);
      if (gauge_at(mid) <= 1.0)
        in = mid;
      else
        out = mid;
    }
    return Interval{-in, in};
  };
  return o;
}

VerificationReport verify_prop8(const LogConcaveMeasure& mu,
                                const HPolytope& K, const HPolytope& L,
                                double quad_tol, int iters,
                                const std::string& pair_id) {
  if (!mu.flags.unconditional)
    throw GeometryError("verify_prop8: measure must be unconditional");
  if (K.dim() > 3)
    throw GeometryError("verify_prop8: supported for n <= 3");

  VolumeEstimate muK = measure_quadrature(mu, IntegrandBody::from(K), quad_tol);
  VolumeEstimate muL = measure_quadrature(mu, IntegrandBody::from(L), quad_tol);
  BodyOracle M = geometric_mean_oracle(K, L, iters);
  VolumeEstimate muM = measure_quadrature(mu, IntegrandBody::from(M), quad_tol);

  return make_report("prop8", K.dim(), pair_id, mu.id,
                     multiply_estimates(muK, muL), multiply_estimates(muM, muM),
                     0, "rhs-conservative(gm oracle underestimates M)");
}

VerificationReport verify_ball_logconcavity(const LogConcaveMeasure& mu,
                                            const std::vector<double>& t_grid,
                                            double quad_tol) {
  if (!mu.flags.even)
    throw GeometryError("verify_ball_logconcavity: measure must be even");
  if (t_grid.size() < 3)
    throw GeometryError("verify_ball_logconcavity: need at least 3 grid points");
  for (size_t i = 2; i < t_grid.size(); ++i) {
    double d1 = t_grid[i - 1] - t_grid[i - 2];
    double d2 = t_grid[i] - t_grid[i - 1];
    if (std::abs(d1 - d2) > 1e-9 * std::max(std::abs(d1), std::abs(d2)))
      throw GeometryError("verify_ball_logconcavity: grid must be equally spaced");
  }

  std::vector<double> logm(t_grid.size()), relerr(t_grid.size());
  for (size_t i = 0; i < t_grid.size(); ++i) {
    VolumeEstimate m = ball_measure(mu, std::exp(t_grid[i]), quad_tol);
    if (!(m.value > 0))
      throw GeometryError("verify_ball_logconcavity: vanishing mass");
    logm[i] = std::log(m.value);
    relerr[i] = m.err / m.value;
  }

  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i + 1 < t_grid.size(); ++i) {
    double defect = 0.5 * (logm[i - 1] + logm[i + 1]) - logm[i];
    double slack =
        3.0 * (0.5 * relerr[i - 1] + relerr[i] + 0.5 * relerr[i + 1]);
    worst = std::max(worst, defect - slack);
  }

  VolumeEstimate lhs, rhs;
  lhs.value = worst;
  rhs.value = 0.0;
  std::ostringstream ctx;
  ctx << "grid=[" << t_grid.front() << ".." << t_grid.back() << " x"
      << t_grid.size() << "]";
  return make_report("ball_logconcavity", mu.dim, "ball", mu.id, lhs, rhs, 0,
                     ctx.str());
}

}  // namespace santalo
