#include "santalo/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "santalo/linprog.hpp"
#include "santalo/rng.hpp"

namespace santalo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double unit_ball_volume(int n) {
  if (n < 0) throw GeometryError("unit_ball_volume: negative dimension");
  if (n == 0) return 1.0;
  if (n == 1) return 2.0;
  return unit_ball_volume(n - 2) * 2.0 * M_PI / n;
}

// ---- exact volume -----------------------------------------------------------

namespace {

// recursive facet-slicing volume of {y : A y <= c}
double slicing_volume(const Matrix& A, const Vector& c) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());

  if (n == 1) {
    double lo = -kInf, hi = kInf;
    for (int i = 0; i < m; ++i) {
      double a = A(i, 0);
      if (a > 1e-12)
        hi = std::min(hi, c[i] / a);
      else if (a < -1e-12)
        lo = std::max(lo, c[i] / a);
      else if (c[i] < -1e-12)
        return 0.0;
    }
    if (!(hi > lo)) return 0.0;
    if (std::isinf(hi) || std::isinf(lo))
      throw GeometryError("volume: unbounded 1-d section");
    return hi - lo;
  }

  double vol = 0.0;
  for (int i = 0; i < m; ++i) {
    int p = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(A(i, j)) > std::abs(A(i, p))) p = j;
    double apiv = A(i, p);
    if (std::abs(apiv) <= 1e-12) {
      if (c[i] < -1e-12) return 0.0;  // empty region, vacuous otherwise
      continue;
    }
    // substitute x_p = (c_i - sum_{q != p} a_iq x_q) / a_ip into the others
    Matrix As(m - 1, n - 1);
    Vector cs(m - 1);
    int r = 0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      double f = A(j, p) / apiv;
      int w = 0;
      for (int q = 0; q < n; ++q) {
        if (q == p) continue;
        As(r, w++) = A(j, q) - f * A(i, q);
      }
      cs[r] = c[j] - f * c[i];
      ++r;
    }
    vol += c[i] / std::abs(apiv) * slicing_volume(As, cs);
  }
  return vol / n;
}

}  // namespace

double volume_exact_general(const GeneralHPoly& P) {
  return slicing_volume(P.A, P.c);
}

VolumeEstimate volume_exact(const HPolytope& H) {
  HPolytope R = remove_redundant(H);
  VolumeEstimate e;
  e.method = VolumeMethod::Exact;
  e.value = slicing_volume(R.normals(), Vector::Ones(R.facet_count()));
  e.err = 0.0;
  return e;
}

VolumeEstimate volume_exact(const VPolytope& V) {
  return volume_exact(to_hrep(V));
}

// ---- integration target ------------------------------------------------------

IntegrandBody IntegrandBody::from(const HPolytope& H, std::string id) {
  IntegrandBody b;
  b.dim = H.dim();
  b.id = std::move(id);
  GeneralHPoly g;
  g.A = H.normals();
  g.c = Vector::Ones(H.facet_count());
  b.polys.push_back(std::move(g));
  b.box = H.box();
  return b;
}

IntegrandBody IntegrandBody::from(const BodyOracle& O) {
  IntegrandBody b;
  b.dim = O.dim;
  b.id = O.name;
  b.oracle = &O;
  b.box = O.box;
  return b;
}

bool IntegrandBody::contains(const Vector& x, double tol) const {
  for (const auto& p : polys)
    if (!p.contains(x, tol)) return false;
  if (oracle && oracle->gauge(x) > 1.0 + tol) return false;
  return true;
}

// ---- adaptive Gauss-Legendre -------------------------------------------------

namespace {

struct Gl15Rule {
  double node[15];
  double weight[15];
  Gl15Rule() {
    // Newton iteration on Legendre P_15, symmetric nodes
    const int n = 15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weight[i] = w;
      weight[n - 1 - i] = w;
    }
  }
};

const Gl15Rule& gl15_rule() {
  static const Gl15Rule rule;
  return rule;
}

QuadResult gl15_panel(const std::function<QuadResult(double)>& f, double a,
                      double b, long* budget) {
  const auto& rule = gl15_rule();
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  QuadResult out;
  for (int i = 0; i < 15; ++i) {
    QuadResult v = f(mid + h * rule.node[i]);
    out.value += rule.weight[i] * v.value;
    out.err += rule.weight[i] * v.err;
  }
  out.value *= h;
  out.err *= h;
  if (budget) *budget -= 15;
  return out;
}

struct AdaptState {
  const std::function<QuadResult(double)>* f;
  long* budget;
  bool exhausted = false;
};

QuadResult refine(AdaptState& st, double a, double b, const QuadResult& whole,
                  double alloc, int depth) {
  if (st.budget && *st.budget <= 0) {
    st.exhausted = true;
    return whole;
  }
  const double mid = 0.5 * (a + b);
  QuadResult left = gl15_panel(*st.f, a, mid, st.budget);
  QuadResult right = gl15_panel(*st.f, mid, b, st.budget);
  double d = std::abs(whole.value - left.value - right.value);
  if (d <= alloc || depth >= 40) {
    QuadResult out;
    out.value = left.value + right.value;
    out.err = left.err + right.err + d;
    return out;
  }
  QuadResult rl = refine(st, a, mid, left, 0.5 * alloc, depth + 1);
  QuadResult rr = refine(st, mid, b, right, 0.5 * alloc, depth + 1);
  return {rl.value + rr.value, rl.err + rr.err};
}

}  // namespace

QuadResult adaptive_gl15(const std::function<QuadResult(double)>& f, double a,
                         double b, double rel_tol, long* eval_budget) {
  if (!(b > a)) return {0.0, 0.0};
  AdaptState st{&f, eval_budget, false};

  // a first uniform split guards against a deceptive single-panel estimate
  const int kInitial = 4;
  double h = (b - a) / kInitial;
  QuadResult panels[kInitial];
  double total = 0.0;
  for (int i = 0; i < kInitial; ++i) {
    panels[i] = gl15_panel(f, a + i * h, a + (i + 1) * h, eval_budget);
    total += panels[i].value;
  }
  double scale = std::max(std::abs(total), 1e-280);
  QuadResult out;
  for (int i = 0; i < kInitial; ++i) {
    QuadResult r = refine(st, a + i * h, a + (i + 1) * h, panels[i],
                          rel_tol * scale / kInitial, 0);
    out.value += r.value;
    out.err += r.err;
  }
  return out;
}

// ---- measure quadrature ------------------------------------------------------

namespace {

// Generic fiber of a gauge oracle along an axis: the gauge is convex on the
// line, so locate its minimum by ternary search and bisect both crossings.
std::optional<Interval> oracle_fiber_by_bisection(const BodyOracle& O, int axis,
                                                  const Vector& point,
                                                  double lo, double hi) {
  auto g = [&](double t) {
    Vector x = point;
    x[axis] = t;
    return O.gauge(x);
  };
  double a = lo, b = hi;
  for (int it = 0; it < 60; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (g(m1) < g(m2))
      b = m2;
    else
      a = m1;
  }
  double tmin = 0.5 * (a + b);
  if (g(tmin) > 1.0) return std::nullopt;

  auto cross = [&](double inside, double outside) {
    double x_in = inside, x_out = outside;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (x_in + x_out);
      if (g(mid) <= 1.0)
        x_in = mid;
      else
        x_out = mid;
    }
    return x_in;
  };
  double right = g(hi) <= 1.0 ? hi : cross(tmin, hi);
  double left = g(lo) <= 1.0 ? lo : cross(tmin, lo);
  return Interval{left, right};
}

struct QuadFrame {
  const LogConcaveMeasure* mu;
  const BodyOracle* oracle;
  double rel_tol;
  long budget;
  bool exhausted = false;
  Vector point;            // full-dimensional point, fixed coords filled in
  std::vector<int> order;  // axis visit order, outermost first
};

// constraints live over the remaining axes order[level..]; recursion
// substitutes the current axis and descends
QuadResult integrate_level(QuadFrame& fr, std::vector<GeneralHPoly> polys,
                           size_t level, const Box& clamp) {
  const int axis = fr.order[level];
  const bool innermost = (level + 1 == fr.order.size());

  if (innermost) {
    double lo = clamp.lo[axis], hi = clamp.hi[axis];
    for (const auto& p : polys) {
      for (int i = 0; i < p.A.rows(); ++i) {
        double a = p.A(i, 0);
        if (a > 1e-12)
          hi = std::min(hi, p.c[i] / a);
        else if (a < -1e-12)
          lo = std::max(lo, p.c[i] / a);
        else if (p.c[i] < -1e-12)
          return {0.0, 0.0};
      }
    }
    if (fr.oracle) {
      std::optional<Interval> f =
          fr.oracle->fiber
              ? fr.oracle->fiber(axis, fr.point)
              : oracle_fiber_by_bisection(*fr.oracle, axis, fr.point,
                                          fr.oracle->box.lo[axis],
                                          fr.oracle->box.hi[axis]);
      if (!f) return {0.0, 0.0};
      lo = std::max(lo, f->lo);
      hi = std::min(hi, f->hi);
    }
    if (!(hi > lo)) return {0.0, 0.0};

    if (fr.mu->separable) return {fr.mu->axis_mass(axis, lo, hi), 0.0};

    // generic innermost integral of the full density along the fiber
    auto f1 = [&](double t) -> QuadResult {
      fr.point[axis] = t;
      double ld = fr.mu->log_density(fr.point);
      return {std::isfinite(ld) ? std::exp(ld) : 0.0, 0.0};
    };
    QuadResult r = adaptive_gl15(f1, lo, hi, 0.5 * fr.rel_tol, &fr.budget);
    if (fr.budget <= 0) fr.exhausted = true;
    return r;
  }

  // range of this axis over the remaining polytopal constraints
  double lo = clamp.lo[axis], hi = clamp.hi[axis];
  if (!polys.empty()) {
    int rows = 0;
    for (const auto& p : polys) rows += static_cast<int>(p.A.rows());
    Matrix A(rows, polys.front().A.cols());
    Vector c(rows);
    int r = 0;
    for (const auto& p : polys) {
      A.middleRows(r, p.A.rows()) = p.A;
      c.segment(r, p.A.rows()) = p.c;
      r += static_cast<int>(p.A.rows());
    }
    // the current axis is column 0 of the remaining-axes chart
    Vector dir = Vector::Zero(A.cols());
    dir[0] = 1.0;
    auto shi = polytope_support(A, c, dir);
    if (!shi) return {0.0, 0.0};
    dir[0] = -1.0;
    auto slo = polytope_support(A, c, dir);
    if (!slo) return {0.0, 0.0};
    hi = std::min(hi, *shi);
    lo = std::max(lo, -*slo);
  }
  if (!(hi > lo)) return {0.0, 0.0};

  auto f = [&](double t) -> QuadResult {
    fr.point[axis] = t;
    std::vector<GeneralHPoly> sub;
    sub.reserve(polys.size());
    for (const auto& p : polys) sub.push_back(p.substitute(0, t));
    QuadResult inner = integrate_level(fr, std::move(sub), level + 1, clamp);
    if (fr.mu->separable) {
      double fac = std::exp(fr.mu->axis_log_density(axis, t));
      return {fac * inner.value, fac * inner.err};
    }
    return inner;
  };
  QuadResult r = adaptive_gl15(f, lo, hi, 0.5 * fr.rel_tol, &fr.budget);
  if (fr.budget <= 0) fr.exhausted = true;
  return r;
}

}  // namespace

VolumeEstimate measure_quadrature(const LogConcaveMeasure& mu,
                                  const IntegrandBody& body, double rel_tol) {
  require_dim_match(mu.dim, body.dim, "measure_quadrature");
  const int n = body.dim;

  QuadFrame fr;
  fr.mu = &mu;
  fr.oracle = body.oracle;
  fr.rel_tol = rel_tol;
  fr.budget = 4'000'000;
  fr.point = Vector::Zero(n);

  Box clamp = body.box;
  if (mu.support_box) clamp = clamp.intersect(*mu.support_box);
  for (int i = 0; i < n; ++i)
    if (!(clamp.hi[i] > clamp.lo[i])) {
      VolumeEstimate z;
      z.method = VolumeMethod::Quadrature;
      return z;
    }

  // innermost axis = largest clamped extent; outer axes by increasing extent
  fr.order.resize(n);
  std::iota(fr.order.begin(), fr.order.end(), 0);
  std::sort(fr.order.begin(), fr.order.end(), [&](int a, int b) {
    return clamp.extent(a) < clamp.extent(b);
  });

  // constraint sets reordered to the visit order so that the column of the
  // current axis is always column 0
  std::vector<GeneralHPoly> polys;
  auto add_poly = [&](const Matrix& A, const Vector& c) {
    GeneralHPoly g;
    g.A.resize(A.rows(), n);
    for (int j = 0; j < n; ++j) g.A.col(j) = A.col(fr.order[j]);
    g.c = c;
    polys.push_back(std::move(g));
  };
  for (const auto& p : body.polys) add_poly(p.A, p.c);
  if (mu.kind == LogConcaveMeasure::Kind::UniformBody && mu.support_body)
    add_poly(mu.support_body->normals(),
             Vector::Ones(mu.support_body->facet_count()));

  QuadResult r = integrate_level(fr, std::move(polys), 0, clamp);

  VolumeEstimate e;
  e.method = VolumeMethod::Quadrature;
  e.value = r.value;
  e.err = r.err;
  e.tolerance_reached = !fr.exhausted;
  return e;
}

// ---- Monte Carlo -------------------------------------------------------------

VolumeEstimate measure_mc(const LogConcaveMeasure& mu,
                          const IntegrandBody& body, long samples,
                          std::uint64_t seed, McOptions opt) {
  require_dim_match(mu.dim, body.dim, "measure_mc");
  if (!mu.has_sampler())
    throw GeometryError("measure_mc: measure has no sampler");
  if (!mu.total_mass)
    throw GeometryError("measure_mc: measure has no declared total mass");
  if (samples < 1000) throw GeometryError("measure_mc: need at least 1000 samples");

  RngStream rng = RngStream::derive(seed, 0);
  const double mass = *mu.total_mass;

  VolumeEstimate e;
  e.method = VolumeMethod::MonteCarlo;
  e.samples = samples;
  e.seed = seed;

  if (opt.antithetic) {
    const long pairs = samples / 2;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < pairs; ++i) {
      Vector x = mu.sampler(rng);
      double h = 0.5 * (body.contains(x) ? 1.0 : 0.0) +
                 0.5 * (body.contains(-x) ? 1.0 : 0.0);
      sum += h;
      sumsq += h * h;
    }
    double mean = sum / pairs;
    double var = std::max(0.0, (sumsq - sum * mean) / std::max(1L, pairs - 1));
    e.value = mass * mean;
    e.err = mass * std::sqrt(var / pairs);
  } else {
    long hits = 0;
    for (long i = 0; i < samples; ++i)
      if (body.contains(mu.sampler(rng))) ++hits;
    double p = static_cast<double>(hits) / samples;
    e.value = mass * p;
    e.err = mass * std::sqrt(p * (1.0 - p) / samples);
  }
  return e;
}

// ---- radial closed forms ------------------------------------------------------

VolumeEstimate ball_measure_radial(const LogConcaveMeasure& mu, double radius) {
  if (radius <= 0) throw GeometryError("ball_measure_radial: radius <= 0");
  const int n = mu.dim;

  if (mu.kind == LogConcaveMeasure::Kind::Gaussian) {
    double s = mu.params[0];
    for (int i = 1; i < n; ++i)
      if (std::abs(mu.params[i] - s) > 1e-12 * s)
        throw GeometryError("ball_measure_radial: Gaussian must be isotropic");
    VolumeEstimate e;
    if (n == 2) {
      e.method = VolumeMethod::Exact;
      e.value = 1.0 - std::exp(-radius * radius / (2 * s * s));
      e.err = 0.0;
      return e;
    }
    const double norm = std::pow(2 * M_PI * s * s, -0.5 * n);
    const double surface = n * unit_ball_volume(n);
    auto f = [&](double t) -> QuadResult {
      return {surface * std::pow(t, n - 1) * norm *
                  std::exp(-t * t / (2 * s * s)),
              0.0};
    };
    long budget = 500000;
    QuadResult r = adaptive_gl15(f, 0.0, radius, 1e-12, &budget);
    e.method = VolumeMethod::Quadrature;
    e.value = r.value;
    e.err = std::max(r.err, 1e-14 * r.value);
    return e;
  }

  if (mu.kind == LogConcaveMeasure::Kind::LebesgueBox) {
    const Box& b = *mu.support_box;
    for (int i = 0; i < n; ++i)
      if (b.hi[i] < radius - 1e-12 || b.lo[i] > -radius + 1e-12)
        throw GeometryError(
            "ball_measure_radial: Lebesgue box does not contain the ball");
    VolumeEstimate e;
    e.method = VolumeMethod::Exact;
    e.value = unit_ball_volume(n) * std::pow(radius, n);
    e.err = 0.0;
    return e;
  }

  throw GeometryError("ball_measure_radial: unsupported measure kind");
}

}  // namespace santalo
