#include "santalo/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "santalo/integrate.hpp"

namespace santalo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_params(const char* kind, const Vector& p) {
  std::ostringstream os;
  os << kind << "(";
  for (int i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
  os << ")";
  return os.str();
}

double gaussian_axis_mass(double sigma, double a, double b) {
  const double s = sigma * std::sqrt(2.0);
  return 0.5 * (std::erf(b / s) - std::erf(a / s));
}

// two-sided exponential CDF, density l/2 e^{-l|t|}
double laplace_cdf(double lambda, double t) {
  return t < 0 ? 0.5 * std::exp(lambda * t) : 1.0 - 0.5 * std::exp(-lambda * t);
}

}  // namespace

double LogConcaveMeasure::axis_log_density(int axis, double t) const {
  switch (kind) {
    case Kind::Gaussian: {
      double s = params[axis];
      return -t * t / (2 * s * s) - std::log(s * std::sqrt(2.0 * M_PI));
    }
    case Kind::ProductExponential: {
      double l = params[axis];
      return -l * std::abs(t) + std::log(l / 2.0);
    }
    case Kind::LebesgueBox:
    case Kind::UniformBody:
      return 0.0;
    case Kind::Custom:
      break;
  }
  throw GeometryError("axis_log_density: measure is not separable");
}

double LogConcaveMeasure::axis_mass(int axis, double a, double b) const {
  if (b <= a) return 0.0;
  switch (kind) {
    case Kind::Gaussian:
      return gaussian_axis_mass(params[axis], a, b);
    case Kind::ProductExponential:
      return laplace_cdf(params[axis], b) - laplace_cdf(params[axis], a);
    case Kind::LebesgueBox:
    case Kind::UniformBody:
      return b - a;  // support handled by the integration domain
    case Kind::Custom:
      break;
  }
  throw GeometryError("axis_mass: measure is not separable");
}

LogConcaveMeasure make_gaussian(const Vector& sigma) {
  const int n = static_cast<int>(sigma.size());
  for (int i = 0; i < n; ++i)
    if (!(sigma[i] > 0)) throw GeometryError("make_gaussian: sigma must be positive");

  LogConcaveMeasure mu;
  mu.dim = n;
  mu.kind = LogConcaveMeasure::Kind::Gaussian;
  mu.id = format_params("gaussian", sigma);
  mu.params = sigma;
  mu.flags = {true, true, true};
  mu.total_mass = 1.0;
  mu.separable = true;
  Vector s = sigma;
  double log_norm = 0.0;
  for (int i = 0; i < n; ++i) log_norm += std::log(s[i] * std::sqrt(2.0 * M_PI));
  mu.log_density = [s, log_norm](const Vector& x) {
    double q = 0.0;
    for (int i = 0; i < x.size(); ++i) q += x[i] * x[i] / (2 * s[i] * s[i]);
    return -q - log_norm;
  };
  mu.sampler = [s, n](RngStream& rng) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = s[i] * rng.normal();
    return x;
  };
  return mu;
}

LogConcaveMeasure make_product_exponential(const Vector& lambda) {
  const int n = static_cast<int>(lambda.size());
  for (int i = 0; i < n; ++i)
    if (!(lambda[i] > 0))
      throw GeometryError("make_product_exponential: lambda must be positive");

  LogConcaveMeasure mu;
  mu.dim = n;
  mu.kind = LogConcaveMeasure::Kind::ProductExponential;
  mu.id = format_params("product_exponential", lambda);
  mu.params = lambda;
  mu.flags = {true, true, true};
  mu.total_mass = 1.0;
  mu.separable = true;
  Vector l = lambda;
  double log_norm = 0.0;
  for (int i = 0; i < n; ++i) log_norm += std::log(l[i] / 2.0);
  mu.log_density = [l, log_norm](const Vector& x) {
    double q = 0.0;
    for (int i = 0; i < x.size(); ++i) q += l[i] * std::abs(x[i]);
    return -q + log_norm;
  };
  mu.sampler = [l, n](RngStream& rng) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.laplace(l[i]);
    return x;
  };
  return mu;
}

LogConcaveMeasure make_lebesgue(const Box& box) {
  const int n = box.dim();
  double mass = 1.0;
  for (int i = 0; i < n; ++i) {
    double scale = std::max(1.0, std::abs(box.hi[i]));
    if (std::abs(box.lo[i] + box.hi[i]) > 1e-12 * scale)
      throw GeometryError("make_lebesgue: box must be symmetric around 0");
    if (box.hi[i] <= 0) throw GeometryError("make_lebesgue: empty box");
    mass *= box.hi[i] - box.lo[i];
  }

  LogConcaveMeasure mu;
  mu.dim = n;
  mu.kind = LogConcaveMeasure::Kind::LebesgueBox;
  mu.id = format_params("lebesgue_box", box.hi);
  mu.params = box.hi;
  mu.flags = {true, true, true};
  mu.total_mass = mass;
  mu.support_box = box;
  mu.separable = true;
  Box b = box;
  mu.log_density = [b](const Vector& x) {
    return b.contains(x) ? 0.0 : kNegInf;
  };
  mu.sampler = [b](RngStream& rng) { return rng.uniform_in_box(b); };
  return mu;
}

LogConcaveMeasure make_uniform_on_body(const HPolytope& T) {
  if (!is_unconditional(T))
    throw GeometryError("make_uniform_on_body: body must be unconditional");

  LogConcaveMeasure mu;
  mu.dim = T.dim();
  mu.kind = LogConcaveMeasure::Kind::UniformBody;
  mu.id = "uniform_body(" + std::to_string(T.facet_count()) + " facets)";
  mu.flags = {true, true, true};
  mu.total_mass = volume_exact(T).value;
  mu.support_box = enclosing_box(T);
  mu.support_body = T;
  mu.separable = true;
  HPolytope body = T;
  mu.log_density = [body](const Vector& x) {
    return gauge(body, x) <= 1.0 ? 0.0 : kNegInf;
  };
  Box box = *mu.support_box;
  mu.sampler = [body, box](RngStream& rng) {
    for (long attempt = 0; attempt < 1000000L; ++attempt) {
      Vector x = rng.uniform_in_box(box);
      if (gauge(body, x) <= 1.0) return x;
    }
    throw GeometryError("uniform_on_body sampler: rejection stalled");
  };
  return mu;
}

LogConcaveMeasure make_custom(int dim,
                              std::function<double(const Vector&)> log_density,
                              MeasureFlags flags, std::optional<Box> box,
                              std::vector<std::string>* warnings) {
  LogConcaveMeasure mu;
  mu.dim = dim;
  mu.kind = LogConcaveMeasure::Kind::Custom;
  mu.id = "custom";
  mu.log_density = std::move(log_density);
  if (flags.unconditional) flags.even = true;
  mu.flags = flags;
  mu.support_box = box;
  mu.separable = false;

  RngStream rng(0x6d65617375726531ULL);
  auto w = validate_measure(mu, rng);
  if (warnings) *warnings = w;
  return mu;
}

FiberMeasure restrict_fiber(const LogConcaveMeasure& mu, int axis,
                            const Vector& y_chart) {
  if (axis < 0 || axis >= mu.dim)
    throw GeometryError("restrict_fiber: axis out of range");
  require_dim_match(mu.dim - 1, static_cast<int>(y_chart.size()),
                    "restrict_fiber");

  FiberMeasure f;
  f.axis = axis;
  f.base = Vector::Zero(mu.dim);
  int w = 0;
  for (int j = 0; j < mu.dim; ++j)
    if (j != axis) f.base[j] = y_chart[w++];
  Vector base = f.base;
  auto density = mu.log_density;
  f.log_density_1d = [base, axis, density](double t) {
    Vector x = base;
    x[axis] += t;
    return density(x);
  };

  if (mu.flags.unconditional) {
    // evenness in the fiber coordinate is implied; spot-check it
    for (double t : {0.25, 0.75, 1.5, 2.5}) {
      double a = f.log_density_1d(t), b = f.log_density_1d(-t);
      bool both_zero = std::isinf(a) && std::isinf(b) && a < 0 && b < 0;
      if (!both_zero && std::abs(a - b) > 1e-12)
        throw GeometryError("restrict_fiber: unconditional flag inconsistent");
    }
  }
  return f;
}

std::vector<std::string> validate_measure(const LogConcaveMeasure& mu,
                                          RngStream& rng, int pairs) {
  std::vector<std::string> warnings;
  Box box = mu.support_box ? *mu.support_box : Box::centered(mu.dim, 3.0);

  int concavity_fail = 0, flip_fail = 0, even_fail = 0, used = 0;
  for (int it = 0; it < pairs; ++it) {
    Vector x = rng.uniform_in_box(box);
    Vector y = rng.uniform_in_box(box);
    double fx = mu.log_density(x), fy = mu.log_density(y);
    if (std::isfinite(fx) && std::isfinite(fy)) {
      ++used;
      double fm = mu.log_density(0.5 * (x + y));
      if (fm < 0.5 * (fx + fy) - 1e-9) ++concavity_fail;
    }
    if (mu.flags.unconditional) {
      Vector fxv = x;
      for (int j = 0; j < mu.dim; ++j)
        if (rng.uniform01() < 0.5) fxv[j] = -fxv[j];
      double a = mu.log_density(x), b = mu.log_density(fxv);
      bool both_zero = std::isinf(a) && std::isinf(b);
      if (!both_zero && !(std::abs(a - b) <= 1e-12)) ++flip_fail;
    }
    if (mu.flags.even) {
      double a = mu.log_density(x), b = mu.log_density(-x);
      bool both_zero = std::isinf(a) && std::isinf(b);
      if (!both_zero && !(std::abs(a - b) <= 1e-12)) ++even_fail;
    }
  }
  if (mu.flags.log_concave_declared && concavity_fail > 0) {
    std::ostringstream os;
    os << "midpoint log-concavity failed on " << concavity_fail << "/" << used
       << " sampled pairs";
    warnings.push_back(os.str());
  }
  if (flip_fail > 0)
    warnings.push_back("declared unconditional but density changes under sign flips");
  if (even_fail > 0)
    warnings.push_back("declared even but density is not even on samples");
  return warnings;
}

}  // namespace santalo
