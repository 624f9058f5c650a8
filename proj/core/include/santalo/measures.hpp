#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "santalo/bodies.hpp"
#include "santalo/rng.hpp"

namespace santalo {

struct MeasureFlags {
  bool even = false;
  bool unconditional = false;
  bool log_concave_declared = true;
};

// Log-concave measure mu = f dx given through log f (minus infinity encodes
// zero density). Flags are declared by the constructor and validated by
// sampling; verification routines trust them. Density callbacks must be pure;
// samplers draw from the normalized measure and take an explicit stream.
struct LogConcaveMeasure {
  enum class Kind { Gaussian, ProductExponential, LebesgueBox, UniformBody, Custom };

  int dim = 0;
  Kind kind = Kind::Custom;
  std::string id;
  std::function<double(const Vector&)> log_density;
  MeasureFlags flags;
  std::optional<double> total_mass;
  std::optional<Box> support_box;
  std::optional<HPolytope> support_body;  // UniformBody only
  Vector params;                          // sigma / lambda / half-widths
  std::function<Vector(RngStream&)> sampler;

  bool has_sampler() const { return static_cast<bool>(sampler); }

  // Separable smooth factor f(x) = prod_i f_i(x_i) with the support region
  // carried separately (support_box / support_body). All built-ins are
  // separable; the quadrature engine integrates the innermost axis factor in
  // closed form through axis_mass.
  bool separable = false;
  double axis_log_density(int axis, double t) const;
  double axis_mass(int axis, double a, double b) const;
};

LogConcaveMeasure make_gaussian(const Vector& sigma);
LogConcaveMeasure make_product_exponential(const Vector& lambda);
// Uniform (Lebesgue) measure restricted to a symmetric box; asymmetric boxes
// are rejected because they would break unconditionality.
LogConcaveMeasure make_lebesgue(const Box& box);
// Uniform measure on an unconditional convex body.
LogConcaveMeasure make_uniform_on_body(const HPolytope& T);

// Custom density; sampled invariant checks run immediately and failures are
// reported as warnings, never errors (sampling cannot prove concavity).
LogConcaveMeasure make_custom(int dim,
                              std::function<double(const Vector&)> log_density,
                              MeasureFlags flags, std::optional<Box> box,
                              std::vector<std::string>* warnings = nullptr);

// Restriction of the density along the axis line through a point of the
// axis^perp chart, f(embed(y) + t e_axis). Even in t for unconditional mu.
struct FiberMeasure {
  Vector base;  // embedded point, axis coordinate zero
  int axis = 0;
  std::function<double(double)> log_density_1d;
};
FiberMeasure restrict_fiber(const LogConcaveMeasure& mu, int axis,
                            const Vector& y_chart);

// Sampled validation: midpoint log-concavity, flip invariance for declared
// unconditional measures, evenness. Returns human-readable warnings.
std::vector<std::string> validate_measure(const LogConcaveMeasure& mu,
                                          RngStream& rng, int pairs = 1000);

}  // namespace santalo
