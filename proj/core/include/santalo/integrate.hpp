#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "santalo/bodies.hpp"
#include "santalo/measures.hpp"

namespace santalo {

enum class VolumeMethod { Exact, Quadrature, MonteCarlo };

struct VolumeEstimate {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::Exact;
  double err = 0.0;   // absolute: 0 for exact, truncation bound for
                      // quadrature, one standard error for MC
  long samples = 0;   // MC only
  std::uint64_t seed = 0;  // MC only
  bool tolerance_reached = true;  // quadrature panel budget flag
};

// kappa_n by the recursion kappa_n = kappa_{n-2} * 2 pi / n (bit-stable,
// no Gamma calls)
double unit_ball_volume(int n);

// Exact Lebesgue volume by recursive facet slicing: each facet contributes
// (offset / |pivot coefficient|) times the chart volume of the substituted
// (n-1)-dimensional polytope, summed and divided by n. Deterministic, err 0.
VolumeEstimate volume_exact(const HPolytope& H);
VolumeEstimate volume_exact(const VPolytope& V);
double volume_exact_general(const GeneralHPoly& P);

// Integration target: an intersection of polytopal constraint sets with at
// most one gauge oracle. Fibers along the innermost axis are exact for the
// polytopal parts and come from the oracle's fiber callback (or gauge
// bisection) otherwise.
struct IntegrandBody {
  int dim = 0;
  std::string id;
  std::vector<GeneralHPoly> polys;
  const BodyOracle* oracle = nullptr;  // not owned
  Box box;

  static IntegrandBody from(const HPolytope& H, std::string id = "hpoly");
  static IntegrandBody from(const BodyOracle& O);
  bool contains(const Vector& x, double tol = 1e-9) const;
};

// Deterministic Fubini quadrature: adaptive 15-point Gauss-Legendre panels on
// the outer axes (bisected until the panel-pair disagreement falls below the
// relative tolerance), exact fiber intervals on the innermost axis, which is
// the axis of largest box extent. err is the accumulated panel-disagreement
// bound. When the panel budget runs out the best estimate is returned with
// tolerance_reached = false.
VolumeEstimate measure_quadrature(const LogConcaveMeasure& mu,
                                  const IntegrandBody& body,
                                  double rel_tol = 1e-6);

struct McOptions {
  bool antithetic = true;  // evaluate +-x pairs; the standard error is then
                           // computed from the per-pair means
};
VolumeEstimate measure_mc(const LogConcaveMeasure& mu,
                          const IntegrandBody& body, long samples,
                          std::uint64_t seed, McOptions opt = {});

// mu(r B) in closed or radial-quadrature form. Supports isotropic Gaussian
// (n = 2 closed form, general n by adaptive radial quadrature to ~1e-12) and
// Lebesgue boxes containing r B (kappa_n r^n). Throws for other measures;
// callers fall back to measure_quadrature with a ball oracle.
VolumeEstimate ball_measure_radial(const LogConcaveMeasure& mu, double radius);

// Adaptive 1D integrator used by the engine, exposed for direct use and
// testing. The integrand returns (value, err) pairs; inner errors are
// propagated through the quadrature weights.
struct QuadResult {
  double value = 0.0;
  double err = 0.0;
};
QuadResult adaptive_gl15(const std::function<QuadResult(double)>& f, double a,
                         double b, double rel_tol, long* eval_budget = nullptr);

}  // namespace santalo
