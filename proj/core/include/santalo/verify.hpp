#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "santalo/integrate.hpp"
#include "santalo/symmetrize.hpp"

namespace santalo {

// Pass/fail ledger entry for one inequality instance. `passed` is
// definitional: margin >= -slack with slack = 3 (lhs.err + rhs.err) + floor,
// the floor being 1e-9 unless the operation states another tolerance.
struct VerificationReport {
  std::string inequality_id;
  int dim = 0;
  std::string body_id;
  std::string measure_id;
  VolumeEstimate lhs;
  VolumeEstimate rhs;
  double margin = 0.0;  // rhs.value - lhs.value
  double slack = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::string context;
};

VerificationReport make_report(std::string inequality_id, int dim,
                               std::string body_id, std::string measure_id,
                               const VolumeEstimate& lhs,
                               const VolumeEstimate& rhs, std::uint64_t seed,
                               std::string context = "",
                               double slack_floor = 1e-9);

std::string reports_csv_header();
std::string report_csv_row(const VerificationReport& r);
void write_reports_csv(const std::string& path,
                       const std::vector<VerificationReport>& reports);

// product with multiplied error propagation (relative errors add)
VolumeEstimate multiply_estimates(const VolumeEstimate& a,
                                  const VolumeEstimate& b);

// ---- volume products ---------------------------------------------------------

// P(K) = |K| |K^o|, exact engines
VolumeEstimate volume_product_lebesgue(const HPolytope& K);
// P_L(K) = |K ∩ L| |K^o ∩ L|, exact engines
VolumeEstimate volume_product_over_body(const HPolytope& K, const HPolytope& L);
// P_mu(K) = mu(K) mu(K^o), quadrature at quad_tol
VolumeEstimate volume_product_measure(const HPolytope& K,
                                      const LogConcaveMeasure& mu,
                                      double quad_tol = 1e-6);

// ---- inequality checks -------------------------------------------------------

// P(K) <= kappa_n^2 (classical, exact volumes on both sides)
VerificationReport verify_santalo_lebesgue(const HPolytope& K,
                                           const std::string& body_id = "K");

// Single Steiner step: mu(S_u K) >= mu(K), mu((S_u K)^o) >= mu(K^o), and the
// product inequality. The symmetral is exact; measures are quadratures.
struct SteinerStepReports {
  VerificationReport body;     // claim1.body
  VerificationReport polar;    // claim1.polar
  VerificationReport product;  // claim1.product
};
SteinerStepReports verify_claim1(const LogConcaveMeasure& mu,
                                 const HPolytope& K, int axis,
                                 double quad_tol = 1e-6,
                                 const std::string& body_id = "K");

// P_mu nondecreasing along the unconditionalization pipeline; one report per
// step, the final body passes is_unconditional.
std::vector<VerificationReport> verify_chain(const LogConcaveMeasure& mu,
                                             const HPolytope& K,
                                             double quad_tol = 1e-6,
                                             const std::string& body_id = "K");

// P_mu(K) <= P_mu(B) with B the unit Euclidean ball (B^o = B)
VerificationReport verify_main(const LogConcaveMeasure& mu, const HPolytope& K,
                               double quad_tol = 1e-6,
                               const std::string& body_id = "K");

// For boundary pairs x on bd(K), y on bd(K^o):  sum_i |x_i y_i| <= 1.
// Requires K unconditional.
VerificationReport verify_corollary_inclusion(const HPolytope& K, long samples,
                                              std::uint64_t seed,
                                              const std::string& body_id = "K");

// Sampled slice inclusion (S_u K)^o(z) ⊇ (K^o(z) + K^o(-z))/2: midpoints of
// rejection-sampled slice pairs must have gauge <= 1 + 1e-7 in (S_u K)^o.
// Empty slices give a vacuous pass, flagged in context. Ko_hrep may pass a
// precomputed H-representation of K^o.
VerificationReport verify_meyer_pajor(const HPolytope& K, int axis, double z,
                                      long samples, std::uint64_t seed,
                                      const std::string& body_id = "K",
                                      const HPolytope* Ko_hrep = nullptr);

// ---- geometric-mean body -----------------------------------------------------

// Membership of z in the geometric-mean body of two unconditional bodies:
// exists w with gauge_K(|z| e^w) <= 1 and gauge_L(|z| e^{-w}) <= 1, decided by
// multistart Nelder-Mead on the max of the two gauges (starts: 0 and +-0.5
// coordinate perturbations). Membership is certified by the witness;
// non-membership is best effort and flagged inconclusive.
struct GmMembership {
  bool member = false;
  bool inconclusive = false;
  double f_min = 0.0;  // best max-gauge value found
  Vector witness_x;
  Vector witness_y;
};
GmMembership gm_membership(const HPolytope& K, const HPolytope& L,
                           const Vector& z, int iters = 200);

// Gauge oracle for the geometric-mean body. The reported gauge is the
// minimized max-form value, an upper bound on the true gauge, so the enclosed
// body is a subset: downstream integrals underestimate, keeping Prop-8 style
// checks conservative. Fibers use 60 bisection steps with warm-started
// minimizations.
BodyOracle geometric_mean_oracle(const HPolytope& K, const HPolytope& L,
                                 int iters = 100);

// mu(K) mu(L) <= mu(M)^2 for M the geometric-mean body (conservative rhs)
VerificationReport verify_prop8(const LogConcaveMeasure& mu,
                                const HPolytope& K, const HPolytope& L,
                                double quad_tol = 1e-6, int iters = 100,
                                const std::string& pair_id = "K,L");

// Midpoint log-concavity of t -> mu(e^t B) on an equally spaced grid. The
// report stores the worst slack-adjusted concavity defect as lhs against 0.
VerificationReport verify_ball_logconcavity(const LogConcaveMeasure& mu,
                                            const std::vector<double>& t_grid,
                                            double quad_tol = 1e-6);

// mu(e^t B) through the radial closed forms when available, quadrature with a
// ball oracle otherwise.
VolumeEstimate ball_measure(const LogConcaveMeasure& mu, double radius,
                            double quad_tol = 1e-6);

}  // namespace santalo
