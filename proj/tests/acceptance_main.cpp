// Acceptance suite: every criterion below is pinned (counts, tolerances,
// seeds) and prints one pass/fail line. Exit code is the failure count.
// Single-threaded; total runtime stays well under the 15-minute budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "santalo/rng.hpp"
#include "santalo/verify.hpp"

using namespace santalo;

namespace {

constexpr std::uint64_t kMasterSeed = 0x5eed2024;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

struct Suite {
  int failures = 0;
  int index = 0;

  void run(const std::string& title,
           const std::function<bool(std::string&)>& body) {
    ++index;
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::printf("[%s] %2d. %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL", index,
                title.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::vector<HPolytope> random_corpus(int n, int count, std::uint64_t salt) {
  std::vector<HPolytope> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = RngStream::derive(kMasterSeed ^ salt, i).next_u64();
    int pairs = n + 2 + (i % 4);
    out.push_back(to_hrep(random_symmetric_polytope(n, pairs, seed)));
  }
  return out;
}

std::vector<LogConcaveMeasure> standard_measures(int n) {
  return {make_gaussian(Vector::Ones(n)),
          make_product_exponential(Vector::Ones(n)),
          make_lebesgue(Box::centered(n, 3.0))};
}

}  // namespace

int main() {
  Suite suite;

  // 1. polar involution on random V-polytopes
  suite.run("polar involution (100 bodies per n in {2,3}, 1e-9)", [](std::string& d) {
    int bad = 0, total = 0;
    for (int n = 2; n <= 3; ++n)
      for (int i = 0; i < 100; ++i) {
        std::uint64_t seed = RngStream::derive(kMasterSeed ^ 0x11, 100 * n + i)
                                 .next_u64();
        VPolytope V = random_symmetric_polytope(n, n + 2 + (i % 4), seed);
        if (!approx_equal(V, polar(polar(V)), 1e-9)) ++bad;
        ++total;
      }
    d = std::to_string(total - bad) + "/" + std::to_string(total) +
        " bipolar vertex sets matched";
    return bad == 0;
  });

  // 2. classical volume-product inequality
  suite.run("classical product bound (500 random bodies; cube; 128-gon)",
            [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      double bound = std::pow(unit_ball_volume(n), 2) * (1.0 + 1e-9);
      for (int i = 0; i < 250; ++i) {
        std::uint64_t seed =
            RngStream::derive(kMasterSeed ^ 0x22, 1000 * n + i).next_u64();
        VPolytope V = random_symmetric_polytope(n, n + 2 + (i % 4), seed);
        double p = volume_exact(to_hrep(V)).value *
                   volume_exact(polar(V)).value;
        worst = std::max(worst, p / (bound / (1.0 + 1e-9)));
        if (p > bound) ++bad;
        ++total;
      }
    }

    double p_cube = volume_product_lebesgue(HPolytope::cube(2)).value;
    bool cube_ok = p_cube == 8.0;

    const int m = 128;
    Matrix V(m, 2);
    for (int i = 0; i < m; ++i) {
      double a = 2.0 * M_PI * i / m;
      V(i, 0) = std::cos(a);
      V(i, 1) = std::sin(a);
    }
    double p_gon = volume_product_lebesgue(to_hrep(VPolytope(V, true))).value;
    double area = 0.5 * m * std::sin(2.0 * M_PI / m);
    double oracle = area * area / std::pow(std::cos(M_PI / m), 2);
    bool gon_ok = p_gon <= M_PI * M_PI &&
                  (M_PI * M_PI - p_gon) <= 0.01 * M_PI * M_PI &&
                  std::abs(p_gon - oracle) <= 1e-9 * oracle;

    std::ostringstream os;
    os << total - bad << "/" << total << " bodies, max P/P(B) " << worst
       << ", P(cube)=" << p_cube << (cube_ok ? "" : " (WRONG)")
       << ", 128-gon vs closed form ok=" << gon_ok;
    d = os.str();
    return bad == 0 && cube_ok && gon_ok;
  });

  // 3. Steiner volume preservation, exact engine
  suite.run("Steiner volume preservation (200 bodies x all axes, 1e-9 rel)",
            [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 100, 0x33);
      for (const HPolytope& K : corpus) {
        double v0 = volume_exact(K).value;
        for (int axis = 0; axis < n; ++axis) {
          double v1 = volume_exact(steiner(K, axis)).value;
          double rel = std::abs(v1 - v0) / v0;
          worst = std::max(worst, rel);
          if (rel > 1e-9) ++bad;
          ++total;
        }
      }
    }
    std::ostringstream os;
    os << total - bad << "/" << total << " symmetrizations, worst rel dev "
       << worst;
    d = os.str();
    return bad == 0;
  });

  // 4. unconditionalization pipeline
  suite.run("unconditionalization (200 bodies: exact flip closure, volume)",
            [](std::string& d) {
    int bad = 0, total = 0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 100, 0x44);
      for (const HPolytope& K : corpus) {
        double v0 = volume_exact(K).value;
        HPolytope U = unconditionalize(K);
        bool ok = is_unconditional(U) &&
                  std::abs(volume_exact(U).value - v0) <= 1e-9 * v0;
        if (!ok) ++bad;
        ++total;
      }
    }
    d = std::to_string(total - bad) + "/" + std::to_string(total) +
        " pipelines unconditional with volume preserved";
    return bad == 0;
  });

  // 5. single-step factor inequalities
  suite.run("Steiner step factors (50 bodies x 3 measures x axes, tol 1e-6)",
            [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 25, 0x55);
      auto measures = standard_measures(n);
      for (const HPolytope& K : corpus)
        for (const auto& mu : measures)
          for (int axis = 0; axis < n; ++axis) {
            SteinerStepReports r = verify_claim1(mu, K, axis, 1e-6);
            for (const VerificationReport* rep :
                 {&r.body, &r.polar, &r.product}) {
              worst = std::min(worst, rep->margin + rep->slack);
              if (!rep->passed) ++bad;
              ++total;
            }
          }
    }
    std::ostringstream os;
    os << total - bad << "/" << total
       << " factor/product reports, min(margin+slack) " << worst;
    d = os.str();
    return bad == 0;
  });

  // 6. monotone chain along the pipeline
  suite.run("monotone product chain (50 bodies x 3 measures)",
            [](std::string& d) {
    int bad = 0, total = 0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 25, 0x55);  // same corpus as #5
      auto measures = standard_measures(n);
      for (const HPolytope& K : corpus)
        for (const auto& mu : measures)
          for (const auto& rep : verify_chain(mu, K, 1e-6)) {
            if (!rep.passed) ++bad;
            ++total;
          }
    }
    d = std::to_string(total - bad) + "/" + std::to_string(total) +
        " chain steps nondecreasing";
    return bad == 0;
  });

  // 7. the main product inequality against the unit ball
  suite.run("main product bound (100 bodies x 3 measures, gaussian anchor)",
            [](std::string& d) {
    int bad = 0, total = 0;
    bool anchor_ok = false;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 50, 0x77);
      auto measures = standard_measures(n);
      for (const HPolytope& K : corpus)
        for (const auto& mu : measures) {
          VerificationReport r = verify_main(mu, K, 1e-6);
          if (!r.passed) ++bad;
          ++total;
          if (n == 2 && mu.kind == LogConcaveMeasure::Kind::Gaussian) {
            double anchor = std::pow(1.0 - std::exp(-0.5), 2);
            anchor_ok = std::abs(r.rhs.value - anchor) <= 1e-9 &&
                        std::abs(anchor - 0.154818) <= 1e-5;
          }
        }
    }
    std::ostringstream os;
    os << total - bad << "/" << total
       << " bounds held, rhs anchor(2d gaussian) "
       << (anchor_ok ? "verified" : "WRONG");
    d = os.str();
    return bad == 0 && anchor_ok;
  });

  // 8. boundary-pair inclusion sums
  suite.run(
      "boundary-pair sums (cube, diamond, 20 unconditional bodies; 1e4 pairs)",
      [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    std::vector<std::pair<std::string, HPolytope>> bodies;
    bodies.emplace_back("cube2", HPolytope::cube(2));
    bodies.emplace_back("cube3", HPolytope::cube(3));
    bodies.emplace_back("diamond2", HPolytope::cross_polytope(2));
    bodies.emplace_back("diamond3", HPolytope::cross_polytope(3));
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 10, 0x88);
      for (size_t i = 0; i < corpus.size(); ++i)
        bodies.emplace_back("u" + std::to_string(n) + "-" + std::to_string(i),
                            unconditionalize(corpus[i]));
    }
    int idx = 0;
    for (const auto& [id, K] : bodies) {
      std::uint64_t seed =
          RngStream::derive(kMasterSeed ^ 0x99, idx++).next_u64();
      VerificationReport r = verify_corollary_inclusion(K, 10000, seed, id);
      worst = std::max(worst, r.lhs.value);
      if (!(r.lhs.value <= 1.0 + 1e-9)) ++bad;
      ++total;
    }
    std::ostringstream os;
    os << total - bad << "/" << total << " bodies, max pair sum " << worst;
    d = os.str();
    return bad == 0;
  });

  // 9. sampled slice inclusion for the symmetral polar
  suite.run(
      "slice midpoint inclusion (20 bodies x 3 heights, 1e4 samples, 1e-7)",
      [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    int idx = 0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 10, 0xaa);
      for (const HPolytope& K : corpus) {
        int axis = idx % n;
        HPolytope Ko = polar_hrep(K);
        double extent = enclosing_box(polar(K)).hi[axis];
        for (double frac : {0.0, 0.45, 0.9}) {
          std::uint64_t seed =
              RngStream::derive(kMasterSeed ^ 0xbb, idx * 8 + total).next_u64();
          VerificationReport r = verify_meyer_pajor(K, axis, frac * extent,
                                                    10000, seed, "k", &Ko);
          worst = std::max(worst, r.lhs.value);
          if (!r.passed) ++bad;
          ++total;
        }
        ++idx;
      }
    }
    std::ostringstream os;
    os << total - bad << "/" << total << " slices, max midpoint gauge "
       << worst;
    d = os.str();
    return bad == 0;
  });

  // 10. product bound through the geometric-mean body (n = 2)
  suite.run(
      "geometric-mean product bound (10 pairs x 2 measures + closed form)",
      [](std::string& d) {
    int bad = 0, total = 0;
    auto corpus = random_corpus(2, 20, 0xcc);
    std::vector<HPolytope> uncond;
    for (const auto& K : corpus) uncond.push_back(unconditionalize(K));
    std::vector<LogConcaveMeasure> measures = {
        make_gaussian(vec2(1, 1)), make_product_exponential(vec2(1, 1))};
    for (int p = 0; p < 10; ++p)
      for (const auto& mu : measures) {
        VerificationReport r =
            verify_prop8(mu, uncond[2 * p], uncond[2 * p + 1], 1e-5, 100,
                         "pair" + std::to_string(p));
        if (!r.passed) ++bad;
        ++total;
      }

    // closed-form anchor: cube and its dilate under the box measure
    LogConcaveMeasure lb = make_lebesgue(Box::centered(2, 4.0));
    VerificationReport scaled =
        verify_prop8(lb, HPolytope::cube(2), HPolytope::cube(2, 2.0), 1e-5,
                     100, "cube,2cube");
    bool closed_ok = scaled.passed &&
                     std::abs(scaled.lhs.value - 64.0) <= 1e-3 &&
                     std::abs(scaled.margin) <= 3.0 * scaled.slack + 1e-3;
    ++total;
    if (!closed_ok) ++bad;

    d = std::to_string(total - bad) + "/" + std::to_string(total) +
        " conservative bounds held (incl. closed-form pair)";
    return bad == 0;
  });

  // 11. engine cross-validation
  suite.run("quadrature vs Monte Carlo (50 pairs at 1e6 samples, 3 sigma)",
            [](std::string& d) {
    int bad = 0, total = 0;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      auto corpus = random_corpus(n, 25, 0xdd);
      auto measures = standard_measures(n);
      for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& mu = measures[i % measures.size()];
        std::uint64_t seed =
            RngStream::derive(kMasterSeed ^ 0xee, 100 * n + i).next_u64();
        IntegrandBody body = IntegrandBody::from(corpus[i]);
        VolumeEstimate q = measure_quadrature(mu, body, 1e-6);
        VolumeEstimate m = measure_mc(mu, body, 1000000, seed);
        double dev = std::abs(q.value - m.value);
        double allowed = 3.0 * (q.err + m.err);
        worst = std::max(worst, allowed > 0 ? dev / allowed : 0.0);
        if (dev > allowed) ++bad;
        ++total;
      }
    }
    std::ostringstream os;
    os << total - bad << "/" << total << " pairs agree, worst dev/3sigma "
       << worst;
    d = os.str();
    return bad == 0;
  });

  // 12. log-concavity of the ball growth function
  suite.run("ball growth log-concavity (9-point grid, gaussian + exponential)",
            [](std::string& d) {
    int bad = 0, total = 0;
    std::vector<double> grid;
    for (int k = 0; k < 9; ++k) grid.push_back(-1.0 + 0.25 * k);
    for (int n = 2; n <= 3; ++n)
      for (const auto& mu : {make_gaussian(Vector::Ones(n)),
                             make_product_exponential(Vector::Ones(n))}) {
        VerificationReport r = verify_ball_logconcavity(mu, grid, 1e-6);
        if (!r.passed) ++bad;
        ++total;
      }

    // cross-check of the 2-d gaussian growth function to 1e-8
    LogConcaveMeasure g2 = make_gaussian(vec2(1, 1));
    bool anchor_ok = true;
    for (double t : grid) {
      double expected = 1.0 - std::exp(-std::exp(2 * t) / 2.0);
      double got = ball_measure(g2, std::exp(t), 1e-10).value;
      if (std::abs(got - expected) > 1e-8) anchor_ok = false;
    }
    ++total;
    if (!anchor_ok) ++bad;

    d = std::to_string(total - bad) + "/" + std::to_string(total) +
        " grids concave (incl. closed-form anchor)";
    return bad == 0;
  });

  std::printf("%s: %d/%d criteria passed\n",
              suite.failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              suite.index - suite.failures, suite.index);
  return suite.failures == 0 ? 0 : 1;
}
