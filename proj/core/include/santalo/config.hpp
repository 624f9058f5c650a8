#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "santalo/measures.hpp"
#include "santalo/textdoc.hpp"

namespace santalo {

// measure spec as written in configs: kind(p1, p2, ...); a single parameter
// broadcasts over the dimension
struct MeasureSpec {
  std::string kind;
  std::vector<double> params;
  std::string text;  // original spelling
};

MeasureSpec parse_measure_spec(const std::string& text);
LogConcaveMeasure make_measure(const MeasureSpec& spec, int dim);

struct SweepSpec {
  std::string kind;  // "radius" (P_mu(rB)) or "ball_growth" (log mu(e^t B))
  std::vector<double> grid;
  MeasureSpec measure;
};

struct ExperimentConfig {
  int dim = 2;
  std::uint64_t seed = 1;
  struct {
    int count = 0;
    int vertex_pairs = 0;
    std::vector<std::string> files;
  } corpus;
  std::vector<MeasureSpec> measures;
  std::vector<std::string> checks;
  double quad_tol = 1e-6;
  long mc_samples = 1000000;
  std::string out_dir = ".";
  int jobs = 1;
  SweepSpec sweep;  // cmd_sweep only

  // throws ConfigError: unknown checks, out-of-range dims (quadrature-backed
  // checks cap at 4, exact-only at 6), empty corpus, missing measures
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig read_config_file(const std::string& path);

const std::vector<std::string>& known_checks();

}  // namespace santalo
