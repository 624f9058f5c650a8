// Command-line front end: batch verification of the volume-product
// inequalities, Steiner symmetrization of body files, polars, volumes,
// products and dilation sweeps.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "santalo/bodyfile.hpp"
#include "santalo/experiment.hpp"
#include "santalo/integrate.hpp"
#include "santalo/symmetrize.hpp"
#include "santalo/textdoc.hpp"
#include "santalo/verify.hpp"

namespace fs = std::filesystem;
using namespace santalo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // config / IO errors
constexpr int kExitFailed = 2;   // some verification failed

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  double quad_tol = -1;       // <0: keep config value
  long mc_samples = -1;
  long long seed = -1;
  int jobs = 0;
};

void apply_overrides(ExperimentConfig& cfg, const CommonOpts& opt) {
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (opt.quad_tol > 0) cfg.quad_tol = opt.quad_tol;
  if (opt.mc_samples > 0) cfg.mc_samples = opt.mc_samples;
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.jobs > 0) cfg.jobs = opt.jobs;
}

int cmd_verify(const CommonOpts& opt) {
  ExperimentConfig cfg = read_config_file(opt.config_path);
  apply_overrides(cfg, opt);
  cfg.validate();

  ExperimentResult res = run_experiment(cfg);
  fs::create_directories(cfg.out_dir);
  std::string csv_path = (fs::path(cfg.out_dir) / "reports.csv").string();
  write_reports_csv(csv_path, res.reports);

  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
  for (const std::string& s : res.summary) std::cout << s << "\n";
  std::cout << "wrote " << res.reports.size() << " reports to " << csv_path
            << "\n";
  return res.all_passed ? kExitOk : kExitFailed;
}

int cmd_symmetrize(const std::string& body_path, const std::string& axis_arg,
                   const std::string& out_dir) {
  BodyDocument doc = read_body_file(body_path);
  HPolytope H = document_to_hpolytope(doc);
  double vol_in = volume_exact(H).value;

  std::vector<std::pair<std::string, HPolytope>> outputs;
  if (axis_arg == "all") {
    outputs.emplace_back("uncond", unconditionalize(H));
  } else {
    int axis = std::stoi(axis_arg);
    if (axis < 1 || axis > H.dim())
      throw ConfigError("axis must be 1.." + std::to_string(H.dim()) +
                        " or 'all'");
    outputs.emplace_back("s" + axis_arg, steiner(H, axis - 1));
  }

  fs::create_directories(out_dir.empty() ? "." : out_dir);
  std::string stem = fs::path(body_path).stem().string();
  for (const auto& [tag, body] : outputs) {
    double vol_out = volume_exact(body).value;
    std::string out_path =
        ((out_dir.empty() ? fs::path(".") : fs::path(out_dir)) /
         (stem + "." + tag + ".body"))
            .string();
    write_body_file(out_path, make_document(body));
    std::cout << "facets " << H.facet_count() << " -> " << body.facet_count()
              << ", volume " << format_double(vol_in) << " -> "
              << format_double(vol_out) << ", wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_polar(const std::string& body_path, const std::string& out_dir) {
  BodyDocument doc = read_body_file(body_path);
  if (doc.kind == BodyDocument::Kind::Ball) {
    BodyDocument out = make_ball_document(doc.dim, 1.0 / doc.radius);
    std::string out_path =
        ((out_dir.empty() ? fs::path(".") : fs::path(out_dir)) /
         (fs::path(body_path).stem().string() + ".polar.body"))
            .string();
    fs::create_directories(out_dir.empty() ? "." : out_dir);
    write_body_file(out_path, out);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
  }
  HPolytope H = document_to_hpolytope(doc);
  VPolytope P = polar(H);
  std::string out_path =
      ((out_dir.empty() ? fs::path(".") : fs::path(out_dir)) /
       (fs::path(body_path).stem().string() + ".polar.body"))
          .string();
  fs::create_directories(out_dir.empty() ? "." : out_dir);
  write_body_file(out_path, make_document(P));
  std::cout << "polar has " << P.vertex_count() << " vertices, wrote "
            << out_path << "\n";
  return kExitOk;
}

VolumeEstimate body_volume(const BodyDocument& doc, double quad_tol) {
  switch (doc.kind) {
    case BodyDocument::Kind::HPoly:
    case BodyDocument::Kind::VPoly:
      return volume_exact(document_to_hpolytope(doc));
    case BodyDocument::Kind::Ball: {
      VolumeEstimate e;
      e.value = unit_ball_volume(doc.dim) * std::pow(doc.radius, doc.dim);
      return e;
    }
    case BodyDocument::Kind::OracleComposite: {
      HPolytope left = document_to_hpolytope(*doc.left);
      HPolytope right = document_to_hpolytope(*doc.right);
      BodyOracle M = geometric_mean_oracle(left, right);
      Box box = M.box;
      for (int i = 0; i < box.dim(); ++i) {
        box.hi[i] = std::max(1e-6, box.hi[i]);
        box.lo[i] = -box.hi[i];
      }
      return measure_quadrature(make_lebesgue(box), IntegrandBody::from(M),
                                quad_tol);
    }
  }
  throw ConfigError("unsupported body kind");
}

int cmd_volume(const std::string& body_path, double quad_tol) {
  VolumeEstimate e = body_volume(read_body_file(body_path), quad_tol);
  std::cout << format_double(e.value) << " +- " << format_double(e.err) << "\n";
  return kExitOk;
}

int cmd_product(const std::string& body_path, const std::string& measure_arg,
                double quad_tol) {
  BodyDocument doc = read_body_file(body_path);
  VolumeEstimate p;
  if (measure_arg.empty()) {
    if (doc.kind == BodyDocument::Kind::Ball) {
      // |rB| |B/r| = kappa_n^2 for every dilation of the ball
      double kn = unit_ball_volume(doc.dim);
      p.value = kn * kn;
    } else {
      p = volume_product_lebesgue(document_to_hpolytope(doc));
    }
  } else {
    LogConcaveMeasure mu = make_measure(parse_measure_spec(measure_arg), doc.dim);
    if (doc.kind == BodyDocument::Kind::Ball) {
      VolumeEstimate a = ball_measure(mu, doc.radius, quad_tol);
      VolumeEstimate b = ball_measure(mu, 1.0 / doc.radius, quad_tol);
      p = multiply_estimates(a, b);
    } else {
      p = volume_product_measure(document_to_hpolytope(doc), mu, quad_tol);
    }
  }
  std::cout << "P = " << format_double(p.value) << " +- "
            << format_double(p.err) << "\n";
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opt) {
  ExperimentConfig cfg = read_config_file(opt.config_path);
  apply_overrides(cfg, opt);
  std::string csv = run_sweep_csv(cfg);
  fs::create_directories(cfg.out_dir);
  std::string path = (fs::path(cfg.out_dir) / "sweep.csv").string();
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << csv;
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex-body volume products: verification tool"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string body_path, axis_arg = "all", measure_arg;
  double quad_tol = 1e-6;

  auto* verify = app.add_subcommand("verify", "run checks from a config file");
  verify->add_option("--config", opt.config_path, "experiment config")
      ->required();
  verify->add_option("--seed", opt.seed, "override config seed");
  verify->add_option("--out", opt.out_dir, "output directory");
  verify->add_option("--quad-tol", opt.quad_tol, "quadrature tolerance");
  verify->add_option("--mc-samples", opt.mc_samples, "Monte Carlo samples");
  verify->add_option("--jobs", opt.jobs, "parallel corpus items");

  auto* symmetrize =
      app.add_subcommand("symmetrize", "Steiner-symmetrize a body file");
  symmetrize->add_option("body", body_path, "body file")->required();
  symmetrize->add_option("--axis", axis_arg, "axis index (1-based) or 'all'");
  symmetrize->add_option("--out", opt.out_dir, "output directory");

  auto* polar_cmd = app.add_subcommand("polar", "write the polar body");
  polar_cmd->add_option("body", body_path, "body file")->required();
  polar_cmd->add_option("--out", opt.out_dir, "output directory");

  auto* volume = app.add_subcommand("volume", "print the volume");
  volume->add_option("body", body_path, "body file")->required();
  volume->add_option("--quad-tol", quad_tol, "quadrature tolerance");

  auto* product = app.add_subcommand("product", "print the volume product");
  product->add_option("body", body_path, "body file")->required();
  product->add_option("measure", measure_arg,
                      "measure spec, e.g. gaussian(1); Lebesgue if omitted");
  product->add_option("--quad-tol", quad_tol, "quadrature tolerance");

  auto* sweep = app.add_subcommand("sweep", "dilation sweeps to CSV");
  sweep->add_option("--config", opt.config_path, "sweep config")->required();
  sweep->add_option("--out", opt.out_dir, "output directory");
  sweep->add_option("--quad-tol", opt.quad_tol, "quadrature tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (symmetrize->parsed())
      return cmd_symmetrize(body_path, axis_arg, opt.out_dir);
    if (polar_cmd->parsed()) return cmd_polar(body_path, opt.out_dir);
    if (volume->parsed()) return cmd_volume(body_path, quad_tol);
    if (product->parsed()) return cmd_product(body_path, measure_arg, quad_tol);
    if (sweep->parsed()) return cmd_sweep(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
