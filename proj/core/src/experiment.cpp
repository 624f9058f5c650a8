#include "santalo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "santalo/bodyfile.hpp"

namespace santalo {

namespace {

struct CorpusBody {
  std::string id;
  HPolytope hrep;
  std::uint64_t seed = 0;
};

std::string basename_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

std::vector<CorpusBody> build_corpus(const ExperimentConfig& cfg,
                                     std::vector<std::string>* warnings) {
  std::vector<CorpusBody> corpus;
  for (int i = 0; i < cfg.corpus.count; ++i) {
    std::uint64_t s = RngStream::derive(cfg.seed, i).next_u64();
    VPolytope v = random_symmetric_polytope(cfg.dim, cfg.corpus.vertex_pairs, s);
    char id[64];
    std::snprintf(id, sizeof(id), "rnd-n%d-%03d", cfg.dim, i);
    corpus.push_back({id, to_hrep(v), s});
  }
  for (const std::string& path : cfg.corpus.files) {
    BodyDocument doc = read_body_file(path);
    if (doc.dim != cfg.dim)
      throw ConfigError("body file '" + path + "' has dim " +
                        std::to_string(doc.dim) + ", config says " +
                        std::to_string(cfg.dim));
    corpus.push_back({basename_of(path), document_to_hpolytope(doc), 0});
  }
  if (warnings) {
    // Lebesgue-box measures represent restrictions of Lebesgue measure; the
    // restriction is only volume-faithful for bodies inside the box.
    for (const auto& spec : cfg.measures) {
      if (spec.kind != "lebesgue_box") continue;
      double hw = spec.params.empty() ? 3.0 : spec.params[0];
      for (const auto& b : corpus) {
        Box box = enclosing_box(b.hrep);
        Box polar_box = enclosing_box(polar(b.hrep));
        double reach = std::max(box.hi.cwiseAbs().maxCoeff(),
                                polar_box.hi.cwiseAbs().maxCoeff());
        if (reach > hw)
          warnings->push_back("body " + b.id + " (or its polar) leaves " +
                              spec.text +
                              "; the check still holds for the restricted "
                              "measure itself");
      }
    }
  }
  return corpus;
}

void run_items(int jobs, std::vector<std::function<void()>>& items) {
  if (jobs <= 1) {
    for (auto& f : items) f();
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      items[i]();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;

  std::vector<CorpusBody> corpus = build_corpus(cfg, &result.warnings);
  std::vector<LogConcaveMeasure> measures;
  for (const auto& spec : cfg.measures)
    measures.push_back(make_measure(spec, cfg.dim));

  bool want_uncond_corpus = false;
  for (const std::string& c : cfg.checks)
    if (c == "corollary" || c == "prop8") want_uncond_corpus = true;
  std::vector<HPolytope> uncond;
  if (want_uncond_corpus)
    for (const auto& b : corpus) uncond.push_back(unconditionalize(b.hrep));

  // one task per (check, body[, measure][, axis]) item; tasks write disjoint
  // slots so the pool needs no locking
  std::vector<std::vector<VerificationReport>> slots;
  std::vector<std::function<void()>> tasks;
  auto add_task = [&](std::function<std::vector<VerificationReport>()> fn) {
    slots.emplace_back();
    size_t slot = slots.size() - 1;
    tasks.push_back([&slots, slot, fn = std::move(fn)]() mutable {
      slots[slot] = fn();
    });
  };

  const double tol = cfg.quad_tol;
  for (const std::string& check : cfg.checks) {
    if (check == "santalo") {
      for (const auto& b : corpus)
        add_task([&, check]() {
          return std::vector{verify_santalo_lebesgue(b.hrep, b.id)};
        });
    } else if (check == "claim1") {
      for (const auto& b : corpus)
        for (const auto& mu : measures)
          for (int axis = 0; axis < cfg.dim; ++axis)
            add_task([&, axis]() {
              SteinerStepReports r = verify_claim1(mu, b.hrep, axis, tol, b.id);
              return std::vector{r.body, r.polar, r.product};
            });
    } else if (check == "chain") {
      for (const auto& b : corpus)
        for (const auto& mu : measures)
          add_task([&]() { return verify_chain(mu, b.hrep, tol, b.id); });
    } else if (check == "main") {
      for (const auto& b : corpus)
        for (const auto& mu : measures)
          add_task([&]() {
            return std::vector{verify_main(mu, b.hrep, tol, b.id)};
          });
    } else if (check == "corollary") {
      for (size_t i = 0; i < corpus.size(); ++i)
        add_task([&, i]() {
          std::uint64_t s = RngStream::derive(cfg.seed, 1000 + i).next_u64();
          return std::vector{verify_corollary_inclusion(
              uncond[i], 10000, s, corpus[i].id + "-uncond")};
        });
    } else if (check == "meyer_pajor") {
      for (size_t i = 0; i < corpus.size(); ++i)
        add_task([&, i]() {
          const HPolytope& K = corpus[i].hrep;
          int axis = static_cast<int>(i) % cfg.dim;
          HPolytope Ko = polar_hrep(K);
          double extent = enclosing_box(polar(K)).hi[axis];
          std::vector<VerificationReport> out;
          int zi = 0;
          for (double frac : {0.0, 0.45, 0.9}) {
            std::uint64_t s =
                RngStream::derive(cfg.seed, 2000 + 8 * i + zi++).next_u64();
            out.push_back(verify_meyer_pajor(K, axis, frac * extent, 10000, s,
                                             corpus[i].id, &Ko));
          }
          return out;
        });
    } else if (check == "prop8") {
      for (size_t i = 0; i + 1 < uncond.size(); i += 2)
        for (const auto& mu : measures)
          add_task([&, i]() {
            std::string pid = corpus[i].id + "+" + corpus[i + 1].id;
            return std::vector{
                verify_prop8(mu, uncond[i], uncond[i + 1], tol, 100, pid)};
          });
    } else if (check == "ball_logconcavity") {
      for (const auto& mu : measures)
        add_task([&]() {
          std::vector<double> grid;
          for (int k = 0; k < 9; ++k) grid.push_back(-1.0 + 0.25 * k);
          return std::vector{verify_ball_logconcavity(mu, grid, tol)};
        });
    }
  }

  run_items(cfg.jobs, tasks);
  for (auto& s : slots)
    result.reports.insert(result.reports.end(), s.begin(), s.end());

  std::sort(result.reports.begin(), result.reports.end(),
            [](const VerificationReport& a, const VerificationReport& b) {
              return std::tie(a.body_id, a.measure_id, a.inequality_id,
                              a.context) < std::tie(b.body_id, b.measure_id,
                                                    b.inequality_id, b.context);
            });

  std::map<std::string, std::pair<int, int>> tally;  // check -> (pass, total)
  for (const auto& r : result.reports) {
    std::string check = r.inequality_id.substr(0, r.inequality_id.find('.'));
    auto& t = tally[check];
    ++t.second;
    if (r.passed)
      ++t.first;
    else
      result.all_passed = false;
  }
  for (const auto& [check, t] : tally) {
    std::ostringstream os;
    os << check << ": " << t.first << "/" << t.second << " passed";
    result.summary.push_back(os.str());
  }
  return result;
}

std::string run_sweep_csv(const ExperimentConfig& cfg) {
  if (cfg.sweep.kind != "radius" && cfg.sweep.kind != "ball_growth")
    throw ConfigError("sweep.kind must be 'radius' or 'ball_growth'");
  if (cfg.sweep.grid.empty()) throw ConfigError("sweep.grid is empty");
  LogConcaveMeasure mu = make_measure(cfg.sweep.measure, cfg.dim);

  std::ostringstream os;
  if (cfg.sweep.kind == "radius") {
    // P_mu(rB) = mu(rB) mu(B/r): dilations change the product
    os << "r,value,err\n";
    for (double r : cfg.sweep.grid) {
      if (r <= 0) throw ConfigError("sweep radii must be positive");
      VolumeEstimate a = ball_measure(mu, r, cfg.quad_tol);
      VolumeEstimate b = ball_measure(mu, 1.0 / r, cfg.quad_tol);
      VolumeEstimate p = multiply_estimates(a, b);
      os << format_double(r) << ',' << format_double(p.value) << ','
         << format_double(p.err) << '\n';
    }
  } else {
    os << "t,log_mass,err\n";
    for (double t : cfg.sweep.grid) {
      VolumeEstimate m = ball_measure(mu, std::exp(t), cfg.quad_tol);
      os << format_double(t) << ',' << format_double(std::log(m.value)) << ','
         << format_double(m.err / m.value) << '\n';
    }
  }
  return os.str();
}

}  // namespace santalo
