#include "santalo/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace santalo {

namespace {

const std::vector<std::string> kChecks = {
    "santalo", "claim1", "chain",            "main",
    "corollary", "meyer_pajor", "prop8", "ball_logconcavity"};

// quadrature-backed checks cap at dim 4; the rest are exact/sampling only
bool quadrature_backed(const std::string& check) {
  return check == "claim1" || check == "chain" || check == "main" ||
         check == "prop8" || check == "ball_logconcavity";
}

}  // namespace

const std::vector<std::string>& known_checks() { return kChecks; }

MeasureSpec parse_measure_spec(const std::string& text) {
  MeasureSpec spec;
  spec.text = text;
  size_t open = text.find('(');
  if (open == std::string::npos) {
    spec.kind = text;
    return spec;
  }
  if (text.back() != ')')
    throw ConfigError("measure spec '" + text + "': unbalanced parentheses");
  spec.kind = text.substr(0, open);
  std::string args = text.substr(open + 1, text.size() - open - 2);
  std::istringstream in(args);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = tok.find_last_not_of(" \t");
    std::string num = tok.substr(a, b - a + 1);
    char* end = nullptr;
    double v = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0')
      throw ConfigError("measure spec '" + text + "': bad parameter '" + num +
                        "'");
    spec.params.push_back(v);
  }
  return spec;
}

LogConcaveMeasure make_measure(const MeasureSpec& spec, int dim) {
  auto broadcast = [&](double fallback) {
    Vector p(dim);
    if (spec.params.empty()) {
      p.setConstant(fallback);
    } else if (spec.params.size() == 1) {
      p.setConstant(spec.params[0]);
    } else if (static_cast<int>(spec.params.size()) == dim) {
      for (int i = 0; i < dim; ++i) p[i] = spec.params[i];
    } else {
      throw ConfigError("measure '" + spec.text + "': expected 1 or " +
                        std::to_string(dim) + " parameters");
    }
    return p;
  };

  if (spec.kind == "gaussian") return make_gaussian(broadcast(1.0));
  if (spec.kind == "product_exponential")
    return make_product_exponential(broadcast(1.0));
  if (spec.kind == "lebesgue_box") {
    Vector hw = broadcast(3.0);
    Box b;
    b.hi = hw;
    b.lo = -hw;
    return make_lebesgue(b);
  }
  if (spec.kind == "uniform_body") {
    Vector hw = broadcast(1.0);
    Box b;
    b.hi = hw;
    b.lo = -hw;
    Matrix A = Matrix::Zero(2 * dim, dim);
    for (int i = 0; i < dim; ++i) {
      A(2 * i, i) = 1.0 / hw[i];
      A(2 * i + 1, i) = -1.0 / hw[i];
    }
    return make_uniform_on_body(HPolytope(A, true));
  }
  throw ConfigError("unknown measure kind '" + spec.kind + "'");
}

void ExperimentConfig::validate() const {
  if (dim < 2) throw ConfigError("dim must be at least 2");
  if (corpus.count < 0 || corpus.vertex_pairs < 0)
    throw ConfigError("corpus counts must be nonnegative");

  bool needs_corpus = false, needs_measures = false, quad = false;
  for (const std::string& c : checks) {
    if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end())
      throw ConfigError("unknown check '" + c + "'");
    if (c != "ball_logconcavity") needs_corpus = true;
    if (c != "santalo" && c != "corollary" && c != "meyer_pajor")
      needs_measures = true;
    if (quadrature_backed(c)) quad = true;
    if (c == "prop8" && dim > 3)
      throw ConfigError("prop8 requires dim <= 3");
  }
  if (checks.empty()) throw ConfigError("no checks requested");
  if (quad && dim > 4)
    throw ConfigError("dim " + std::to_string(dim) +
                      " exceeds the quadrature cap of 4");
  if (dim > kMaxExactDim)
    throw ConfigError("dim " + std::to_string(dim) + " exceeds the exact cap of " +
                      std::to_string(kMaxExactDim));
  if (needs_corpus && corpus.count <= 0 && corpus.files.empty())
    throw ConfigError("empty corpus");
  if (corpus.count > 0 && corpus.vertex_pairs < dim)
    throw ConfigError("corpus.vertex_pairs must be at least dim");
  if (needs_measures && measures.empty())
    throw ConfigError("requested checks need at least one measure");
  if (quad_tol <= 0 || quad_tol > 0.1)
    throw ConfigError("quad_tol out of range (0, 0.1]");
  if (mc_samples < 1000) throw ConfigError("mc_samples must be >= 1000");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

ExperimentConfig parse_config(const std::string& text) {
  TextDoc doc = parse_textdoc(text);
  ExperimentConfig cfg;

  for (const auto& [key, value] : doc.entries) {
    if (key == "dim") cfg.dim = static_cast<int>(value.as_integer(key));
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(value.as_integer(key));
    else if (key == "corpus.count")
      cfg.corpus.count = static_cast<int>(value.as_integer(key));
    else if (key == "corpus.vertex_pairs")
      cfg.corpus.vertex_pairs = static_cast<int>(value.as_integer(key));
    else if (key == "corpus.files") {
      for (const auto& f : value.as_list(key))
        cfg.corpus.files.push_back(f.scalar);
    } else if (key == "measures") {
      for (const auto& m : value.as_list(key))
        cfg.measures.push_back(parse_measure_spec(m.scalar));
    } else if (key == "checks") {
      for (const auto& c : value.as_list(key)) cfg.checks.push_back(c.scalar);
    } else if (key == "quad_tol")
      cfg.quad_tol = value.as_number(key);
    else if (key == "mc_samples")
      cfg.mc_samples = value.as_integer(key);
    else if (key == "out")
      cfg.out_dir = value.scalar;
    else if (key == "jobs")
      cfg.jobs = static_cast<int>(value.as_integer(key));
    else if (key == "sweep.kind")
      cfg.sweep.kind = value.scalar;
    else if (key == "sweep.grid") {
      for (const auto& g : value.as_list(key))
        cfg.sweep.grid.push_back(g.as_number(key));
    } else if (key == "sweep.measure")
      cfg.sweep.measure = parse_measure_spec(value.scalar);
    else
      throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace santalo
