#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "santalo/bodyfile.hpp"
#include "santalo/verify.hpp"

using namespace santalo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("santalo-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args, const fs::path& capture) {
  std::string cmd = std::string(SANTALO_CLI_PATH) + " " + args + " >" +
                    capture.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("verify subcommand: exit codes and the reports artifact") {
  TempDir tmp;
  write(tmp.path / "ok.cfg",
        "dim = 2\n"
        "seed = 42\n"
        "corpus.count = 6\n"
        "corpus.vertex_pairs = 4\n"
        "measures = [gaussian(1)]\n"
        "checks = [santalo, main]\n"
        "out = " + (tmp.path / "results").string() + "\n");

  int rc = run_cli("verify --config " + (tmp.path / "ok.cfg").string(),
                   tmp.path / "out.txt");
  CHECK(rc == 0);
  std::string out = slurp(tmp.path / "out.txt");
  CHECK(out.find("santalo: 6/6 passed") != std::string::npos);
  CHECK(out.find("main: 6/6 passed") != std::string::npos);

  std::string csv = slurp(tmp.path / "results" / "reports.csv");
  CHECK(csv.find(reports_csv_header()) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);  // header + 12 rows

  // determinism: a second run writes the identical artifact
  run_cli("verify --config " + (tmp.path / "ok.cfg").string(),
          tmp.path / "out2.txt");
  CHECK(slurp(tmp.path / "results" / "reports.csv") == csv);

  // config errors exit 1
  write(tmp.path / "bad.cfg", "dim = 9\nchecks = [main]\n");
  CHECK(run_cli("verify --config " + (tmp.path / "bad.cfg").string(),
                tmp.path / "err.txt") == 1);

  write(tmp.path / "empty.cfg",
        "dim = 2\nmeasures = [gaussian(1)]\nchecks = [main]\n");
  CHECK(run_cli("verify --config " + (tmp.path / "empty.cfg").string(),
                tmp.path / "err2.txt") == 1);
  CHECK(slurp(tmp.path / "err2.txt").find("empty corpus") != std::string::npos);

  CHECK(run_cli("verify --config /nonexistent.cfg", tmp.path / "err3.txt") ==
        1);
}

TEST_CASE("symmetrize subcommand preserves volume and reports counts") {
  TempDir tmp;
  // sheared cube
  write(tmp.path / "sheared.body",
        "dim = 2\n"
        "kind = hpoly\n"
        "rows = [[0, 1], [0, -1], [1, -1], [-1, 1]]\n");

  int rc = run_cli("symmetrize " + (tmp.path / "sheared.body").string() +
                       " --axis 1 --out " + tmp.path.string(),
                   tmp.path / "out.txt");
  CHECK(rc == 0);
  std::string out = slurp(tmp.path / "out.txt");
  CHECK(out.find("volume 4 -> 4") != std::string::npos);

  BodyDocument doc = read_body_file((tmp.path / "sheared.s1.body").string());
  HPolytope cube = document_to_hpolytope(doc);
  CHECK(cube.facet_count() == 4);
  CHECK(is_unconditional(cube));

  // full pipeline
  CHECK(run_cli("symmetrize " + (tmp.path / "sheared.body").string() +
                    " --axis all --out " + tmp.path.string(),
                tmp.path / "out2.txt") == 0);
  BodyDocument u = read_body_file((tmp.path / "sheared.uncond.body").string());
  CHECK(is_unconditional(document_to_hpolytope(u)));
}

TEST_CASE("polar, volume and product subcommands") {
  TempDir tmp;
  write(tmp.path / "cube.body",
        "dim = 2\n"
        "kind = hpoly\n"
        "rows = [[1, 0], [-1, 0], [0, 1], [0, -1]]\n");
  write(tmp.path / "ball.body", "dim = 2\nkind = ball\nradius = 1\n");

  CHECK(run_cli("polar " + (tmp.path / "cube.body").string() + " --out " +
                    tmp.path.string(),
                tmp.path / "p.txt") == 0);
  BodyDocument polar_doc =
      read_body_file((tmp.path / "cube.polar.body").string());
  CHECK(polar_doc.kind == BodyDocument::Kind::VPoly);
  CHECK(polar_doc.rows.rows() == 4);

  CHECK(run_cli("volume " + (tmp.path / "cube.body").string(),
                tmp.path / "v.txt") == 0);
  CHECK(slurp(tmp.path / "v.txt").find("4 +- 0") != std::string::npos);

  CHECK(run_cli("product " + (tmp.path / "cube.body").string(),
                tmp.path / "pr.txt") == 0);
  CHECK(slurp(tmp.path / "pr.txt").find("P = 8 +- 0") != std::string::npos);

  // ball: P = kappa_2^2 = pi^2
  CHECK(run_cli("product " + (tmp.path / "ball.body").string(),
                tmp.path / "pb.txt") == 0);
  CHECK(slurp(tmp.path / "pb.txt").find("P = 9.8696") != std::string::npos);

  // measure product: P_mu(cube) under the standard gaussian
  CHECK(run_cli("product " + (tmp.path / "cube.body").string() +
                    " \"gaussian(1)\"",
                tmp.path / "pm.txt") == 0);
  CHECK(slurp(tmp.path / "pm.txt").find("P = 0.1") != std::string::npos);

  CHECK(run_cli("volume /no/such/file.body", tmp.path / "e.txt") == 1);
}

TEST_CASE("sweep subcommand writes the grid CSV") {
  TempDir tmp;
  write(tmp.path / "sweep.cfg",
        "dim = 2\n"
        "sweep.kind = radius\n"
        "sweep.grid = [0.5, 1, 2]\n"
        "sweep.measure = gaussian(1)\n"
        "out = " + (tmp.path / "s").string() + "\n");
  CHECK(run_cli("sweep --config " + (tmp.path / "sweep.cfg").string(),
                tmp.path / "out.txt") == 0);
  std::string csv = slurp(tmp.path / "s" / "sweep.csv");
  CHECK(csv.find("r,value,err") == 0);
  // P_mu(rB) = (1 - e^{-r^2/2})(1 - e^{-1/(2r^2)}) at each grid point
  double expect = (1 - std::exp(-0.125)) * (1 - std::exp(-2.0));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  double r, v;
  sscanf(line.c_str(), "%lf,%lf", &r, &v);
  CHECK(r == 0.5);
  CHECK(v == doctest::Approx(expect).epsilon(1e-10));

  write(tmp.path / "growth.cfg",
        "dim = 2\n"
        "sweep.kind = ball_growth\n"
        "sweep.grid = [-1, 0, 1]\n"
        "sweep.measure = product_exponential(1)\n"
        "out = " + (tmp.path / "g").string() + "\n");
  CHECK(run_cli("sweep --config " + (tmp.path / "growth.cfg").string(),
                tmp.path / "out2.txt") == 0);
  CHECK(slurp(tmp.path / "g" / "sweep.csv").find("t,log_mass,err") == 0);
}
