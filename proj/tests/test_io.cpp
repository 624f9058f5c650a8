#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "santalo/bodyfile.hpp"
#include "santalo/config.hpp"
#include "santalo/rng.hpp"

using namespace santalo;

TEST_CASE("text documents parse keys, lists and comments") {
  TextDoc doc = parse_textdoc(
      "# header comment\n"
      "dim = 2\n"
      "name = example\n"
      "grid = [0.5, 1, 2]\n"
      "rows = [\n"
      "  [1, 0],\n"
      "  [0, 1],\n"
      "]\n"
      "measures = [gaussian(1, 2), lebesgue_box(3)]\n");
  CHECK(doc.get("dim").as_integer("dim") == 2);
  CHECK(doc.get("name").scalar == "example");
  CHECK(doc.get("grid").items.size() == 3);
  Matrix rows = value_to_matrix(doc.get("rows"), "rows");
  CHECK(rows(1, 1) == 1.0);
  // parenthesized items keep their inner commas
  CHECK(doc.get("measures").items.size() == 2);
  CHECK(doc.get("measures").items[0].scalar == "gaussian(1, 2)");

  CHECK_THROWS_AS(parse_textdoc("a = [1, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_textdoc("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_textdoc("just a line\n"), ConfigError);
}

TEST_CASE("body files round-trip bit-exactly") {
  VPolytope V = random_symmetric_polytope(3, 7, 321);
  BodyDocument doc = make_document(V);
  std::string text = body_document_text(doc);
  BodyDocument back = parse_body_document(text);
  REQUIRE(back.kind == BodyDocument::Kind::VPoly);
  REQUIRE(back.rows.rows() == doc.rows.rows());
  for (int i = 0; i < doc.rows.rows(); ++i)
    for (int j = 0; j < doc.rows.cols(); ++j)
      CHECK(back.rows(i, j) == doc.rows(i, j));  // exact decimal round-trip

  // and the reconstructed body is the same object
  VPolytope W(back.rows, true);
  CHECK(approx_equal(V, W, 0.0));
}

TEST_CASE("ball and composite documents") {
  BodyDocument ball = make_ball_document(3, 1.25);
  BodyDocument back = parse_body_document(body_document_text(ball));
  CHECK(back.kind == BodyDocument::Kind::Ball);
  CHECK(back.radius == 1.25);
  CHECK(back.dim == 3);

  std::string composite =
      "dim = 2\n"
      "kind = oracle-composite\n"
      "op = geometric_mean\n"
      "left.kind = hpoly\n"
      "left.rows = [[1, 0], [-1, 0], [0, 1], [0, -1]]\n"
      "right.kind = vpoly\n"
      "right.rows = [[1, 0], [-1, 0], [0, 1], [0, -1]]\n";
  BodyDocument comp = parse_body_document(composite);
  REQUIRE(comp.kind == BodyDocument::Kind::OracleComposite);
  REQUIRE((comp.left && comp.right));
  CHECK(comp.left->kind == BodyDocument::Kind::HPoly);
  CHECK(comp.right->kind == BodyDocument::Kind::VPoly);
  // writer round-trip
  BodyDocument comp2 = parse_body_document(body_document_text(comp));
  CHECK(comp2.right->rows == comp.right->rows);

  CHECK_THROWS_AS(parse_body_document("dim = 2\nkind = blob\n"), ConfigError);
}

TEST_CASE("measure specs parse and broadcast") {
  MeasureSpec g = parse_measure_spec("gaussian(1, 2)");
  CHECK(g.kind == "gaussian");
  REQUIRE(g.params.size() == 2);
  CHECK(g.params[1] == 2.0);

  LogConcaveMeasure mu = make_measure(parse_measure_spec("gaussian(2)"), 3);
  CHECK(mu.dim == 3);
  CHECK(mu.params[2] == 2.0);

  LogConcaveMeasure lb = make_measure(parse_measure_spec("lebesgue_box(3)"), 2);
  CHECK(*lb.total_mass == doctest::Approx(36.0));

  LogConcaveMeasure ub = make_measure(parse_measure_spec("uniform_body(1)"), 2);
  CHECK(*ub.total_mass == doctest::Approx(4.0));

  CHECK_THROWS_AS(make_measure(parse_measure_spec("cauchy(1)"), 2), ConfigError);
  CHECK_THROWS_AS(parse_measure_spec("gaussian(a)"), ConfigError);
}

TEST_CASE("experiment configs parse and validate") {
  ExperimentConfig cfg = parse_config(
      "dim = 2\n"
      "seed = 42\n"
      "corpus.count = 5\n"
      "corpus.vertex_pairs = 4\n"
      "measures = [gaussian(1), lebesgue_box(3)]\n"
      "checks = [santalo, main]\n"
      "quad_tol = 1e-6\n"
      "mc_samples = 100000\n"
      "out = results\n");
  cfg.validate();
  CHECK(cfg.dim == 2);
  CHECK(cfg.seed == 42);
  CHECK(cfg.corpus.count == 5);
  CHECK(cfg.measures.size() == 2);
  CHECK(cfg.checks.size() == 2);
  CHECK(cfg.out_dir == "results");

  // invalid dimension
  ExperimentConfig bad = cfg;
  bad.dim = 9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // empty corpus
  ExperimentConfig empty = cfg;
  empty.corpus.count = 0;
  CHECK_THROWS_WITH_AS(empty.validate(), "empty corpus", ConfigError);

  // unknown check
  ExperimentConfig unk = cfg;
  unk.checks.push_back("frobnicate");
  CHECK_THROWS_AS(unk.validate(), ConfigError);

  // quadrature checks cap at dim 4, exact ones go to 6
  ExperimentConfig five = cfg;
  five.dim = 5;
  five.corpus.vertex_pairs = 6;
  CHECK_THROWS_AS(five.validate(), ConfigError);
  five.checks = {"santalo"};
  five.measures.clear();
  five.validate();

  CHECK_THROWS_AS(parse_config("dim = 2\nbogus_key = 1\n"), ConfigError);
}
