#pragma once

#include <memory>
#include <string>

#include "santalo/bodies.hpp"

namespace santalo {

// One body per file. kind in {hpoly, vpoly, ball, oracle-composite}; `rows`
// carries normals (hpoly) or vertices (vpoly); `radius` is for balls;
// oracle-composite nests two polytopal children under left./right. prefixes
// with an `op` tag (geometric_mean). Decimal round-trips are exact at 17
// significant digits.
struct BodyDocument {
  enum class Kind { HPoly, VPoly, Ball, OracleComposite };
  Kind kind = Kind::HPoly;
  int dim = 0;
  Matrix rows;
  double radius = 1.0;
  std::string op;
  std::shared_ptr<BodyDocument> left, right;
};

BodyDocument parse_body_document(const std::string& text);
BodyDocument read_body_file(const std::string& path);
std::string body_document_text(const BodyDocument& doc);
void write_body_file(const std::string& path, const BodyDocument& doc);

BodyDocument make_document(const HPolytope& H);
BodyDocument make_document(const VPolytope& V);
BodyDocument make_ball_document(int dim, double radius);

// hpoly directly, vpoly through facet enumeration; throws for ball/composite
HPolytope document_to_hpolytope(const BodyDocument& doc);

}  // namespace santalo
