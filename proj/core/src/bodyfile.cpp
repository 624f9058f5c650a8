#include "santalo/bodyfile.hpp"

#include <fstream>
#include <sstream>

#include "santalo/textdoc.hpp"

namespace santalo {

namespace {

BodyDocument::Kind parse_kind(const std::string& s) {
  if (s == "hpoly") return BodyDocument::Kind::HPoly;
  if (s == "vpoly") return BodyDocument::Kind::VPoly;
  if (s == "ball") return BodyDocument::Kind::Ball;
  if (s == "oracle-composite") return BodyDocument::Kind::OracleComposite;
  throw ConfigError("unknown body kind '" + s + "'");
}

std::string kind_name(BodyDocument::Kind k) {
  switch (k) {
    case BodyDocument::Kind::HPoly: return "hpoly";
    case BodyDocument::Kind::VPoly: return "vpoly";
    case BodyDocument::Kind::Ball: return "ball";
    case BodyDocument::Kind::OracleComposite: return "oracle-composite";
  }
  return "?";
}

BodyDocument from_doc(const TextDoc& doc, const std::string& prefix) {
  BodyDocument b;
  b.kind = parse_kind(doc.get(prefix + "kind").scalar);
  if (prefix.empty())
    b.dim = static_cast<int>(doc.get("dim").as_integer("dim"));

  switch (b.kind) {
    case BodyDocument::Kind::HPoly:
    case BodyDocument::Kind::VPoly:
      b.rows = value_to_matrix(doc.get(prefix + "rows"), prefix + "rows");
      if (prefix.empty() && b.rows.cols() != b.dim)
        throw ConfigError("rows do not match dim");
      if (!prefix.empty()) b.dim = static_cast<int>(b.rows.cols());
      break;
    case BodyDocument::Kind::Ball:
      b.radius = doc.get(prefix + "radius").as_number(prefix + "radius");
      if (b.radius <= 0) throw ConfigError("ball radius must be positive");
      break;
    case BodyDocument::Kind::OracleComposite: {
      if (!prefix.empty())
        throw ConfigError("oracle-composite bodies cannot nest");
      b.op = doc.get("op").scalar;
      if (b.op != "geometric_mean")
        throw ConfigError("unknown composite op '" + b.op + "'");
      b.left = std::make_shared<BodyDocument>(from_doc(doc, "left."));
      b.right = std::make_shared<BodyDocument>(from_doc(doc, "right."));
      if (b.left->dim != b.dim || b.right->dim != b.dim)
        throw ConfigError("composite children do not match dim");
      break;
    }
  }
  return b;
}

}  // namespace

BodyDocument parse_body_document(const std::string& text) {
  TextDoc doc = parse_textdoc(text);
  return from_doc(doc, "");
}

BodyDocument read_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open body file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_body_document(buf.str());
}

std::string body_document_text(const BodyDocument& doc) {
  std::ostringstream os;
  os << "dim = " << doc.dim << "\n";
  os << "kind = " << kind_name(doc.kind) << "\n";
  switch (doc.kind) {
    case BodyDocument::Kind::HPoly:
    case BodyDocument::Kind::VPoly:
      os << "rows = " << format_matrix_rows(doc.rows, "") << "\n";
      break;
    case BodyDocument::Kind::Ball:
      os << "radius = " << format_double(doc.radius) << "\n";
      break;
    case BodyDocument::Kind::OracleComposite:
      os << "op = " << doc.op << "\n";
      for (const auto& [tag, child] :
           {std::pair{"left", doc.left}, std::pair{"right", doc.right}}) {
        os << tag << ".kind = " << kind_name(child->kind) << "\n";
        os << tag << ".rows = " << format_matrix_rows(child->rows, "") << "\n";
      }
      break;
  }
  return os.str();
}

void write_body_file(const std::string& path, const BodyDocument& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << body_document_text(doc);
}

BodyDocument make_document(const HPolytope& H) {
  BodyDocument d;
  d.kind = BodyDocument::Kind::HPoly;
  d.dim = H.dim();
  d.rows = H.normals();
  return d;
}

BodyDocument make_document(const VPolytope& V) {
  BodyDocument d;
  d.kind = BodyDocument::Kind::VPoly;
  d.dim = V.dim();
  d.rows = V.vertices();
  return d;
}

BodyDocument make_ball_document(int dim, double radius) {
  BodyDocument d;
  d.kind = BodyDocument::Kind::Ball;
  d.dim = dim;
  d.radius = radius;
  return d;
}

HPolytope document_to_hpolytope(const BodyDocument& doc) {
  switch (doc.kind) {
    case BodyDocument::Kind::HPoly:
      return HPolytope(doc.rows, true);
    case BodyDocument::Kind::VPoly:
      return to_hrep(VPolytope(doc.rows, true));
    default:
      throw ConfigError("body kind '" + kind_name(doc.kind) +
                        "' has no H-representation");
  }
}

}  // namespace santalo
