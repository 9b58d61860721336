#include "nclp/json_io.hpp"

#include <sstream>

namespace nclp {

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& js) {
  const int rows = static_cast<int>(js.size());
  const int cols = rows ? static_cast<int>(js.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = Complex(js.at(r).at(c).at(0).get<double>(), js.at(r).at(c).at(1).get<double>());
  return m;
}

std::string monomial_key(const std::array<int, 3>& e) {
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 3; ++k) {
    if (e[k] == 0) continue;
    if (!first) os << " ";
    os << names[k];
    if (e[k] > 1) os << "^" << e[k];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::array<int, 3> monomial_from_key(const std::string& key) {
  std::array<int, 3> e{0, 0, 0};
  std::istringstream is(key);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    const char v = tok[0];
    const int idx = (v == 'x') ? 0 : (v == 'y') ? 1 : (v == 'z') ? 2 : -1;
    if (idx < 0) throw std::invalid_argument("bloch cfm: bad monomial key '" + key + "'");
    int deg = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) deg = std::stoi(tok.substr(caret + 1));
    e[idx] += deg;
  }
  return e;
}

}  // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const AlgebraDescriptor& alg) {
  return Json{{"dims", alg.block_dims}, {"weights", alg.trace_weights}};
}

Json to_json(const AlgebraElement& x) {
  Json blocks = Json::array();
  for (const auto& b : x.blocks) blocks.push_back(matrix_to_json(b));
  return Json{{"blocks", std::move(blocks)}};
}

Json to_json(const LpElement& xi) {
  return Json{{"p", xi.p}, {"element", to_json(xi.element)}};
}

Json to_json(const JordanMono& j) {
  Json slots = Json::array();
  for (const auto& s : j.slots)
    slots.push_back(Json{{"src", s.src_block},
                         {"dst", s.dst_block},
                         {"offset", s.offset},
                         {"mode", s.mode == SlotMode::Mult ? "MULT" : "ANTI"}});
  return Json{{"source", to_json(j.source)},
              {"target", to_json(j.target)},
              {"slots", std::move(slots)},
              {"conjugator", to_json(j.conjugator)}};
}

Json to_json(const Superop& op) {
  return Json{{"domain", to_json(op.domain)},
              {"codomain", to_json(op.codomain)},
              {"basis", "trace-orthonormal matrix units, block-major row-major"},
              {"matrix", matrix_to_json(op.mat)}};
}

Json to_json(const YeadonTriple& t) {
  return Json{{"kind", "yeadon"}, {"p", t.p},      {"w", to_json(t.w)},
              {"B", to_json(t.B)}, {"jordan", to_json(t.jordan)}};
}

Json to_json(const TypicalTriple& t) {
  return Json{{"kind", "typical"},
              {"p", t.p},
              {"w", to_json(t.w)},
              {"jordan", to_json(t.jordan)},
              {"projection", to_json(t.projection.op)}};
}

Json to_json(const LpMap& t) {
  return Json{{"p", t.p},
              {"domain", to_json(t.op.domain)},
              {"codomain", to_json(t.op.codomain)},
              {"matrix", matrix_to_json(t.op.mat)}};
}

Json to_json(const BlochCFM& rho) {
  Json poly = Json::object();
  for (const auto& [e, coef] : rho.odd_poly) poly[monomial_key(e)] = coef;
  return Json{{"c", rho.c}, {"odd_poly", std::move(poly)}, {"p", rho.p}};
}

Complex complex_from_json(const Json& js) {
  return Complex(js.at(0).get<double>(), js.at(1).get<double>());
}

AlgebraDescriptor descriptor_from_json(const Json& js) {
  return AlgebraDescriptor(js.at("dims").get<std::vector<int>>(),
                           js.at("weights").get<std::vector<double>>());
}

AlgebraElement element_from_json(const Json& js, const AlgebraDescriptor& alg) {
  std::vector<Matrix> blocks;
  for (const auto& b : js.at("blocks")) blocks.push_back(matrix_from_json(b));
  return AlgebraElement(alg, std::move(blocks));
}

LpElement lp_element_from_json(const Json& js, const AlgebraDescriptor& alg) {
  return LpElement(element_from_json(js.at("element"), alg), js.at("p").get<double>());
}

JordanMono jordan_from_json(const Json& js) {
  const AlgebraDescriptor src = descriptor_from_json(js.at("source"));
  const AlgebraDescriptor dst = descriptor_from_json(js.at("target"));
  std::vector<JordanSlot> slots;
  for (const auto& s : js.at("slots"))
    slots.push_back({s.at("src").get<int>(), s.at("dst").get<int>(), s.at("offset").get<int>(),
                     s.at("mode").get<std::string>() == "ANTI" ? SlotMode::Anti : SlotMode::Mult});
  return JordanMono(src, dst, std::move(slots), element_from_json(js.at("conjugator"), dst));
}

Superop superop_from_json(const Json& js) {
  return Superop(descriptor_from_json(js.at("domain")), descriptor_from_json(js.at("codomain")),
                 matrix_from_json(js.at("matrix")));
}

YeadonTriple yeadon_from_json(const Json& js) {
  JordanMono j = jordan_from_json(js.at("jordan"));
  YeadonTriple t{element_from_json(js.at("w"), j.target), element_from_json(js.at("B"), j.target),
                 std::move(j), js.at("p").get<double>()};
  return t;
}

TypicalTriple typical_from_json(const Json& js) {
  JordanMono j = jordan_from_json(js.at("jordan"));
  PositiveProjection p;
  p.parent = j.target;
  p.jordan = j;
  p.op = superop_from_json(js.at("projection"));
  return TypicalTriple{element_from_json(js.at("w"), j.target), std::move(j), std::move(p),
                       js.at("p").get<double>()};
}

LpMap lp_map_from_json(const Json& js) {
  LpMap t;
  t.p = js.at("p").get<double>();
  t.op = Superop(descriptor_from_json(js.at("domain")), descriptor_from_json(js.at("codomain")),
                 matrix_from_json(js.at("matrix")));
  return t;
}

BlochCFM bloch_from_json(const Json& js) {
  BlochCFM rho;
  rho.c = js.at("c").get<double>();
  rho.p = js.at("p").get<double>();
  for (const auto& [key, val] : js.at("odd_poly").items())
    rho.odd_poly[monomial_from_key(key)] = val.get<double>();
  rho.validate();
  return rho;
}

}  // namespace nclp
