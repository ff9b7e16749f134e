#include "qsm/io.hpp"

#include <fstream>
#include <sstream>

#include "qsm/errors.hpp"

namespace qsm::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t sizeFrom(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

long longFrom(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer, got " + j.dump());
  return j.get<long>();
}

Integer integerFrom(const Json& j) {
  Rational r = rationalFrom(j);
  if (!r.isInteger()) throw ParseError("expected an integer, got " + j.dump());
  return r.numerator();
}

box::BoxPoint pointFrom(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw ParseError("expected a point of length " + std::to_string(dim));
  box::BoxPoint p;
  for (const auto& v : j) p.push_back(longFrom(v));
  return p;
}

} // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Rational rationalFrom(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json toJson(const Rational& r) { return r.toString(); }

Json coneToJson(const HDescription& h) {
  Json rows = Json::array();
  for (const auto& row : h.rows()) {
    Json coeffs = Json::array();
    for (const auto& c : row.coeffs) coeffs.push_back(toJson(c));
    rows.push_back({{"label", row.label}, {"coeffs", coeffs}});
  }
  return {{"dim", h.dim()}, {"rows", rows}};
}

HDescription coneFromJson(const Json& j) {
  const std::size_t dim = sizeFrom(field(j, "dim"), "dim");
  const Json& rows = field(j, "rows");
  if (!rows.is_array()) throw ParseError("\"rows\" must be an array");
  std::vector<HRow> out;
  for (const auto& r : rows) {
    const Json& label = field(r, "label");
    if (!label.is_string()) throw ParseError("row label must be a string");
    const Json& coeffs = field(r, "coeffs");
    if (!coeffs.is_array()) throw ParseError("row coeffs must be an array");
    QVector c;
    for (const auto& v : coeffs) c.push_back(rationalFrom(v));
    out.push_back({label.get<std::string>(), std::move(c)});
  }
  return HDescription(dim, std::move(out));
}

Json raysToJson(std::size_t dim, const std::vector<Ray>& rays) {
  Json arr = Json::array();
  for (const auto& r : rays) {
    Json v = Json::array();
    for (const auto& x : r.direction()) {
      if (x.fits_slong_p()) v.push_back(x.get_si());
      else v.push_back(x.get_str());
    }
    arr.push_back(v);
  }
  return {{"dim", dim}, {"rays", arr}};
}

std::vector<Ray> raysFromJson(const Json& j) {
  const std::size_t dim = sizeFrom(field(j, "dim"), "dim");
  const Json& rays = field(j, "rays");
  if (!rays.is_array()) throw ParseError("\"rays\" must be an array");
  std::vector<Ray> out;
  for (const auto& r : rays) {
    if (!r.is_array() || r.size() != dim) throw ParseError("ray of the wrong length");
    IntVector v;
    for (const auto& x : r) v.push_back(integerFrom(x));
    out.emplace_back(v);
  }
  return out;
}

Json matrixToJson(const qmet::RawMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.n(); ++k) {
      const auto& v = m.at(i, k);
      if (v.isInteger() && v.numerator().fits_slong_p()) row.push_back(v.numerator().get_si());
      else row.push_back(v.toString());
    }
    rows.push_back(row);
  }
  return {{"n", m.n()}, {"entries", rows}};
}

Json matrixToJson(const qmet::ExponentMatrix& m) { return matrixToJson(m.raw()); }

qmet::RawMatrix matrixFromJson(const Json& j) {
  const std::size_t n = sizeFrom(field(j, "n"), "n");
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != n) throw ParseError("\"entries\" must have n rows");
  std::vector<std::vector<Rational>> grid;
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != n) throw ParseError("every row of \"entries\" must have n entries");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rationalFrom(v));
    grid.push_back(std::move(r));
  }
  return qmet::RawMatrix(std::move(grid));
}

Json oracleToJson(const box::BoxOracle& o) {
  Json pairs = Json::array();
  for (const auto& p : o.domain()) pairs.push_back({p, o(p)});
  return {{"dim", o.dim()}, {"bound", o.bound()}, {"pairs", pairs}};
}

box::BoxOracle oracleFromJson(const Json& j) {
  const std::size_t dim = sizeFrom(field(j, "dim"), "dim");
  const long bound = longFrom(field(j, "bound"));
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw ParseError("\"pairs\" must be an array");
  std::map<box::BoxPoint, box::BoxPoint> mapping;
  for (const auto& pr : pairs) {
    if (!pr.is_array() || pr.size() != 2) throw ParseError("every pair must be [input, output]");
    auto in = pointFrom(pr[0], dim);
    if (!mapping.emplace(in, pointFrom(pr[1], dim)).second)
      throw ParseError("input point " + box::toString(in) + " is listed twice");
  }
  return box::BoxOracle(dim, bound, std::move(mapping), "file");
}

Json checksToJson(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json o{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    arr.push_back(o);
  }
  return arr;
}

Json pointsToJson(const std::vector<box::BoxPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(p);
  return arr;
}

Json elementToJson(const GroupElement& g) {
  Json perm = Json::array();
  for (auto v : g.perm()) perm.push_back(v + 1);
  return {{"cycles", cycleString(g.perm())}, {"transpose", g.transpose()}, {"perm", perm}};
}

Json certificateToJson(const symmetry::LinesCertificate& c) {
  Json lines = Json::array();
  for (const auto& l : c.fingerprint.lines) lines.push_back(l.toString());
  Json counts = Json::array();
  for (const auto& row : c.fingerprint.counts) counts.push_back(row);
  Json elements = Json::array();
  for (const auto& g : c.elements) elements.push_back(elementToJson(g));
  return {{"n", c.n},
          {"order", c.order.get_str()},
          {"elements", elements},
          {"fingerprint",
           {{"lines", lines},
            {"counts", counts},
            {"sameKind", c.fingerprint.sameKind},
            {"crossKind", c.fingerprint.crossKind},
            {"paired", c.fingerprint.paired},
            {"perLine", c.fingerprint.perLine}}},
          {"checks", checksToJson(c.checks)},
          {"condition", c.condition},
          {"lineInvarianceVerified", c.lineInvarianceVerified}};
}

} // namespace qsm::io
