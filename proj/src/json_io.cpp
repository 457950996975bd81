#include "prony2d/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prony2d/error.hpp"

namespace prony2d::io {

namespace {

void write_number(double v, std::string& out) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Format, "non-finite number cannot be serialized");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      write_number(j.get<double>(), out);
      break;
    default:
      out += j.dump();
  }
}

Json pair(double a, double b) { return Json::array({a, b}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Format, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::Format, std::string("field \"") + key + "\" is not an array");
  return a;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw Error(ErrorKind::Format, what + " is not a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Format, what + " is not an integer");
  return j.get<int>();
}

std::pair<double, double> number_pair(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Format, what + " is not a pair");
  return {number(j[0], what), number(j[1], what)};
}

Json multiplicities(const MultiplicityMap& mm) {
  Json a = Json::array();
  for (const auto& e : mm.entries) a.push_back({{"x", e.x}, {"t", e.t}});
  return a;
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, out);
  out += '\n';
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const Polygon& P) {
  Json v = Json::array();
  for (const auto& p : P.vertices()) v.push_back(pair(p.x, p.y));
  return {{"vertices", v}};
}

Json to_json(const SampleSet& s) {
  Json points = Json::array(), values = Json::array();
  for (const auto& [p, v] : s) {
    points.push_back(Json::array({p.m, p.n}));
    values.push_back(pair(v.real(), v.imag()));
  }
  return {{"points", points}, {"values", values}};
}

Json to_json(const SlopeSet& s) {
  Json a = Json::array();
  for (const auto& d : s.slopes()) a.push_back(pair(d.x, d.y));
  return {{"slopes", a}};
}

Json to_json(const ExpPoly2D& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) {
    Json grid = Json::array();
    for (std::size_t a = 0; a < t.p.dim(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < t.p.dim(); ++b) row.push_back(pair(t.p.coeff(a, b).real(), t.p.coeff(a, b).imag()));
      grid.push_back(row);
    }
    terms.push_back({{"x", t.freq.x}, {"y", t.freq.y}, {"coeffs", grid}});
  }
  return {{"degree_bound", f.degree_bound}, {"terms", terms}};
}

Json to_json(const RecoveryReport& r) {
  return {{"result", to_json(r.result)},
          {"residual", r.residual},
          {"candidates_tried", r.candidates_tried},
          {"multiplicities", multiplicities(r.multiplicities)}};
}

Json to_json(const UniquenessReport& r) {
  return {{"set", r.set_name},
          {"set_size", r.set_size},
          {"max_difference", r.max_difference},
          {"argmax", Json::array({r.argmax.m, r.argmax.n})},
          {"tolerance", r.tolerance},
          {"verdict", verdict_name(r.verdict)}};
}

Polygon polygon_from_json(const Json& j) {
  std::vector<Vec2> v;
  for (const auto& p : array_field(j, "vertices")) {
    const auto [x, y] = number_pair(p, "vertex");
    v.push_back({x, y});
  }
  return validate_polygon(std::move(v));
}

SampleSet samples_from_json(const Json& j) {
  const Json& points = array_field(j, "points");
  const Json& values = array_field(j, "values");
  if (points.size() != values.size())
    throw Error(ErrorKind::Format, std::to_string(points.size()) + " points but " + std::to_string(values.size()) +
                                       " values");
  SampleSet s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Json& p = points[i];
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Format, "point is not a pair");
    const LatticePoint lp{integer(p[0], "point"), integer(p[1], "point")};
    if (s.contains(lp))
      throw Error(ErrorKind::Format, "duplicate point (" + std::to_string(lp.m) + "," + std::to_string(lp.n) + ")");
    const auto [re, im] = number_pair(values[i], "value");
    s.set(lp, {re, im});
  }
  return s;
}

SlopeSet slopes_from_json(const Json& j) {
  std::vector<Vec2> dirs;
  for (const auto& d : array_field(j, "slopes")) {
    const auto [x, y] = number_pair(d, "slope");
    dirs.push_back({x, y});
  }
  return SlopeSet(dirs);
}

ExpPoly2D exppoly_from_json(const Json& j) {
  ExpPoly2D f;
  f.degree_bound = integer(field(j, "degree_bound"), "degree_bound");
  if (f.degree_bound < 1) throw Error(ErrorKind::Format, "degree_bound must be >= 1");
  const auto dim = static_cast<std::size_t>(f.degree_bound);
  for (const auto& t : array_field(j, "terms")) {
    Term2D term{make_freq(number(field(t, "x"), "x"), number(field(t, "y"), "y")), Poly2D(dim)};
    const Json& grid = array_field(t, "coeffs");
    if (grid.size() > dim) throw Error(ErrorKind::Format, "coefficient grid exceeds degree_bound");
    for (std::size_t a = 0; a < grid.size(); ++a) {
      if (!grid[a].is_array() || grid[a].size() > dim) throw Error(ErrorKind::Format, "bad coefficient row");
      for (std::size_t b = 0; b < grid[a].size(); ++b) {
        const auto [re, im] = number_pair(grid[a][b], "coefficient");
        term.p.coeff(a, b) = {re, im};
      }
    }
    f.terms.push_back(std::move(term));
  }
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Format, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Format, "cannot write " + path);
}

}  // namespace prony2d::io
