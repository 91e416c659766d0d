#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtrop/bergman.hpp"
#include "rtrop/error.hpp"
#include "rtrop/oriented_matroid.hpp"
#include "rtrop/rational.hpp"
#include "rtrop/singular.hpp"
#include "rtrop/subdivision.hpp"
#include "rtrop/tropcurve.hpp"

namespace rtrop::io {

using nlohmann::json;
using rtrop::to_string;

/// Malformed input, located by a JSON pointer into the problem document.
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what)
      : Error(ErrorCode::MalformedInput, what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct RenderSpec {
  std::array<Rational, 4> box{};  // xmin, ymin, xmax, ymax
  bool has_box = false;           // otherwise derived from the drawing
  Rational scale{40};             // pixels per unit
  bool labels = true;
};

enum class ProblemKind { Matrix, Polynomial, Singular };

inline std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::Matrix: return "matrix";
    case ProblemKind::Polynomial: return "polynomial";
    case ProblemKind::Singular: return "singular";
  }
  return "?";
}

/// Parsed problem document. Which optional fields are required depends on
/// the kind and the command; `require_*` reports a missing one with its path.
struct ProblemFile {
  ProblemKind kind = ProblemKind::Matrix;
  std::optional<QMatrix> matrix;
  std::optional<Support> support;
  std::optional<SignVector> signs;
  std::optional<QVector> lifts;
  std::optional<SignVector> vector;
  std::optional<QVector> weights;
  std::optional<std::vector<SignVector>> circuits;
  std::optional<std::size_t> ground_size;
  std::optional<FlagOfFlats> flag;
  RenderSpec options;

  template <class T>
  static const T& require(const std::optional<T>& field, const char* name) {
    if (!field) throw InputError(std::string("/") + name, std::string("missing required field '") + name + "'");
    return *field;
  }
};

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw InputError(child(path, key), std::string("missing required field '") + key + "'");
  return obj.at(key);
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

inline Rational read_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    if (auto r = parse_rational(j.get<std::string>())) return *r;
    throw InputError(path, "expected a rational \"p/q\"");
  }
  throw InputError(path, "expected an integer or a rational string");
}

inline std::int64_t read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline QVector read_rationals(const json& j, const std::string& path) {
  QVector out;
  const auto& a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_rational(a[i], child(path, i)));
  return out;
}

inline SignVector read_signs(const json& j, const std::string& path, bool pure) {
  if (!j.is_string()) throw InputError(path, "expected a sign string");
  const auto text = j.get<std::string>();
  for (char c : text)
    if (c != '+' && c != '-' && (pure || c != '0'))
      throw InputError(path, pure ? "signs must be a string over \"+-\"" : "sign vector must be over \"+-0\"");
  return SignVector::parse(text);
}

inline Support read_support(const json& j, const std::string& path) {
  Support out;
  const auto& a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto p = child(path, i);
    if (!a[i].is_array() || a[i].size() != 2) throw InputError(p, "expected a point [x, y]");
    out.push_back({read_int(a[i][0], child(p, 0)), read_int(a[i][1], child(p, 1))});
  }
  return out;
}

inline QMatrix read_matrix(const json& j, const std::string& path) {
  const auto& a = array_at(j, path);
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows.push_back(read_rationals(a[i], child(path, i)));
    if (rows.back().size() != rows.front().size()) throw InputError(child(path, i), "rows differ in length");
  }
  if (rows.empty() || rows.front().empty()) throw InputError(path, "matrix must be nonempty");
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < rows[i].size(); ++c) m(i, c) = rows[i][c];
  return m;
}

inline RenderSpec read_options(const json& j, const std::string& path) {
  RenderSpec spec;
  if (!j.is_object()) throw InputError(path, "expected an object");
  if (j.contains("box")) {
    const auto p = child(path, "box");
    const auto box = read_rationals(j.at("box"), p);
    if (box.size() != 4) throw InputError(p, "box needs four entries xmin, ymin, xmax, ymax");
    for (std::size_t i = 0; i < 4; ++i) spec.box[i] = box[i];
    spec.has_box = true;
  }
  if (j.contains("scale")) {
    spec.scale = read_rational(j.at("scale"), child(path, "scale"));
    if (spec.scale <= 0) throw InputError(child(path, "scale"), "scale must be positive");
  }
  if (j.contains("labels")) {
    if (!j.at("labels").is_boolean()) throw InputError(child(path, "labels"), "expected a boolean");
    spec.labels = j.at("labels").get<bool>();
  }
  return spec;
}

}  // namespace detail

inline ProblemFile parse_problem(const json& j) {
  using namespace detail;
  if (!j.is_object()) throw InputError("", "problem must be a JSON object");
  ProblemFile pf;
  const auto& kind = field(j, "", "kind");
  if (!kind.is_string()) throw InputError("/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "matrix") pf.kind = ProblemKind::Matrix;
  else if (k == "polynomial") pf.kind = ProblemKind::Polynomial;
  else if (k == "singular") pf.kind = ProblemKind::Singular;
  else throw InputError("/kind", "kind must be matrix, polynomial or singular");

  if (pf.kind == ProblemKind::Matrix) {
    if (!j.contains("circuits")) pf.matrix = read_matrix(field(j, "", "matrix"), "/matrix");
    else if (j.contains("matrix")) pf.matrix = read_matrix(j.at("matrix"), "/matrix");
  } else {
    pf.support = read_support(field(j, "", "support"), "/support");
    pf.signs = read_signs(field(j, "", "signs"), "/signs", true);
    pf.lifts = read_rationals(field(j, "", "lifts"), "/lifts");
    if (pf.signs->size() != pf.support->size()) throw InputError("/signs", "one sign per support point expected");
    if (pf.lifts->size() != pf.support->size()) throw InputError("/lifts", "one lift per support point expected");
  }
  if (pf.kind == ProblemKind::Matrix && j.contains("signs")) pf.signs = read_signs(j.at("signs"), "/signs", true);
  if (j.contains("vector")) pf.vector = read_signs(j.at("vector"), "/vector", false);
  if (j.contains("weights")) pf.weights = read_rationals(j.at("weights"), "/weights");
  if (j.contains("circuits")) {
    const auto& a = array_at(j.at("circuits"), "/circuits");
    std::vector<SignVector> cs;
    for (std::size_t i = 0; i < a.size(); ++i) cs.push_back(read_signs(a[i], child("/circuits", i), false));
    pf.circuits = std::move(cs);
    pf.ground_size = static_cast<std::size_t>(read_int(field(j, "", "ground_size"), "/ground_size"));
  }
  if (j.contains("flag")) {
    const auto& a = array_at(j.at("flag"), "/flag");
    FlagOfFlats flag;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto p = child("/flag", i);
      IndexSet f;
      for (std::size_t t = 0; t < array_at(a[i], p).size(); ++t) {
        const auto v = read_int(a[i][t], child(p, t));
        if (v < 0) throw InputError(child(p, t), "indices are non-negative");
        f.push_back(static_cast<std::size_t>(v));
      }
      flag.flats.push_back(std::move(f));
    }
    pf.flag = std::move(flag);
  }
  if (j.contains("options")) pf.options = read_options(j.at("options"), "/options");
  return pf;
}

inline ProblemFile parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

// ---- output ----------------------------------------------------------------

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(const Point2& p) { return json::array({to_string(p.x), to_string(p.y)}); }
inline json to_json(const LatticePoint& p) { return json::array({p.x, p.y}); }

inline json strings_json(const std::vector<SignVector>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.str());
  std::sort(s.begin(), s.end());
  return s;
}

inline json to_json(const FlagOfFlats& f) {
  json out = json::array();
  for (const auto& x : f.flats) out.push_back(x);
  return out;
}

inline json to_json(const Chart& c) {
  json out;
  out["sign"] = c.sign_index.str();
  out["vertices"] = json::array();
  for (const auto& v : c.vertices) out["vertices"].push_back(to_json(v));
  out["segments"] = json::array();
  for (const auto& s : c.segments) out["segments"].push_back({{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"weight", s.weight}});
  out["rays"] = json::array();
  for (const auto& r : c.rays)
    out["rays"].push_back({{"base", to_json(r.base)}, {"direction", to_json(r.direction)}, {"weight", r.weight}});
  return out;
}

inline Point2 point_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError(path, "expected a point [x, y]");
  return {detail::read_rational(j[0], detail::child(path, 0)), detail::read_rational(j[1], detail::child(path, 1))};
}

/// Inverse of to_json(Chart).
inline Chart chart_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  if (!j.is_object()) throw InputError(path, "chart must be an object");
  Chart c;
  c.sign_index = read_signs(field(j, path, "sign"), child(path, "sign"), true);
  const auto vp = child(path, "vertices");
  const auto& vs = array_at(field(j, path, "vertices"), vp);
  for (std::size_t i = 0; i < vs.size(); ++i) c.vertices.push_back(point_from_json(vs[i], child(vp, i)));
  const auto sp = child(path, "segments");
  const auto& ss = array_at(field(j, path, "segments"), sp);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const auto p = child(sp, i);
    c.segments.push_back({point_from_json(field(ss[i], p, "a"), child(p, "a")),
                          point_from_json(field(ss[i], p, "b"), child(p, "b")),
                          read_int(field(ss[i], p, "weight"), child(p, "weight"))});
  }
  const auto rp = child(path, "rays");
  const auto& rs = array_at(field(j, path, "rays"), rp);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto p = child(rp, i);
    const auto& d = field(rs[i], p, "direction");
    if (!d.is_array() || d.size() != 2) throw InputError(child(p, "direction"), "expected [dx, dy]");
    c.rays.push_back({point_from_json(field(rs[i], p, "base"), child(p, "base")),
                      {read_int(d[0], child(p, "direction/0")), read_int(d[1], child(p, "direction/1"))},
                      read_int(field(rs[i], p, "weight"), child(p, "weight"))});
  }
  return c;
}

inline json to_json(const MarkedSubdivision& t) {
  json out;
  out["cells"] = json::array();
  for (const auto& c : t.cells) {
    json cell;
    cell["vertices"] = json::array();
    for (const auto& v : c.vertices) cell["vertices"].push_back(to_json(v));
    cell["marked"] = c.marked;
    cell["dual"] = to_json(c.dual());
    out["cells"].push_back(cell);
  }
  out["marked"] = marked_points(t);
  if (t.is_signed()) out["signs"] = t.signs.str();
  return out;
}

inline json to_json(const SingularityClass& c) {
  json out;
  out["case"] = std::string(to_string(c.kind));
  out["circuit"] = {{"type", std::string(to_string(c.circuit.tag))}, {"support", c.circuit.support}};
  out["flag_type"] = std::string(1, c.flag.type);
  switch (c.kind) {
    case SingularCase::FourValentVertex: {
      auto weights = c.edge_weights;
      std::sort(weights.begin(), weights.end());
      out["vertex"] = to_json(c.vertex);
      out["edges"] = weights.size();
      out["weights"] = weights;
      break;
    }
    case SingularCase::IsolatedVertexMult3:
      out["vertex"] = to_json(c.vertex);
      out["edges"] = 0;
      out["multiplicity"] = c.multiplicity;
      break;
    default: {
      out["edge_weight"] = c.edge_weight;
      out["direction"] = to_json(c.direction);
      out["vertices"] = json::array();
      for (const auto& v : c.edge_vertices) out["vertices"].push_back(to_json(v));
      out["valences"] = c.valences;
      if (c.midpoint) out["midpoint"] = to_json(*c.midpoint);
      if (c.ray_direction) out["ray_direction"] = to_json(*c.ray_direction);
      if (c.near_end) out["near_end"] = *c.near_end;
    }
  }
  return out;
}

/// {"error": {"type": "MalformedInput" | "DomainError", "code": ..., "message": ..., "path"?: ...}}
inline json error_json(ErrorCode code, const std::string& message, const std::optional<std::string>& path = {}) {
  json e{{"type", code == ErrorCode::MalformedInput ? "MalformedInput" : "DomainError"},
         {"code", std::string(to_string(code))},
         {"message", message}};
  if (path) e["path"] = *path;
  return json{{"error", e}};
}

}  // namespace rtrop::io
