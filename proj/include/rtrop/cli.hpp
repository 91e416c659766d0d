#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rtrop/bergman.hpp"
#include "rtrop/json_io.hpp"
#include "rtrop/oriented_matroid.hpp"
#include "rtrop/singular.hpp"
#include "rtrop/svg.hpp"
#include "rtrop/tropcurve.hpp"

namespace rtrop::cli {

using io::json;

/// Subcommand names with their one-line descriptions.
inline const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"circuits", "signed circuits of the oriented matroid of a matrix"},
      {"axioms", "check the oriented-matroid circuit axioms"},
      {"topes", "topes of the oriented matroid"},
      {"covector", "decide whether a sign vector is a covector"},
      {"initial", "circuits of the initial matroid for given weights"},
      {"bergman", "membership of (signs, weights) in the signed Bergman fan"},
      {"sflags", "test a flag, or list all s-flags"},
      {"subdivide", "signed marked subdivision of a polynomial"},
      {"chart", "one chart of the real tropical curve"},
      {"charts", "all four charts of the real tropical curve"},
      {"singular-member", "membership in the singular family"},
      {"classify", "classify the singular point at the origin"},
  };
  return table;
}

struct Invocation {
  std::string command;
  std::string input = "-";
  std::string svg_path;
  std::string chart = "++";
  bool verify = false;
};

namespace detail {

using io::InputError;
using io::ProblemFile;
using io::ProblemKind;

inline void require_kind(const ProblemFile& pf, std::initializer_list<ProblemKind> kinds, const std::string& cmd) {
  if (std::find(kinds.begin(), kinds.end(), pf.kind) == kinds.end())
    throw InputError("/kind", "command '" + cmd + "' does not accept kind '" + std::string(io::to_string(pf.kind)) + "'");
}

inline OrientedMatroid matroid_of(const ProblemFile& pf) {
  if (pf.matrix) return circuits_from_matrix(*pf.matrix);
  OrientedMatroid m;
  m.ground_size = *pf.ground_size;
  for (const auto& c : *pf.circuits)
    if (c.size() != m.ground_size) fail(ErrorCode::LengthMismatch, "circuit length differs from ground_size");
  m.circuits = normalize_circuits(*pf.circuits);
  return m;
}

inline RealTropPoly poly_of(const ProblemFile& pf) { return {*pf.support, *pf.signs, *pf.lifts}; }

inline SignVector chart_sign(const std::string& text) {
  if (text != "++" && text != "+-" && text != "-+" && text != "--")
    throw InputError("", "--chart must be one of ++, +-, -+, --");
  return SignVector::parse(text);
}

inline void write_svg(const std::string& path, const std::string& doc) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("", "cannot write SVG to '" + path + "'");
  f << doc;
}

inline json execute(const Invocation& inv, const ProblemFile& pf) {
  using K = ProblemKind;
  const auto& cmd = inv.command;
  if (cmd == "circuits") {
    require_kind(pf, {K::Matrix}, cmd);
    ProblemFile::require(pf.matrix, "matrix");
    return io::strings_json(matroid_of(pf).circuits);
  }
  if (cmd == "axioms") {
    require_kind(pf, {K::Matrix}, cmd);
    OrientedMatroid m;
    if (pf.circuits) {
      m.ground_size = *pf.ground_size;
      m.circuits = *pf.circuits;
    } else {
      m = matroid_of(pf);
    }
    const auto r = validate_circuit_axioms(m.circuits, m.ground_size);
    json out{{"ok", r.ok}};
    out["axiom"] = r.ok ? json(nullptr) : json(r.axiom);
    out["witness"] = io::strings_json(r.witness);
    return out;
  }
  if (cmd == "topes") {
    require_kind(pf, {K::Matrix}, cmd);
    ProblemFile::require(pf.matrix, "matrix");
    return io::strings_json(topes(matroid_of(pf)));
  }
  if (cmd == "covector") {
    require_kind(pf, {K::Matrix}, cmd);
    ProblemFile::require(pf.matrix, "matrix");
    const auto w = is_covector(matroid_of(pf), ProblemFile::require(pf.vector, "vector"));
    json out{{"covector", w.has_value()}};
    if (w) {
      out["witness"] = json::array();
      for (const auto& x : *w) out["witness"].push_back(io::to_json(x));
    }
    return out;
  }
  if (cmd == "initial") {
    require_kind(pf, {K::Matrix}, cmd);
    const auto& w = ProblemFile::require(pf.weights, "weights");
    const auto m = matroid_of(pf);
    if (w.size() != m.ground_size) throw InputError("/weights", "one weight per element expected");
    return io::strings_json(initial_matroid(m, w).circuits);
  }
  if (cmd == "bergman") {
    require_kind(pf, {K::Matrix}, cmd);
    ProblemFile::require(pf.matrix, "matrix");
    const auto& s = ProblemFile::require(pf.signs, "signs");
    const auto& w = ProblemFile::require(pf.weights, "weights");
    const auto r = bergman_membership(matroid_of(pf), s, w, BergmanOptions{inv.verify});
    json out{{"member", r.member}};
    if (r.verified)
      out["routes"] = {{"initial", r.route_initial}, {"circuits", r.route_circuits}, {"flag", r.route_flag}};
    return out;
  }
  if (cmd == "sflags") {
    require_kind(pf, {K::Matrix}, cmd);
    ProblemFile::require(pf.matrix, "matrix");
    const auto m = matroid_of(pf);
    const auto& s = ProblemFile::require(pf.signs, "signs");
    if (pf.flag) return json{{"s_flag", is_s_flag(m, *pf.flag, s)}};
    json flags = json::array();
    for (const auto& f : enumerate_s_flags(m, s)) flags.push_back(io::to_json(f));
    return json{{"flags", flags}};
  }
  if (cmd == "subdivide") {
    require_kind(pf, {K::Polynomial, K::Singular}, cmd);
    const auto f = poly_of(pf);
    const auto t = signed_subdivision(f, chart_sign(inv.chart));
    write_svg(inv.svg_path, svg::render_subdivision(t, pf.options));
    return io::to_json(t);
  }
  if (cmd == "chart") {
    require_kind(pf, {K::Polynomial, K::Singular}, cmd);
    const auto c = compute_chart(poly_of(pf), chart_sign(inv.chart));
    write_svg(inv.svg_path, svg::render_chart(c, pf.options));
    return io::to_json(c);
  }
  if (cmd == "charts") {
    require_kind(pf, {K::Polynomial, K::Singular}, cmd);
    json out = json::array();
    const auto charts = compute_charts(poly_of(pf));
    for (const auto& c : charts) out.push_back(io::to_json(c));
    if (!inv.svg_path.empty()) {
      const auto group = klein_group();
      const auto v = chart_sign(inv.chart);
      const auto idx = static_cast<std::size_t>(std::find(group.begin(), group.end(), v) - group.begin());
      write_svg(inv.svg_path, svg::render_chart(charts[idx], pf.options));
    }
    return out;
  }
  if (cmd == "singular-member") {
    require_kind(pf, {K::Singular, K::Polynomial}, cmd);
    const auto st = build_singular_setup(*pf.support);
    return json{{"member", singsat_membership(st, *pf.signs, *pf.lifts, BergmanOptions{inv.verify})}};
  }
  if (cmd == "classify") {
    require_kind(pf, {K::Singular, K::Polynomial}, cmd);
    const auto st = build_singular_setup(*pf.support);
    const auto c = classify_singularity(st, *pf.signs, *pf.lifts);
    if (!inv.svg_path.empty())
      write_svg(inv.svg_path, svg::render_chart(compute_chart(poly_of(pf), SignVector::parse("++")), pf.options));
    return io::to_json(c);
  }
  throw InputError("", "unknown command '" + cmd + "'");
}

inline std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("", "cannot read input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. JSON results and
/// error objects go to `out`; exit status 0 on success, 1 on a domain error,
/// 2 on malformed input or arguments.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact signed Bergman fans and real plane tropical curves", "rtrop"};
  app.require_subcommand(1, 1);
  Invocation inv;
  for (const auto& [name, description] : commands()) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("input", inv.input, "problem file (JSON); '-' reads standard input");
    sub->add_option("--svg", inv.svg_path, "write an SVG rendering to this path");
    sub->add_option("--chart", inv.chart, "chart index: ++, +-, -+ or --");
    sub->add_flag("--verify", inv.verify, "cross-check all membership routes");
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << io::error_json(ErrorCode::MalformedInput, e.what(), std::string("")).dump(2) << "\n";
    err << "rtrop: " << e.what() << "\n";
    return 2;
  }
  for (auto* sub : app.get_subcommands()) inv.command = sub->get_name();
  try {
    const auto pf = io::parse_problem_text(detail::read_all(inv.input, in));
    out << detail::execute(inv, pf).dump(2) << "\n";
    return 0;
  } catch (const io::InputError& e) {
    out << io::error_json(ErrorCode::MalformedInput, e.what(), e.path()).dump(2) << "\n";
    err << "rtrop: malformed input at '" << e.path() << "': " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedInput) {
      out << io::error_json(e.code(), e.what(), std::string("")).dump(2) << "\n";
      err << "rtrop: " << e.what() << "\n";
      return 2;
    }
    out << io::error_json(e.code(), e.what()).dump(2) << "\n";
    err << "rtrop: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rtrop::cli
