#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "rtrop/error.hpp"
#include "rtrop/json_io.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/subdivision.hpp"
#include "rtrop/tropcurve.hpp"

namespace rtrop::svg {

using io::RenderSpec;

namespace detail {

struct Box {
  Rational xmin, ymin, xmax, ymax;

  bool contains(const Point2& p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

inline Rational floor_q(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(q);
}

inline Rational ceil_q(const Rational& r) { return -floor_q(-r); }

inline Box resolve_box(const RenderSpec& spec, std::vector<Point2> pts, const Rational& margin, bool integral) {
  if (spec.has_box) {
    const Box b{spec.box[0], spec.box[1], spec.box[2], spec.box[3]};
    if (b.xmin >= b.xmax || b.ymin >= b.ymax) fail(ErrorCode::EmptyBox, "render box is empty");
    return b;
  }
  if (pts.empty()) return {Rational(-2), Rational(-2), Rational(2), Rational(2)};
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    if (p.x < b.xmin) b.xmin = p.x;
    if (p.y < b.ymin) b.ymin = p.y;
    if (p.x > b.xmax) b.xmax = p.x;
    if (p.y > b.ymax) b.ymax = p.y;
  }
  b.xmin -= margin;
  b.ymin -= margin;
  b.xmax += margin;
  b.ymax += margin;
  if (integral) {
    b.xmin = floor_q(b.xmin);
    b.ymin = floor_q(b.ymin);
    b.xmax = ceil_q(b.xmax);
    b.ymax = ceil_q(b.ymax);
  }
  return b;
}

/// Exact Liang-Barsky clipping of p + t*d, t in [0, t_hi] (t_hi absent for
/// a ray), against the box.
inline std::optional<std::pair<Point2, Point2>> clip(const Box& b, const Point2& p, const Point2& d,
                                                     std::optional<Rational> t_hi) {
  Rational lo = 0;
  std::optional<Rational> hi = std::move(t_hi);
  auto edge = [&](const Rational& q, const Rational& dir, bool lower) {
    // lower: p + t*dir >= q, otherwise p + t*dir <= q (p already subtracted in q)
    if (dir == 0) return lower ? q <= 0 : q >= 0;
    const Rational t = q / dir;
    const bool entering = lower ? dir > 0 : dir < 0;
    if (entering) {
      if (t > lo) lo = t;
    } else if (!hi || t < *hi) {
      hi = t;
    }
    return true;
  };
  if (!edge(b.xmin - p.x, d.x, true) || !edge(b.xmax - p.x, d.x, false) || !edge(b.ymin - p.y, d.y, true) ||
      !edge(b.ymax - p.y, d.y, false))
    return std::nullopt;
  if (!hi || lo > *hi) return std::nullopt;
  if (lo == *hi && !(d.x == 0 && d.y == 0)) return std::nullopt;
  return std::pair{Point2{p.x + lo * d.x, p.y + lo * d.y}, Point2{p.x + *hi * d.x, p.y + *hi * d.y}};
}

class Writer {
 public:
  Writer(const Box& b, const Rational& scale) : box_(b), scale_(scale) {}

  std::string x(const Rational& v) const { return to_fixed((v - box_.xmin) * scale_, 3); }
  std::string y(const Rational& v) const { return to_fixed((box_.ymax - v) * scale_, 3); }
  std::string width() const { return to_fixed((box_.xmax - box_.xmin) * scale_, 3); }
  std::string height() const { return to_fixed((box_.ymax - box_.ymin) * scale_, 3); }

  void header(const std::string& title) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width() << "\" height=\""
         << height() << "\" viewBox=\"0 0 " << width() << ' ' << height() << "\">\n"
         << "<title>" << title << "</title>\n"
         << "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" << width() << "\" height=\"" << height()
         << "\" fill=\"white\"/>\n";
  }

  void axes() {
    std::ostringstream body;
    if (box_.ymin <= 0 && box_.ymax >= 0)
      body << "<line id=\"axis-x\" x1=\"" << x(box_.xmin) << "\" y1=\"" << y(0) << "\" x2=\"" << x(box_.xmax)
           << "\" y2=\"" << y(0) << "\"/>\n";
    if (box_.xmin <= 0 && box_.xmax >= 0)
      body << "<line id=\"axis-y\" x1=\"" << x(0) << "\" y1=\"" << y(box_.ymin) << "\" x2=\"" << x(0)
           << "\" y2=\"" << y(box_.ymax) << "\"/>\n";
    group("axes", "stroke=\"#b0b0b0\" stroke-width=\"1\"", body.str());
  }

  void group(const char* id, const char* attrs, const std::string& body) {
    if (body.empty()) return;
    out_ << "<g id=\"" << id << "\" " << attrs << ">\n" << body << "</g>\n";
  }

  std::string line(const std::string& id, const Point2& a, const Point2& b, const std::string& extra = "") const {
    std::ostringstream s;
    s << "<line id=\"" << id << "\" x1=\"" << x(a.x) << "\" y1=\"" << y(a.y) << "\" x2=\"" << x(b.x) << "\" y2=\""
      << y(b.y) << '"' << extra << "/>\n";
    return s.str();
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  const Box& box() const { return box_; }

 private:
  Box box_;
  Rational scale_;
  std::ostringstream out_;
};

inline std::string stroke(std::int64_t weight) { return " stroke-width=\"" + std::to_string(2 * weight) + "\""; }

inline Point2 as_point(const LatticePoint& p) { return {Rational(p.x), Rational(p.y)}; }

}  // namespace detail

/// Chart in the modulus plane: vertices as dots, segments and rays as lines
/// clipped to the box, stroke width proportional to the weight; weights
/// above one are labelled.
inline std::string render_chart(const Chart& c, const RenderSpec& spec = {}) {
  using namespace detail;
  std::vector<Point2> pts = c.vertices;
  for (const auto& s : c.segments) {
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  for (const auto& r : c.rays) pts.push_back(r.base);
  Writer w(resolve_box(spec, pts, Rational(1), true), spec.scale);
  w.header("chart " + c.sign_index.str());
  w.axes();
  std::ostringstream segs, rays, dots, labels;
  auto label = [&](const std::string& id, const Point2& a, const Point2& b, std::int64_t weight) {
    if (!spec.labels || weight <= 1) return;
    const Point2 m{(a.x + b.x) / 2, (a.y + b.y) / 2};
    labels << "<text id=\"" << id << "\" x=\"" << w.x(m.x) << "\" y=\"" << w.y(m.y) << "\">" << weight << "</text>\n";
  };
  for (std::size_t i = 0; i < c.segments.size(); ++i) {
    const auto& s = c.segments[i];
    const Point2 d{s.b.x - s.a.x, s.b.y - s.a.y};
    if (auto cl = clip(w.box(), s.a, d, Rational(1))) {
      segs << w.line("s" + std::to_string(i), cl->first, cl->second, stroke(s.weight));
      label("ls" + std::to_string(i), cl->first, cl->second, s.weight);
    }
  }
  for (std::size_t i = 0; i < c.rays.size(); ++i) {
    const auto& r = c.rays[i];
    if (auto cl = clip(w.box(), r.base, as_point(r.direction), std::nullopt)) {
      rays << w.line("r" + std::to_string(i), cl->first, cl->second, stroke(r.weight));
      label("lr" + std::to_string(i), cl->first, cl->second, r.weight);
    }
  }
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const auto& v = c.vertices[i];
    if (!w.box().contains(v)) continue;
    dots << "<circle id=\"v" << i << "\" cx=\"" << w.x(v.x) << "\" cy=\"" << w.y(v.y) << "\" r=\"3\"/>\n";
  }
  w.group("segments", "stroke=\"black\" stroke-linecap=\"round\"", segs.str());
  w.group("rays", "stroke=\"black\" stroke-linecap=\"round\"", rays.str());
  w.group("vertices", "fill=\"black\"", dots.str());
  w.group("labels", "font-family=\"monospace\" font-size=\"10\" fill=\"#a00000\"", labels.str());
  return w.finish();
}

/// Marked subdivision of the Newton polygon: cell outlines, marked points
/// filled, unmarked points hollow, and (when signed) a sign label per point.
inline std::string render_subdivision(const MarkedSubdivision& t, const RenderSpec& spec = {}) {
  using namespace detail;
  std::vector<Point2> pts;
  for (const auto& p : t.support) pts.push_back(as_point(p));
  Writer w(resolve_box(spec, pts, Rational(1, 2), false), spec.scale);
  w.header(t.is_signed() ? "subdivision " + t.signs.str() : "subdivision");
  std::ostringstream cells, points, labels;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    cells << "<polygon id=\"c" << i << "\" points=\"";
    const auto& vs = t.cells[i].vertices;
    for (std::size_t k = 0; k < vs.size(); ++k)
      cells << (k ? " " : "") << w.x(vs[k].x) << ',' << w.y(vs[k].y);
    cells << "\"/>\n";
  }
  const auto marked = marked_points(t);
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    const auto p = as_point(t.support[i]);
    if (!w.box().contains(p)) continue;
    const bool filled = std::binary_search(marked.begin(), marked.end(), i);
    points << "<circle id=\"p" << i << "\" cx=\"" << w.x(p.x) << "\" cy=\"" << w.y(p.y) << "\" r=\"4\" fill=\""
           << (filled ? "black" : "white") << "\"/>\n";
    if (spec.labels && t.is_signed())
      labels << "<text id=\"t" << i << "\" x=\"" << w.x(p.x + Rational(1, 8)) << "\" y=\""
             << w.y(p.y + Rational(1, 8)) << "\">" << (t.signs[i] > 0 ? '+' : '-') << "</text>\n";
  }
  w.group("cells", "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"", cells.str());
  w.group("points", "stroke=\"black\" stroke-width=\"1.5\"", points.str());
  w.group("signs", "font-family=\"monospace\" font-size=\"12\"", labels.str());
  return w.finish();
}

}  // namespace rtrop::svg
