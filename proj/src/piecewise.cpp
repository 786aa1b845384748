#include "proxkit/piecewise.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "proxkit/errors.hpp"

namespace proxkit {

namespace {

struct Piece {
  bool infinite = false;
  Vec coeffs;  // sum_i coeffs[i] * x^i

  double value(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
  }
  double deriv(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;) v = v * x + double(i) * coeffs[i];
    return v;
  }
};

struct PiecewiseFn {
  Vec breakpoints;
  std::vector<Piece> pieces;

  std::size_t piece_left_of(double x) const {
    std::size_t k = 0;
    while (k < breakpoints.size() && breakpoints[k] < x) ++k;
    return k;
  }

  bool at_breakpoint(double x, std::size_t* idx) const {
    for (std::size_t k = 0; k < breakpoints.size(); ++k)
      if (x == breakpoints[k]) {
        *idx = k;
        return true;
      }
    return false;
  }

  ExtReal eval(double x) const {
    std::size_t bp;
    if (at_breakpoint(x, &bp)) {
      // lsc convention at a jump: take the lower one-sided limit
      const Piece& l = pieces[bp];
      const Piece& r = pieces[bp + 1];
      double lv = l.infinite ? std::numeric_limits<double>::infinity() : l.value(x);
      double rv = r.infinite ? std::numeric_limits<double>::infinity() : r.value(x);
      double v = std::min(lv, rv);
      return std::isfinite(v) ? ExtReal(v) : ExtReal::infinity();
    }
    const Piece& p = pieces[piece_left_of(x)];
    if (p.infinite) return ExtReal::infinity();
    return ExtReal(p.value(x));
  }

  GeneratorSet subdiff(double x) const {
    std::size_t bp;
    if (!at_breakpoint(x, &bp)) {
      const Piece& p = pieces[piece_left_of(x)];
      if (p.infinite) throw eval_infinite("subdifferential on an infinite piece");
      return {Vec{p.deriv(x)}};
    }
    const Piece& l = pieces[bp];
    const Piece& r = pieces[bp + 1];
    double lv = l.infinite ? std::numeric_limits<double>::infinity() : l.value(x);
    double rv = r.infinite ? std::numeric_limits<double>::infinity() : r.value(x);
    if (!std::isfinite(lv) && !std::isfinite(rv))
      throw eval_infinite("subdifferential at an infinite breakpoint");
    if (!std::isfinite(lv)) return {Vec{r.deriv(x)}};
    if (!std::isfinite(rv)) return {Vec{l.deriv(x)}};
    double tol = 1e-9 * (1.0 + std::abs(lv) + std::abs(rv));
    if (std::abs(lv - rv) <= tol) {
      double dl = l.deriv(x), dr = r.deriv(x);
      if (dl == dr) return {Vec{dl}};
      return {Vec{dl}, Vec{dr}};
    }
    return {Vec{lv < rv ? l.deriv(x) : r.deriv(x)}};
  }
};

}  // namespace

FunctionOracle parse_piecewise_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw spec_parse_error(std::string("invalid JSON: ") + e.what());
  }
  auto fail = [](const std::string& field, const std::string& msg) -> Error {
    return spec_parse_error("field '" + field + "': " + msg);
  };
  if (!j.is_object()) throw spec_parse_error("top level must be an object");
  if (!j.contains("breakpoints") || !j["breakpoints"].is_array())
    throw fail("breakpoints", "required array of numbers");
  if (!j.contains("pieces") || !j["pieces"].is_array())
    throw fail("pieces", "required array of piece objects");

  PiecewiseFn fn;
  for (const auto& b : j["breakpoints"]) {
    if (!b.is_number()) throw fail("breakpoints", "entries must be numbers");
    fn.breakpoints.push_back(b.get<double>());
  }
  for (std::size_t k = 1; k < fn.breakpoints.size(); ++k)
    if (!(fn.breakpoints[k - 1] < fn.breakpoints[k]))
      throw fail("breakpoints", "must be strictly increasing");

  for (std::size_t k = 0; k < j["pieces"].size(); ++k) {
    const auto& pj = j["pieces"][k];
    std::string where = "pieces[" + std::to_string(k) + "]";
    if (!pj.is_object()) throw fail(where, "must be an object");
    Piece p;
    if (pj.value("infinite", false)) {
      p.infinite = true;
    } else {
      if (!pj.contains("coeffs") || !pj["coeffs"].is_array())
        throw fail(where + ".coeffs", "required array of numbers");
      for (const auto& c : pj["coeffs"]) {
        if (!c.is_number()) throw fail(where + ".coeffs", "entries must be numbers");
        p.coeffs.push_back(c.get<double>());
      }
      if (p.coeffs.empty()) throw fail(where + ".coeffs", "must not be empty");
    }
    fn.pieces.push_back(std::move(p));
  }
  if (fn.pieces.size() != fn.breakpoints.size() + 1)
    throw fail("pieces", "need exactly breakpoints.size() + 1 pieces, got " +
                             std::to_string(fn.pieces.size()));
  bool any_finite = false;
  for (const auto& p : fn.pieces) any_finite |= !p.infinite;
  if (!any_finite) throw fail("pieces", "function must be finite somewhere (proper)");

  Box domain = Box::cube(1, -16.0, 16.0);
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      throw fail("domain", "must be [lower, upper]");
    double lo = d[0].get<double>(), up = d[1].get<double>();
    if (!(lo < up)) throw fail("domain", "lower must be < upper");
    domain = Box(Vec{lo}, Vec{up});
  }

  FunctionOracle f;
  f.dim = 1;
  f.tag = Smoothness::Lsc;
  f.domain = domain;
  f.id = "pw:" + j.value("name", std::string("anonymous"));
  f.eval = [fn](const Vec& x) { return fn.eval(x[0]); };
  f.subdiff = [fn](const Vec& x) { return fn.subdiff(x[0]); };
  return f;
}

FunctionOracle load_piecewise_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_parse_error("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_piecewise_json(ss.str());
}

}  // namespace proxkit
