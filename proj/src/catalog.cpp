#include "proxkit/catalog.hpp"

#include <cmath>

#include "proxkit/errors.hpp"
#include "proxkit/transforms.hpp"

namespace proxkit {

namespace {

constexpr double kWindow = 16.0;
// Normal-cone rays at the boundary of an indicator's interval cannot be a
// finite generator set; they are truncated at this length. Checks filter
// generators by |v - vbar| < eps, so truncation only matters for certificates
// aimed at the cone itself.
constexpr double kRayCap = 1024.0;

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

FunctionOracle fn_abs() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 1;
  f.id = "abs";
  f.tag = Smoothness::Convex;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(std::abs(x[0])); };
  f.subdiff = [](const Vec& x) -> GeneratorSet {
    if (x[0] == 0.0) return {Vec{-1.0}, Vec{1.0}};
    return {Vec{sgn(x[0])}};
  };
  return f;
}

FunctionOracle fn_quad() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 1;
  f.id = "quad";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(0.5 * x[0] * x[0]); };
  f.grad = [](const Vec& x) { return Vec{x[0]}; };
  f.subdiff = [](const Vec& x) -> GeneratorSet { return {Vec{x[0]}}; };
  return f;
}

FunctionOracle fn_linear() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 1;
  f.id = "linear";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(x[0]); };
  f.grad = [](const Vec&) { return Vec{1.0}; };
  f.subdiff = [](const Vec&) -> GeneratorSet { return {Vec{1.0}}; };
  return f;
}

FunctionOracle fn_neg_linear() {
  FunctionOracle f = fn_linear();
  f.id = "neg_linear";
  f.eval = [](const Vec& x) { return ExtReal(-x[0]); };
  f.grad = [](const Vec&) { return Vec{-1.0}; };
  f.subdiff = [](const Vec&) -> GeneratorSet { return {Vec{-1.0}}; };
  return f;
}

FunctionOracle fn_huber() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 1;
  f.id = "huber";
  f.tag = Smoothness::C1;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) {
    double a = std::abs(x[0]);
    return ExtReal(a <= 1.0 ? 0.5 * x[0] * x[0] : a - 0.5);
  };
  f.grad = [](const Vec& x) { return Vec{std::clamp(x[0], -1.0, 1.0)}; };
  f.subdiff = [](const Vec& x) -> GeneratorSet { return {Vec{std::clamp(x[0], -1.0, 1.0)}}; };
  return f;
}

FunctionOracle fn_neg_abs() {
  FunctionOracle f;
  f.dim = 1;
  f.id = "neg_abs";
  f.tag = Smoothness::Lsc;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(-std::abs(x[0])); };
  f.subdiff = [](const Vec& x) -> GeneratorSet {
    // Limiting subdifferential: gradient limits from both sides at the kink.
    if (x[0] == 0.0) return {Vec{-1.0}, Vec{1.0}};
    return {Vec{-sgn(x[0])}};
  };
  return f;
}

FunctionOracle fn_huberizable() {
  FunctionOracle f;
  f.dim = 1;
  f.id = "huberizable";
  f.tag = Smoothness::Lsc;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(0.5 * x[0] * x[0] - std::abs(x[0])); };
  f.subdiff = [](const Vec& x) -> GeneratorSet {
    if (x[0] == 0.0) return {Vec{-1.0}, Vec{1.0}};
    return {Vec{x[0] - sgn(x[0])}};
  };
  return f;
}

FunctionOracle fn_double_well() {
  FunctionOracle f;
  f.dim = 1;
  f.id = "double_well";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) {
    double t = x[0] * x[0];
    return ExtReal(t * t - 2.0 * t);
  };
  f.grad = [](const Vec& x) { return Vec{4.0 * x[0] * x[0] * x[0] - 4.0 * x[0]}; };
  f.subdiff = [](const Vec& x) -> GeneratorSet {
    return {Vec{4.0 * x[0] * x[0] * x[0] - 4.0 * x[0]}};
  };
  return f;
}

FunctionOracle fn_neg_quad() {
  FunctionOracle f;
  f.dim = 1;
  f.id = "neg_quad";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(-0.5 * x[0] * x[0]); };
  f.grad = [](const Vec& x) { return Vec{-x[0]}; };
  f.subdiff = [](const Vec& x) -> GeneratorSet { return {Vec{-x[0]}}; };
  return f;
}

FunctionOracle fn_neg_quartic() {
  FunctionOracle f;
  f.dim = 1;
  f.id = "neg_quartic";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) {
    double t = x[0] * x[0];
    return ExtReal(-t * t);
  };
  f.grad = [](const Vec& x) { return Vec{-4.0 * x[0] * x[0] * x[0]}; };
  f.subdiff = [](const Vec& x) -> GeneratorSet { return {Vec{-4.0 * x[0] * x[0] * x[0]}}; };
  return f;
}

FunctionOracle fn_indicator_unit_interval() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 1;
  f.id = "indicator_unit_interval";
  f.tag = Smoothness::Convex;
  f.domain = Box::cube(1, -kWindow, kWindow);
  f.eval = [](const Vec& x) {
    return std::abs(x[0]) <= 1.0 ? ExtReal(0.0) : ExtReal::infinity();
  };
  f.subdiff = [](const Vec& x) -> GeneratorSet {
    if (std::abs(x[0]) < 1.0) return {Vec{0.0}};
    if (std::abs(x[0]) == 1.0) return {Vec{0.0}, Vec{kRayCap * sgn(x[0])}};
    throw eval_infinite("indicator subdifferential outside its interval");
  };
  return f;
}

FunctionOracle fn_quad2d() {
  FunctionOracle f;
  f.convex = true;
  f.dim = 2;
  f.id = "quad2d";
  f.tag = Smoothness::C2;
  f.domain = Box::cube(2, -kWindow, kWindow);
  f.eval = [](const Vec& x) { return ExtReal(0.5 * (x[0] * x[0] + x[1] * x[1])); };
  f.grad = [](const Vec& x) { return x; };
  f.subdiff = [](const Vec& x) -> GeneratorSet { return {x}; };
  return f;
}

ParametrizedOracle par_lambda_abs(bool positive_only) {
  ParametrizedOracle p;
  p.x_dim = 1;
  p.lambda_dim = 1;
  p.x_domain = Box::cube(1, -kWindow, kWindow);
  p.lambda_domain = positive_only ? Box(Vec{0.25}, Vec{4.0}) : Box(Vec{-4.0}, Vec{4.0});
  p.id = positive_only ? "lambda_abs_pos" : "lambda_abs";
  p.eval = [](const Vec& x, const Vec& lam) { return ExtReal(lam[0] * std::abs(x[0])); };
  p.subdiff_x = [](const Vec& x, const Vec& lam) -> GeneratorSet {
    double l = lam[0];
    if (x[0] != 0.0) return {Vec{l * sgn(x[0])}};
    if (l == 0.0) return {Vec{0.0}};
    return {Vec{-std::abs(l)}, Vec{std::abs(l)}};
  };
  return p;
}

ParametrizedOracle par_lambda_neg_abs() {
  ParametrizedOracle p;
  p.x_dim = 1;
  p.lambda_dim = 1;
  p.x_domain = Box::cube(1, -kWindow, kWindow);
  p.lambda_domain = Box(Vec{0.25}, Vec{4.0});
  p.id = "lambda_neg_abs";
  p.eval = [](const Vec& x, const Vec& lam) { return ExtReal(-lam[0] * std::abs(x[0])); };
  p.subdiff_x = [](const Vec& x, const Vec& lam) -> GeneratorSet {
    double l = lam[0];
    if (x[0] != 0.0) return {Vec{-l * sgn(x[0])}};
    return {Vec{-std::abs(l)}, Vec{std::abs(l)}};
  };
  return p;
}

ParametrizedOracle par_shifted_quad() {
  ParametrizedOracle p;
  p.x_dim = 1;
  p.lambda_dim = 1;
  p.x_domain = Box::cube(1, -kWindow, kWindow);
  p.lambda_domain = Box(Vec{-2.0}, Vec{2.0});
  p.id = "shifted_quad";
  p.eval = [](const Vec& x, const Vec& lam) {
    double d = x[0] - lam[0];
    return ExtReal(0.5 * d * d);
  };
  p.subdiff_x = [](const Vec& x, const Vec& lam) -> GeneratorSet {
    return {Vec{x[0] - lam[0]}};
  };
  return p;
}

ParametrizedOracle par_pa_quad_abs() {
  ParametrizedOracle p;
  p.x_dim = 1;
  p.lambda_dim = 1;
  p.x_domain = Box::cube(1, -kWindow, kWindow);
  p.lambda_domain = Box(Vec{0.02}, Vec{0.98});
  p.id = "pa_quad_abs";
  p.eval = [](const Vec& x, const Vec& lam) {
    return ExtReal(pa_quad_abs_value(x[0], lam[0]));
  };
  p.subdiff_x = [](const Vec& x, const Vec& lam) -> GeneratorSet {
    return {Vec{pa_quad_abs_deriv(x[0], lam[0])}};
  };
  return p;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto addf = [&](FunctionOracle f, bool convex, bool pr_everywhere, bool not_pr0,
                  bool prox_bounded, std::optional<double> threshold,
                  std::optional<KnownParams> params, std::string note) {
    CatalogEntry e;
    e.id = f.id;
    e.oracle = std::move(f);
    e.convex = convex;
    e.prox_regular_everywhere = pr_everywhere;
    e.not_prox_regular_at_0 = not_pr0;
    e.prox_bounded = prox_bounded;
    e.threshold = threshold;
    e.pr_params = params;
    e.note = std::move(note);
    c.push_back(std::move(e));
  };
  auto addp = [&](ParametrizedOracle f, bool convex, std::optional<KnownParams> params,
                  std::string note) {
    CatalogEntry e;
    e.id = f.id;
    e.oracle = std::move(f);
    e.convex = convex;
    e.prox_regular_everywhere = convex;
    e.prox_bounded = true;
    e.pr_params = params;
    e.note = std::move(note);
    c.push_back(std::move(e));
  };

  addf(fn_abs(), true, true, false, true, 0.0, KnownParams{1.0, 0.0},
       "convex piecewise linear; subgradient inequality holds globally with r = 0");
  addf(fn_quad(), true, true, false, true, 0.0, KnownParams{1.0, 0.0},
       "smooth convex; gradient inequality exact with r = 0");
  addf(fn_linear(), true, true, false, true, 0.0, KnownParams{1.0, 0.0},
       "affine; equality in the subgradient inequality");
  addf(fn_neg_linear(), true, true, false, true, 0.0, KnownParams{1.0, 0.0}, "affine");
  addf(fn_huber(), true, true, false, true, 0.0, KnownParams{1.0, 0.0},
       "C1 convex; quadratic core with linear tails");
  addf(fn_neg_abs(), false, false, true, true, 0.0, std::nullopt,
       "downward kink at 0: f(t) = -t < t - (r/2)t^2 near the base tuple (0, +1) "
       "for every r, so no quadratic minorant exists at 0");
  addf(fn_huberizable(), false, false, true, true, 0.0, std::nullopt,
       "x^2/2 - |x| keeps the downward kink of -|x| at 0; smooth and convex per "
       "branch, hence prox-regular everywhere except 0");
  addf(fn_double_well(), false, true, false, true, 0.0, KnownParams{1.0, 4.0},
       "x^4 - 2x^2 has f'' >= -4, so f + 2|.|^2 is convex and r = 4 works at "
       "every point with any eps");
  addf(fn_neg_quad(), false, true, false, true, 1.0, std::nullopt,
       "concave quadratic; envelope finite exactly when r > 1");
  addf(fn_neg_quartic(), false, true, false, false, std::nullopt, std::nullopt,
       "-x^4 dominates every quadratic penalty; not prox-bounded");
  addf(fn_indicator_unit_interval(), true, true, false, true, 0.0, KnownParams{0.5, 0.0},
       "indicator of [-1,1]; normal-cone rays truncated at length 1024");
  addf(fn_quad2d(), true, true, false, true, 0.0, KnownParams{1.0, 0.0},
       "smooth convex in R^2");

  addp(par_lambda_abs(false), false, std::nullopt,
       "lambda|x|: convex in x only for lambda >= 0; kept on a signed lambda "
       "window for the negative-parameter failure cases");
  addp(par_lambda_abs(true), true, KnownParams{1.0, 0.0},
       "lambda|x| on lambda in [0.25, 4]: convex in x for every admissible lambda");
  addp(par_lambda_neg_abs(), false, std::nullopt,
       "lambda(-|x|), lambda > 0: downward kink at 0 for every lambda");
  addp(par_shifted_quad(), true, KnownParams{1.0, 0.0},
       "(x - lambda)^2/2 is convex in x for every lambda");
  addp(par_pa_quad_abs(), true, KnownParams{1.0, 0.0},
       "closed-form proximal average of (x^2/2, |x|); convex in x for each "
       "lambda in (0,1)");

  {
    auto wsum = build_weighted_sum({fn_quad(), fn_abs()});
    wsum.id = "wsum_quad_abs";
    wsum.lambda_domain = Box(Vec{0.25, 0.25}, Vec{3.0, 3.0});
    addp(std::move(wsum), true, KnownParams{1.0, 0.0},
         "nonnegative combination of convex atoms is convex in x");
  }
  {
    auto wmax = build_weighted_max({fn_quad(), fn_huber()});
    wmax.id = "wmax_quad_huber";
    wmax.lambda_domain = Box(Vec{0.25, 0.25}, Vec{3.0, 3.0});
    addp(std::move(wmax), true, KnownParams{1.0, 0.0},
         "max of nonnegative scalings of convex atoms is convex in x");
  }
  return c;
}

}  // namespace

ParametrizedOracle CatalogEntry::parametrized() const {
  if (is_parametrized()) return par();
  return promote(fn());
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

bool catalog_has(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return true;
  return false;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw usage_error("unknown catalog id: " + id);
}

// Proximal average of f0 = x^2/2 and f1 = |x| in closed form. With
// q = |.|^2/2 the dual objective h = (1-lambda)(f0+q)* + lambda(f1+q)* is
// piecewise quadratic and C1, so its conjugate is evaluated by inverting
// h' on the two slope ranges. The value is h*(x) - x^2/2 and the derivative
// is argmax(h') - x.
namespace {
double pa_quad_abs_argmax(double s, double lambda) {
  double s1 = 0.5 * (1.0 - lambda);  // slope of h at the dual kink y = 1
  if (s <= s1) return 2.0 * s / (1.0 - lambda);
  return 2.0 * (s + lambda) / (1.0 + lambda);
}
}  // namespace

double pa_quad_abs_value(double x, double lambda) {
  double s = std::abs(x);
  if (lambda >= 1.0) return s;               // endpoint: plain |x|
  if (lambda <= 0.0) return 0.5 * x * x;     // endpoint: plain quadratic
  double y = pa_quad_abs_argmax(s, lambda);
  double hinge = std::max(y - 1.0, 0.0);
  double h = 0.25 * (1.0 - lambda) * y * y + 0.5 * lambda * hinge * hinge;
  return s * y - h - 0.5 * s * s;
}

double pa_quad_abs_deriv(double x, double lambda) {
  if (lambda >= 1.0) return sgn(x);
  if (lambda <= 0.0) return x;
  double s = std::abs(x);
  double d = pa_quad_abs_argmax(s, lambda) - s;
  return x < 0 ? -d : d;
}

}  // namespace proxkit
