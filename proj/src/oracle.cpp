#include "proxkit/oracle.hpp"

#include "proxkit/errors.hpp"

namespace proxkit {

Vec numeric_gradient(const FunctionOracle& f, const Vec& x) {
  Vec g(f.dim);
  Vec p = x;
  for (std::size_t i = 0; i < f.dim; ++i) {
    double h = fd_step(x[i]);
    p[i] = x[i] + h;
    double fp = f.eval(p).finite();
    p[i] = x[i] - h;
    double fm = f.eval(p).finite();
    p[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

GeneratorSet eval_subdifferential(const FunctionOracle& f, const Vec& x) {
  if (x.size() != f.dim) throw dimension_mismatch("eval_subdifferential: bad x dimension");
  if (!f.eval(x).is_finite())
    throw eval_infinite("subdifferential requested outside dom f");
  if (f.has_subdiff()) return f.subdiff(x);
  if (f.has_grad()) return {f.grad(x)};
  if (f.differentiable_by_tag()) return {numeric_gradient(f, x)};
  throw no_subdiff_oracle("function provides no subdifferential or gradient oracle");
}

ParametrizedOracle promote(const FunctionOracle& f) {
  ParametrizedOracle p;
  p.x_dim = f.dim;
  p.lambda_dim = 0;
  p.x_domain = f.domain;
  p.lambda_domain = Box(Vec{}, Vec{});
  p.id = f.id;
  FunctionOracle base = f;
  p.eval = [base](const Vec& x, const Vec&) { return base.eval(x); };
  p.subdiff_x = [base](const Vec& x, const Vec&) { return eval_subdifferential(base, x); };
  return p;
}

FunctionOracle slice(const ParametrizedOracle& f, const Vec& lambda) {
  if (lambda.size() != f.lambda_dim) throw dimension_mismatch("slice: bad lambda dimension");
  FunctionOracle s;
  s.dim = f.x_dim;
  s.domain = f.x_domain;
  s.tag = Smoothness::Lsc;
  s.id = f.id.empty() ? std::string{} : f.id + "@lambda";
  ParametrizedOracle base = f;
  s.eval = [base, lambda](const Vec& x) { return base.eval(x, lambda); };
  if (f.has_subdiff())
    s.subdiff = [base, lambda](const Vec& x) { return base.subdiff_x(x, lambda); };
  return s;
}

}  // namespace proxkit
