#include "proxkit/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "proxkit/errors.hpp"

namespace proxkit {

namespace {

// Deduplicate generators that coincide to double precision noise.
GeneratorSet dedupe(GeneratorSet gens) {
  std::sort(gens.begin(), gens.end(), lex_less);
  GeneratorSet out;
  for (auto& g : gens) {
    if (!out.empty() && dist(out.back(), g) <= 1e-12 * (1.0 + norm(g))) continue;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

ParametrizedOracle build_tilt_shift(const ParametrizedOracle& f, const Vec& x_base,
                                    const Vec& v_base) {
  if (x_base.size() != f.x_dim || v_base.size() != f.x_dim)
    throw dimension_mismatch("build_tilt_shift: x_base/v_base dimension");
  ParametrizedOracle g;
  g.x_dim = f.x_dim;
  g.lambda_dim = f.lambda_dim;
  g.lambda_domain = f.lambda_domain;
  g.x_domain = Box(sub(f.x_domain.lower, x_base), sub(f.x_domain.upper, x_base));
  g.id = f.id.empty() ? std::string{} : "tilt(" + f.id + ")";
  ParametrizedOracle base = f;
  g.eval = [base, x_base, v_base](const Vec& x, const Vec& lam) {
    return base.eval(add(x, x_base), lam) - dot(v_base, x);
  };
  if (f.has_subdiff()) {
    g.subdiff_x = [base, x_base, v_base](const Vec& x, const Vec& lam) {
      GeneratorSet gs = base.subdiff_x(add(x, x_base), lam);
      for (auto& w : gs) w = sub(w, v_base);
      return gs;
    };
  }
  return g;
}

ParametrizedOracle build_arg_shift(const FunctionOracle& f) {
  ParametrizedOracle g;
  g.x_dim = f.dim;
  g.lambda_dim = f.dim;
  g.x_domain = f.domain;
  g.lambda_domain = f.domain;
  g.id = f.id.empty() ? std::string{} : "argshift(" + f.id + ")";
  FunctionOracle base = f;
  g.eval = [base](const Vec& x, const Vec& lam) {
    if (lam.size() != base.dim) throw dimension_mismatch("arg shift: lambda dimension");
    return base.eval(sub(x, lam));
  };
  g.subdiff_x = [base](const Vec& x, const Vec& lam) {
    return eval_subdifferential(base, sub(x, lam));
  };
  return g;
}

ParametrizedOracle build_arg_scale(const FunctionOracle& f) {
  ParametrizedOracle g;
  g.x_dim = f.dim;
  g.lambda_dim = 1;
  g.x_domain = f.domain;
  g.lambda_domain = Box(Vec{-4.0}, Vec{4.0});
  g.id = f.id.empty() ? std::string{} : "argscale(" + f.id + ")";
  FunctionOracle base = f;
  g.eval = [base](const Vec& x, const Vec& lam) {
    if (lam.size() != 1) throw dimension_mismatch("arg scale: lambda must be scalar");
    return base.eval(scaled(x, lam[0]));
  };
  g.subdiff_x = [base](const Vec& x, const Vec& lam) {
    GeneratorSet gs = eval_subdifferential(base, scaled(x, lam[0]));
    for (auto& w : gs) w = scaled(w, lam[0]);
    return dedupe(std::move(gs));
  };
  return g;
}

ParametrizedOracle build_weighted_sum(const std::vector<FunctionOracle>& fs) {
  if (fs.empty()) throw empty_list("build_weighted_sum: no functions");
  const std::size_t n = fs[0].dim;
  for (const auto& f : fs)
    if (f.dim != n) throw dimension_mismatch("build_weighted_sum: mixed x dimensions");
  ParametrizedOracle g;
  g.x_dim = n;
  g.lambda_dim = fs.size();
  g.x_domain = fs[0].domain;
  g.lambda_domain = Box::cube(fs.size(), 0.0, 4.0);
  g.id = "wsum";
  for (const auto& f : fs) g.id += ":" + (f.id.empty() ? "?" : f.id);
  auto atoms = fs;
  g.eval = [atoms](const Vec& x, const Vec& lam) -> ExtReal {
    if (lam.size() != atoms.size())
      throw dimension_mismatch("weighted sum: lambda length != atom count");
    // Any atom at +inf puts x outside the common domain.
    double s = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      ExtReal v = atoms[i].eval(x);
      if (!v.is_finite()) return ExtReal::infinity();
      s += lam[i] * v.finite();
    }
    return ExtReal(s);
  };
  g.subdiff_x = [atoms, n](const Vec& x, const Vec& lam) {
    std::vector<GeneratorSet> per(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      per[i] = eval_subdifferential(atoms[i], x);
      for (auto& w : per[i]) w = scaled(w, lam[i]);
    }
    GeneratorSet out{Vec(n, 0.0)};
    for (const auto& gens : per) {
      GeneratorSet next;
      for (const auto& acc : out)
        for (const auto& w : gens) next.push_back(add(acc, w));
      out = std::move(next);
    }
    return dedupe(std::move(out));
  };
  return g;
}

ParametrizedOracle build_weighted_max(const std::vector<FunctionOracle>& fs) {
  if (fs.empty()) throw empty_list("build_weighted_max: no functions");
  const std::size_t n = fs[0].dim;
  for (const auto& f : fs) {
    if (f.dim != n) throw dimension_mismatch("build_weighted_max: mixed x dimensions");
    if (!f.has_grad() && !f.differentiable_by_tag())
      throw not_c1_tagged("build_weighted_max: atoms must be C1 with a gradient");
  }
  ParametrizedOracle g;
  g.x_dim = n;
  g.lambda_dim = fs.size();
  g.x_domain = fs[0].domain;
  g.lambda_domain = Box::cube(fs.size(), 0.0, 4.0);
  g.id = "wmax";
  for (const auto& f : fs) g.id += ":" + (f.id.empty() ? "?" : f.id);
  auto atoms = fs;
  auto values = [atoms](const Vec& x, const Vec& lam) {
    if (lam.size() != atoms.size())
      throw dimension_mismatch("weighted max: lambda length != atom count");
    Vec vals(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      ExtReal v = atoms[i].eval(x);
      if (!v.is_finite())
        throw not_finite_valued("weighted max requires real-valued atoms");
      vals[i] = lam[i] * v.finite();
    }
    return vals;
  };
  g.eval = [values](const Vec& x, const Vec& lam) {
    Vec vals = values(x, lam);
    return ExtReal(*std::max_element(vals.begin(), vals.end()));
  };
  g.subdiff_x = [values, atoms](const Vec& x, const Vec& lam) {
    Vec vals = values(x, lam);
    double fmax = *std::max_element(vals.begin(), vals.end());
    double tau = 1e-9 * (1.0 + std::abs(fmax));  // exact ties never occur in fp
    GeneratorSet out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (vals[i] >= fmax - tau) {
        Vec gi = atoms[i].has_grad() ? atoms[i].grad(x) : numeric_gradient(atoms[i], x);
        out.push_back(scaled(gi, lam[i]));
      }
    }
    return dedupe(std::move(out));
  };
  return g;
}

}  // namespace proxkit
