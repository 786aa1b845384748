#include "proxkit/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proxkit/errors.hpp"

namespace proxkit {

namespace {

void require_positive(const Vec& lambda) {
  for (double l : lambda)
    if (!(l > 0.0)) throw nonpositive_lambda("weights must be strictly positive");
}

void require_matching(const std::vector<PRParams>& ps, const Vec& lambda) {
  if (ps.empty()) throw empty_list("parameter list is empty");
  if (ps.size() != lambda.size())
    throw dimension_mismatch("parameter list and weight vector lengths differ");
  require_positive(lambda);
}

// Per-axis lattice resolution that keeps total sample counts small in
// higher dimension.
std::size_t lattice_res(std::size_t dims) {
  if (dims <= 1) return 17;
  if (dims == 2) return 7;
  if (dims == 3) return 5;
  return 3;
}

std::vector<Vec> box_lattice(const Box& box) {
  const std::size_t d = box.dim();
  const std::size_t per = lattice_res(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per;
  std::vector<Vec> out;
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Vec x(d);
    std::size_t rem = flat;
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t idx = rem % per;
      rem /= per;
      x[i] = box.lower[i] +
             (box.upper[i] - box.lower[i]) * double(idx) / double(per - 1);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Sampled suprema underestimate true suprema, so estimates carry a 10%
// inflation; a quantity constant across samples is already exact.
double inflate(const std::vector<double>& samples) {
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (double s : samples) {
    mx = std::max(mx, s);
    mn = std::min(mn, s);
  }
  if (samples.empty()) return 0.0;
  if (mx - mn <= 1e-12 * (1.0 + std::abs(mx))) return mx;
  return 1.1 * mx;
}

double largest_eigenvalue(const Vec& sym, std::size_t n) {
  // Shifted power iteration: H + cI is positive definite for
  // c = 1 + ||H||_F, and its dominant eigenvalue is lambda_max(H) + c.
  double fro = 0.0;
  for (double v : sym) fro += v * v;
  double c = 1.0 + std::sqrt(fro);
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / double(i + 1);
  double rho = c;
  for (int iter = 0; iter < 200; ++iter) {
    Vec w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += sym[i * n + j] * v[j];
    for (std::size_t i = 0; i < n; ++i) w[i] += c * v[i];
    double nw = norm(w);
    if (nw == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) w[i] /= nw;
    rho = nw;
    v = std::move(w);
  }
  return rho - c;
}

}  // namespace

PRParams scalar_mult_params(const PRParams& p, double lambda) {
  if (!(lambda > 0.0)) throw nonpositive_lambda("scalar multiple needs lambda > 0");
  return PRParams{std::min(p.eps, lambda * p.eps), lambda * p.r};
}

PRParams scalar_mult_para_params(const PRParams& p, double lambda_base) {
  if (!(lambda_base > 0.0)) throw nonpositive_lambda("scalar family needs lambda_base > 0");
  double delta = 0.5 * lambda_base;
  double eps = std::min({delta, p.eps, delta * p.eps});
  return PRParams{eps, 1.5 * lambda_base * p.r};
}

PRParams sum_params(const std::vector<PRParams>& ps) {
  if (ps.empty()) throw empty_list("sum of zero functions");
  PRParams out{ps[0].eps, 0.0};
  double rmax = 0.0;
  for (const PRParams& p : ps) {
    out.eps = std::min(out.eps, p.eps);
    rmax = std::max(rmax, p.r);
  }
  out.r = double(ps.size()) * rmax;
  return out;
}

PRParams weighted_sum_params(const std::vector<PRParams>& ps, const Vec& lambda) {
  require_matching(ps, lambda);
  double eps = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    eps = std::min({eps, ps[i].eps, lambda[i] * ps[i].eps});
    rmax = std::max(rmax, lambda[i] * ps[i].r);
  }
  return PRParams{eps, double(ps.size()) * rmax};
}

PRParams para_sum_params(const std::vector<PRParams>& ps, const Vec& lambda_base) {
  require_matching(ps, lambda_base);
  double eps = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double half = 0.5 * lambda_base[i];
    eps = std::min({eps, half, ps[i].eps, half * ps[i].eps});
    rmax = std::max(rmax, 1.5 * lambda_base[i] * ps[i].r);
  }
  return PRParams{eps, double(ps.size()) * rmax};
}

PRParams para_max_params(const std::vector<PRParams>& ps, const Vec& lambda_base) {
  require_matching(ps, lambda_base);
  double eps = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    eps = std::min({eps, ps[i].eps, 0.5 * lambda_base[i] * ps[i].eps});
    rmax = std::max(rmax, 1.5 * lambda_base[i] * ps[i].r);
  }
  return PRParams{eps, rmax};  // no factor m, unlike the sums
}

AmenableConstants estimate_amenable_constants(const CsqMap& F, const Box& y_box,
                                              const Box& x_box,
                                              const std::vector<PRParams>& inner) {
  if (inner.empty()) throw empty_list("need the inner quadratic-minorant parameters");
  if (x_box.dim() != F.n || y_box.dim() != F.m)
    throw dimension_mismatch("boxes must match the mapping dimensions");
  std::vector<Vec> xs = box_lattice(x_box);
  std::vector<Vec> ys = box_lattice(y_box);
  bool degenerate = true;
  for (std::size_t i = 1; i < xs.size() && degenerate; ++i)
    if (dist(xs[i], xs[0]) > 0.0) degenerate = false;
  if (degenerate) throw proxkit::degenerate_box("x box has no extent to sample over");

  std::vector<Vec> Fx(xs.size());
  std::vector<std::vector<Vec>> J(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Fx[i] = F.eval(xs[i]);
    J[i] = F.jacobian(xs[i]);
  }

  std::vector<double> r1_samples, k_samples;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      double dx = dist(xs[i], xs[j]);
      if (dx == 0.0) continue;
      k_samples.push_back(dist(Fx[i], Fx[j]) / dx);
      for (const Vec& y : ys) {
        Vec acc(F.n, 0.0);
        for (std::size_t c = 0; c < F.m; ++c)
          for (std::size_t k = 0; k < F.n; ++k)
            acc[k] += (J[j][c][k] - J[i][c][k]) * y[c];
        r1_samples.push_back(norm(acc) / dx);
      }
    }
  }

  // eta ranges over differences of dual samples, i.e. the set Y - Y.
  std::vector<double> r2_samples;
  for (const Vec& x : xs) {
    std::vector<Vec> H = F.hessians(x);
    for (std::size_t a = 0; a < ys.size(); ++a) {
      for (std::size_t b = 0; b < ys.size(); ++b) {
        Vec combo(F.n * F.n, 0.0);
        for (std::size_t c = 0; c < F.m; ++c) {
          double eta = ys[a][c] - ys[b][c];
          for (std::size_t t = 0; t < F.n * F.n; ++t) combo[t] += eta * H[c][t];
        }
        r2_samples.push_back(largest_eigenvalue(combo, F.n));
      }
    }
  }

  AmenableConstants out;
  out.r1 = std::max(0.0, inflate(r1_samples));
  out.r2 = std::max(0.0, inflate(r2_samples));
  out.k = inflate(k_samples);
  out.r_bar = 0.0;
  for (const PRParams& p : inner) out.r_bar = std::max(out.r_bar, p.r);
  out.x_box = x_box;
  out.y_box = y_box;
  return out;
}

PRParams amenable_params(const AmenableConstants& c, double eps) {
  return PRParams{eps, c.r1 + c.r2 + c.r_bar * c.k * c.k};
}

CsqMap diagonal_map(std::size_t m) {
  CsqMap F;
  F.n = 1;
  F.m = m;
  F.id = "diagonal" + std::to_string(m);
  F.eval = [m](const Vec& x) { return Vec(m, x[0]); };
  F.jacobian = [m](const Vec&) { return std::vector<Vec>(m, Vec{1.0}); };
  F.hessians = [m](const Vec&) { return std::vector<Vec>(m, Vec{0.0}); };
  return F;
}

CsqMap identity_map() {
  CsqMap F = diagonal_map(1);
  F.id = "identity";
  return F;
}

CsqMap parabola_pair_map() {
  CsqMap F;
  F.n = 1;
  F.m = 2;
  F.id = "parabola_pair";
  F.eval = [](const Vec& x) { return Vec{x[0], x[0] * x[0]}; };
  F.jacobian = [](const Vec& x) { return std::vector<Vec>{Vec{1.0}, Vec{2.0 * x[0]}}; };
  F.hessians = [](const Vec&) { return std::vector<Vec>{Vec{0.0}, Vec{2.0}}; };
  return F;
}

}  // namespace proxkit
