#include "proxkit/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proxkit/errors.hpp"

namespace proxkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tau_env(double minimum) { return 1e-9 * (1.0 + std::abs(minimum)); }

// Collects nodes with buf within tau of the best value; sets the boundary
// flag when every such node touches the grid boundary.
template <class Better>
std::pair<std::vector<Vec>, bool> collect_extremes(const Grid& grid,
                                                   const std::vector<double>& buf,
                                                   double best, Better&& within) {
  std::vector<Vec> set;
  bool all_boundary = true;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (within(buf[i], best)) {
      set.push_back(grid.node(i));
      all_boundary = all_boundary && grid.is_boundary(i);
    }
  }
  return {std::move(set), all_boundary && !set.empty()};
}

Grid padded_grid(const Grid& grid, const Box& domain, double pad_frac) {
  Box wanted = grid.box.padded(pad_frac);
  Vec lo = wanted.lower, up = wanted.upper;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::max(lo[i], domain.lower[i]);
    up[i] = std::min(up[i], domain.upper[i]);
  }
  // Scale the node count to roughly preserve spacing.
  double ratio = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    double w0 = grid.box.upper[i] - grid.box.lower[i];
    ratio = std::max(ratio, (up[i] - lo[i]) / w0);
  }
  std::size_t points = std::size_t(std::ceil(double(grid.points_per_axis - 1) * ratio)) + 1;
  points = std::max<std::size_t>(points, grid.points_per_axis);
  return Grid(Box(lo, up), points);
}

std::string cache_key(const FunctionOracle& f, const std::string& op, double param,
                      const Grid& grid) {
  return f.id + "#" + op + "#" + std::to_string(param) + "#" + grid.signature();
}

}  // namespace

std::vector<double> value_table(const FunctionOracle& f, const Grid& grid, Exec exec) {
  if (grid.dim() != f.dim) throw dimension_mismatch("value_table: grid/function dims");
  std::vector<double> buf(grid.node_count());
  map_index(
      buf.size(), buf.data(), [&](std::size_t i) { return f.eval(grid.node(i)).raw(); },
      exec);
  return buf;
}

namespace {
std::vector<Vec> node_list(const Grid& grid) {
  std::vector<Vec> nodes(grid.node_count());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = grid.node(i);
  return nodes;
}

double sqdist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}
}  // namespace

EnvelopeCache::Table envelope_table(const FunctionOracle& f, double r, const Grid& grid,
                                    EnvelopeCache* cache, Exec exec) {
  auto compute = [&]() {
    std::vector<double> fv = value_table(f, grid, exec);
    std::vector<Vec> nodes = node_list(grid);
    std::vector<double> env(grid.node_count());
    map_index(
        env.size(), env.data(),
        [&](std::size_t i) {
          double best = kInf;
          for (std::size_t j = 0; j < fv.size(); ++j) {
            if (fv[j] == kInf) continue;
            double v = fv[j] + 0.5 * r * sqdist(nodes[j], nodes[i]);
            best = std::min(best, v);
          }
          return best;
        },
        exec);
    return env;
  };
  if (cache && !f.id.empty()) return cache->get_or_compute(cache_key(f, "env", r, grid), compute);
  return std::make_shared<const std::vector<double>>(compute());
}

EnvelopeResult moreau_envelope(const FunctionOracle& f, double r, const Vec& x,
                               const Grid& grid, Exec exec) {
  if (r <= 0) throw usage_error("moreau_envelope: r must be positive");
  if (x.size() != f.dim) throw dimension_mismatch("moreau_envelope: x dimension");
  std::vector<double> buf(grid.node_count());
  map_index(
      buf.size(), buf.data(),
      [&](std::size_t i) {
        Vec y = grid.node(i);
        double fy = f.eval(y).raw();
        return fy == kInf ? kInf : fy + 0.5 * r * norm2(sub(y, x));
      },
      exec);
  MinLoc best = reduce_min(buf, exec);
  if (best.value == kInf) throw improper_on_grid("f is +inf on every grid node");
  EnvelopeResult res;
  res.value = ExtReal(best.value);
  double tau = tau_env(best.value);
  auto [set, boundary] = collect_extremes(
      grid, buf, best.value, [&](double v, double b) { return v <= b + tau; });
  res.argmin_set = std::move(set);
  res.boundary_attained = boundary;
  return res;
}

std::vector<Vec> prox_map(const FunctionOracle& f, double r, const Vec& x, const Grid& grid,
                          Exec exec) {
  return moreau_envelope(f, r, x, grid, exec).argmin_set;
}

Vec prox_point(const FunctionOracle& f, double r, const Vec& x, const Grid& grid, Exec exec) {
  std::vector<Vec> set = prox_map(f, r, x, grid, exec);
  Vec best = set.front();
  double bd = dist(best, x);
  for (const Vec& p : set) {
    double d = dist(p, x);
    if (d < bd - 1e-15 || (std::abs(d - bd) <= 1e-15 && lex_less(p, best))) {
      best = p;
      bd = d;
    }
  }
  return best;
}

ConjugateResult fenchel_conjugate(const FunctionOracle& f, const Grid& grid, const Vec& y,
                                  Exec exec) {
  if (y.size() != f.dim) throw dimension_mismatch("fenchel_conjugate: y dimension");
  std::vector<double> buf(grid.node_count());
  map_index(
      buf.size(), buf.data(),
      [&](std::size_t i) {
        Vec x = grid.node(i);
        double fx = f.eval(x).raw();
        return fx == kInf ? -kInf : dot(x, y) - fx;
      },
      exec);
  MinLoc best = reduce_max(buf, exec);
  if (best.value == -kInf) throw improper_on_grid("f is +inf on every grid node");
  ConjugateResult res;
  res.value = ExtReal(best.value);
  double tau = tau_env(best.value);
  auto [set, boundary] = collect_extremes(
      grid, buf, best.value, [&](double v, double b) { return v >= b - tau; });
  res.argmax_set = std::move(set);
  res.boundary_attained = boundary;
  return res;
}

ThresholdEstimate prox_bound_threshold(const FunctionOracle& f, const Grid& grid,
                                       double r_max, Exec exec) {
  if (r_max <= 0) throw usage_error("prox_bound_threshold: r_max must be positive");
  Vec center(f.dim);
  for (std::size_t i = 0; i < f.dim; ++i)
    center[i] = 0.5 * (grid.box.lower[i] + grid.box.upper[i]);
  auto trusted = [&](double r) {
    try {
      EnvelopeResult env = moreau_envelope(f, r, center, grid, exec);
      return env.value.is_finite() && !env.boundary_attained;
    } catch (const Error&) {
      return false;
    }
  };
  ThresholdEstimate est;
  double r = r_max;
  if (!trusted(r)) return est;  // not prox-bounded below r_max on this window
  est.bounded = true;
  est.r = r;
  for (int k = 0; k < 48; ++k) {
    r *= 0.5;
    if (!trusted(r)) break;
    est.r = r;
  }
  return est;
}

// -------- proximal average, conjugate route --------

namespace {

// Slope range of f + |.|^2/2 sampled by per-axis adjacent difference
// quotients; the conjugate's maximizers live at these slopes.
Box dual_box(const FunctionOracle& f0, const FunctionOracle& f1, const Grid& grid,
             Exec exec) {
  const std::size_t n = grid.dim();
  Vec lo(n, kInf), up(n, -kInf);
  for (const FunctionOracle* f : {&f0, &f1}) {
    std::vector<double> fv = value_table(*f, grid, exec);
    for (std::size_t i = 0; i < fv.size(); ++i)
      if (fv[i] != kInf) {
        Vec x = grid.node(i);
        fv[i] += 0.5 * norm2(x);
      }
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < n; ++axis) {
      double h = grid.spacing(axis);
      for (std::size_t i = 0; i + stride < fv.size(); ++i) {
        std::size_t hi = (i / stride) % grid.points_per_axis;
        if (hi + 1 >= grid.points_per_axis) continue;
        if (fv[i] == kInf || fv[i + stride] == kInf) continue;
        double q = (fv[i + stride] - fv[i]) / h;
        lo[axis] = std::min(lo[axis], q);
        up[axis] = std::max(up[axis], q);
      }
      stride *= grid.points_per_axis;
    }
  }
  for (std::size_t axis = 0; axis < n; ++axis) {
    if (!(lo[axis] < kInf))
      throw improper_on_grid("cannot bound conjugate slopes: f is +inf on the grid");
    double w = std::max(up[axis] - lo[axis], 1e-6);
    lo[axis] -= 0.1 * w;
    up[axis] += 0.1 * w;
  }
  return Box(lo, up);
}

// (f + |.|^2/2)* at every dual node.
std::vector<double> shifted_conjugate_table(const FunctionOracle& f, const Grid& primal,
                                            const Grid& dual, Exec exec) {
  std::vector<double> fv = value_table(f, primal, exec);
  std::vector<Vec> nodes(primal.node_count());
  for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = primal.node(j);
  std::vector<double> out(dual.node_count());
  map_index(
      out.size(), out.data(),
      [&](std::size_t d) {
        Vec y = dual.node(d);
        double best = -kInf;
        for (std::size_t j = 0; j < fv.size(); ++j) {
          if (fv[j] == kInf) continue;
          double v = dot(nodes[j], y) - fv[j] - 0.5 * norm2(nodes[j]);
          best = std::max(best, v);
        }
        return best;
      },
      exec);
  return out;
}

void require_convex_pair(const FunctionOracle& f0, const FunctionOracle& f1) {
  if (!f0.convex || !f1.convex)
    throw not_convex_tagged("proximal average requires convex-tagged inputs");
}

}  // namespace

PaConvexEvaluator::PaConvexEvaluator(const FunctionOracle& f0, const FunctionOracle& f1,
                                     Grid grid, EnvelopeCache* cache, Exec exec)
    : grid_(std::move(grid)), exec_(exec) {
  require_convex_pair(f0, f1);
  dual_ = Grid(dual_box(f0, f1, grid_, exec_), grid_.points_per_axis);
  // The inner suprema attain beyond the evaluation window for dual slopes
  // near the window edge, so they run on a padded copy of the primal grid.
  Grid inner = padded_grid(grid_, f0.domain, 1.0);
  auto table = [&](const FunctionOracle& f) {
    auto compute = [&]() { return shifted_conjugate_table(f, inner, dual_, exec_); };
    if (cache && !f.id.empty())
      return cache->get_or_compute(
          f.id + "#conjq#" + inner.signature() + "#" + dual_.signature(), compute);
    return EnvelopeCache::Table(std::make_shared<const std::vector<double>>(compute()));
  };
  conj0_ = table(f0);
  conj1_ = table(f1);
  nodes_ = node_list(dual_);
}

ExtReal PaConvexEvaluator::eval(const Vec& x, double lambda) const {
  if (lambda < 0.0 || lambda > 1.0)
    throw usage_error("proximal average weight must lie in [0, 1]");
  const auto& g0 = *conj0_;
  const auto& g1 = *conj1_;
  std::vector<double> buf(nodes_.size());
  map_index(
      buf.size(), buf.data(),
      [&](std::size_t d) {
        double h = (1.0 - lambda) * g0[d] + lambda * g1[d];
        return dot(nodes_[d], x) - h;
      },
      exec_);
  MinLoc best = reduce_max(buf, exec_);
  return ExtReal(best.value - 0.5 * norm2(x));
}

PaEnvEvaluator::PaEnvEvaluator(const FunctionOracle& f0, const FunctionOracle& f1, Grid grid,
                               EnvelopeCache* cache, Exec exec)
    : exec_(exec) {
  require_convex_pair(f0, f1);
  padded_ = padded_grid(grid, f0.domain, 1.0);
  env0_ = envelope_table(f0, 1.0, padded_, cache, exec_);
  env1_ = envelope_table(f1, 1.0, padded_, cache, exec_);
  nodes_ = node_list(padded_);
}

ExtReal PaEnvEvaluator::eval(const Vec& x, double lambda) const {
  if (lambda < 0.0 || lambda > 1.0)
    throw usage_error("proximal average weight must lie in [0, 1]");
  const auto& e0 = *env0_;
  const auto& e1 = *env1_;
  std::vector<double> buf(nodes_.size());
  map_index(
      buf.size(), buf.data(),
      [&](std::size_t d) {
        double phi = -(1.0 - lambda) * e0[d] - lambda * e1[d];
        return phi + 0.5 * sqdist(nodes_[d], x);
      },
      exec_);
  MinLoc best = reduce_min(buf, exec_);
  if (best.value == kInf) throw improper_on_grid("inner envelopes are +inf everywhere");
  return ExtReal(-best.value);
}

NcpaEvaluator::NcpaEvaluator(const FunctionOracle& f0, const FunctionOracle& f1, double r,
                             Grid grid, EnvelopeCache* cache, Exec exec)
    : r_(r), exec_(exec) {
  if (r <= 0) throw usage_error("nc_pa: r must be positive");
  padded_ = padded_grid(grid, f0.domain, 1.0);
  for (const FunctionOracle* f : {&f0, &f1}) {
    ThresholdEstimate est = prox_bound_threshold(*f, padded_, r, exec_);
    if (!est.bounded || est.r > r)
      throw threshold_violated("r does not exceed the prox-boundedness estimate of " +
                               (f->id.empty() ? std::string("input") : f->id));
  }
  env0_ = envelope_table(f0, r, padded_, cache, exec_);
  env1_ = envelope_table(f1, r, padded_, cache, exec_);
  nodes_ = node_list(padded_);
}

ExtReal NcpaEvaluator::eval(const Vec& x, double lambda) const {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw usage_error("nc_pa weight must lie strictly inside (0, 1)");
  const double R = r_ + lambda * (1.0 - lambda);
  const auto& e0 = *env0_;
  const auto& e1 = *env1_;
  std::vector<double> buf(nodes_.size());
  map_index(
      buf.size(), buf.data(),
      [&](std::size_t d) {
        double phi = -(1.0 - lambda) * e0[d] - lambda * e1[d];
        return phi + 0.5 * R * sqdist(nodes_[d], x);
      },
      exec_);
  MinLoc best = reduce_min(buf, exec_);
  if (best.value == kInf) throw improper_on_grid("inner envelopes are +inf everywhere");
  return ExtReal(-best.value);
}

ParametrizedOracle NcpaEvaluator::oracle(double lambda_lo, double lambda_hi) const {
  ParametrizedOracle p;
  p.x_dim = padded_.dim();
  p.lambda_dim = 1;
  p.x_domain = padded_.box;
  p.lambda_domain = Box(Vec{lambda_lo}, Vec{lambda_hi});
  p.id = "";  // derived numeric object; callers cache the inner tables instead
  NcpaEvaluator self = *this;
  p.eval = [self](const Vec& x, const Vec& lam) { return self.eval(x, lam[0]); };
  p.subdiff_x = [self](const Vec& x, const Vec& lam) -> GeneratorSet {
    Vec g(x.size());
    Vec probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double h = fd_step(x[i]);
      probe[i] = x[i] + h;
      double fp = self.eval(probe, lam[0]).finite();
      probe[i] = x[i] - h;
      double fm = self.eval(probe, lam[0]).finite();
      probe[i] = x[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
    return {g};
  };
  return p;
}

ExtReal pa_convex(const FunctionOracle& f0, const FunctionOracle& f1, double lambda,
                  const Vec& x, const Grid& grid, EnvelopeCache* cache) {
  return PaConvexEvaluator(f0, f1, grid, cache).eval(x, lambda);
}

ExtReal pa_convex_env(const FunctionOracle& f0, const FunctionOracle& f1, double lambda,
                      const Vec& x, const Grid& grid, EnvelopeCache* cache) {
  return PaEnvEvaluator(f0, f1, grid, cache).eval(x, lambda);
}

ExtReal nc_pa(const FunctionOracle& f0, const FunctionOracle& f1, double r, double lambda,
              const Vec& x, const Grid& grid, EnvelopeCache* cache) {
  return NcpaEvaluator(f0, f1, r, grid, cache).eval(x, lambda);
}

double lipschitz_mix_prox(const FunctionOracle& f0, const FunctionOracle& f1, double r,
                          double lambda, const Grid& grid, Exec exec) {
  // Prox points are grid argmins, so they move in whole-spacing steps; the
  // quotient is taken over a strided subset of nodes to keep that
  // quantization from dominating the estimate.
  const std::size_t stride = std::max<std::size_t>(1, (grid.points_per_axis - 1) / 50);
  std::vector<std::size_t> picks;
  if (grid.dim() == 1) {
    for (std::size_t i = 0; i < grid.node_count(); i += stride) picks.push_back(i);
  } else {
    for (std::size_t i = 0; i < grid.node_count(); ++i) picks.push_back(i);
  }
  const std::size_t n = picks.size();
  std::vector<Vec> g(n);
  std::vector<Vec> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = grid.node(picks[i]);
  // The argmin search runs on a padded window so prox points of edge nodes
  // are not clamped to the caller's window.
  Grid search = padded_grid(grid, f0.domain, 1.0);
  std::vector<double> dummy(n);
  map_index(
      n, dummy.data(),
      [&](std::size_t i) {
        Vec p0 = prox_point(f0, r, nodes[i], search, Exec::Serial);
        Vec p1 = prox_point(f1, r, nodes[i], search, Exec::Serial);
        Vec gi(nodes[i].size());
        for (std::size_t k = 0; k < gi.size(); ++k)
          gi[k] = lambda * p0[k] + (1.0 - lambda) * p1[k] - nodes[i][k];
        g[i] = std::move(gi);
        return 0.0;
      },
      exec);
  MinLoc best = reduce_max_indexed(
      n * n,
      [&](std::size_t t) {
        std::size_t i = t / n, j = t % n;
        if (j <= i) return -kInf;
        double dx = dist(nodes[i], nodes[j]);
        return dx == 0.0 ? -kInf : dist(g[i], g[j]) / dx;
      },
      exec);
  return best.value == -kInf ? 0.0 : best.value;
}

}  // namespace proxkit
