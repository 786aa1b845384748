#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "proxkit/box.hpp"
#include "proxkit/kernels.hpp"
#include "proxkit/oracle.hpp"

namespace proxkit {

struct EnvelopeResult {
  ExtReal value;
  std::vector<Vec> argmin_set;    // grid nodes attaining the min within tau_env
  bool boundary_attained = false; // every argmin node touches the grid boundary
};

struct ConjugateResult {
  ExtReal value;
  std::vector<Vec> argmax_set;
  bool boundary_attained = false;
};

/// Thread-safe insert-or-read cache for per-grid node tables, keyed by
/// (function id, parameter, grid signature). Anonymous oracles (empty id)
/// bypass it.
class EnvelopeCache {
 public:
  using Table = std::shared_ptr<const std::vector<double>>;

  template <class ComputeFn>
  Table get_or_compute(const std::string& key, ComputeFn&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    Table fresh = std::make_shared<const std::vector<double>>(compute());
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = table_.emplace(key, fresh);
    return it->second;  // either copy is identical; keep the first inserted
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return table_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, Table> table_;
};

/// f at every grid node (+inf encoded as the double infinity).
std::vector<double> value_table(const FunctionOracle& f, const Grid& grid,
                                Exec exec = default_exec());

/// e_r f at every grid node, minimizing over the same grid.
EnvelopeCache::Table envelope_table(const FunctionOracle& f, double r, const Grid& grid,
                                    EnvelopeCache* cache, Exec exec = default_exec());

/// Grid Moreau envelope: min over nodes y of f(y) + (r/2)|y - x|^2.
EnvelopeResult moreau_envelope(const FunctionOracle& f, double r, const Vec& x,
                               const Grid& grid, Exec exec = default_exec());

/// Argmin set of the envelope's inner problem.
std::vector<Vec> prox_map(const FunctionOracle& f, double r, const Vec& x, const Grid& grid,
                          Exec exec = default_exec());

/// Single-valued prox: nearest argmin node to x, lexicographic on residual ties.
Vec prox_point(const FunctionOracle& f, double r, const Vec& x, const Grid& grid,
               Exec exec = default_exec());

/// Grid Fenchel conjugate: max over nodes of <node, y> - f(node).
ConjugateResult fenchel_conjugate(const FunctionOracle& f, const Grid& grid, const Vec& y,
                                  Exec exec = default_exec());

struct ThresholdEstimate {
  bool bounded = false;
  double r = 0.0;  // smallest swept r with a trusted finite envelope
};

/// Sweeps r_max * 2^-k and reports the smallest r whose envelope at the grid
/// center is finite and not boundary-attained; an upper estimate of the
/// prox-boundedness threshold on this window.
ThresholdEstimate prox_bound_threshold(const FunctionOracle& f, const Grid& grid,
                                       double r_max, Exec exec = default_exec());

/// Proximal average of two convex functions via two inner conjugates on the
/// primal grid and one outer conjugate on a slope-range dual grid.
class PaConvexEvaluator {
 public:
  PaConvexEvaluator(const FunctionOracle& f0, const FunctionOracle& f1, Grid grid,
                    EnvelopeCache* cache = nullptr, Exec exec = default_exec());

  ExtReal eval(const Vec& x, double lambda) const;
  const Grid& dual_grid() const { return dual_; }

 private:
  Grid grid_;
  Grid dual_;
  Exec exec_;
  EnvelopeCache::Table conj0_, conj1_;
  std::vector<Vec> nodes_;
};

/// Same value via the envelope reformulation
/// -e_1(-(1-lambda) e_1 f0 - lambda e_1 f1)(x), computed on an internally
/// padded grid so the outer minimizer stays interior for window points.
class PaEnvEvaluator {
 public:
  PaEnvEvaluator(const FunctionOracle& f0, const FunctionOracle& f1, Grid grid,
                 EnvelopeCache* cache = nullptr, Exec exec = default_exec());

  ExtReal eval(const Vec& x, double lambda) const;
  const Grid& work_grid() const { return padded_; }

 private:
  Grid padded_;
  Exec exec_;
  EnvelopeCache::Table env0_, env1_;
  std::vector<Vec> nodes_;
};

/// Proximal average of possibly nonconvex prox-bounded functions:
/// -e_{r + lambda(1-lambda)}(-(1-lambda) e_r f0 - lambda e_r f1)(x) for
/// lambda in (0,1). Construction verifies r against the threshold estimates.
class NcpaEvaluator {
 public:
  NcpaEvaluator(const FunctionOracle& f0, const FunctionOracle& f1, double r, Grid grid,
                EnvelopeCache* cache = nullptr, Exec exec = default_exec());

  ExtReal eval(const Vec& x, double lambda) const;
  /// Parametrized view with central-difference x-gradients; lambda window
  /// stays strictly inside (0,1).
  ParametrizedOracle oracle(double lambda_lo = 0.05, double lambda_hi = 0.95) const;
  const Grid& work_grid() const { return padded_; }

 private:
  double r_;
  Grid padded_;
  Exec exec_;
  EnvelopeCache::Table env0_, env1_;
  std::vector<Vec> nodes_;
};

ExtReal pa_convex(const FunctionOracle& f0, const FunctionOracle& f1, double lambda,
                  const Vec& x, const Grid& grid, EnvelopeCache* cache = nullptr);

ExtReal pa_convex_env(const FunctionOracle& f0, const FunctionOracle& f1, double lambda,
                      const Vec& x, const Grid& grid, EnvelopeCache* cache = nullptr);

ExtReal nc_pa(const FunctionOracle& f0, const FunctionOracle& f1, double r, double lambda,
              const Vec& x, const Grid& grid, EnvelopeCache* cache = nullptr);

/// Max over grid node pairs of |g(x) - g(x')| / |x - x'| where
/// g = lambda P_r f0 + (1 - lambda) P_r f1 - I with nearest-node prox points.
/// Evaluate on the window the caller wants gated (the certification window
/// for local tests); global windows may straddle prox jumps of nonconvex
/// inputs where the quotient is unbounded.
double lipschitz_mix_prox(const FunctionOracle& f0, const FunctionOracle& f1, double r,
                          double lambda, const Grid& grid, Exec exec = default_exec());

}  // namespace proxkit
