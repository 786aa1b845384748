#pragma once

#include <functional>
#include <vector>

#include "proxkit/box.hpp"
#include "proxkit/oracle.hpp"

namespace proxkit {

/// Quadratic-minorant parameters (eps, r).
struct PRParams {
  double eps = 0.0;
  double r = 0.0;
};

/// lambda f with lambda > 0: (min{eps, lambda eps}, lambda r).
PRParams scalar_mult_params(const PRParams& p, double lambda);

/// lambda f as a parametrized family around lambda_base > 0, with the
/// proof-level constants: eps = min{lambda_base/2, eps, (lambda_base/2) eps}
/// (the first term also bounds the admissible lambda half-width) and
/// r = (3 lambda_base / 2) r.
PRParams scalar_mult_para_params(const PRParams& p, double lambda_base);

/// Plain sum of m functions: (min_i eps_i, m max_i r_i).
PRParams sum_params(const std::vector<PRParams>& ps);

/// Fixed positive weights: (min_i{eps_i, lambda_i eps_i}, m max_i{lambda_i r_i}).
PRParams weighted_sum_params(const std::vector<PRParams>& ps, const Vec& lambda);

/// Weighted sum as a parametrized family around lambda_base > 0:
/// (min_i{lambda_i/2, eps_i, (lambda_i/2) eps_i}, m max_i{(3 lambda_i/2) r_i}).
PRParams para_sum_params(const std::vector<PRParams>& ps, const Vec& lambda_base);

/// Weighted max of real-valued C1 atoms around lambda_base > 0:
/// (min_i{eps_i, (lambda_i/2) eps_i}, max_i{(3 lambda_i/2) r_i}); no factor m.
PRParams para_max_params(const std::vector<PRParams>& ps, const Vec& lambda_base);

/// Constants entering the composition rule for g(F(x)) with F of class C2:
/// r1 bounds |[J(x1) - J(x0)]^T y| / |x1 - x0| over y in the dual window,
/// r2 bounds the Hessian eigenvalues of x -> <eta, F(x)> over eta in the
/// difference window, k is the Lipschitz constant of F, and r_bar is the
/// worst inner parameter. Each estimate records the boxes it was sampled on.
struct AmenableConstants {
  double r1 = 0.0;
  double r2 = 0.0;
  double k = 0.0;
  double r_bar = 0.0;
  Box x_box;
  Box y_box;
};

/// C2 mapping F: R^n -> R^m with analytic Jacobian and component Hessians.
struct CsqMap {
  std::size_t n = 1;
  std::size_t m = 1;
  std::string id;
  std::function<Vec(const Vec&)> eval;
  // jacobian(x)[i][j] = dF_i / dx_j
  std::function<std::vector<Vec>(const Vec&)> jacobian;
  // hessians(x)[i] = n x n Hessian of component i, row-major
  std::function<std::vector<Vec>(const Vec&)> hessians;
};

/// Samples the suprema defining (r1, r2, k) over the boxes and takes
/// r_bar = max_i r_i. Sampled maxima are inflated by 10% except when the
/// sampled quantity is constant across samples, where the supremum is exact
/// (the diagonal map's k = sqrt(m) is reproduced exactly this way).
AmenableConstants estimate_amenable_constants(const CsqMap& F, const Box& y_box,
                                              const Box& x_box,
                                              const std::vector<PRParams>& inner);

/// Composition rule: r = r1 + r2 + r_bar k^2 with the caller-supplied eps.
PRParams amenable_params(const AmenableConstants& c, double eps);

/// The diagonal map x -> (x, ..., x) with m copies (n = 1).
CsqMap diagonal_map(std::size_t m);
/// Identity on R (m = n = 1).
CsqMap identity_map();
/// x -> (x, x^2) on R.
CsqMap parabola_pair_map();

}  // namespace proxkit
