#pragma once

#include <vector>

#include "proxkit/oracle.hpp"

namespace proxkit {

/// g(x, lambda) = f(x + x_base, lambda) - <v_base, x>: recenters a certified
/// point at the origin with zero subgradient, so g's subdifferential at
/// (x, lambda) is {w - v_base : w in subdiff f(x + x_base, lambda)}.
ParametrizedOracle build_tilt_shift(const ParametrizedOracle& f, const Vec& x_base,
                                    const Vec& v_base);

/// f(x - lambda) with lambda_dim = dim.
ParametrizedOracle build_arg_shift(const FunctionOracle& f);

/// f(lambda * x) with scalar lambda; generators are the chain-rule scalings
/// {lambda * w : w in subdiff f(lambda x)}.
ParametrizedOracle build_arg_scale(const FunctionOracle& f);

/// sum_i lambda_i f_i(x); generators are the Minkowski sums over the
/// Cartesian product of the atom generator sets.
ParametrizedOracle build_weighted_sum(const std::vector<FunctionOracle>& fs);

/// max_i lambda_i f_i(x) for real-valued C1 atoms; generators are
/// {lambda_i grad f_i(x)} over the active indices within the activity
/// tolerance tau = 1e-9 * (1 + |f(x, lambda)|).
ParametrizedOracle build_weighted_max(const std::vector<FunctionOracle>& fs);

}  // namespace proxkit
