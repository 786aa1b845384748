#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proxkit/box.hpp"
#include "proxkit/ext_real.hpp"
#include "proxkit/vec.hpp"

namespace proxkit {

enum class Smoothness { C2, C1, Convex, Lsc };

/// Finite set of vectors whose convex hull is the subdifferential at a point.
/// Nonpolyhedral subdifferentials are out of scope for oracles; smooth points
/// carry the singleton {gradient}.
using GeneratorSet = std::vector<Vec>;

/// Extended-real-valued function of x on a box window, with optional gradient
/// and subdifferential-generator oracles. Immutable after construction and
/// safe for concurrent read-only evaluation.
struct FunctionOracle {
  std::size_t dim = 1;
  std::function<ExtReal(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;                  // optional
  std::function<GeneratorSet(const Vec&)> subdiff;      // optional
  Smoothness tag = Smoothness::Lsc;
  bool convex = false;  // asserted by the builder, not detected
  Box domain;
  std::string id;  // stable cache/catalog key; empty for anonymous oracles

  bool has_grad() const { return bool(grad); }
  bool has_subdiff() const { return bool(subdiff); }
  bool differentiable_by_tag() const {
    return tag == Smoothness::C1 || tag == Smoothness::C2;
  }
};

/// f(x, lambda) with per-lambda FunctionOracle semantics.
struct ParametrizedOracle {
  std::size_t x_dim = 1;
  std::size_t lambda_dim = 0;
  std::function<ExtReal(const Vec&, const Vec&)> eval;
  std::function<GeneratorSet(const Vec&, const Vec&)> subdiff_x;  // optional
  Box x_domain;
  Box lambda_domain;
  std::string id;

  bool has_subdiff() const { return bool(subdiff_x); }
};

/// Central-difference step per coordinate.
inline double fd_step(double x) { return std::max(1e-6, 1e-6 * std::abs(x)); }

/// Central-difference gradient; requires finite values at the probe points.
Vec numeric_gradient(const FunctionOracle& f, const Vec& x);

/// Generators of the subdifferential at x. Uses the oracle when present,
/// then the gradient, then central differences when the smoothness tag
/// guarantees differentiability. Throws NoSubdiffOracle otherwise and
/// EvalInfinite outside dom f.
GeneratorSet eval_subdifferential(const FunctionOracle& f, const Vec& x);

/// Lifts a plain function to a parametrized one with an empty parameter
/// (lambda_dim = 0), so every parametric check also covers the plain case.
ParametrizedOracle promote(const FunctionOracle& f);

/// Slice at a fixed parameter value.
FunctionOracle slice(const ParametrizedOracle& f, const Vec& lambda);

}  // namespace proxkit
