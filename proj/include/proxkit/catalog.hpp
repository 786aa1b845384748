#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "proxkit/oracle.hpp"

namespace proxkit {

/// Analytically known quadratic-minorant parameters (eps, r) valid at every
/// point of the entry's window; convex entries carry r = 0.
struct KnownParams {
  double eps = 1.0;
  double r = 0.0;
};

struct CatalogEntry {
  std::string id;
  std::variant<FunctionOracle, ParametrizedOracle> oracle;
  bool convex = false;
  bool prox_regular_everywhere = false;
  bool not_prox_regular_at_0 = false;
  bool prox_bounded = false;
  std::optional<double> threshold;       // prox-boundedness threshold when known
  std::optional<KnownParams> pr_params;  // valid at every base point when set
  std::string note;                      // analytic justification for the flags

  bool is_parametrized() const {
    return std::holds_alternative<ParametrizedOracle>(oracle);
  }
  const FunctionOracle& fn() const { return std::get<FunctionOracle>(oracle); }
  const ParametrizedOracle& par() const { return std::get<ParametrizedOracle>(oracle); }
  /// Parametrized view regardless of the stored kind.
  ParametrizedOracle parametrized() const;
};

/// All catalog entries, construction-order stable.
const std::vector<CatalogEntry>& catalog();

/// Lookup by id; throws UsageError when unknown.
const CatalogEntry& catalog_entry(const std::string& id);

bool catalog_has(const std::string& id);

/// Closed-form proximal average of 1D (x^2/2, |x|): value and derivative.
/// Exposed separately because it doubles as an exact cross-check for the
/// grid-based evaluators.
double pa_quad_abs_value(double x, double lambda);
double pa_quad_abs_deriv(double x, double lambda);

}  // namespace proxkit
