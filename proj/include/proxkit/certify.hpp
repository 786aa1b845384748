#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxkit/kernels.hpp"
#include "proxkit/oracle.hpp"

namespace proxkit {

/// Claim that the quadratic-minorant inequality holds with parameters
/// (eps, r) on the localized region around (x_base, lambda_base, v_base).
/// The lambda-free case uses an empty lambda_base (promoted oracles).
struct Certificate {
  Vec x_base;
  Vec lambda_base;
  Vec v_base;
  double eps = 0.0;
  double r = 0.0;
};

/// One localized datum: x, a subdifferential sample v at (x, lambda), and the
/// function value there.
struct SampleTuple {
  Vec x;
  Vec v;
  double fval = 0.0;
  Vec lambda;
};

struct SamplerConfig {
  std::size_t points_per_axis = 11;   // joint (x, lambda) lattice resolution
  std::size_t halton_points = 256;    // low-discrepancy points in the joint box
  std::size_t geometric_levels = 24;  // per-axis offsets eps * 2^-j toward the base
  std::uint64_t seed = 0;             // offsets the low-discrepancy sequence
  std::size_t min_tuples = 8;         // below this a clean run is inconclusive
  Exec exec = default_exec();
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_name(Verdict v);

enum class WitnessKind { Direct, Monotone, Minorant };

std::string witness_kind_name(WitnessKind k);

/// Re-evaluating the defining inequality on a witness must reproduce the
/// reported margin; pair checks carry the second base tuple in `tuple1`.
struct ViolationWitness {
  WitnessKind kind = WitnessKind::Direct;
  Vec x_prime;
  SampleTuple tuple;
  std::optional<SampleTuple> tuple1;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
};

struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t tuples_checked = 0;
  std::optional<double> worst_margin;  // absent when no finite constraint was evaluated
  std::optional<ViolationWitness> witness;
  std::uint64_t seed = 0;
};

/// Localized samples shared by the inequality and monotonicity checks. The
/// x' candidates contain every tuple base point, which makes the
/// direct-implies-monotone implication sample-exact.
struct Localization {
  std::vector<SampleTuple> tuples;
  std::vector<Vec> x_primes;
  std::vector<Vec> lambda_groups;          // distinct lambda values (exact doubles)
  std::vector<std::size_t> tuple_group;    // tuple index -> lambda group
  std::vector<double> values;              // f(x_primes[s], lambda_groups[g]) row-major
  double f_base = 0.0;
  std::uint64_t seed = 0;

  double value_at(std::size_t x_prime_idx, std::size_t group) const {
    return values[x_prime_idx * lambda_groups.size() + group];
  }
};

/// Throws when the certificate is malformed: dimension mismatches, eps <= 0,
/// r < 0, an infinite base value, or v_base farther than 1e-9 from the
/// generator hull at the base point.
void validate_certificate(const ParametrizedOracle& f, const Certificate& cert);

/// Deterministic lattice + seeded low-discrepancy + geometric refinement
/// points, filtered by the five localization conditions. Subdifferential
/// samples are the oracle generators plus pairwise convex combinations (the
/// hull is implied) and, in 1D, the projection of v_base onto the hull.
Localization collect_localization(const ParametrizedOracle& f, const Certificate& cert,
                                  const SamplerConfig& cfg);

/// Quadratic-minorant inequality over every (tuple, x') pair.
CheckReport check_direct_on(const Localization& loc, const Certificate& cert,
                            const SamplerConfig& cfg);

/// Pair monotonicity <v1 - v0, x1 - x0> >= -r |x1 - x0|^2 over same-lambda
/// tuple pairs.
CheckReport check_monotone_on(const Localization& loc, const Certificate& cert,
                              const SamplerConfig& cfg);

CheckReport check_para_prox_regular(const ParametrizedOracle& f, const Certificate& cert,
                                    const SamplerConfig& cfg);

/// Lambda-free specialization; strict variants are not numerically
/// distinguishable and are checked in the non-strict form with slack.
CheckReport check_prox_regular(const FunctionOracle& f, const Certificate& cert,
                               const SamplerConfig& cfg);

CheckReport check_monotone_localization(const ParametrizedOracle& f, const Certificate& cert,
                                        const SamplerConfig& cfg);

/// Single-base-point minorant f(x, lambda) >= f_base + <v_base, x - x_base>
/// - (r/2)|x - x_base|^2 over all sampled (x, lambda) in the eps window; no
/// f-attentive or v filters apply here.
CheckReport check_proximal_subgradient(const ParametrizedOracle& f, const Vec& x_base,
                                       const Vec& lambda_base, const Vec& v_base, double eps,
                                       double r, const SamplerConfig& cfg);

struct SearchResult {
  bool found = false;
  Certificate certificate;
  CheckReport direct;
  CheckReport monotone;
};

/// Largest eps (then smallest r) from the given grids for which both the
/// direct and the monotonicity check pass.
SearchResult search_certificate(const ParametrizedOracle& f, const Vec& x_base,
                                const Vec& lambda_base, const Vec& v_base,
                                const SamplerConfig& cfg, std::vector<double> eps_grid,
                                std::vector<double> r_grid);

struct EquivalenceReport {
  CheckReport direct;
  CheckReport monotone;
  // Direct pass forces monotone pass on shared samples (sum of two instances
  // of the inequality); the converse is only evidence on finite samples.
  bool implication_consistent = true;
  std::string note;
};

EquivalenceReport cross_validate_equivalence(const ParametrizedOracle& f,
                                             const Certificate& cert,
                                             const SamplerConfig& cfg);

/// Sample-level evidence for single-valuedness of the shifted inverse
/// x -> v + r x: tuples (same lambda) whose z = v + r x values agree within
/// delta_z must agree in x within x_tol. Set-valued inversion is not exactly
/// computable from samples, so this is evidence, never a theorem check.
struct InverseEvidence {
  std::size_t clusters_checked = 0;
  std::size_t violations = 0;
  double worst_spread = 0.0;  // largest |x_i - x_j| within a z cluster
  Verdict verdict = Verdict::Inconclusive;
};

InverseEvidence check_inverse_single_valued(const Localization& loc, const Certificate& cert,
                                            double delta_z, double x_tol);

struct ReplayResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// Recomputes the witness inequality outside the checker.
ReplayResult replay_witness(const ParametrizedOracle& f, const Certificate& cert,
                            const ViolationWitness& witness);

}  // namespace proxkit
