#include "proxkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "proxkit/errors.hpp"

namespace proxkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCheckSlackScale = 1e-8;

double check_slack(double a, double b) {
  return kCheckSlackScale * (1.0 + std::abs(a) + std::abs(b));
}

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= double(base);
    r += f * double(index % base);
    index /= base;
  }
  return r;
}

// Joint (x, lambda) offsets in [-eps', eps']^d. Deterministic given
// (dims, eps, cfg): a centered lattice, a seeded low-discrepancy block, and
// per-axis geometric refinement toward the base point; the refinement is what
// catches violations that only appear as x' -> x_base.
std::vector<Vec> sample_offsets(std::size_t dims, double eps, const SamplerConfig& cfg) {
  const double eps_in = eps * (1.0 - 1e-9);  // keep strict-inequality points
  std::vector<Vec> offsets;
  offsets.emplace_back(dims, 0.0);
  if (dims == 0) return offsets;

  // Lattice, thinned in higher joint dimension to keep pair loops bounded.
  std::size_t per_axis = cfg.points_per_axis;
  if (dims == 3) per_axis = std::min<std::size_t>(per_axis, 9);
  if (dims >= 4) per_axis = std::min<std::size_t>(per_axis, 5);
  per_axis = std::max<std::size_t>(per_axis, 3);
  std::size_t lattice_total = 1;
  for (std::size_t i = 0; i < dims; ++i) lattice_total *= per_axis;
  for (std::size_t flat = 0; flat < lattice_total; ++flat) {
    Vec o(dims);
    std::size_t rem = flat;
    for (std::size_t i = 0; i < dims; ++i) {
      std::size_t idx = rem % per_axis;
      rem /= per_axis;
      o[i] = -eps_in + 2.0 * eps_in * double(idx) / double(per_axis - 1);
    }
    offsets.push_back(std::move(o));
  }

  static const unsigned bases[6] = {2, 3, 5, 7, 11, 13};
  const std::uint64_t start = 1 + (cfg.seed % 65521) * 17;
  for (std::size_t k = 0; k < cfg.halton_points; ++k) {
    Vec o(dims);
    for (std::size_t i = 0; i < dims; ++i)
      o[i] = (2.0 * halton(start + k, bases[i % 6]) - 1.0) * eps_in;
    offsets.push_back(std::move(o));
  }

  for (std::size_t axis = 0; axis < dims; ++axis) {
    for (std::size_t j = 1; j <= cfg.geometric_levels; ++j) {
      double step = eps * std::pow(0.5, double(j));
      for (double s : {-1.0, 1.0}) {
        Vec o(dims, 0.0);
        o[axis] = s * step;
        offsets.push_back(std::move(o));
      }
    }
  }
  std::sort(offsets.begin(), offsets.end(), lex_less);
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  return offsets;
}

double hull_distance(const Vec& v, const GeneratorSet& gens) {
  double best = kInf;
  for (const Vec& g : gens) best = std::min(best, dist(v, g));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Vec d = sub(gens[j], gens[i]);
      double dd = norm2(d);
      if (dd == 0.0) continue;
      double t = std::clamp(dot(sub(v, gens[i]), d) / dd, 0.0, 1.0);
      Vec p = add(gens[i], scaled(d, t));
      best = std::min(best, dist(v, p));
    }
  }
  return best;
}

// Subdifferential samples at one point: oracle generators, pairwise convex
// combinations (hull implied), and in 1D a lattice over the part of the hull
// interval inside the v window (the v-slice of the localized graph).
std::vector<Vec> subdiff_candidates(const GeneratorSet& gens, const Vec& v_base, double eps) {
  std::vector<Vec> cand = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      for (double t : {0.25, 0.5, 0.75}) {
        Vec m(gens[i].size());
        for (std::size_t k = 0; k < m.size(); ++k)
          m[k] = (1.0 - t) * gens[i][k] + t * gens[j][k];
        cand.push_back(std::move(m));
      }
    }
  }
  if (v_base.size() == 1 && gens.size() > 1) {
    double lo = kInf, hi = -kInf;
    for (const Vec& g : gens) {
      lo = std::min(lo, g[0]);
      hi = std::max(hi, g[0]);
    }
    cand.push_back(Vec{std::clamp(v_base[0], lo, hi)});
    const double eps_in = eps * (1.0 - 1e-9);
    double wlo = std::max(lo, v_base[0] - eps_in);
    double whi = std::min(hi, v_base[0] + eps_in);
    if (wlo < whi) {
      for (int k = 0; k <= 8; ++k)
        cand.push_back(Vec{wlo + (whi - wlo) * double(k) / 8.0});
    }
  }
  std::sort(cand.begin(), cand.end(), lex_less);
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const Vec& a, const Vec& b) { return dist(a, b) <= 1e-14; }),
             cand.end());
  return cand;
}

Verdict resolve_verdict(std::size_t violations, std::size_t tuples, std::size_t min_tuples) {
  if (violations > 0) return Verdict::Fail;
  if (tuples < min_tuples) return Verdict::Inconclusive;
  return Verdict::Pass;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::Direct:
      return "direct";
    case WitnessKind::Monotone:
      return "monotone";
    default:
      return "minorant";
  }
}

void validate_certificate(const ParametrizedOracle& f, const Certificate& cert) {
  if (cert.x_base.size() != f.x_dim || cert.v_base.size() != f.x_dim)
    throw dimension_mismatch("certificate x_base/v_base dimension");
  if (cert.lambda_base.size() != f.lambda_dim)
    throw dimension_mismatch("certificate lambda_base dimension");
  if (!(cert.eps > 0.0)) throw usage_error("certificate needs eps > 0");
  if (cert.r < 0.0) throw usage_error("certificate needs r >= 0");
  if (!f.eval(cert.x_base, cert.lambda_base).is_finite())
    throw eval_infinite("certificate base point lies outside dom f");
  if (f.has_subdiff()) {
    GeneratorSet gens = f.subdiff_x(cert.x_base, cert.lambda_base);
    if (hull_distance(cert.v_base, gens) > 1e-9)
      throw usage_error("v_base is not in the subdifferential hull at the base point");
  }
}

Localization collect_localization(const ParametrizedOracle& f, const Certificate& cert,
                                  const SamplerConfig& cfg) {
  validate_certificate(f, cert);
  const std::size_t n = f.x_dim, m = f.lambda_dim;
  Localization loc;
  loc.seed = cfg.seed;
  loc.f_base = f.eval(cert.x_base, cert.lambda_base).finite();

  std::vector<Vec> offsets = sample_offsets(n + m, cert.eps, cfg);

  std::vector<Vec> xs, lambdas;
  std::map<Vec, std::size_t> group_of;
  auto accept_x = [&](const Vec& x) {
    return f.x_domain.contains(x) && dist(x, cert.x_base) < cert.eps;
  };
  auto accept_lambda = [&](const Vec& lam) {
    if (m == 0) return true;
    return f.lambda_domain.contains(lam) && dist(lam, cert.lambda_base) < cert.eps;
  };

  for (const Vec& o : offsets) {
    Vec x(n), lam(m);
    for (std::size_t i = 0; i < n; ++i) x[i] = cert.x_base[i] + o[i];
    for (std::size_t i = 0; i < m; ++i) lam[i] = cert.lambda_base[i] + o[n + i];
    if (!accept_x(x)) continue;
    xs.push_back(x);
    if (!accept_lambda(lam)) continue;

    ExtReal fv = f.eval(x, lam);
    if (!fv.is_finite() || std::abs(fv.finite() - loc.f_base) >= cert.eps) continue;
    if (!f.has_subdiff()) continue;
    GeneratorSet gens;
    try {
      gens = f.subdiff_x(x, lam);
    } catch (const Error&) {
      continue;  // no usable subdifferential sample here
    }
    bool made_tuple = false;
    for (Vec& v : subdiff_candidates(gens, cert.v_base, cert.eps)) {
      if (dist(v, cert.v_base) >= cert.eps) continue;
      SampleTuple t;
      t.x = x;
      t.v = std::move(v);
      t.fval = fv.finite();
      t.lambda = lam;
      loc.tuples.push_back(std::move(t));
      made_tuple = true;
    }
    if (made_tuple) {
      auto [it, inserted] = group_of.emplace(lam, loc.lambda_groups.size());
      if (inserted) loc.lambda_groups.push_back(lam);
    }
  }

  for (std::size_t t = 0; t < loc.tuples.size(); ++t)
    loc.tuple_group.push_back(group_of.at(loc.tuples[t].lambda));

  std::sort(xs.begin(), xs.end(), lex_less);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  loc.x_primes = std::move(xs);

  // Value matrix f(x', lambda_g); pairs later only read from it.
  const std::size_t S = loc.x_primes.size(), G = loc.lambda_groups.size();
  loc.values.assign(S * G, kInf);
  if (G > 0) {
    map_index(
        S * G, loc.values.data(),
        [&](std::size_t idx) {
          std::size_t s = idx / G, g = idx % G;
          return f.eval(loc.x_primes[s], loc.lambda_groups[g]).raw();
        },
        cfg.exec);
  }
  return loc;
}

CheckReport check_direct_on(const Localization& loc, const Certificate& cert,
                            const SamplerConfig& cfg) {
  CheckReport rep;
  rep.seed = loc.seed;
  rep.tuples_checked = loc.tuples.size();
  const std::size_t T = loc.tuples.size(), S = loc.x_primes.size();
  if (T == 0 || S == 0) {
    rep.verdict = resolve_verdict(0, T, cfg.min_tuples);
    return rep;
  }
  auto raw_margin = [&](std::size_t a, std::size_t b) {
    const SampleTuple& t = loc.tuples[a];
    double fx = loc.value_at(b, loc.tuple_group[a]);
    if (fx == kInf) return kInf;  // x' outside dom f: inequality holds trivially
    const Vec& xp = loc.x_primes[b];
    double d2 = 0.0, inner = 0.0;
    for (std::size_t k = 0; k < xp.size(); ++k) {
      double dk = xp[k] - t.x[k];
      d2 += dk * dk;
      inner += t.v[k] * dk;
    }
    return fx - (t.fval + inner - 0.5 * cert.r * d2);
  };
  auto is_violation = [&](std::size_t a, std::size_t b, double margin) {
    if (margin == kInf) return false;
    double fx = loc.value_at(b, loc.tuple_group[a]);
    return margin < -check_slack(loc.tuples[a].fval, fx);
  };
  PairReduction raw = reduce_pairs(T, S, raw_margin, is_violation, cfg.exec);
  if (raw.worst != kInf) rep.worst_margin = raw.worst;
  rep.verdict = resolve_verdict(raw.violations, T, cfg.min_tuples);
  if (raw.violations > 0) {
    // Witness: the most negative margin relative to its own slack.
    auto score = [&](std::size_t a, std::size_t b) {
      double mg = raw_margin(a, b);
      if (mg == kInf) return kInf;
      double fx = loc.value_at(b, loc.tuple_group[a]);
      return mg + check_slack(loc.tuples[a].fval, fx);
    };
    PairReduction scored =
        reduce_pairs(T, S, score, [](std::size_t, std::size_t, double) { return false; },
                     cfg.exec);
    ViolationWitness w;
    w.kind = WitnessKind::Direct;
    w.tuple = loc.tuples[scored.a];
    w.x_prime = loc.x_primes[scored.b];
    double d2 = norm2(sub(w.x_prime, w.tuple.x));
    w.rhs = w.tuple.fval + dot(w.tuple.v, sub(w.x_prime, w.tuple.x)) - 0.5 * cert.r * d2;
    w.lhs = loc.value_at(scored.b, loc.tuple_group[scored.a]);
    w.margin = w.lhs - w.rhs;
    rep.witness = std::move(w);
  }
  return rep;
}

CheckReport check_monotone_on(const Localization& loc, const Certificate& cert,
                              const SamplerConfig& cfg) {
  CheckReport rep;
  rep.seed = loc.seed;
  rep.tuples_checked = loc.tuples.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < loc.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < loc.tuples.size(); ++j)
      if (loc.tuple_group[i] == loc.tuple_group[j]) pairs.emplace_back(i, j);
  if (pairs.empty()) {
    rep.verdict = resolve_verdict(0, loc.tuples.size(), cfg.min_tuples);
    return rep;
  }
  auto raw_margin = [&](std::size_t p, std::size_t) {
    const SampleTuple& a = loc.tuples[pairs[p].first];
    const SampleTuple& b = loc.tuples[pairs[p].second];
    double inner = 0.0, d2 = 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k) {
      double dx = b.x[k] - a.x[k];
      inner += (b.v[k] - a.v[k]) * dx;
      d2 += dx * dx;
    }
    return inner + cert.r * d2;  // lhs - rhs with rhs = -r |dx|^2
  };
  auto is_violation = [&](std::size_t p, std::size_t, double margin) {
    const SampleTuple& a = loc.tuples[pairs[p].first];
    const SampleTuple& b = loc.tuples[pairs[p].second];
    return margin < -check_slack(a.fval, b.fval);
  };
  PairReduction raw = reduce_pairs(pairs.size(), 1, raw_margin, is_violation, cfg.exec);
  rep.worst_margin = raw.worst;
  rep.verdict = resolve_verdict(raw.violations, loc.tuples.size(), cfg.min_tuples);
  if (raw.violations > 0) {
    auto score = [&](std::size_t p, std::size_t) {
      const SampleTuple& a = loc.tuples[pairs[p].first];
      const SampleTuple& b = loc.tuples[pairs[p].second];
      return raw_margin(p, 0) + check_slack(a.fval, b.fval);
    };
    PairReduction scored = reduce_pairs(
        pairs.size(), 1, score, [](std::size_t, std::size_t, double) { return false; },
        cfg.exec);
    const SampleTuple& a = loc.tuples[pairs[scored.a].first];
    const SampleTuple& b = loc.tuples[pairs[scored.a].second];
    ViolationWitness w;
    w.kind = WitnessKind::Monotone;
    w.tuple = a;
    w.tuple1 = b;
    w.x_prime = b.x;
    w.lhs = dot(sub(b.v, a.v), sub(b.x, a.x));
    w.rhs = -cert.r * norm2(sub(b.x, a.x));
    w.margin = w.lhs - w.rhs;
    rep.witness = std::move(w);
  }
  return rep;
}

CheckReport check_para_prox_regular(const ParametrizedOracle& f, const Certificate& cert,
                                    const SamplerConfig& cfg) {
  return check_direct_on(collect_localization(f, cert, cfg), cert, cfg);
}

CheckReport check_prox_regular(const FunctionOracle& f, const Certificate& cert,
                               const SamplerConfig& cfg) {
  return check_para_prox_regular(promote(f), cert, cfg);
}

CheckReport check_monotone_localization(const ParametrizedOracle& f, const Certificate& cert,
                                        const SamplerConfig& cfg) {
  return check_monotone_on(collect_localization(f, cert, cfg), cert, cfg);
}

CheckReport check_proximal_subgradient(const ParametrizedOracle& f, const Vec& x_base,
                                       const Vec& lambda_base, const Vec& v_base, double eps,
                                       double r, const SamplerConfig& cfg) {
  Certificate cert{x_base, lambda_base, v_base, eps, r};
  validate_certificate(f, cert);
  const std::size_t n = f.x_dim, m = f.lambda_dim;
  const double f_base = f.eval(x_base, lambda_base).finite();
  std::vector<Vec> offsets = sample_offsets(n + m, eps, cfg);

  struct Point {
    Vec x, lam;
    double fval;
  };
  std::vector<Point> pts;
  for (const Vec& o : offsets) {
    Vec x(n), lam(m);
    for (std::size_t i = 0; i < n; ++i) x[i] = x_base[i] + o[i];
    for (std::size_t i = 0; i < m; ++i) lam[i] = lambda_base[i] + o[n + i];
    if (!f.x_domain.contains(x) || dist(x, x_base) >= eps) continue;
    if (m > 0 && (!f.lambda_domain.contains(lam) || dist(lam, lambda_base) >= eps)) continue;
    pts.push_back({std::move(x), std::move(lam), 0.0});
  }
  std::vector<double> fv(pts.size());
  map_index(
      pts.size(), fv.data(), [&](std::size_t i) { return f.eval(pts[i].x, pts[i].lam).raw(); },
      cfg.exec);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].fval = fv[i];

  auto raw_margin = [&](std::size_t i, std::size_t) {
    if (pts[i].fval == kInf) return kInf;
    double d2 = norm2(sub(pts[i].x, x_base));
    double rhs = f_base + dot(v_base, sub(pts[i].x, x_base)) - 0.5 * r * d2;
    return pts[i].fval - rhs;
  };
  auto is_violation = [&](std::size_t i, std::size_t, double margin) {
    if (margin == kInf) return false;
    return margin < -check_slack(f_base, pts[i].fval);
  };
  PairReduction raw = reduce_pairs(pts.size(), 1, raw_margin, is_violation, cfg.exec);
  CheckReport rep;
  rep.seed = cfg.seed;
  rep.tuples_checked = pts.size();
  if (raw.worst != kInf) rep.worst_margin = raw.worst;
  rep.verdict = resolve_verdict(raw.violations, pts.size(), cfg.min_tuples);
  if (raw.violations > 0) {
    auto score = [&](std::size_t i, std::size_t) {
      double mg = raw_margin(i, 0);
      return mg == kInf ? kInf : mg + check_slack(f_base, pts[i].fval);
    };
    PairReduction scored = reduce_pairs(
        pts.size(), 1, score, [](std::size_t, std::size_t, double) { return false; },
        cfg.exec);
    const Point& p = pts[scored.a];
    ViolationWitness w;
    w.kind = WitnessKind::Minorant;
    w.x_prime = p.x;
    // Base tuple anchored at the certificate with the sample's lambda, so the
    // replay formula matches the direct check.
    w.tuple = SampleTuple{x_base, v_base, f_base, p.lam};
    w.lhs = p.fval;
    w.rhs = f_base + dot(v_base, sub(p.x, x_base)) - 0.5 * r * norm2(sub(p.x, x_base));
    w.margin = w.lhs - w.rhs;
    rep.witness = std::move(w);
  }
  return rep;
}

SearchResult search_certificate(const ParametrizedOracle& f, const Vec& x_base,
                                const Vec& lambda_base, const Vec& v_base,
                                const SamplerConfig& cfg, std::vector<double> eps_grid,
                                std::vector<double> r_grid) {
  if (eps_grid.empty() || r_grid.empty())
    throw empty_list("search_certificate: empty parameter grid");
  std::sort(eps_grid.rbegin(), eps_grid.rend());
  std::sort(r_grid.begin(), r_grid.end());
  SearchResult res;
  for (double eps : eps_grid) {
    Certificate cert{x_base, lambda_base, v_base, eps, 0.0};
    Localization loc = collect_localization(f, cert, cfg);
    for (double r : r_grid) {
      cert.r = r;
      CheckReport direct = check_direct_on(loc, cert, cfg);
      if (direct.verdict != Verdict::Pass) continue;
      CheckReport mono = check_monotone_on(loc, cert, cfg);
      if (mono.verdict != Verdict::Pass) continue;
      res.found = true;
      res.certificate = cert;
      res.direct = std::move(direct);
      res.monotone = std::move(mono);
      return res;
    }
  }
  return res;
}

EquivalenceReport cross_validate_equivalence(const ParametrizedOracle& f,
                                             const Certificate& cert,
                                             const SamplerConfig& cfg) {
  Localization loc = collect_localization(f, cert, cfg);
  EquivalenceReport rep;
  rep.direct = check_direct_on(loc, cert, cfg);
  rep.monotone = check_monotone_on(loc, cert, cfg);
  rep.implication_consistent =
      !(rep.direct.verdict == Verdict::Pass && rep.monotone.verdict == Verdict::Fail);
  if (rep.monotone.verdict == Verdict::Pass && rep.direct.verdict == Verdict::Fail)
    rep.note = "monotone holds on these samples while the direct inequality fails; "
               "the converse direction is only evidence at sample level";
  else if (rep.monotone.verdict == Verdict::Inconclusive)
    rep.note = "too few localized tuples for pair evidence";
  return rep;
}

InverseEvidence check_inverse_single_valued(const Localization& loc, const Certificate& cert,
                                            double delta_z, double x_tol) {
  InverseEvidence ev;
  const std::size_t T = loc.tuples.size();
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = i + 1; j < T; ++j) {
      if (loc.tuple_group[i] != loc.tuple_group[j]) continue;
      const SampleTuple& a = loc.tuples[i];
      const SampleTuple& b = loc.tuples[j];
      double zdist = 0.0;
      for (std::size_t k = 0; k < a.x.size(); ++k) {
        double d = (a.v[k] + cert.r * a.x[k]) - (b.v[k] + cert.r * b.x[k]);
        zdist += d * d;
      }
      if (std::sqrt(zdist) > delta_z) continue;
      ++ev.clusters_checked;
      double spread = dist(a.x, b.x);
      ev.worst_spread = std::max(ev.worst_spread, spread);
      if (spread > x_tol) ++ev.violations;
    }
  }
  if (ev.violations > 0)
    ev.verdict = Verdict::Fail;
  else if (ev.clusters_checked >= 1)
    ev.verdict = Verdict::Pass;
  return ev;
}

ReplayResult replay_witness(const ParametrizedOracle& f, const Certificate& cert,
                            const ViolationWitness& w) {
  ReplayResult out;
  if (w.kind == WitnessKind::Monotone) {
    if (!w.tuple1) throw usage_error("monotone witness needs a second tuple");
    out.lhs = dot(sub(w.tuple1->v, w.tuple.v), sub(w.tuple1->x, w.tuple.x));
    out.rhs = -cert.r * norm2(sub(w.tuple1->x, w.tuple.x));
  } else {
    out.lhs = f.eval(w.x_prime, w.tuple.lambda).raw();
    out.rhs = w.tuple.fval + dot(w.tuple.v, sub(w.x_prime, w.tuple.x)) -
              0.5 * cert.r * norm2(sub(w.x_prime, w.tuple.x));
  }
  out.margin = out.lhs - out.rhs;
  return out;
}

}  // namespace proxkit
