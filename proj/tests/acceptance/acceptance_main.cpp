// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failed criteria. Tolerances are pinned here, not
// configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "proxkit/calculus.hpp"
#include "proxkit/catalog.hpp"
#include "proxkit/certify.hpp"
#include "proxkit/cli.hpp"
#include "proxkit/envelope.hpp"
#include "proxkit/transforms.hpp"

using namespace proxkit;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void note(const std::string& msg) { g_notes.push_back(msg); }

void report(int index, const char* title, bool ok, double secs) {
  std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", index, title, secs);
  if (!ok) {
    ++g_failures;
    for (const std::string& n : g_notes) std::printf("        %s\n", n.c_str());
  }
  g_notes.clear();
}

int run_cli_quiet(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

SamplerConfig sampler(std::uint64_t seed = 0) {
  SamplerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// ---- criterion 1: kink-family reproduction through the CLI ----
bool criterion1(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  {
    auto t = std::chrono::steady_clock::now();
    int code = run_cli_quiet({"check", "--function", "lambda_abs", "--xbar", "0",
                              "--lambdabar", "1", "--vbar", "0", "--eps", "0.5", "--r", "0"});
    double dt = seconds_since(t);
    if (code != 0) {
      ok = false;
      note("positive-parameter check should pass, exit " + std::to_string(code));
    }
    if (dt >= 5.0) {
      ok = false;
      note("positive check took " + std::to_string(dt) + "s");
    }
  }
  for (double r : {1.0, 10.0, 100.0, 1e4}) {
    auto t = std::chrono::steady_clock::now();
    std::string out_path = "/tmp/proxkit_acc_c1.json";
    std::ostringstream rs;
    rs << r;
    int code = run_cli_quiet({"check", "--function", "lambda_abs", "--xbar", "0",
                              "--lambdabar", "-1", "--vbar", "1", "--eps", "0.5", "--r",
                              rs.str(), "--output", out_path});
    double dt = seconds_since(t);
    if (code != 1) {
      ok = false;
      note("negative-parameter check at r=" + rs.str() + " should fail, exit " +
           std::to_string(code));
    }
    if (dt >= 5.0) {
      ok = false;
      note("negative check took " + std::to_string(dt) + "s");
    }
    int replay = run_cli_quiet({"check", "--replay-witness", out_path});
    if (replay != 0) {
      ok = false;
      note("witness replay mismatched at r=" + rs.str());
    }
    std::remove(out_path.c_str());
  }
  *secs = seconds_since(t0);
  return ok;
}

struct BasePoint {
  Vec x, lambda, v;
};

// Deterministic random base points inside the admissible windows.
std::vector<BasePoint> base_points(const CatalogEntry& e, std::size_t count, double eps,
                                   std::mt19937_64& rng) {
  ParametrizedOracle f = e.parametrized();
  std::uniform_real_distribution<double> U(-1.2, 1.2);
  std::vector<BasePoint> out;
  while (out.size() < count) {
    BasePoint b;
    b.x.resize(f.x_dim);
    for (auto& c : b.x) c = U(rng);
    b.lambda.resize(f.lambda_dim);
    for (std::size_t i = 0; i < f.lambda_dim; ++i) {
      double lo = f.lambda_domain.lower[i] + eps;
      double hi = f.lambda_domain.upper[i] - eps;
      if (lo > hi) {
        lo = f.lambda_domain.lower[i];
        hi = f.lambda_domain.upper[i];
      }
      b.lambda[i] = lo + (hi - lo) * std::uniform_real_distribution<double>(0, 1)(rng);
    }
    if (!f.eval(b.x, b.lambda).is_finite()) continue;
    GeneratorSet gens = f.subdiff_x(b.x, b.lambda);
    if (gens.empty()) continue;
    b.v = gens.front();
    out.push_back(std::move(b));
  }
  return out;
}

// ---- criterion 2: convex entries certify with r = 0 ----
bool criterion2(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::mt19937_64 rng(42);
  const double eps = 0.25;
  std::size_t entries = 0;
  for (const CatalogEntry& e : catalog()) {
    if (!e.convex) continue;
    ++entries;
    ParametrizedOracle f = e.parametrized();
    for (const BasePoint& b : base_points(e, 10, eps, rng)) {
      Certificate cert{b.x, b.lambda, b.v, eps, 0.0};
      CheckReport rep = check_para_prox_regular(f, cert, sampler(rng() % 1000));
      if (rep.verdict != Verdict::Pass) {
        ok = false;
        note(e.id + " at x=" + std::to_string(b.x[0]) + " gave " +
             verdict_name(rep.verdict));
      }
    }
  }
  if (entries < 8) {
    ok = false;
    note("expected a richer convex catalog, found " + std::to_string(entries));
  }
  *secs = seconds_since(t0);
  if (*secs >= 30.0) {
    ok = false;
    note("criterion 2 exceeded its 30s budget");
  }
  return ok;
}

// ---- criterion 3: envelope golden values ----
bool criterion3(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  Grid g(Box::cube(1, -4, 4), 4001);
  const auto& quad = catalog_entry("quad").fn();
  const auto& abs_ = catalog_entry("abs").fn();
  auto close = [&](double got, double want, const char* what) {
    if (std::abs(got - want) > 1e-3) {
      ok = false;
      note(std::string(what) + ": got " + std::to_string(got));
    }
  };
  close(moreau_envelope(quad, 1.0, {2.0}, g).value.finite(), 1.0, "e_1(x^2/2)(2)");
  close(moreau_envelope(abs_, 1.0, {2.0}, g).value.finite(), 1.5, "e_1(|x|)(2)");
  close(moreau_envelope(abs_, 1.0, {0.5}, g).value.finite(), 0.125, "e_1(|x|)(0.5)");
  std::vector<Vec> pm = prox_map(abs_, 1.0, {2.0}, g);
  if (pm.size() != 1 || std::abs(pm[0][0] - 1.0) > g.spacing(0)) {
    ok = false;
    note("P_1(|x|)(2) missed the soft-threshold point");
  }
  *secs = seconds_since(t0);
  return ok;
}

// ---- criterion 4: proximal-average dual-formulation agreement ----
bool criterion4(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  Grid g(Box::cube(1, -2, 2), 401);
  EnvelopeCache cache;
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"quad", "abs"}, {"quad", "quad"}, {"abs", "abs"}};
  for (const auto& [id0, id1] : pairs) {
    const auto& f0 = catalog_entry(id0).fn();
    const auto& f1 = catalog_entry(id1).fn();
    PaConvexEvaluator conv(f0, f1, g, &cache);
    PaEnvEvaluator env(f0, f1, g, &cache);
    double worst = 0.0;
    for (double lam : {0.25, 0.5, 0.75})
      for (std::size_t i = 1; i + 1 < g.node_count(); ++i) {
        Vec x = g.node(i);
        worst = std::max(worst,
                         std::abs(conv.eval(x, lam).finite() - env.eval(x, lam).finite()));
      }
    if (worst > 1e-3) {
      ok = false;
      note(id0 + "/" + id1 + " route disagreement " + std::to_string(worst));
    }
    double worst0 = 0.0, worst1 = 0.0;
    for (std::size_t i = 1; i + 1 < g.node_count(); i += 4) {
      Vec x = g.node(i);
      worst0 =
          std::max(worst0, std::abs(conv.eval(x, 0.0).finite() - f0.eval(x).finite()));
      worst1 =
          std::max(worst1, std::abs(conv.eval(x, 1.0).finite() - f1.eval(x).finite()));
    }
    if (worst0 > 1e-3 || worst1 > 1e-3) {
      ok = false;
      note(id0 + "/" + id1 + " endpoint recovery off by " +
           std::to_string(std::max(worst0, worst1)));
    }
  }
  for (const char* id : {"quad", "abs"}) {
    const auto& f = catalog_entry(id).fn();
    PaConvexEvaluator conv(f, f, g, &cache);
    double worst = 0.0;
    for (double lam : {0.25, 0.5, 0.75})
      for (std::size_t i = 1; i + 1 < g.node_count(); i += 4) {
        Vec x = g.node(i);
        worst = std::max(worst, std::abs(conv.eval(x, lam).finite() - f.eval(x).finite()));
      }
    if (worst > 1e-3) {
      ok = false;
      note(std::string("self-average of ") + id + " off by " + std::to_string(worst));
    }
  }
  *secs = seconds_since(t0);
  if (*secs >= 60.0) {
    ok = false;
    note("criterion 4 exceeded its 60s budget");
  }
  return ok;
}

// ---- criterion 5: nonconvex proximal average sanity ----
bool criterion5(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  Grid g(Box::cube(1, -2, 2), 401);
  const auto& quad = catalog_entry("quad").fn();
  const auto& hub = catalog_entry("huberizable").fn();
  EnvelopeCache cache;
  NcpaEvaluator ncpa(quad, hub, 4.0, g, &cache);
  for (double lam : {0.1, 0.5, 0.9})
    for (std::size_t i = 0; i < g.node_count(); i += 5)
      if (!ncpa.eval(g.node(i), lam).is_finite()) {
        ok = false;
        note("average not finite at node " + std::to_string(i));
      }
  double lip = 0.0;
  for (double x : {-1.5, -0.5, 0.0, 0.5, 1.5})
    for (double lam = 0.1; lam < 0.9 - 1e-9; lam += 0.05)
      lip = std::max(lip, std::abs(ncpa.eval({x}, lam + 0.05).finite() -
                                   ncpa.eval({x}, lam).finite()) /
                              0.05);
  if (!std::isfinite(lip) || lip > 1e3) {
    ok = false;
    note("weight-direction Lipschitz estimate " + std::to_string(lip));
  }
  // the mix gate on the certification window around the base point
  Grid window(Box::cube(1, 0.25, 0.75), 2001);
  double mix = lipschitz_mix_prox(quad, hub, 4.0, 0.5, window);
  if (!(mix < 1.0 + 1e-6)) {
    ok = false;
    note("prox-mix Lipschitz gate " + std::to_string(mix));
  }
  ParametrizedOracle f = ncpa.oracle(0.1, 0.9);
  Vec vbar = f.subdiff_x({0.5}, {0.5}).front();
  SearchResult res = search_certificate(f, {0.5}, {0.5}, vbar, sampler(7),
                                        {0.2, 0.1, 0.05}, {0, 1, 2, 4, 4.5, 6, 8, 16});
  if (!res.found) {
    ok = false;
    note("certificate search at (0.5, 0.5) came up empty");
  }
  *secs = seconds_since(t0);
  return ok;
}

std::vector<std::pair<ParametrizedOracle, Certificate>> certified_instances() {
  std::vector<std::pair<ParametrizedOracle, Certificate>> out;
  std::mt19937_64 rng(1234);
  const double eps = 0.25;
  for (const CatalogEntry& e : catalog()) {
    if (!e.convex) continue;
    ParametrizedOracle f = e.parametrized();
    for (const BasePoint& b : base_points(e, 2, eps, rng))
      out.push_back({f, Certificate{b.x, b.lambda, b.v, eps, 0.0}});
  }
  ParametrizedOracle dw = promote(catalog_entry("double_well").fn());
  for (double x : {0.0, 1.0, -0.6}) {
    Vec v = dw.subdiff_x({x}, {}).front();
    out.push_back({dw, Certificate{{x}, {}, v, 0.5, 4.0}});
  }
  out.push_back(
      {catalog_entry("lambda_abs").par(), Certificate{{0.0}, {1.0}, {0.0}, 0.5, 0.0}});
  return out;
}

// ---- criterion 6: direct implies monotone on every certified instance ----
bool criterion6(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t passing = 0;
  std::size_t idx = 0;
  for (const auto& [f, cert] : certified_instances()) {
    EquivalenceReport rep = cross_validate_equivalence(f, cert, sampler(idx++));
    if (rep.direct.verdict != Verdict::Pass) {
      ok = false;
      note("instance " + std::to_string(idx) + " direct check " +
           verdict_name(rep.direct.verdict));
      continue;
    }
    if (rep.monotone.verdict != Verdict::Pass || !rep.implication_consistent) {
      ok = false;
      note("instance " + std::to_string(idx) + " broke the implication");
    }
    ++passing;
  }
  if (passing < 20) {
    ok = false;
    note("only " + std::to_string(passing) + " certified instances");
  }
  *secs = seconds_since(t0);
  return ok;
}

// ---- criterion 7: recentering preserves verdicts and margins ----
bool criterion7(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  struct Inst {
    std::string id;
    Vec x, l;
    double eps, r;
  };
  std::vector<Inst> insts = {
      {"quad", {1.0}, {}, 0.25, 0.5},
      {"abs", {0.5}, {}, 0.25, 0.0},
      {"abs", {0.0}, {}, 0.25, 0.0},
      {"huber", {1.5}, {}, 0.25, 0.5},
      {"double_well", {1.0}, {}, 0.5, 4.0},
      {"huberizable", {0.0}, {}, 0.5, 1.5},
      {"neg_abs", {0.0}, {}, 0.5, 10.0},
      {"lambda_abs", {0.3}, {1.2}, 0.25, 0.5},
      {"lambda_abs_pos", {0.0}, {1.0}, 0.25, 0.0},
      {"shifted_quad", {0.7}, {0.2}, 0.25, 0.0},
      {"pa_quad_abs", {0.4}, {0.6}, 0.2, 0.0},
      {"quad2d", {0.5, -0.3}, {}, 0.25, 0.0},
  };
  std::size_t count = 0;
  for (const Inst& inst : insts) {
    ParametrizedOracle f = catalog_entry(inst.id).parametrized();
    GeneratorSet gens = f.subdiff_x(inst.x, inst.l);
    Vec v(f.x_dim, 0.0);
    if (gens.size() == 1) {
      v = gens.front();
    } else {
      // hull midpoint, so the recentered certificate sits at subgradient zero
      for (const Vec& gvec : gens)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += gvec[k] / double(gens.size());
    }
    Certificate cert{inst.x, inst.l, v, inst.eps, inst.r};
    CheckReport base = check_para_prox_regular(f, cert, sampler(5));
    ParametrizedOracle shifted = build_tilt_shift(f, inst.x, v);
    Certificate cert0{Vec(f.x_dim, 0.0), inst.l, Vec(f.x_dim, 0.0), inst.eps, inst.r};
    CheckReport moved = check_para_prox_regular(shifted, cert0, sampler(5));
    bool same_verdict = base.verdict == moved.verdict;
    bool same_margin = base.worst_margin.has_value() == moved.worst_margin.has_value() &&
                       (!base.worst_margin ||
                        std::abs(*base.worst_margin - *moved.worst_margin) <= 1e-9);
    if (!same_verdict || !same_margin) {
      ok = false;
      note(inst.id + ": verdicts " + verdict_name(base.verdict) + "/" +
           verdict_name(moved.verdict) + ", margins " +
           std::to_string(base.worst_margin.value_or(-1)) + "/" +
           std::to_string(moved.worst_margin.value_or(-1)));
    }
    ++count;
  }
  if (count < 10) ok = false;
  *secs = seconds_since(t0);
  return ok;
}

// ---- criterion 8: composed parameters certify the composed oracles ----
bool criterion8(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  // the closed-form arithmetic, frozen exactly
  {
    PRParams p = scalar_mult_params({0.5, 2.0}, 3.0);
    if (!(p.eps == 0.5 && p.r == 6.0)) ok = false;
    p = scalar_mult_params({0.5, 2.0}, 0.1);
    if (!(p.eps == 0.05 && p.r == 0.2)) ok = false;
    p = scalar_mult_para_params({0.4, 2.0}, 1.0);
    if (!(p.eps == 0.2 && p.r == 3.0)) ok = false;
    p = scalar_mult_para_params({0.1, 1.0}, 4.0);
    if (!(p.eps == 0.1 && p.r == 6.0)) ok = false;
    p = sum_params({{0.1, 1.0}, {0.2, 2.0}, {0.3, 5.0}});
    if (!(p.eps == 0.1 && p.r == 15.0)) ok = false;
    p = weighted_sum_params({{0.4, 1.0}, {0.4, 1.0}}, {1.0, 2.0});
    if (!(p.eps == 0.4 && p.r == 4.0)) ok = false;
    p = para_sum_params({{0.4, 1.0}, {0.4, 1.0}}, {1.0, 2.0});
    if (!(p.eps == 0.2 && p.r == 6.0)) ok = false;
    p = para_sum_params({{1.0, 2.0}}, {0.5});
    if (!(p.eps == 0.25 && p.r == 1.5)) ok = false;
    p = para_max_params({{0.2, 2.0}, {0.2, 4.0}}, {1.0, 1.0});
    if (!(p.eps == 0.1 && p.r == 6.0)) ok = false;
    AmenableConstants c;
    c.r1 = 1.0;
    c.r2 = 2.0;
    c.k = std::sqrt(5.0);
    c.r_bar = 3.0;
    if (std::abs(amenable_params(c, 1.0).r - 18.0) > 1e-12) ok = false;
    if (!ok) note("formula arithmetic drifted from the closed forms");
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> W(0.4, 2.0);
  const std::vector<std::string> sum_pool = {"abs", "quad", "huber", "double_well",
                                             "linear"};
  const std::vector<std::string> max_pool = {"quad", "huber", "double_well", "linear",
                                             "neg_linear"};
  std::size_t validated = 0;

  for (int trial = 0; trial < 10; ++trial) {
    std::size_t m = 2 + trial % 2;
    std::vector<FunctionOracle> atoms;
    std::vector<PRParams> ps;
    Vec lam;
    for (std::size_t i = 0; i < m; ++i) {
      const CatalogEntry& e = catalog_entry(sum_pool[rng() % sum_pool.size()]);
      atoms.push_back(e.fn());
      ps.push_back({e.pr_params->eps, e.pr_params->r});
      lam.push_back(W(rng));
    }
    PRParams emitted = para_sum_params(ps, lam);
    ParametrizedOracle f = build_weighted_sum(atoms);
    Vec x{trial % 3 == 0 ? 0.0 : std::uniform_real_distribution<double>(-0.5, 0.5)(rng)};
    Vec vbar(1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      vbar[0] += lam[i] * eval_subdifferential(atoms[i], x).front()[0];
    Certificate cert{x, lam, vbar, emitted.eps, emitted.r};
    CheckReport rep = check_para_prox_regular(f, cert, sampler(trial));
    if (rep.verdict != Verdict::Pass) {
      ok = false;
      note("weighted-sum trial " + std::to_string(trial) + ": " +
           verdict_name(rep.verdict));
    } else {
      ++validated;
    }
  }

  for (int trial = 0; trial < 8; ++trial) {
    std::size_t m = 2 + trial % 2;
    std::vector<FunctionOracle> atoms;
    std::vector<PRParams> ps;
    Vec lam;
    for (std::size_t i = 0; i < m; ++i) {
      const CatalogEntry& e = catalog_entry(max_pool[rng() % max_pool.size()]);
      atoms.push_back(e.fn());
      ps.push_back({e.pr_params->eps, e.pr_params->r});
      lam.push_back(W(rng));
    }
    PRParams emitted = para_max_params(ps, lam);
    ParametrizedOracle f = build_weighted_max(atoms);
    Vec x{std::uniform_real_distribution<double>(-0.5, 0.5)(rng)};
    Vec vbar = f.subdiff_x(x, lam).front();
    Certificate cert{x, lam, vbar, emitted.eps, emitted.r};
    CheckReport rep = check_para_prox_regular(f, cert, sampler(100 + trial));
    if (rep.verdict != Verdict::Pass) {
      ok = false;
      note("weighted-max trial " + std::to_string(trial) + ": " +
           verdict_name(rep.verdict));
    } else {
      ++validated;
    }
  }

  // diagonal composition reproduces the plain-sum weight m * max r_i
  for (std::size_t m : {std::size_t(2), std::size_t(3)}) {
    std::vector<FunctionOracle> atoms;
    std::vector<PRParams> ps;
    for (std::size_t i = 0; i < m; ++i) {
      const CatalogEntry& e = catalog_entry(i % 2 == 0 ? "double_well" : "quad");
      atoms.push_back(e.fn());
      ps.push_back({e.pr_params->eps, e.pr_params->r});
    }
    AmenableConstants c = estimate_amenable_constants(diagonal_map(m), Box::cube(m, -1, 1),
                                                      Box::cube(1, -1, 1), ps);
    PRParams emitted = amenable_params(c, sum_params(ps).eps);
    double rmax = 0.0;
    for (const auto& p : ps) rmax = std::max(rmax, p.r);
    if (std::abs(emitted.r - double(m) * rmax) > 1e-9) {
      ok = false;
      note("diagonal composition r mismatch at m=" + std::to_string(m));
    }
    ParametrizedOracle f = build_weighted_sum(atoms);
    Vec lam(m, 1.0);
    Vec x{0.5};
    Vec vbar(1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      vbar[0] += eval_subdifferential(atoms[i], x).front()[0];
    Certificate cert{x, lam, vbar, emitted.eps, emitted.r};
    CheckReport rep = check_para_prox_regular(f, cert, sampler(m));
    if (rep.verdict != Verdict::Pass) {
      ok = false;
      note("diagonal composition failed certification at m=" + std::to_string(m));
    } else {
      ++validated;
    }
  }

  if (validated < 20) {
    ok = false;
    note("only " + std::to_string(validated) + " compositions validated");
  }
  *secs = seconds_since(t0);
  return ok;
}

// ---- criterion 9: negative controls fail with replayable witnesses ----
bool criterion9(double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  ParametrizedOracle na = promote(catalog_entry("neg_abs").fn());
  for (double r : {1.0, 10.0}) {
    Certificate cert{{0.0}, {}, {1.0}, 0.5, r};
    CheckReport rep = check_para_prox_regular(na, cert, sampler(3));
    if (rep.verdict != Verdict::Fail || !rep.witness) {
      ok = false;
      note("-|x| should fail at r=" + std::to_string(r));
      continue;
    }
    ReplayResult replay = replay_witness(na, cert, *rep.witness);
    if (std::abs(replay.margin - rep.witness->margin) >
        1e-12 * (1.0 + std::abs(rep.witness->margin))) {
      ok = false;
      note("-|x| witness replay drifted");
    }
  }
  const auto& lna = catalog_entry("lambda_neg_abs").par();
  for (double r : {1.0, 10.0}) {
    Certificate cert{{0.0}, {1.0}, {1.0}, 0.5, r};
    CheckReport rep = check_para_prox_regular(lna, cert, sampler(4));
    if (rep.verdict != Verdict::Fail || !rep.witness) {
      ok = false;
      note("lambda(-|x|) should fail at r=" + std::to_string(r));
      continue;
    }
    ReplayResult replay = replay_witness(lna, cert, *rep.witness);
    if (std::abs(replay.margin - rep.witness->margin) >
        1e-12 * (1.0 + std::abs(rep.witness->margin))) {
      ok = false;
      note("lambda(-|x|) witness replay drifted");
    }
  }
  SearchResult s1 = search_certificate(na, {0.0}, {}, {1.0}, sampler(5), {0.5, 0.25},
                                       {1.0, 10.0, 100.0, 1e3, 1e4});
  SearchResult s2 = search_certificate(lna, {0.0}, {1.0}, {1.0}, sampler(6), {0.5, 0.25},
                                       {1.0, 10.0, 100.0, 1e3, 1e4});
  if (s1.found || s2.found) {
    ok = false;
    note("search should exhaust the r grid without a certificate");
  }
  *secs = seconds_since(t0);
  return ok;
}

}  // namespace

int main() {
  double secs = 0.0;
  bool ok;

  ok = criterion1(&secs);
  report(1, "kink family passes at positive parameters, fails at negative ones", ok, secs);
  ok = criterion2(&secs);
  report(2, "convex catalog entries certify with r = 0 at random base points", ok, secs);
  ok = criterion3(&secs);
  report(3, "envelope and prox golden values", ok, secs);
  ok = criterion4(&secs);
  report(4, "proximal-average routes agree, with endpoints and self-averages", ok, secs);
  ok = criterion5(&secs);
  report(5, "nonconvex average is finite, gated, and certifiable", ok, secs);
  ok = criterion6(&secs);
  report(6, "direct certification implies pair monotonicity on shared samples", ok, secs);
  ok = criterion7(&secs);
  report(7, "recentering preserves verdicts and worst margins", ok, secs);
  ok = criterion8(&secs);
  report(8, "composed parameters certify their composed oracles", ok, secs);
  ok = criterion9(&secs);
  report(9, "negative controls fail with replayable witnesses and empty searches", ok, secs);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
