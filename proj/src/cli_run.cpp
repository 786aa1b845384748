#include "proxkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxkit/calculus.hpp"
#include "proxkit/catalog.hpp"
#include "proxkit/certify.hpp"
#include "proxkit/envelope.hpp"
#include "proxkit/errors.hpp"
#include "proxkit/piecewise.hpp"
#include "proxkit/transforms.hpp"

namespace proxkit {

namespace {

using Json = nlohmann::ordered_json;

std::string timestamp_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Vec parse_vec(const std::string& s) {
  Vec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw usage_error("cannot parse number '" + item + "'");
    }
  }
  return out;
}

Json tuple_json(const SampleTuple& t) {
  Json j;
  j["x"] = t.x;
  j["v"] = t.v;
  j["fval"] = t.fval;
  j["lambda"] = t.lambda;
  return j;
}

SampleTuple tuple_from_json(const Json& j) {
  SampleTuple t;
  t.x = j.at("x").get<Vec>();
  t.v = j.at("v").get<Vec>();
  t.fval = j.at("fval").get<double>();
  t.lambda = j.at("lambda").get<Vec>();
  return t;
}

Json witness_json(const ViolationWitness& w) {
  Json j;
  j["kind"] = witness_kind_name(w.kind);
  j["x_prime"] = w.x_prime;
  j["tuple"] = tuple_json(w.tuple);
  j["tuple1"] = w.tuple1 ? tuple_json(*w.tuple1) : Json(nullptr);
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["margin"] = w.margin;
  return j;
}

ViolationWitness witness_from_json(const Json& j) {
  ViolationWitness w;
  std::string kind = j.at("kind").get<std::string>();
  w.kind = kind == "direct"     ? WitnessKind::Direct
           : kind == "monotone" ? WitnessKind::Monotone
                                : WitnessKind::Minorant;
  w.x_prime = j.at("x_prime").get<Vec>();
  w.tuple = tuple_from_json(j.at("tuple"));
  if (j.contains("tuple1") && !j.at("tuple1").is_null())
    w.tuple1 = tuple_from_json(j.at("tuple1"));
  w.lhs = j.at("lhs").get<double>();
  w.rhs = j.at("rhs").get<double>();
  w.margin = j.at("margin").get<double>();
  return w;
}

Json report_json(const CheckReport& rep) {
  Json j;
  j["verdict"] = verdict_name(rep.verdict);
  j["tuples_checked"] = rep.tuples_checked;
  j["worst_margin"] = rep.worst_margin ? Json(*rep.worst_margin) : Json(nullptr);
  j["witness"] = rep.witness ? witness_json(*rep.witness) : Json(nullptr);
  j["seed"] = rep.seed;
  return j;
}

Json cert_json(const Certificate& c) {
  Json j;
  j["xbar"] = c.x_base;
  j["lambdabar"] = c.lambda_base;
  j["vbar"] = c.v_base;
  j["eps"] = c.eps;
  j["r"] = c.r;
  return j;
}

Certificate cert_from_json(const Json& j) {
  Certificate c;
  c.x_base = j.at("xbar").get<Vec>();
  c.lambda_base = j.at("lambdabar").get<Vec>();
  c.v_base = j.at("vbar").get<Vec>();
  c.eps = j.at("eps").get<double>();
  c.r = j.at("r").get<double>();
  return c;
}

struct FunctionRef {
  ParametrizedOracle oracle;
  bool parametrized = false;
  std::string ref;
};

FunctionRef resolve_function(const std::string& ref) {
  FunctionRef out;
  out.ref = ref;
  if (ref.empty()) throw usage_error("--function is required");
  if (catalog_has(ref)) {
    const CatalogEntry& e = catalog_entry(ref);
    out.oracle = e.parametrized();
    out.parametrized = e.is_parametrized();
    return out;
  }
  if (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json") {
    out.oracle = promote(load_piecewise_file(ref));
    out.parametrized = false;
    return out;
  }
  throw usage_error("unknown function '" + ref + "' (not a catalog id or .json spec)");
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("PROXKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw usage_error("PROXKIT_SEED is not an unsigned integer");
    }
  }
  return flag_seed;
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(output_path);
  if (!f) throw usage_error("cannot write output file: " + output_path);
  f << text << "\n";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    default:
      return 3;
  }
}

struct CheckArgs {
  std::string function;
  std::string xbar, lambdabar, vbar;
  double eps = 0.25;
  double r = 0.0;
  std::size_t points = 11;
  std::size_t halton = 256;
  std::size_t levels = 24;
  std::uint64_t seed = 0;
  std::string output;
  std::string replay_path;
  bool monotone = false;
  bool minorant = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (!a.replay_path.empty()) {
    std::ifstream in(a.replay_path);
    if (!in) throw usage_error("cannot open report for replay: " + a.replay_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      throw spec_parse_error(std::string("replay file: ") + e.what());
    }
    if (!j.contains("report") || j.at("report").at("witness").is_null())
      throw usage_error("replay file carries no witness");
    FunctionRef fn = resolve_function(j.at("function").get<std::string>());
    Certificate cert = cert_from_json(j.at("certificate"));
    ViolationWitness w = witness_from_json(j.at("report").at("witness"));
    ReplayResult res = replay_witness(fn.oracle, cert, w);
    Json rj;
    rj["command"] = "check";
    rj["mode"] = "replay";
    rj["function"] = fn.ref;
    rj["reported_margin"] = w.margin;
    rj["replayed_margin"] = res.margin;
    double diff = std::abs(res.margin - w.margin);
    rj["abs_difference"] = diff;
    bool ok = diff <= 1e-12 * (1.0 + std::abs(w.margin));
    rj["reproduced"] = ok;
    rj["timestamp"] = timestamp_utc();
    emit(rj.dump(2), a.output, out);
    return ok ? 0 : 1;
  }

  FunctionRef fn = resolve_function(a.function);
  Certificate cert;
  cert.x_base = parse_vec(a.xbar);
  cert.lambda_base = parse_vec(a.lambdabar);
  cert.v_base = parse_vec(a.vbar);
  cert.eps = a.eps;
  cert.r = a.r;
  SamplerConfig cfg;
  cfg.points_per_axis = a.points;
  cfg.halton_points = a.halton;
  cfg.geometric_levels = a.levels;
  cfg.seed = effective_seed(a.seed);

  CheckReport rep;
  std::string mode;
  if (a.minorant) {
    mode = "minorant";
    rep = check_proximal_subgradient(fn.oracle, cert.x_base, cert.lambda_base, cert.v_base,
                                     cert.eps, cert.r, cfg);
  } else if (a.monotone) {
    mode = "monotone";
    rep = check_monotone_localization(fn.oracle, cert, cfg);
  } else {
    mode = fn.parametrized ? "para-prox-regular" : "prox-regular";
    rep = check_para_prox_regular(fn.oracle, cert, cfg);
  }
  Json j;
  j["command"] = "check";
  j["mode"] = mode;
  j["function"] = fn.ref;
  j["certificate"] = cert_json(cert);
  j["report"] = report_json(rep);
  j["sampler"] = Json{{"points", cfg.points_per_axis},
                      {"halton", cfg.halton_points},
                      {"geometric_levels", cfg.geometric_levels},
                      {"seed", cfg.seed},
                      {"min_tuples", cfg.min_tuples}};
  j["timestamp"] = timestamp_utc();
  emit(j.dump(2), a.output, out);
  return verdict_exit(rep.verdict);
}

struct SearchArgs {
  std::string function;
  std::string xbar, lambdabar, vbar;
  std::string eps_grid = "0.5,0.25,0.1";
  std::string r_grid = "0,1,10,100";
  std::size_t points = 11;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_search(const SearchArgs& a, std::ostream& out) {
  FunctionRef fn = resolve_function(a.function);
  SamplerConfig cfg;
  cfg.points_per_axis = a.points;
  cfg.seed = effective_seed(a.seed);
  SearchResult res =
      search_certificate(fn.oracle, parse_vec(a.xbar), parse_vec(a.lambdabar),
                         parse_vec(a.vbar), cfg, parse_vec(a.eps_grid), parse_vec(a.r_grid));
  Json j;
  j["command"] = "search";
  j["function"] = fn.ref;
  j["found"] = res.found;
  if (res.found) {
    j["certificate"] = cert_json(res.certificate);
    j["direct"] = report_json(res.direct);
    j["monotone"] = report_json(res.monotone);
  } else {
    j["certificate"] = nullptr;
  }
  j["eps_grid"] = parse_vec(a.eps_grid);
  j["r_grid"] = parse_vec(a.r_grid);
  j["seed"] = cfg.seed;
  j["timestamp"] = timestamp_utc();
  emit(j.dump(2), a.output, out);
  return res.found ? 0 : 1;
}

int cmd_catalog(const std::string& output, std::ostream& out) {
  Json list = Json::array();
  for (const CatalogEntry& e : catalog()) {
    Json j;
    j["id"] = e.id;
    j["parametrized"] = e.is_parametrized();
    j["convex"] = e.convex;
    j["prox_regular_everywhere"] = e.prox_regular_everywhere;
    j["not_prox_regular_at_0"] = e.not_prox_regular_at_0;
    j["prox_bounded"] = e.prox_bounded;
    j["threshold"] = e.threshold ? Json(*e.threshold) : Json(nullptr);
    if (e.pr_params)
      j["pr_params"] = Json{{"eps", e.pr_params->eps}, {"r", e.pr_params->r}};
    else
      j["pr_params"] = nullptr;
    j["note"] = e.note;
    list.push_back(std::move(j));
  }
  Json j;
  j["command"] = "catalog";
  j["entries"] = std::move(list);
  j["timestamp"] = timestamp_utc();
  emit(j.dump(2), output, out);
  return 0;
}

struct PaArgs {
  std::string f0 = "quad", f1 = "abs";
  std::vector<double> box{-2.0, 2.0};
  std::size_t points = 401;
  double r = 4.0;
  std::string lambdas = "0,0.25,0.5,0.75,1";
  std::string output;
};

int cmd_pa(const PaArgs& a, std::ostream& out) {
  const FunctionOracle& f0 = catalog_entry(a.f0).fn();
  const FunctionOracle& f1 = catalog_entry(a.f1).fn();
  if (a.box.size() != 2 || !(a.box[0] < a.box[1]))
    throw usage_error("--box expects lower upper with lower < upper");
  Grid grid(Box(Vec{a.box[0]}, Vec{a.box[1]}), a.points);
  EnvelopeCache cache;
  PaConvexEvaluator conv(f0, f1, grid, &cache);
  PaEnvEvaluator env(f0, f1, grid, &cache);
  NcpaEvaluator ncpa(f0, f1, a.r, grid, &cache);
  std::ostringstream csv;
  csv << "x,lambda,pa_convex,pa_convex_env,nc_pa\n";
  csv.precision(12);
  for (double lam : parse_vec(a.lambdas)) {
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      Vec x = grid.node(i);
      csv << x[0] << "," << lam << "," << conv.eval(x, lam).raw() << ","
          << env.eval(x, lam).raw() << ",";
      if (lam > 0.0 && lam < 1.0) csv << ncpa.eval(x, lam).raw();
      csv << "\n";
    }
  }
  if (a.output.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(a.output);
    if (!f) throw usage_error("cannot write output file: " + a.output);
    f << csv.str();
  }
  return 0;
}

struct CalculusArgs {
  std::string rule;
  std::string input;
  bool validate = false;
  std::size_t points = 11;
  std::uint64_t seed = 0;
  std::string output;
};

std::vector<PRParams> params_from_json(const Json& j) {
  std::vector<PRParams> ps;
  if (!j.is_array()) throw spec_parse_error("'params' must be an array");
  for (const auto& e : j) {
    if (e.is_array() && e.size() == 2) {
      ps.push_back({e[0].get<double>(), e[1].get<double>()});
    } else if (e.is_object()) {
      ps.push_back({e.at("eps").get<double>(), e.at("r").get<double>()});
    } else {
      throw spec_parse_error("'params' entries must be [eps, r] or {eps, r}");
    }
  }
  return ps;
}

// Base subgradient when the input does not pin one: the first generator of
// the composed oracle at the base point.
Vec default_vbar(const ParametrizedOracle& f, const Vec& xbar, const Vec& lbar) {
  GeneratorSet gens = f.subdiff_x(xbar, lbar);
  if (gens.empty()) throw usage_error("no subdifferential generator at the base point");
  return gens.front();
}

int cmd_calculus(const CalculusArgs& a, std::ostream& out) {
  Json in;
  {
    std::ifstream f(a.input);
    if (!f) throw usage_error("cannot open input: " + a.input);
    try {
      in = Json::parse(f);
    } catch (const std::exception& e) {
      throw spec_parse_error(std::string("calculus input: ") + e.what());
    }
  }
  std::vector<PRParams> ps;
  if (in.contains("params")) ps = params_from_json(in["params"]);
  Vec lambda;
  if (in.contains("lambda")) {
    if (in["lambda"].is_number())
      lambda = Vec{in["lambda"].get<double>()};
    else
      lambda = in["lambda"].get<Vec>();
  }

  PRParams result;
  AmenableConstants constants;
  bool have_constants = false;
  if (a.rule == "scalar") {
    if (ps.size() != 1 || lambda.size() != 1)
      throw usage_error("scalar rule needs one params entry and a scalar lambda");
    result = scalar_mult_params(ps[0], lambda[0]);
  } else if (a.rule == "scalar-para") {
    if (ps.size() != 1 || lambda.size() != 1)
      throw usage_error("scalar-para rule needs one params entry and a scalar lambda");
    result = scalar_mult_para_params(ps[0], lambda[0]);
  } else if (a.rule == "sum") {
    result = sum_params(ps);
  } else if (a.rule == "wsum") {
    result = weighted_sum_params(ps, lambda);
  } else if (a.rule == "para-sum") {
    result = para_sum_params(ps, lambda);
  } else if (a.rule == "para-max") {
    result = para_max_params(ps, lambda);
  } else if (a.rule == "amenable") {
    if (in.contains("constants")) {
      const Json& c = in["constants"];
      constants.r1 = c.at("r1").get<double>();
      constants.r2 = c.at("r2").get<double>();
      constants.k = c.at("k").get<double>();
      constants.r_bar = c.at("rbar").get<double>();
    } else if (in.contains("map")) {
      std::string map_id = in["map"].get<std::string>();
      CsqMap F;
      if (map_id == "identity") {
        F = identity_map();
      } else if (map_id == "parabola_pair") {
        F = parabola_pair_map();
      } else if (map_id.rfind("diagonal", 0) == 0) {
        F = diagonal_map(std::stoul(map_id.substr(8)));
      } else {
        throw usage_error("unknown map '" + map_id + "'");
      }
      Vec xb = in.at("x_box").get<Vec>();
      Vec yb = in.at("y_box").get<Vec>();
      if (xb.size() != 2 || yb.size() != 2)
        throw spec_parse_error("x_box/y_box must be [lower, upper] (applied per axis)");
      constants = estimate_amenable_constants(
          F, Box(Vec(F.m, yb[0]), Vec(F.m, yb[1])), Box(Vec(F.n, xb[0]), Vec(F.n, xb[1])), ps);
    } else {
      throw usage_error("amenable rule needs 'constants' or 'map' in the input");
    }
    have_constants = true;
    double eps = in.contains("eps") ? in["eps"].get<double>() : sum_params(ps).eps;
    result = amenable_params(constants, eps);
  } else {
    throw usage_error("unknown rule '" + a.rule + "'");
  }

  Json j;
  j["command"] = "calculus";
  j["rule"] = a.rule;
  j["params"] = Json{{"eps", result.eps}, {"r", result.r}};
  if (have_constants) {
    j["constants"] = Json{{"r1", constants.r1},
                          {"r2", constants.r2},
                          {"k", constants.k},
                          {"rbar", constants.r_bar}};
  }

  int exit_code = 0;
  if (a.validate) {
    if (!in.contains("atoms") || !in.contains("xbar"))
      throw usage_error("--validate needs 'atoms' and 'xbar' in the input");
    std::vector<FunctionOracle> atoms;
    for (const auto& id : in["atoms"]) atoms.push_back(catalog_entry(id.get<std::string>()).fn());
    Vec xbar = in["xbar"].get<Vec>();

    ParametrizedOracle composed;
    Vec lbar;
    if (a.rule == "para-max") {
      composed = build_weighted_max(atoms);
      lbar = lambda;
    } else if (a.rule == "sum" || a.rule == "amenable") {
      composed = build_weighted_sum(atoms);  // diagonal composition: unit weights
      lbar = Vec(atoms.size(), 1.0);
    } else {
      composed = build_weighted_sum(atoms);
      lbar = lambda;
    }
    if (atoms.size() != lbar.size())
      throw usage_error("atom count must match the lambda length for validation");
    Vec vbar =
        in.contains("vbar") ? in["vbar"].get<Vec>() : default_vbar(composed, xbar, lbar);
    Certificate cert{xbar, lbar, vbar, result.eps, result.r};
    SamplerConfig cfg;
    cfg.points_per_axis = a.points;
    cfg.seed = effective_seed(a.seed);
    CheckReport rep = check_para_prox_regular(composed, cert, cfg);
    j["validation"] = report_json(rep);
    j["certificate"] = cert_json(cert);
    exit_code = verdict_exit(rep.verdict);
  }
  j["timestamp"] = timestamp_utc();
  emit(j.dump(2), a.output, out);
  return exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"proxkit: grid-based envelopes, proximal averages, and numerical "
               "certification of quadratic-minorant (prox-regularity) properties"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand(
      "check", "Check a certificate (xbar, [lambdabar], vbar, eps, r); pass exits 0, "
               "fail exits 1 with a witness, inconclusive exits 3");
  check->add_option("--function", check_args.function, "catalog id or piecewise .json spec");
  check->add_option("--xbar", check_args.xbar, "base point, comma-separated");
  check->add_option("--lambdabar", check_args.lambdabar,
                    "base parameter, comma-separated (parametrized functions)");
  check->add_option("--vbar", check_args.vbar, "base subgradient, comma-separated");
  check->add_option("--eps", check_args.eps, "localization radius");
  check->add_option("--r", check_args.r, "quadratic-minorant weight");
  check->add_option("--points", check_args.points, "sampler lattice points per axis");
  check->add_option("--halton", check_args.halton, "low-discrepancy sample count");
  check->add_option("--levels", check_args.levels, "geometric refinement levels");
  check->add_option("--seed", check_args.seed, "sampler seed (PROXKIT_SEED overrides)");
  check->add_option("--output", check_args.output, "write the JSON report here");
  check->add_option("--replay-witness", check_args.replay_path,
                    "re-verify the witness inside a previously written report");
  check->add_flag("--monotone", check_args.monotone,
                  "check pair monotonicity instead of the direct inequality");
  check->add_flag("--minorant", check_args.minorant,
                  "check the single-base-point minorant instead");

  SearchArgs search_args;
  auto* search =
      app.add_subcommand("search", "Search (eps, r) grids for a passing certificate");
  search->add_option("--function", search_args.function, "catalog id or .json spec")
      ->required();
  search->add_option("--xbar", search_args.xbar)->required();
  search->add_option("--lambdabar", search_args.lambdabar);
  search->add_option("--vbar", search_args.vbar)->required();
  search->add_option("--eps-grid", search_args.eps_grid, "comma-separated eps candidates");
  search->add_option("--r-grid", search_args.r_grid, "comma-separated r candidates");
  search->add_option("--points", search_args.points);
  search->add_option("--seed", search_args.seed);
  search->add_option("--output", search_args.output);

  std::string catalog_output;
  auto* cat =
      app.add_subcommand("catalog", "List catalog functions and their known properties");
  cat->add_option("--output", catalog_output);

  PaArgs pa_args;
  auto* pa = app.add_subcommand("pa", "Tabulate proximal averages as CSV");
  pa->add_option("--f0", pa_args.f0, "first catalog function");
  pa->add_option("--f1", pa_args.f1, "second catalog function");
  pa->add_option("--box", pa_args.box, "grid window: lower upper")->expected(2);
  pa->add_option("--points", pa_args.points, "grid points");
  pa->add_option("--r", pa_args.r, "nonconvex average regularization");
  pa->add_option("--lambdas", pa_args.lambdas, "comma-separated weights");
  pa->add_option("--output", pa_args.output, "write the CSV here");

  CalculusArgs calc_args;
  auto* calc = app.add_subcommand("calculus", "Apply a parameter composition rule");
  calc->add_option("--rule", calc_args.rule,
                   "scalar|scalar-para|sum|wsum|para-sum|para-max|amenable")
      ->required();
  calc->add_option("--input", calc_args.input, "JSON input with params/lambda/atoms")
      ->required();
  calc->add_flag("--validate", calc_args.validate,
                 "certify the composed oracle with the emitted parameters");
  calc->add_option("--points", calc_args.points);
  calc->add_option("--seed", calc_args.seed);
  calc->add_option("--output", calc_args.output);

  try {
    std::vector<std::string> argv = args;  // CLI11 parses a reversed copy
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help() << "\n";
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_args, out);
    if (search->parsed()) return cmd_search(search_args, out);
    if (cat->parsed()) return cmd_catalog(catalog_output, out);
    if (pa->parsed()) return cmd_pa(pa_args, out);
    if (calc->parsed()) return cmd_calculus(calc_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace proxkit
