#include "dp2ff/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dp2ff/confinement.hpp"
#include "dp2ff/expr.hpp"
#include "dp2ff/fpdynamics.hpp"
#include "dp2ff/maps.hpp"
#include "dp2ff/numbers.hpp"
#include "dp2ff/tau.hpp"

namespace dp2ff {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  long p = 0;
  std::string a, delta, z0;
  long N = 0;
  std::string lambda = "1";
  long gamma = -1;
  std::string u0, u1;
  long count = 0;
  long steps = 20;
  long start = 1;
  int max_steps = 30;
  std::string format = "json";
  std::string out;
  std::string map = "dp2";
  std::string expr_x, expr_y;
  std::vector<std::string> params;
  std::string sequence;
  std::string value;
};

struct Output {
  json result;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

json tokens(const std::vector<FpProj>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.to_string());
  return arr;
}

Rational require_rational(const std::string& text, const char* flag) {
  if (text.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing required flag --") + flag);
  }
  return Rational::parse(text);
}

FpProj parse_proj(const std::string& text, Prime p, const char* flag) {
  if (text == "inf") return FpProj::infinity();
  return reduce_proj(require_rational(text, flag), p);
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

void orbit_rows(Output& o, const std::vector<FpProj>& seq, long first_index) {
  o.header = {"index", "value"};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    o.rows.push_back({std::to_string(first_index + static_cast<long>(i)), seq[i].to_string()});
  }
}

DP2Params dp2_from_flags(const Flags& f) {
  return build_dp2_params(Prime(f.p), require_rational(f.a, "a"),
                          require_rational(f.delta, "delta"), require_rational(f.z0, "z0"));
}

Output run_evolve(const Flags& f) {
  const DP2Params params = dp2_from_flags(f);
  const FpProj u0 = parse_proj(f.u0, params.p, "u0");
  const FpProj u1 = parse_proj(f.u1, params.p, "u1");
  Output o;
  const auto seq = dp2_fp_orbit(u0, u1, f.steps, params, f.start);
  o.result["sequence"] = tokens(seq);
  o.result["start"] = f.start;
  o.result["period"] = dp2_fp_period(FpState{u0, u1, f.start}, params);
  o.result["n_alpha"] = params.n_alpha.to_string();
  o.result["n_beta"] = params.n_beta.to_string();
  orbit_rows(o, seq, f.start);
  return o;
}

Output run_tau_orbit(const Flags& f) {
  const Prime p(f.p);
  const TauParams tp = TauParams::make(f.N, require_rational(f.lambda, "lambda"));
  const long count = f.count > 0 ? f.count : p.value();
  const long horizon = std::max(count, 3 * p.value() + 2);
  const auto reduced = reduced_solution(tp, p, horizon);
  const std::vector<FpProj> seq(reduced.begin(), reduced.begin() + count);
  const TauCondition cond = taucond(tp, p);

  // Seed the seven-case evolution at the first adjacent finite pair.
  std::optional<std::size_t> seed;
  for (std::size_t i = 0; i + 1 < reduced.size() && !seed; ++i) {
    if (reduced[i].is_finite() && reduced[i + 1].is_finite()) seed = i;
  }
  if (!seed) throw Error(ErrorCode::NoPeriodFound, "no adjacent finite pair in the reduced sequence");
  const DP2Params params = tau_dp2_params(tp, p);
  const long n_seed = static_cast<long>(*seed) + 2;  // time index of reduced[*seed + 1]
  const FpState state{reduced[*seed], reduced[*seed + 1], n_seed};
  const auto evolved = dp2_fp_orbit(state.u_prev, state.u_cur,
                                    static_cast<long>(reduced.size() - *seed - 1), params, n_seed);
  const bool agrees = std::equal(evolved.begin(), evolved.end(), reduced.begin() + *seed + 1);

  Output o;
  o.result["sequence"] = tokens(seq);
  o.result["period"] = dp2_fp_period(state, params);
  o.result["cond_diag"] = json::array({cond.diag_product.to_string(), cond.diag_ratio.to_string()});
  o.result["cond"] = {{"product_nonzero", cond.product_nonzero},
                      {"ratio_not_two", cond.ratio_not_two}};
  o.result["evolution_seed"] = n_seed - 1;
  o.result["evolution_agrees"] = agrees;
  orbit_rows(o, seq, 1);
  return o;
}

MapFamily family_from_flags(const Flags& f) {
  const Prime p(f.p);
  if (f.map == "dp2") return dp2_from_flags(f);
  if (f.map == "qrt") {
    if (f.gamma < 0) throw Error(ErrorCode::InvalidArgument, "missing required flag --gamma");
    return build_qrt_params(p, f.gamma, require_rational(f.a, "a"));
  }
  if (f.expr_x.empty() || f.expr_y.empty()) {
    throw Error(ErrorCode::InvalidArgument, "custom maps need --expr-x and --expr-y");
  }
  ParamBindings bindings;
  for (const auto& binding : f.params) {
    const auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "--param expects name=value, got '" + binding + "'");
    }
    bindings[binding.substr(0, eq)] = Rational::parse(binding.substr(eq + 1));
  }
  return CustomMap{p, parse_map_expr(f.expr_x), parse_map_expr(f.expr_y), std::move(bindings)};
}

json valuation_token(const Valuation& v) {
  return v.is_infinite() ? json("inf") : json(v.value());
}

Output run_agr_scan(const Flags& f) {
  const MapFamily map = family_from_flags(f);
  ScanOptions options;
  options.confine.max_steps = f.max_steps;
  const ScanResult scan = agr_scan(map, options);

  Output o;
  o.result["has_almost_good_reduction"] = scan.has_almost_good_reduction();
  o.result["all_confined"] = scan.all_confined;
  o.result["closed_forms_consistent"] = scan.closed_forms_consistent;
  o.result["sampling_consistent"] = scan.sampling_consistent;
  json reports = json::array();
  o.header = {"point", "y_residue", "n", "status", "m", "image_x", "image_y", "pole_orders",
              "sampling"};
  for (const auto& e : scan.entries) {
    const auto& r = e.report;
    const std::string sampling =
        !e.sampling_checked ? "unchecked" : (scan.ambiguous(e) ? "AGR_AMBIGUOUS" : "agree");
    json orders = json::array();
    std::string orders_csv;
    for (const auto& v : r.pole_orders) {
      orders.push_back(valuation_token(v));
      if (!orders_csv.empty()) orders_csv += ';';
      orders_csv += v.is_infinite() ? "inf" : std::to_string(v.value());
    }
    json rec;
    rec["point"] = e.point.to_string();
    rec["y_residue"] = std::to_string(e.y_residue);
    rec["n"] = e.n;
    rec["status"] = to_string(r.status);
    rec["m"] = r.confined() ? json(r.m) : json(nullptr);
    rec["image_x"] = r.confined() ? json(r.image_x.to_string()) : json(nullptr);
    rec["image_y"] = r.confined() ? json(r.image_y.to_string()) : json(nullptr);
    rec["pole_orders"] = orders;
    rec["sampling"] = sampling;
    reports.push_back(rec);
    o.rows.push_back({e.point.to_string(), std::to_string(e.y_residue), std::to_string(e.n),
                      to_string(r.status), r.confined() ? std::to_string(r.m) : "",
                      r.confined() ? r.image_x.to_string() : "",
                      r.confined() ? r.image_y.to_string() : "", orders_csv, sampling});
  }
  o.result["reports"] = reports;
  return o;
}

Output run_reduce(const Flags& f) {
  const Prime p(f.p);
  const Rational x = require_rational(f.value, "value");
  const FpProj r = reduce_proj(x, p);
  Output o;
  o.result["value"] = r.to_string();
  o.result["vp"] = valuation_token(vp(x, p));
  o.result["norm"] = pnorm(x, p).to_string();
  o.header = {"input", "value"};
  o.rows.push_back({x.to_string(), r.to_string()});
  return o;
}

Output run_solve_check(const Flags& f) {
  ExactCoefficients coeffs;
  if (f.N > 0) {
    coeffs = TauParams::make(f.N, require_rational(f.lambda, "lambda")).coefficients();
  } else {
    coeffs = {require_rational(f.a, "a"), require_rational(f.delta, "delta"),
              require_rational(f.z0, "z0")};
  }
  const auto seq = parse_list(f.sequence);
  if (seq.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "--sequence needs at least three values");
  }
  Output o;
  o.header = {"n", "residual"};
  json residuals = json::array();
  json skipped = json::array();
  bool all_zero = true;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const long n = f.start + static_cast<long>(i);
    if (seq[i] == Rational(1) || seq[i] == Rational(-1)) {
      skipped.push_back(n);
      continue;
    }
    const Rational r = dp2_scalar_residual(seq[i - 1], seq[i], seq[i + 1], n, coeffs);
    all_zero = all_zero && r.is_zero();
    residuals.push_back({{"n", n}, {"residual", r.to_string()}});
    o.rows.push_back({std::to_string(n), r.to_string()});
  }
  o.result["residuals"] = residuals;
  o.result["skipped"] = skipped;
  o.result["all_zero"] = all_zero;
  return o;
}

void write_csv(std::ostream& os, const Output& o) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(o.header);
  for (const auto& r : o.rows) line(r);
}

json echo_params(const CLI::App& sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0) continue;
    std::string name = opt->get_name();
    if (name == "--help") continue;
    name.erase(0, name.find_first_not_of('-'));
    const auto& results = opt->results();
    if (name == "param") {
      params[name] = results;
    } else {
      params[name] = results.empty() ? "" : results.back();
    }
  }
  return params;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Painleve II and QRT maps over finite fields"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&f](CLI::App* sub) {
    sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", f.out, "write to PATH instead of stdout");
  };
  auto dp2_flags = [&f](CLI::App* sub) {
    sub->add_option("--a", f.a, "parameter a (rational)");
    sub->add_option("--delta", f.delta, "parameter delta (rational)");
    sub->add_option("--z0", f.z0, "parameter z0 (rational)");
  };

  auto* evolve = app.add_subcommand("evolve", "seven-case orbit over P^1(F_p) and its period");
  evolve->add_option("--p", f.p, "odd prime")->required();
  dp2_flags(evolve);
  evolve->add_option("--u0", f.u0, "u_{start-1}")->required();
  evolve->add_option("--u1", f.u1, "u_{start}")->required();
  evolve->add_option("--steps", f.steps, "number of values to emit");
  evolve->add_option("--start", f.start, "time index of u1");
  common(evolve);

  auto* tau = app.add_subcommand("tau-orbit", "reduced tau-function solution");
  tau->add_option("--p", f.p, "odd prime")->required();
  tau->add_option("--N", f.N, "tau order N >= 1")->required();
  tau->add_option("--lambda", f.lambda, "nonzero rational lambda");
  tau->add_option("--count", f.count, "number of values u_1.. (default p)");
  common(tau);

  auto* scan = app.add_subcommand("agr-scan", "almost-good-reduction scan");
  scan->add_option("--map", f.map, "dp2, qrt or custom")
      ->check(CLI::IsMember({"dp2", "qrt", "custom"}));
  scan->add_option("--p", f.p, "odd prime <= 101")->required();
  dp2_flags(scan);
  scan->add_option("--gamma", f.gamma, "QRT exponent");
  scan->add_option("--expr-x", f.expr_x, "custom map, x component");
  scan->add_option("--expr-y", f.expr_y, "custom map, y component");
  scan->add_option("--param", f.params, "name=value binding for custom maps");
  scan->add_option("--max-steps", f.max_steps, "confinement horizon");
  common(scan);

  auto* reduce = app.add_subcommand("reduce", "reduce a rational into P^1(F_p)");
  reduce->add_option("--p", f.p, "odd prime")->required();
  reduce->add_option("--value", f.value, "rational value")->required();
  common(reduce);

  auto* check = app.add_subcommand("solve-check", "dP-II residuals of a rational sequence");
  dp2_flags(check);
  check->add_option("--N", f.N, "use the tau-family parameters of order N");
  check->add_option("--lambda", f.lambda, "lambda of the tau family");
  check->add_option("--sequence", f.sequence, "comma-separated rationals")->required();
  check->add_option("--start", f.start, "time index of the first value");
  common(check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  json doc;
  doc["command"] = sub->get_name();
  doc["params"] = echo_params(*sub);
  Output o;
  int status = 0;
  try {
    if (sub == evolve) o = run_evolve(f);
    else if (sub == tau) o = run_tau_orbit(f);
    else if (sub == scan) o = run_agr_scan(f);
    else if (sub == reduce) o = run_reduce(f);
    else o = run_solve_check(f);
    doc["result"] = o.result;
    doc["errors"] = json::array();
  } catch (const Error& e) {
    doc["result"] = nullptr;
    doc["errors"] = json::array({{{"code", to_string(e.code())}, {"message", e.what()}}});
    status = 1;
  }

  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) {
      err << "cannot open " << f.out << " for writing\n";
      return 2;
    }
  }
  std::ostream& sink = f.out.empty() ? out : file;
  if (f.format == "csv") {
    if (status != 0) {
      const auto& e = doc["errors"][0];
      err << "error: " << e["code"].get<std::string>() << ": "
          << e["message"].get<std::string>() << '\n';
    } else {
      write_csv(sink, o);
    }
  } else {
    sink << doc.dump(2) << '\n';
  }
  return status;
}

}  // namespace dp2ff
