#include "obsrg/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "obsrg/correlator.hpp"
#include "obsrg/dimreg.hpp"
#include "obsrg/errors.hpp"
#include "obsrg/laurent.hpp"
#include "obsrg/statespace.hpp"
#include "obsrg/validity.hpp"

namespace obsrg::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string>& commands() {
  static const std::set<std::string> k = {
      "coeffs",    "beta0",         "vertex",  "factorize",
      "mass-flow", "coupling-flow", "validity"};
  return k;
}

const std::set<std::string>& all_flags() {
  static const std::set<std::string> k = {
      "l",      "m0sq",   "m0sq-init", "lambda0", "lambda-s", "mu",
      "mu-s",   "mu-start", "mu-end",  "points",  "scale",    "tol",
      "s",      "t",      "u",         "gauge",   "beta-2",   "beta-1",
      "beta-0", "as-distance", "format", "out",   "config"};
  return k;
}

std::set<std::string> allowed_for(const std::string& command) {
  std::set<std::string> a = {"format", "out", "config"};
  auto add = [&a](std::initializer_list<const char*> names) {
    for (const char* n : names) a.insert(n);
  };
  if (command == "coeffs") {
    add({"l", "m0sq"});
  } else if (command == "beta0") {
    add({"l", "m0sq", "mu", "lambda0"});
  } else if (command == "vertex") {
    add({"l", "m0sq", "mu", "s", "t", "u"});
  } else if (command == "factorize") {
    add({"gauge", "beta-2", "beta-1", "beta-0"});
  } else if (command == "mass-flow") {
    add({"l", "m0sq-init", "lambda0", "mu-start", "mu-end", "points", "scale",
         "tol"});
  } else if (command == "coupling-flow") {
    add({"l", "m0sq", "lambda-s", "mu-s", "mu-start", "mu-end", "points",
         "scale"});
  } else if (command == "validity") {
    add({"l", "m0sq", "lambda-s", "as-distance"});
  }
  return a;
}

double parse_double(const std::string& flag, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw UsageError("flag --" + flag + " expects a number, got '" + text + "'")
        .with("flag", flag);
  }
  return v;
}

int parse_int(const std::string& flag, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') {
    throw UsageError("flag --" + flag + " expects an integer, got '" + text + "'")
        .with("flag", flag);
  }
  if (errno == ERANGE || v > std::numeric_limits<int>::max() ||
      v < std::numeric_limits<int>::min()) {
    throw UsageError("flag --" + flag + " value is out of range").with("flag", flag);
  }
  return static_cast<int>(v);
}

void assign(RunConfig& rc, const std::string& key, const std::string& value) {
  if (key == "l") {
    rc.l = parse_int(key, value);
  } else if (key == "m0sq") {
    rc.m0sq = parse_double(key, value);
  } else if (key == "m0sq-init") {
    rc.m0sq_init = parse_double(key, value);
  } else if (key == "lambda0") {
    rc.lambda0 = parse_double(key, value);
  } else if (key == "lambda-s") {
    rc.lambda_s = parse_double(key, value);
  } else if (key == "mu") {
    rc.mu = parse_double(key, value);
  } else if (key == "mu-s") {
    rc.mu_s = parse_double(key, value);
  } else if (key == "mu-start") {
    rc.mu_start = parse_double(key, value);
  } else if (key == "mu-end") {
    rc.mu_end = parse_double(key, value);
  } else if (key == "points") {
    rc.points = parse_int(key, value);
  } else if (key == "scale") {
    if (value == "log") {
      rc.scale = SampleScale::log;
    } else if (value == "linear") {
      rc.scale = SampleScale::linear;
    } else {
      throw UsageError("--scale must be 'log' or 'linear', got '" + value + "'");
    }
  } else if (key == "tol") {
    rc.tol = parse_double(key, value);
  } else if (key == "s") {
    rc.chan_s = parse_double(key, value);
  } else if (key == "t") {
    rc.chan_t = parse_double(key, value);
  } else if (key == "u") {
    rc.chan_u = parse_double(key, value);
  } else if (key == "gauge") {
    rc.gauge = parse_double(key, value);
  } else if (key == "beta-2") {
    rc.beta_m2 = parse_double(key, value);
  } else if (key == "beta-1") {
    rc.beta_m1 = parse_double(key, value);
  } else if (key == "beta-0") {
    rc.beta_0 = parse_double(key, value);
  } else if (key == "as-distance") {
    rc.as_distance = value == "true";
  } else if (key == "format") {
    if (value != "json" && value != "csv") {
      throw UsageError("--format must be 'json' or 'csv', got '" + value + "'");
    }
    rc.format = value;
  } else if (key == "out") {
    rc.out_path = value;
  } else {
    throw UsageError("unknown flag --" + key);
  }
}

void require_present(const RunConfig& rc, bool present, const char* flag) {
  if (!present) {
    throw UsageError("command '" + rc.command + "' requires --" + flag)
        .with("flag", std::string(flag));
  }
}

void validate_static(const RunConfig& rc) {
  if (rc.l < 4 || rc.l % 2 != 0) {
    throw UsageError("--l must be an even integer >= 4")
        .with("l", static_cast<long long>(rc.l));
  }
  if (rc.points < 2) {
    throw UsageError("--points must be an integer >= 2")
        .with("points", static_cast<long long>(rc.points));
  }
  if (!(rc.tol > 0.0) || !std::isfinite(rc.tol)) {
    throw UsageError("--tol must be positive and finite").with("tol", rc.tol);
  }
  const bool is_sweep = rc.command == "mass-flow" || rc.command == "coupling-flow";
  if (rc.format == "csv" && !is_sweep) {
    throw UsageError(
        "csv output applies to the sweep commands (mass-flow, coupling-flow) only");
  }

  if (rc.command == "mass-flow") {
    require_present(rc, rc.m0sq_init.has_value(), "m0sq-init");
    require_present(rc, rc.lambda0.has_value(), "lambda0");
  }
  if (rc.command == "coupling-flow" || rc.command == "validity") {
    require_present(rc, rc.lambda_s.has_value(), "lambda-s");
  }
  if (is_sweep) {
    require_present(rc, rc.mu_start.has_value(), "mu-start");
    require_present(rc, rc.mu_end.has_value(), "mu-end");
    if (!(*rc.mu_start < *rc.mu_end)) {
      throw UsageError("sweep requires --mu-start < --mu-end")
          .with("mu_start", *rc.mu_start)
          .with("mu_end", *rc.mu_end);
    }
  }
  if (rc.command == "factorize") {
    require_present(rc, rc.beta_m1.has_value(), "beta-1");
    require_present(rc, rc.beta_0.has_value(), "beta-0");
  }
  if (rc.command == "vertex") {
    const int given = static_cast<int>(rc.chan_s.has_value()) +
                      static_cast<int>(rc.chan_t.has_value()) +
                      static_cast<int>(rc.chan_u.has_value());
    if (given != 0 && given != 3) {
      throw UsageError("vertex kinematics needs all three of --s --t --u")
          .with("given", static_cast<long long>(given));
    }
  }
}

// ---------------------------------------------------------------------------
// Output assembly

ordered_json num_or_null(double v) {
  if (std::isinf(v)) return nullptr;  // unbounded interval endpoint
  return v;
}

ordered_json series_json(const LaurentSeries& s) {
  ordered_json j;
  j["min_order"] = s.min_order();
  j["max_reliable_order"] = s.max_reliable_order();
  j["coefficients"] = s.coeffs();
  return j;
}

ordered_json order_map_json(const std::map<int, double>& entries) {
  ordered_json j = ordered_json::object();
  for (const auto& [order, value] : entries) j[std::to_string(order)] = value;
  return j;
}

ordered_json samples_json(const FlowTrajectory& traj) {
  ordered_json rows = ordered_json::array();
  for (const auto& [mu, value] : traj.samples) {
    rows.push_back(ordered_json::array({mu, value}));
  }
  return rows;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_sweep(const FlowTrajectory& traj, bool flag_column,
                      bool flag_last_row) {
  std::string text = flag_column ? "mu,value,flag\n" : "mu,value\n";
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    text += format_g17(traj.samples[i].first);
    text += ',';
    text += format_g17(traj.samples[i].second);
    if (flag_column) {
      text += ',';
      if (flag_last_row && i + 1 == traj.samples.size()) text += "pole_ahead";
    }
    text += '\n';
  }
  return text;
}

void write_text(const RunConfig& rc, std::ostream& fallback,
                const std::string& text) {
  if (rc.out_path) {
    std::ofstream f(*rc.out_path, std::ios::binary);
    if (!f) {
      throw Error("io", "cannot open output file '" + *rc.out_path + "'");
    }
    f << text;
    f.flush();
    if (!f) {
      throw Error("io", "failed writing output file '" + *rc.out_path + "'");
    }
  } else {
    fallback << text;
  }
}

std::string dump_doc(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::optional<double> context_double(const Error& e, const std::string& key) {
  for (const auto& [k, v] : e.context()) {
    if (k == key) {
      if (const double* d = std::get_if<double>(&v)) return *d;
    }
  }
  return std::nullopt;
}

const char* scale_name(SampleScale s) {
  return s == SampleScale::log ? "log" : "linear";
}

// ---------------------------------------------------------------------------
// Command runners

void run_coeffs(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l, .m0sq = rc.m0sq};
  const AlphaTable alpha = alpha_table(cfg.m0sq);
  const BubbleTable bubble = bubble_table(cfg.m0sq);
  const LaurentSeries xi = xi_series(cfg.m0sq, cfg.l / 2 - 1);
  const std::vector<double> s = s_table(cfg);
  const CouplingFlowParams lam = lambda_coefficients(cfg);

  ordered_json doc;
  doc["command"] = "coeffs";
  doc["inputs"] = {{"l", rc.l}, {"m0sq", rc.m0sq}};
  doc["quantity"] = "expansion-coefficient-tables";
  doc["alpha"] = order_map_json(alpha.entries);
  doc["eta"] = order_map_json(bubble.eta);
  ordered_json xi_obj = ordered_json::object();
  for (std::size_t i = 0; i < xi.coeffs().size(); ++i) {
    xi_obj[std::to_string(xi.min_order() + static_cast<int>(i))] = xi.coeffs()[i];
  }
  doc["xi"] = xi_obj;
  doc["s_table"] = s;
  doc["lambda_table"] = lam.lambda_table;
  ordered_json prov;
  prov["alpha"] =
      "eps-expansion of the coincident-point propagator: alpha[-1] = "
      "-m0sq/(8 pi^2); alpha[0] = m0sq (1 - gammaE - ln(m0sq/(4 pi)))/(16 pi^2); "
      "alpha[1] = m0sq (6 ln(m0sq/(4 pi)) (2 gammaE - 2 + ln(m0sq/(4 pi))) + "
      "pi^2 + 6 gammaE^2 - 12 gammaE + 12)/(384 pi^2)";
  prov["eta"] =
      "two-propagator loop constants: eta[-1] = -3/(16 pi^2); eta[0] = "
      "-3 (ln(4 pi/m0sq) - gammaE)/(16 pi^2); eta[1] = 1/768 + "
      "(gammaE/2 - ln(2 sqrt(pi)))^2/(32 pi^2)";
  prov["xi"] = "eps-expansion coefficients of [tadpole(m0sq)]^(l/2-1)";
  prov["s_table"] =
      "S_n = sum_k xi_{k-(l/2-2)} eta_{n-k-1} (Cauchy convolution of "
      "[tadpole]^(l/2-2) with the eta table)";
  prov["lambda_table"] = "Lambda_k = S_{l/2-2-k} (-2)^k/(k+1)!";
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void run_beta0(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l,
                         .m0sq = rc.m0sq,
                         .mu = rc.mu,
                         .coupling = rc.lambda0.value_or(0.0)};
  const MassCorrection mc = two_point_beta0(cfg);

  ordered_json doc;
  doc["command"] = "beta0";
  doc["inputs"] = {{"l", rc.l},
                   {"m0sq", rc.m0sq},
                   {"mu", rc.mu},
                   {"lambda0", cfg.coupling}};
  doc["quantity"] = "two-point-finite-coefficient";
  doc["beta0"] = mc.beta0;
  doc["series"] = series_json(mc.series);
  doc["physical_mass_sq"] = physical_mass_first_order(cfg);
  ordered_json prov;
  prov["beta0"] =
      "beta0 = -sum_{k=0..l/2-1} (-ln mu)^k/k! xi_{-k}, cross-checked against "
      "the eps^0 coefficient of -lambda0 mu^(-eps) [tadpole(m0sq)]^(l/2-1)";
  prov["physical_mass_sq"] = "m^2 = m0sq - lambda0 beta0";
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void run_vertex(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l, .m0sq = rc.m0sq, .mu = rc.mu};
  std::optional<Kinematics> kin;
  if (rc.chan_s.has_value()) {
    kin = Kinematics{{*rc.chan_s, *rc.chan_t, *rc.chan_u}};
  }
  const VertexCorrection v = vertex_finite(cfg, kin);
  const LaurentSeries series = vertex_series(cfg);

  ordered_json doc;
  doc["command"] = "vertex";
  ordered_json inputs;
  inputs["l"] = rc.l;
  inputs["m0sq"] = rc.m0sq;
  inputs["mu"] = rc.mu;
  if (kin) {
    inputs["s"] = *rc.chan_s;
    inputs["t"] = *rc.chan_t;
    inputs["u"] = *rc.chan_u;
  }
  doc["inputs"] = inputs;
  doc["quantity"] = "vertex-finite-coefficient";
  doc["beta0"] = v.beta0;
  doc["f0_included"] = v.f0_included;
  doc["f0"] = v.f0.has_value() ? ordered_json(*v.f0) : ordered_json(nullptr);
  doc["s_table"] = v.s_table;
  doc["series"] = series_json(series);
  ordered_json prov;
  prov["series"] = "mu^(-2 eps) sum_n S_n eps^(n-(l/2-1)), reliable through eps^0";
  prov["beta0"] =
      "sum_{k=0..l/2-1} (-2 ln mu)^k/k! S_{l/2-1-k}; with kinematics at l=4 "
      "the channel part f0 = sum_channels R0(channel, m0sq) is added";
  prov["f0"] =
      "R0(rsq, m) = w ln((w+1)/(w-1))/(32 pi^2) with w = sqrt(1 + 4 m/rsq)";
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void run_factorize(const RunConfig& rc, std::ostream& out) {
  const bool two_loop = rc.beta_m2.has_value();
  const LaurentSeries beta =
      two_loop ? LaurentSeries::make(-2, {*rc.beta_m2, *rc.beta_m1, *rc.beta_0})
               : LaurentSeries::make(-1, {*rc.beta_m1, *rc.beta_0});
  FactorizeOptions opts;
  opts.loop_count = two_loop ? 2 : 1;
  const LoopFactorization f = factorize(beta, rc.gauge, opts);

  ordered_json doc;
  doc["command"] = "factorize";
  ordered_json inputs;
  if (two_loop) inputs["beta-2"] = *rc.beta_m2;
  inputs["beta-1"] = *rc.beta_m1;
  inputs["beta-0"] = *rc.beta_0;
  inputs["gauge"] = rc.gauge;
  doc["inputs"] = inputs;
  doc["quantity"] = "loop-factorization";
  ordered_json loops = ordered_json::array();
  for (const auto& [rho_d, rho_nd] : f.loops) {
    ordered_json loop;
    loop["rho_d"] = rho_d;
    loop["rho_nd"] = rho_nd;
    loops.push_back(loop);
  }
  doc["loops"] = loops;
  doc["projected"] = project_nondiagonal(f);
  doc["trace"] = series_json(trace_of_factors(f));
  ordered_json prov;
  prov["loops"] =
      "trace = prod_j (rho_d[j]/eps + rho_nd[j]); for two loops the gauge "
      "freedom is fixed by rho_d[1] = t plus a root choice";
  prov["projected"] =
      "prod_j rho_nd[j]: every term containing a diagonal factor is dropped, "
      "leaving the finite (eps^0) part";
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void run_mass_flow(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l,
                         .mu_s = *rc.mu_start,
                         .coupling = *rc.lambda0};

  auto render = [&rc](const FlowTrajectory& traj, bool partial) {
    if (rc.format == "csv") {
      return csv_sweep(traj, /*flag_column=*/false, /*flag_last_row=*/false);
    }
    ordered_json doc;
    doc["command"] = "mass-flow";
    doc["inputs"] = {{"l", rc.l},
                     {"m0sq-init", *rc.m0sq_init},
                     {"lambda0", *rc.lambda0},
                     {"mu-start", *rc.mu_start},
                     {"mu-end", *rc.mu_end},
                     {"points", rc.points},
                     {"scale", scale_name(rc.scale)},
                     {"tol", rc.tol}};
    doc["quantity"] = "bare-mass-squared";
    doc["method"] = "rk-adaptive";
    doc["samples"] = samples_json(traj);
    if (partial) doc["partial"] = true;
    doc["step_stats"] = {{"accepted", traj.step_stats.accepted},
                         {"rejected", traj.step_stats.rejected}};
    ordered_json prov;
    prov["ode"] =
        "d m0sq/d ln mu = lambda0 sum_{k=0..l/2-2} (-1)^(k+1) (ln mu)^k/k! "
        "xi_{-(k+1)}(m0sq)";
    prov["method"] =
        "Dormand-Prince 4(5) adaptive embedded pair with cubic Hermite dense "
        "output";
    doc["provenance"] = prov;
    return dump_doc(doc);
  };

  try {
    const FlowTrajectory traj = integrate_mass_flow(
        cfg, *rc.m0sq_init, *rc.mu_end, rc.tol, rc.points, rc.scale);
    write_text(rc, out, render(traj, /*partial=*/false));
  } catch (const NumericalFailureError& e) {
    // Emit the reachable part of the grid before reporting the failure.
    const std::optional<double> last_good = context_double(e, "last_good_mu");
    if (last_good.has_value()) {
      const std::vector<double> grid =
          flow_sample_grid(*rc.mu_start, *rc.mu_end, rc.points, rc.scale);
      std::vector<double> prefix;
      for (double m : grid) {
        if (m < *last_good) {
          prefix.push_back(m);
        } else {
          break;
        }
      }
      if (!prefix.empty()) {
        try {
          const FlowTrajectory partial =
              integrate_mass_flow_grid(cfg, *rc.m0sq_init, prefix, rc.tol);
          write_text(rc, out, render(partial, /*partial=*/true));
        } catch (const Error&) {
          // The retry failed too; fall through to the original error.
        }
      }
    }
    throw;
  }
}

void run_coupling_flow(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l,
                         .m0sq = rc.m0sq,
                         .mu_s = rc.mu_s,
                         .coupling = *rc.lambda_s};
  const CouplingFlowParams params = lambda_coefficients(cfg);
  const CouplingSweep sweep = coupling_flow_samples(
      params, rc.l, *rc.mu_start, *rc.mu_end, rc.points, rc.scale);

  if (rc.format == "csv") {
    write_text(rc, out,
               csv_sweep(sweep.traj, /*flag_column=*/sweep.pole_ahead,
                         /*flag_last_row=*/sweep.pole_ahead));
    return;
  }
  ordered_json doc;
  doc["command"] = "coupling-flow";
  doc["inputs"] = {{"l", rc.l},
                   {"m0sq", rc.m0sq},
                   {"lambda-s", *rc.lambda_s},
                   {"mu-s", rc.mu_s},
                   {"mu-start", *rc.mu_start},
                   {"mu-end", *rc.mu_end},
                   {"points", rc.points},
                   {"scale", scale_name(rc.scale)}};
  doc["quantity"] = "running-coupling";
  doc["method"] = "closed-form";
  doc["samples"] = samples_json(sweep.traj);
  doc["pole_ahead"] = sweep.pole_ahead;
  if (sweep.pole_ahead) {
    doc["pole_lnmu"] = *sweep.pole_lnmu;
    doc["pole_mu"] = std::exp(*sweep.pole_lnmu);
  }
  ordered_json prov;
  prov["closed_form"] =
      "lambda0(mu) = lambda_s / (1 + lambda_s sum_k Lambda_k (ln(mu)^(k+1) - "
      "ln(mu_s)^(k+1))) with Lambda_k = S_{l/2-2-k} (-2)^k/(k+1)!";
  prov["pole"] =
      "when the denominator vanishes ahead, the sweep stops 1% (of the ln-mu "
      "span from the start) before the first root and flags pole_ahead";
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void run_validity(const RunConfig& rc, std::ostream& out) {
  const TheoryConfig cfg{.l = rc.l, .m0sq = rc.m0sq, .coupling = *rc.lambda_s};
  const CouplingFlowParams params = lambda_coefficients(cfg);
  ValidityDomain dom = validity_intervals(params, rc.l);
  if (rc.as_distance) dom = to_distance(std::move(dom));

  ordered_json doc;
  doc["command"] = "validity";
  doc["inputs"] = {{"l", rc.l},
                   {"m0sq", rc.m0sq},
                   {"lambda-s", *rc.lambda_s},
                   {"as-distance", rc.as_distance}};
  doc["quantity"] = "perturbative-validity-domain";
  doc["variable"] =
      dom.variable == ScaleVariable::energy_mu ? "energy" : "distance";
  doc["lambda_table"] = params.lambda_table;
  ordered_json intervals = ordered_json::array();
  for (const ValidityInterval& iv : dom.intervals()) {
    ordered_json j;
    j["lo"] = num_or_null(iv.lo);
    j["hi"] = num_or_null(iv.hi);
    j["log_lo"] = num_or_null(iv.log_lo);
    j["log_hi"] = num_or_null(iv.log_hi);
    intervals.push_back(j);
  }
  doc["intervals"] = intervals;
  ordered_json prov;
  prov["bound"] =
      "|lambda0(mu)| < 1 iff P(x) = 1/lambda_s - 1 + sum_k Lambda_k x^(k+1) > 0 "
      "at x = ln mu (reference scale mu_s = 1)";
  prov["method"] =
      "sign-change bisection on a bracketing grid over x in [-1e4, 1e4]; roots "
      "refined to 1e-12; regions reaching a grid edge reported unbounded";
  if (rc.as_distance) {
    prov["distance_view"] = "d = 1/mu; each (lo, hi) maps to (1/hi, 1/lo)";
  }
  doc["provenance"] = prov;
  write_text(rc, out, dump_doc(doc));
}

void emit_error(std::ostream& err, const std::string& kind,
                const std::string& message,
                const std::vector<std::pair<std::string, Error::CtxValue>>& ctx) {
  ordered_json context = ordered_json::object();
  for (const auto& [k, v] : ctx) {
    std::visit([&context, &k](const auto& x) { context[k] = x; }, v);
  }
  ordered_json eobj;
  eobj["kind"] = kind;
  eobj["message"] = message;
  eobj["context"] = context;
  ordered_json doc;
  doc["error"] = eobj;
  err << doc.dump() << "\n";
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_content) {
  if (args.empty()) {
    throw UsageError(
        "missing command; expected one of "
        "coeffs|beta0|vertex|factorize|mass-flow|coupling-flow|validity");
  }
  RunConfig rc;
  rc.command = args[0];
  if (commands().count(rc.command) == 0) {
    throw UsageError("unknown command '" + rc.command + "'")
        .with("command", rc.command);
  }

  std::vector<std::pair<std::string, std::string>> cli_pairs;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.size() < 3 || a[0] != '-' || a[1] != '-') {
      throw UsageError("expected a --flag, got '" + a + "'");
    }
    const std::string name = a.substr(2);
    if (all_flags().count(name) == 0) {
      throw UsageError("unknown flag --" + name);
    }
    if (name == "as-distance") {
      cli_pairs.emplace_back(name, "true");
      continue;
    }
    if (i + 1 >= args.size()) {
      throw UsageError("flag --" + name + " requires a value");
    }
    cli_pairs.emplace_back(name, args[++i]);
  }

  std::optional<std::string> config_path;
  for (const auto& [k, v] : cli_pairs) {
    if (k == "config") config_path = v;
  }

  std::map<std::string, std::string> merged;
  if (config_path.has_value() || config_content.has_value()) {
    std::string content;
    if (config_content.has_value()) {
      content = *config_content;
    } else {
      std::ifstream f(*config_path, std::ios::binary);
      if (!f) {
        throw UsageError("cannot read config file '" + *config_path + "'");
      }
      std::ostringstream ss;
      ss << f.rdbuf();
      content = ss.str();
    }
    const ordered_json j = ordered_json::parse(content, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw UsageError("config file must be a flat JSON object");
    }
    for (const auto& [key, val] : j.items()) {
      if (all_flags().count(key) == 0 || key == "config") {
        throw UsageError("unknown config key '" + key + "'");
      }
      if (key == "as-distance") {
        if (!val.is_boolean()) {
          throw UsageError("config key 'as-distance' must be a boolean");
        }
        merged[key] = val.get<bool>() ? "true" : "false";
      } else if (val.is_number()) {
        merged[key] = val.dump();
      } else if (val.is_string()) {
        merged[key] = val.get<std::string>();
      } else {
        throw UsageError("config key '" + key + "' must be a number or string");
      }
    }
  }
  for (const auto& [k, v] : cli_pairs) {
    if (k != "config") merged[k] = v;  // flags win over config-file values
  }

  const std::set<std::string> allowed = allowed_for(rc.command);
  for (const auto& [k, v] : merged) {
    if (allowed.count(k) == 0) {
      throw UsageError("flag --" + k + " does not apply to command '" +
                       rc.command + "'")
          .with("flag", k);
    }
  }
  for (const auto& [k, v] : merged) assign(rc, k, v);

  validate_static(rc);
  return rc;
}

void run(const RunConfig& config, std::ostream& out) {
  if (config.command == "coeffs") {
    run_coeffs(config, out);
  } else if (config.command == "beta0") {
    run_beta0(config, out);
  } else if (config.command == "vertex") {
    run_vertex(config, out);
  } else if (config.command == "factorize") {
    run_factorize(config, out);
  } else if (config.command == "mass-flow") {
    run_mass_flow(config, out);
  } else if (config.command == "coupling-flow") {
    run_coupling_flow(config, out);
  } else if (config.command == "validity") {
    run_validity(config, out);
  } else {
    throw UsageError("unknown command '" + config.command + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    run(parse_config(args), out);
    return 0;
  } catch (const UsageError& e) {
    emit_error(err, e.kind(), e.what(), e.context());
    return 2;
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what(), e.context());
    return 3;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what(), {});
    return 3;
  } catch (...) {
    emit_error(err, "internal", "unknown failure", {});
    return 3;
  }
}

}  // namespace obsrg::cli
