#include "obsrg/rgflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "obsrg/correlator.hpp"
#include "obsrg/detail/polyroots.hpp"

namespace obsrg {

namespace {

// RHS of the mass flow in x = ln mu:
//   dm0^2/dx = lambda0 * sum_{k=0}^{l/2-2} (-1)^(k+1) x^k / k! * xi_{-(k+1)}(m0^2)
double mass_rhs_logmu(int l, double m0sq_now, double x, double lambda0) {
  if (!(m0sq_now > 0.0) || !std::isfinite(m0sq_now)) {
    throw NumericalFailureError("mass squared left the positive domain")
        .with("m0sq", m0sq_now)
        .with("lnmu", x);
  }
  const LaurentSeries xi = xi_series(m0sq_now, l / 2 - 1);
  double term = 1.0;  // x^k / k!
  double sign = -1.0;  // (-1)^(k+1)
  double acc = sign * xi.at(-1);
  for (int k = 1; k <= l / 2 - 2; ++k) {
    term *= x / static_cast<double>(k);
    sign = -sign;
    acc += sign * term * xi.at(-(k + 1));
  }
  return lambda0 * acc;
}

// Dormand-Prince 4(5) coefficients.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights (error estimator).
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

// Cubic Hermite interpolation over one accepted step.
double hermite(double x0, double y0, double f0, double x1, double y1, double f1,
               double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double dy = y1 - y0;
  // Increment form of the cubic Hermite basis: exact at both endpoints and
  // bit-exact for constant solutions (all corrections carry a dy or f factor).
  return y0 + t * dy +
         t * (t - 1.0) *
             ((1.0 - 2.0 * t) * dy + (t - 1.0) * h * f0 + t * h * f1);
}

NumericalFailureError integration_failure(const std::string& what, double x,
                                           double y) {
  return NumericalFailureError(what)
      .with("last_good_mu", std::exp(x))
      .with("last_good_value", y);
}

// Adaptive DP45 with first-same-as-last reuse and dense output at the sorted
// sample abscissae xs (which must progress in the integration direction and
// start at x0).  Returns the sample values in xs order.
template <class F>
std::vector<double> rk45_dense(F&& f, double x0, double y0, double x1, double tol,
                               const std::vector<double>& xs, StepStats& stats) {
  const double dir = x1 > x0 ? 1.0 : -1.0;
  std::vector<double> ys(xs.size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t next = 0;
  while (next < xs.size() && xs[next] == x0) ys[next++] = y0;

  double x = x0, y = y0;
  // Any failure inside the right-hand side (state left its domain, overflow
  // in a coefficient table, ...) is a numerical failure of this integration
  // and must carry the last accepted state.
  auto eval = [&f, &x, &y](double xx, double yy) {
    try {
      return f(xx, yy);
    } catch (const std::exception& e) {
      throw integration_failure(
          std::string("flow right-hand side failed: ") + e.what(), x, y);
    }
  };
  double k1 = eval(x, y);
  const double span = std::fabs(x1 - x0);
  double h = dir * std::min(span, 0.1 * (1.0 + std::fabs(y0)) / (1.0 + std::fabs(k1)));

  long guard = 0;
  while (dir * (x1 - x) > 0.0) {
    if (++guard > 10'000'000L) {
      throw integration_failure("integration exceeded the step budget", x, y);
    }
    if (std::fabs(h) < 16.0 * std::numeric_limits<double>::epsilon() *
                          std::max(1.0, std::fabs(x))) {
      throw integration_failure("step size underflow", x, y);
    }
    if (dir * (x + h - x1) > 0.0) h = x1 - x;  // land exactly on the endpoint

    const double k2 = eval(x + kC2 * h, y + h * (kA21 * k1));
    const double k3 = eval(x + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
    const double k4 = eval(x + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const double k5 =
        eval(x + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const double k6 = eval(x + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                        kA64 * k4 + kA65 * k5));
    const double y_next =
        y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const double k7 = eval(x + h, y_next);  // FSAL stage
    const double err_abs = std::fabs(
        h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7));

    if (!std::isfinite(y_next) || !std::isfinite(err_abs)) {
      throw integration_failure("state or error estimate became non-finite", x, y);
    }

    const double scale = tol * (1.0 + std::max(std::fabs(y), std::fabs(y_next)));
    const double err_norm = err_abs / scale;
    if (err_norm <= 1.0) {
      while (next < xs.size() && dir * (xs[next] - (x + h)) <= 0.0) {
        ys[next] = xs[next] == x + h
                       ? y_next
                       : hermite(x, y, k1, x + h, y_next, k7, xs[next]);
        ++next;
      }
      x += h;
      y = y_next;
      k1 = k7;
      ++stats.accepted;
    } else {
      ++stats.rejected;
    }
    const double grow =
        err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2)
                       : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (std::fabs(h) > span) h = dir * span;
  }
  while (next < xs.size()) ys[next++] = y;  // samples at (or past) the endpoint
  return ys;
}

std::vector<double> sample_grid(double start, double end, int points,
                                SampleScale scale) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[static_cast<std::size_t>(i)] =
        scale == SampleScale::log ? start * std::pow(end / start, t)
                                  : start + (end - start) * t;
  }
  grid.front() = start;
  grid.back() = end;
  return grid;
}

void require_supported_l(int l) {
  if (l != 4 && l != 6) {
    throw CapabilityError("flow right-hand sides support l in {4, 6}")
        .with("l", static_cast<long long>(l));
  }
}

// Closed-form denominator D(x) = 1 + lambda_s * sum_k Lambda_k (x^(k+1) - xs^(k+1))
// as polynomial coefficients in x = ln mu.
std::vector<double> denominator_poly(const CouplingFlowParams& params) {
  const double xs = std::log(params.mu_s);
  std::vector<double> c(params.lambda_table.size() + 1, 0.0);
  c[0] = 1.0;
  double xs_pow = xs;
  for (std::size_t k = 0; k < params.lambda_table.size(); ++k) {
    c[0] -= params.lambda_s * params.lambda_table[k] * xs_pow;
    c[k + 1] = params.lambda_s * params.lambda_table[k];
    xs_pow *= xs;
  }
  return c;
}

void validate_params(const CouplingFlowParams& params, int l) {
  if (params.lambda_s == 0.0 || !std::isfinite(params.lambda_s)) {
    throw ContractError("lambda_s must be nonzero and finite")
        .with("lambda_s", params.lambda_s);
  }
  if (!(params.mu_s > 0.0) || !std::isfinite(params.mu_s)) {
    throw DomainError("mu_s must be positive and finite").with("mu_s", params.mu_s);
  }
  if (static_cast<int>(params.lambda_table.size()) != l / 2 - 1) {
    throw ContractError("Lambda table length must equal l/2 - 1")
        .with("table_length", static_cast<long long>(params.lambda_table.size()))
        .with("l", static_cast<long long>(l));
  }
}

}  // namespace

double mass_rhs(const TheoryConfig& cfg) {
  validate(cfg);
  require_supported_l(cfg.l);
  return mass_rhs_logmu(cfg.l, cfg.m0sq, std::log(cfg.mu), cfg.coupling) / cfg.mu;
}

FlowTrajectory integrate_mass_flow(const TheoryConfig& cfg, double m_s_sq,
                                   double mu_end, double tol, int n_samples,
                                   SampleScale scale) {
  validate(cfg);
  require_supported_l(cfg.l);
  if (!(mu_end > 0.0) || !std::isfinite(mu_end)) {
    throw DomainError("mu_end must be positive and finite").with("mu_end", mu_end);
  }
  if (mu_end == cfg.mu_s) {
    throw ContractError("mu_end must differ from mu_s");
  }
  if (n_samples < 2) throw ContractError("need at least two samples");
  return integrate_mass_flow_grid(
      cfg, m_s_sq, flow_sample_grid(cfg.mu_s, mu_end, n_samples, scale), tol);
}

std::vector<double> flow_sample_grid(double start, double end, int points,
                                     SampleScale scale) {
  if (!(start > 0.0) || !std::isfinite(start) || !(end > 0.0) ||
      !std::isfinite(end)) {
    throw DomainError("grid bounds must be positive and finite")
        .with("start", start)
        .with("end", end);
  }
  if (points < 2) throw ContractError("need at least two samples");
  return sample_grid(start, end, points, scale);
}

FlowTrajectory integrate_mass_flow_grid(const TheoryConfig& cfg, double m_s_sq,
                                        const std::vector<double>& mu_grid,
                                        double tol) {
  validate(cfg);
  require_supported_l(cfg.l);
  if (!(m_s_sq > 0.0) || !std::isfinite(m_s_sq)) {
    throw DomainError("initial mass squared must be positive").with("m_s_sq", m_s_sq);
  }
  if (!(tol > 0.0)) throw ContractError("tolerance must be positive").with("tol", tol);
  if (mu_grid.empty()) throw ContractError("sample grid must be nonempty");
  if (mu_grid.front() != cfg.mu_s) {
    throw ContractError("sample grid must start at mu_s")
        .with("grid_front", mu_grid.front())
        .with("mu_s", cfg.mu_s);
  }
  const double dir_sign = mu_grid.back() - mu_grid.front();
  if (mu_grid.size() > 1 && dir_sign == 0.0) {
    throw ContractError("sample grid endpoints must differ");
  }
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    if (!(mu_grid[i] > 0.0) || !std::isfinite(mu_grid[i])) {
      throw DomainError("sample grid entries must be positive and finite")
          .with("index", static_cast<long long>(i))
          .with("value", mu_grid[i]);
    }
    if (i > 0 && (mu_grid[i] - mu_grid[i - 1]) * dir_sign < 0.0) {
      throw ContractError("sample grid must be monotone")
          .with("index", static_cast<long long>(i));
    }
  }

  FlowTrajectory traj;
  traj.quantity = FlowQuantity::mass_sq;
  traj.method = FlowMethod::rk_adaptive;
  traj.tol = tol;

  if (mu_grid.size() == 1) {
    traj.samples.emplace_back(mu_grid.front(), m_s_sq);
    return traj;
  }

  std::vector<double> xs(mu_grid.size());
  std::transform(mu_grid.begin(), mu_grid.end(), xs.begin(),
                 [](double m) { return std::log(m); });

  const int l = cfg.l;
  const double lambda0 = cfg.coupling;
  const std::vector<double> values = rk45_dense(
      [l, lambda0](double x, double y) { return mass_rhs_logmu(l, y, x, lambda0); },
      xs.front(), m_s_sq, xs.back(), tol, xs, traj.step_stats);

  traj.samples.reserve(mu_grid.size());
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    traj.samples.emplace_back(mu_grid[i], values[i]);
  }
  if (traj.samples.front().first > traj.samples.back().first) {
    std::reverse(traj.samples.begin(), traj.samples.end());
  }
  return traj;
}

double mass_flow_l4_closed(double m_s_sq, double lambda0, double mu, double mu_s) {
  if (!(mu > 0.0) || !(mu_s > 0.0)) {
    throw DomainError("scales must be positive").with("mu", mu).with("mu_s", mu_s);
  }
  return m_s_sq * std::pow(mu / mu_s, lambda0 / (8.0 * kPi * kPi));
}

double mass_rhs_l6_zr(double z, double r, double lambda0) {
  return lambda0 / (64.0 * kPi * kPi * kPi * kPi) * std::exp(z) * (r - z);
}

CouplingFlowParams lambda_coefficients(const TheoryConfig& cfg) {
  const std::vector<double> s = s_table(cfg);  // validates and gates l
  CouplingFlowParams params;
  params.lambda_s = cfg.coupling;
  params.mu_s = cfg.mu_s;
  params.lambda_table.resize(s.size() - 1);
  double factor = 1.0;  // (-2)^k / (k+1)!
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    factor /= static_cast<double>(k + 1);
    params.lambda_table[k] = s[s.size() - 2 - k] * factor;
    factor *= -2.0;
  }
  return params;
}

double coupling_closed(const CouplingFlowParams& params, int l, double mu) {
  validate_params(params, l);
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("mu must be positive and finite").with("mu", mu);
  }
  const std::vector<double> dpoly = denominator_poly(params);
  const double x = std::log(mu);
  const double d = detail::poly_eval(dpoly, x);
  if (std::fabs(d) < 1e-12) {
    auto err = LandauPoleError(
        "running-coupling denominator vanishes at the requested scale");
    const std::vector<double> roots = detail::isolate_roots(
        dpoly, x - 64.0, x + 64.0, 1 << 20, 1e-13);
    if (!roots.empty()) {
      double nearest = roots.front();
      for (double rt : roots) {
        if (std::fabs(rt - x) < std::fabs(nearest - x)) nearest = rt;
      }
      err.with("pole_lnmu", nearest).with("pole_mu", std::exp(nearest));
    }
    throw std::move(err).with("denominator", d);
  }
  return params.lambda_s / d;
}

double coupling_rhs(const TheoryConfig& cfg, double lambda0) {
  const std::vector<double> s = s_table(cfg);  // validates and gates l
  const double x = -2.0 * std::log(cfg.mu);
  double term = 1.0;
  double acc = s[s.size() - 2];  // k = 0 picks S_{l/2-2}
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    term *= x / static_cast<double>(k);
    acc += term * s[s.size() - 2 - k];
  }
  return -lambda0 * lambda0 * acc / cfg.mu;
}

std::optional<double> coupling_pole_lnmu(const CouplingFlowParams& params,
                                         double lnmu_from, double lnmu_to) {
  const std::vector<double> dpoly = denominator_poly(params);
  const double lo = std::min(lnmu_from, lnmu_to);
  const double hi = std::max(lnmu_from, lnmu_to);
  if (!(hi > lo)) return std::nullopt;
  const std::vector<double> roots =
      detail::isolate_roots(dpoly, lo, hi, 1 << 20, 1e-13);
  if (roots.empty()) return std::nullopt;
  return lnmu_from <= lnmu_to ? roots.front() : roots.back();
}

CouplingSweep coupling_flow_samples(const CouplingFlowParams& params, int l,
                                    double mu_start, double mu_end, int points,
                                    SampleScale scale) {
  validate_params(params, l);
  if (!(mu_start > 0.0) || !(mu_end > 0.0)) {
    throw DomainError("sweep bounds must be positive")
        .with("mu_start", mu_start)
        .with("mu_end", mu_end);
  }
  if (!(mu_start < mu_end)) {
    throw ContractError("sweep requires mu_start < mu_end");
  }
  if (points < 2) throw ContractError("sweep needs at least two points");

  CouplingSweep sweep;
  const double x_start = std::log(mu_start);
  double x_limit = std::log(mu_end);
  sweep.pole_lnmu = coupling_pole_lnmu(params, x_start, x_limit);
  if (sweep.pole_lnmu.has_value()) {
    sweep.pole_ahead = true;
    x_limit = x_start + 0.99 * (*sweep.pole_lnmu - x_start);
  }

  std::vector<double> grid = sample_grid(mu_start, mu_end, points, scale);
  if (sweep.pole_ahead) {
    std::vector<double> kept;
    for (double m : grid) {
      if (std::log(m) <= x_limit) kept.push_back(m);
    }
    if (kept.empty() || kept.back() < std::exp(x_limit)) {
      kept.push_back(std::exp(x_limit));  // end exactly at the guard scale
    }
    grid = std::move(kept);
  }

  sweep.traj.quantity = FlowQuantity::coupling;
  sweep.traj.method = FlowMethod::closed_form;
  sweep.traj.tol = 0.0;
  sweep.traj.samples.reserve(grid.size());
  for (double m : grid) {
    sweep.traj.samples.emplace_back(m, coupling_closed(params, l, m));
  }
  return sweep;
}

}  // namespace obsrg
