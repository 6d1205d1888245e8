#include "obsrg/correlator.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace obsrg {

namespace {

void require_supported_l(const TheoryConfig& cfg) {
  validate(cfg);
  if (cfg.l != 4 && cfg.l != 6) {
    throw CapabilityError(
        "finite-part pipeline supports l in {4, 6}; the coefficient tables "
        "stop at the orders needed for two tadpole powers")
        .with("l", static_cast<long long>(cfg.l));
  }
}

// Polynomial in ln(mu): sum_{k=0}^{top} (s * ln mu)^k / k! * xi_{-k}.
double log_mu_sum(const LaurentSeries& xi, int top, double s, double mu) {
  const double x = s * std::log(mu);
  double term = 1.0;
  double acc = xi.at(0);
  for (int k = 1; k <= top; ++k) {
    term *= x / static_cast<double>(k);
    acc += term * xi.at(-k);
  }
  return acc;
}

double relative_gap(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace

LaurentSeries two_point_trace_series(const TheoryConfig& cfg, double lambda0) {
  require_supported_l(cfg);
  const int power = cfg.l / 2 - 1;
  // The mu factor is expanded two orders past the tadpole-power depth so it
  // never becomes the binding truncation.
  const LaurentSeries mu_fac = mu_power_factor(cfg.mu, 1, power + 2);
  const LaurentSeries xi = xi_series(cfg.m0sq, power);
  return scale(mul(mu_fac, xi), -lambda0);
}

MassCorrection two_point_beta0(const TheoryConfig& cfg) {
  require_supported_l(cfg);
  const int top = cfg.l / 2 - 1;
  const LaurentSeries xi = xi_series(cfg.m0sq, top);
  const double closed = -log_mu_sum(xi, top, -1.0, cfg.mu);

  const LaurentSeries unit_trace = two_point_trace_series(cfg, 1.0);
  const double series_route = unit_trace.at(0);
  if (relative_gap(closed, series_route) > 1e-10) {
    throw ConsistencyError(
        "two-point finite coefficient: closed form and series route disagree")
        .with("closed_form", closed)
        .with("series_route", series_route);
  }

  MassCorrection out;
  out.beta0 = closed;
  const double series_coupling = cfg.coupling != 0.0 ? cfg.coupling : 1.0;
  out.series = scale(unit_trace, series_coupling);
  out.l = cfg.l;
  out.m0sq = cfg.m0sq;
  out.mu = cfg.mu;
  return out;
}

std::vector<double> s_table(const TheoryConfig& cfg) {
  require_supported_l(cfg);
  const BubbleTable bt = bubble_table(cfg.m0sq);
  const LaurentSeries eta =
      LaurentSeries::make(-1, {bt.eta.at(-1), bt.eta.at(0), bt.eta.at(1)});
  const LaurentSeries xi = xi_series(cfg.m0sq, cfg.l / 2 - 2);
  const LaurentSeries conv = mul(xi, eta);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.l / 2));
  for (int n = 0; n <= cfg.l / 2 - 1; ++n) {
    out.push_back(conv.at(n - (cfg.l / 2 - 1)));
  }
  return out;
}

LaurentSeries vertex_series(const TheoryConfig& cfg) {
  require_supported_l(cfg);
  const std::vector<double> s = s_table(cfg);
  const LaurentSeries s_series = LaurentSeries::make(-(cfg.l / 2 - 1), s);
  const LaurentSeries mu_fac = mu_power_factor(cfg.mu, 2, cfg.l / 2 + 1);
  return mul(mu_fac, s_series);
}

VertexCorrection vertex_finite(const TheoryConfig& cfg,
                               const std::optional<Kinematics>& kin) {
  require_supported_l(cfg);
  VertexCorrection out;
  out.s_table = s_table(cfg);

  const int top = cfg.l / 2 - 1;
  const double x = -2.0 * std::log(cfg.mu);
  double term = 1.0;
  double constant = out.s_table[static_cast<std::size_t>(top)];
  for (int k = 1; k <= top; ++k) {
    term *= x / static_cast<double>(k);
    constant += term * out.s_table[static_cast<std::size_t>(top - k)];
  }

  const double series_route = vertex_series(cfg).at(0);
  if (relative_gap(constant, series_route) > 1e-10) {
    throw ConsistencyError(
        "vertex finite part: closed form and series route disagree")
        .with("closed_form", constant)
        .with("series_route", series_route);
  }

  out.beta0 = constant;
  out.f0_included = false;
  if (kin.has_value()) {
    if (kin->channels.empty()) {
      throw ContractError("kinematics channel list must be non-empty");
    }
    if (cfg.l != 4) {
      throw CapabilityError(
          "kinematic finite part is only available for l = 4; the l = 6 loop "
          "integral has no closed form here")
          .with("l", static_cast<long long>(cfg.l));
    }
    double f0 = 0.0;
    for (double z : kin->channels) f0 += bubble_finite_R0(z, cfg.m0sq);
    out.f0 = f0;
    out.f0_included = true;
    out.beta0 += f0;
  }
  return out;
}

double physical_mass_first_order(const TheoryConfig& cfg) {
  return cfg.m0sq - cfg.coupling * two_point_beta0(cfg).beta0;
}

}  // namespace obsrg
