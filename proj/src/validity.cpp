#include "obsrg/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "obsrg/detail/polyroots.hpp"
#include "obsrg/errors.hpp"

namespace obsrg {

namespace {

constexpr double kGridEdge = 1e4;   // bracketing range in x = ln(mu)
constexpr int kGridCells = 400000;  // even, so x = 0 lands on a grid point
constexpr double kRootTol = 1e-12;

void validate_validity_params(const CouplingFlowParams& params, int l) {
  if (l < 4 || l % 2 != 0) {
    throw ContractError("interaction order l must be an even integer >= 4")
        .with("l", static_cast<long long>(l));
  }
  if (!(params.lambda_s > 0.0) || !std::isfinite(params.lambda_s)) {
    throw DomainError("lambda_s must be positive and finite for validity analysis")
        .with("lambda_s", params.lambda_s);
  }
  if (params.mu_s != 1.0) {
    throw ContractError(
        "validity analysis is defined at mu_s = 1; rescale mu before calling")
        .with("mu_s", params.mu_s);
  }
  const std::size_t want = static_cast<std::size_t>(l / 2 - 1);
  if (params.lambda_table.size() != want) {
    throw ContractError("coupling coefficient table has the wrong length")
        .with("expected", static_cast<long long>(want))
        .with("actual", static_cast<long long>(params.lambda_table.size()));
  }
  bool all_zero = true;
  for (double c : params.lambda_table) {
    if (!std::isfinite(c)) {
      throw ContractError("coupling coefficient table entries must be finite")
          .with("value", c);
    }
    if (c != 0.0) all_zero = false;
  }
  if (all_zero) {
    throw DegenerateError(
        "coupling coefficient table is identically zero; the bound never binds");
  }
}

ValidityInterval make_interval(double log_lo, double log_hi, bool lo_unbounded,
                               bool hi_unbounded) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ValidityInterval iv;
  iv.log_lo = lo_unbounded ? -kInf : log_lo;
  iv.log_hi = hi_unbounded ? kInf : log_hi;
  iv.lo = lo_unbounded ? 0.0 : std::exp(log_lo);
  iv.hi = hi_unbounded ? kInf : std::exp(log_hi);
  return iv;
}

}  // namespace

std::vector<ValidityInterval> ValidityDomain::intervals() const {
  if (variable == ScaleVariable::energy_mu) return mu_intervals;
  std::vector<ValidityInterval> out;
  out.reserve(mu_intervals.size());
  for (auto it = mu_intervals.rbegin(); it != mu_intervals.rend(); ++it) {
    ValidityInterval iv;
    iv.lo = 1.0 / it->hi;  // 1/inf == 0 marks "unbounded below" in distance
    iv.hi = it->lo == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / it->lo;
    iv.log_lo = -it->log_hi;
    iv.log_hi = -it->log_lo;
    out.push_back(iv);
  }
  return out;
}

ValidityDomain validity_intervals(const CouplingFlowParams& params, int l) {
  validate_validity_params(params, l);

  // P(x) = 1/lambda_s - 1 + sum_k table[k] x^(k+1); |coupling| < 1 <=> P > 0.
  std::vector<double> p(params.lambda_table.size() + 1, 0.0);
  p[0] = 1.0 / params.lambda_s - 1.0;
  for (std::size_t k = 0; k < params.lambda_table.size(); ++k) {
    p[k + 1] = params.lambda_table[k];
  }

  const std::vector<double> roots =
      detail::isolate_roots(p, -kGridEdge, kGridEdge, kGridCells, kRootTol);

  // Region boundaries: grid edges plus each isolated root, in order.
  std::vector<double> bounds;
  bounds.reserve(roots.size() + 2);
  bounds.push_back(-kGridEdge);
  for (double r : roots) {
    if (r > bounds.back()) bounds.push_back(r);
  }
  if (kGridEdge > bounds.back()) bounds.push_back(kGridEdge);

  ValidityDomain dom;
  dom.variable = ScaleVariable::energy_mu;
  dom.params_echo = params;
  dom.l = l;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    const double mid = 0.5 * (a + b);
    if (detail::poly_eval(p, mid) > 0.0) {
      dom.mu_intervals.push_back(
          make_interval(a, b, /*lo_unbounded=*/a == -kGridEdge,
                        /*hi_unbounded=*/b == kGridEdge));
    }
  }
  return dom;
}

std::pair<double, double> validity_l6_qv(const CouplingFlowParams& params) {
  validate_validity_params(params, 6);
  const double c0 = params.lambda_table[0];
  const double c1 = params.lambda_table[1];
  if (c1 == 0.0) {
    throw DegenerateError("quadratic coupling coefficient vanishes")
        .with("table_1", c1);
  }
  const double abs_c1 = std::fabs(c1);
  const double v = c0 / (2.0 * abs_c1);
  const double radicand =
      v * v + (1.0 - params.lambda_s) / (abs_c1 * params.lambda_s);
  if (radicand < 0.0) {
    throw EmptyDomainError(
        "the coupling bound is never satisfied: boundary radicand is negative")
        .with("radicand", radicand)
        .with("lambda_s", params.lambda_s);
  }
  return {std::sqrt(radicand), v};
}

ValidityDomain to_distance(ValidityDomain dom) {
  dom.variable = dom.variable == ScaleVariable::energy_mu
                     ? ScaleVariable::distance_d
                     : ScaleVariable::energy_mu;
  return dom;
}

}  // namespace obsrg
