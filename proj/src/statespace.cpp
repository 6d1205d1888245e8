#include "obsrg/statespace.hpp"

#include <cmath>
#include <vector>

namespace obsrg {

LaurentSeries trace_of_factors(const LoopFactorization& f) {
  if (f.loops.empty()) throw ContractError("factorization must have at least one loop");
  for (const auto& [d, nd] : f.loops) {
    if (!std::isfinite(d) || !std::isfinite(nd)) {
      throw ConstructionError("loop weights must be finite");
    }
  }
  // Exact polynomial convolution in powers of eps^-1: poly[i] multiplies
  // eps^-(L-i) at the end.
  std::vector<double> poly{1.0};
  for (const auto& [d, nd] : f.loops) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * d;
      next[i + 1] += poly[i] * nd;
    }
    poly = std::move(next);
  }
  return LaurentSeries::make(-f.L(), std::move(poly));
}

LoopFactorization factorize(const LaurentSeries& beta, double gauge,
                            const FactorizeOptions& opts) {
  if (beta.is_zero()) {
    throw ContractError("cannot factorize the zero series");
  }
  if (beta.max_reliable_order() < 0) {
    throw ContractError("trace coefficients must reach eps^0")
        .with("max_reliable_order",
              static_cast<long long>(beta.max_reliable_order()));
  }
  const int series_L = -beta.min_order();
  const int L = opts.loop_count.value_or(series_L);
  if (L != 1 && L != 2) {
    throw CapabilityError(
        "factorization implemented for L in {1, 2}; higher loop counts are "
        "underdetermined")
        .with("L", static_cast<long long>(L));
  }
  if (series_L > L) {
    throw ContractError("series has a deeper pole than the requested loop count")
        .with("series_min_order", static_cast<long long>(beta.min_order()));
  }

  auto coeff_or_zero = [&beta](int k) {
    return k < beta.min_order() ? 0.0 : beta.at(k);
  };

  if (L == 1) {
    const double b1 = coeff_or_zero(-1);
    const double b0 = coeff_or_zero(0);
    return LoopFactorization{{{b1, b0}}};
  }

  const double b2 = coeff_or_zero(-2);
  const double b1 = coeff_or_zero(-1);
  const double b0 = coeff_or_zero(0);
  if (b2 == 0.0) {
    throw DegenerateLoopError(
        "two-loop factorization needs a nonzero eps^-2 coefficient");
  }
  if (gauge == 0.0 || !std::isfinite(gauge)) {
    throw GaugeError("gauge parameter t must be nonzero and finite").with("t", gauge);
  }

  const double disc = b1 * b1 - 4.0 * b2 * b0;
  if (disc < 0.0) {
    throw FactorizationError(
        "no real factorization: discriminant beta_-1^2 - 4 beta_-2 beta_0 is "
        "negative")
        .with("discriminant", disc);
  }

  // Roots of (b2/t) x^2 - b1 x + t b0, written to avoid cancellation: the
  // larger-magnitude root comes from the stable sum, the other from Vieta.
  const double sq = std::sqrt(disc);
  const double s = b1 + std::copysign(sq, b1 == 0.0 ? 1.0 : b1);
  double root_big, root_small_mag;
  if (s == 0.0) {
    root_big = 0.0;
    root_small_mag = 0.0;
  } else {
    root_big = gauge * s / (2.0 * b2);
    root_small_mag = 2.0 * gauge * b0 / s;
  }
  double lo = root_big, hi = root_small_mag;
  if (lo > hi) std::swap(lo, hi);

  const double rho_nd_1 = opts.swap_roots ? hi : lo;
  const double rho_nd_2 = b1 / gauge - (b2 / (gauge * gauge)) * rho_nd_1;
  return LoopFactorization{{{gauge, rho_nd_1}, {b2 / gauge, rho_nd_2}}};
}

double project_nondiagonal(const LoopFactorization& f) {
  if (f.loops.empty()) throw ContractError("factorization must have at least one loop");
  double prod = 1.0;
  for (const auto& [d, nd] : f.loops) {
    (void)d;
    prod *= nd;
  }
  return prod;
}

}  // namespace obsrg
