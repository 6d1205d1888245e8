#include "obsrg/dimreg.hpp"

#include <cmath>
#include <vector>

namespace obsrg {

namespace {

void require_positive_mass_sq(double m0sq) {
  if (!(m0sq > 0.0) || !std::isfinite(m0sq)) {
    throw DomainError("m0sq must be positive and finite").with("m0sq", m0sq);
  }
}

}  // namespace

void validate(const TheoryConfig& cfg) {
  if (cfg.l < 4 || cfg.l % 2 != 0) {
    throw DomainError("interaction power l must be an even integer >= 4")
        .with("l", static_cast<long long>(cfg.l));
  }
  require_positive_mass_sq(cfg.m0sq);
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) {
    throw DomainError("mu must be positive and finite").with("mu", cfg.mu);
  }
  if (!(cfg.mu_s > 0.0) || !std::isfinite(cfg.mu_s)) {
    throw DomainError("mu_s must be positive and finite").with("mu_s", cfg.mu_s);
  }
  if (!std::isfinite(cfg.coupling)) {
    throw DomainError("coupling must be finite").with("coupling", cfg.coupling);
  }
}

AlphaTable alpha_table(double m0sq) {
  require_positive_mass_sq(m0sq);
  const double pi2 = kPi * kPi;
  const double g = kEulerGamma;
  const double log_m_over_4pi = std::log(m0sq / (4.0 * kPi));
  AlphaTable t;
  t.entries[-1] = -m0sq / (8.0 * pi2);
  t.entries[0] = m0sq / (16.0 * pi2) * (1.0 - g - log_m_over_4pi);
  t.entries[1] = m0sq / (384.0 * pi2) *
                 (6.0 * log_m_over_4pi * (2.0 * g - 2.0 + log_m_over_4pi) + pi2 +
                  6.0 * g * g - 12.0 * g + 12.0);
  return t;
}

LaurentSeries tadpole_series(const AlphaTable& table) {
  if (table.entries.empty()) {
    throw ConstructionError("alpha table is empty");
  }
  int expected = table.entries.begin()->first;
  std::vector<double> coeffs;
  coeffs.reserve(table.entries.size());
  for (const auto& [j, v] : table.entries) {
    if (j != expected) {
      throw ConstructionError("alpha table entries must be contiguous in j")
          .with("missing_order", static_cast<long long>(expected));
    }
    coeffs.push_back(v);
    ++expected;
  }
  return LaurentSeries::make(table.entries.begin()->first, std::move(coeffs));
}

LaurentSeries tadpole_series(double m0sq) { return tadpole_series(alpha_table(m0sq)); }

LaurentSeries xi_series(const AlphaTable& table, int power) {
  if (power < 0) throw ContractError("tadpole power must be non-negative");
  return pow_int(tadpole_series(table), power);
}

LaurentSeries xi_series(double m0sq, int power) {
  return xi_series(alpha_table(m0sq), power);
}

BubbleTable bubble_table(double m0sq) {
  require_positive_mass_sq(m0sq);
  const double pi2 = kPi * kPi;
  const double g = kEulerGamma;
  BubbleTable t;
  t.eta[-1] = -3.0 / (16.0 * pi2);
  t.eta[0] = -3.0 / (16.0 * pi2) * (std::log(4.0 * kPi / m0sq) - g);
  const double h = 0.5 * g - std::log(2.0 * std::sqrt(kPi));
  t.eta[1] = 1.0 / 768.0 + h * h / (32.0 * pi2);
  return t;
}

double bubble_finite_R0(double rsq, double m0sq) {
  require_positive_mass_sq(m0sq);
  if (!(rsq > 0.0) || !std::isfinite(rsq)) {
    throw KinematicDomainError(
        "channel invariant r^2 must be positive (no analytic continuation)")
        .with("rsq", rsq)
        .with("m0sq", m0sq);
  }
  const double w = std::sqrt(1.0 + 4.0 * m0sq / rsq);
  return w * std::log((w + 1.0) / (w - 1.0)) / (32.0 * kPi * kPi);
}

int loop_count(int n, int p) {
  if (n < 0 || n % 2 != 0) {
    throw ContractError("point count n must be even and non-negative")
        .with("n", static_cast<long long>(n));
  }
  if (p < 0) {
    throw ContractError("perturbative order p must be non-negative")
        .with("p", static_cast<long long>(p));
  }
  const int loops = p - n / 2 + 1;
  if (loops < 0) {
    throw ContractError("no diagram class with negative loop count")
        .with("n", static_cast<long long>(n))
        .with("p", static_cast<long long>(p));
  }
  return loops;
}

}  // namespace obsrg
