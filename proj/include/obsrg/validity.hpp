#ifndef OBSRG_VALIDITY_HPP
#define OBSRG_VALIDITY_HPP

#include <utility>
#include <vector>

#include "obsrg/rgflow.hpp"

namespace obsrg {

// Which scale variable a domain is currently presented in.  The underlying
// data is always stored in energy-scale (mu) form; the distance view is a
// presentation of the same region under d = 1/mu.
enum class ScaleVariable { energy_mu, distance_d };

// One open interval of scales.  Endpoints are kept both directly and in log
// form: the log endpoints are the primary values produced by the root solve
// (exp() of a large log endpoint can overflow to +inf, which is the intended
// reading of "unbounded above").  lo == 0 with log_lo == -inf encodes an
// interval that extends to arbitrarily small scales; hi == +inf with
// log_hi == +inf encodes one that extends to arbitrarily large scales.
struct ValidityInterval {
  double lo = 0.0;
  double hi = 0.0;
  double log_lo = 0.0;
  double log_hi = 0.0;
};

// The region of scales where the running coupling stays inside the unit
// circle, |coupling| < 1, so the perturbative expansion is meaningful.
struct ValidityDomain {
  // Canonical storage: disjoint open intervals in mu, sorted ascending.
  std::vector<ValidityInterval> mu_intervals;
  ScaleVariable variable = ScaleVariable::energy_mu;
  CouplingFlowParams params_echo;
  int l = 4;

  // Intervals in the currently selected variable.  For the distance view
  // each (lo, hi) in mu maps to (1/hi, 1/lo) and the list order reverses so
  // the result stays sorted ascending.
  std::vector<ValidityInterval> intervals() const;
};

// Solves |coupling_closed(params, l, mu)| < 1 for mu > 0 with mu_s = 1.
// The bound reduces to P(x) > 0 in x = ln(mu) where
//   P(x) = 1/lambda_s - 1 + sum_k table[k] * x^(k+1),
// solved by sign-change bisection on a bracketing grid over x in [-1e4, 1e4];
// regions reaching a grid edge are reported as unbounded.  Roots are refined
// to 1e-12 in x.  The interval list may be empty (no admissible scales).
//
// Errors: lambda_s <= 0 -> DomainError; table of all zeros -> DegenerateError;
// wrong table length or mu_s != 1 -> ContractError.
ValidityDomain validity_intervals(const CouplingFlowParams& params, int l);

// Closed-form half-width / center pair for the l = 6 domain boundary in
// x = ln(mu): with v = table[0] / (2 |table[1]|) and
// q = sqrt(v^2 + (1 - lambda_s) / (|table[1]| lambda_s)), the domain is the
// single interval (e^{v-q}, e^{v+q}).  Returns {q, v}.
//
// Errors: negative radicand -> EmptyDomainError (no admissible scales);
// table[1] == 0 -> DegenerateError; lambda_s <= 0 -> DomainError;
// table length != 2 -> ContractError.
std::pair<double, double> validity_l6_qv(const CouplingFlowParams& params);

// Switches the presentation between energy scale mu and distance d = 1/mu.
// Applying it twice restores the original domain exactly (the stored
// mu-space data never changes; only the view flag toggles).
ValidityDomain to_distance(ValidityDomain dom);

}  // namespace obsrg

#endif  // OBSRG_VALIDITY_HPP
