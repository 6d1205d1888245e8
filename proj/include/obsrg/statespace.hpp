#ifndef OBSRG_STATESPACE_HPP
#define OBSRG_STATESPACE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "obsrg/laurent.hpp"

namespace obsrg {

// Per-loop internal-state weights: one (rho_d, rho_nd) pair per loop.  rho_d
// carries the pole (the 1/pi of the delta-function representation is absorbed
// into rho_d), rho_nd the finite remainder.
struct LoopFactorization {
  std::vector<std::pair<double, double>> loops;
  int L() const { return static_cast<int>(loops.size()); }
};

struct FactorizeOptions {
  // The non-diagonal quadratic has two roots; false picks the smaller.
  bool swap_roots = false;
  // Explicit loop count.  Needed to request L = 2 when the pole coefficient is
  // exactly zero (the series' canonical form would have trimmed it away).
  std::optional<int> loop_count;
};

// Trace of the internal state: the exact polynomial
//   prod_i (rho_d_i * eps^-1 + rho_nd_i)
// as a Laurent series.  The factors are exact binomials, so every coefficient
// from eps^-L through eps^0 is exact and the finite part is always readable.
LaurentSeries trace_of_factors(const LoopFactorization& f);

// Solve the factorization constraints from the trace coefficients beta
// (min_order -L).  L = 1 is determined; L = 2 has a one-parameter gauge
// freedom fixed by rho_d_1 = t plus a root choice:
//   rho_d_1 = t, rho_d_2 = beta_-2 / t,
//   rho_nd_1 = root of (beta_-2/t) x^2 - beta_-1 x + t beta_0,
//   rho_nd_2 = beta_-1/t - (beta_-2/t^2) rho_nd_1.
LoopFactorization factorize(const LaurentSeries& beta, double gauge,
                            const FactorizeOptions& opts = {});

// Observable-state projection: drop every term containing a diagonal factor,
// i.e. return prod_i rho_nd_i — the finite (eps^0) part of the trace.
double project_nondiagonal(const LoopFactorization& f);

}  // namespace obsrg

#endif  // OBSRG_STATESPACE_HPP
