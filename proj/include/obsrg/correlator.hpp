#ifndef OBSRG_CORRELATOR_HPP
#define OBSRG_CORRELATOR_HPP

#include <optional>
#include <vector>

#include "obsrg/dimreg.hpp"
#include "obsrg/laurent.hpp"

namespace obsrg {

// Channel invariants z (e.g. Mandelstam s, t, u for the 4-point vertex).
struct Kinematics {
  std::vector<double> channels;
};

// First-order two-point finite coefficient and the full trace series.
// The series is the trace evaluated at the configured coupling; a coupling of
// exactly 0 would collapse it to the zero series, so in that case the series
// is stored at unit coupling (beta0 itself never depends on the coupling).
struct MassCorrection {
  double beta0 = 0.0;
  LaurentSeries series;
  int l = 0;
  double m0sq = 0.0;
  double mu = 0.0;
};

// Second-order l-point vertex data: the S-table, its finite constant part,
// and (for l = 4 with kinematics supplied) the kinematic finite part f0.
struct VertexCorrection {
  std::vector<double> s_table;
  double beta0 = 0.0;
  std::optional<double> f0;
  bool f0_included = false;
};

// Trace of the first-order two-point internal state:
//   -lambda0 * mu^(-eps) * [tadpole(m0^2)]^(l/2-1)
// as a truncated Laurent series in eps.
LaurentSeries two_point_trace_series(const TheoryConfig& cfg, double lambda0);

// beta0 = -sum_{k=0}^{l/2-1} (-ln mu)^k / k! * xi_{-k}, cross-checked against
// the eps^0 coefficient of the unit-coupling trace series (they must agree to
// 1e-10 relative or an internal-consistency error is raised).
MassCorrection two_point_beta0(const TheoryConfig& cfg);

// S_n = sum_{k=0}^{n} xi_{k-(l/2-2)} * eta_{n-k-1} for n = 0..l/2-1, computed
// as the Cauchy convolution of [tadpole]^(l/2-2) with the bubble constants.
std::vector<double> s_table(const TheoryConfig& cfg);

// Pole block of the second-order l-point vertex:
//   mu^(-2 eps) * sum_n S_n eps^(n-(l/2-1)),  reliable through eps^0.
LaurentSeries vertex_series(const TheoryConfig& cfg);

// Finite part of the vertex: the eps^0 constant
//   sum_{k=0}^{l/2-1} (-2 ln mu)^k / k! * S_{l/2-1-k}
// plus, for l = 4 with kinematics, f0 = sum over channels of R0(z, m0^2).
// Requesting f0 at l = 6 is a capability error (that loop integral has no
// closed form here).
VertexCorrection vertex_finite(const TheoryConfig& cfg,
                               const std::optional<Kinematics>& kin = std::nullopt);

// First-order physical mass: m^2 = m0^2 - coupling * beta0.
double physical_mass_first_order(const TheoryConfig& cfg);

}  // namespace obsrg

#endif  // OBSRG_CORRELATOR_HPP
