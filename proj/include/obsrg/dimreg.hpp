#ifndef OBSRG_DIMREG_HPP
#define OBSRG_DIMREG_HPP

#include <map>

#include "obsrg/laurent.hpp"

namespace obsrg {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Physical parameters shared by every computation: interaction power l (phi^l),
// bare mass squared m0sq, regularization scale mu, reference scale mu_s, and a
// dimensionless coupling (lambda_0 or lambda_S depending on context).
struct TheoryConfig {
  int l = 4;
  double m0sq = 1.0;
  double mu = 1.0;
  double mu_s = 1.0;
  double coupling = 0.0;
};

// Throws DomainError unless l is even and >= 4 and all scales are positive.
void validate(const TheoryConfig& cfg);

// Tadpole expansion coefficients alpha_j(m0^2), contiguous from j = -1.
// alpha_table() fills j in {-1, 0, 1}; a caller may extend the map with
// higher-j entries to unlock deeper expansions (entries must stay contiguous).
struct AlphaTable {
  std::map<int, double> entries;
};

// Bubble expansion constants eta_i for i in {-1, 0, 1}.  eta_{-1} = -3/16pi^2
// is mass-independent; eta_0 carries the ln(4pi/m0^2) dependence.
struct BubbleTable {
  std::map<int, double> eta;
};

AlphaTable alpha_table(double m0sq);

// The tadpole as a series: min_order -1, coefficients alpha_{-1}, alpha_0, ...
LaurentSeries tadpole_series(double m0sq);
LaurentSeries tadpole_series(const AlphaTable& table);

// Integer powers of the tadpole; the eps^(-power) coefficient is
// (alpha_{-1})^power and the finite part stays reliable for power <= 2.
LaurentSeries xi_series(double m0sq, int power);
LaurentSeries xi_series(const AlphaTable& table, int power);

BubbleTable bubble_table(double m0sq);

// Kinematic finite part of the bubble:
//   R0(r^2, m0^2) = (1/32pi^2) * w * ln((w+1)/(w-1)),  w = sqrt(1 + 4 m0^2/r^2)
// defined for spacelike r^2 > 0 only; the threshold/timelike region would need
// an analytic continuation that is out of scope, so it fails loudly.
double bubble_finite_R0(double rsq, double m0sq);

// Number of loops of an n-point function at perturbative order p.
int loop_count(int n, int p);

}  // namespace obsrg

#endif  // OBSRG_DIMREG_HPP
