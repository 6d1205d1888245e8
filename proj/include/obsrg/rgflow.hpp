#ifndef OBSRG_RGFLOW_HPP
#define OBSRG_RGFLOW_HPP

#include <optional>
#include <utility>
#include <vector>

#include "obsrg/dimreg.hpp"

namespace obsrg {

enum class FlowQuantity { mass_sq, coupling };
enum class FlowMethod { closed_form, rk_adaptive };
enum class SampleScale { log, linear };

struct StepStats {
  long accepted = 0;
  long rejected = 0;
};

// Sampled (mu, value) curve from an RG flow, ascending in mu.
struct FlowTrajectory {
  std::vector<std::pair<double, double>> samples;
  FlowQuantity quantity = FlowQuantity::mass_sq;
  FlowMethod method = FlowMethod::closed_form;
  double tol = 0.0;
  StepStats step_stats;
};

// Running-coupling closed-form inputs: reference coupling lambda_s at scale
// mu_s plus the polynomial coefficients Lambda_0..Lambda_{l/2-2}.
struct CouplingFlowParams {
  double lambda_s = 0.0;
  double mu_s = 1.0;
  std::vector<double> lambda_table;
};

// dm0^2/dmu = (lambda0/mu) sum_{k=0}^{l/2-2} (-1)^(k+1) (ln mu)^k / k! * xi_{-(k+1)}
// with xi taken from [tadpole(m0^2)]^(l/2-1); lambda0 and mu come from cfg.
double mass_rhs(const TheoryConfig& cfg);

// Adaptive embedded Runge-Kutta (Dormand-Prince 4(5)) integration of mass_rhs
// in x = ln mu from (cfg.mu_s, m_s_sq) to mu_end, sampled at n_samples points
// (log-spaced by default).  Samples are returned in ascending mu.
FlowTrajectory integrate_mass_flow(const TheoryConfig& cfg, double m_s_sq,
                                   double mu_end, double tol, int n_samples,
                                   SampleScale scale = SampleScale::log);

// The sweep grid the flow integrators use: `points` samples from start to end
// inclusive, log- or linearly spaced, endpoints exact.
std::vector<double> flow_sample_grid(double start, double end, int points,
                                     SampleScale scale);

// Same integration sampled at an explicit mu grid.  The grid must start at
// cfg.mu_s and be monotone toward its last element; a single-element grid
// returns just the initial value.  Samples are returned in ascending mu.
FlowTrajectory integrate_mass_flow_grid(const TheoryConfig& cfg, double m_s_sq,
                                        const std::vector<double>& mu_grid,
                                        double tol);

// l = 4 closed form: m0^2(mu) = m_s^2 * (mu/mu_s)^(lambda0/8pi^2).
double mass_flow_l4_closed(double m_s_sq, double lambda0, double mu, double mu_s);

// Compact l = 6 flow in z = ln(m0^2), r = ln(4pi e^(gamma-1) mu) variables:
// dz/dr = (lambda0/64pi^4) e^z (r - z).  Companion form kept for qualitative
// sign analysis (z increases with r exactly when r > z); mass_rhs is the
// canonical right-hand side used for integration.
double mass_rhs_l6_zr(double z, double r, double lambda0);

// Lambda_k = S_{l/2-2-k} * (-2)^k / (k+1)!, built from the S-table.
CouplingFlowParams lambda_coefficients(const TheoryConfig& cfg);

// lambda(mu) = lambda_s / (1 + lambda_s * sum_k Lambda_k (ln^(k+1) mu - ln^(k+1) mu_s)).
// A denominator within 1e-12 of zero raises a landau-pole error carrying the
// nearest denominator root.
double coupling_closed(const CouplingFlowParams& params, int l, double mu);

// dlambda/dmu = -lambda0^2 (1/mu) sum_{k=0}^{l/2-2} (-2 ln mu)^k / k! * S_{l/2-2-k}.
double coupling_rhs(const TheoryConfig& cfg, double lambda0);

// First root of the closed-form denominator strictly between the two ln(mu)
// bounds, in the direction from the first to the second; nullopt if none.
std::optional<double> coupling_pole_lnmu(const CouplingFlowParams& params,
                                         double lnmu_from, double lnmu_to);

// Closed-form coupling sweep over [mu_start, mu_end].  If a denominator root
// lies inside the range, the grid is truncated 1% (of the ln-mu distance from
// the start) before the pole and pole_ahead is set.
struct CouplingSweep {
  FlowTrajectory traj;
  bool pole_ahead = false;
  std::optional<double> pole_lnmu;
};
CouplingSweep coupling_flow_samples(const CouplingFlowParams& params, int l,
                                    double mu_start, double mu_end, int points,
                                    SampleScale scale = SampleScale::log);

}  // namespace obsrg

#endif  // OBSRG_RGFLOW_HPP
