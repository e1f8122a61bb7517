// blockade.hpp - two-atom blockade models: closed forms, fitted curves and
// the simulation side used to calibrate them.

#pragma once

#include "rydberg/physics.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <span>
#include <utility>
#include <vector>

namespace rydberg {

double rb_sequential(double omega, double delta, const PhysicalConstants& k = PhysicalConstants::n70());
double prr_sequential(double r, double omega, double delta, const PhysicalConstants& k = PhysicalConstants::n70());

// (C6 / omega)^(1/6), the radius where the bare interaction equals the drive.
double rb_pi(double omega, const PhysicalConstants& k = PhysicalConstants::n70());
double rb_global(double omega, const PhysicalConstants& k = PhysicalConstants::n70());
double omega_eff(double omega0, double omega1);
double rb_local(double omega0, double omega1, const PhysicalConstants& k = PhysicalConstants::n70());

double prr_global_simplified(double r, double omega, const PhysicalConstants& k = PhysicalConstants::n70());
double prr_local(double r, double omega0, double omega1, const PhysicalConstants& k = PhysicalConstants::n70());

// Symmetric global-drive pair in the basis (gg, gR, Rg, RR), shifted so that
// gg has zero energy: A = -delta, B = omega / 2, C = C6/r^6 - 2 delta.
struct FourLevelParams {
  double a;
  double b;
  double c;

  static FourLevelParams from_pair(double r, double omega, double delta,
                                   const PhysicalConstants& k = PhysicalConstants::n70());
};

RMatrix four_level_matrix(const FourLevelParams& p);

struct CubicInvariants {
  double p;
  double m;
  double q;
  double theta;
};

CubicInvariants cubic_invariants(const FourLevelParams& p);

// Eigenvalues of the symmetric block, in the closed-form order E2, E3, E4.
// The antisymmetric state (0, 1, -1, 0) carries the remaining eigenvalue A.
// Throws NumericalError when P^3 < M^2 (outside the trigonometric regime).
std::array<double, 3> symmetric_block_eigenvalues(const FourLevelParams& p);

// Long-time upper bound on the |gg> -> |RR> population for a globally
// driven pair. Throws NumericalError at a pole (an eigenvalue within 1e-12 of 0).
double prr_global_exact(double r, double omega, double delta, const PhysicalConstants& k = PhysicalConstants::n70());

enum class DriveKind { Sequential, Global, Local };

const char* to_string(DriveKind kind);
DriveKind drive_kind_from_string(const std::string& name);

struct DriveScenario {
  DriveKind kind;
  double omega0;  // unused for Sequential (atom 0 starts in |R> and is not driven)
  double omega1;
  double delta;

  static DriveScenario sequential(double omega, double delta = 0.0);
  static DriveScenario global(double omega, double delta = 0.0);
  static DriveScenario local(double omega0, double omega1, double delta = 0.0);

  void validate() const;
};

inline constexpr double kDefaultDt = 0.05;

// max_t P_RR for the pair at separation r.
double simulate_prr(const DriveScenario& s, double r, double duration, double dt = kDefaultDt,
                    const PhysicalConstants& k = PhysicalConstants::n70());

// Closed-form curve and radius for the scenario: prr_sequential / rb_sequential,
// prr_global_simplified / rb_global, prr_local / rb_local.
double prr_model(const DriveScenario& s, double r, const PhysicalConstants& k = PhysicalConstants::n70());
double rb_model(const DriveScenario& s, const PhysicalConstants& k = PhysicalConstants::n70());

struct RadiusSearch {
  double r_lo = 0.0;  // 0 means: pick from the scenario amplitudes
  double r_hi = 0.0;
  double dt = kDefaultDt;
};

// Bisection for simulate_prr(r) = 0.5. Throws NumericalError if the interval
// does not bracket the crossing.
double rb_from_simulation(const DriveScenario& s, double duration, double tol_r, const RadiusSearch& search = {},
                          const PhysicalConstants& k = PhysicalConstants::n70());

// Window-5 decrease fraction per point, clipped to [0, 0.99].
std::vector<double> fluctuability(std::span<const double> series);

struct FitSample {
  double omega0;
  double omega1;
  std::vector<double> r_values;
  std::vector<double> prr_values;
  std::vector<double> fluctuability;

  void validate() const;
  double mean_fluctuability() const;
};

FitSample simulate_fit_sample(double omega0, double omega1, std::vector<double> r_values, double duration,
                              double dt = 0.01, const PhysicalConstants& k = PhysicalConstants::n70());

struct GradientFit {
  double slope;       // Delta^L in 1/um
  double objective;   // weighted L1 residual at the slope
  bool unimodal;      // false when golden section disagreed with the grid scan
  double rb_pi_eff;   // (C6 / Omega_eff)^(1/6)
};

// Weighted L1 objective of the rescaled sequential curve against the sample.
double gradient_objective(const FitSample& sample, double slope, const PhysicalConstants& k = PhysicalConstants::n70());

GradientFit fit_local_gradient(const FitSample& sample, const PhysicalConstants& k = PhysicalConstants::n70());

// Weighted least-absolute-deviation fit of y = s x (x > 0): the weighted
// median of y/x with weights w x.
double weighted_l1_slope(std::span<const double> x, std::span<const double> y, std::span<const double> w);

double halton(std::uint64_t index, std::uint64_t base);

// Amplitude pairs (omega0, omega0 * ratio) with omega0 log-uniform over
// [omega_lo, omega_hi] and ratio uniform over [ratio_lo, ratio_hi], drawn from
// the 2-3 Halton sequence starting at index 1.
std::vector<std::pair<double, double>> halton_amplitude_pairs(std::size_t count, double omega_lo = 2.0,
                                                              double omega_hi = 20.0, double ratio_lo = 0.4,
                                                              double ratio_hi = 1.0);

struct SweepPoint {
  double omega0;
  double omega1;
  double inv_rb_eff;
  double gradient;
  double fluctuability_mean;
  bool unimodal;
  double max_residual;  // max |prr_local - simulation| over the sample
};

std::vector<SweepPoint> run_fit_sweep(std::span<const std::pair<double, double>> pairs, const std::vector<double>& r_values,
                                      double duration, double dt, std::size_t threads,
                                      const PhysicalConstants& k = PhysicalConstants::n70());

// Weighted proportional fit of gradient against 1/r_B^pi(Omega_eff), weights 1 - mean F.
double sweep_slope(std::span<const SweepPoint> points);

}  // namespace rydberg
