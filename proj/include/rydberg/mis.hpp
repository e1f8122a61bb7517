// mis.hpp - ground states of the final drive Hamiltonian and MIS sampling quality.

#pragma once

#include "rydberg/graphs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rydberg {

enum class DriveMode { Local, Global };

const char* to_string(DriveMode mode);
DriveMode drive_mode_from_string(const std::string& name);

struct FinalDriveParams {
  double kappa;
  double delta_f;  // rad/us

  void validate() const;
};

// Per-vertex amplitudes kappa C6 / r_i^6 (Local) or the single value
// kappa C6 / r_avg^6 with r_avg the mean radius (Global).
std::vector<double> drive_amplitudes(const DiskGraph& dg, double kappa, DriveMode mode,
                                     const PhysicalConstants& k = PhysicalConstants::n70());

HermitianOperator final_hamiltonian(const DiskGraph& dg, const FinalDriveParams& params, DriveMode mode,
                                    const PhysicalConstants& k = PhysicalConstants::n70());

struct GroundSpace {
  CMatrix basis;       // columns span the lowest eigenspace
  double energy;
  double gap;          // to the next distinct level, 0 if the whole spectrum is degenerate
  std::size_t degeneracy() const noexcept { return static_cast<std::size_t>(basis.cols()); }
  // Diagonal of the uniform mixture over the basis.
  RVector weights() const;
};

GroundSpace ground_space(const HermitianOperator& h, double rel_tol = 1e-9);

// Weight on independent sets of size >= |MIS| - k.
double p_mis_k(const GroundSpace& ground, const AbstractGraph& g, std::size_t k);
std::vector<double> p_mis_curve(const GroundSpace& ground, const AbstractGraph& g);
double violation_weight(const GroundSpace& ground, const AbstractGraph& g);

struct OptimizeBounds {
  double kappa_lo = 0.05;
  double kappa_hi = 2.0;
  double delta_lo = 0.0;
  double delta_hi = 10.0;
  void validate() const;
};

struct OptimizeBudget {
  std::size_t grid = 21;             // points per axis
  std::size_t simplex_iterations = 300;
  double simplex_tolerance = 1e-10;  // on the spread of objective values
  std::size_t threads = 1;
};

struct MisReport {
  DriveMode mode;
  FinalDriveParams params;
  double p_mis;
  std::vector<double> p_mis_k;  // k = 0 .. |MIS|
  double violation_weight;
  std::size_t ground_degeneracy;
  double gap;
  bool informative;  // false when p_mis was zero over the whole grid
};

MisReport evaluate_drive(const DiskGraph& dg, const AbstractGraph& g, DriveMode mode, const FinalDriveParams& params,
                         const PhysicalConstants& k = PhysicalConstants::n70());

MisReport optimize_drive(const DiskGraph& dg, const AbstractGraph& g, DriveMode mode, const OptimizeBounds& bounds = {},
                         const OptimizeBudget& budget = {}, const PhysicalConstants& k = PhysicalConstants::n70());

// 2 (p_l - p_g) / (p_l + p_g); no value when both are zero.
std::optional<double> delta_k(double p_local, double p_global);

}  // namespace rydberg
