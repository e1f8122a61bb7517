// physics.hpp - atom registers and the Rydberg Hamiltonian.
//
// Units: positions in um, amplitudes and detunings in rad/us, hbar = 1.

#pragma once

#include "rydberg/quantum.hpp"

#include <vector>

namespace rydberg {

struct PhysicalConstants {
  double c6;  // rad um^6 / us

  // Throws ValidationError unless c6 > 0.
  explicit PhysicalConstants(double c6_value);

  static PhysicalConstants n70() { return PhysicalConstants(8.62e5); }
  static PhysicalConstants n82() { return PhysicalConstants(5.559e6); }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

class AtomRegister {
 public:
  // Throws ValidationError on length mismatch, negative amplitudes,
  // non-finite values or coincident atoms.
  AtomRegister(std::vector<Vec2> positions, std::vector<double> omegas, std::vector<double> deltas,
               PhysicalConstants constants = PhysicalConstants::n70());

  std::size_t size() const noexcept { return positions_.size(); }
  const std::vector<Vec2>& positions() const noexcept { return positions_; }
  const std::vector<double>& omegas() const noexcept { return omegas_; }
  const std::vector<double>& deltas() const noexcept { return deltas_; }
  const PhysicalConstants& constants() const noexcept { return constants_; }

  // C6 / r_ij^6
  double interaction(std::size_t i, std::size_t j) const;

 private:
  std::vector<Vec2> positions_;
  std::vector<double> omegas_;
  std::vector<double> deltas_;
  PhysicalConstants constants_;
};

// 1/2 sum Omega_i sigma^x_i - sum delta_i n_i + sum_{i<j} C6/r_ij^6 n_i n_j
HermitianOperator build_hamiltonian(const AtomRegister& reg);

// Diagonal of build_hamiltonian (the Omega-independent part).
RVector interaction_diagonal(const AtomRegister& reg);

AtomRegister scale_register(const AtomRegister& reg, double lambda);

}  // namespace rydberg
