// quantum.hpp - dense state vectors, Hermitian operators and constant-Hamiltonian quenches.
//
// Basis convention: bit i of a basis index is the occupation n_i of atom i
// (1 means |R>, 0 means |g>). Index 0 is the all-ground state.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rydberg {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr std::size_t kMaxAtoms = 12;
// Sampled values within this of the running maximum count as ties; the earliest sample wins.
inline constexpr double kTieTolerance = 1e-12;

class QuantumState {
 public:
  // Throws ValidationError if the length is not 2^n_atoms or the norm
  // deviates from 1 by more than kNormTolerance.
  QuantumState(std::size_t n_atoms, CVector amplitudes);

  static QuantumState basis(std::size_t n_atoms, std::uint64_t index);
  static QuantumState all_ground(std::size_t n_atoms) { return basis(n_atoms, 0); }

  std::size_t n_atoms() const noexcept { return n_atoms_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  double probability(std::uint64_t index) const { return std::norm(amplitudes_(static_cast<Eigen::Index>(index))); }
  RVector probabilities() const { return amplitudes_.cwiseAbs2(); }

 private:
  std::size_t n_atoms_;
  CVector amplitudes_;
};

class HermitianOperator {
 public:
  // Throws ValidationError for non-square input or when any entry
  // differs from its conjugate-transpose partner by more than kHermitianTolerance.
  explicit HermitianOperator(CMatrix entries);

  static HermitianOperator identity(std::size_t dimension);
  static HermitianOperator diagonal(const RVector& values);
  // |index><index|
  static HermitianOperator projector(std::size_t dimension, std::uint64_t index);
  // n_i n_j on an n_atoms register; i == j gives n_i.
  static HermitianOperator number_pair(std::size_t n_atoms, std::size_t i, std::size_t j);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const CMatrix& matrix() const noexcept { return entries_; }
  bool is_diagonal() const noexcept { return diagonal_; }
  RVector real_diagonal() const { return entries_.diagonal().real(); }

  double expectation(const CVector& psi) const;

 private:
  CMatrix entries_;
  bool diagonal_;
};

struct QuenchTrajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
};

struct ExpectationMax {
  double max_value;
  double argmax_time;
};

// Uniform sampling grid 0, dt, 2 dt, ... up to duration (inclusive within
// round-off). Throws std::invalid_argument for non-positive duration or dt.
std::vector<double> time_grid(double duration, double dt);

// Eigendecomposition of a Hamiltonian, computed once, used for every sampled time.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HermitianOperator& hamiltonian);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  const RVector& energies() const noexcept { return energies_; }
  const CMatrix& eigenvectors() const noexcept { return vectors_; }

  // Coefficients of psi0 in the eigenbasis.
  CVector to_eigenbasis(const CVector& psi0) const;
  // exp(-i H t) applied to a state given by its eigenbasis coefficients.
  CVector at_time(const CVector& coefficients, double t) const;

  // max over the reconstruction error |V diag(E) V^dag - H|, used by tests.
  double reconstruction_error(const HermitianOperator& hamiltonian) const;

 private:
  RVector energies_;
  CMatrix vectors_;
};

QuenchTrajectory evolve(const HermitianOperator& hamiltonian, const QuantumState& psi0, double duration, double dt);

// Fixed-step classical Runge-Kutta integration of i d/dt psi = H psi.
// Records every `record_every`-th step. Throws NumericalError when the norm
// drifts by more than 1e-6 over the run.
QuenchTrajectory evolve_reference(const HermitianOperator& hamiltonian, const QuantumState& psi0, double duration,
                                  double dt_fine, std::size_t record_every = 1);

ExpectationMax max_expectation(const HermitianOperator& hamiltonian, const QuantumState& psi0,
                               const HermitianOperator& observable, double duration, double dt);

// Per-observable maxima over one shared quench. Diagonal observables are given
// by their diagonal only; each maximum is taken independently over the grid.
std::vector<ExpectationMax> max_diagonal_expectations(const HermitianOperator& hamiltonian, const QuantumState& psi0,
                                                      std::span<const RVector> diagonals, double duration, double dt);

}  // namespace rydberg
