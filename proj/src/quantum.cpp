#include "rydberg/quantum.hpp"

#include "rydberg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rydberg {

namespace {

bool is_power_of_two_length(std::size_t n_atoms, Eigen::Index length) {
  return n_atoms < 63 && length == (Eigen::Index{1} << n_atoms);
}

void require_same_dimension(const HermitianOperator& h, const QuantumState& psi, const char* where) {
  if (h.dimension() != psi.dimension()) {
    throw ValidationError(std::string(where) + ": Hamiltonian dimension " + std::to_string(h.dimension()) +
                          " does not match state dimension " + std::to_string(psi.dimension()));
  }
}

}  // namespace

QuantumState::QuantumState(std::size_t n_atoms, CVector amplitudes) : n_atoms_(n_atoms), amplitudes_(std::move(amplitudes)) {
  if (!is_power_of_two_length(n_atoms_, amplitudes_.size())) {
    throw ValidationError("QuantumState: amplitude vector length must be 2^n_atoms");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw ValidationError("QuantumState: state is not normalized (norm = " + std::to_string(norm) + ")");
  }
}

QuantumState QuantumState::basis(std::size_t n_atoms, std::uint64_t index) {
  if (n_atoms >= 63 || index >= (std::uint64_t{1} << n_atoms)) {
    throw ValidationError("QuantumState::basis: index out of range");
  }
  CVector v = CVector::Zero(Eigen::Index{1} << n_atoms);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(n_atoms, std::move(v));
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)), diagonal_(true) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("HermitianOperator: matrix must be square and non-empty");
  }
  const Eigen::Index d = entries_.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const cplx a = entries_(i, j);
      const cplx b = std::conj(entries_(j, i));
      if (std::abs(a.real() - b.real()) > kHermitianTolerance || std::abs(a.imag() - b.imag()) > kHermitianTolerance) {
        throw ValidationError("HermitianOperator: matrix is not Hermitian at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      if (i != j && a != cplx{0.0, 0.0}) diagonal_ = false;
    }
  }
}

HermitianOperator HermitianOperator::identity(std::size_t dimension) {
  const auto d = static_cast<Eigen::Index>(dimension);
  return HermitianOperator(CMatrix::Identity(d, d));
}

HermitianOperator HermitianOperator::diagonal(const RVector& values) {
  return HermitianOperator(values.cast<cplx>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::projector(std::size_t dimension, std::uint64_t index) {
  if (index >= dimension) throw ValidationError("HermitianOperator::projector: index out of range");
  RVector d = RVector::Zero(static_cast<Eigen::Index>(dimension));
  d(static_cast<Eigen::Index>(index)) = 1.0;
  return diagonal(d);
}

HermitianOperator HermitianOperator::number_pair(std::size_t n_atoms, std::size_t i, std::size_t j) {
  if (n_atoms > kMaxAtoms || i >= n_atoms || j >= n_atoms) {
    throw ValidationError("HermitianOperator::number_pair: atom index out of range");
  }
  const std::uint64_t dim = std::uint64_t{1} << n_atoms;
  const std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
  RVector d(static_cast<Eigen::Index>(dim));
  for (std::uint64_t s = 0; s < dim; ++s) d(static_cast<Eigen::Index>(s)) = (s & mask) == mask ? 1.0 : 0.0;
  return diagonal(d);
}

double HermitianOperator::expectation(const CVector& psi) const {
  if (diagonal_) return psi.cwiseAbs2().dot(entries_.diagonal().real());
  return psi.dot(entries_ * psi).real();
}

std::vector<double> time_grid(double duration, double dt) {
  if (!(duration > 0.0) || !(dt > 0.0)) throw ValidationError("time grid: duration and dt must be positive");
  const auto steps = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) * dt;
  return times;
}

SpectralPropagator::SpectralPropagator(const HermitianOperator& hamiltonian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("SpectralPropagator: eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

CVector SpectralPropagator::to_eigenbasis(const CVector& psi0) const { return vectors_.adjoint() * psi0; }

CVector SpectralPropagator::at_time(const CVector& coefficients, double t) const {
  CVector phased(coefficients.size());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    phased(k) = coefficients(k) * std::polar(1.0, -energies_(k) * t);
  }
  return vectors_ * phased;
}

double SpectralPropagator::reconstruction_error(const HermitianOperator& hamiltonian) const {
  const CMatrix rebuilt = vectors_ * energies_.cast<cplx>().asDiagonal() * vectors_.adjoint();
  return (rebuilt - hamiltonian.matrix()).cwiseAbs().maxCoeff();
}

QuenchTrajectory evolve(const HermitianOperator& hamiltonian, const QuantumState& psi0, double duration, double dt) {
  require_same_dimension(hamiltonian, psi0, "evolve");
  QuenchTrajectory out;
  out.times = time_grid(duration, dt);
  const SpectralPropagator prop(hamiltonian);
  const CVector c = prop.to_eigenbasis(psi0.amplitudes());
  out.states.reserve(out.times.size());
  for (double t : out.times) {
    CVector psi = prop.at_time(c, t);
    // renormalize against round-off
    psi /= psi.norm();
    out.states.emplace_back(psi0.n_atoms(), std::move(psi));
  }
  return out;
}

QuenchTrajectory evolve_reference(const HermitianOperator& hamiltonian, const QuantumState& psi0, double duration,
                                  double dt_fine, std::size_t record_every) {
  require_same_dimension(hamiltonian, psi0, "evolve_reference");
  if (record_every == 0) throw ValidationError("evolve_reference: record_every must be >= 1");
  const std::vector<double> grid = time_grid(duration, dt_fine);
  const CMatrix minus_i_h = cplx{0.0, -1.0} * hamiltonian.matrix();
  const double h = dt_fine;

  QuenchTrajectory out;
  CVector psi = psi0.amplitudes();
  out.times.push_back(0.0);
  out.states.push_back(psi0);
  for (std::size_t step = 1; step < grid.size(); ++step) {
    const CVector k1 = minus_i_h * psi;
    const CVector k2 = minus_i_h * (psi + 0.5 * h * k1);
    const CVector k3 = minus_i_h * (psi + 0.5 * h * k2);
    const CVector k4 = minus_i_h * (psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % record_every == 0 || step + 1 == grid.size()) {
      const double drift = std::abs(psi.norm() - 1.0);
      if (drift > 1e-6) {
        throw NumericalError("evolve_reference: integration failure, norm drift " + std::to_string(drift) +
                             " at t = " + std::to_string(grid[step]));
      }
      out.times.push_back(grid[step]);
      out.states.emplace_back(psi0.n_atoms(), psi / psi.norm());
    }
  }
  return out;
}

ExpectationMax max_expectation(const HermitianOperator& hamiltonian, const QuantumState& psi0,
                               const HermitianOperator& observable, double duration, double dt) {
  require_same_dimension(hamiltonian, psi0, "max_expectation");
  if (observable.dimension() != hamiltonian.dimension()) {
    throw ValidationError("max_expectation: observable dimension does not match Hamiltonian");
  }
  const std::vector<double> times = time_grid(duration, dt);
  const SpectralPropagator prop(hamiltonian);
  const CVector c = prop.to_eigenbasis(psi0.amplitudes());

  ExpectationMax best{-std::numeric_limits<double>::infinity(), 0.0};
  for (double t : times) {
    const CVector psi = prop.at_time(c, t);
    double value;
    if (observable.is_diagonal()) {
      value = observable.expectation(psi);
    } else {
      const cplx e = psi.dot(observable.matrix() * psi);
      if (std::abs(e.imag()) >= 1e-10) {
        throw NumericalError("max_expectation: expectation value has imaginary part " + std::to_string(e.imag()));
      }
      value = e.real();
    }
    if (value > best.max_value + kTieTolerance) best = {value, t};
  }
  return best;
}

std::vector<ExpectationMax> max_diagonal_expectations(const HermitianOperator& hamiltonian, const QuantumState& psi0,
                                                      std::span<const RVector> diagonals, double duration, double dt) {
  require_same_dimension(hamiltonian, psi0, "max_diagonal_expectations");
  for (const RVector& d : diagonals) {
    if (static_cast<std::size_t>(d.size()) != hamiltonian.dimension()) {
      throw ValidationError("max_diagonal_expectations: observable dimension does not match Hamiltonian");
    }
  }
  const std::vector<double> times = time_grid(duration, dt);
  const SpectralPropagator prop(hamiltonian);
  const CVector c = prop.to_eigenbasis(psi0.amplitudes());

  // stack observables as rows so one product gives every expectation
  RMatrix stacked(static_cast<Eigen::Index>(diagonals.size()), static_cast<Eigen::Index>(hamiltonian.dimension()));
  for (std::size_t k = 0; k < diagonals.size(); ++k) stacked.row(static_cast<Eigen::Index>(k)) = diagonals[k].transpose();

  std::vector<ExpectationMax> best(diagonals.size(), ExpectationMax{-std::numeric_limits<double>::infinity(), 0.0});
  for (double t : times) {
    const RVector probs = prop.at_time(c, t).cwiseAbs2();
    const RVector values = stacked * probs;
    for (std::size_t k = 0; k < best.size(); ++k) {
      const double v = values(static_cast<Eigen::Index>(k));
      if (v > best[k].max_value + kTieTolerance) best[k] = {v, t};
    }
  }
  return best;
}

}  // namespace rydberg
