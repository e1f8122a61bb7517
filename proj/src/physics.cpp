#include "rydberg/physics.hpp"

#include "rydberg/errors.hpp"

#include <cmath>
#include <string>

namespace rydberg {

PhysicalConstants::PhysicalConstants(double c6_value) : c6(c6_value) {
  if (!(c6 > 0.0) || !std::isfinite(c6)) throw ValidationError("PhysicalConstants: c6 must be positive and finite");
}

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

AtomRegister::AtomRegister(std::vector<Vec2> positions, std::vector<double> omegas, std::vector<double> deltas,
                           PhysicalConstants constants)
    : positions_(std::move(positions)), omegas_(std::move(omegas)), deltas_(std::move(deltas)), constants_(constants) {
  const std::size_t n = positions_.size();
  if (n == 0) throw ValidationError("AtomRegister: register is empty");
  if (omegas_.size() != n || deltas_.size() != n) {
    throw ValidationError("AtomRegister: positions, omegas and deltas must have the same length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(positions_[i].x) || !std::isfinite(positions_[i].y)) {
      throw ValidationError("AtomRegister: non-finite position for atom " + std::to_string(i));
    }
    if (!(omegas_[i] >= 0.0) || !std::isfinite(omegas_[i])) {
      throw ValidationError("AtomRegister: amplitude of atom " + std::to_string(i) + " must be finite and >= 0");
    }
    if (!std::isfinite(deltas_[i])) throw ValidationError("AtomRegister: non-finite detuning for atom " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(distance(positions_[i], positions_[j]) > 0.0)) {
        throw ValidationError("AtomRegister: atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

double AtomRegister::interaction(std::size_t i, std::size_t j) const {
  const double r = distance(positions_.at(i), positions_.at(j));
  return constants_.c6 / std::pow(r, 6);
}

RVector interaction_diagonal(const AtomRegister& reg) {
  const std::size_t n = reg.size();
  if (n > kMaxAtoms) throw ValidationError("build_hamiltonian: at most " + std::to_string(kMaxAtoms) + " atoms");
  const std::uint64_t dim = std::uint64_t{1} << n;
  RVector diag = RVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bi = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < dim; ++s) {
      if (s & bi) diag(static_cast<Eigen::Index>(s)) -= reg.deltas()[i];
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = reg.interaction(i, j);
      const std::uint64_t mask = bi | (std::uint64_t{1} << j);
      for (std::uint64_t s = 0; s < dim; ++s) {
        if ((s & mask) == mask) diag(static_cast<Eigen::Index>(s)) += v;
      }
    }
  }
  return diag;
}

HermitianOperator build_hamiltonian(const AtomRegister& reg) {
  const RVector diag = interaction_diagonal(reg);
  const Eigen::Index dim = diag.size();
  CMatrix h = CMatrix::Zero(dim, dim);
  h.diagonal() = diag.cast<cplx>();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const double half = 0.5 * reg.omegas()[i];
    if (half == 0.0) continue;
    const Eigen::Index bi = Eigen::Index{1} << i;
    for (Eigen::Index s = 0; s < dim; ++s) h(s ^ bi, s) += half;
  }
  return HermitianOperator(std::move(h));
}

AtomRegister scale_register(const AtomRegister& reg, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("scale_register: lambda must be positive");
  std::vector<Vec2> scaled = reg.positions();
  for (Vec2& p : scaled) {
    p.x *= lambda;
    p.y *= lambda;
  }
  return AtomRegister(std::move(scaled), reg.omegas(), reg.deltas(), reg.constants());
}

}  // namespace rydberg
