#include "rydberg/embedding.hpp"

#include "rydberg/blockade.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rydberg {

const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::GlobalDrive: return "global";
    case ProtocolKind::LocalDrive: return "local";
    case ProtocolKind::ShuffledLocalDrive: return "shuffled";
  }
  return "unknown";
}

ProtocolKind protocol_kind_from_string(const std::string& name) {
  if (name == "global") return ProtocolKind::GlobalDrive;
  if (name == "local") return ProtocolKind::LocalDrive;
  if (name == "shuffled") return ProtocolKind::ShuffledLocalDrive;
  throw ValidationError("unknown protocol '" + name + "' (expected global, local or shuffled)");
}

void EmbeddingProtocol::validate() const {
  if (!(base_omega > 0.0) || !std::isfinite(base_omega)) throw ValidationError("EmbeddingProtocol: base amplitude must be positive");
  if (kind != ProtocolKind::GlobalDrive && (!(special_omega > 0.0) || !std::isfinite(special_omega))) {
    throw ValidationError("EmbeddingProtocol: special amplitude must be positive");
  }
  if (kind == ProtocolKind::ShuffledLocalDrive && !(probability >= 0.0 && probability <= 1.0)) {
    throw ValidationError("EmbeddingProtocol: probability must lie in [0, 1]");
  }
}

std::vector<double> EmbeddingProtocol::amplitudes(std::size_t n_atoms) const {
  validate();
  std::vector<double> out(n_atoms, base_omega);
  switch (kind) {
    case ProtocolKind::GlobalDrive: break;
    case ProtocolKind::LocalDrive:
      for (std::size_t v : special_vertices) {
        if (v >= n_atoms) throw ValidationError("EmbeddingProtocol: special vertex out of range");
        out[v] = special_omega;
      }
      break;
    case ProtocolKind::ShuffledLocalDrive: {
      std::mt19937_64 rng(seed);
      for (double& w : out) {
        // one 53-bit uniform draw per atom
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < probability) w = special_omega;
      }
      break;
    }
  }
  return out;
}

RVector non_independence_diagonal(const AbstractGraph& g, std::size_t n_atoms) {
  if (g.n() != n_atoms) throw ValidationError("non_independence_projector: graph size does not match atom count");
  if (n_atoms > kMaxAtoms) throw ValidationError("non_independence_projector: too many atoms");
  const std::uint32_t dim = std::uint32_t{1} << n_atoms;
  RVector d(dim);
  for (std::uint32_t s = 0; s < dim; ++s) d(s) = is_independent(g, VertexSet(s)) ? 0.0 : 1.0;
  return d;
}

HermitianOperator non_independence_projector(const AbstractGraph& g, std::size_t n_atoms) {
  return HermitianOperator::diagonal(non_independence_diagonal(g, n_atoms));
}

namespace {

std::vector<RVector> pair_diagonals(std::size_t n) {
  const std::uint32_t dim = std::uint32_t{1} << n;
  std::vector<RVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::uint32_t mask = (1u << i) | (1u << j);
      RVector d(dim);
      for (std::uint32_t s = 0; s < dim; ++s) d(s) = (s & mask) == mask ? 1.0 : 0.0;
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace

EmbeddingReport embedding_metrics(const AtomRegister& reg, const AbstractGraph& g, double duration, double dt) {
  const std::size_t n = reg.size();
  std::vector<RVector> observables = pair_diagonals(n);
  observables.push_back(non_independence_diagonal(g, n));
  const auto maxima =
      max_diagonal_expectations(build_hamiltonian(reg), QuantumState::all_ground(n), observables, duration, dt);

  EmbeddingReport report{1.0, maxima.back().max_value, RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                         reg.omegas()};
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++k) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      report.correlation(a, b) = report.correlation(b, a) = maxima[k].max_value;
    }
  }
  return report;
}

double violation_probability(const AtomRegister& reg, const AbstractGraph& g, double duration, double dt) {
  const RVector d = non_independence_diagonal(g, reg.size());
  const auto maxima = max_diagonal_expectations(build_hamiltonian(reg), QuantumState::all_ground(reg.size()),
                                                std::span<const RVector>(&d, 1), duration, dt);
  return maxima[0].max_value;
}

RMatrix correlation_matrix(const AtomRegister& reg, double duration, double dt) {
  const std::size_t n = reg.size();
  const std::vector<RVector> observables = pair_diagonals(n);
  const auto maxima =
      max_diagonal_expectations(build_hamiltonian(reg), QuantumState::all_ground(n), observables, duration, dt);
  RMatrix c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++k) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      c(a, b) = c(b, a) = maxima[k].max_value;
    }
  }
  return c;
}

std::vector<EmbeddingReport> lambda_sweep(const DiskGraph& instance, const EmbeddingProtocol& protocol,
                                          std::span<const double> lambda_ratios, double duration, double dt,
                                          std::size_t threads, const PhysicalConstants& k) {
  for (double r : lambda_ratios) {
    if (!(r > 0.0)) throw ValidationError("lambda_sweep: ratios must be positive");
  }
  const double lambda_c = lambda_breaks(instance).lambda_c;
  const std::vector<double> omegas = protocol.amplitudes(instance.size());
  const std::vector<double> deltas(instance.size(), 0.0);
  const AtomRegister base(instance.centers(), omegas, deltas, k);
  return parallel_map(lambda_ratios.size(), threads, [&](std::size_t i) {
    EmbeddingReport r = embedding_metrics(scale_register(base, lambda_ratios[i] * lambda_c), instance.graph(), duration, dt);
    r.lambda_ratio = lambda_ratios[i];
    return r;
  });
}

DiskGraph star_instance(bool disk_radii, const PhysicalConstants& k) {
  const double rb = rb_global(std::numbers::pi, k);
  const double rb_special = rb_global(std::numbers::pi / 20.0, k);
  constexpr std::size_t ring[6] = {0, 1, 5, 2, 4, 3};
  std::vector<Vec2> centers(7);
  for (std::size_t m = 0; m < 6; ++m) {
    const double angle = std::numbers::pi / 3.0 * static_cast<double>(m);
    centers[ring[m]] = {0.9 * rb * std::cos(angle), 0.9 * rb * std::sin(angle)};
  }
  centers[6] = {0.0, 0.0};
  std::vector<double> radii(7, rb);
  if (disk_radii) {
    for (std::size_t v : {0u, 4u, 5u}) radii[v] = rb_special;
  }
  return DiskGraph(std::move(centers), std::move(radii));
}

}  // namespace rydberg
