// embedding.hpp - quench metrics for encoding a disk graph in an atom array.

#pragma once

#include "rydberg/graphs.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rydberg {

enum class ProtocolKind { GlobalDrive, LocalDrive, ShuffledLocalDrive };

const char* to_string(ProtocolKind kind);
ProtocolKind protocol_kind_from_string(const std::string& name);

struct EmbeddingProtocol {
  ProtocolKind kind = ProtocolKind::GlobalDrive;
  double base_omega = 0.0;
  double special_omega = 0.0;
  std::vector<std::size_t> special_vertices;  // LocalDrive
  double probability = 0.0;                   // ShuffledLocalDrive
  std::uint64_t seed = 0;                     // ShuffledLocalDrive

  void validate() const;
  // Per-atom amplitudes for an n-atom register. Shuffled draws are a pure
  // function of (seed, n).
  std::vector<double> amplitudes(std::size_t n_atoms) const;
};

struct EmbeddingReport {
  double lambda_ratio;
  double violation;
  RMatrix correlation;
  std::vector<double> amplitudes;
};

// Diagonal of the projector onto basis states that are not independent in g.
RVector non_independence_diagonal(const AbstractGraph& g, std::size_t n_atoms);
HermitianOperator non_independence_projector(const AbstractGraph& g, std::size_t n_atoms);

double violation_probability(const AtomRegister& reg, const AbstractGraph& g, double duration, double dt = 0.05);

// C_ij = max_t <n_i n_j>, each entry over its own argmax; C_ii = max_t <n_i>.
RMatrix correlation_matrix(const AtomRegister& reg, double duration, double dt = 0.05);

// Violation and correlations from one shared quench.
EmbeddingReport embedding_metrics(const AtomRegister& reg, const AbstractGraph& g, double duration, double dt = 0.05);

// For each ratio, scales the instance centers by ratio * lambda_c (from
// lambda_breaks) and runs the all-ground quench with protocol amplitudes.
// The target graph is the instance's own edge set.
std::vector<EmbeddingReport> lambda_sweep(const DiskGraph& instance, const EmbeddingProtocol& protocol,
                                          std::span<const double> lambda_ratios, double duration, double dt = 0.05,
                                          std::size_t threads = 1,
                                          const PhysicalConstants& k = PhysicalConstants::n70());

// Seven-atom wheel: center 6 at the origin, spokes at angle 60 m for ring slot m,
// ring order [0, 1, 5, 2, 4, 3], spoke length 0.9 rb. With disk_radii the
// vertices {0, 4, 5} carry rb_global(pi / 20), all others rb_global(pi).
DiskGraph star_instance(bool disk_radii, const PhysicalConstants& k = PhysicalConstants::n70());

}  // namespace rydberg
