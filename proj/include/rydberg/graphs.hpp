// graphs.hpp - abstract graphs, disk graphs, independent sets and disk realization.

#pragma once

#include "rydberg/physics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rydberg {

inline constexpr std::size_t kMaxEnumerationVertices = 24;

using Edge = std::pair<std::size_t, std::size_t>;  // always first < second

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::uint32_t mask) : mask_(mask) {}

  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(std::size_t v) const noexcept { return v < 32 && ((mask_ >> v) & 1u); }
  std::size_t size() const noexcept;
  // Throws ValidationError if any bit at or above n is set.
  void check_within(std::size_t n) const;
  std::vector<std::size_t> members() const;

  friend bool operator==(VertexSet a, VertexSet b) { return a.mask_ == b.mask_; }
  friend bool operator<(VertexSet a, VertexSet b) { return a.mask_ < b.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

class AbstractGraph {
 public:
  // Edges are normalized (i < j), sorted and deduplicated. Throws
  // ValidationError on self-loops or out-of-range endpoints.
  AbstractGraph(std::size_t n, std::vector<Edge> edges);

  static AbstractGraph edgeless(std::size_t n) { return AbstractGraph(n, {}); }
  static AbstractGraph path(std::size_t n);
  static AbstractGraph complete_bipartite(std::size_t left, std::size_t right);
  static AbstractGraph star(std::size_t leaves);

  std::size_t n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  std::uint32_t neighbours(std::size_t v) const { return adjacency_.at(v); }
  std::size_t max_degree() const;

  friend bool operator==(const AbstractGraph& a, const AbstractGraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> adjacency_;
};

// The graphs of the MIS study, by name: k23, g3, g4, g5, k16, plus p3.
AbstractGraph named_graph(const std::string& name);

// { (i, j) : dist(i, j) <= (r_i + r_j) / 2 }
std::vector<Edge> induced_edges(std::span<const Vec2> centers, std::span<const double> radii);

class DiskGraph {
 public:
  DiskGraph(std::vector<Vec2> centers, std::vector<double> radii);

  std::size_t size() const noexcept { return centers_.size(); }
  const std::vector<Vec2>& centers() const noexcept { return centers_; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  const AbstractGraph& graph() const noexcept { return graph_; }
  const std::vector<Edge>& edges() const noexcept { return graph_.edges(); }

  // Centers multiplied by lambda, radii unchanged.
  DiskGraph scaled(double lambda) const;

 private:
  std::vector<Vec2> centers_;
  std::vector<double> radii_;
  AbstractGraph graph_;
};

// Edge pairs present in one list but not the other.
struct EdgeDiff {
  std::vector<Edge> missing;  // in target, not induced
  std::vector<Edge> extra;    // induced, not in target
  bool empty() const noexcept { return missing.empty() && extra.empty(); }
  std::string describe() const;
};

EdgeDiff diff_edges(const std::vector<Edge>& target, const std::vector<Edge>& induced);

bool is_independent(const AbstractGraph& g, VertexSet s);

struct MisResult {
  std::size_t size;
  std::vector<VertexSet> sets;  // ascending by mask
};

MisResult mis_enumerate(const AbstractGraph& g);

struct LambdaBreaks {
  double lambda_c;
  double lambda_full;
};

LambdaBreaks lambda_breaks(const DiskGraph& dg);

struct RealizeOptions {
  std::size_t iterations = 60000;
  std::size_t restarts = 16;
  std::size_t threads = 1;
  double margin = 0.05;
};

struct RealizeResult {
  DiskGraph graph;
  bool success;
  std::size_t violations;  // pairs failing the edge or margin rule
  double cost;
};

// Simulated annealing over centers (radii from the palette). Deterministic for
// a given seed and options, independent of the thread count.
RealizeResult realize_disk(const AbstractGraph& target, std::span<const double> radius_palette, std::uint64_t seed,
                           const RealizeOptions& options = {});

// Worst relative margin over all pairs: min over edges of 1 - d/s and over
// non-edges of d/s - 1, with s = (r_i + r_j) / 2.
double realization_margin(const DiskGraph& dg, const AbstractGraph& target);

}  // namespace rydberg
