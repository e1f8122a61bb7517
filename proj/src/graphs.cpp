#include "rydberg/graphs.hpp"

#include "rydberg/errors.hpp"
#include "rydberg/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace rydberg {

std::size_t VertexSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

void VertexSet::check_within(std::size_t n) const {
  if (n < 32 && (mask_ >> n) != 0) throw ValidationError("VertexSet: bits set beyond vertex count");
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < 32; ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

AbstractGraph::AbstractGraph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n, 0u) {
  if (n > 32) throw ValidationError("AbstractGraph: at most 32 vertices");
  for (Edge& e : edges) {
    if (e.first == e.second) throw ValidationError("AbstractGraph: self-loop at vertex " + std::to_string(e.first));
    if (e.first >= n || e.second >= n) throw ValidationError("AbstractGraph: edge endpoint out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    adjacency_[i] |= 1u << j;
    adjacency_[j] |= 1u << i;
  }
}

AbstractGraph AbstractGraph::path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return AbstractGraph(n, std::move(e));
}

AbstractGraph AbstractGraph::complete_bipartite(std::size_t left, std::size_t right) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) e.emplace_back(i, left + j);
  }
  return AbstractGraph(left + right, std::move(e));
}

AbstractGraph AbstractGraph::star(std::size_t leaves) { return complete_bipartite(1, leaves); }

bool AbstractGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  return (adjacency_[i] >> j) & 1u;
}

std::size_t AbstractGraph::max_degree() const {
  std::size_t best = 0;
  for (std::uint32_t a : adjacency_) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(a)));
  return best;
}

AbstractGraph named_graph(const std::string& name) {
  // hubs 0, 1 and leaves 2, 3, 4 in every K23-based graph
  if (name == "k23") return AbstractGraph::complete_bipartite(2, 3);
  if (name == "g4") return AbstractGraph::complete_bipartite(2, 4);
  if (name == "g3") {
    auto e = AbstractGraph::complete_bipartite(2, 3).edges();
    e.emplace_back(4, 5);
    return AbstractGraph(6, std::move(e));
  }
  if (name == "g5") {
    auto e = AbstractGraph::complete_bipartite(2, 3).edges();
    e.emplace_back(0, 5);
    return AbstractGraph(6, std::move(e));
  }
  if (name == "k16") return AbstractGraph::star(6);
  if (name == "p3") return AbstractGraph::path(3);
  throw ValidationError("unknown graph '" + name + "' (expected k23, g3, g4, g5, k16 or p3)");
}

std::vector<Edge> induced_edges(std::span<const Vec2> centers, std::span<const double> radii) {
  if (centers.size() != radii.size()) throw ValidationError("induced_edges: centers and radii differ in length");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double d = distance(centers[i], centers[j]);
      if (!(d > 0.0)) {
        throw ValidationError("induced_edges: centers " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
      if (d <= 0.5 * (radii[i] + radii[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

std::vector<double> checked_radii(std::vector<double> radii, std::size_t n) {
  if (radii.size() != n) throw ValidationError("DiskGraph: centers and radii differ in length");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("DiskGraph: radii must be positive and finite");
  }
  return radii;
}

}  // namespace

DiskGraph::DiskGraph(std::vector<Vec2> centers, std::vector<double> radii)
    : centers_(std::move(centers)),
      radii_(checked_radii(std::move(radii), centers_.size())),
      graph_(centers_.size(), induced_edges(centers_, radii_)) {}

DiskGraph DiskGraph::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw ValidationError("DiskGraph::scaled: lambda must be positive");
  std::vector<Vec2> c = centers_;
  for (Vec2& p : c) {
    p.x *= lambda;
    p.y *= lambda;
  }
  return DiskGraph(std::move(c), radii_);
}

std::string EdgeDiff::describe() const {
  std::ostringstream os;
  auto list = [&os](const std::vector<Edge>& edges) {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      os << (k ? ", " : "") << "(" << edges[k].first << "," << edges[k].second << ")";
    }
  };
  os << "missing [";
  list(missing);
  os << "] extra [";
  list(extra);
  os << "]";
  return os.str();
}

EdgeDiff diff_edges(const std::vector<Edge>& target, const std::vector<Edge>& induced) {
  auto normalize = [](std::vector<Edge> e) {
    for (Edge& p : e) {
      if (p.first > p.second) std::swap(p.first, p.second);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
  };
  const auto t = normalize(target);
  const auto g = normalize(induced);
  EdgeDiff d;
  std::set_difference(t.begin(), t.end(), g.begin(), g.end(), std::back_inserter(d.missing));
  std::set_difference(g.begin(), g.end(), t.begin(), t.end(), std::back_inserter(d.extra));
  return d;
}

bool is_independent(const AbstractGraph& g, VertexSet s) {
  s.check_within(g.n());
  std::uint32_t rest = s.mask();
  while (rest) {
    const int v = std::countr_zero(rest);
    rest &= rest - 1;
    if (g.neighbours(static_cast<std::size_t>(v)) & s.mask()) return false;
  }
  return true;
}

MisResult mis_enumerate(const AbstractGraph& g) {
  if (g.n() > kMaxEnumerationVertices) {
    throw ValidationError("mis_enumerate: " + std::to_string(g.n()) + " vertices exceeds the exhaustive limit of " +
                          std::to_string(kMaxEnumerationVertices));
  }
  MisResult result{0, {}};
  const std::uint32_t limit = std::uint32_t{1} << g.n();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size < result.size) continue;
    if (!is_independent(g, VertexSet(mask))) continue;
    if (size > result.size) {
      result.size = size;
      result.sets.clear();
    }
    result.sets.emplace_back(mask);
  }
  return result;
}

LambdaBreaks lambda_breaks(const DiskGraph& dg) {
  if (dg.edges().empty()) throw ValidationError("lambda_breaks: disk graph has no edges");
  LambdaBreaks out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& [i, j] : dg.edges()) {
    const double lam = 0.5 * (dg.radii()[i] + dg.radii()[j]) / distance(dg.centers()[i], dg.centers()[j]);
    out.lambda_c = std::min(out.lambda_c, lam);
    out.lambda_full = std::max(out.lambda_full, lam);
  }
  return out;
}

double realization_margin(const DiskGraph& dg, const AbstractGraph& target) {
  if (target.n() != dg.size()) throw ValidationError("realization_margin: vertex counts differ");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dg.size(); ++i) {
    for (std::size_t j = i + 1; j < dg.size(); ++j) {
      const double s = 0.5 * (dg.radii()[i] + dg.radii()[j]);
      const double ratio = distance(dg.centers()[i], dg.centers()[j]) / s;
      worst = std::min(worst, target.has_edge(i, j) ? 1.0 - ratio : ratio - 1.0);
    }
  }
  return worst;
}

namespace {

struct Layout {
  std::vector<Vec2> centers;
  std::vector<std::size_t> radius_index;
};

class AnnealingProblem {
 public:
  static constexpr double kSpreadWeight = 0.01;
  static constexpr double kRadiusWeight = 0.05;

  AnnealingProblem(const AbstractGraph& target, std::span<const double> palette, double margin)
      : target_(target), palette_(palette.begin(), palette.end()), margin_(margin) {}

  // Hinge penalty in units of the pair threshold, plus a soft floor keeping
  // atoms at least a quarter of the smaller radius apart.
  double pair_violation(const Layout& l, std::size_t i, std::size_t j) const {
    const double ri = palette_[l.radius_index[i]], rj = palette_[l.radius_index[j]];
    const double s = 0.5 * (ri + rj);
    const double d = distance(l.centers[i], l.centers[j]);
    double cost = 0.0;
    if (target_.has_edge(i, j)) {
      cost += std::max(0.0, d - (1.0 - margin_) * s) / s;
    } else {
      cost += std::max(0.0, (1.0 + margin_) * s - d) / s;
    }
    const double floor = 0.25 * std::min(ri, rj);
    cost += std::max(0.0, floor - d) / floor;
    return cost;
  }

  // Slack of a non-edge beyond its required margin.
  double pair_spread(const Layout& l, std::size_t i, std::size_t j) const {
    if (target_.has_edge(i, j)) return 0.0;
    const double s = 0.5 * (palette_[l.radius_index[i]] + palette_[l.radius_index[j]]);
    return std::max(0.0, distance(l.centers[i], l.centers[j]) / s - (1.0 + margin_));
  }

  double pair_cost(const Layout& l, std::size_t i, std::size_t j) const {
    return pair_violation(l, i, j) + kSpreadWeight * pair_spread(l, i, j);
  }

  bool pair_violated(const Layout& l, std::size_t i, std::size_t j) const { return pair_violation(l, i, j) > 0.0; }

  // Normalized radius, lowest for the smallest palette entry.
  double radius_cost(const Layout& l, std::size_t v) const {
    const auto [lo, hi] = std::minmax_element(palette_.begin(), palette_.end());
    if (*hi == *lo) return 0.0;
    return kRadiusWeight * (palette_[l.radius_index[v]] - *lo) / (*hi - *lo);
  }

  double vertex_cost(const Layout& l, std::size_t v) const {
    double c = radius_cost(l, v);
    for (std::size_t u = 0; u < target_.n(); ++u) {
      if (u != v) c += pair_cost(l, v, u);
    }
    return c;
  }

  double total_cost(const Layout& l) const {
    double c = 0.0;
    for (std::size_t i = 0; i < target_.n(); ++i) {
      c += radius_cost(l, i);
      for (std::size_t j = i + 1; j < target_.n(); ++j) c += pair_cost(l, i, j);
    }
    return c;
  }

  std::size_t violations(const Layout& l) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < target_.n(); ++i) {
      for (std::size_t j = i + 1; j < target_.n(); ++j) count += pair_violated(l, i, j) ? 1 : 0;
    }
    return count;
  }

  double max_radius() const { return *std::max_element(palette_.begin(), palette_.end()); }
  std::size_t palette_size() const { return palette_.size(); }
  const std::vector<double>& palette() const { return palette_; }

 private:
  const AbstractGraph& target_;
  std::vector<double> palette_;
  double margin_;
};

struct AnnealOutcome {
  Layout layout;
  double cost;
  std::size_t violations;
};

AnnealOutcome anneal_once(const AnnealingProblem& problem, std::size_t n, std::uint64_t seed, std::size_t iterations) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_vertex(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_radius(0, problem.palette_size() - 1);

  const double box = problem.max_radius() * std::sqrt(static_cast<double>(n));
  Layout cur;
  for (std::size_t v = 0; v < n; ++v) {
    cur.centers.push_back({box * unit(rng), box * unit(rng)});
    cur.radius_index.push_back(pick_radius(rng));
  }
  double cur_cost = problem.total_cost(cur);
  Layout best = cur;
  double best_cost = cur_cost;
  std::optional<Layout> feasible;
  double feasible_cost = std::numeric_limits<double>::infinity();

  const double t0 = 1.0, t1 = 1e-4;
  const double step0 = 0.5 * problem.max_radius(), step1 = 0.005 * problem.max_radius();
  for (std::size_t it = 0; it < iterations; ++it) {
    const double frac = static_cast<double>(it) / static_cast<double>(iterations);
    const double temp = t0 * std::pow(t1 / t0, frac);
    const double step = step0 * std::pow(step1 / step0, frac);

    const std::size_t v = pick_vertex(rng);
    const double before = problem.vertex_cost(cur, v);
    const Vec2 old_center = cur.centers[v];
    const std::size_t old_radius = cur.radius_index[v];
    if (problem.palette_size() > 1 && unit(rng) < 0.1) {
      cur.radius_index[v] = pick_radius(rng);
    } else {
      cur.centers[v].x += step * gauss(rng);
      cur.centers[v].y += step * gauss(rng);
    }
    const double after = problem.vertex_cost(cur, v);
    const double change = after - before;
    if (change <= 0.0 || unit(rng) < std::exp(-change / temp)) {
      cur_cost += change;
      if (cur_cost < best_cost) {
        best = cur;
        best_cost = cur_cost;
      }
      if (cur_cost < feasible_cost && problem.violations(cur) == 0) {
        feasible = cur;
        feasible_cost = problem.total_cost(cur);
        cur_cost = feasible_cost;
      }
    } else {
      cur.centers[v] = old_center;
      cur.radius_index[v] = old_radius;
    }
  }
  const Layout& chosen = feasible ? *feasible : best;
  return {chosen, problem.total_cost(chosen), problem.violations(chosen)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RealizeResult realize_disk(const AbstractGraph& target, std::span<const double> radius_palette, std::uint64_t seed,
                           const RealizeOptions& options) {
  const std::size_t n = target.n();
  if (n == 0 || n > kMaxAtoms) throw ValidationError("realize_disk: vertex count must be in [1, 12]");
  if (radius_palette.empty()) throw ValidationError("realize_disk: radius palette is empty");
  for (double r : radius_palette) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("realize_disk: palette radii must be positive");
  }
  if (!(options.margin >= 0.0 && options.margin < 0.5)) throw ValidationError("realize_disk: margin must be in [0, 0.5)");
  if (options.iterations == 0 || options.restarts == 0) throw ValidationError("realize_disk: empty iteration budget");

  const AnnealingProblem problem(target, radius_palette, options.margin);
  const auto outcomes = parallel_map(options.restarts, options.threads, [&](std::size_t r) {
    return anneal_once(problem, n, splitmix64(seed + splitmix64(r)), options.iterations);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    const auto& a = outcomes[r];
    const auto& b = outcomes[best];
    if (a.violations < b.violations || (a.violations == b.violations && a.cost < b.cost)) best = r;
  }
  const AnnealOutcome& o = outcomes[best];

  // shift so the layout's bounding box starts at the origin
  std::vector<Vec2> centers = o.layout.centers;
  double min_x = centers[0].x, min_y = centers[0].y;
  for (const Vec2& p : centers) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }
  for (Vec2& p : centers) {
    p.x -= min_x;
    p.y -= min_y;
  }
  std::vector<double> radii;
  for (std::size_t idx : o.layout.radius_index) radii.push_back(problem.palette()[idx]);

  DiskGraph dg(std::move(centers), std::move(radii));
  const bool success = o.violations == 0 && diff_edges(target.edges(), dg.edges()).empty();
  return {std::move(dg), success, o.violations, o.cost};
}

}  // namespace rydberg
