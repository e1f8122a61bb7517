#include "rydberg/mis.hpp"

#include "rydberg/errors.hpp"
#include "rydberg/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

namespace rydberg {

const char* to_string(DriveMode mode) { return mode == DriveMode::Local ? "local" : "global"; }

DriveMode drive_mode_from_string(const std::string& name) {
  if (name == "local") return DriveMode::Local;
  if (name == "global") return DriveMode::Global;
  throw ValidationError("unknown drive mode '" + name + "' (expected local or global)");
}

void FinalDriveParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("FinalDriveParams: kappa must be positive");
  if (!std::isfinite(delta_f)) throw ValidationError("FinalDriveParams: delta_f must be finite");
}

std::vector<double> drive_amplitudes(const DiskGraph& dg, double kappa, DriveMode mode, const PhysicalConstants& k) {
  std::vector<double> out;
  out.reserve(dg.size());
  if (mode == DriveMode::Local) {
    for (double r : dg.radii()) out.push_back(kappa * k.c6 / std::pow(r, 6));
  } else {
    const double r_avg = std::accumulate(dg.radii().begin(), dg.radii().end(), 0.0) / static_cast<double>(dg.size());
    out.assign(dg.size(), kappa * k.c6 / std::pow(r_avg, 6));
  }
  return out;
}

HermitianOperator final_hamiltonian(const DiskGraph& dg, const FinalDriveParams& params, DriveMode mode,
                                    const PhysicalConstants& k) {
  params.validate();
  const AtomRegister reg(dg.centers(), drive_amplitudes(dg, params.kappa, mode, k),
                         std::vector<double>(dg.size(), params.delta_f), k);
  return build_hamiltonian(reg);
}

RVector GroundSpace::weights() const {
  if (basis.cols() == 0) return RVector::Zero(basis.rows());
  return basis.cwiseAbs2().rowwise().sum() / static_cast<double>(basis.cols());
}

GroundSpace ground_space(const HermitianOperator& h, double rel_tol) {
  if (!(rel_tol >= 0.0)) throw ValidationError("ground_space: rel_tol must be non-negative");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("ground_space: eigendecomposition failed");
  const RVector& e = solver.eigenvalues();
  const double range = e(e.size() - 1) - e(0);
  const double cutoff = e(0) + rel_tol * range;
  Eigen::Index count = 1;
  while (count < e.size() && e(count) <= cutoff) ++count;
  const double gap = count < e.size() ? e(count) - e(0) : 0.0;
  return {solver.eigenvectors().leftCols(count), e(0), gap};
}

namespace {

struct IndependentProfile {
  std::size_t mis_size;
  std::vector<int> size_of;  // popcount for independent masks, -1 otherwise
};

IndependentProfile profile(const AbstractGraph& g) {
  IndependentProfile p{mis_enumerate(g).size, {}};
  const std::uint32_t dim = std::uint32_t{1} << g.n();
  p.size_of.resize(dim);
  for (std::uint32_t s = 0; s < dim; ++s) p.size_of[s] = is_independent(g, VertexSet(s)) ? std::popcount(s) : -1;
  return p;
}

std::vector<double> curve_from_weights(const RVector& w, const IndependentProfile& p) {
  // weight per independent-set size, then cumulative from the top
  std::vector<double> by_size(p.mis_size + 1, 0.0);
  for (std::size_t s = 0; s < p.size_of.size(); ++s) {
    if (p.size_of[s] >= 0) by_size[static_cast<std::size_t>(p.size_of[s])] += w(static_cast<Eigen::Index>(s));
  }
  std::vector<double> curve(p.mis_size + 1, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k <= p.mis_size; ++k) {
    acc += by_size[p.mis_size - k];
    curve[k] = acc;
  }
  return curve;
}

void require_matching(const GroundSpace& ground, const AbstractGraph& g) {
  if (static_cast<std::size_t>(ground.basis.rows()) != (std::size_t{1} << g.n())) {
    throw ValidationError("ground space dimension does not match the graph");
  }
}

}  // namespace

std::vector<double> p_mis_curve(const GroundSpace& ground, const AbstractGraph& g) {
  require_matching(ground, g);
  return curve_from_weights(ground.weights(), profile(g));
}

double p_mis_k(const GroundSpace& ground, const AbstractGraph& g, std::size_t k) {
  const auto curve = p_mis_curve(ground, g);
  return curve[std::min(k, curve.size() - 1)];
}

double violation_weight(const GroundSpace& ground, const AbstractGraph& g) {
  require_matching(ground, g);
  const RVector w = ground.weights();
  double v = 0.0;
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(w.size()); ++s) {
    if (!is_independent(g, VertexSet(s))) v += w(s);
  }
  return v;
}

void OptimizeBounds::validate() const {
  const bool finite = std::isfinite(kappa_lo) && std::isfinite(kappa_hi) && std::isfinite(delta_lo) && std::isfinite(delta_hi);
  if (!finite || !(kappa_lo > 0.0) || !(kappa_hi >= kappa_lo) || !(delta_hi >= delta_lo)) {
    throw ValidationError("optimize_drive: bounds must be finite with 0 < kappa_lo <= kappa_hi and delta_lo <= delta_hi");
  }
}

namespace {

MisReport evaluate(const DiskGraph& dg, DriveMode mode, const FinalDriveParams& params,
                   const IndependentProfile& prof, const PhysicalConstants& k) {
  const GroundSpace ground = ground_space(final_hamiltonian(dg, params, mode, k));
  const RVector w = ground.weights();
  const std::vector<double> curve = curve_from_weights(w, prof);
  return {mode, params, curve[0], curve, 1.0 - curve.back(), ground.degeneracy(), ground.gap, true};
}

}  // namespace

MisReport evaluate_drive(const DiskGraph& dg, const AbstractGraph& g, DriveMode mode, const FinalDriveParams& params,
                         const PhysicalConstants& k) {
  if (g.n() != dg.size()) throw ValidationError("evaluate_drive: graph and instance sizes differ");
  return evaluate(dg, mode, params, profile(g), k);
}

MisReport optimize_drive(const DiskGraph& dg, const AbstractGraph& g, DriveMode mode, const OptimizeBounds& bounds,
                         const OptimizeBudget& budget, const PhysicalConstants& k) {
  bounds.validate();
  if (g.n() != dg.size()) throw ValidationError("optimize_drive: graph and instance sizes differ");
  if (budget.grid < 2) throw ValidationError("optimize_drive: grid needs at least 2 points per axis");
  const IndependentProfile prof = profile(g);

  auto clamp = [&](std::array<double, 2> x) {
    return std::array<double, 2>{std::clamp(x[0], bounds.kappa_lo, bounds.kappa_hi),
                                 std::clamp(x[1], bounds.delta_lo, bounds.delta_hi)};
  };
  auto objective = [&](const std::array<double, 2>& x) {
    return -evaluate(dg, mode, {x[0], x[1]}, prof, k).p_mis;
  };

  const std::size_t m = budget.grid;
  const double dk = (bounds.kappa_hi - bounds.kappa_lo) / static_cast<double>(m - 1);
  const double dd = (bounds.delta_hi - bounds.delta_lo) / static_cast<double>(m - 1);
  auto grid_point = [&](std::size_t idx) {
    return std::array<double, 2>{bounds.kappa_lo + static_cast<double>(idx / m) * dk,
                                 bounds.delta_lo + static_cast<double>(idx % m) * dd};
  };
  const std::vector<double> values = parallel_map(m * m, budget.threads, [&](std::size_t idx) { return objective(grid_point(idx)); });
  const std::size_t best_idx = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

  if (-values[best_idx] <= 1e-12) {
    MisReport flagged = evaluate(dg, mode, {grid_point(best_idx)[0], grid_point(best_idx)[1]}, prof, k);
    flagged.informative = false;
    return flagged;
  }

  // Nelder-Mead with every trial point clamped into the box
  std::array<std::array<double, 2>, 3> simplex;
  std::array<double, 3> f;
  simplex[0] = grid_point(best_idx);
  const std::array<double, 2> steps{std::max(dk, 1e-3), std::max(dd, 1e-3)};
  for (int d = 0; d < 2; ++d) {
    auto p = simplex[0];
    p[d] += steps[d];
    p = clamp(p);
    if (p == simplex[0]) {
      p[d] -= steps[d];
      p = clamp(p);
    }
    simplex[d + 1] = p;
  }
  f[0] = values[best_idx];
  f[1] = objective(simplex[1]);
  f[2] = objective(simplex[2]);

  for (std::size_t it = 0; it < budget.simplex_iterations; ++it) {
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    const auto best = simplex[order[0]], mid = simplex[order[1]], worst = simplex[order[2]];
    const double fb = f[order[0]], fm = f[order[1]], fw = f[order[2]];
    const double size = std::max({std::abs(worst[0] - best[0]) / steps[0], std::abs(worst[1] - best[1]) / steps[1],
                                  std::abs(mid[0] - best[0]) / steps[0], std::abs(mid[1] - best[1]) / steps[1]});
    if (fw - fb <= budget.simplex_tolerance && size < 1e-6) break;

    const std::array<double, 2> centroid{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    auto along = [&](double t) {
      return clamp({centroid[0] + t * (worst[0] - centroid[0]), centroid[1] + t * (worst[1] - centroid[1])});
    };
    const auto xr = along(-1.0);
    const double fr = objective(xr);
    auto replace_worst = [&](const std::array<double, 2>& x, double fx) {
      simplex[order[2]] = x;
      f[order[2]] = fx;
    };
    if (fr < fb) {
      const auto xe = along(-2.0);
      const double fe = objective(xe);
      if (fe < fr) {
        replace_worst(xe, fe);
      } else {
        replace_worst(xr, fr);
      }
    } else if (fr < fm) {
      replace_worst(xr, fr);
    } else {
      const auto xc = fr < fw ? along(-0.5) : along(0.5);
      const double fc = objective(xc);
      if (fc < std::min(fr, fw)) {
        replace_worst(xc, fc);
      } else {
        for (int v : {order[1], order[2]}) {
          simplex[v] = clamp({best[0] + 0.5 * (simplex[v][0] - best[0]), best[1] + 0.5 * (simplex[v][1] - best[1])});
          f[v] = objective(simplex[v]);
        }
      }
    }
  }
  const int winner = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
  return evaluate(dg, mode, {simplex[winner][0], simplex[winner][1]}, prof, k);
}

std::optional<double> delta_k(double p_local, double p_global) {
  if (!(p_local >= 0.0) || !(p_global >= 0.0)) throw ValidationError("delta_k: probabilities must be non-negative");
  const double sum = p_local + p_global;
  if (sum == 0.0) return std::nullopt;
  return 2.0 * (p_local - p_global) / sum;
}

}  // namespace rydberg
