#include "rydberg/blockade.hpp"

#include "rydberg/errors.hpp"
#include "rydberg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rydberg {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive and finite");
}

// Response of a sequentially driven pair with the bracket written in terms of
// an effective interaction x^-6.
double lorentzian(double interaction, double omega) {
  const double ratio = interaction / omega;
  return 1.0 / (1.0 + ratio * ratio);
}

}  // namespace

double rb_sequential(double omega, double delta, const PhysicalConstants& k) {
  const double denom = omega + delta;
  if (!(denom > 0.0)) throw ValidationError("rb_sequential: omega + delta must be positive");
  return std::pow(k.c6 / denom, 1.0 / 6.0);
}

double prr_sequential(double r, double omega, double delta, const PhysicalConstants& k) {
  require_positive(r, "prr_sequential: r");
  require_positive(omega, "prr_sequential: omega");
  return lorentzian(k.c6 / std::pow(r, 6) - delta, omega);
}

double rb_pi(double omega, const PhysicalConstants& k) {
  require_positive(omega, "rb_pi: omega");
  return std::pow(k.c6 / omega, 1.0 / 6.0);
}

double rb_global(double omega, const PhysicalConstants& k) { return 0.98 * rb_pi(omega, k); }

double omega_eff(double omega0, double omega1) {
  require_positive(omega0, "omega_eff: omega0");
  require_positive(omega1, "omega_eff: omega1");
  if (omega0 == omega1) return omega0;
  const double mean = 0.5 * (std::pow(omega0, -1.0 / 6.0) + std::pow(omega1, -1.0 / 6.0));
  return std::pow(mean, -6.0);
}

double rb_local(double omega0, double omega1, const PhysicalConstants& k) {
  return 0.5 * (rb_global(omega0, k) + rb_global(omega1, k));
}

double prr_global_simplified(double r, double omega, const PhysicalConstants& k) {
  require_positive(r, "prr_global_simplified: r");
  const double rb = rb_pi(omega, k);
  const double x = 1.29 * r - 0.26 * rb;
  if (!(x > 0.0)) throw ValidationError("prr_global_simplified: 1.29 r - 0.26 r_B must be positive");
  return lorentzian(k.c6 / std::pow(x, 6), omega);
}

double prr_local(double r, double omega0, double omega1, const PhysicalConstants& k) {
  require_positive(r, "prr_local: r");
  const double oe = omega_eff(omega0, omega1);
  const double rb = rb_pi(oe, k);
  const double x = 1.18 * r - 0.16 * rb;
  if (!(x > 0.0)) throw ValidationError("prr_local: 1.18 r - 0.16 r_B must be positive");
  return lorentzian(k.c6 / std::pow(x, 6), oe);
}

FourLevelParams FourLevelParams::from_pair(double r, double omega, double delta, const PhysicalConstants& k) {
  require_positive(r, "FourLevelParams: r");
  return {-delta, 0.5 * omega, k.c6 / std::pow(r, 6) - 2.0 * delta};
}

RMatrix four_level_matrix(const FourLevelParams& p) {
  RMatrix h(4, 4);
  h << 0.0, p.b, p.b, 0.0,  //
      p.b, p.a, 0.0, p.b,   //
      p.b, 0.0, p.a, p.b,   //
      0.0, p.b, p.b, p.c;
  return h;
}

CubicInvariants cubic_invariants(const FourLevelParams& p) {
  const double a = p.a, b2 = p.b * p.b, c = p.c;
  const double s = a + c;
  CubicInvariants inv{};
  inv.p = -3.0 * a * c + 12.0 * b2 + s * s;
  inv.m = 27.0 * b2 * c + 4.5 * s * (a * c - 4.0 * b2) - s * s * s;
  const double disc = inv.p * inv.p * inv.p - inv.m * inv.m;
  const double scale = std::max(std::abs(inv.p * inv.p * inv.p), inv.m * inv.m);
  if (inv.p < 0.0 || disc < -1e-12 * scale) {
    throw NumericalError("symmetric_block_eigenvalues: P^3 < M^2, outside the trigonometric regime");
  }
  inv.q = std::sqrt(std::max(disc, 0.0));
  // angle in [0, pi] for either sign of M
  inv.theta = std::atan2(inv.q, inv.m);
  return inv;
}

std::array<double, 3> symmetric_block_eigenvalues(const FourLevelParams& p) {
  const CubicInvariants inv = cubic_invariants(p);
  const double s = p.a + p.c;
  const double sp = std::sqrt(inv.p);
  const double c3 = std::cos(inv.theta / 3.0);
  const double s3 = std::sin(inv.theta / 3.0);
  return {(s - 2.0 * sp * c3) / 3.0, (s + sp * c3 - std::sqrt(3.0) * sp * s3) / 3.0,
          (s + sp * c3 + std::sqrt(3.0) * sp * s3) / 3.0};
}

double prr_global_exact(double r, double omega, double delta, const PhysicalConstants& k) {
  require_positive(omega, "prr_global_exact: omega");
  const FourLevelParams p = FourLevelParams::from_pair(r, omega, delta, k);
  const auto energies = symmetric_block_eigenvalues(p);
  double sum = 0.0;
  for (double e : energies) {
    if (std::abs(e) < 1e-12) throw NumericalError("prr_global_exact: eigenvalue at the pole E = 0");
    const double x0 = (e - p.c) / e;
    const double x1 = (e - p.c) / (2.0 * p.b);
    const double norm2 = x0 * x0 + 2.0 * x1 * x1 + 1.0;
    // <RR|v> <v|gg> / |v|^2
    sum += std::abs(x0 / norm2);
  }
  return sum * sum;
}

const char* to_string(DriveKind kind) {
  switch (kind) {
    case DriveKind::Sequential: return "sequential";
    case DriveKind::Global: return "global";
    case DriveKind::Local: return "local";
  }
  return "unknown";
}

DriveKind drive_kind_from_string(const std::string& name) {
  if (name == "sequential") return DriveKind::Sequential;
  if (name == "global") return DriveKind::Global;
  if (name == "local") return DriveKind::Local;
  throw ValidationError("unknown scenario '" + name + "' (expected sequential, global or local)");
}

DriveScenario DriveScenario::sequential(double omega, double delta) { return {DriveKind::Sequential, 0.0, omega, delta}; }
DriveScenario DriveScenario::global(double omega, double delta) { return {DriveKind::Global, omega, omega, delta}; }
DriveScenario DriveScenario::local(double omega0, double omega1, double delta) {
  return {DriveKind::Local, omega0, omega1, delta};
}

void DriveScenario::validate() const {
  if (!std::isfinite(delta)) throw ValidationError("DriveScenario: detuning must be finite");
  switch (kind) {
    case DriveKind::Sequential:
      if (omega0 != 0.0) throw ValidationError("DriveScenario: sequential drive keeps atom 0 undriven");
      require_positive(omega1, "DriveScenario: omega1");
      break;
    case DriveKind::Global:
      require_positive(omega0, "DriveScenario: omega");
      if (omega0 != omega1) throw ValidationError("DriveScenario: global drive needs omega0 == omega1");
      break;
    case DriveKind::Local:
      require_positive(omega0, "DriveScenario: omega0");
      require_positive(omega1, "DriveScenario: omega1");
      break;
  }
}

double simulate_prr(const DriveScenario& s, double r, double duration, double dt, const PhysicalConstants& k) {
  s.validate();
  require_positive(r, "simulate_prr: r");
  const AtomRegister reg({{0.0, 0.0}, {r, 0.0}}, {s.omega0, s.omega1}, {s.delta, s.delta}, k);
  const HermitianOperator h = build_hamiltonian(reg);
  const auto psi0 = QuantumState::basis(2, s.kind == DriveKind::Sequential ? 0b01 : 0b00);
  const RVector rr = (RVector(4) << 0.0, 0.0, 0.0, 1.0).finished();
  return max_diagonal_expectations(h, psi0, std::span<const RVector>(&rr, 1), duration, dt)[0].max_value;
}

double prr_model(const DriveScenario& s, double r, const PhysicalConstants& k) {
  s.validate();
  switch (s.kind) {
    case DriveKind::Sequential: return prr_sequential(r, s.omega1, s.delta, k);
    case DriveKind::Global: return prr_global_simplified(r, s.omega0, k);
    case DriveKind::Local: return prr_local(r, s.omega0, s.omega1, k);
  }
  return 0.0;
}

double rb_model(const DriveScenario& s, const PhysicalConstants& k) {
  s.validate();
  switch (s.kind) {
    case DriveKind::Sequential: return rb_sequential(s.omega1, s.delta, k);
    case DriveKind::Global: return rb_global(s.omega0, k);
    case DriveKind::Local: return rb_local(s.omega0, s.omega1, k);
  }
  return 0.0;
}

double rb_from_simulation(const DriveScenario& s, double duration, double tol_r, const RadiusSearch& search,
                          const PhysicalConstants& k) {
  s.validate();
  require_positive(tol_r, "rb_from_simulation: tol_r");
  double lo = search.r_lo;
  double hi = search.r_hi;
  if (lo <= 0.0 || hi <= 0.0) {
    const double strongest = s.kind == DriveKind::Sequential ? s.omega1 : std::max(s.omega0, s.omega1);
    const double weakest = s.kind == DriveKind::Sequential ? s.omega1 : std::min(s.omega0, s.omega1);
    lo = 0.5 * rb_pi(strongest, k);
    hi = 2.5 * rb_pi(weakest, k);
  }
  if (!(hi > lo)) throw ValidationError("rb_from_simulation: search interval is empty");
  auto f = [&](double r) { return simulate_prr(s, r, duration, search.dt, k) - 0.5; };
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw NumericalError("rb_from_simulation: P_RR does not cross 0.5 on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] um (P_RR - 0.5 = " + std::to_string(f_lo) + ", " +
                         std::to_string(f_hi) + ")");
  }
  while (hi - lo > tol_r) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> fluctuability(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 3) throw ValidationError("fluctuability: series needs at least 3 points");
  std::vector<double> f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(n - 1, i + 2);
    double decrease = 0.0, variation = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const double d = series[j + 1] - series[j];
      variation += std::abs(d);
      if (d < 0.0) decrease -= d;
    }
    f[i] = variation == 0.0 ? 0.0 : std::clamp(decrease / variation, 0.0, 0.99);
  }
  return f;
}

void FitSample::validate() const {
  require_positive(omega0, "FitSample: omega0");
  require_positive(omega1, "FitSample: omega1");
  const std::size_t n = r_values.size();
  if (n < 3 || prr_values.size() != n || fluctuability.size() != n) {
    throw ValidationError("FitSample: r, P_RR and fluctuability must have equal length >= 3");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(r_values[i] > r_values[i - 1])) throw ValidationError("FitSample: r values must increase strictly");
    if (!(prr_values[i] >= 0.0 && prr_values[i] <= 1.0)) throw ValidationError("FitSample: P_RR outside [0, 1]");
    if (!(fluctuability[i] >= 0.0 && fluctuability[i] < 1.0)) throw ValidationError("FitSample: weight outside [0, 1)");
  }
}

double FitSample::mean_fluctuability() const {
  if (fluctuability.empty()) return 0.0;
  return std::accumulate(fluctuability.begin(), fluctuability.end(), 0.0) / static_cast<double>(fluctuability.size());
}

FitSample simulate_fit_sample(double omega0, double omega1, std::vector<double> r_values, double duration, double dt,
                              const PhysicalConstants& k) {
  const DriveScenario s = DriveScenario::local(omega0, omega1);
  FitSample sample{omega0, omega1, std::move(r_values), {}, {}};
  sample.prr_values.reserve(sample.r_values.size());
  for (double r : sample.r_values) {
    // the grid maximum can exceed 1 by round-off
    sample.prr_values.push_back(std::min(1.0, simulate_prr(s, r, duration, dt, k)));
  }
  sample.fluctuability = fluctuability(sample.prr_values);
  sample.validate();
  return sample;
}

double gradient_objective(const FitSample& sample, double slope, const PhysicalConstants& k) {
  const double oe = omega_eff(sample.omega0, sample.omega1);
  const double rbp = rb_pi(oe, k);
  const double rbl = rb_local(sample.omega0, sample.omega1, k);
  const double d_pi = 3.0 / rbp;
  double total = 0.0;
  for (std::size_t i = 0; i < sample.r_values.size(); ++i) {
    const double mapped = (slope / d_pi) * (sample.r_values[i] - rbl) + rbp;
    // left of the origin the rescaled curve is fully blockaded
    const double model = mapped > 0.0 ? prr_sequential(mapped, oe, 0.0, k) : 0.0;
    total += std::abs(model - sample.prr_values[i]) * (1.0 - sample.fluctuability[i]);
  }
  return total;
}

GradientFit fit_local_gradient(const FitSample& sample, const PhysicalConstants& k) {
  sample.validate();
  const double rbp = rb_pi(omega_eff(sample.omega0, sample.omega1), k);
  const double lo = 1.0 / rbp;
  const double hi = 10.0 / rbp;
  auto objective = [&](double s) { return gradient_objective(sample, s, k); };

  auto golden = [&](double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-9 * hi) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = objective(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = objective(x2);
      }
    }
    const double x = 0.5 * (a + b);
    return std::pair{x, objective(x)};
  };

  const auto [s_full, f_full] = golden(lo, hi);

  // grid scan guards against a multimodal objective
  constexpr int kGrid = 400;
  const double step = (hi - lo) / (kGrid - 1);
  int best = 0;
  double f_best = objective(lo);
  for (int g = 1; g < kGrid; ++g) {
    const double v = objective(lo + g * step);
    if (v < f_best) {
      f_best = v;
      best = g;
    }
  }
  const double tol = 1e-6 * std::max(1.0, f_best);
  if (f_full <= f_best + tol) return {s_full, f_full, true, rbp};

  const double centre = lo + best * step;
  const auto [s_local, f_local] = golden(std::max(lo, centre - step), std::min(hi, centre + step));
  if (f_local <= f_best) return {s_local, f_local, false, rbp};
  return {centre, f_best, false, rbp};
}

double weighted_l1_slope(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n || w.size() != n) throw ValidationError("weighted_l1_slope: inputs must be equal-length, non-empty");
  std::vector<std::pair<double, double>> ratios;  // (y/x, w x)
  ratios.reserve(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw ValidationError("weighted_l1_slope: x must be positive");
    if (!(w[i] >= 0.0)) throw ValidationError("weighted_l1_slope: weights must be non-negative");
    ratios.emplace_back(y[i] / x[i], w[i] * x[i]);
    total += w[i] * x[i];
  }
  if (!(total > 0.0)) throw ValidationError("weighted_l1_slope: total weight is zero");
  std::sort(ratios.begin(), ratios.end());
  double cumulative = 0.0;
  for (const auto& [ratio, weight] : ratios) {
    cumulative += weight;
    if (cumulative >= 0.5 * total) return ratio;
  }
  return ratios.back().first;
}

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<std::pair<double, double>> halton_amplitude_pairs(std::size_t count, double omega_lo, double omega_hi,
                                                              double ratio_lo, double ratio_hi) {
  require_positive(omega_lo, "halton_amplitude_pairs: omega_lo");
  if (!(omega_hi >= omega_lo) || !(ratio_lo > 0.0) || !(ratio_hi >= ratio_lo)) {
    throw ValidationError("halton_amplitude_pairs: invalid ranges");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    const double omega0 = omega_lo * std::pow(omega_hi / omega_lo, halton(i, 2));
    const double ratio = ratio_lo + (ratio_hi - ratio_lo) * halton(i, 3);
    pairs.emplace_back(omega0, omega0 * ratio);
  }
  return pairs;
}

std::vector<SweepPoint> run_fit_sweep(std::span<const std::pair<double, double>> pairs, const std::vector<double>& r_values,
                                      double duration, double dt, std::size_t threads, const PhysicalConstants& k) {
  return parallel_map(pairs.size(), threads, [&](std::size_t i) {
    const auto [o0, o1] = pairs[i];
    const FitSample sample = simulate_fit_sample(o0, o1, r_values, duration, dt, k);
    const GradientFit fit = fit_local_gradient(sample, k);
    double residual = 0.0;
    for (std::size_t j = 0; j < r_values.size(); ++j) {
      residual = std::max(residual, std::abs(prr_local(r_values[j], o0, o1, k) - sample.prr_values[j]));
    }
    return SweepPoint{o0, o1, 1.0 / fit.rb_pi_eff, fit.slope, sample.mean_fluctuability(), fit.unimodal, residual};
  });
}

double sweep_slope(std::span<const SweepPoint> points) {
  std::vector<double> x, y, w;
  for (const SweepPoint& p : points) {
    x.push_back(p.inv_rb_eff);
    y.push_back(p.gradient);
    w.push_back(1.0 - p.fluctuability_mean);
  }
  return weighted_l1_slope(x, y, w);
}

}  // namespace rydberg
