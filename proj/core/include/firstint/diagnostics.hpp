#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firstint/integral.hpp"

namespace firstint {

enum class GrowthClass { Geometric, FactorialLike, Inconclusive };

inline const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::Geometric: return "geometric";
    case GrowthClass::FactorialLike: return "factorial-like";
    case GrowthClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Coefficient-growth summary for one first integral (or one synthetic norm
/// sequence). `g[s-1]` is the max-norm of the degree-s coefficients,
/// s = 1..N. The classification constants are fixed, documented heuristics;
/// the raw norms are always carried so consumers can re-fit.
struct GrowthReport {
  int n = 0;  // N, the truncation the norms were taken from
  std::vector<double> g;
  std::vector<double> rho;  // rho[s-1] = g_{s+1}/g_s where defined, else NaN
  int window_lo = 0;        // fit window in s: [ceil(N/2), N-1]
  int window_hi = 0;
  double median_rho = std::numeric_limits<double>::quiet_NaN();
  double slope = std::numeric_limits<double>::quiet_NaN();  // Theil-Sen, rho vs s
  GrowthClass tag = GrowthClass::Inconclusive;
  double radius = std::numeric_limits<double>::quiet_NaN();  // 1/limsup g_s^{1/s}
};

/// Classification constants (relative to the median ratio over the fit
/// window; see classify_growth):
///   slope within GEOMETRIC_SLOPE_FACTOR * median        -> geometric
///   slope at least FACTORIAL_SLOPE_FACTOR * median/s_mid -> factorial-like
inline constexpr double kGeometricSlopeFactor = 0.05;
inline constexpr double kFactorialSlopeFactor = 0.5;

/// The pure-float classification core; also the injection point for
/// synthetic norm sequences in tests. Throws InsufficientDegrees for N < 4.
GrowthReport classify_growth(std::vector<double> norms_by_degree);

namespace diagnostics_detail {

inline double coeff_norm(const Rational& c) { return c.abs().to_double(); }
inline double coeff_norm(const GaussianRational& c) { return std::sqrt(c.norm().to_double()); }

}  // namespace diagnostics_detail

/// Norm sequence g_s = max_{|j| = s} |coefficient of y^j in H_s|, exact until
/// the final float conversion.
template <typename R>
std::vector<double> growth_norms(const FirstIntegral<R>& h) {
  static_assert(!RingOps<R>::parametric,
                "parametric integrals must be specialized at a t-point first");
  std::vector<double> g(static_cast<std::size_t>(h.trunc), 0.0);
  for (const auto& [d, hd] : h.components.components()) {
    if (d < 1 || d > h.trunc) continue;
    if constexpr (std::is_same_v<R, Rational>) {
      // Keep the max exact; convert once.
      Rational best(0);
      for (const auto& [m, c] : hd.terms()) {
        Rational a = c.abs();
        if (best < a) best = a;
      }
      g[static_cast<std::size_t>(d - 1)] = best.to_double();
    } else {
      double best = 0.0;
      for (const auto& [m, c] : hd.terms())
        best = std::max(best, diagnostics_detail::coeff_norm(c));
      g[static_cast<std::size_t>(d - 1)] = best;
    }
  }
  return g;
}

template <typename R>
GrowthReport growth_analyze(const FirstIntegral<R>& h) {
  return classify_growth(growth_norms(h));
}

/// Parametric growth analysis: specialize the components exactly at t, then
/// classify.
GrowthReport growth_analyze_at(const FirstIntegral<ParamPoly>& h,
                               std::span<const Rational> t);

/// One axis of a parameter grid: `steps` points from lo to hi inclusive
/// (steps == 1 degenerates to {lo}). Coordinates stay rational so the
/// specialization is exact.
struct GridAxis {
  Rational lo;
  Rational hi;
  int steps = 1;
};

std::vector<Rational> grid_axis_points(const GridAxis& axis);

struct ScanPoint {
  std::vector<Rational> t;
  bool failed = false;
  std::string error;
  GrowthReport growth;
  Rational min_divisor_magnitude;
  bool has_divisor = false;
};

struct ScanResult {
  std::vector<GridAxis> axes;
  int trunc = 0;
  std::vector<ScanPoint> points;  // row-major in axis order, t_m fastest
  std::size_t count_geometric = 0;
  std::size_t count_factorial = 0;
  std::size_t count_inconclusive = 0;
  std::size_t count_failed = 0;
};

/// Evaluates the family on the full grid: exact specialization at each
/// rational point, numeric first integral to the family truncation, growth
/// report. Per-point failures are recorded, not fatal. Points are
/// independent tasks; `jobs` threads share a work queue and the result is
/// assembled by grid index, so output is independent of `jobs`.
ScanResult scan(const FactoredSystem<ParamPoly>& family, const std::vector<GridAxis>& axes,
                int jobs = 1);

/// Numeric conservation probe: fixed-step classical RK4 from y(0) = r*u,
/// drift(r) = max_t |H_N(y(t)) - H_N(y(0))|. The integration state and the
/// evaluation of H are kept in long double with compensated summation so the
/// r^(N+1) drift law stays above the rounding floor at small radii.
struct ConservationProbe {
  double radius = 0.0;
  double drift = 0.0;
};

struct ConservationReport {
  std::vector<ConservationProbe> probes;
  double slope = std::numeric_limits<double>::quiet_NaN();  // d log drift / d log r
  double fit_residual = std::numeric_limits<double>::quiet_NaN();
  double horizon = 0.0;
  double step = 0.0;
  std::vector<double> direction;
};

inline constexpr int kDefaultProbeSteps = 2048;  // default step h = T/2048

ConservationReport conservation_probe(const FactoredSystem<Rational>& fs,
                                      const FirstIntegral<Rational>& h,
                                      const std::vector<double>& radii, double horizon,
                                      double step,
                                      const std::vector<double>& direction = {});

}  // namespace firstint
