#include "firstint/diagnostics.hpp"

#include "firstint/specialize.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace firstint {

GrowthReport classify_growth(std::vector<double> norms_by_degree) {
  const int n = static_cast<int>(norms_by_degree.size());
  if (n < 4) throw InsufficientDegrees(n);

  GrowthReport rep;
  rep.n = n;
  rep.g = std::move(norms_by_degree);
  rep.rho.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::quiet_NaN());
  for (int s = 1; s < n; ++s) {
    double a = rep.g[static_cast<std::size_t>(s - 1)];
    double b = rep.g[static_cast<std::size_t>(s)];
    if (a > 0.0 && b > 0.0) rep.rho[static_cast<std::size_t>(s - 1)] = b / a;
  }
  rep.window_lo = (n + 1) / 2;  // ceil(N/2)
  rep.window_hi = n - 1;

  bool all_zero = true;
  for (int s = 2; s <= n; ++s)
    if (rep.g[static_cast<std::size_t>(s - 1)] != 0.0) all_zero = false;
  if (all_zero) {
    rep.tag = GrowthClass::Geometric;
    rep.slope = 0.0;
    rep.median_rho = 0.0;
    rep.radius = std::numeric_limits<double>::infinity();
    return rep;
  }

  std::vector<std::pair<int, double>> pts;  // (s, rho_s) on the fit window
  for (int s = rep.window_lo; s <= rep.window_hi; ++s) {
    double r = rep.rho[static_cast<std::size_t>(s - 1)];
    if (std::isfinite(r)) pts.emplace_back(s, r);
  }
  if (pts.size() < 2) {
    rep.tag = GrowthClass::Inconclusive;
    return rep;
  }

  auto median_of = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t k = v.size();
    return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
  };

  std::vector<double> ratios;
  ratios.reserve(pts.size());
  for (auto& [s, r] : pts) ratios.push_back(r);
  rep.median_rho = median_of(ratios);

  // Theil-Sen: median of pairwise slopes, robust against one bad ratio.
  std::vector<double> slopes;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      slopes.push_back((pts[b].second - pts[a].second) /
                       static_cast<double>(pts[b].first - pts[a].first));
  rep.slope = median_of(std::move(slopes));

  const double s_mid = 0.5 * (rep.window_lo + rep.window_hi);
  if (std::abs(rep.slope) <= kGeometricSlopeFactor * rep.median_rho) {
    rep.tag = GrowthClass::Geometric;
  } else if (rep.slope >= kFactorialSlopeFactor * rep.median_rho / s_mid) {
    rep.tag = GrowthClass::FactorialLike;
  } else {
    rep.tag = GrowthClass::Inconclusive;
  }

  if (rep.tag == GrowthClass::Geometric) {
    // limsup g_s^{1/s} estimated on the tail of the window.
    double sup = 0.0;
    for (int s = rep.window_lo; s <= n; ++s) {
      double gs = rep.g[static_cast<std::size_t>(s - 1)];
      if (gs > 0.0) sup = std::max(sup, std::pow(gs, 1.0 / s));
    }
    rep.radius = sup > 0.0 ? 1.0 / sup : std::numeric_limits<double>::infinity();
  }
  return rep;
}

GrowthReport growth_analyze_at(const FirstIntegral<ParamPoly>& h,
                               std::span<const Rational> t) {
  std::vector<double> g(static_cast<std::size_t>(h.trunc), 0.0);
  for (const auto& [d, hd] : h.components.components()) {
    if (d < 1 || d > h.trunc) continue;
    Rational best(0);
    for (const auto& [m, c] : hd.terms()) {
      Rational a = c.evaluate(t).abs();
      if (best < a) best = a;
    }
    g[static_cast<std::size_t>(d - 1)] = best.to_double();
  }
  return classify_growth(std::move(g));
}

std::vector<Rational> grid_axis_points(const GridAxis& axis) {
  std::vector<Rational> pts;
  if (axis.steps < 1) throw InvalidSystem("grid axis needs at least one step");
  if (axis.steps == 1) {
    pts.push_back(axis.lo);
    return pts;
  }
  Rational span = axis.hi - axis.lo;
  Rational denom(axis.steps - 1);
  for (int i = 0; i < axis.steps; ++i)
    pts.push_back(axis.lo + span * Rational(i) / denom);
  return pts;
}

ScanResult scan(const FactoredSystem<ParamPoly>& family, const std::vector<GridAxis>& axes,
                int jobs) {
  ScanResult result;
  result.axes = axes;
  result.trunc = family.trunc;

  std::vector<std::vector<Rational>> axis_points;
  std::size_t total = 1;
  for (const auto& a : axes) {
    axis_points.push_back(grid_axis_points(a));
    total *= axis_points.back().size();
  }
  if (axes.size() != family.nparams)
    throw InvalidSystem("grid has " + std::to_string(axes.size()) + " axes but the family has " +
                        std::to_string(family.nparams) + " parameters");

  result.points.resize(total);

  auto point_coords = [&](std::size_t index) {
    std::vector<Rational> t(axes.size());
    std::size_t rest = index;
    for (std::size_t k = axes.size(); k-- > 0;) {
      std::size_t m = axis_points[k].size();
      t[k] = axis_points[k][rest % m];
      rest /= m;
    }
    return t;  // row-major: the last axis varies fastest
  };

  auto run_point = [&](std::size_t index) {
    ScanPoint& pt = result.points[index];
    pt.t = point_coords(index);
    try {
      FactoredSystem<Rational> fs = specialize(family, pt.t);
      FirstIntegral<Rational> h = compute_first_integral(fs);
      pt.growth = growth_analyze(h);
      if (const auto* min = h.divisors.minimum()) {
        pt.min_divisor_magnitude = min->magnitude;
        pt.has_divisor = true;
      }
    } catch (const EngineError& e) {
      pt.failed = true;
      pt.error = e.what();
    }
  };

  if (jobs <= 1 || total <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= total) return;
        run_point(i);
      }
    };
    std::vector<std::thread> pool;
    std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
    pool.reserve(width);
    for (std::size_t w = 0; w < width; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& pt : result.points) {
    if (pt.failed) {
      ++result.count_failed;
    } else {
      switch (pt.growth.tag) {
        case GrowthClass::Geometric: ++result.count_geometric; break;
        case GrowthClass::FactorialLike: ++result.count_factorial; break;
        case GrowthClass::Inconclusive: ++result.count_inconclusive; break;
      }
    }
  }
  return result;
}

namespace {

/// Flattened float form of a polynomial vector field / scalar, evaluated in
/// long double with compensated accumulation.
struct FloatPoly {
  struct Term {
    std::vector<std::uint32_t> exp;
    long double c;
  };
  std::vector<Term> terms;

  long double eval(const std::vector<long double>& y) const {
    long double sum = 0.0L, comp = 0.0L;
    for (const auto& t : terms) {
      long double v = t.c;
      for (std::size_t k = 0; k < t.exp.size(); ++k)
        for (std::uint32_t e = 0; e < t.exp[k]; ++e) v *= y[k];
      long double yk = v - comp;
      long double tk = sum + yk;
      comp = (tk - sum) - yk;
      sum = tk;
    }
    return sum;
  }
};

FloatPoly flatten(const GradedSeries<Rational>& s) {
  FloatPoly p;
  for (const auto& [d, h] : s.components())
    for (const auto& [m, c] : h.terms())
      p.terms.push_back({m.exponents(), static_cast<long double>(c.to_double())});
  return p;
}

struct KahanState {
  std::vector<long double> v;
  std::vector<long double> c;

  explicit KahanState(std::vector<long double> init)
      : v(std::move(init)), c(v.size(), 0.0L) {}

  void add(std::size_t k, long double x) {
    long double y = x - c[k];
    long double t = v[k] + y;
    c[k] = (t - v[k]) - y;
    v[k] = t;
  }
};

}  // namespace

ConservationReport conservation_probe(const FactoredSystem<Rational>& fs,
                                      const FirstIntegral<Rational>& h,
                                      const std::vector<double>& radii, double horizon,
                                      double step, const std::vector<double>& direction) {
  const std::size_t n = fs.n;
  ConservationReport rep;
  rep.horizon = horizon;
  rep.step = step;
  if (step <= 0.0 || horizon <= 0.0)
    throw InvalidSystem("conservation probe needs positive horizon and step");

  // Unit direction; default (1,..,1)/sqrt(n).
  std::vector<double> u = direction;
  if (u.empty()) u.assign(n, 1.0);
  if (u.size() != n) throw InvalidSystem("direction length does not match the dimension");
  double norm = 0.0;
  for (double x : u) norm += x * x;
  if (norm == 0.0) throw InvalidSystem("direction must be nonzero");
  norm = std::sqrt(norm);
  for (double& x : u) x /= norm;
  rep.direction = u;

  // Field: y1' = g1, y_{i+2}' = (B y2)_i + g2_i.
  FieldComponents<Rational> f = field_components(fs);
  std::vector<FloatPoly> rhs;
  rhs.reserve(n);
  rhs.push_back(flatten(f.g1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    FloatPoly p = flatten(f.g2[i]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const Rational& b = fs.B.at(i, j);
      if (b.is_zero()) continue;
      std::vector<std::uint32_t> e(n, 0);
      e[j + 1] = 1;
      p.terms.push_back({std::move(e), static_cast<long double>(b.to_double())});
    }
    rhs.push_back(std::move(p));
  }
  FloatPoly hpoly = flatten(h.components);

  const auto steps = static_cast<std::size_t>(std::llround(horizon / step));
  auto deriv = [&](const std::vector<long double>& y, std::vector<long double>& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = rhs[k].eval(y);
  };

  for (double r : radii) {
    std::vector<long double> y0(n);
    for (std::size_t k = 0; k < n; ++k) y0[k] = static_cast<long double>(r) * u[k];
    KahanState y(y0);
    const long double h0 = hpoly.eval(y.v);
    long double drift = 0.0L;

    std::vector<long double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t s = 0; s < steps; ++s) {
      deriv(y.v, k1);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = y.v[k] + 0.5L * step * k1[k];
      deriv(tmp, k2);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = y.v[k] + 0.5L * step * k2[k];
      deriv(tmp, k3);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = y.v[k] + static_cast<long double>(step) * k3[k];
      deriv(tmp, k4);
      for (std::size_t k = 0; k < n; ++k)
        y.add(k, step / 6.0L * (k1[k] + 2.0L * k2[k] + 2.0L * k3[k] + k4[k]));
      for (std::size_t k = 0; k < n; ++k)
        if (!std::isfinite(static_cast<double>(y.v[k]))) throw StepUnstable();
      long double d = hpoly.eval(y.v) - h0;
      if (d < 0) d = -d;
      drift = std::max(drift, d);
    }
    rep.probes.push_back({r, static_cast<double>(drift)});
  }

  // Least-squares slope of log drift vs log r (the drift-order law).
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : rep.probes)
    if (p.drift > 0.0) pts.emplace_back(std::log(p.radius), std::log(p.drift));
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, yv] : pts) {
      sx += x;
      sy += yv;
      sxx += x * x;
      sxy += x * yv;
    }
    double m = static_cast<double>(pts.size());
    double denom = m * sxx - sx * sx;
    if (denom != 0.0) {
      rep.slope = (m * sxy - sx * sy) / denom;
      double intercept = (sy - rep.slope * sx) / m;
      double ss = 0.0;
      for (auto& [x, yv] : pts) {
        double e = yv - (rep.slope * x + intercept);
        ss += e * e;
      }
      rep.fit_residual = std::sqrt(ss / m);
    }
  }
  return rep;
}

}  // namespace firstint
