#pragma once

#include <map>
#include <optional>
#include <vector>

#include "firstint/homo_poly.hpp"

namespace firstint {

/// Truncated graded power series: a sparse map degree -> homogeneous
/// component. `trunc()` records the degree through which the series was
/// requested/computed; components above it are never stored. Which degrees
/// are mathematically complete is an obligation of the code constructing the
/// series (order bookkeeping is done at each call site, and the pipeline's
/// exactness invariants are what the tests verify).
template <typename R>
class GradedSeries {
public:
  GradedSeries() = default;
  GradedSeries(std::size_t nvars, int trunc) : nvars_(nvars), trunc_(trunc) {}

  static GradedSeries from_homo(HomoPoly<R> h, int trunc) {
    GradedSeries s(h.nvars(), trunc);
    if (!h.is_zero() && h.degree() <= trunc) s.comp_.emplace(h.degree(), std::move(h));
    return s;
  }

  /// The variable y_k (1-based) as a series.
  static GradedSeries variable(std::size_t k, std::size_t nvars, int trunc) {
    return from_homo(HomoPoly<R>::variable(k, nvars), trunc);
  }

  std::size_t nvars() const { return nvars_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return comp_.empty(); }

  const std::map<int, HomoPoly<R>>& components() const { return comp_; }

  HomoPoly<R> component(int d) const {
    auto it = comp_.find(d);
    if (it != comp_.end()) return it->second;
    return HomoPoly<R>(nvars_, d);
  }

  bool has_component(int d) const { return comp_.find(d) != comp_.end(); }

  /// Lowest degree present; nullopt for the zero series.
  std::optional<int> order() const {
    if (comp_.empty()) return std::nullopt;
    return comp_.begin()->first;
  }

  int max_degree() const { return comp_.empty() ? -1 : comp_.rbegin()->first; }

  void set_component(HomoPoly<R> h) {
    if (h.degree() > trunc_)
      throw InternalError("component above the series truncation");
    if (h.is_zero())
      comp_.erase(h.degree());
    else
      comp_.insert_or_assign(h.degree(), std::move(h));
  }

  void accumulate(const MultiIndex& m, const R& c) {
    if (c.is_zero()) return;
    int d = m.degree();
    if (d > trunc_) throw InternalError("term above the series truncation");
    auto it = comp_.find(d);
    if (it == comp_.end()) it = comp_.emplace(d, HomoPoly<R>(nvars_, d)).first;
    it->second.accumulate(m, c);
    if (it->second.is_zero()) comp_.erase(it);
  }

  GradedSeries plus(const GradedSeries& o) const { return merged(o, false); }
  GradedSeries minus(const GradedSeries& o) const { return merged(o, true); }

  GradedSeries negated() const {
    GradedSeries r(nvars_, trunc_);
    for (const auto& [d, h] : comp_) r.comp_.emplace(d, h.negated());
    return r;
  }

  GradedSeries scaled(const R& s) const {
    GradedSeries r(nvars_, trunc_);
    if (s.is_zero()) return r;
    for (const auto& [d, h] : comp_) {
      HomoPoly<R> p = h.scaled(s);
      if (!p.is_zero()) r.comp_.emplace(d, std::move(p));
    }
    return r;
  }

  /// Exact Cauchy product truncated at total degree `n`.
  GradedSeries times(const GradedSeries& o, int n) const {
    GradedSeries r(nvars_, n);
    for (const auto& [da, ha] : comp_) {
      if (da > n) break;
      for (const auto& [db, hb] : o.comp_) {
        if (da + db > n) break;
        HomoPoly<R> prod = ha.times(hb);
        if (prod.is_zero()) continue;
        auto it = r.comp_.find(da + db);
        if (it == r.comp_.end())
          r.comp_.emplace(da + db, std::move(prod));
        else
          it->second = it->second.plus(prod);
      }
    }
    r.drop_zero_components();
    return r;
  }

  GradedSeries truncated(int n) const {
    GradedSeries r(nvars_, n);
    for (const auto& [d, h] : comp_) {
      if (d > n) break;
      r.comp_.emplace(d, h);
    }
    return r;
  }

  GradedSeries partial(std::size_t var) const {
    GradedSeries r(nvars_, trunc_ > 0 ? trunc_ - 1 : 0);
    for (const auto& [d, h] : comp_) {
      HomoPoly<R> p = h.partial(var);
      if (!p.is_zero()) r.comp_.emplace(p.degree(), std::move(p));
    }
    return r;
  }

  /// Exact composition truncated at degree `n`: substitutes args[k] for the
  /// (k+1)-th variable of this series. Every argument must have zero
  /// constant term (otherwise the composition is not a formal series
  /// operation); all arguments live in a common target variable space.
  GradedSeries substitute(const std::vector<GradedSeries>& args, int n) const {
    if (args.size() != nvars_)
      throw InternalError("substitute: argument count does not match variable count");
    for (const auto& a : args)
      if (a.has_component(0)) throw ConstantTermPresent();
    const std::size_t out_vars = args.empty() ? nvars_ : args.front().nvars();

    // Per-variable power cache; arguments have order >= 1, so exponents
    // above n can never contribute.
    std::vector<std::vector<GradedSeries>> pows(args.size());
    auto power = [&](std::size_t k, std::uint32_t e) -> const GradedSeries& {
      auto& cache = pows[k];
      if (cache.empty()) {
        GradedSeries one(out_vars, n);
        one.accumulate(MultiIndex(out_vars), R(1));
        cache.push_back(std::move(one));
      }
      while (cache.size() <= e) cache.push_back(cache.back().times(args[k], n));
      return cache[e];
    };

    std::vector<int> arg_order(args.size(), n + 1);
    for (std::size_t k = 0; k < args.size(); ++k)
      if (auto o = args[k].order()) arg_order[k] = *o;

    GradedSeries out(out_vars, n);
    for (const auto& [d, h] : comp_) {
      for (const auto& [m, c] : h.terms()) {
        long min_deg = 0;
        for (std::size_t k = 0; k < args.size(); ++k)
          min_deg += static_cast<long>(m[k]) * arg_order[k];
        if (min_deg > n) continue;
        GradedSeries prod(out_vars, n);
        prod.accumulate(MultiIndex(out_vars), R(1));
        for (std::size_t k = 0; k < args.size(); ++k)
          if (m[k] > 0) prod = prod.times(power(k, m[k]), n);
        out = out.plus(prod.scaled(c));
      }
    }
    return out;
  }

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.comp_ == b.comp_;
  }
  friend bool operator!=(const GradedSeries& a, const GradedSeries& b) { return !(a == b); }

private:
  GradedSeries merged(const GradedSeries& o, bool negate) const {
    GradedSeries r(nvars_, std::min(trunc_, o.trunc_));
    for (const auto& [d, h] : comp_)
      if (d <= r.trunc_) r.comp_.emplace(d, h);
    for (const auto& [d, h] : o.comp_) {
      if (d > r.trunc_) continue;
      auto it = r.comp_.find(d);
      if (it == r.comp_.end())
        r.comp_.emplace(d, negate ? h.negated() : h);
      else
        it->second = negate ? it->second.minus(h) : it->second.plus(h);
    }
    r.drop_zero_components();
    return r;
  }

  void drop_zero_components() {
    for (auto it = comp_.begin(); it != comp_.end();)
      it = it->second.is_zero() ? comp_.erase(it) : std::next(it);
  }

  std::size_t nvars_ = 0;
  int trunc_ = 0;
  std::map<int, HomoPoly<R>> comp_;
};

template <typename R>
GradedSeries<R> operator+(const GradedSeries<R>& a, const GradedSeries<R>& b) {
  return a.plus(b);
}
template <typename R>
GradedSeries<R> operator-(const GradedSeries<R>& a, const GradedSeries<R>& b) {
  return a.minus(b);
}

}  // namespace firstint
