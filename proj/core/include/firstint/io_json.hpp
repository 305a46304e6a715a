#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "firstint/poly_text.hpp"
#include "firstint/system.hpp"

namespace firstint {

using nlohmann::json;

/// JSON (de)serialization of systems and polynomial data. The term schema is
/// shared by input documents and reports, so reports can be fed back in:
///   {"coeff": "<exact scalar>", "exp": [a1..an]}            (Q, Qi)
///   {"coeff": "p/q", "exp": [a1..an], "texp": [b1..bm]}     (Qt)

namespace io_detail {

inline MultiIndex exponents_from_json(const json& j, std::size_t nvars,
                                      const std::string& where) {
  if (!j.is_array() || j.size() != nvars)
    throw InvalidSystem(where + ": expected an exponent array of length " +
                        std::to_string(nvars));
  MultiIndex m(nvars);
  for (std::size_t k = 0; k < nvars; ++k) {
    if (!j[k].is_number_integer() || j[k].get<long long>() < 0)
      throw InvalidSystem(where + ": exponents must be nonnegative integers");
    m[k] = static_cast<std::uint32_t>(j[k].get<long long>());
  }
  return m;
}

template <typename R>
R scalar_from_term(const json& term, std::size_t nparams, const std::string& where) {
  if (!term.contains("coeff") || !term["coeff"].is_string())
    throw InvalidSystem(where + ": term needs a string \"coeff\"");
  const std::string& cs = term["coeff"].get_ref<const std::string&>();
  if constexpr (RingOps<R>::parametric) {
    Rational base = Rational::parse(cs);
    MultiIndex texp(nparams);
    if (term.contains("texp"))
      texp = exponents_from_json(term["texp"], nparams, where + ".texp");
    return ParamPoly::monomial(std::move(texp), std::move(base));
  } else {
    if (term.contains("texp"))
      throw InvalidSystem(where + ": \"texp\" is only valid in ring Qt");
    return RingOps<R>::parse(cs, nparams);
  }
}

}  // namespace io_detail

/// Reads a term array into a series; terms above `trunc` are dropped (the
/// engine works to degree N and treats polynomial and truncated-series input
/// identically). The number of dropped terms is reported via `truncated`.
template <typename R>
GradedSeries<R> series_from_json(const json& arr, std::size_t nvars, std::size_t nparams,
                                 int trunc, const std::string& where,
                                 std::size_t* truncated = nullptr) {
  if (!arr.is_array()) throw InvalidSystem(where + ": expected an array of terms");
  GradedSeries<R> out(nvars, trunc);
  for (std::size_t idx = 0; idx < arr.size(); ++idx) {
    const json& term = arr[idx];
    std::string at = where + "[" + std::to_string(idx) + "]";
    if (!term.is_object()) throw InvalidSystem(at + ": term must be an object");
    if (!term.contains("exp")) throw InvalidSystem(at + ": term needs \"exp\"");
    MultiIndex m = io_detail::exponents_from_json(term["exp"], nvars, at + ".exp");
    R c = io_detail::scalar_from_term<R>(term, nparams, at);
    if (m.degree() > trunc) {
      if (truncated) ++*truncated;
      continue;
    }
    out.accumulate(m, c);
  }
  return out;
}

template <typename R>
json series_to_json(const GradedSeries<R>& s, std::size_t nparams = 0) {
  json arr = json::array();
  for (const auto& [d, h] : s.components()) {
    for (const auto& [m, c] : h.terms()) {
      if constexpr (RingOps<R>::parametric) {
        for (const auto& [texp, q] : c.terms()) {
          json term;
          term["coeff"] = q.str();
          term["exp"] = m.padded(s.nvars());
          term["texp"] = texp.padded(std::max(nparams, texp.nvars()));
          arr.push_back(std::move(term));
        }
      } else {
        json term;
        term["coeff"] = RingOps<R>::str(c);
        term["exp"] = m.padded(s.nvars());
        arr.push_back(std::move(term));
      }
    }
  }
  return arr;
}

template <typename R>
json series_to_json_with_text(const GradedSeries<R>& s, std::size_t nparams = 0) {
  json out;
  out["terms"] = series_to_json(s, nparams);
  out["text"] = to_text(s);
  return out;
}

struct ParsedSystem {
  RingId ring = RingId::Q;
  json document;  // validated raw document, for ring-dispatched loading
  std::size_t truncated_terms = 0;
};

/// First stage of input loading: syntax + the ring tag. The heavy,
/// ring-typed stage is `system_from_json<R>`.
ParsedSystem parse_system_document(const std::string& text);

template <typename R>
SystemSpec<R> system_from_json(const json& doc, std::size_t* truncated = nullptr) {
  if (RingOps<R>::id != *ring_from_name(doc["ring"].get<std::string>()))
    throw InternalError("ring dispatch mismatch");

  SystemSpec<R> spec;
  long n = doc["n"].get<long>();
  long N = doc["N"].get<long>();
  if (n < 2) throw InvalidSystem("n must be >= 2");
  if (N < 2) throw InvalidSystem("N must be >= 2");
  spec.n = static_cast<std::size_t>(n);
  spec.trunc = static_cast<int>(N);
  spec.nparams = 0;
  if (doc.contains("m_params")) {
    long m = doc["m_params"].get<long>();
    if (m < 0) throw InvalidSystem("m_params must be >= 0");
    spec.nparams = static_cast<std::size_t>(m);
  }
  if (RingOps<R>::parametric && !doc.contains("m_params"))
    throw InvalidSystem("ring Qt requires m_params");
  if (!RingOps<R>::parametric && spec.nparams != 0)
    throw InvalidSystem("m_params > 0 requires ring Qt");

  const std::size_t k = spec.n - 1;
  const json& B = doc.at("B");
  if (!B.is_array() || B.size() != k)
    throw InvalidSystem("B must be a " + std::to_string(k) + "x" + std::to_string(k) +
                        " matrix of exact strings");
  spec.B = Matrix<R>(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!B[i].is_array() || B[i].size() != k)
      throw InvalidSystem("B row " + std::to_string(i + 1) + " has the wrong length");
    for (std::size_t j = 0; j < k; ++j) {
      if (!B[i][j].is_string()) throw InvalidSystem("B entries must be exact strings");
      spec.B.at(i, j) =
          RingOps<R>::parse(B[i][j].get_ref<const std::string&>(), spec.nparams);
    }
  }

  std::size_t dropped = 0;
  spec.f1 = series_from_json<R>(doc.at("f1"), spec.n, spec.nparams, spec.trunc, "f1",
                                &dropped);
  const json& f2 = doc.at("f2");
  if (!f2.is_array() || f2.size() != k)
    throw InvalidSystem("f2 must hold " + std::to_string(k) + " term arrays");
  spec.f2.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    spec.f2.push_back(series_from_json<R>(f2[i], spec.n, spec.nparams, spec.trunc,
                                          "f2[" + std::to_string(i) + "]", &dropped));
  if (truncated) *truncated = dropped;
  return spec;
}

/// Calls `fn.template operator()<R>()` with the scalar ring matching `id`.
template <typename Fn>
decltype(auto) with_ring(RingId id, Fn&& fn) {
  switch (id) {
    case RingId::Q: return fn.template operator()<Rational>();
    case RingId::Qi: return fn.template operator()<GaussianRational>();
    case RingId::Qt: return fn.template operator()<ParamPoly>();
  }
  throw InternalError("unknown ring id");
}

json certificate_to_json(const ResonanceCertificate& cert);

}  // namespace firstint
