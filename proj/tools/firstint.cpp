// firstint: formal first integrals of analytic vector fields with one zero
// eigenvalue. Subcommands: check, reduce, integral, scan, conserve.
//
// Exit codes are a stable contract:
//   0  success (check: nonisolated through N)
//   1  malformed input or I/O failure
//   2  resonance violation among the nonzero eigenvalues
//   3  the singularity is isolated at some degree <= N
//   4  any other engine failure

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "firstint/diagnostics.hpp"
#include "firstint/io_json.hpp"
#include "firstint/report.hpp"

using namespace firstint;

namespace {

struct CommonOpts {
  std::string input;
  std::string output;
  std::string ring_override;
  int degree = 0;  // 0 = take N from the input document
};

struct LoadedInput {
  std::string hash;
  RingId ring = RingId::Q;
  json doc;
};

LoadedInput load_input(const CommonOpts& opts) {
  LoadedInput in;
  std::string text = read_file(opts.input);
  in.hash = fnv1a64_hex(text);
  ParsedSystem parsed = parse_system_document(text);
  in.doc = std::move(parsed.document);
  in.ring = parsed.ring;
  if (!opts.ring_override.empty()) {
    auto r = ring_from_name(opts.ring_override);
    if (!r) throw InvalidSystem("unknown ring override '" + opts.ring_override + "'");
    in.ring = *r;
    in.doc["ring"] = opts.ring_override;
  }
  if (opts.degree > 0) {
    if (opts.degree < 2) throw InvalidSystem("N must be >= 2");
    in.doc["N"] = opts.degree;
  }
  return in;
}

std::string default_output(const CommonOpts& opts, const char* subcommand,
                           const char* ext) {
  if (!opts.output.empty()) return opts.output;
  namespace fs = std::filesystem;
  const char* dir = std::getenv("FIRSTINT_OUT_DIR");
  fs::path base = dir && *dir ? fs::path(dir) : fs::path(".");
  fs::path stem = fs::path(opts.input).stem();
  return (base / (stem.string() + "." + subcommand + "." + ext)).string();
}

json report_header(const LoadedInput& in, int n, int trunc) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["input_fnv1a64"] = in.hash;
  j["ring"] = ring_name(in.ring);
  j["n"] = n;
  j["N"] = trunc;
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["kind"] = v.nonisolated ? "nonisolated_up_to" : "isolated_at_degree";
  j["degree"] = v.degree;
  if (!v.nonisolated) j["witness"] = v.witness;
  return j;
}

json divisor_log_to_json(const SmallDivisorLog& log) {
  json entries = json::array();
  for (const auto& e : log.entries) {
    json je;
    je["degree"] = e.degree;
    je["mtilde"] = e.mtilde;
    je["value"] = e.value;
    je["magnitude"] = e.magnitude.str();
    entries.push_back(std::move(je));
  }
  json j;
  j["entries"] = std::move(entries);
  if (const auto* min = log.minimum()) {
    j["min"] = {{"degree", min->degree},
                {"mtilde", min->mtilde},
                {"value", min->value},
                {"magnitude", min->magnitude.str()}};
  }
  return j;
}

void write_report(const std::string& path, const json& j) {
  atomic_write_file(path, j.dump(2) + "\n");
}

/// Everything every subcommand needs: parsed system, certificate, center
/// curve and the nonisolatedness verdict.
template <typename R>
struct Stage {
  SystemSpec<R> spec;
  ResonanceCertificate cert;
  CenterCurve<R> curve;
  Verdict verdict;
  std::size_t truncated_terms = 0;
};

template <typename R>
Stage<R> run_stage(const json& doc) {
  Stage<R> st;
  st.spec = system_from_json<R>(doc, &st.truncated_terms);
  st.cert = validate(st.spec);
  st.curve = solve_implicit(st.spec);
  st.verdict = nonisolated_check(st.spec, st.curve);
  return st;
}

template <typename R>
json stage_report(const LoadedInput& in, const Stage<R>& st) {
  json j = report_header(in, static_cast<int>(st.spec.n), st.spec.trunc);
  j["certificate"] = certificate_to_json(st.cert);
  j["verdict"] = verdict_to_json(st.verdict);
  if (st.truncated_terms > 0) j["input_terms_truncated"] = st.truncated_terms;
  return j;
}

int cmd_check(const CommonOpts& opts) {
  LoadedInput in = load_input(opts);
  return with_ring(in.ring, [&]<typename R>() {
    Stage<R> st = run_stage<R>(in.doc);
    json j = stage_report(in, st);
    std::string path = default_output(opts, "check", "json");
    write_report(path, j);
    std::cout << "check: " << (st.verdict.nonisolated ? "nonisolated_up_to " : "isolated_at_degree ")
              << st.verdict.degree << ", min divisor magnitude " << st.cert.min_magnitude.str()
              << ", report " << path << "\n";
    return st.verdict.nonisolated ? 0 : 3;
  });
}

int cmd_reduce(const CommonOpts& opts) {
  LoadedInput in = load_input(opts);
  return with_ring(in.ring, [&]<typename R>() {
    Stage<R> st = run_stage<R>(in.doc);
    json j = stage_report(in, st);

    json phi = json::array();
    for (const auto& p : st.curve.phi) phi.push_back(series_to_json(p, st.spec.nparams));
    j["phi"] = std::move(phi);

    int code = 3;
    if (st.verdict.nonisolated) {
      FactoredSystem<R> fs = shift_and_factor(st.spec, st.curve);
      json f1 = json::array();
      for (const auto& e : fs.F1) f1.push_back(series_to_json(e, fs.nparams));
      json f2 = json::array();
      for (const auto& row : fs.F2) {
        json r = json::array();
        for (const auto& e : row) r.push_back(series_to_json(e, fs.nparams));
        f2.push_back(std::move(r));
      }
      j["F1"] = std::move(f1);
      j["F2"] = std::move(f2);
      code = 0;
    }
    std::string path = default_output(opts, "reduce", "json");
    write_report(path, j);
    std::cout << "reduce: verdict " << j["verdict"]["kind"].get<std::string>() << ", report "
              << path << "\n";
    return code;
  });
}

int cmd_integral(const CommonOpts& opts) {
  LoadedInput in = load_input(opts);
  auto t0 = std::chrono::steady_clock::now();
  return with_ring(in.ring, [&]<typename R>() {
    Stage<R> st = run_stage<R>(in.doc);
    if (!st.verdict.nonisolated) {
      json j = stage_report(in, st);
      std::string path = default_output(opts, "integral", "json");
      write_report(path, j);
      std::cout << "integral: rejected, isolated at degree " << st.verdict.degree
                << ", report " << path << "\n";
      return 3;
    }
    FactoredSystem<R> fs = shift_and_factor(st.spec, st.curve);
    FirstIntegral<R> h = compute_first_integral(fs);

    json j = stage_report(in, st);
    json comp;
    for (const auto& [d, hd] : h.components.components())
      comp[std::to_string(d)] = series_to_json_with_text(
          GradedSeries<R>::from_homo(hd, h.trunc), st.spec.nparams);
    j["first_integral"] = {{"components", std::move(comp)},
                           {"text", to_text(h.components)},
                           {"residual_zero_through", h.trunc}};
    j["small_divisors"] = divisor_log_to_json(h.divisors);
    if (!h.residual_tail.is_zero()) {
      json tail;
      for (const auto& [d, hd] : h.residual_tail.components())
        tail[std::to_string(d)] = to_text(hd);
      j["residual_tail"] = std::move(tail);
    }
    if constexpr (RingOps<R>::parametric) {
      auto rep = verify_param_structure(h);
      json pj;
      pj["ok"] = rep.ok;
      json maxd = json::array();
      for (auto& [s, d] : rep.max_tdegree) maxd.push_back({{"degree", s}, {"max_tdegree", d}});
      pj["max_tdegree"] = std::move(maxd);
      if (!rep.ok) {
        json viol = json::array();
        for (auto& v : rep.violations)
          viol.push_back({{"degree", v.degree},
                          {"monomial", v.monomial},
                          {"coeff", v.coeff},
                          {"reason", v.reason}});
        pj["violations"] = std::move(viol);
      }
      j["param_structure"] = std::move(pj);
    }

    std::string path = default_output(opts, "integral", "json");
    write_report(path, j);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << "integral: H computed to N=" << h.trunc << ", residual zero through "
              << h.trunc << ", report " << path << " (" << ms << " ms)\n";
    return 0;
  });
}

std::vector<GridAxis> parse_grid(const std::string& text, std::size_t nparams) {
  if (text.empty()) throw InvalidSystem("scan requires --grid \"t1=lo:hi:steps,...\"");
  std::vector<GridAxis> axes(nparams);
  std::vector<bool> seen(nparams, false);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;

    auto eq = part.find('=');
    if (eq == std::string::npos || part.empty() || part[0] != 't')
      throw InvalidSystem("bad grid axis '" + part + "'; expected t<k>=lo:hi:steps");
    std::size_t k = std::stoul(part.substr(1, eq - 1));
    if (k < 1 || k > nparams)
      throw InvalidSystem("grid axis t" + std::to_string(k) + " out of range");
    std::string spec = part.substr(eq + 1);
    auto c1 = spec.find(':');
    auto c2 = spec.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InvalidSystem("bad grid range '" + spec + "'; expected lo:hi:steps");
    GridAxis axis;
    axis.lo = Rational::parse(spec.substr(0, c1));
    axis.hi = Rational::parse(spec.substr(c1 + 1, c2 - c1 - 1));
    axis.steps = std::stoi(spec.substr(c2 + 1));
    if (axis.steps < 1) throw InvalidSystem("grid resolution must be >= 1");
    axes[k - 1] = axis;
    seen[k - 1] = true;
  }
  for (std::size_t k = 0; k < nparams; ++k)
    if (!seen[k]) throw InvalidSystem("grid is missing axis t" + std::to_string(k + 1));
  return axes;
}

int cmd_scan(const CommonOpts& opts, const std::string& grid_text, int jobs) {
  LoadedInput in = load_input(opts);
  if (in.ring != RingId::Qt)
    throw InvalidSystem("scan needs a parametric system (ring Qt)");

  Stage<ParamPoly> st = run_stage<ParamPoly>(in.doc);
  if (!st.verdict.nonisolated) {
    std::cout << "scan: family rejected, isolated at degree " << st.verdict.degree
              << " with witness " << st.verdict.witness << "\n";
    return 3;
  }
  FactoredSystem<ParamPoly> fs = shift_and_factor(st.spec, st.curve);
  std::vector<GridAxis> axes = parse_grid(grid_text, st.spec.nparams);
  ScanResult result = scan(fs, axes, jobs);

  // CSV: one row per grid point, floats at fixed precision.
  std::string csv;
  for (std::size_t k = 0; k < axes.size(); ++k) csv += "t" + std::to_string(k + 1) + ",";
  csv += "class,radius,min_divisor\n";
  for (const auto& pt : result.points) {
    for (const auto& t : pt.t) csv += format_double(t.to_double()) + ",";
    if (pt.failed) {
      csv += "failed,nan,nan\n";
    } else {
      csv += std::string(growth_class_name(pt.growth.tag)) + "," +
             format_double(pt.growth.radius) + "," +
             (pt.has_divisor ? format_double(pt.min_divisor_magnitude.to_double())
                             : std::string("nan")) +
             "\n";
    }
  }

  json j = stage_report(in, st);
  json jaxes = json::array();
  for (std::size_t k = 0; k < axes.size(); ++k)
    jaxes.push_back({{"param", "t" + std::to_string(k + 1)},
                     {"lo", axes[k].lo.str()},
                     {"hi", axes[k].hi.str()},
                     {"steps", axes[k].steps}});
  j["grid"] = std::move(jaxes);
  json pts = json::array();
  for (const auto& pt : result.points) {
    json pj;
    json t = json::array();
    for (const auto& v : pt.t) t.push_back(v.str());
    pj["t"] = std::move(t);
    if (pt.failed) {
      pj["failed"] = true;
      pj["error"] = pt.error;
    } else {
      pj["class"] = growth_class_name(pt.growth.tag);
      pj["radius"] = format_double(pt.growth.radius);
      pj["slope"] = format_double(pt.growth.slope);
      json g = json::array();
      for (double v : pt.growth.g) g.push_back(format_double(v));
      pj["g"] = std::move(g);
      if (pt.has_divisor) pj["min_divisor_magnitude"] = pt.min_divisor_magnitude.str();
    }
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  j["summary"] = {{"geometric", result.count_geometric},
                  {"factorial-like", result.count_factorial},
                  {"inconclusive", result.count_inconclusive},
                  {"failed", result.count_failed}};

  std::string csv_path = default_output(opts, "scan", "csv");
  std::filesystem::path twin(csv_path);
  twin.replace_extension(".json");
  atomic_write_file(csv_path, csv);
  write_report(twin.string(), j);

  std::cout << "scan: " << result.points.size() << " points (" << result.count_geometric
            << " geometric, " << result.count_factorial << " factorial-like, "
            << result.count_inconclusive << " inconclusive, " << result.count_failed
            << " failed), csv " << csv_path << ", json " << twin.string() << "\n";
  return result.count_failed == result.points.size() && !result.points.empty() ? 4 : 0;
}

int cmd_conserve(const CommonOpts& opts, std::vector<double> radii, double horizon,
                 double step) {
  LoadedInput in = load_input(opts);
  if (in.ring != RingId::Q)
    throw InvalidSystem("conserve integrates real trajectories; ring must be Q");

  Stage<Rational> st = run_stage<Rational>(in.doc);
  if (!st.verdict.nonisolated) {
    std::cout << "conserve: rejected, isolated at degree " << st.verdict.degree << "\n";
    return 3;
  }
  FactoredSystem<Rational> fs = shift_and_factor(st.spec, st.curve);
  FirstIntegral<Rational> h = compute_first_integral(fs);

  if (radii.empty()) radii = {1e-2, std::pow(10.0, -2.5), 1e-3};
  if (step <= 0.0) step = horizon / kDefaultProbeSteps;
  ConservationReport rep = conservation_probe(fs, h, radii, horizon, step);

  json j = stage_report(in, st);
  json probes = json::array();
  for (const auto& p : rep.probes)
    probes.push_back({{"r", format_double(p.radius)}, {"drift", format_double(p.drift)}});
  j["probes"] = std::move(probes);
  j["slope"] = format_double(rep.slope);
  j["fit_residual"] = format_double(rep.fit_residual);
  j["horizon"] = format_double(rep.horizon);
  j["step"] = format_double(rep.step);
  json dir = json::array();
  for (double u : rep.direction) dir.push_back(format_double(u));
  j["direction"] = std::move(dir);

  std::string path = default_output(opts, "conserve", "json");
  write_report(path, j);
  std::cout << "conserve: slope " << format_double(rep.slope) << " over " << radii.size()
            << " radii, report " << path << "\n";
  return 0;
}

int exit_code_for(const EngineError& e) {
  const std::string& kind = e.kind();
  if (kind == "parse_error" || kind == "invalid_system" || kind == "io_error") return 1;
  if (kind == "resonance_violation") return 2;
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formal first integrals near a singularity with one zero eigenvalue"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string grid;
  int jobs = 1;
  std::vector<double> radii;
  double horizon = 1.0;
  double step = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opts.input, "system JSON document")->required();
    sub->add_option("--output", opts.output,
                    "report path (default: $FIRSTINT_OUT_DIR or cwd)");
    sub->add_option("--degree", opts.degree, "override the working degree N");
    sub->add_option("--ring", opts.ring_override, "override the coefficient ring");
  };

  CLI::App* check = app.add_subcommand("check", "validate resonance and nonisolatedness");
  add_common(check);
  CLI::App* reduce = app.add_subcommand("reduce", "center-curve reduction and factoring");
  add_common(reduce);
  CLI::App* integral = app.add_subcommand("integral", "compute the first integral");
  add_common(integral);
  CLI::App* scan_cmd = app.add_subcommand("scan", "parameter-grid growth scan");
  add_common(scan_cmd);
  scan_cmd->add_option("--grid", grid, "axes as \"t1=lo:hi:steps,t2=...\"")->required();
  scan_cmd->add_option("--jobs", jobs, "worker threads for grid points");
  CLI::App* conserve = app.add_subcommand("conserve", "trajectory conservation probe");
  add_common(conserve);
  conserve->add_option("--radii", radii, "initial radii (default 1e-2 1e-2.5 1e-3)");
  conserve->add_option("--horizon", horizon, "integration horizon T");
  conserve->add_option("--step", step, "integrator step h (default T/2048)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opts);
    if (reduce->parsed()) return cmd_reduce(opts);
    if (integral->parsed()) return cmd_integral(opts);
    if (scan_cmd->parsed()) return cmd_scan(opts, grid, jobs);
    if (conserve->parsed()) return cmd_conserve(opts, radii, horizon, step);
  } catch (const ResonanceViolation& e) {
    json err{{"error", {{"kind", e.kind()}, {"message", e.what()}, {"mtilde", e.mtilde()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const EngineError& e) {
    json err{{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    json err{{"error", {{"kind", "unexpected"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 4;
  }
  return 1;
}
