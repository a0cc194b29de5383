// Copyright 2026 The robkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "robkit/discrimination.hpp"
#include "robkit/error.hpp"
#include "robkit/robustness.hpp"
#include "robkit/witness.hpp"
#include "verify.hpp"

#ifndef ROBKIT_VERSION
#define ROBKIT_VERSION "0.0.0"
#endif

namespace robkit::cmd {
namespace {

using io::Json;

Limits limits_for(const Config& cfg) {
  require(cfg.cap_dim >= 2 && cfg.cap_dim <= 6, ErrorKind::kInvalidArgument,
          "cap-dim must lie between 2 and 6");
  Limits lim;
  lim.max_dim = cfg.cap_dim;
  std::size_t cap = 1;
  for (int i = 0; i < cfg.cap_dim; ++i) cap *= static_cast<std::size_t>(cfg.cap_dim);
  lim.operator_cap = cap;
  return lim;
}

RobustnessOptions robustness_options(const Config& cfg) {
  RobustnessOptions ro;
  if (cfg.tol) {
    require(*cfg.tol > 0.0, ErrorKind::kInvalidArgument, "tolerance must be positive");
    ro.s_tol = *cfg.tol;
  }
  return ro;
}

void check_inputs(const DensityMatrix& rho, const FreeSet& set, const Config& cfg) {
  const Limits lim = limits_for(cfg);
  require(rho.dim() == set.dim(), ErrorKind::kDimensionMismatch,
          "state has dimension " + std::to_string(rho.dim()) + " but the free set has " +
              std::to_string(set.dim()));
  require(rho.dim() <= lim.max_dim, ErrorKind::kSizeCap,
          "dimension " + std::to_string(rho.dim()) + " exceeds cap-dim " +
              std::to_string(lim.max_dim));
  require(cfg.n_samples >= 1, ErrorKind::kInvalidArgument, "sample count must be positive");
}

Json config_json(const std::string& command, const Config& cfg) {
  return Json{{"command", command},
              {"seed", cfg.seed},
              {"tol", cfg.tol ? Json(*cfg.tol) : Json(nullptr)},
              {"cap_dim", cfg.cap_dim},
              {"N", cfg.n_flags},
              {"s", cfg.s ? Json(*cfg.s) : Json("auto")},
              {"samples", cfg.n_samples}};
}

Json header(const std::string& command, Json config) {
  return Json{{"command", command},
              {"version", ROBKIT_VERSION},
              {"seed", config["seed"]},
              {"config_hash", io::config_hash(config)},
              {"config", std::move(config)}};
}

Json with_inputs(Json config, const DensityMatrix& rho, const FreeSet& set) {
  config["state"] = io::to_json(rho);
  config["freeset"] = io::to_json(set);
  return config;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double min_cert_S(const DensityMatrix& rho, double s, const DensityMatrix& sigma) {
  double out = std::numeric_limits<double>::infinity();
  for (int m = 2; m <= rho.dim(); ++m) out = std::min(out, shifted_S(rho, s, sigma, m));
  return out;
}

Output worst_case(const DensityMatrix& rho, const FreeSet& set, const Config& cfg,
                  Json base) {
  require(cfg.n_flags >= 2, ErrorKind::kInvalidArgument, "N must be at least 2");
  Output out;
  const UnionRobustness rob = robustness_union(rho, set, robustness_options(cfg));
  out.report = std::move(base);
  out.report["mode"] = "worst-case";
  out.report["robustness"] = io::number(rob.value);
  if (!std::isfinite(rob.value)) {
    out.status = kNotApplicable;
    out.value = rob.value;
    out.report["reason"] = "robustness is infinite; no finite advantage target";
    return out;
  }

  const std::vector<int> ns = sweep_points(cfg.n_flags);
  std::vector<std::string> labels;
  std::vector<std::vector<double>> ratios;
  std::ostringstream sweep;
  sweep << "subset,target,achieved,N,margin\n";
  Json per = Json::array();
  double achieved_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < set.subsets().size(); ++k) {
    const auto& cert = rob.per_subset[k];
    const double target = 1.0 + cert.value;
    HermitianMatrix x = cert.dual_x;
    if (!(x.operator_norm() > 1e-12)) x = HermitianMatrix::identity(rho.dim());
    labels.push_back(cert.subset_label);
    ratios.emplace_back();
    double at_n = 0.0;
    for (int n : ns) {
      const ChannelEnsemble ens = achieving_ensemble(x, n);
      const double a = fixed_task_advantage(rho, set.subsets()[k], ens, FlagDecision::identity(n));
      ratios.back().push_back(a / target);
      sweep << csv_field(cert.subset_label) << ',' << csv_number(target) << ',' << csv_number(a) << ','
            << n << ',' << csv_number(a - target) << '\n';
      if (n == cfg.n_flags) at_n = a;
    }
    achieved_min = std::min(achieved_min, at_n);
    per.push_back(Json{{"subset", cert.subset_label},
                       {"robustness", io::number(cert.value)},
                       {"target", io::number(target)},
                       {"achieved", at_n},
                       {"margin", at_n - target},
                       {"dual_X", io::to_json(cert.dual_x)}});
  }
  const double target = 1.0 + rob.value;
  const double tol = target * (2.0 / cfg.n_flags + 1e-6);
  out.value = achieved_min;
  out.report["target"] = target;
  out.report["achieved"] = achieved_min;
  out.report["margin"] = achieved_min - target;
  out.report["tolerance"] = tol;
  out.report["passed"] = std::abs(achieved_min - target) <= tol;
  out.report["N"] = cfg.n_flags;
  out.report["samples"] = 0;
  out.report["per_subset"] = std::move(per);

  std::ostringstream main;
  main << "subset,target,achieved,N,margin\n";
  for (const auto& row : out.report["per_subset"])
    main << csv_field(row["subset"].get<std::string>()) << ','
         << csv_number(row["target"].is_number() ? row["target"].get<double>()
                                                 : std::numeric_limits<double>::infinity())
         << ',' << csv_number(row["achieved"].get<double>()) << ',' << cfg.n_flags << ','
         << csv_number(row["margin"].get<double>()) << '\n';
  main << "union," << csv_number(target) << ',' << csv_number(achieved_min) << ','
       << cfg.n_flags << ',' << csv_number(achieved_min - target) << '\n';
  out.artifacts.push_back({"advantage.csv", main.str()});
  out.artifacts.push_back({"advantage_sweep.csv", sweep.str()});
  out.artifacts.push_back({"advantage_sweep.svg", sweep_svg(labels, ns, ratios)});
  return out;
}

Output qualitative(const DensityMatrix& rho, const FreeSet& set, const Config& cfg,
                   Json base) {
  Output out;
  out.report = std::move(base);
  out.report["mode"] = "qualitative";
  const double r = robustness_union(rho, set, robustness_options(cfg)).value;
  out.report["robustness"] = io::number(r);
  if (!(r > 0.0) || !std::isfinite(r)) {
    out.status = kNotApplicable;
    out.value = r;
    out.report["reason"] = r > 0.0 ? "robustness is infinite"
                                   : "state is free; no advantage to certify";
    return out;
  }
  const QualitativeReport rep =
      verify_qualitative_advantage(rho, set, cfg.n_samples, cfg.seed, 0.9, limits_for(cfg));
  out.value = rep.min_ratio;
  out.report["s"] = rep.s;
  out.report["target"] = rep.target;
  out.report["achieved"] = rep.min_ratio;
  out.report["margin"] = rep.margin;
  out.report["std_error"] = rep.std_error;
  out.report["spread_error"] = rep.spread_error;
  out.report["samples"] = rep.samples;
  out.report["heuristic"] = rep.heuristic;
  out.report["passed"] = rep.passed();
  if (rep.worst_sigma) out.report["worst_sigma"] = io::to_json(*rep.worst_sigma);
  return out;
}

}  // namespace

Status status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidDimension:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kSizeCap:
    case ErrorKind::kInvalidArgument:
      return kInputError;
    case ErrorKind::kNotApplicable:
      return kNotApplicable;
    case ErrorKind::kNumeric:
    case ErrorKind::kConstruction:
    case ErrorKind::kCertificateQuality:
      return kNumericError;
  }
  return kInternalError;
}

std::vector<int> sweep_points(int n) {
  std::vector<int> out{10, 100, 1000};
  out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Output robustness(const DensityMatrix& rho, const FreeSet& set, const Config& cfg) {
  check_inputs(rho, set, cfg);
  const Json config = with_inputs(config_json("robustness", cfg), rho, set);
  const UnionRobustness rob = robustness_union(rho, set, robustness_options(cfg));
  Output out;
  out.report = header("robustness", config);
  out.report["result"] = io::to_json(rob);
  out.value = rob.value;
  if (!std::isfinite(rob.value)) {
    out.status = kNotApplicable;
    out.report["reason"] = "robustness exceeds the search cap and is reported as inf";
  }
  return out;
}

Output witness(const DensityMatrix& rho, const FreeSet& set, const Config& cfg) {
  check_inputs(rho, set, cfg);
  const Limits lim = limits_for(cfg);
  const Json config = with_inputs(config_json("witness", cfg), rho, set);
  const UnionRobustness rob = robustness_union(rho, set, robustness_options(cfg));
  Output out;
  out.report = header("witness", config);
  out.report["robustness"] = io::number(rob.value);
  if (!(rob.value > 0.0) || !std::isfinite(rob.value)) {
    out.status = kNotApplicable;
    out.value = rob.value;
    out.report["valid"] = false;
    out.report["reason"] = rob.value > 0.0 ? "robustness is infinite"
                                           : "state is free; nothing to witness";
    return out;
  }
  if (cfg.s) require(*cfg.s > 0.0, ErrorKind::kInvalidArgument, "s must be positive");
  const double s = cfg.s ? *cfg.s : 0.9 * rob.value;
  out.report["s"] = s;
  out.report["s_auto"] = !cfg.s.has_value();

  if (s >= rob.value) {
    const double ms = min_cert_S(rho, s, rob.best().sigma);
    out.status = kInvalidRegime;
    out.value = ms;
    out.report["valid"] = false;
    out.report["certificate_sigma"] = io::to_json(rob.best().sigma);
    out.report["certificate_min_S"] = ms;
    out.report["reason"] =
        "s is not below the robustness: the certificate's free state keeps every "
        "shifted S_m nonnegative, so any positive shift detects a free state";
    return out;
  }

  const WitnessFamily base = build_witness_family(rho, s, lim);
  DeltaEstimate est{0.0, {}, false, 0, std::nullopt};
  try {
    est = compute_deltas(base, set, cfg.n_samples, cfg.seed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotApplicable) throw;
    out.status = kInvalidRegime;
    out.value = 0.0;
    out.report["valid"] = false;
    out.report["reason"] = e.what();
    return out;
  }
  const ShiftedWitnessFamily fam = shift_family(base, est.deltas, 1.0);

  Json rho_values = Json::object();
  for (const auto& [m, w] : fam.members)
    rho_values[std::to_string(m)] = multicopy_expectation(w, rho, m);
  double worst = std::numeric_limits<double>::infinity();
  int checked = 0;
  const auto check = [&](const DensityMatrix& sigma) {
    worst = std::min(worst, max_expectation(fam, sigma));
    ++checked;
  };
  for (const auto& sample : sample_free(set, cfg.n_samples, cfg.seed + 1)) check(sample.state);
  for (const auto& k : set.subsets())
    for (const auto& v : k.extreme_points()) check(v);
  if (est.maximizer) check(*est.maximizer);
  const bool detects = detect(fam, rho);
  const bool valid = detects && worst >= 0.0;

  out.value = est.delta;
  out.report["delta"] = est.delta;
  out.report["heuristic"] = !est.exact;
  out.report["evaluated"] = est.evaluated;
  out.report["rho_values"] = std::move(rho_values);
  out.report["detects_rho"] = detects;
  out.report["free_checked"] = checked;
  out.report["min_free_max_expectation"] = worst;
  out.report["valid"] = valid;
  if (!valid) out.status = kInvalidRegime;
  out.artifacts.push_back({"witness.json", io::to_json(fam).dump(2) + "\n"});
  return out;
}

Output discriminate(const DensityMatrix& rho, const FreeSet& set, const std::string& mode,
                    const Config& cfg) {
  check_inputs(rho, set, cfg);
  require(mode == "worst-case" || mode == "qualitative", ErrorKind::kInvalidArgument,
          "mode must be worst-case or qualitative");
  Json config = with_inputs(config_json("discriminate", cfg), rho, set);
  config["mode"] = mode;
  Json base = header("discriminate", config);
  return mode == "worst-case" ? worst_case(rho, set, cfg, std::move(base))
                              : qualitative(rho, set, cfg, std::move(base));
}

Output verify(const std::string& suite, const Config& cfg) {
  require(oracle::is_suite(suite), ErrorKind::kInvalidArgument,
          "unknown suite \"" + suite + "\"");
  Json config = config_json("verify", cfg);
  config["suite"] = suite;
  oracle::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.tol = cfg.tol;
  const auto checks = oracle::run_suite(suite, sc);
  Output out;
  out.report = header("verify", config);
  out.report["suite"] = suite;
  Json arr = Json::array();
  int failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    arr.push_back(Json{{"criterion", c.criterion},
                       {"name", c.name},
                       {"passed", c.passed},
                       {"measured", io::number(c.measured)},
                       {"tolerance", io::number(c.tolerance)},
                       {"detail", c.detail}});
  }
  out.report["checks"] = std::move(arr);
  out.report["passed"] = static_cast<int>(checks.size()) - failed;
  out.report["failed"] = failed;
  out.value = failed;
  if (failed > 0) out.status = kVerifyFailed;
  return out;
}

std::string sweep_svg(const std::vector<std::string>& labels, const std::vector<int>& ns,
                      const std::vector<std::vector<double>>& ratios) {
  constexpr double kW = 640, kH = 400, kL = 70, kR = 150, kT = 30, kB = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  double ylo = 1.0, yhi = 0.0;
  for (const auto& row : ratios)
    for (double v : row) {
      if (!std::isfinite(v)) continue;
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  if (yhi <= ylo) yhi = ylo + 1e-3;
  const double pad = 0.05 * (yhi - ylo);
  ylo -= pad;
  yhi += pad;
  const double xlo = std::log10(static_cast<double>(ns.front()));
  double xhi = std::log10(static_cast<double>(ns.back()));
  if (xhi <= xlo) xhi = xlo + 1.0;
  const auto px = [&](double n) {
    return kL + (std::log10(n) - xlo) / (xhi - xlo) * (kW - kL - kR);
  };
  const auto py = [&](double v) { return kT + (yhi - v) / (yhi - ylo) * (kH - kT - kB); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\""
      << kH - kB << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n";
  for (int n : ns)
    svg << "<text x=\"" << fixed(px(n), 1) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\">" << n << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = ylo + (yhi - ylo) * i / 4.0;
    svg << "<text x=\"" << kL - 6 << "\" y=\"" << fixed(py(v) + 4, 1)
        << "\" text-anchor=\"end\">" << fixed(v, 4) << "</text>\n";
  }
  svg << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10
      << "\" text-anchor=\"middle\">N (flags)</text>\n";
  svg << "<text x=\"16\" y=\"" << (kT + kH - kB) / 2 << "\" transform=\"rotate(-90 16 "
      << (kT + kH - kB) / 2 << ")\" text-anchor=\"middle\">achieved / target</text>\n";
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const char* color = kColors[k % 5];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (!std::isfinite(ratios[k][i])) continue;
      svg << fixed(px(ns[i]), 1) << ',' << fixed(py(ratios[k][i]), 1) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kW - kR + 10 << "\" y=\"" << kT + 16 * (k + 1) << "\" fill=\""
        << color << "\">" << xml_escape(labels[k]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace robkit::cmd
