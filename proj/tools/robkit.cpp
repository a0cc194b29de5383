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

// Command-line front end over the robkit C interface.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "robkit/robkit.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitInput = 1;

struct Handles {
  rk_state* state = nullptr;
  rk_freeset* set = nullptr;
  rk_result* result = nullptr;
  ~Handles() {
    rk_result_destroy(result);
    rk_freeset_destroy(set);
    rk_state_destroy(state);
  }
};

int exit_code(rk_status status) {
  switch (status) {
    case RK_OK:
    case RK_ERR_INPUT:
    case RK_ERR_NOT_APPLICABLE:
    case RK_ERR_INVALID_REGIME:
    case RK_ERR_VERIFY_FAILED:
      return static_cast<int>(status);
    default:
      return kExitInput;
  }
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "robkit: error: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "robkit: error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

// Loads the two input files; prints the diagnostic and returns false on error.
bool load_inputs(const std::string& state_file, const std::string& set_file, Handles& h) {
  std::string text;
  if (!read_file(state_file, text)) return false;
  if (rk_state_parse(text.c_str(), state_file.c_str(), &h.state) != RK_OK) {
    std::cerr << "robkit: error: " << rk_last_error() << "\n";
    return false;
  }
  if (!read_file(set_file, text)) return false;
  if (rk_freeset_parse(text.c_str(), set_file.c_str(), &h.set) != RK_OK) {
    std::cerr << "robkit: error: " << rk_last_error() << "\n";
    return false;
  }
  return true;
}

// Writes the report and artifacts, prints a summary, and returns the exit code.
int finish(const std::string& command, rk_status status, const rk_result* result,
           const std::string& out_dir, bool svg) {
  if (result == nullptr) {
    std::cerr << "robkit: error: " << rk_last_error() << "\n";
    return exit_code(status);
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "robkit: error: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitInput;
  }
  const fs::path dir(out_dir);
  const fs::path report = dir / (command + "_report.json");
  if (!write_file(report, rk_result_json(result))) return kExitInput;
  std::cout << "report: " << report.string() << "\n";
  for (size_t i = 0; i < rk_result_artifact_count(result); ++i) {
    const std::string name = rk_result_artifact_name(result, i);
    if (!svg && fs::path(name).extension() == ".svg") continue;
    if (!write_file(dir / name, rk_result_artifact_data(result, i))) return kExitInput;
    std::cout << "wrote: " << (dir / name).string() << "\n";
  }
  if (status != RK_OK) std::cerr << "robkit: " << rk_last_error() << "\n";
  return exit_code(status);
}

void print_value(const char* label, double v) {
  if (std::isinf(v)) {
    std::printf("%s = inf\n", label);
  } else {
    std::printf("%s = %.10g\n", label, v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robkit: generalized robustness, multi-copy witnesses and discrimination advantage"};
  app.set_version_flag("--version", std::string(rk_version()));
  app.require_subcommand(1);
  app.fallthrough();

  rk_options opts;
  rk_options_init(&opts);
  std::string out_dir = ".";
  double tol = std::numeric_limits<double>::quiet_NaN();
  bool no_svg = false;

  app.add_option("--seed", opts.seed, "Sampling seed")->capture_default_str();
  app.add_option("--tol", tol,
                 "Robustness bisection width; for verify, overrides every check tolerance");
  app.add_option("--out", out_dir, "Directory for reports and artifacts")->capture_default_str();
  app.add_option("--cap-dim", opts.cap_dim, "Largest accepted dimension")
      ->capture_default_str()
      ->check(CLI::Range(2, 6));

  std::string state_file, set_file;

  auto* rob = app.add_subcommand("robustness", "Generalized robustness with certificates");
  rob->add_option("state", state_file, "State JSON")->required();
  rob->add_option("freeset", set_file, "Free-set JSON")->required();

  std::string s_text = "auto";
  auto* wit = app.add_subcommand("witness", "Shifted multi-copy witness family");
  wit->add_option("state", state_file, "State JSON")->required();
  wit->add_option("freeset", set_file, "Free-set JSON")->required();
  wit->add_option("--s", s_text, "Mixing parameter, or auto for 0.9 R")->capture_default_str();
  wit->add_option("--samples", opts.n_samples, "Free-state samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string mode = "worst-case";
  auto* dis = app.add_subcommand("discriminate", "Channel-discrimination advantage");
  dis->add_option("state", state_file, "State JSON")->required();
  dis->add_option("freeset", set_file, "Free-set JSON")->required();
  dis->add_option("--mode", mode, "qualitative or worst-case")
      ->capture_default_str()
      ->check(CLI::IsMember({"qualitative", "worst-case"}));
  dis->add_option("--N", opts.n_flags, "Flags in the worst-case ensemble")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  dis->add_option("--samples", opts.n_samples, "Free-state samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  dis->add_flag("--no-svg", no_svg, "Skip the SVG chart");

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run acceptance suites");
  ver->add_option("--suite", suite, "all, byrd, witness, duality or theorems")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  opts.tol = tol;

  Handles h;
  rk_status status = RK_OK;
  if (*rob) {
    if (!load_inputs(state_file, set_file, h)) return kExitInput;
    status = rk_robustness(h.state, h.set, &opts, &h.result);
    if (h.result) print_value("robustness", rk_result_value(h.result));
    return finish("robustness", status, h.result, out_dir, true);
  }
  if (*wit) {
    if (s_text != "auto") {
      try {
        std::size_t used = 0;
        opts.s = std::stod(s_text, &used);
        if (used != s_text.size()) throw std::invalid_argument(s_text);
      } catch (const std::exception&) {
        std::cerr << "robkit: error: --s expects a number or auto, got " << s_text << "\n";
        return kExitInput;
      }
    }
    if (!load_inputs(state_file, set_file, h)) return kExitInput;
    status = rk_witness(h.state, h.set, &opts, &h.result);
    if (status == RK_OK) print_value("delta", rk_result_value(h.result));
    return finish("witness", status, h.result, out_dir, true);
  }
  if (*dis) {
    if (!load_inputs(state_file, set_file, h)) return kExitInput;
    status = rk_discriminate(h.state, h.set, mode.c_str(), &opts, &h.result);
    if (status == RK_OK) print_value("advantage", rk_result_value(h.result));
    return finish("discriminate", status, h.result, out_dir, !no_svg);
  }
  status = rk_verify(suite.c_str(), &opts, &h.result);
  if (h.result) {
    const auto report = nlohmann::json::parse(rk_result_json(h.result));
    for (const auto& c : report["checks"]) {
      std::printf("[%d] %-34s %s  %s\n", c["criterion"].get<int>(),
                  c["name"].get<std::string>().c_str(), c["passed"].get<bool>() ? "PASS" : "FAIL",
                  c["detail"].get<std::string>().c_str());
    }
  }
  return finish("verify", status, h.result, out_dir, true);
}
