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

#include "robkit/robkit.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "commands.hpp"
#include "io.hpp"
#include "robkit/error.hpp"

struct rk_state {
  robkit::DensityMatrix rho;
};

struct rk_freeset {
  robkit::FreeSet set;
};

struct rk_result {
  rk_status status;
  double value;
  std::string json;
  std::vector<robkit::cmd::Artifact> artifacts;
};

namespace {

thread_local std::string g_last_error;

rk_status record(rk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes and messages.
template <typename F>
rk_status guarded(F&& body) {
  try {
    return body();
  } catch (const robkit::Error& e) {
    return record(static_cast<rk_status>(robkit::cmd::status_for(e)), e.what());
  } catch (const std::bad_alloc&) {
    return record(RK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(RK_ERR_INTERNAL, e.what());
  }
}

robkit::cmd::Config to_config(const rk_options* opts) {
  rk_options o;
  rk_options_init(&o);
  if (opts != nullptr) o = *opts;
  robkit::cmd::Config cfg;
  cfg.seed = o.seed;
  if (!std::isnan(o.tol)) cfg.tol = o.tol;
  cfg.cap_dim = o.cap_dim;
  cfg.n_flags = o.n_flags;
  if (!std::isnan(o.s)) cfg.s = o.s;
  cfg.n_samples = o.n_samples;
  return cfg;
}

rk_status publish(robkit::cmd::Output&& out, rk_result** result) {
  auto* r = new rk_result{static_cast<rk_status>(out.status), out.value,
                          out.report.dump(2) + "\n", std::move(out.artifacts)};
  *result = r;
  if (r->status != RK_OK) {
    const auto& rep = out.report;
    std::string why = "command finished with status " + std::to_string(r->status);
    if (rep.contains("reason") && rep["reason"].is_string())
      why = rep["reason"].get<std::string>();
    g_last_error = why;
  }
  return r->status;
}

bool check_out(void* out) {
  if (out == nullptr) {
    g_last_error = "output pointer is NULL";
    return false;
  }
  return true;
}

}  // namespace

extern "C" {

const char* rk_version(void) { return ROBKIT_VERSION; }

const char* rk_last_error(void) { return g_last_error.c_str(); }

void rk_options_init(rk_options* opts) {
  if (opts == nullptr) return;
  opts->seed = 1;
  opts->tol = std::numeric_limits<double>::quiet_NaN();
  opts->cap_dim = 4;
  opts->n_flags = 10000;
  opts->s = std::numeric_limits<double>::quiet_NaN();
  opts->n_samples = 1000;
}

rk_status rk_state_parse(const char* json, const char* source, rk_state** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (json == nullptr) return record(RK_ERR_INPUT, "state text is NULL");
  return guarded([&] {
    const auto doc = robkit::io::parse_document(json, source ? source : "<state>");
    *out = new rk_state{robkit::io::state_from_json(doc)};
    return RK_OK;
  });
}

rk_status rk_state_from_matrix(int d, const double* re, const double* im, rk_state** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (d < 2 || re == nullptr) return record(RK_ERR_INPUT, "need d >= 2 and real parts");
  return guarded([&] {
    robkit::CMatrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m(r, c) = robkit::Complex(re[r * d + c], im ? im[r * d + c] : 0.0);
    *out = new rk_state{robkit::DensityMatrix(m)};
    return RK_OK;
  });
}

int rk_state_dim(const rk_state* state) { return state ? state->rho.dim() : 0; }

void rk_state_destroy(rk_state* state) { delete state; }

rk_status rk_freeset_parse(const char* json, const char* source, rk_freeset** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (json == nullptr) return record(RK_ERR_INPUT, "free-set text is NULL");
  return guarded([&] {
    const auto doc = robkit::io::parse_document(json, source ? source : "<freeset>");
    *out = new rk_freeset{robkit::io::freeset_from_json(doc)};
    return RK_OK;
  });
}

rk_status rk_freeset_incoherent(int d, rk_freeset** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  return guarded([&] {
    *out = new rk_freeset{robkit::FreeSet({robkit::ConvexFreeSet::incoherent(d, "incoherent")})};
    return RK_OK;
  });
}

int rk_freeset_dim(const rk_freeset* set) { return set ? set->set.dim() : 0; }

size_t rk_freeset_size(const rk_freeset* set) { return set ? set->set.subsets().size() : 0; }

void rk_freeset_destroy(rk_freeset* set) { delete set; }

rk_status rk_robustness(const rk_state* state, const rk_freeset* set, const rk_options* opts,
                        rk_result** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (!state || !set) return record(RK_ERR_INPUT, "state or free set is NULL");
  return guarded([&] {
    return publish(robkit::cmd::robustness(state->rho, set->set, to_config(opts)), out);
  });
}

rk_status rk_witness(const rk_state* state, const rk_freeset* set, const rk_options* opts,
                     rk_result** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (!state || !set) return record(RK_ERR_INPUT, "state or free set is NULL");
  return guarded([&] {
    return publish(robkit::cmd::witness(state->rho, set->set, to_config(opts)), out);
  });
}

rk_status rk_discriminate(const rk_state* state, const rk_freeset* set, const char* mode,
                          const rk_options* opts, rk_result** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (!state || !set || !mode) return record(RK_ERR_INPUT, "state, free set or mode is NULL");
  return guarded([&] {
    return publish(robkit::cmd::discriminate(state->rho, set->set, mode, to_config(opts)), out);
  });
}

rk_status rk_verify(const char* suite, const rk_options* opts, rk_result** out) {
  if (!check_out(out)) return RK_ERR_INPUT;
  *out = nullptr;
  if (!suite) return record(RK_ERR_INPUT, "suite name is NULL");
  return guarded([&] { return publish(robkit::cmd::verify(suite, to_config(opts)), out); });
}

rk_status rk_result_status(const rk_result* result) {
  return result ? result->status : RK_ERR_INPUT;
}

double rk_result_value(const rk_result* result) {
  return result ? result->value : std::numeric_limits<double>::quiet_NaN();
}

const char* rk_result_json(const rk_result* result) {
  return result ? result->json.c_str() : nullptr;
}

size_t rk_result_artifact_count(const rk_result* result) {
  return result ? result->artifacts.size() : 0;
}

const char* rk_result_artifact_name(const rk_result* result, size_t index) {
  if (!result || index >= result->artifacts.size()) return nullptr;
  return result->artifacts[index].name.c_str();
}

const char* rk_result_artifact_data(const rk_result* result, size_t index) {
  if (!result || index >= result->artifacts.size()) return nullptr;
  return result->artifacts[index].data.c_str();
}

void rk_result_destroy(rk_result* result) { delete result; }

}  // extern "C"
