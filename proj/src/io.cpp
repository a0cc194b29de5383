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

#include "io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "robkit/error.hpp"

namespace robkit::io {
namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::kParse, "at " + path + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double real_at(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  bad(path, "expected a number");
}

int int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Runs `f`; library errors are re-raised as parse errors located at `path`.
template <typename F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    bad(path, e.what());
  }
}

RMatrix real_grid(const Json& j, int d, const std::string& path) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(d))
    bad(path, "expected " + std::to_string(d) + " rows");
  RMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const std::string rp = index_path(path, static_cast<std::size_t>(r));
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      bad(rp, "expected " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) {
      const std::string cp = index_path(rp, static_cast<std::size_t>(c));
      const double v = real_at(row[static_cast<std::size_t>(c)], cp);
      if (!std::isfinite(v)) bad(cp, "matrix entries must be finite");
      out(r, c) = v;
    }
  }
  return out;
}

}  // namespace

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    if (cut != std::string::npos) what = what.substr(cut);
    fail(ErrorKind::kParse, source + ":" + std::to_string(line) + ":" +
                                std::to_string(col) + ": " + what);
  }
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  const int d = int_at(field(j, "d", path), path + ".d");
  if (d < 1) bad(path + ".d", "dimension must be positive");
  const RMatrix re = real_grid(field(j, "re", path), d, path + ".re");
  RMatrix im = RMatrix::Zero(d, d);
  if (j.contains("im") && !j["im"].is_null()) im = real_grid(j["im"], d, path + ".im");
  CMatrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = Complex(re(r, c), im(r, c));
  return out;
}

DensityMatrix state_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  if (j.contains("x")) {
    const int d = int_at(field(j, "d", path), path + ".d");
    if (d < 2) bad(path + ".d", "dimension must be at least 2");
    const Json& xs = j["x"];
    const auto n = static_cast<std::size_t>(d * d - 1);
    if (!xs.is_array() || xs.size() != n)
      bad(path + ".x", "expected " + std::to_string(n) + " Bloch coordinates");
    BlochVector x{d, RVector(static_cast<Eigen::Index>(n))};
    for (std::size_t i = 0; i < n; ++i)
      x.coords(static_cast<Eigen::Index>(i)) = real_at(xs[i], index_path(path + ".x", i));
    return located(path, [&] { return DensityMatrix(state_from_bloch(x)); });
  }
  const CMatrix m = matrix_from_json(j, path);
  return located(path, [&] { return DensityMatrix(m); });
}

FreeSet freeset_from_json(const Json& j, const std::string& path) {
  const int d = int_at(field(j, "d", path), path + ".d");
  if (d < 2) bad(path + ".d", "dimension must be at least 2");
  const Json& subs = field(j, "subsets", path);
  const std::string sp = path + ".subsets";
  if (!subs.is_array() || subs.empty()) bad(sp, "expected a nonempty array");
  std::vector<ConvexFreeSet> out;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const std::string kp = index_path(sp, k);
    const Json& sub = subs[k];
    const Json& kind = field(sub, "kind", kp);
    std::string label = "subset" + std::to_string(k);
    if (sub.contains("label")) {
      if (!sub["label"].is_string()) bad(kp + ".label", "expected a string");
      label = sub["label"].get<std::string>();
    }
    if (kind == "polytope") {
      const Json& verts = field(sub, "vertices", kp);
      if (!verts.is_array() || verts.empty())
        bad(kp + ".vertices", "expected a nonempty array of matrices");
      std::vector<DensityMatrix> vs;
      for (std::size_t i = 0; i < verts.size(); ++i) {
        const std::string vp = index_path(kp + ".vertices", i);
        DensityMatrix v = state_from_json(verts[i], vp);
        if (v.dim() != d) bad(vp, "vertex dimension differs from d");
        vs.push_back(std::move(v));
      }
      out.push_back(located(kp, [&] { return ConvexFreeSet::polytope(vs, label); }));
    } else if (kind == "incoherent") {
      if (!sub.contains("basis") || sub["basis"].is_null()) {
        out.push_back(ConvexFreeSet::incoherent(d, label));
      } else {
        const CMatrix basis = matrix_from_json(sub["basis"], kp + ".basis");
        if (basis.rows() != d) bad(kp + ".basis", "basis dimension differs from d");
        out.push_back(located(kp + ".basis",
                              [&] { return ConvexFreeSet::incoherent(basis, label); }));
      }
    } else {
      bad(kp + ".kind", "expected \"polytope\" or \"incoherent\"");
    }
  }
  return located(path, [&] { return FreeSet(std::move(out)); });
}

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(v)) return Json("nan");
  return Json(v);
}

Json to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      // Normalize signed zeros so dumps are stable.
      rr.push_back(m(r, c).real() + 0.0);
      ii.push_back(m(r, c).imag() + 0.0);
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"d", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }
Json to_json(const DensityMatrix& m) { return to_json(m.matrix()); }

Json to_json(const BlochVector& x) {
  Json xs = Json::array();
  for (Eigen::Index i = 0; i < x.coords.size(); ++i) xs.push_back(x.coords(i) + 0.0);
  return Json{{"d", x.dim}, {"x", std::move(xs)}};
}

Json to_json(const FreeSet& set) {
  Json subs = Json::array();
  for (const auto& k : set.subsets()) {
    Json s{{"label", k.label()}};
    if (k.kind() == SubsetKind::kIncoherent) {
      s["kind"] = "incoherent";
      s["basis"] = to_json(k.basis());
      s["vertices"] = nullptr;
    } else {
      s["kind"] = "polytope";
      s["basis"] = nullptr;
      Json vs = Json::array();
      for (const auto& v : k.extreme_points()) vs.push_back(to_json(v));
      s["vertices"] = std::move(vs);
    }
    subs.push_back(std::move(s));
  }
  return Json{{"d", set.dim()}, {"subsets", std::move(subs)}};
}

Json to_json(const RobustnessCertificate& cert) {
  return Json{{"value", number(cert.value)},
              {"sigma", to_json(cert.sigma)},
              {"tau", cert.tau ? to_json(*cert.tau) : Json(nullptr)},
              {"dual_X", to_json(cert.dual_x)},
              {"subset", cert.subset_label},
              {"gap", number(cert.gap)},
              {"dual_value", number(cert.dual_value)}};
}

Json to_json(const UnionRobustness& rob) {
  Json per = Json::array();
  for (const auto& c : rob.per_subset) per.push_back(to_json(c));
  return Json{{"value", number(rob.value)},
              {"subset", rob.best().subset_label},
              {"best_index", rob.best_index},
              {"certificate", to_json(rob.best())},
              {"per_subset", std::move(per)}};
}

Json to_json(const ShiftedWitnessFamily& family) {
  Json deltas = Json::object();
  Json members = Json::object();
  for (const auto& [m, v] : family.deltas) deltas[std::to_string(m)] = v;
  for (const auto& [m, w] : family.members) members[std::to_string(m)] = to_json(w);
  return Json{{"s", family.base.s},
              {"C", family.c},
              {"deltas", std::move(deltas)},
              {"members", std::move(members)}};
}

Json to_json(const OutputState& out) {
  if (const auto* dense = std::get_if<DensityMatrix>(&out)) return to_json(*dense);
  const auto& fs = std::get<FlagState>(out);
  Json entries = Json::array();
  for (const auto& [f, v] : fs.entries()) entries.push_back(Json::array({f, v}));
  return Json{{"flags", fs.dim()}, {"background", fs.background()},
              {"entries", std::move(entries)}};
}

Json to_json(const ChannelEnsemble& ens) {
  Json chans = Json::array();
  for (const auto& ch : ens.channels()) {
    Json c;
    if (ch.kind() == Channel::Kind::kConstant) {
      c["kind"] = "const";
      c["effects"] = nullptr;
      c["outputs"] = nullptr;
      c["output"] = to_json(ch.outputs().front());
    } else {
      c["kind"] = "mp";
      Json effects = Json::array();
      Json outputs = Json::array();
      for (const auto& e : ch.effects()) effects.push_back(to_json(e));
      for (const auto& o : ch.outputs()) outputs.push_back(to_json(o));
      c["effects"] = std::move(effects);
      c["outputs"] = std::move(outputs);
      c["output"] = nullptr;
    }
    chans.push_back(std::move(c));
  }
  return Json{{"priors", ens.priors()}, {"channels", std::move(chans)}};
}

std::string config_hash(const Json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace robkit::io
