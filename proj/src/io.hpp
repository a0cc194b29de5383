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

#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "robkit/discrimination.hpp"
#include "robkit/freesets.hpp"
#include "robkit/qcore.hpp"
#include "robkit/robustness.hpp"
#include "robkit/witness.hpp"

namespace robkit::io {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become kParse errors naming `source`,
/// line and column.
Json parse_document(const std::string& text, const std::string& source);

/// Reads a square complex matrix {"d", "re", "im"}; "im" may be omitted.
CMatrix matrix_from_json(const Json& j, const std::string& path);
/// Accepts the matrix form or the Bloch form {"d", "x"}.
DensityMatrix state_from_json(const Json& j, const std::string& path = "$");
FreeSet freeset_from_json(const Json& j, const std::string& path = "$");

Json to_json(const CMatrix& m);
Json to_json(const HermitianMatrix& m);
Json to_json(const DensityMatrix& m);
Json to_json(const BlochVector& x);
Json to_json(const FreeSet& set);
Json to_json(const RobustnessCertificate& cert);
Json to_json(const UnionRobustness& rob);
Json to_json(const ShiftedWitnessFamily& family);
Json to_json(const OutputState& out);
Json to_json(const ChannelEnsemble& ens);

/// Finite numbers as JSON numbers, infinities as "inf" / "-inf".
Json number(double v);

/// 64-bit FNV-1a hash of the compact dump, as 16 hex digits.
std::string config_hash(const Json& config);

}  // namespace robkit::io
