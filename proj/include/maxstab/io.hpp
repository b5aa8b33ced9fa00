// Copyright 2026 The maxstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAXSTAB_IO_HPP_
#define MAXSTAB_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxstab/bounds.hpp"
#include "maxstab/distances.hpp"
#include "maxstab/models.hpp"
#include "maxstab/norm.hpp"
#include "maxstab/spectral.hpp"

namespace maxstab::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Unknown fields are errors under `strict` and warnings otherwise.
struct ParseContext {
  bool strict = false;
  std::filesystem::path base_dir = ".";
  std::vector<std::string> warnings;
};

NormSpec norm_from_json(const json& j);
json to_json(const NormSpec& norm);

// {"dim", "alpha", "norm": {"kind", "p", "weights"}, "atoms": [[[point], w], ...]}
AngularMeasure measure_from_json(const json& j, ParseContext& ctx);
json to_json(const AngularMeasure& h);

struct ModelSpec {
  MaxStableModel model;
  std::optional<MarginSpec> margins;
};

ModelSpec model_from_json(const json& j, ParseContext& ctx);

struct PairSpec {
  std::string id;
  ModelSpec first;
  ModelSpec second;
};

// A pair document holds "first" and "second", each a model object or the
// path of a model document relative to the pair file.
PairSpec pair_from_json(const json& j, ParseContext& ctx);

json read_json_file(const std::filesystem::path& path);
ModelSpec load_model(const std::filesystem::path& path, ParseContext& ctx);
PairSpec load_pair(const std::filesystem::path& path, ParseContext& ctx);

json to_json(const BoundReport& r);
json to_json(const KolmogorovResult& r);
json to_json(const TransportPlan& plan);

}  // namespace maxstab::io

#endif  // MAXSTAB_IO_HPP_
