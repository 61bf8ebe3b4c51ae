// Copyright 2026 The citedyn Authors
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

// Private JSON mapping for ModelParams, shared by the event log writer and
// the sweep configuration loader.

#include "citedyn/error.hpp"
#include "citedyn/urn/model.hpp"
#include "json.hpp"

namespace citedyn::detail {

inline nlohmann::json params_to_json(const urn::ModelParams& p) {
  nlohmann::json j;
  j["alpha"] = p.alpha;
  j["n0"] = p.arrival_scale();
  j["p"] = p.p;
  j["n_ref"] = p.n_ref;
  j["visibility_window"] = p.visibility_window;
  j["init_s_size"] = p.init_s_size;
  j["init_s_count_range"] = {p.init_s_count_range.min,
                             p.init_s_count_range.max};
  j["init_u_size"] = p.init_u_size;
  j["init_u_age_range"] = {p.init_u_age_range.min, p.init_u_age_range.max};
  j["target_total_papers"] = p.target_total_papers;
  j["seed"] = p.seed;
  return j;
}

// Overrides the fields present in `j`; unknown keys are rejected.
inline void apply_params_json(const nlohmann::json& j, urn::ModelParams& p) {
  if (!j.is_object()) fail(ErrorKind::kSchema, "model must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha") {
        p.alpha = value.get<double>();
      } else if (key == "n0") {
        if (value.is_null()) {
          p.n0.reset();
        } else {
          p.n0 = value.get<double>();
        }
      } else if (key == "p") {
        p.p = value.get<double>();
      } else if (key == "n_ref") {
        p.n_ref = value.get<int>();
      } else if (key == "visibility_window") {
        p.visibility_window = value.get<int>();
      } else if (key == "init_s_size") {
        p.init_s_size = value.get<int>();
      } else if (key == "init_s_count_range") {
        p.init_s_count_range = {value.at(0).get<int>(), value.at(1).get<int>()};
      } else if (key == "init_u_size") {
        p.init_u_size = value.get<int>();
      } else if (key == "init_u_age_range") {
        p.init_u_age_range = {value.at(0).get<int>(), value.at(1).get<int>()};
      } else if (key == "target_total_papers") {
        p.target_total_papers = value.get<std::uint64_t>();
      } else if (key == "seed") {
        p.seed = value.get<std::uint64_t>();
      } else {
        fail(ErrorKind::kSchema, "unknown model parameter '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSchema, std::string("bad model parameter: ") + e.what());
  }
}

}  // namespace citedyn::detail
