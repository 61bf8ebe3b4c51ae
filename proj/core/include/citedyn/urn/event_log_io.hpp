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

#include <filesystem>
#include <iosfwd>

#include "citedyn/urn/model.hpp"

namespace citedyn::urn {

// Newline-delimited JSON. First record:
//   {"type":"header","params":{...},"seed":S,
//    "initial_cited":[[id,count],...],"initial_uncited":[[id,age],...]}
// then one record per step:
//   {"t":T,"arrivals":N,"papers":[{"id":I,"refs":[...],"flags":"RRD..."}]}
// flags holds one character per reference: R reinforced, D discovered,
// lower case when the draw fell back to that urn.
void write_event_log(const EventLog& log, std::ostream& out);
void write_event_log(const EventLog& log, const std::filesystem::path& path);

EventLog read_event_log(std::istream& in);
EventLog read_event_log(const std::filesystem::path& path);

}  // namespace citedyn::urn
