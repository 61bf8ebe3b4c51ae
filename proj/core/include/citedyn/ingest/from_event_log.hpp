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

#include <string>

#include "citedyn/ingest/corpus.hpp"
#include "citedyn/urn/model.hpp"

namespace citedyn::ingest {

// Paper id used for simulated paper `id`: "p" + 8 zero-padded digits, so
// lexicographic order matches arrival order.
std::string simulated_paper_id(urn::PaperId id);

// One paper per simulated id with pub_year = base_year + arrival step and one
// edge per citation event. Seed papers get negative steps and
// in_discipline = false; arrivals are in the discipline.
Corpus corpus_from_event_log(const urn::EventLog& log, int base_year = 0);

}  // namespace citedyn::ingest
