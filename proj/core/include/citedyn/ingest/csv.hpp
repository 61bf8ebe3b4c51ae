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

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace citedyn::ingest {

struct CsvRow {
  std::size_t line = 0;  // 1-based physical line where the record starts
  std::vector<std::string> fields;
};

// Minimal RFC 4180 reader: comma separated, optional double-quoted fields
// with "" escapes and embedded newlines, LF or CRLF record endings, and a
// leading UTF-8 byte order mark is skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, std::string source_name = "<csv>");

  // Returns false at end of input. Blank lines are skipped.
  bool next(CsvRow& row);

  const std::string& source_name() const { return source_name_; }

 private:
  std::istream& in_;
  std::string source_name_;
  std::size_t line_ = 1;
  bool first_ = true;
};

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

}  // namespace citedyn::ingest
