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

#include "citedyn/ingest/csv.hpp"

#include "citedyn/error.hpp"

namespace citedyn::ingest {

CsvReader::CsvReader(std::istream& in, std::string source_name)
    : in_(in), source_name_(std::move(source_name)) {}

bool CsvReader::next(CsvRow& row) {
  row.fields.clear();
  if (first_) {
    first_ = false;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        fail(ErrorKind::kParse,
             source_name_ + ":1: invalid byte order mark");
      }
    }
  }

  for (;;) {
    if (in_.peek() == std::char_traits<char>::eof()) return false;
    row.line = line_;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    bool any = false;
    for (;;) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        if (in_quotes) {
          fail(ErrorKind::kParse, source_name_ + ":" +
                                      std::to_string(row.line) +
                                      ": unterminated quoted field");
        }
        if (any || !field.empty() || was_quoted || !row.fields.empty()) {
          row.fields.push_back(std::move(field));
        }
        return !row.fields.empty();
      }
      const char ch = static_cast<char>(c);
      any = true;
      if (in_quotes) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"') {
        if (!field.empty() || was_quoted) {
          fail(ErrorKind::kParse, source_name_ + ":" + std::to_string(line_) +
                                      ": stray quote inside unquoted field");
        }
        in_quotes = true;
        was_quoted = true;
      } else if (ch == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (ch == '\r' || ch == '\n') {
        if (ch == '\r' && in_.peek() == '\n') in_.get();
        ++line_;
        row.fields.push_back(std::move(field));
        break;
      } else {
        if (was_quoted) {
          fail(ErrorKind::kParse, source_name_ + ":" + std::to_string(line_) +
                                      ": text after closing quote");
        }
        field.push_back(ch);
      }
    }
    // Skip blank lines.
    if (row.fields.size() == 1 && row.fields[0].empty()) {
      row.fields.clear();
      continue;
    }
    return true;
  }
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace citedyn::ingest
