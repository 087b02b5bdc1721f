// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "quell/scalar.hpp"
#include "quell/schema.hpp"

namespace quell {

// One stored object: field name -> value, insertion-ordered. Row fields are
// few, so lookups scan.
struct Record {
  std::vector<std::pair<std::string, ScalarValue>> fields;

  const ScalarValue* find(const std::string& name) const;
  void set(std::string name, ScalarValue value);
};

// Deterministic in-memory store. Tables keep insertion order; relations live
// in link tables keyed "Type.field", one index list per owning row, which
// covers 1:1 (zero or one target), 1:n and n:m alike.
class DataSource {
 public:
  struct LinkTable {
    std::string target_type;
    std::vector<std::vector<size_t>> per_row;
  };

  void add_table(const std::string& type_name);
  size_t add_row(const std::string& type_name, Record record);
  void add_link(const std::string& link_key, const std::string& target_type,
                size_t from_row, size_t to_row);

  bool has_table(const std::string& type_name) const;
  const std::vector<Record>& rows(const std::string& type_name) const;
  std::vector<Record>& mutable_rows(const std::string& type_name);
  // Row indices linked from `from_row` through `link_key`; empty when the
  // link table does not exist.
  const std::vector<size_t>& linked(const std::string& link_key,
                                    size_t from_row) const;

  const std::map<std::string, std::vector<Record>>& tables() const {
    return tables_;
  }

  // Line-delimited JSON: one {"table", "id", "fields"} document per record
  // followed by one {"link", "from", "to"} document per relation edge, in
  // deterministic order. Dates serialize as RFC 3339 strings; the reader
  // needs the schema to re-type them. Referential integrity is validated on
  // read.
  void write_jsonl(std::ostream& out) const;
  static DataSource read_jsonl(std::istream& in, const Schema& schema);

 private:
  std::map<std::string, std::vector<Record>> tables_;
  std::map<std::string, LinkTable> links_;
};

// Deterministic period-tracking dataset: User 1:1 Profile, User 1:n Cycle,
// Cycle n:m Symptom. Record counts grow linearly with n_users and every user
// has at least one cycle. Identical (n_users, seed) pairs produce identical
// stores.
DataSource generate_dataset(int64_t n_users, uint64_t seed);

// The SDL the generated dataset conforms to (also shipped under configs/).
const std::string& default_schema_sdl();

}  // namespace quell
