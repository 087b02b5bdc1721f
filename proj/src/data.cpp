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

#include "quell/data.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "quell/error.hpp"
#include "quell/json.hpp"
#include "quell/random.hpp"

namespace quell {

const ScalarValue* Record::find(const std::string& name) const {
  for (const auto& [key, value] : fields) {
    if (key == name) return &value;
  }
  return nullptr;
}

void Record::set(std::string name, ScalarValue value) {
  for (auto& [key, existing] : fields) {
    if (key == name) {
      existing = std::move(value);
      return;
    }
  }
  fields.emplace_back(std::move(name), std::move(value));
}

void DataSource::add_table(const std::string& type_name) {
  tables_.try_emplace(type_name);
}

size_t DataSource::add_row(const std::string& type_name, Record record) {
  auto& table = tables_[type_name];
  table.push_back(std::move(record));
  return table.size() - 1;
}

void DataSource::add_link(const std::string& link_key,
                          const std::string& target_type, size_t from_row,
                          size_t to_row) {
  LinkTable& table = links_[link_key];
  if (table.target_type.empty()) {
    table.target_type = target_type;
  } else if (table.target_type != target_type) {
    throw Error(ErrorKind::config, "link " + link_key +
                                       " cannot target both " +
                                       table.target_type + " and " +
                                       target_type);
  }
  if (table.per_row.size() <= from_row) table.per_row.resize(from_row + 1);
  table.per_row[from_row].push_back(to_row);
}

bool DataSource::has_table(const std::string& type_name) const {
  return tables_.count(type_name) != 0;
}

const std::vector<Record>& DataSource::rows(const std::string& type_name) const {
  static const std::vector<Record> empty;
  const auto it = tables_.find(type_name);
  return it == tables_.end() ? empty : it->second;
}

std::vector<Record>& DataSource::mutable_rows(const std::string& type_name) {
  return tables_[type_name];
}

const std::vector<size_t>& DataSource::linked(const std::string& link_key,
                                              size_t from_row) const {
  static const std::vector<size_t> empty;
  const auto it = links_.find(link_key);
  if (it == links_.end() || from_row >= it->second.per_row.size()) return empty;
  return it->second.per_row[from_row];
}

namespace {

std::string row_id(const Record& record, const std::string& type_name,
                   size_t index) {
  const ScalarValue* id = record.find("id");
  if (id == nullptr || !std::holds_alternative<std::string>(*id)) {
    throw Error(ErrorKind::config,
                type_name + " row " + std::to_string(index) +
                    " has no string id; the load format requires one");
  }
  return std::get<std::string>(*id);
}

}  // namespace

void DataSource::write_jsonl(std::ostream& out) const {
  for (const auto& [type_name, rows] : tables_) {
    for (size_t i = 0; i < rows.size(); ++i) {
      ojson doc;
      doc["table"] = type_name;
      doc["id"] = row_id(rows[i], type_name, i);
      ojson fields = ojson::object();
      for (const auto& [key, value] : rows[i].fields) {
        if (key == "id") continue;
        fields[key] = scalar_to_json(value);
      }
      doc["fields"] = std::move(fields);
      out << doc.dump() << "\n";
    }
  }
  for (const auto& [link_key, link] : links_) {
    const std::string owner = link_key.substr(0, link_key.find('.'));
    const auto owner_rows = tables_.find(owner);
    const auto target_rows = tables_.find(link.target_type);
    if (owner_rows == tables_.end() || target_rows == tables_.end()) continue;
    for (size_t from = 0; from < link.per_row.size(); ++from) {
      for (const size_t to : link.per_row[from]) {
        ojson doc;
        doc["link"] = link_key;
        doc["from"] = row_id(owner_rows->second[from], owner, from);
        doc["to"] = row_id(target_rows->second[to], link.target_type, to);
        out << doc.dump() << "\n";
      }
    }
  }
}

DataSource DataSource::read_jsonl(std::istream& in, const Schema& schema) {
  DataSource ds;
  std::map<std::string, std::unordered_map<std::string, size_t>> ids;
  struct PendingLink {
    std::string key, from, to;
    int line;
  };
  std::vector<PendingLink> pending;

  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) -> void {
    throw Error(ErrorKind::parse,
                "dataset line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const ojson doc = ojson::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) fail("not a JSON object");

    if (doc.contains("table")) {
      const std::string type_name = doc.value("table", "");
      const ObjectType* type = schema.type(type_name);
      if (type == nullptr) fail("unknown table " + type_name);
      if (!doc.contains("id") || !doc["id"].is_string()) {
        fail("record is missing a string id");
      }
      const std::string id = doc["id"].get<std::string>();
      Record record;
      record.set("id", id);
      if (doc.contains("fields")) {
        if (!doc["fields"].is_object()) fail("fields must be an object");
        for (const auto& [key, value] : doc["fields"].items()) {
          const FieldDef* field = type->field(key);
          if (field == nullptr) {
            fail(type_name + " has no field " + key);
          }
          if (!field->is_scalar() || field->type.list) {
            fail(type_name + "." + key + " is a relation, not a value field");
          }
          record.set(key, scalar_from_json(value, field->type.name));
        }
      }
      ds.add_table(type_name);
      const size_t row = ds.add_row(type_name, std::move(record));
      if (!ids[type_name].emplace(id, row).second) {
        fail("duplicate " + type_name + " id " + id);
      }
    } else if (doc.contains("link")) {
      if (!doc.contains("from") || !doc.contains("to") ||
          !doc["from"].is_string() || !doc["to"].is_string()) {
        fail("link needs string from and to ids");
      }
      pending.push_back({doc["link"].get<std::string>(),
                         doc["from"].get<std::string>(),
                         doc["to"].get<std::string>(), line_no});
    } else {
      fail("document is neither a record nor a link");
    }
  }

  for (const PendingLink& p : pending) {
    line_no = p.line;
    const size_t dot = p.key.find('.');
    if (dot == std::string::npos) fail("link key must be Type.field");
    const std::string owner_name = p.key.substr(0, dot);
    const ObjectType* owner = schema.type(owner_name);
    if (owner == nullptr) fail("link owner type " + owner_name + " unknown");
    const FieldDef* field = owner->field(p.key.substr(dot + 1));
    if (field == nullptr || field->is_scalar()) {
      fail("link key " + p.key + " does not name an object field");
    }
    const auto from_it = ids[owner_name].find(p.from);
    if (from_it == ids[owner_name].end()) {
      fail("link from unknown " + owner_name + " id " + p.from);
    }
    const auto to_it = ids[field->type.name].find(p.to);
    if (to_it == ids[field->type.name].end()) {
      fail("link to unknown " + field->type.name + " id " + p.to);
    }
    ds.add_link(p.key, field->type.name, from_it->second, to_it->second);
  }
  return ds;
}

DataSource generate_dataset(int64_t n_users, uint64_t seed) {
  if (n_users < 1) {
    throw Error(ErrorKind::parameter, "dataset needs at least one user");
  }
  RandomSource rng(seed);

  static const char* first_names[] = {
      "Aurelia", "Bianca",  "Carmen", "Delia",  "Esme",   "Fatima",
      "Greta",   "Halima",  "Ines",   "Jorunn", "Katla",  "Linnea",
      "Maren",   "Noor",    "Odette", "Priya",  "Quinn",  "Rosa",
      "Selma",   "Tamar",   "Uma",    "Vera",   "Wanda",  "Yuki"};
  static const char* last_names[] = {
      "Abel",    "Berger", "Castro", "Dudek",  "Egede",  "Farah",
      "Grieg",   "Hansen", "Iqbal",  "Juhasz", "Keller", "Lindt",
      "Moreau",  "Novak",  "Okafor", "Petrov", "Quist",  "Rahal",
      "Sandel",  "Tanaka", "Ueda",   "Voss",   "Weber",  "Zhou"};
  static const char* moods[] = {"calm",      "tired",   "irritable",
                                "cheerful",  "anxious", "cramping",
                                "energetic", "foggy",   "content"};
  static const char* contraception[] = {"none", "pill", "iud",
                                        "condom", "patch", "ring"};

  DataSource ds;
  ds.add_table("User");
  ds.add_table("Profile");
  ds.add_table("Cycle");
  ds.add_table("Symptom");

  const int64_t birth_lo = parse_rfc3339("1975-01-01");
  const int64_t birth_days = (parse_rfc3339("2006-12-31") - birth_lo) / 86400;
  const int64_t cycles_base = parse_rfc3339("2021-01-01");

  int64_t profile_seq = 0;
  int64_t cycle_seq = 0;
  int64_t symptom_seq = 0;

  for (int64_t u = 1; u <= n_users; ++u) {
    const std::string first = first_names[rng.uniform_int(0, 23)];
    const std::string last = last_names[rng.uniform_int(0, 23)];
    std::string email = first + "." + last + std::to_string(u) + "@example.org";
    for (char& c : email) c = char(std::tolower(uint8_t(c)));

    Record user;
    user.set("id", "u" + std::to_string(u));
    user.set("name", first + " " + last);
    user.set("email", std::move(email));
    user.set("birthDate",
             Date{birth_lo + rng.uniform_int(0, birth_days) * 86400});
    const size_t user_row = ds.add_row("User", std::move(user));

    // Most users carry a profile; a few do not, so nullable 1:1 links get
    // exercised.
    if (u % 7 != 3) {
      Record profile;
      profile.set("id", "p" + std::to_string(++profile_seq));
      profile.set("heightCm", rng.uniform_int(150, 185));
      profile.set("weightKg", double(rng.uniform_int(450, 900)) / 10.0);
      profile.set("contraception",
                  std::string(contraception[rng.uniform_int(0, 5)]));
      const size_t profile_row = ds.add_row("Profile", std::move(profile));
      ds.add_link("User.profile", "Profile", user_row, profile_row);
    }

    const int64_t n_cycles = 3 + rng.uniform_int(0, 9);
    int64_t start = cycles_base + rng.uniform_int(0, 365) * 86400;
    size_t prev_cycle_row = 0;
    for (int64_t c = 0; c < n_cycles; ++c) {
      const int64_t length_days = rng.uniform_int(24, 34);
      Record cycle;
      cycle.set("id", "c" + std::to_string(++cycle_seq));
      cycle.set("startDate", Date{start});
      cycle.set("lengthDays", length_days);
      const size_t cycle_row = ds.add_row("Cycle", std::move(cycle));
      ds.add_link("User.cycles", "Cycle", user_row, cycle_row);

      const int64_t n_symptoms = rng.uniform_int(2, 4);
      for (int64_t s = 0; s < n_symptoms; ++s) {
        Record symptom;
        symptom.set("id", "s" + std::to_string(++symptom_seq));
        symptom.set("pain", double(rng.uniform_int(0, 100)) / 10.0);
        symptom.set("mood", std::string(moods[rng.uniform_int(0, 8)]));
        symptom.set("recordedAt",
                    Date{start + rng.uniform_int(0, length_days - 1) * 86400 +
                         rng.uniform_int(0, 86399)});
        const size_t symptom_row = ds.add_row("Symptom", std::move(symptom));
        ds.add_link("Cycle.symptoms", "Symptom", cycle_row, symptom_row);
        // Every fifth symptom also belongs to the user's previous cycle,
        // which makes the relation properly n:m.
        if (symptom_seq % 5 == 0 && c > 0) {
          ds.add_link("Cycle.symptoms", "Symptom", prev_cycle_row, symptom_row);
        }
      }
      prev_cycle_row = cycle_row;
      start += rng.uniform_int(24, 34) * 86400;
    }
  }
  return ds;
}

const std::string& default_schema_sdl() {
  static const std::string sdl = R"(directive @suppress on FIELD_DEFINITION
directive @generalize on FIELD_DEFINITION
directive @noise on FIELD_DEFINITION
directive @hash on FIELD_DEFINITION
directive @noop on FIELD_DEFINITION

scalar Date

type Query {
  users: [User!]
  cycles: [Cycle!]
  symptoms: [Symptom!]
}

type User {
  id: ID!
  name: String @suppress
  email: String @hash
  birthDate: Date @generalize
  profile: Profile
  cycles: [Cycle!]
}

type Profile {
  id: ID!
  heightCm: Int @noise
  weightKg: Float @noise
  contraception: String @suppress
}

type Cycle {
  id: ID!
  startDate: Date @generalize
  lengthDays: Int @noise
  symptoms: [Symptom!]
}

type Symptom {
  id: ID!
  pain: Float @noise
  mood: String @generalize
  recordedAt: Date @generalize @noise
}
)";
  return sdl;
}

}  // namespace quell
