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
//
// Python bindings over the main operations: the reduction transforms, the
// schema/policy loaders and the query engine. Dates cross the boundary as
// RFC 3339 strings, responses as plain dicts/lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "quell/data.hpp"
#include "quell/engine.hpp"
#include "quell/jwt.hpp"
#include "quell/policy.hpp"
#include "quell/query.hpp"
#include "quell/reduce.hpp"
#include "quell/schema.hpp"

namespace py = pybind11;
using namespace quell;

namespace {

DateUnit unit_from(const std::string& name) {
  const auto unit = date_unit_from_name(name);
  if (!unit) {
    throw Error(ErrorKind::parameter, "unknown date unit '" + name + "'");
  }
  return *unit;
}

NoiseParams noise_params_from(const std::string& distribution,
                              const std::map<std::string, double>& params,
                              const std::string& date_unit) {
  NoiseParams n;
  n.distribution = distribution;
  n.dist_params = params;
  n.date_unit = unit_from(date_unit);
  n.validate();
  return n;
}

py::object json_to_py(const ojson& v) {
  if (v.is_null()) return py::none();
  if (v.is_boolean()) return py::bool_(v.get<bool>());
  if (v.is_number_integer()) return py::int_(v.get<int64_t>());
  if (v.is_number_float()) return py::float_(v.get<double>());
  if (v.is_string()) return py::str(v.get<std::string>());
  if (v.is_array()) {
    py::list out;
    for (const auto& item : v) out.append(json_to_py(item));
    return out;
  }
  py::dict out;
  for (const auto& [key, item] : v.items()) {
    out[py::str(key)] = json_to_py(item);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(quell, m) {
  m.doc() =
      "Role-aware response reduction: suppression, generalization, noising "
      "and hashing over scalar values, plus the schema/policy-driven query "
      "engine behind the gateway.";

  py::register_exception<Error>(m, "QuellError");

  py::class_<RandomSource>(m, "RandomSource",
                           "Deterministic sample source for the noise family.")
      .def(py::init<uint64_t>(), py::arg("seed"));

  m.def(
      "generalize_number",
      [](int64_t value, double step) {
        GeneralizationParams p;
        p.step = step;
        return std::get<int64_t>(generalize_number(ScalarValue{value}, p));
      },
      py::arg("value"), py::arg("step"));
  m.def(
      "generalize_number",
      [](double value, double step) {
        GeneralizationParams p;
        p.step = step;
        return std::get<double>(generalize_number(ScalarValue{value}, p));
      },
      py::arg("value"), py::arg("step"));

  m.def(
      "generalize_string",
      [](const std::string& value, int64_t visible_count,
         const std::string& mask_char) {
        GeneralizationParams p;
        p.visible_count = visible_count;
        p.mask_char = mask_char;
        return std::get<std::string>(
            generalize_string(ScalarValue{value}, p));
      },
      py::arg("value"), py::arg("visible_count"), py::arg("mask_char") = "*");

  m.def(
      "generalize_date",
      [](const std::string& value, const std::string& unit) {
        GeneralizationParams p;
        p.unit = unit_from(unit);
        const ScalarValue out =
            generalize_date(ScalarValue{Date{parse_rfc3339(value)}}, p);
        return format_rfc3339(std::get<Date>(out).seconds);
      },
      py::arg("value"), py::arg("unit"));

  m.def(
      "noise_number",
      [](int64_t value, const std::string& distribution,
         const std::map<std::string, double>& params, RandomSource& rng) {
        return std::get<int64_t>(noise_number(
            ScalarValue{value}, noise_params_from(distribution, params, "second"),
            rng));
      },
      py::arg("value"), py::arg("distribution"), py::arg("params"),
      py::arg("rng"));
  m.def(
      "noise_number",
      [](double value, const std::string& distribution,
         const std::map<std::string, double>& params, RandomSource& rng) {
        return std::get<double>(noise_number(
            ScalarValue{value}, noise_params_from(distribution, params, "second"),
            rng));
      },
      py::arg("value"), py::arg("distribution"), py::arg("params"),
      py::arg("rng"));

  m.def(
      "noise_date",
      [](const std::string& value, const std::string& distribution,
         const std::map<std::string, double>& params,
         const std::string& date_unit, RandomSource& rng) {
        const ScalarValue out = noise_date(
            ScalarValue{Date{parse_rfc3339(value)}},
            noise_params_from(distribution, params, date_unit), rng);
        return format_rfc3339(std::get<Date>(out).seconds);
      },
      py::arg("value"), py::arg("distribution"), py::arg("params"),
      py::arg("date_unit"), py::arg("rng"));

  m.def(
      "hash_value",
      [](const std::string& value, int output_bits) {
        return std::get<std::string>(
            hash_value(ScalarValue{value}, HashParams{output_bits}));
      },
      py::arg("value"), py::arg("output_bits") = 256);

  m.def(
      "suppress", [](const py::object&) { return py::none(); },
      py::arg("value"), "The constant-None function.");

  py::class_<Schema>(m, "Schema")
      .def("print", [](const Schema& s) { return print_schema(s); })
      .def("validate",
           [](const Schema& s) {
             std::vector<std::string> out;
             for (const Diagnostic& d : validate_directive_placement(s)) {
               out.push_back(std::to_string(d.line) + ":" +
                             std::to_string(d.col) + ": " + d.message);
             }
             return out;
           })
      .def_property_readonly("query_root",
                             [](const Schema& s) { return s.query_root; });

  m.def("parse_schema", &parse_schema, py::arg("sdl_text"));

  py::class_<Policy>(m, "Policy");
  m.def("load_policy", &load_policy, py::arg("config_text"));
  m.def(
      "validate_policy",
      [](const Policy& policy, const Schema& schema) {
        std::vector<std::string> out;
        for (const Diagnostic& d : validate_policy(policy, schema)) {
          out.push_back("line " + std::to_string(d.line) + ": " + d.message);
        }
        return out;
      },
      py::arg("policy"), py::arg("schema"));

  py::class_<DataSource>(m, "DataSource")
      .def("to_jsonl",
           [](const DataSource& ds) {
             std::ostringstream out;
             ds.write_jsonl(out);
             return out.str();
           })
      .def("row_count", [](const DataSource& ds, const std::string& table) {
        return ds.rows(table).size();
      });

  m.def("generate_dataset", &generate_dataset, py::arg("n_users"),
        py::arg("seed"));
  m.def(
      "load_dataset",
      [](const std::string& jsonl, const Schema& schema) {
        std::istringstream in(jsonl);
        return DataSource::read_jsonl(in, schema);
      },
      py::arg("jsonl"), py::arg("schema"));
  m.def("default_schema_sdl", [] { return default_schema_sdl(); });

  m.def(
      "execute",
      [](const std::string& query, const Schema& schema,
         const DataSource& source, const Policy& policy,
         const std::string& role, uint64_t seed) {
        RandomSource rng(seed);
        return json_to_py(
            execute(query, schema, source, policy, role, rng).to_json());
      },
      py::arg("query"), py::arg("schema"), py::arg("source"),
      py::arg("policy"), py::arg("role"), py::arg("seed"),
      "Parse, resolve and reduce a query under the given role.");

  m.def(
      "extract_role",
      [](const std::string& token, const std::string& secret,
         const std::string& role_claim,
         const std::optional<std::string>& anonymous_role, int64_t now) {
        AuthConfig auth;
        auth.hmac_secret = secret;
        auth.role_claim = role_claim;
        auth.anonymous_role = anonymous_role;
        return extract_role(token, auth, now);
      },
      py::arg("token"), py::arg("secret"), py::arg("role_claim") = "role",
      py::arg("anonymous_role") = std::nullopt, py::arg("now") = 0);

  m.def(
      "make_token",
      [](const std::string& role, const std::string& secret,
         const std::string& role_claim, std::optional<int64_t> expires_at) {
        AuthConfig auth;
        auth.hmac_secret = secret;
        auth.role_claim = role_claim;
        return make_token(role, auth, expires_at);
      },
      py::arg("role"), py::arg("secret"), py::arg("role_claim") = "role",
      py::arg("expires_at") = std::nullopt);
}
