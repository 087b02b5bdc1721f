# Copyright 2026 The Quell Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import hashlib

import pytest

import quell

SECRET = "smoke-test-secret-0123456789abcdef"


def test_generalize_number():
    assert quell.generalize_number(17, 10) == 10
    assert quell.generalize_number(0, 10) == 0
    assert quell.generalize_number(-5, 10) == -10
    assert quell.generalize_number(17.9, 10) == 10.0


def test_generalize_string():
    assert quell.generalize_string("Johanna", 2) == "Jo*****"
    assert quell.generalize_string("", 3) == ""
    assert quell.generalize_string("ab", 5) == "ab"
    assert quell.generalize_string("abcd", 1, mask_char="#") == "a###"


def test_generalize_date():
    assert (
        quell.generalize_date("2022-03-18T14:33:12Z", "month")
        == "2022-03-01T00:00:00Z"
    )
    assert (
        quell.generalize_date("2022-12-31T23:59:59Z", "year")
        == "2022-01-01T00:00:00Z"
    )


def test_noise_is_seeded():
    a = quell.noise_number(5.0, "laplace", {"location": 0, "scale": 1}, quell.RandomSource(3))
    b = quell.noise_number(5.0, "laplace", {"location": 0, "scale": 1}, quell.RandomSource(3))
    c = quell.noise_number(5.0, "laplace", {"location": 0, "scale": 1}, quell.RandomSource(4))
    assert a == b
    assert a != c
    assert (
        quell.noise_number(10, "uniform", {"low": 0, "high": 0}, quell.RandomSource(1))
        == 10
    )


def test_noise_rejects_bad_params():
    with pytest.raises(quell.QuellError):
        quell.noise_number(1.0, "laplace", {"location": 0, "scale": 0}, quell.RandomSource(1))


def test_hash_matches_hashlib():
    for bits in (224, 256, 384, 512):
        expected = getattr(hashlib, f"sha3_{bits}")(b"abc").hexdigest()
        assert quell.hash_value("abc", bits) == expected
    assert quell.suppress("anything") is None


def test_schema_parse_and_validate():
    schema = quell.parse_schema(quell.default_schema_sdl())
    assert schema.query_root == "Query"
    assert schema.validate() == []
    reparsed = quell.parse_schema(schema.print())
    assert reparsed.print() == schema.print()
    with pytest.raises(quell.QuellError):
        quell.parse_schema("")


def test_end_to_end_execution():
    schema = quell.parse_schema(quell.default_schema_sdl())
    policy = quell.load_policy(
        """
[role researcher]
field = User.name, directive = suppress
field = User.email, directive = hash, output_bits = 256
field = Symptom.pain, directive = noise, distribution = laplace, location = 0, scale = 1
field = Symptom.mood, directive = generalize, visible_count = 2
field = Symptom.recordedAt, directive = generalize, unit = day
field = Symptom.recordedAt, directive = noise, distribution = uniform, low = -1, high = 1, date_unit = day
"""
    )
    assert quell.validate_policy(policy, schema) == []
    source = quell.generate_dataset(5, seed=7)

    out = quell.execute(
        "{ users(first: 2) { id name email } }",
        schema,
        source,
        policy,
        "researcher",
        seed=11,
    )
    users = out["users"]
    assert len(users) == 2
    for user in users:
        assert user["name"] is None
        assert len(user["email"]) == 64

    again = quell.execute(
        "{ users(first: 2) { id name email } }", schema, source, policy,
        "researcher", seed=11,
    )
    assert out == again  # pinned seed, identical bytes

    closed = quell.execute(
        "{ users(first: 1) { name email } }", schema, source, policy,
        "stranger", seed=1,
    )
    assert closed["users"][0] == {"name": None, "email": None}


def test_dataset_roundtrip():
    schema = quell.parse_schema(quell.default_schema_sdl())
    source = quell.generate_dataset(4, seed=2)
    text = source.to_jsonl()
    assert text == quell.generate_dataset(4, seed=2).to_jsonl()
    reloaded = quell.load_dataset(text, schema)
    assert reloaded.to_jsonl() == text
    assert reloaded.row_count("User") == 4


def test_jwt_round_trip():
    token = quell.make_token("researcher", SECRET)
    assert quell.extract_role(token, SECRET, now=0) == "researcher"
    with pytest.raises(quell.QuellError):
        quell.extract_role(token + "x", SECRET, now=0)
    assert (
        quell.extract_role("", SECRET, anonymous_role="anonymous", now=0)
        == "anonymous"
    )
