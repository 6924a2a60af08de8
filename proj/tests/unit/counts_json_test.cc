// Copyright 2026 The weakreal Authors
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

#include "weakreal/counts_json.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "weakreal/errors.h"

namespace weakreal {
namespace {

const char *kSmall = R"({
  "version": "weakreal/1",
  "meta": {
    "psi": 0.7853981633974483,
    "theta": 0.1,
    "order": "BA",
    "shots": 3,
    "source": "ingested"
  },
  "runs": [
    {
      "sign_a": 1,
      "sign_b": -1,
      "counts": {
        "000": 2,
        "101": 1
      }
    }
  ]
}
)";

std::string where_of(const std::string &text) {
    try {
        read_counts_json(text);
    } catch (const SchemaError &e) {
        return e.where();
    }
    return "<no error>";
}

std::string replace(std::string s, const std::string &from, const std::string &to) {
    auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
}

TEST(CountsJson, ReadsAndWritesCanonically) {
    auto t = read_counts_json(kSmall);
    EXPECT_EQ(t.meta.order, Order::BA);
    EXPECT_EQ(t.meta.shots, 3);
    EXPECT_EQ(t.meta.source, "ingested");
    ASSERT_EQ(t.runs.size(), 1u);
    EXPECT_EQ(t.runs[0].sign_b, -1);
    EXPECT_EQ(t.runs[0].counts.at("101"), 1);
    EXPECT_EQ(write_counts_json(t), kSmall);
}

TEST(CountsJson, RoundTripIsByteIdentical) {
    ProtocolConfig cfg;
    cfg.psi = 1.234567890123;
    cfg.theta = -0.3;
    auto tables = sample_counts(cfg, SampleSpec{1000, 5, 3, 17}, 1);
    for (const auto &t : tables) {
        std::string once = write_counts_json(t);
        CountsTable back = read_counts_json(once);
        EXPECT_EQ(back, t);
        EXPECT_EQ(write_counts_json(back), once);
    }
}

TEST(CountsJson, FileRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "weakreal_counts_json_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "t.json";
    auto t = read_counts_json(kSmall);
    save_counts_file(path, t);
    EXPECT_EQ(load_counts_file(path), t);
    std::ofstream(dir / "bad.json") << "{\"version\": \"weakreal/1\",\n  \"meta\": 3}";
    try {
        load_counts_file(dir / "bad.json");
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_NE(e.where().find("bad.json:/meta"), std::string::npos) << e.where();
    }
    EXPECT_THROW(load_counts_file(dir / "missing.json"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(CountsJson, SyntaxErrorsReportLineAndColumn) {
    EXPECT_EQ(where_of("{\n  \"version\": ,\n}"), "2:14");
    EXPECT_EQ(where_of(""), "1:1");
    EXPECT_EQ(where_of("[1, 2"), "1:6");
}

TEST(CountsJson, SchemaErrorsCarryPointers) {
    std::string s = kSmall;
    EXPECT_EQ(where_of("[]"), "");
    EXPECT_EQ(where_of(replace(s, "weakreal/1", "weakreal/2")), "/version");
    EXPECT_EQ(where_of(replace(s, "\"psi\": 0.7853981633974483", "\"psi\": \"x\"")), "/meta/psi");
    EXPECT_EQ(where_of(replace(s, "\"order\": \"BA\"", "\"order\": \"CA\"")), "/meta/order");
    EXPECT_EQ(where_of(replace(s, "\"shots\": 3", "\"shots\": 3.5")), "/meta/shots");
    EXPECT_EQ(where_of(replace(s, "\"shots\": 3", "\"shots\": 0")), "/meta/shots");
    EXPECT_EQ(where_of(replace(s, "\"source\": \"ingested\"", "\"source\": \"ingested\", \"seed\": 1")),
              "/meta/seed");
    EXPECT_EQ(where_of(replace(s, "\"sign_b\": -1", "\"sign_b\": 2")), "/runs/0/sign_b");
    EXPECT_EQ(where_of(replace(s, "\"101\": 1", "\"10\": 1")), "/runs/0/counts/10");
    EXPECT_EQ(where_of(replace(s, "\"101\": 1", "\"101\": -1")), "/runs/0/counts/101");
    EXPECT_EQ(where_of(replace(s, "\"101\": 1", "\"101\": 2")), "/runs/0/counts");
    EXPECT_EQ(where_of(replace(s, "\"sign_a\": 1,\n", "")), "/runs/0/sign_a");
    EXPECT_EQ(where_of(replace(s, "\"runs\": [", "\"extra\": 1, \"runs\": [")), "/extra");
}

TEST(CountsJson, EmptyRunsRejected) {
    std::string s = kSmall;
    auto start = s.find("\"runs\": [");
    auto end = s.rfind(']');
    s = s.substr(0, start) + "\"runs\": [" + s.substr(end);
    EXPECT_EQ(where_of(s), "/runs");
}

}  // namespace
}  // namespace weakreal
