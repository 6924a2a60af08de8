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

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weakreal/errors.h"

namespace weakreal {

namespace {

using ojson = nlohmann::ordered_json;

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

void only_keys(const ojson &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *k : allowed) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw SchemaError(where + "/" + item.key(), "unexpected key");
        }
    }
}

const ojson &field(const ojson &obj, const std::string &where, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(where + "/" + key, "missing required field");
    }
    return *it;
}

double number(const ojson &j, const std::string &where) {
    if (!j.is_number()) {
        throw SchemaError(where, "expected a number");
    }
    return j.get<double>();
}

std::int64_t integer(const ojson &j, const std::string &where) {
    if (!j.is_number_integer()) {
        throw SchemaError(where, "expected an integer");
    }
    return j.get<std::int64_t>();
}

int sign(const ojson &j, const std::string &where) {
    std::int64_t v = integer(j, where);
    if (v != 1 && v != -1) {
        throw SchemaError(where, "sign must be 1 or -1");
    }
    return static_cast<int>(v);
}

}  // namespace

std::string write_counts_json(const CountsTable &table) {
    ojson meta;
    meta["psi"] = table.meta.psi;
    meta["theta"] = table.meta.theta;
    meta["order"] = std::string(to_string(table.meta.order));
    meta["shots"] = table.meta.shots;
    meta["source"] = table.meta.source;
    ojson runs = ojson::array();
    for (const auto &r : table.runs) {
        ojson run;
        run["sign_a"] = r.sign_a;
        run["sign_b"] = r.sign_b;
        ojson counts = ojson::object();
        for (const auto &[k, v] : r.counts) {
            counts[k] = v;
        }
        run["counts"] = std::move(counts);
        runs.push_back(std::move(run));
    }
    ojson root;
    root["version"] = std::string(kFormatVersion);
    root["meta"] = std::move(meta);
    root["runs"] = std::move(runs);
    return root.dump(2) + "\n";
}

CountsTable read_counts_json(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        throw SchemaError(line_col(text, e.byte), "invalid JSON");
    }
    if (!root.is_object()) {
        throw SchemaError("", "top level must be an object");
    }
    only_keys(root, "", {"version", "meta", "runs"});
    const auto &version = field(root, "", "version");
    if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
        throw SchemaError("/version", "expected \"" + std::string(kFormatVersion) + "\"");
    }

    CountsTable t;
    const auto &meta = field(root, "", "meta");
    if (!meta.is_object()) {
        throw SchemaError("/meta", "expected an object");
    }
    only_keys(meta, "/meta", {"psi", "theta", "order", "shots", "source"});
    t.meta.psi = number(field(meta, "/meta", "psi"), "/meta/psi");
    t.meta.theta = number(field(meta, "/meta", "theta"), "/meta/theta");
    const auto &order = field(meta, "/meta", "order");
    if (!order.is_string()) {
        throw SchemaError("/meta/order", "expected \"AB\" or \"BA\"");
    }
    try {
        t.meta.order = parse_order(order.get<std::string>());
    } catch (const std::invalid_argument &) {
        throw SchemaError("/meta/order", "expected \"AB\" or \"BA\"");
    }
    t.meta.shots = integer(field(meta, "/meta", "shots"), "/meta/shots");
    const auto &source = field(meta, "/meta", "source");
    if (!source.is_string()) {
        throw SchemaError("/meta/source", "expected a string");
    }
    t.meta.source = source.get<std::string>();

    const auto &runs = field(root, "", "runs");
    if (!runs.is_array()) {
        throw SchemaError("/runs", "expected an array");
    }
    for (std::size_t i = 0; i < runs.size(); i++) {
        std::string where = "/runs/" + std::to_string(i);
        const auto &r = runs[i];
        if (!r.is_object()) {
            throw SchemaError(where, "expected an object");
        }
        only_keys(r, where, {"sign_a", "sign_b", "counts"});
        CountsRun run;
        run.sign_a = sign(field(r, where, "sign_a"), where + "/sign_a");
        run.sign_b = sign(field(r, where, "sign_b"), where + "/sign_b");
        const auto &counts = field(r, where, "counts");
        if (!counts.is_object()) {
            throw SchemaError(where + "/counts", "expected an object");
        }
        for (const auto &item : counts.items()) {
            run.counts[item.key()] = integer(item.value(), where + "/counts/" + item.key());
        }
        t.runs.push_back(std::move(run));
    }
    t.validate();
    return t;
}

CountsTable load_counts_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return read_counts_json(ss.str());
    } catch (const SchemaError &e) {
        throw SchemaError(path.string() + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

void save_counts_file(const std::filesystem::path &path, const CountsTable &table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << write_counts_json(table);
}

}  // namespace weakreal
