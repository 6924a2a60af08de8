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

#include "io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "weakreal/constants.h"
#include "weakreal/errors.h"

namespace weakreal::tools {

namespace {

double parse_double(const std::string &s) {
    double x = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return x;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string line_col(const std::string &text, std::size_t byte) {
    std::size_t line = 1, col = 1;
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

void only_keys(const Json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *k : allowed) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw SchemaError(where + "/" + item.key(), "unknown key");
        }
    }
}

double get_number(const Json &obj, const char *key, const std::string &where, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json &v = obj.at(key);
    if (!v.is_number()) {
        throw SchemaError(where + "/" + key, "expected a number");
    }
    return v.get<double>();
}

std::int64_t get_count(const Json &obj, const char *key, const std::string &where, std::int64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw SchemaError(where + "/" + key, "expected a non-negative integer");
    }
    return v.get<std::int64_t>();
}

std::optional<NoiseParams> parse_noise(const Json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    const Json &n = obj.at(key);
    std::string at = where + "/" + key;
    if (!n.is_object()) {
        throw SchemaError(at, "expected an object");
    }
    only_keys(n, at, {"epsilon", "alpha", "beta", "eta", "omega"});
    NoiseParams p;
    p.epsilon = get_number(n, "epsilon", at, 0);
    p.alpha = get_number(n, "alpha", at, 0);
    p.beta = get_number(n, "beta", at, 0);
    p.eta = get_number(n, "eta", at, 0);
    p.omega = get_number(n, "omega", at, 0);
    try {
        p.validate();
    } catch (const std::invalid_argument &e) {
        throw SchemaError(at, e.what());
    }
    return p;
}

}  // namespace

std::string num(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> parse_grid(const std::string &spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        auto parts = split(spec, ':');
        if (parts.size() != 3) {
            throw std::invalid_argument("grid '" + spec + "' must be start:stop:count");
        }
        double lo = parse_double(parts[0]);
        double hi = parse_double(parts[1]);
        double n = parse_double(parts[2]);
        if (!(n >= 1) || n != std::floor(n) || n > 1e7) {
            throw std::invalid_argument("grid count must be a positive integer in '" + spec + "'");
        }
        auto count = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < count; i++) {
            out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        return out;
    }
    for (const auto &p : split(spec, ',')) {
        out.push_back(parse_double(p));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty grid");
    }
    return out;
}

Json load_json(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw SchemaError(path.string() + ":" + line_col(text, e.byte), "invalid JSON");
    }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

CsvWriter::CsvWriter(std::ostream &out, const std::vector<std::string> &header) : out_(out) {
    out_ << "# " << kFormatVersion << "\n";
    for (const auto &h : header) {
        cell(h);
    }
    end_row();
}

CsvWriter &CsvWriter::cell(const std::string &s) {
    if (!first_) {
        out_ << ',';
    }
    out_ << s;
    first_ = false;
    return *this;
}

CsvWriter &CsvWriter::cell(double x) {
    return cell(num(x));
}

CsvWriter &CsvWriter::cell(std::int64_t x) {
    return cell(std::to_string(x));
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

RunConfig parse_run_config(const Json &j, const std::string &origin) {
    auto wrap = [&](const SchemaError &e) {
        return SchemaError(origin + ":" + (e.where().empty() ? "/" : e.where()),
                           std::string(e.what()).substr(e.where().size() + 2));
    };
    try {
        if (!j.is_object()) {
            throw SchemaError("", "top level must be an object");
        }
        only_keys(j, "", {"version", "psi", "theta", "order", "noise_a", "noise_b", "shots", "repetitions", "jobs",
                          "seed"});
        if (j.contains("version") && j.at("version") != Json(std::string(kFormatVersion))) {
            throw SchemaError("/version", "expected \"" + std::string(kFormatVersion) + "\"");
        }
        RunConfig rc;
        rc.protocol.psi = get_number(j, "psi", "", rc.protocol.psi);
        rc.protocol.theta = get_number(j, "theta", "", rc.protocol.theta);
        if (j.contains("order")) {
            const Json &o = j.at("order");
            if (!o.is_string() || (o != "AB" && o != "BA")) {
                throw SchemaError("/order", "expected \"AB\" or \"BA\"");
            }
            rc.protocol.order = parse_order(o.get<std::string>());
        }
        rc.protocol.noise_a = parse_noise(j, "noise_a", "");
        rc.protocol.noise_b = parse_noise(j, "noise_b", "");
        rc.sampling.shots = get_count(j, "shots", "", rc.sampling.shots);
        rc.sampling.repetitions = get_count(j, "repetitions", "", rc.sampling.repetitions);
        rc.sampling.jobs = get_count(j, "jobs", "", rc.sampling.jobs);
        if (j.contains("seed")) {
            const Json &s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
                throw SchemaError("/seed", "expected a non-negative integer");
            }
            rc.sampling.seed = s.get<std::uint64_t>();
        }
        return rc;
    } catch (const SchemaError &e) {
        throw wrap(e);
    }
}

Json to_json(const NoiseParams &p) {
    Json j;
    j["epsilon"] = p.epsilon;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["eta"] = p.eta;
    j["omega"] = p.omega;
    return j;
}

Json to_json(const ExpectationSet &e) {
    Json j;
    j["c"] = e.c;
    j["a"] = e.a;
    j["b"] = e.b;
    j["ac"] = e.ac;
    j["bc"] = e.bc;
    j["ab"] = e.ab;
    j["abc"] = e.abc;
    j["limit"] = e.limit;
    return j;
}

Json RunManifest::to_json() const {
    Json j;
    j["version"] = std::string(kFormatVersion);
    j["command"] = command;
    j["config"] = config_path.empty() ? Json(nullptr) : Json(config_path);
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["output_dir"] = output_dir;
    return j;
}

}  // namespace weakreal::tools
