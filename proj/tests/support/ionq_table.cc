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

#include "support/ionq_table.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace weakreal::ionq {

Row row(Order order) {
    if (order == Order::AB) {
        return {1.272, 0.035, 0.829, 0.023, 1.117, 0.032, -0.744, 0.002,
                -0.717, 0.002, -0.752, 0.003, -0.719, 0.003, 0.507, 0.0002};
    }
    return {1.289, 0.035, 0.824, 0.023, 1.136, 0.032, -0.742, 0.002,
            -0.725, 0.002, -0.744, 0.003, -0.727, 0.003, 0.507, 0.0002};
}

ExpectationSet moments(const Row &r) {
    double l = std::sin(kTheta);
    ExpectationSet e;
    e.a = r.a * l;
    e.b = r.b * l;
    e.ac = r.ac * l;
    e.bc = r.bc * l;
    e.ab = r.ab * l * l;
    e.abc = r.abc * l * l;
    e.c = r.c;
    return e;
}

std::vector<CountsTable> synthetic_tables(Order order) {
    ExpectationSet e = moments(row(order));
    CountsTable t;
    t.meta = {kPi / 4, kTheta, order, kShots, "synthetic-ionq"};
    std::array<CountsRun, 4> per_setting;
    for (std::size_t s = 0; s < 4; s++) {
        double sa = kSettings[s].first;
        double sb = kSettings[s].second;
        std::array<double, 8> p{};
        for (int i = 0; i < 8; i++) {
            double za = (i & 4) ? -1 : 1;
            double zb = (i & 2) ? -1 : 1;
            if ((i & 1) == 0) {
                p[i] = (e.c + za * sa * e.ac + zb * sb * e.bc + za * zb * sa * sb * e.abc) / 4;
            } else {
                p[i] = ((1 - e.c) + za * sa * (e.a - e.ac) + zb * sb * (e.b - e.bc) +
                        za * zb * sa * sb * (e.ab - e.abc)) /
                       4;
            }
        }
        // Largest remainder rounding to kShots.
        std::array<std::int64_t, 8> n{};
        std::array<double, 8> frac{};
        std::int64_t total = 0;
        for (int i = 0; i < 8; i++) {
            double x = p[i] * static_cast<double>(kShots);
            n[i] = static_cast<std::int64_t>(std::floor(x));
            frac[i] = x - std::floor(x);
            total += n[i];
        }
        std::array<int, 8> idx;
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return frac[x] > frac[y]; });
        for (int k = 0; total < kShots; k++, total++) {
            n[idx[k]]++;
        }
        CountsRun run;
        run.sign_a = kSettings[s].first;
        run.sign_b = kSettings[s].second;
        for (int i = 0; i < 8; i++) {
            std::string bits = {static_cast<char>('0' + ((i >> 2) & 1)), static_cast<char>('0' + ((i >> 1) & 1)),
                                static_cast<char>('0' + (i & 1))};
            run.counts[bits] = n[i];
        }
        per_setting[s] = run;
    }
    for (std::int64_t r = 0; r < kReps; r++) {
        for (const auto &run : per_setting) {
            t.runs.push_back(run);
        }
    }
    return {t};
}

}  // namespace weakreal::ionq
