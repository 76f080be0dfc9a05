// Copyright 2026 The ddo Authors
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

#include <cstring>

#include <catch2/catch_amalgamated.hpp>

#include "ddo/io.hpp"
#include "ddo/rng.hpp"

using namespace ddo;

TEST_CASE("matrix codec is bit-exact for finite doubles") {
    CounterRng rng(111);
    CMatrix m(4, 3);
    std::vector<double> specials = {0.0,    -0.0,   1.0,     -1.0,    0.1,
                                    1e-300, 1e300,  -2.5e-17, 3.141592653589793, 1.0 / 3.0};
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double re = i < specials.size() ? specials[i] : rng.normal() * std::pow(10.0, rng.uniform_int(-30, 30));
        const double im = rng.normal();
        m.entries[i] = cx(re, im);
    }
    CMatrix back = matrix_from_json(matrix_to_json(m));
    REQUIRE(back.rows == m.rows);
    REQUIRE(back.cols == m.cols);
    REQUIRE(std::memcmp(back.entries.data(), m.entries.data(), m.size() * sizeof(cx)) == 0);
}

TEST_CASE("matrix codec rejects malformed objects") {
    REQUIRE_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"data", json::array()}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(matrix_from_json(json{{"rows", 0}, {"cols", 2}, {"data", json::array()}}),
                      std::invalid_argument);
    json nan_entry{{"rows", 1}, {"cols", 1}, {"data", json::array({json::array({nullptr, 0.0})})}};
    REQUIRE_THROWS_AS(matrix_from_json(nan_entry), std::invalid_argument);
}

TEST_CASE("kraus channel codec round trips and validates") {
    CounterRng rng(112);
    KrausChannel ch = random_channel(rng, 3, 2);
    KrausChannel back = kraus_channel_from_json(kraus_channel_to_json(ch));
    REQUIRE(back.kraus.size() == ch.kraus.size());
    for (std::size_t k = 0; k < ch.kraus.size(); ++k)
        REQUIRE(max_abs_diff(back.kraus[k], ch.kraus[k]) == 0.0);

    json broken = kraus_channel_to_json(ch);
    broken["kraus"].erase(1);  // drops trace preservation
    REQUIRE_THROWS_AS(kraus_channel_from_json(broken), std::domain_error);
}

TEST_CASE("instrument codec keeps labels") {
    CMatrix p0(2, 2), p1(2, 2);
    p0.at(0, 0) = 1.0;
    p1.at(1, 1) = 1.0;
    Instrument inst = Instrument::make({p0, p1}, {"up", "down"});
    Instrument back = instrument_from_json(instrument_to_json(inst));
    REQUIRE(back.labels == std::vector<std::string>{"up", "down"});
}

TEST_CASE("canonical double formatting is stable") {
    REQUIRE(canonical_double(0.5) == "0.5");
    REQUIRE(canonical_double(1.0) == "1.0");
    REQUIRE(canonical_double(0.1) == "0.1");
    const double awkward = 0.1 + 0.2;
    REQUIRE(std::stod(canonical_double(awkward)) == awkward);
}

TEST_CASE("file helpers reject missing and malformed files") {
    REQUIRE_THROWS_AS(read_json_file("/nonexistent/definitely_missing.json"), std::invalid_argument);
}
