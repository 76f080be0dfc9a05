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

#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "ddo/acceptance.hpp"

int main(int argc, char **argv) {
    std::uint64_t seed = 0;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    std::printf("acceptance suite (seed %llu)\n", static_cast<unsigned long long>(seed));
    auto results = ddo::acceptance::run_all(seed);
    ddo::acceptance::print_results(results);
    return ddo::acceptance::all_pass(results) ? 0 : 1;
}
