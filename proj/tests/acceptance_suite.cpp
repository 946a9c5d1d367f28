// Copyright 2026 The tpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One line per acceptance criterion; the exit status reports whether all passed.

#include <iostream>

#include "tpe/acceptance.hpp"

int main() {
    tpe::AcceptanceOptions opt;
    opt.progress = &std::cout;
    const auto results = tpe::validate_paper_fixtures(opt);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;

    // Negative control: a flipped collective decay must break the dipole fixtures.
    tpe::AcceptanceOptions corrupt;
    corrupt.only = {1};
    corrupt.corrupt_gamma12_sign = true;
    const auto control = tpe::validate_paper_fixtures(corrupt);
    const bool control_ok = control.size() == 1 && !control[0].pass;
    std::cout << "negative control (gamma12 sign flipped): " << (control_ok ? "PASS" : "FAIL")
              << " | criterion 1 verdict " << (control[0].pass ? "PASS" : "FAIL") << "\n";

    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 && control_ok ? 0 : 1;
}
