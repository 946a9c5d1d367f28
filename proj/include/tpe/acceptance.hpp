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


#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace tpe {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string measured;
    std::string target;
    std::string tolerance;
    std::string detail;
    double wall_time_s = 0.0;
};

struct AcceptanceOptions {
    std::set<int> only;                  // empty runs every criterion
    bool corrupt_gamma12_sign = false;   // negative control for the dipole fixtures
    std::ostream* progress = nullptr;    // one line per finished criterion
};

/// Runs the numbered acceptance criteria. Failures are verdicts, not exceptions.
std::vector<CriterionResult> validate_paper_fixtures(const AcceptanceOptions& options = {});

/// One PASS/FAIL line per criterion.
std::string format_line(const CriterionResult& r);
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace tpe
