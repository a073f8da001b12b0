// Copyright 2026 The stratprice Authors
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

// Runs every acceptance check and prints one PASS/FAIL line per criterion.
// Exits nonzero if any check fails.

#include <iostream>

#include "stratprice/verify.h"

int main() {
  auto results = stratprice::RunSuite(stratprice::Suite::kAll, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size()
            << " acceptance checks passed\n";
  return failed == 0 ? 0 : 1;
}
