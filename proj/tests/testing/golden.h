//
// Copyright 2026 The dpspec Authors
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
//

#ifndef DPSPEC_TESTS_TESTING_GOLDEN_H_
#define DPSPEC_TESTS_TESTING_GOLDEN_H_

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace dpspec {
namespace testing {

// Compares `actual` with tests/testdata/golden/<name>. Setting
// DPSPEC_UPDATE_GOLDEN=1 rewrites the file instead.
inline void ExpectMatchesGolden(const std::string& name,
                                const std::string& actual) {
  const std::string path =
      std::string(DPSPEC_TESTDATA_DIR) + "/golden/" + name;
  const char* update = std::getenv("DPSPEC_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in.good()) << "missing golden file " << path;
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(actual, expected.str()) << "golden file " << path;
}

}  // namespace testing
}  // namespace dpspec

#endif  // DPSPEC_TESTS_TESTING_GOLDEN_H_
