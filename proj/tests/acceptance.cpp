// Copyright 2026 The cpnkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One line per acceptance criterion; exit status 0 iff all pass.
// Usage: acceptance [seed] [scale]

#include <cstdio>
#include <cstdlib>

#include "cpn/testing/acceptance.hpp"

int main(int argc, char** argv) {
  cpn::acceptance::Options o;
  if (argc > 1) o.seed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) o.scale = std::strtod(argv[2], nullptr);

  bool all = true;
  for (const auto& r : cpn::acceptance::run_all(o)) {
    all = all && r.pass;
    std::printf("[%s] criterion %2d %-26s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria FAILED");
  return all ? 0 : 1;
}
