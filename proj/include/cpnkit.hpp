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

// Umbrella header for the library proper (the testing/ headers are separate).

#ifndef CPNKIT_CPNKIT_HPP
#define CPNKIT_CPNKIT_HPP

#include "cpn/algebra.hpp"
#include "cpn/commutant.hpp"
#include "cpn/cpnmaps.hpp"
#include "cpn/error.hpp"
#include "cpn/io.hpp"
#include "cpn/linalg.hpp"
#include "cpn/prostar.hpp"
#include "cpn/radon.hpp"
#include "cpn/random.hpp"
#include "cpn/stinespring.hpp"
#include "cpn/structure.hpp"
#include "cpn/version.hpp"

#endif  // CPNKIT_CPNKIT_HPP
