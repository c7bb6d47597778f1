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

#ifndef CPNKIT_ERROR_HPP
#define CPNKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cpn {

/// Base class of every exception thrown by cpnkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatch, unknown algebra, broken precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A map that should be completely n-positive (or dominated by another map)
/// is not. Carries the smallest Choi eigenvalue that witnessed the failure.
class DominationError : public ValidationError {
 public:
  DominationError(const std::string& what, double min_eig)
      : ValidationError(what), min_eig_(min_eig) {}

  double min_eig() const noexcept { return min_eig_; }

 private:
  double min_eig_;
};

/// A computed object failed its own post-condition check.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cpn

#endif  // CPNKIT_ERROR_HPP
