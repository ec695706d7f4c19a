//
// Copyright 2026 The kiv Authors
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
//

#pragma once

#include <stdexcept>
#include <string>

namespace kiv {

/// Argument outside the mathematical domain of an operation (poles, nu = 0, ...).
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Argument inside the domain but outside the range an algorithm supports.
class range_error : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Malformed argument list (e.g. a cutoff sequence that is not decreasing).
class argument_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// nu and nu' too close for the closed-form overlap; use diagonal_limit.
class near_diagonal_error : public domain_error {
  public:
    using domain_error::domain_error;
};

/// An iterative procedure did not reach its tolerance. Carries the best
/// estimate obtained so the caller can decide what to do with it.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(error_estimate)
    {
    }

    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

  private:
    double best_;
    double err_;
};

}  // namespace kiv
