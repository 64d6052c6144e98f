// Copyright 2026 The lindberry Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lindberry {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix failed one of the density-matrix invariants.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, double measured, double tolerance,
                  const std::string& what)
      : Error(what),
        invariant_(std::move(invariant)),
        measured_(measured),
        tolerance_(tolerance) {}

  /// "hermiticity", "trace" or "positivity".
  const std::string& invariant() const noexcept { return invariant_; }
  double measured() const noexcept { return measured_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  std::string invariant_;
  double measured_;
  double tolerance_;
};

/// Argument outside the physical domain (e.g. a Bloch vector longer than 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// lambda_1 == 0: the diagonal frame does not exist.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A closed form was requested outside the adiabatic / weak-coupling regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// The integrator could not make progress (step underflow, bad grid, ...).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// An accepted integrator step produced a state outside tolerance.
class StateCorruptionError : public Error {
 public:
  StateCorruptionError(double time, const std::string& what)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Scenario configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& what)
      : Error(what), line_(line), key_(std::move(key)) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

}  // namespace lindberry
