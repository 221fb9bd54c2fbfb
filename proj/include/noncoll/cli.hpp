/*
 * Copyright 2026 The noncoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @brief Command-line front end.
 *
 * Commands: eval, table, mc-compare, moments, self-test. Output is CSV or
 * JSON on the output stream (or --out); diagnostics go to the error stream.
 * Exit status: 0 success, 1 invalid input, 2 numerical failure.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noncoll/extremes.hpp"
#include "noncoll/mc_oracle.hpp"

namespace noncoll::cli {

enum class Command { Eval, Table, McCompare, Moments, SelfTest };
enum class Format { Csv, Json };
enum class Axis { Ell, R, H, W };

struct GridSpec {
  Axis axis;
  double min;
  double max;
  int count;
};

struct RunConfig {
  Command command = Command::Eval;
  ProcessTag process = ProcessTag::BridgeAA;
  int N = 1;
  double T = 1.0;
  std::optional<double> ell, r, h, w;
  std::optional<std::vector<double>> start, end;  // general processes
  std::optional<GridSpec> grid;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  int steps = 128;
  unsigned threads = 1;
  std::optional<Statistic> stat;
  std::vector<double> moments{2.0, 4.0};
  Format format = Format::Csv;
  std::optional<std::string> out;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Thrown for malformed command lines and inconsistent configurations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv into a validated RunConfig. `env_tol` stands in for NONCOLL_TOL.
RunConfig parse_args(int argc, const char* const* argv, const char* env_tol = nullptr);

/// Checks cross-field constraints; throws UsageError.
void validate(const RunConfig& config);

/// Executes the command, writing data to `out` and diagnostics to `err`.
/// Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with --out handling and exit-status mapping.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Formats with 17 significant digits (as %.17g), independent of locale.
std::string format_double(double x);

/// Locale-free decimal parsing; throws UsageError.
double parse_double(const std::string& text);

}  // namespace noncoll::cli
