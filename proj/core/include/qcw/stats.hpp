// Copyright 2026 The qcwalk Authors.
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
#include <span>

namespace qcw {

struct MeanStderr {
  double mean = 0.0;
  double standard_error = 0.0;  // sample sd / sqrt(n); 0 when n < 2
  std::size_t count = 0;
};

MeanStderr mean_and_stderr(std::span<const double> values);

/// Pearson goodness-of-fit p-value of observed counts against expected
/// probabilities (df = categories - 1).
double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected_probabilities);

struct PairedTest {
  double mean_difference = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;  // one-sided, H1: mean(x - y) > 0
};

/// One-sided paired Student t test. Zero-variance differences yield
/// p = 0 for a positive mean difference and p = 1 otherwise.
PairedTest paired_t_test_greater(std::span<const double> x, std::span<const double> y);

}  // namespace qcw
