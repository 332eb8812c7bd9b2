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
#include "qcw/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <vector>

#include "qcw/errors.hpp"

namespace qcw {

MeanStderr mean_and_stderr(std::span<const double> values) {
  MeanStderr out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  const double n = static_cast<double>(values.size());
  out.standard_error = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
  return out;
}

double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected_probabilities) {
  if (observed.size() != expected_probabilities.size()) throw LengthMismatch("observed/expected size mismatch");
  if (observed.size() < 2) throw InvalidArgument("chi-square test needs at least two categories");
  double total = 0.0;
  for (auto o : observed) total += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected_probabilities[i];
    if (!(e > 0.0)) throw InvalidArgument("expected counts must be positive");
    const double diff = observed[i] - e;
    stat += diff * diff / e;
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

PairedTest paired_t_test_greater(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("paired samples differ in length");
  if (x.size() < 2) throw InvalidArgument("paired test needs at least two pairs");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  const MeanStderr m = mean_and_stderr(diff);
  PairedTest out;
  out.mean_difference = m.mean;
  if (m.standard_error == 0.0) {
    out.t_statistic = m.mean > 0.0 ? INFINITY : (m.mean < 0.0 ? -INFINITY : 0.0);
    out.p_value = m.mean > 0.0 ? 0.0 : 1.0;
    return out;
  }
  out.t_statistic = m.mean / m.standard_error;
  const boost::math::students_t dist(static_cast<double>(x.size() - 1));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.t_statistic));
  return out;
}

}  // namespace qcw
