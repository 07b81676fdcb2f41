/*
 * Copyright 2026 The oralarg Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// L2-regularized hinge-loss linear SVM trained by dual coordinate descent.
//
// The bias is an appended always-1 feature, so it is regularized like every
// other weight. The primal objective is
//
//   P(w, b) = 1/2 (|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w . x_i + b))
//
// and the solver minimizes the dual
//
//   D(a) = 1/2 a^T Q a - sum_i a_i,   0 <= a_i <= C,   Q_ij = y_i y_j (x_i . x_j + 1)
//
// one coordinate at a time over a seeded random permutation per epoch. It
// stops when the largest projected-gradient magnitude seen during an epoch
// drops below `tolerance`, or after `max_epochs`.
#ifndef ORALARG_SVM_HPP_
#define ORALARG_SVM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oralarg/matrix.hpp"

namespace oralarg {

struct SvmConfig {
  double C = 1.0;
  double tolerance = 1e-4;
  int max_epochs = 1000;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless C > 0, tolerance > 0, max_epochs > 0.
  void validate() const;
  bool operator==(const SvmConfig&) const = default;
};

struct LinearModel {
  std::vector<double> weights;  // dense, one per column
  double bias = 0.0;
  SvmConfig config;
  std::uint64_t space_fingerprint = 0;
  int epochs = 0;
  bool converged = false;

  int num_columns() const { return static_cast<int>(weights.size()); }

  // {config, bias, space_fingerprint, num_columns, weights: [[col, val], ...]}
  // Zero weights are omitted; columns ascending.
  std::string to_json() const;
  static LinearModel FromJson(std::string_view json);
};

// Per-epoch values recorded when a trace is requested.
struct TrainTrace {
  std::vector<double> dual_objective;    // D(a) after each epoch
  std::vector<double> primal_objective;  // P(w, b) after each epoch
  std::vector<double> max_violation;     // largest |projected gradient| per epoch
};

// Throws std::invalid_argument on single-class input, fewer than 2 rows, a
// column outside [0, num_columns), or a non-finite value (naming row/column).
LinearModel train_svm(std::span<const LabeledRow> rows, const SvmConfig& config,
                      int num_columns, std::uint64_t space_fingerprint = 0,
                      TrainTrace* trace = nullptr);

struct Prediction {
  int label = 1;
  double margin = 0.0;
};

double margin_of(const LinearModel& model, const SparseVector& x);

// Throws std::invalid_argument when `space_fingerprint` differs from the
// model's. Ties (margin == 0) predict +1.
Prediction predict(const LinearModel& model, const SparseVector& x,
                   std::uint64_t space_fingerprint);

// Exact primal objective P(w, b) of the model on `rows` with the model's C.
double objective_value(const LinearModel& model, std::span<const LabeledRow> rows);

}  // namespace oralarg

#endif  // ORALARG_SVM_HPP_
