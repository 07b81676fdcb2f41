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

#include "oralarg/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace oralarg {
namespace {

double Dot(const std::vector<double>& w, const SparseVector& x) {
  double s = 0.0;
  for (const auto& [col, v] : x) s += w[col] * v;
  return s;
}

double SquaredNorm(const std::vector<double>& w, double bias) {
  double s = bias * bias;
  for (const double v : w) s += v * v;
  return s;
}

double Primal(const std::vector<double>& w, double bias, double C,
              std::span<const LabeledRow> rows) {
  double loss = 0.0;
  for (const LabeledRow& r : rows) {
    loss += std::max(0.0, 1.0 - r.label * (Dot(w, r.x) + bias));
  }
  return 0.5 * SquaredNorm(w, bias) + C * loss;
}

void ValidateRows(std::span<const LabeledRow> rows, int num_columns) {
  if (rows.size() < 2) throw std::invalid_argument("train_svm needs at least 2 rows");
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LabeledRow& r = rows[i];
    if (r.label == 1) {
      pos = true;
    } else if (r.label == -1) {
      neg = true;
    } else {
      throw std::invalid_argument("row " + std::to_string(i) + " has label " +
                                  std::to_string(r.label) + "; expected +1 or -1");
    }
    for (const auto& [col, v] : r.x) {
      if (col < 0 || col >= num_columns) {
        throw std::invalid_argument("row " + std::to_string(i) + " column " +
                                    std::to_string(col) + " outside [0, " +
                                    std::to_string(num_columns) + ")");
      }
      if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite feature value at row " + std::to_string(i) +
                                    ", column " + std::to_string(col));
      }
    }
  }
  if (!pos || !neg) {
    throw std::invalid_argument("train_svm needs both labels; got a single class");
  }
}

}  // namespace

void SvmConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("SVM C must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("SVM tolerance must be > 0");
  if (max_epochs <= 0) throw std::invalid_argument("SVM max_epochs must be > 0");
}

LinearModel train_svm(std::span<const LabeledRow> rows, const SvmConfig& config,
                      int num_columns, std::uint64_t space_fingerprint, TrainTrace* trace) {
  config.validate();
  ValidateRows(rows, num_columns);

  const std::size_t n = rows.size();
  LinearModel model;
  model.config = config;
  model.space_fingerprint = space_fingerprint;
  model.weights.assign(static_cast<std::size_t>(num_columns), 0.0);
  std::vector<double>& w = model.weights;
  double& bias = model.bias;

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 1.0;  // the appended bias feature
    for (const auto& [col, v] : rows[i].x) s += v * v;
    diag[i] = s;
  }

  std::vector<double> alpha(n, 0.0);
  double alpha_sum = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);
  const double C = config.C;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng() % (i + 1)]);
    }
    double max_violation = 0.0;
    for (const std::size_t i : order) {
      const LabeledRow& r = rows[i];
      const double y = r.label;
      const double g = y * (Dot(w, r.x) + bias) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= C) {
        pg = std::max(g, 0.0);
      }
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - g / diag[i], 0.0, C);
      const double delta = (alpha[i] - old) * y;
      if (delta == 0.0) continue;
      for (const auto& [col, v] : r.x) w[col] += delta * v;
      bias += delta;
      alpha_sum += alpha[i] - old;
    }
    model.epochs = epoch + 1;
    if (trace != nullptr) {
      trace->dual_objective.push_back(0.5 * SquaredNorm(w, bias) - alpha_sum);
      trace->primal_objective.push_back(Primal(w, bias, C, rows));
      trace->max_violation.push_back(max_violation);
    }
    if (max_violation < config.tolerance) {
      model.converged = true;
      break;
    }
  }
  return model;
}

double margin_of(const LinearModel& model, const SparseVector& x) {
  double s = model.bias;
  for (const auto& [col, v] : x) {
    if (col >= 0 && col < model.num_columns()) s += model.weights[col] * v;
  }
  return s;
}

Prediction predict(const LinearModel& model, const SparseVector& x,
                   std::uint64_t space_fingerprint) {
  if (space_fingerprint != model.space_fingerprint) {
    throw std::invalid_argument("feature space fingerprint " + fingerprint_hex(space_fingerprint) +
                                " does not match model's " +
                                fingerprint_hex(model.space_fingerprint));
  }
  Prediction p;
  p.margin = margin_of(model, x);
  p.label = p.margin >= 0.0 ? 1 : -1;
  return p;
}

double objective_value(const LinearModel& model, std::span<const LabeledRow> rows) {
  double loss = 0.0;
  for (const LabeledRow& r : rows) {
    loss += std::max(0.0, 1.0 - r.label * margin_of(model, r.x));
  }
  return 0.5 * SquaredNorm(model.weights, model.bias) + model.config.C * loss;
}

std::string LinearModel::to_json() const {
  nlohmann::json doc;
  doc["config"] = {{"C", config.C},
                   {"tolerance", config.tolerance},
                   {"max_epochs", config.max_epochs},
                   {"seed", config.seed}};
  doc["bias"] = bias;
  doc["space_fingerprint"] = fingerprint_hex(space_fingerprint);
  doc["num_columns"] = num_columns();
  nlohmann::json ws = nlohmann::json::array();
  for (int c = 0; c < num_columns(); ++c) {
    if (weights[c] != 0.0) ws.push_back(nlohmann::json::array({c, weights[c]}));
  }
  doc["weights"] = std::move(ws);
  return doc.dump() + "\n";
}

LinearModel LinearModel::FromJson(std::string_view text) {
  const nlohmann::json doc = nlohmann::json::parse(text.begin(), text.end());
  LinearModel m;
  const auto& cfg = doc.at("config");
  m.config.C = cfg.at("C").get<double>();
  m.config.tolerance = cfg.at("tolerance").get<double>();
  m.config.max_epochs = cfg.at("max_epochs").get<int>();
  m.config.seed = cfg.at("seed").get<std::uint64_t>();
  m.bias = doc.at("bias").get<double>();
  m.space_fingerprint = std::stoull(doc.at("space_fingerprint").get<std::string>(), nullptr, 16);
  const int cols = doc.at("num_columns").get<int>();
  if (cols < 0) throw std::invalid_argument("model num_columns must be >= 0");
  m.weights.assign(static_cast<std::size_t>(cols), 0.0);
  int last = -1;
  for (const auto& entry : doc.at("weights")) {
    const int c = entry.at(0).get<int>();
    if (c <= last || c >= cols) {
      throw std::invalid_argument("model weights must be sorted by column and in range");
    }
    m.weights[c] = entry.at(1).get<double>();
    last = c;
  }
  return m;
}

}  // namespace oralarg
