// Copyright 2026 The authorprof Authors.
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

#ifndef AUTHORPROF_SVM_H_
#define AUTHORPROF_SVM_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "authorprof/vectorizer.h"

namespace authorprof {

// RBF width. `auto` resolves to 1 / n_features when training starts.
class Gamma {
 public:
  static Gamma automatic() { return Gamma(0.0); }
  // Throws Error(kParameter) unless value > 0.
  static Gamma fixed(double value);

  bool is_auto() const { return value_ == 0.0; }
  double value() const { return value_; }
  double resolve(std::size_t n_features) const;

  friend bool operator==(const Gamma &, const Gamma &) = default;

 private:
  explicit Gamma(double value) : value_(value) {}
  double value_;
};

struct KernelParams {
  Gamma gamma = Gamma::automatic();
  double c = 1.0;
};

struct SolverOptions {
  // Stopping threshold on the maximal KKT violation.
  double tol = 1e-3;
  // Iteration budget, in sweeps over the training set.
  int max_passes = 200;
  // Kernel row cache size.
  std::size_t cache_bytes = std::size_t{256} << 20;
};

// exp(-gamma * ||x - y||^2). Throws Error(kShape) if dims differ.
double rbf_kernel(const SparseVector &x, const SparseVector &y, double gamma);

struct TrainingDiagnostics {
  bool converged = true;
  std::size_t iterations = 0;
  double max_violation = 0.0;
  double dual_objective = 0.0;
};

struct BinarySvmModel {
  std::vector<SparseVector> support_vectors;
  std::vector<double> dual_coefs;  // alpha_i * y_i
  double bias = 0.0;
  double gamma = 1.0;
  double c = 1.0;
  // label_pair.first is the +1 class.
  std::pair<std::string, std::string> label_pair{"+1", "-1"};
  TrainingDiagnostics diagnostics;
};

// SMO on the C-SVC dual. `y` holds +1 / -1. Throws Error(kShape) on size
// mismatch and Error(kDegenerateTraining) if only one class is present.
// Non-convergence is reported in the returned diagnostics.
BinarySvmModel train_binary(std::span<const SparseVector> rows, std::span<const int> y,
                            const KernelParams &params, const SolverOptions &options = {});

double decision_function(const BinarySvmModel &model, const SparseVector &x);

struct MulticlassSvmModel {
  std::vector<std::string> classes;      // sorted
  std::vector<BinarySvmModel> machines;  // pairs (i, j), i < j, lexicographic
};

MulticlassSvmModel train_one_vs_one(std::span<const SparseVector> rows,
                                    std::span<const std::string> labels,
                                    const KernelParams &params,
                                    const SolverOptions &options = {});

// Majority vote over the pairwise machines. Ties go to the tied class with
// the largest accumulated winning margin, then to the first in class order.
std::string predict(const MulticlassSvmModel &model, const SparseVector &x);

bool all_converged(const MulticlassSvmModel &model);

}  // namespace authorprof

#endif  // AUTHORPROF_SVM_H_
