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

#include "authorprof/svm.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <list>
#include <numeric>
#include <unordered_map>

#include "authorprof/errors.h"

namespace authorprof {
namespace {

constexpr double kTau = 1e-12;
constexpr double kSupportThreshold = 1e-12;

void check_same_dim(const SparseVector &x, const SparseVector &y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::kShape, "vector dims differ: " + std::to_string(x.dim()) + " vs " +
                                       std::to_string(y.dim()));
  }
}

// Exact integer ||x - y||^2 by merged iteration over the sorted entries.
std::uint64_t squared_distance(const SparseVector &x, const SparseVector &y) {
  const auto &a = x.entries();
  const auto &b = y.entries();
  std::uint64_t sum = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].column == b[j].column) {
      const std::int64_t d = std::int64_t{a[i].count} - std::int64_t{b[j].count};
      sum += static_cast<std::uint64_t>(d * d);
      ++i;
      ++j;
    } else if (a[i].column < b[j].column) {
      sum += std::uint64_t{a[i].count} * a[i].count;
      ++i;
    } else {
      sum += std::uint64_t{b[j].count} * b[j].count;
      ++j;
    }
  }
  for (; i < a.size(); ++i) sum += std::uint64_t{a[i].count} * a[i].count;
  for (; j < b.size(); ++j) sum += std::uint64_t{b[j].count} * b[j].count;
  return sum;
}

// Lazily computed kernel rows with LRU eviction. Row i of the Gram matrix is
// built by scattering x_i into a dense buffer and gathering against every
// other row, which yields the same integer distances as squared_distance().
class KernelCache {
 public:
  KernelCache(std::span<const SparseVector> rows, double gamma, std::size_t cache_bytes)
      : rows_(rows), gamma_(gamma), norms_(rows.size()), dense_(rows.front().dim(), 0) {
    for (std::size_t i = 0; i < rows.size(); ++i) norms_[i] = rows[i].squared_norm();
    const std::size_t row_bytes = std::max<std::size_t>(1, rows.size() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, cache_bytes / row_bytes);
  }

  const std::vector<double> &row(std::size_t i) {
    auto it = lookup_.find(i);
    if (it != lookup_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (lru_.size() >= capacity_) {
      lookup_.erase(lru_.back().first);
      lru_.pop_back();
    }
    lru_.emplace_front(i, compute(i));
    lookup_[i] = lru_.begin();
    return lru_.front().second;
  }

 private:
  std::vector<double> compute(std::size_t i) {
    const auto &xi = rows_[i].entries();
    for (const auto &e : xi) dense_[e.column] = e.count;
    std::vector<double> out(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      std::uint64_t dot = 0;
      for (const auto &e : rows_[t].entries()) dot += std::uint64_t{dense_[e.column]} * e.count;
      const std::uint64_t d2 = norms_[i] + norms_[t] - 2 * dot;
      out[t] = std::exp(-gamma_ * static_cast<double>(d2));
    }
    for (const auto &e : xi) dense_[e.column] = 0;
    return out;
  }

  std::span<const SparseVector> rows_;
  double gamma_;
  std::vector<std::uint64_t> norms_;
  std::vector<std::uint32_t> dense_;
  std::size_t capacity_;
  std::list<std::pair<std::size_t, std::vector<double>>> lru_;
  std::unordered_map<std::size_t, decltype(lru_)::iterator> lookup_;
};

// SMO with second-order working-set selection on
//   min 1/2 a'Qa - e'a  s.t.  0 <= a_i <= C,  y'a = 0,  Q_ij = y_i y_j K_ij.
class SmoSolver {
 public:
  SmoSolver(std::span<const SparseVector> rows, std::span<const int> y, double gamma,
            double c, const SolverOptions &options)
      : n_(rows.size()),
        y_(y.begin(), y.end()),
        c_(c),
        options_(options),
        cache_(rows, gamma, options.cache_bytes),
        alpha_(n_, 0.0),
        grad_(n_, -1.0) {}

  TrainingDiagnostics solve() {
    TrainingDiagnostics diag;
    const std::size_t budget =
        static_cast<std::size_t>(std::max(options_.max_passes, 1)) * std::max<std::size_t>(n_, 1);
    diag.converged = false;
    while (diag.iterations < budget) {
      std::size_t i = 0, j = 0;
      double violation = 0.0;
      if (!select_working_set(i, j, violation)) {
        diag.converged = true;
        diag.max_violation = violation;
        break;
      }
      diag.max_violation = violation;
      update_pair(i, j);
      ++diag.iterations;
    }
    if (!diag.converged) {
      std::size_t i = 0, j = 0;
      double violation = 0.0;
      diag.converged = !select_working_set(i, j, violation);
      diag.max_violation = violation;
    }
    double objective = 0.0;
    for (std::size_t t = 0; t < n_; ++t) objective += alpha_[t] * (1.0 - grad_[t]);
    diag.dual_objective = 0.5 * objective;
    return diag;
  }

  const std::vector<double> &alpha() const { return alpha_; }

  // Offset b of f(x) = sum a_i y_i K(x_i, x) + b.
  double bias() const {
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      const double yg = y_[t] * grad_[t];
      if (at_upper(t)) {
        if (y_[t] < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
      } else if (at_lower(t)) {
        if (y_[t] > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
      } else {
        free_sum += yg;
        ++free_count;
      }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                      : 0.5 * (upper + lower);
    return -rho;
  }

 private:
  bool at_upper(std::size_t t) const { return alpha_[t] >= c_; }
  bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }
  bool in_up(std::size_t t) const { return y_[t] > 0 ? !at_upper(t) : !at_lower(t); }
  bool in_low(std::size_t t) const { return y_[t] > 0 ? !at_lower(t) : !at_upper(t); }

  // Returns false once the maximal violating pair is within tolerance.
  bool select_working_set(std::size_t &out_i, std::size_t &out_j, double &violation) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n_;
    for (std::size_t t = 0; t < n_; ++t) {
      if (in_up(t) && -y_[t] * grad_[t] >= gmax) {
        gmax = -y_[t] * grad_[t];
        i = t;
      }
    }
    if (i == n_) {
      violation = 0.0;
      return false;
    }
    const std::vector<double> &ki = cache_.row(i);
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    std::size_t j = n_;
    for (std::size_t t = 0; t < n_; ++t) {
      if (!in_low(t)) continue;
      const double yg = -y_[t] * grad_[t];
      gmax2 = std::max(gmax2, -yg);
      const double grad_diff = gmax - yg;
      if (grad_diff > 0) {
        double quad = 2.0 - 2.0 * ki[t];
        if (quad <= 0) quad = kTau;
        const double gain = -(grad_diff * grad_diff) / quad;
        if (gain <= best) {
          best = gain;
          j = t;
        }
      }
    }
    violation = gmax + gmax2;
    if (j == n_ || violation < options_.tol) return false;
    out_i = i;
    out_j = j;
    return true;
  }

  void update_pair(std::size_t i, std::size_t j) {
    // Capacity >= 2 and i is most recent, so fetching row j keeps ki valid.
    const std::vector<double> &ki = cache_.row(i);
    const double kij = ki[j];
    const std::vector<double> &kj = cache_.row(j);
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    double quad = 2.0 - 2.0 * kij;
    if (quad <= 0) quad = kTau;
    if (y_[i] != y_[j]) {
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = alpha_[i] - alpha_[j];
      alpha_[i] += delta;
      alpha_[j] += delta;
      if (diff > 0) {
        if (alpha_[j] < 0) { alpha_[j] = 0; alpha_[i] = diff; }
      } else {
        if (alpha_[i] < 0) { alpha_[i] = 0; alpha_[j] = -diff; }
      }
      if (diff > 0) {
        if (alpha_[i] > c_) { alpha_[i] = c_; alpha_[j] = c_ - diff; }
      } else {
        if (alpha_[j] > c_) { alpha_[j] = c_; alpha_[i] = c_ + diff; }
      }
    } else {
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = alpha_[i] + alpha_[j];
      alpha_[i] -= delta;
      alpha_[j] += delta;
      if (sum > c_) {
        if (alpha_[i] > c_) { alpha_[i] = c_; alpha_[j] = sum - c_; }
      } else {
        if (alpha_[j] < 0) { alpha_[j] = 0; alpha_[i] = sum; }
      }
      if (sum > c_) {
        if (alpha_[j] > c_) { alpha_[j] = c_; alpha_[i] = sum - c_; }
      } else {
        if (alpha_[i] < 0) { alpha_[i] = 0; alpha_[j] = sum; }
      }
    }
    const double di = (alpha_[i] - old_i) * y_[i];
    const double dj = (alpha_[j] - old_j) * y_[j];
    for (std::size_t t = 0; t < n_; ++t) {
      grad_[t] += y_[t] * (ki[t] * di + kj[t] * dj);
    }
  }

  std::size_t n_;
  std::vector<double> y_;
  double c_;
  SolverOptions options_;
  KernelCache cache_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
};

}  // namespace

Gamma Gamma::fixed(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kParameter, "gamma must be a positive finite number");
  }
  return Gamma(value);
}

double Gamma::resolve(std::size_t n_features) const {
  if (!is_auto()) return value_;
  if (n_features == 0) throw Error(ErrorCode::kShape, "cannot resolve gamma=auto with no features");
  return 1.0 / static_cast<double>(n_features);
}

double rbf_kernel(const SparseVector &x, const SparseVector &y, double gamma) {
  check_same_dim(x, y);
  return std::exp(-gamma * static_cast<double>(squared_distance(x, y)));
}

BinarySvmModel train_binary(std::span<const SparseVector> rows, std::span<const int> y,
                            const KernelParams &params, const SolverOptions &options) {
  if (rows.size() != y.size()) {
    throw Error(ErrorCode::kShape, "rows and labels differ in length");
  }
  if (!(params.c > 0.0) || !std::isfinite(params.c)) {
    throw Error(ErrorCode::kParameter, "C must be a positive finite number");
  }
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw Error(ErrorCode::kValue, "binary labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kDegenerateTraining, "binary training needs both classes present");
  }
  for (const auto &row : rows) check_same_dim(row, rows.front());
  const double gamma = params.gamma.resolve(rows.front().dim());

  // Solve in a canonical order so the result does not depend on how the
  // caller ordered the training set.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (y[a] != y[b]) return y[a] > y[b];
    return rows[a] < rows[b];
  });
  std::vector<SparseVector> sorted_rows;
  std::vector<int> sorted_y;
  sorted_rows.reserve(rows.size());
  sorted_y.reserve(rows.size());
  for (std::size_t idx : order) {
    sorted_rows.push_back(rows[idx]);
    sorted_y.push_back(y[idx]);
  }

  SmoSolver solver(sorted_rows, sorted_y, gamma, params.c, options);
  BinarySvmModel model;
  model.diagnostics = solver.solve();
  model.gamma = gamma;
  model.c = params.c;
  model.bias = solver.bias();
  const auto &alpha = solver.alpha();
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    if (alpha[t] > kSupportThreshold) {
      model.support_vectors.push_back(std::move(sorted_rows[t]));
      model.dual_coefs.push_back(alpha[t] * sorted_y[t]);
    }
  }
  return model;
}

double decision_function(const BinarySvmModel &model, const SparseVector &x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    sum += model.dual_coefs[i] * rbf_kernel(model.support_vectors[i], x, model.gamma);
  }
  return sum + model.bias;
}

MulticlassSvmModel train_one_vs_one(std::span<const SparseVector> rows,
                                    std::span<const std::string> labels,
                                    const KernelParams &params, const SolverOptions &options) {
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::kShape, "rows and labels differ in length");
  }
  MulticlassSvmModel model;
  model.classes.assign(labels.begin(), labels.end());
  std::sort(model.classes.begin(), model.classes.end());
  model.classes.erase(std::unique(model.classes.begin(), model.classes.end()),
                      model.classes.end());
  if (model.classes.size() < 2) {
    throw Error(ErrorCode::kDegenerateTraining, "need at least two distinct classes");
  }
  std::vector<std::vector<std::size_t>> members(model.classes.size());
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto pos = std::lower_bound(model.classes.begin(), model.classes.end(), labels[r]);
    members[static_cast<std::size_t>(pos - model.classes.begin())].push_back(r);
  }
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    if (members[a].empty()) {
      throw Error(ErrorCode::kConsistency, "class '" + model.classes[a] + "' has no rows");
    }
  }
  // gamma=auto must see the full feature count, not a per-pair subset.
  KernelParams resolved = params;
  resolved.gamma = Gamma::fixed(params.gamma.resolve(rows.front().dim()));

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      std::vector<SparseVector> pair_rows;
      std::vector<int> pair_y;
      for (std::size_t r : members[a]) { pair_rows.push_back(rows[r]); pair_y.push_back(1); }
      for (std::size_t r : members[b]) { pair_rows.push_back(rows[r]); pair_y.push_back(-1); }
      BinarySvmModel machine = train_binary(pair_rows, pair_y, resolved, options);
      machine.label_pair = {model.classes[a], model.classes[b]};
      model.machines.push_back(std::move(machine));
    }
  }
  return model;
}

std::string predict(const MulticlassSvmModel &model, const SparseVector &x) {
  const std::size_t k = model.classes.size();
  if (model.machines.size() != k * (k - 1) / 2) {
    throw Error(ErrorCode::kModelIncompatible, "machine count does not match class count");
  }
  std::vector<int> votes(k, 0);
  std::vector<double> margin(k, 0.0);
  std::size_t m = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b, ++m) {
      const double d = decision_function(model.machines[m], x);
      const std::size_t winner = d > 0 ? a : b;
      ++votes[winner];
      margin[winner] += std::abs(d);
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && margin[c] > margin[best])) {
      best = c;
    }
  }
  return model.classes[best];
}

bool all_converged(const MulticlassSvmModel &model) {
  return std::all_of(model.machines.begin(), model.machines.end(),
                     [](const BinarySvmModel &m) { return m.diagnostics.converged; });
}

}  // namespace authorprof
