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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "authorprof/errors.h"
#include "authorprof/random.h"
#include "dual_oracle.h"

namespace authorprof {
namespace {

using testing::DenseRows;

SparseVector from_dense(const std::vector<std::uint32_t> &values) {
  std::vector<SparseEntry> entries;
  for (std::uint32_t c = 0; c < values.size(); ++c) {
    if (values[c] > 0) entries.push_back({c, values[c]});
  }
  return SparseVector(values.size(), std::move(entries));
}

std::vector<double> to_dense(const SparseVector &v) {
  std::vector<double> out(v.dim(), 0.0);
  for (const auto &e : v.entries()) out[e.column] = e.count;
  return out;
}

SparseVector random_sparse(Rng &rng, std::size_t dim, double density, std::uint32_t max_count) {
  std::vector<std::uint32_t> values(dim, 0);
  for (auto &v : values) {
    if (rng.uniform() < density) v = 1 + static_cast<std::uint32_t>(rng.below(max_count));
  }
  return from_dense(values);
}

struct Dataset {
  std::vector<SparseVector> rows;
  std::vector<int> y;
};

Dataset random_dataset(Rng &rng, std::size_t n, std::size_t dim, double density) {
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    d.rows.push_back(random_sparse(rng, dim, density, 4));
    d.y.push_back(i == 0 ? 1 : i == 1 ? -1 : (rng.below(2) == 0 ? 1 : -1));
  }
  return d;
}

// alpha_i per training row, recovered from the model's support vectors.
std::vector<double> recover_alpha(const BinarySvmModel &model, const Dataset &d) {
  std::vector<double> alpha(d.rows.size(), 0.0);
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      if (d.rows[i] == model.support_vectors[s] && d.y[i] * model.dual_coefs[s] > 0) {
        alpha[i] = std::abs(model.dual_coefs[s]);
      }
    }
  }
  return alpha;
}

TEST(RbfKernel, Examples) {
  const SparseVector x = from_dense({1, 0});
  const SparseVector y = from_dense({0, 1});
  EXPECT_EQ(rbf_kernel(x, x, 0.5), 1.0);
  EXPECT_NEAR(rbf_kernel(x, y, 0.5), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(rbf_kernel(x, y, 0.5), 0.367879, 1e-6);
  EXPECT_EQ(Gamma::automatic().resolve(4), 0.25);
  EXPECT_THROW(rbf_kernel(x, from_dense({1, 0, 0}), 0.5), Error);
  EXPECT_THROW(Gamma::fixed(0.0), Error);
}

TEST(RbfKernel, SymmetryRangeAndIdentity) {
  Rng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t dim = 1 + rng.below(30);
    const SparseVector a = random_sparse(rng, dim, 0.3, 6);
    const SparseVector b = random_sparse(rng, dim, 0.3, 6);
    const double gamma = 1.0 / static_cast<double>(dim);
    const double k = rbf_kernel(a, b, gamma);
    EXPECT_EQ(k, rbf_kernel(b, a, gamma));
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, 1.0);
    EXPECT_EQ(rbf_kernel(a, a, gamma), 1.0);
    EXPECT_NEAR(k, testing::dense_rbf(to_dense(a), to_dense(b), gamma), 1e-14);
  }
}

TEST(RbfKernel, GramMatricesArePsd) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(11), dim = 1 + rng.below(8);
    std::vector<SparseVector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_sparse(rng, dim, 0.5, 3));
    Eigen::MatrixXd gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rbf_kernel(rows[i], rows[j], 0.3);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff(), -1e-8);
  }
}

TEST(TrainBinary, TwoPointAnalyticSolution) {
  // With y = (+1, -1) the equality constraint forces alpha1 = alpha2 = a and
  // the dual becomes 2a - a^2 (1 - K12), maximized at a = 2 / (2 - 2 K12).
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + rng.below(5);
    SparseVector a = random_sparse(rng, dim, 0.7, 3), b = random_sparse(rng, dim, 0.7, 3);
    if (a == b) continue;
    const double c = 0.05 + 3.0 * rng.uniform();
    const KernelParams params{Gamma::fixed(0.05 + rng.uniform()), c};
    const std::vector<SparseVector> rows = {a, b};
    const BinarySvmModel model = train_binary(rows, std::vector<int>{1, -1}, params);
    const double k12 = rbf_kernel(a, b, params.gamma.value());
    const double expected = std::min(c, 2.0 / (2.0 - 2.0 * k12));
    ASSERT_EQ(model.dual_coefs.size(), 2u);
    for (double coef : model.dual_coefs) EXPECT_NEAR(std::abs(coef), expected, 1e-9);
    EXPECT_GT(decision_function(model, a), 0.0);
    EXPECT_LT(decision_function(model, b), 0.0);
  }
}

TEST(TrainBinary, SymmetricMidpointEvaluatesToBias) {
  const std::vector<SparseVector> rows = {from_dense({2, 0}), from_dense({0, 2})};
  const BinarySvmModel model = train_binary(rows, std::vector<int>{1, -1}, {Gamma::fixed(0.2), 1.0});
  EXPECT_DOUBLE_EQ(decision_function(model, from_dense({1, 1})), model.bias);
}

TEST(TrainBinary, SeparablePairWithLargeC) {
  const std::vector<SparseVector> rows = {from_dense({5, 0, 1}), from_dense({0, 4, 1})};
  const BinarySvmModel model = train_binary(rows, std::vector<int>{-1, 1}, {Gamma::automatic(), 1e6});
  EXPECT_LT(decision_function(model, rows[0]), 0.0);
  EXPECT_GT(decision_function(model, rows[1]), 0.0);
}

TEST(TrainBinary, Errors) {
  const std::vector<SparseVector> rows = {from_dense({1, 0}), from_dense({0, 1})};
  try {
    train_binary(rows, std::vector<int>{1, 1}, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTraining);
  }
  EXPECT_THROW(train_binary(rows, std::vector<int>{1}, {}), Error);
  EXPECT_THROW(train_binary(rows, std::vector<int>{1, 0}, {}), Error);
  const std::vector<SparseVector> ragged = {from_dense({1, 0}), from_dense({0, 1, 1})};
  EXPECT_THROW(train_binary(ragged, std::vector<int>{1, -1}, {}), Error);
}

TEST(TrainBinary, FeasibilityAndKkt) {
  Rng rng(41);
  const SolverOptions options;
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset d = random_dataset(rng, 5 + rng.below(40), 3 + rng.below(10), 0.4);
    const double c = 0.1 + 4.0 * rng.uniform();
    const BinarySvmModel model = train_binary(d.rows, d.y, {Gamma::automatic(), c}, options);
    ASSERT_TRUE(model.diagnostics.converged);
    double coef_sum = 0.0;
    for (double coef : model.dual_coefs) {
      EXPECT_LE(std::abs(coef), c);
      coef_sum += coef;
    }
    EXPECT_LE(std::abs(coef_sum), 1e-9);
    const auto alpha = recover_alpha(model, d);
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      const double margin = d.y[i] * decision_function(model, d.rows[i]);
      if (alpha[i] <= 0.0) {
        EXPECT_GE(margin, 1.0 - options.tol);
      } else if (alpha[i] >= c) {
        EXPECT_LE(margin, 1.0 + options.tol);
      } else {
        EXPECT_NEAR(margin, 1.0, options.tol);
      }
    }
  }
}

TEST(TrainBinary, MatchesProjectedGradientOracle) {
  Rng rng(51);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t dim = 2 + rng.below(6);
    const Dataset d = random_dataset(rng, 20, dim, 1.0);
    const double gamma = 1.0 / static_cast<double>(dim);
    const BinarySvmModel model = train_binary(d.rows, d.y, {Gamma::automatic(), 1.0});
    DenseRows dense;
    for (const auto &r : d.rows) dense.push_back(to_dense(r));
    const auto oracle = testing::solve_dual_projected_gradient(dense, d.y, gamma, 1.0, 100000);
    EXPECT_NEAR(model.diagnostics.dual_objective, oracle.objective,
                1e-6 * std::abs(oracle.objective));
    for (std::size_t i = 0; i < dense.size(); ++i) {
      EXPECT_NEAR(decision_function(model, d.rows[i]),
                  testing::oracle_decision(dense, d.y, oracle, gamma, dense[i]), 1e-3);
    }
  }
}

TEST(TrainBinary, PermutationInvariant) {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Dataset d = random_dataset(rng, 30, 8, 0.4);
    const BinarySvmModel base = train_binary(d.rows, d.y, {});
    std::vector<std::size_t> order(d.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order.begin(), order.end());
    Dataset p;
    for (std::size_t i : order) {
      p.rows.push_back(d.rows[i]);
      p.y.push_back(d.y[i]);
    }
    const BinarySvmModel permuted = train_binary(p.rows, p.y, {});
    for (int q = 0; q < 20; ++q) {
      const SparseVector x = random_sparse(rng, 8, 0.4, 4);
      EXPECT_NEAR(decision_function(base, x), decision_function(permuted, x), 1e-9);
    }
  }
}

TEST(TrainBinary, BudgetExhaustionIsReported) {
  Rng rng(71);
  const Dataset d = random_dataset(rng, 40, 6, 0.5);
  SolverOptions options;
  options.tol = 1e-12;
  options.max_passes = 0;
  const BinarySvmModel model = train_binary(d.rows, d.y, {Gamma::automatic(), 10.0}, options);
  EXPECT_FALSE(model.diagnostics.converged);
  EXPECT_GT(model.diagnostics.max_violation, 1e-12);
}

TEST(TrainBinary, SmallCacheGivesSameModel) {
  Rng rng(72);
  const Dataset d = random_dataset(rng, 50, 10, 0.4);
  SolverOptions tiny;
  tiny.cache_bytes = 1;
  const BinarySvmModel a = train_binary(d.rows, d.y, {});
  const BinarySvmModel b = train_binary(d.rows, d.y, {}, tiny);
  EXPECT_EQ(a.dual_coefs, b.dual_coefs);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(OneVsOne, MachineCounts) {
  Rng rng(81);
  for (std::size_t k : {2u, 4u, 7u}) {
    std::vector<SparseVector> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < 3 * k; ++i) {
      rows.push_back(random_sparse(rng, 6, 0.5, 3));
      labels.push_back("class" + std::to_string(i % k));
    }
    const MulticlassSvmModel model = train_one_vs_one(rows, labels, {});
    EXPECT_EQ(model.classes.size(), k);
    EXPECT_EQ(model.machines.size(), k * (k - 1) / 2);
    EXPECT_TRUE(std::is_sorted(model.classes.begin(), model.classes.end()));
    EXPECT_EQ(model.machines.front().label_pair,
              std::make_pair(model.classes[0], model.classes[1]));
  }
}

TEST(OneVsOne, TwoClassPredictionFollowsDecisionSign) {
  Rng rng(82);
  std::vector<SparseVector> rows;
  std::vector<std::string> labels;
  for (int i = 0; i < 30; ++i) {
    rows.push_back(random_sparse(rng, 5, 0.6, 4));
    labels.push_back(i % 2 ? "male" : "female");
  }
  const MulticlassSvmModel model = train_one_vs_one(rows, labels, {});
  ASSERT_EQ(model.machines.size(), 1u);
  for (int q = 0; q < 50; ++q) {
    const SparseVector x = random_sparse(rng, 5, 0.6, 4);
    EXPECT_EQ(predict(model, x), decision_function(model.machines[0], x) > 0 ? "female" : "male");
  }
  EXPECT_THROW(train_one_vs_one(rows, std::vector<std::string>(30, "x"), {}), Error);
}

TEST(OneVsOne, SeparatedClassesPredictThemselves) {
  std::vector<SparseVector> rows;
  std::vector<std::string> labels;
  for (std::uint32_t cls = 0; cls < 3; ++cls) {
    for (std::uint32_t rep = 1; rep <= 3; ++rep) {
      std::vector<std::uint32_t> v(3, 0);
      v[cls] = 2 + rep;
      rows.push_back(from_dense(v));
      labels.push_back(std::string(1, static_cast<char>('a' + cls)));
    }
  }
  const MulticlassSvmModel model = train_one_vs_one(rows, labels, {Gamma::fixed(0.1), 10.0});
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(predict(model, rows[i]), labels[i]);
}

// A machine whose decision value is exactly `value` everywhere: two identical
// support vectors with opposite coefficients cancel, leaving the bias.
BinarySvmModel constant_machine(double value) {
  BinarySvmModel m;
  m.support_vectors = {SparseVector(1, {{0, 1}}), SparseVector(1, {{0, 1}})};
  m.dual_coefs = {0.5, -0.5};
  m.bias = value;
  m.gamma = 1.0;
  return m;
}

TEST(Predict, ThreeWayTieUsesAccumulatedMargin) {
  MulticlassSvmModel model;
  model.classes = {"a", "b", "c"};
  // (a,b) -> a by 1, (a,c) -> c by 2, (b,c) -> b by 3: one vote each.
  model.machines = {constant_machine(1.0), constant_machine(-2.0), constant_machine(3.0)};
  const SparseVector x(1, {{0, 2}});
  EXPECT_EQ(predict(model, x), "b");
  // Equal margins fall back to class order.
  model.machines = {constant_machine(1.0), constant_machine(-1.0), constant_machine(1.0)};
  EXPECT_EQ(predict(model, x), "a");
  // Unanimous votes win outright.
  model.machines = {constant_machine(-0.1), constant_machine(-0.1), constant_machine(-5.0)};
  EXPECT_EQ(predict(model, x), "c");
}

}  // namespace
}  // namespace authorprof
