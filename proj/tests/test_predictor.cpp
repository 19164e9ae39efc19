// Copyright 2026 The lfdasc Authors.
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

#include "lfdasc/predictor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace lfdasc {
namespace {

using testing::TempDir;

TEST(SigmoidEval, MidpointIsHalfKappa) {
  const SigmoidModel m = SigmoidModel::reference();
  EXPECT_NEAR(sigmoid_eval(m, m.gamma), 10.95, 1e-9);
}

TEST(SigmoidEval, LimitsAreZeroAndKappa) {
  const SigmoidModel m = SigmoidModel::reference();
  EXPECT_DOUBLE_EQ(sigmoid_eval(m, 1e9), 0.0);
  EXPECT_DOUBLE_EQ(sigmoid_eval(m, -1e9), m.kappa);
  EXPECT_TRUE(std::isfinite(sigmoid_eval(m, 1e308)));
  EXPECT_TRUE(std::isfinite(sigmoid_eval(m, -1e308)));
}

TEST(SigmoidEval, StrictlyDecreasingWithinRange) {
  const SigmoidModel m = SigmoidModel::reference();
  std::mt19937 rng(81);
  std::uniform_real_distribution<double> f(-30.0, 30.0);
  for (int trial = 0; trial < 10000; ++trial) {
    double f1 = f(rng), f2 = f(rng);
    if (f1 == f2) continue;
    if (f1 > f2) std::swap(f1, f2);
    const double r1 = sigmoid_eval(m, f1), r2 = sigmoid_eval(m, f2);
    EXPECT_GE(r1, r2);
    EXPECT_GE(r1, 0.0);
    EXPECT_LE(r1, m.kappa);
  }
}

TEST(FitSigmoid, RecoversGeneratingCoefficients) {
  const SigmoidModel truth = SigmoidModel::reference();
  std::vector<FitSample> samples;
  for (double f : {7.5, 8.0, 8.5, 8.8, 9.2, 9.5, 10.0, 10.5})
    samples.push_back({f, sigmoid_eval(truth, f)});

  const FitResult fit = fit_sigmoid(samples);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.model.kappa, truth.kappa, 1e-4 * truth.kappa);
  EXPECT_NEAR(fit.model.beta, truth.beta, 1e-4 * truth.beta);
  EXPECT_NEAR(fit.model.gamma, truth.gamma, 1e-4 * truth.gamma);
  EXPECT_LE(fit.residual, fit.initial_residual);
}

TEST(FitSigmoid, ResidualNeverAboveStart) {
  std::mt19937 rng(82);
  std::uniform_real_distribution<double> noise(-0.3, 0.3);
  const SigmoidModel truth = {15.0, 2.0, 1.0};
  std::vector<FitSample> samples;
  for (double f = -2.0; f <= 4.0; f += 0.5)
    samples.push_back({f, sigmoid_eval(truth, f) + noise(rng)});
  const FitResult fit = fit_sigmoid(samples);
  EXPECT_LE(fit.residual, fit.initial_residual);
}

TEST(FitSigmoid, ConstantRadiiRejected) {
  std::vector<FitSample> samples = {{0.0, 9.0}, {1.0, 9.0}, {2.0, 9.0}};
  EXPECT_THROW(fit_sigmoid(samples), std::invalid_argument);
}

TEST(FitSigmoid, TooFewSamplesRejected) {
  EXPECT_THROW(fit_sigmoid({{0.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST(PredictRadius, MidpointSnapsUpToTwelve) {
  const SigmoidModel m = SigmoidModel::reference();
  EXPECT_EQ(predict_radius(m, m.gamma, {0, 3, 6, 9, 12, 15}), 12);
}

TEST(PredictRadius, LargeScoreSnapsToZero) {
  EXPECT_EQ(predict_radius(SigmoidModel::reference(), 100.0,
                           {0, 3, 6, 9, 12, 15}),
            0);
}

TEST(PredictRadius, ExactTieGoesToLargerRadius) {
  // kappa = 21, beta -> 0 gives exactly 10.5 everywhere: midway of 9 and 12.
  const SigmoidModel m = {21.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(sigmoid_eval(m, 5.0), 10.5);
  EXPECT_EQ(predict_radius(m, 5.0, {0, 3, 6, 9, 12, 15}), 12);
}

TEST(PredictRadius, AlwaysAMemberOfAvailable) {
  const std::vector<int> available = {0, 3, 6, 9, 12, 15};
  const SigmoidModel m = SigmoidModel::reference();
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> f(-20.0, 40.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = predict_radius(m, f(rng), available);
    EXPECT_NE(std::find(available.begin(), available.end(), r),
              available.end());
  }
}

TEST(PredictRadius, EmptyAvailableThrows) {
  EXPECT_THROW(predict_radius(SigmoidModel::reference(), 1.0, {}),
               std::invalid_argument);
}

TEST(ModelIo, RoundTrip) {
  TempDir dir;
  const SigmoidModel m = {12.5, 3.25, -0.75};
  save_model(dir / "model.json", m);
  const SigmoidModel back = load_model(dir / "model.json");
  EXPECT_DOUBLE_EQ(back.kappa, m.kappa);
  EXPECT_DOUBLE_EQ(back.beta, m.beta);
  EXPECT_DOUBLE_EQ(back.gamma, m.gamma);
}

TEST(ModelIo, MissingFieldRejected) {
  TempDir dir;
  testing::write_text(dir / "model.json", R"({"kappa": 2.0, "beta": 1.0})");
  EXPECT_THROW(load_model(dir / "model.json"), std::runtime_error);
}

TEST(ModelIo, NonPositiveKappaRejected) {
  TempDir dir;
  testing::write_text(dir / "model.json",
                      R"({"kappa": -1.0, "beta": 1.0, "gamma": 0.0})");
  EXPECT_THROW(load_model(dir / "model.json"), std::invalid_argument);
}

TEST(Reference, ShipsTheStudyCoefficients) {
  const SigmoidModel m = SigmoidModel::reference();
  EXPECT_DOUBLE_EQ(m.kappa, 21.9);
  EXPECT_DOUBLE_EQ(m.beta, 4.5);
  EXPECT_DOUBLE_EQ(m.gamma, 9.0);
}

}  // namespace
}  // namespace lfdasc
