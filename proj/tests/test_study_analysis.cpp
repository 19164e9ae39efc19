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

#include "lfdasc/study_analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace lfdasc {
namespace {

using testing::TempDir;

ComparisonMatrix make_matrix(const std::vector<int>& radii,
                             const std::vector<std::vector<double>>& wins,
                             const std::string& scene = "test") {
  ComparisonMatrix m;
  m.scene = scene;
  m.stimuli = radii;
  m.wins.reserve(radii.size() * radii.size());
  for (const auto& row : wins)
    for (double w : row) m.wins.push_back(w);
  return m;
}

TEST(BtFit, TwoStimulusClosedForm) {
  const ComparisonMatrix m = make_matrix({0, 9}, {{0, 3}, {1, 0}});
  const BtScores scores = bt_fit(m);
  ASSERT_TRUE(scores.converged);
  EXPECT_NEAR(scores.q[0] / scores.q[1], 3.0, 1e-12);
  EXPECT_NEAR(scores.q[0], std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(scores.q[1], 1.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(bt_preference(scores, 0, 1), 0.75, 1e-12);
}

TEST(BtFit, SymmetricWinsGiveUniformScores) {
  const ComparisonMatrix m =
      make_matrix({0, 3, 6}, {{0, 5, 5}, {5, 0, 5}, {5, 5, 0}});
  const BtScores scores = bt_fit(m);
  for (double q : scores.q) EXPECT_NEAR(q, 1.0, 1e-9);
}

TEST(BtFit, GeometricMeanPinnedToOne) {
  const ComparisonMatrix m =
      make_matrix({0, 3, 6}, {{0, 9, 4}, {3, 0, 7}, {6, 5, 0}});
  const BtScores scores = bt_fit(m);
  double log_sum = 0.0;
  for (double q : scores.q) {
    EXPECT_GT(q, 0.0);
    log_sum += std::log(q);
  }
  EXPECT_NEAR(std::exp(log_sum / scores.q.size()), 1.0, 1e-9);
}

TEST(BtFit, RecoverKnownScoresFromExpectedCounts) {
  // Ground truth (0.5, 1, 2) has geometric mean 1 already.
  const std::vector<double> truth = {0.5, 1.0, 2.0};
  const double n = 1000.0;
  std::vector<std::vector<double>> wins(3, std::vector<double>(3, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      wins[i][j] = std::round(n * truth[i] / (truth[i] + truth[j]));
    }
  const BtScores scores = bt_fit(make_matrix({0, 9, 15}, wins));
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(scores.q[i], truth[i], 0.02 * truth[i]);
}

TEST(BtFit, WinScalingInvariance) {
  const ComparisonMatrix m =
      make_matrix({0, 3, 6}, {{0, 9, 4}, {3, 0, 7}, {6, 5, 0}});
  ComparisonMatrix doubled = m;
  for (double& w : doubled.wins) w *= 2.0;
  const BtScores a = bt_fit(m);
  const BtScores b = bt_fit(doubled);
  for (size_t i = 0; i < a.q.size(); ++i) EXPECT_NEAR(a.q[i], b.q[i], 1e-9);
}

// Scaling every score by a constant cancels inside the update once the
// geometric mean is renormalized, so the start point's scale is irrelevant.
TEST(BtStep, InvariantUnderInitialScoreScaling) {
  const ComparisonMatrix m =
      make_matrix({0, 3, 6}, {{0, 9, 4}, {3, 0, 7}, {6, 5, 0}});
  const std::vector<double> q = {1.0, 1.0, 1.0};
  std::vector<double> scaled = q;
  for (double& v : scaled) v *= 40.0;
  const std::vector<double> a = bt_step(m, q);
  const std::vector<double> b = bt_step(m, scaled);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(BtStep, LogLikelihoodNeverDecreases) {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> count(1, 20);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4;
    std::vector<std::vector<double>> wins(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) wins[i][j] = count(rng);
    const ComparisonMatrix m = make_matrix({0, 3, 6, 9}, wins);

    std::vector<double> q(n, 1.0);
    double ll = bt_log_likelihood(m, q);
    for (int iter = 0; iter < 20; ++iter) {
      q = bt_step(m, q);
      const double next_ll = bt_log_likelihood(m, q);
      EXPECT_GE(next_ll, ll - 1e-12);
      ll = next_ll;
    }
  }
}

TEST(BtFit, ZeroWinStimulusIsHardErrorWithoutSmoothing) {
  const ComparisonMatrix m = make_matrix({0, 9}, {{0, 4}, {0, 0}});
  EXPECT_THROW(bt_fit(m), std::runtime_error);

  BtOptions options;
  options.smoothing = 0.5;
  const BtScores scores = bt_fit(m, options);
  EXPECT_GT(scores.q[0], scores.q[1]);
  EXPECT_GT(scores.q[1], 0.0);
}

TEST(BtPreference, Complementarity) {
  const ComparisonMatrix m =
      make_matrix({0, 3, 6}, {{0, 9, 4}, {3, 0, 7}, {6, 5, 0}});
  const BtScores scores = bt_fit(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      EXPECT_NEAR(bt_preference(scores, i, j) + bt_preference(scores, j, i),
                  1.0, 1e-12);
    }
}

TEST(Lrt, EqualCountsAcceptNull) {
  const LrtResult r = lrt(7, 7);
  EXPECT_DOUBLE_EQ(r.lambda, 0.0);
  EXPECT_FALSE(r.reject_null);
}

TEST(Lrt, TenToTwoRejects) {
  const LrtResult r = lrt(10, 2);
  EXPECT_NEAR(r.lambda, 5.8221, 1e-3);
  EXPECT_TRUE(r.reject_null);
}

TEST(Lrt, Symmetric) {
  std::mt19937 rng(72);
  std::uniform_int_distribution<int> count(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = count(rng), b = count(rng);
    if (a + b == 0) continue;
    EXPECT_NEAR(lrt(a, b).lambda, lrt(b, a).lambda, 1e-12);
  }
}

TEST(Lrt, ZeroComparisonsThrow) {
  EXPECT_THROW(lrt(0, 0), std::invalid_argument);
}

TEST(Lrt, PublishedLambdasThroughTheRule) {
  EXPECT_TRUE(lrt_from_lambda(4.08).reject_null);
  EXPECT_FALSE(lrt_from_lambda(1.61).reject_null);
  EXPECT_TRUE(lrt_from_lambda(3.84).reject_null);   // boundary rejects
  EXPECT_FALSE(lrt_from_lambda(3.83).reject_null);
}

TEST(FindPeaks, BimodalScores) {
  const ComparisonMatrix m = make_matrix(
      {0, 3, 6, 9, 12, 15},
      std::vector<std::vector<double>>(6, std::vector<double>(6, 1.0)));
  BtScores scores;
  scores.q = {1.8, 0.7, 0.8, 1.4, 0.9, 0.6};
  const std::vector<Peak> peaks = find_peaks(m, scores);
  ASSERT_GE(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].radius, 0);
  EXPECT_EQ(peaks[1].radius, 9);
}

TEST(PreferredRadius, RejectTakesHigherScore) {
  const int r = preferred_radius({0, 1.8}, {9, 1.4}, lrt_from_lambda(4.08), 7);
  EXPECT_EQ(r, 0);
}

TEST(PreferredRadius, AcceptTakesPeakJustAboveOptimal) {
  const int r = preferred_radius({0, 1.5}, {9, 1.4}, lrt_from_lambda(1.61), 7);
  EXPECT_EQ(r, 9);
}

TEST(PreferredRadius, AcceptWithNoPeakAboveOptimalFails) {
  EXPECT_THROW(preferred_radius({0, 1.0}, {3, 1.1}, lrt_from_lambda(0.5), 7),
               std::runtime_error);
}

TEST(DecidePreferredRadius, SubstitutionChain) {
  // Peaks at 3 and 9 were never compared directly; radius 0 tests as equally
  // preferred to 3 and has a direct comparison with 9.
  LrtTable table;
  table[{0, 3}] = 0.04;
  table[{0, 9}] = 0.33;
  const std::vector<Peak> all = {{0, 1.19}, {3, 1.2},  {6, 0.8},
                                 {9, 1.3},  {12, 0.7}, {15, 0.5}};
  const int r = decide_preferred_radius({3, 1.2}, {9, 1.3}, table, all, 7);
  EXPECT_EQ(r, 9);
}

TEST(DecidePreferredRadius, NoSubstituteAvailableThrows) {
  LrtTable table;
  table[{0, 3}] = 5.0;  // significantly different, cannot stand in
  const std::vector<Peak> all = {{0, 1.0}, {3, 1.2}, {9, 1.3}};
  EXPECT_THROW(decide_preferred_radius({3, 1.2}, {9, 1.3}, table, all, 7),
               std::runtime_error);
}

TEST(AnalyzeScene, EndToEndFieldsPopulated) {
  // Strong preference for radius 0 against everything; 9 beats its other
  // neighbors, giving a bimodal profile.
  const ComparisonMatrix m = make_matrix(
      {0, 3, 6, 9, 12, 15}, {
                                {0, 30, 28, 20, 27, 29},  // 0 wins a lot
                                {5, 0, 10, 4, 12, 13},
                                {6, 10, 0, 5, 11, 12},
                                {15, 26, 25, 0, 24, 26},  // 9 also strong
                                {4, 8, 9, 6, 0, 11},
                                {3, 7, 8, 4, 9, 0},
                            });
  const SceneAnalysis a = analyze_scene(m, 7);
  EXPECT_EQ(a.radii.size(), 6u);
  EXPECT_TRUE(a.scores.converged);
  EXPECT_FALSE(a.lrt_table.empty());
  ASSERT_GE(a.peaks.size(), 2u);
  EXPECT_EQ(a.peaks[0].radius, 0);
  EXPECT_EQ(a.peaks[1].radius, 9);
  // 0 dominates 9 directly (20 vs 15) but not significantly; the rule then
  // prefers the peak just above r_hat.
  const double lambda = a.lrt_table.at({0, 9});
  EXPECT_LT(lambda, kChiSquareCritical);
  EXPECT_EQ(a.preferred, 9);
}

// --- vote ingestion ---

TEST(IngestVotes, AccumulatesWins) {
  TempDir dir;
  testing::write_text(dir / "votes.csv",
                      "participant,scene,radius_a,radius_b,choice\n"
                      "p1,zoo,0,9,a\n"
                      "p2,zoo,0,9,a\n"
                      "p3,zoo,0,9,a\n"
                      "p4,zoo,0,9,a\n");
  const auto matrices = ingest_votes((dir / "votes.csv").string());
  ASSERT_EQ(matrices.size(), 1u);
  const ComparisonMatrix& m = matrices[0];
  EXPECT_EQ(m.scene, "zoo");
  ASSERT_EQ(m.stimuli, (std::vector<int>{0, 9}));
  EXPECT_DOUBLE_EQ(m.win(0, 1), 4.0);
  EXPECT_DOUBLE_EQ(m.win(1, 0), 0.0);
}

TEST(IngestVotes, EmptyFileGivesEmptyList) {
  TempDir dir;
  testing::write_text(dir / "votes.csv", "");
  EXPECT_TRUE(ingest_votes((dir / "votes.csv").string()).empty());
}

TEST(IngestVotes, MixedScenesRecount) {
  TempDir dir;
  std::string csv = "participant,scene,radius_a,radius_b,choice\n";
  std::mt19937 rng(73);
  std::map<std::string, int> expected_rows;
  const std::vector<std::string> scenes = {"alpha", "beta", "gamma"};
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> radius_pick(0, 5);
  const int radii[] = {0, 3, 6, 9, 12, 15};
  for (int row = 0; row < 120; ++row) {
    const std::string scene = scenes[pick(rng)];
    int a = radii[radius_pick(rng)], b = radii[radius_pick(rng)];
    if (a == b) b = a == 0 ? 3 : 0;
    csv += "p," + scene + "," + std::to_string(a) + "," + std::to_string(b) +
           (row % 2 ? ",a\n" : ",b\n");
    ++expected_rows[scene];
  }
  testing::write_text(dir / "votes.csv", csv);

  const auto matrices = ingest_votes((dir / "votes.csv").string());
  ASSERT_EQ(matrices.size(), 3u);
  EXPECT_EQ(matrices[0].scene, "alpha");  // sorted by scene id
  EXPECT_EQ(matrices[1].scene, "beta");
  EXPECT_EQ(matrices[2].scene, "gamma");
  for (const ComparisonMatrix& m : matrices) {
    double total = 0.0;
    for (double w : m.wins) total += w;
    EXPECT_DOUBLE_EQ(total, expected_rows[m.scene]);
  }
}

TEST(IngestVotes, MalformedRowsNameTheLine) {
  TempDir dir;
  testing::write_text(dir / "votes.csv",
                      "p1,zoo,0,9,a\n"
                      "p2,zoo,0,nine,b\n");
  try {
    ingest_votes((dir / "votes.csv").string());
    FAIL() << "expected parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }

  testing::write_text(dir / "bad_choice.csv", "p1,zoo,0,9,yes\n");
  EXPECT_THROW(ingest_votes((dir / "bad_choice.csv").string()),
               std::runtime_error);

  testing::write_text(dir / "self.csv", "p1,zoo,9,9,a\n");
  EXPECT_THROW(ingest_votes((dir / "self.csv").string()), std::runtime_error);
}

TEST(IngestVotes, RadiusWhitelistEnforced) {
  TempDir dir;
  testing::write_text(dir / "votes.csv", "p1,zoo,0,7,a\n");
  EXPECT_NO_THROW(ingest_votes((dir / "votes.csv").string()));
  try {
    ingest_votes((dir / "votes.csv").string(), {0, 3, 6, 9, 12, 15});
    FAIL() << "expected unknown-radius error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("unknown radius 7"),
              std::string::npos);
  }
}

}  // namespace
}  // namespace lfdasc
