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

#ifndef LFDASC_STUDY_ANALYSIS_HPP_
#define LFDASC_STUDY_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfdasc {

// chi^2 critical value, 1 degree of freedom, alpha = 0.05.
inline constexpr double kChiSquareCritical = 3.84;

// Pairwise win counts for one scene: wins[i][j] counts how often stimulus i
// (a filter radius) was preferred over stimulus j.
struct ComparisonMatrix {
  std::string scene;
  std::vector<int> stimuli;  // radii, strictly increasing
  std::vector<double> wins;  // n*n row-major, zero diagonal

  int size() const { return static_cast<int>(stimuli.size()); }

  double win(int i, int j) const {
    return wins[static_cast<size_t>(i) * stimuli.size() + j];
  }
  double& win(int i, int j) {
    return wins[static_cast<size_t>(i) * stimuli.size() + j];
  }

  int index_of(int radius) const {
    auto it = std::find(stimuli.begin(), stimuli.end(), radius);
    if (it == stimuli.end())
      throw std::out_of_range("radius " + std::to_string(radius) +
                              " is not a stimulus of scene '" + scene + "'");
    return static_cast<int>(it - stimuli.begin());
  }

  void validate() const {
    if (stimuli.size() < 2)
      throw std::invalid_argument("comparison matrix needs >= 2 stimuli");
    if (wins.size() != stimuli.size() * stimuli.size())
      throw std::invalid_argument("comparison matrix has wrong shape");
    if (!std::is_sorted(stimuli.begin(), stimuli.end()) ||
        std::adjacent_find(stimuli.begin(), stimuli.end()) != stimuli.end())
      throw std::invalid_argument("stimuli must be strictly increasing");
    for (int i = 0; i < size(); ++i) {
      if (win(i, i) != 0.0)
        throw std::invalid_argument("comparison matrix diagonal must be zero");
      for (int j = 0; j < size(); ++j)
        if (win(i, j) < 0.0)
          throw std::invalid_argument("win counts must be non-negative");
    }
  }
};

struct BtScores {
  std::vector<double> q;  // positive, geometric mean 1
  int iterations = 0;
  bool converged = false;
};

struct BtOptions {
  int max_iter = 10000;
  double tol = 1e-9;  // max relative score change between iterations
  // Pseudo-wins added to every directed pair when a stimulus would otherwise
  // have zero total wins. Off (0) means such matrices are a hard error.
  double smoothing = 0.0;
};

namespace detail {

inline std::vector<double> smoothed_wins(const ComparisonMatrix& w,
                                         double smoothing) {
  std::vector<double> out = w.wins;
  if (smoothing > 0.0) {
    const int n = w.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) out[static_cast<size_t>(i) * n + j] += smoothing;
  }
  return out;
}

}  // namespace detail

// One minorization-maximization update: each score becomes its win total
// divided by the comparison mass expected at the current scores, then the
// vector is renormalized to geometric mean 1.
inline std::vector<double> bt_step(const ComparisonMatrix& w,
                                   const std::vector<double>& q) {
  const int n = w.size();
  std::vector<double> next(n);
  for (int i = 0; i < n; ++i) {
    double numerator = 0.0, denominator = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      numerator += w.win(i, j);
      denominator += (w.win(i, j) + w.win(j, i)) / (q[i] + q[j]);
    }
    if (denominator <= 0.0)
      throw std::runtime_error("stimulus " + std::to_string(w.stimuli[i]) +
                               " has no comparisons");
    next[i] = numerator / denominator;
  }
  double log_sum = 0.0;
  for (double v : next) {
    if (v <= 0.0)
      throw std::runtime_error("a stimulus with zero wins drove its score to "
                               "zero; enable smoothing or drop it");
    log_sum += std::log(v);
  }
  const double gm = std::exp(log_sum / n);
  for (double& v : next) v /= gm;
  return next;
}

// Bradley-Terry log-likelihood of the win counts at scores q.
inline double bt_log_likelihood(const ComparisonMatrix& w,
                                const std::vector<double>& q) {
  const int n = w.size();
  double ll = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && w.win(i, j) > 0.0)
        ll += w.win(i, j) * std::log(q[i] / (q[i] + q[j]));
  return ll;
}

// Iterates bt_step from uniform scores until the largest relative change
// drops below tol. Stimuli with zero total wins are rejected up front unless
// smoothing pseudo-counts are enabled.
inline BtScores bt_fit(const ComparisonMatrix& w, const BtOptions& options = {}) {
  w.validate();
  ComparisonMatrix work = w;
  work.wins = detail::smoothed_wins(w, options.smoothing);

  const int n = work.size();
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += work.win(i, j);
    if (total <= 0.0)
      throw std::runtime_error(
          "stimulus " + std::to_string(work.stimuli[i]) + " of scene '" +
          work.scene +
          "' has zero wins; its score is unidentifiable (enable smoothing to "
          "proceed)");
  }

  BtScores result;
  result.q.assign(n, 1.0);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const std::vector<double> next = bt_step(work, result.q);
    double max_rel = 0.0;
    for (int i = 0; i < n; ++i)
      max_rel = std::max(max_rel,
                         std::abs(next[i] - result.q[i]) / result.q[i]);
    result.q = next;
    result.iterations = iter;
    if (max_rel < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

// Probability that stimulus i is preferred over stimulus j.
inline double bt_preference(const BtScores& scores, int i, int j) {
  const int n = static_cast<int>(scores.q.size());
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("bt_preference: stimulus index out of range");
  return scores.q[i] / (scores.q[i] + scores.q[j]);
}

struct LrtResult {
  double lambda = 0.0;
  double threshold = kChiSquareCritical;
  bool reject_null = false;  // true when the pair is significantly different
};

inline LrtResult lrt_from_lambda(double lambda,
                                 double threshold = kChiSquareCritical) {
  return {lambda, threshold, lambda >= threshold};
}

// Binomial likelihood-ratio test of "both equally preferred" (p = 1/2)
// against the empirical preference rate. With one free parameter the
// statistic is chi^2 with df = 1 under the null.
inline LrtResult lrt(double w_ij, double w_ji,
                     double threshold = kChiSquareCritical) {
  if (w_ij < 0.0 || w_ji < 0.0)
    throw std::invalid_argument("lrt: win counts must be non-negative");
  const double total = w_ij + w_ji;
  if (total < 1.0)
    throw std::invalid_argument("lrt: pair has no comparisons");
  const double p_hat = w_ij / total;
  auto xlogp = [](double x, double p) { return x > 0.0 ? x * std::log(p) : 0.0; };
  const double null_ll = total * std::log(0.5);
  const double alt_ll = xlogp(w_ij, p_hat) + xlogp(w_ji, 1.0 - p_hat);
  return lrt_from_lambda(-2.0 * (null_ll - alt_ll), threshold);
}

struct Peak {
  int radius = 0;
  double score = 0.0;
};

// Local maxima of the score sequence ordered by radius, strongest first.
inline std::vector<Peak> find_peaks(const ComparisonMatrix& w,
                                    const BtScores& scores) {
  const int n = w.size();
  std::vector<Peak> peaks;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || scores.q[i] >= scores.q[i - 1];
    const bool right_ok = i == n - 1 || scores.q[i] >= scores.q[i + 1];
    if (left_ok && right_ok) peaks.push_back({w.stimuli[i], scores.q[i]});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.radius < b.radius;
  });
  return peaks;
}

// Decision rule for one peak pair: when the test says the peaks differ, the
// higher-scoring radius wins; when they are equally preferred, take the peak
// just above the display-optimal radius so aliasing is removed.
inline int preferred_radius(const Peak& a, const Peak& b, const LrtResult& test,
                            int r_hat) {
  if (a.radius == b.radius)
    throw std::invalid_argument("preferred_radius: peaks must differ");
  if (test.reject_null) {
    if (a.score != b.score) return a.score > b.score ? a.radius : b.radius;
    return std::max(a.radius, b.radius);
  }
  std::vector<int> above;
  for (int r : {a.radius, b.radius})
    if (r > r_hat) above.push_back(r);
  if (above.empty())
    throw std::runtime_error(
        "peaks are equally preferred but neither exceeds the optimal radius " +
        std::to_string(r_hat));
  return *std::min_element(above.begin(), above.end());
}

// lambda per compared radius pair, keyed with the smaller radius first.
using LrtTable = std::map<std::pair<int, int>, double>;

inline std::optional<double> lookup_lambda(const LrtTable& table, int a, int b) {
  auto it = table.find({std::min(a, b), std::max(a, b)});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

// Full decision procedure for a scene's two score peaks. If the peaks were
// never compared directly, a stimulus that tests as equally preferred to the
// lower peak stands in for it; on the equal-preference branch the choice is
// still made among the original peaks.
inline int decide_preferred_radius(const Peak& peak1, const Peak& peak2,
                                   const LrtTable& table,
                                   const std::vector<Peak>& all_stimuli,
                                   int r_hat,
                                   double threshold = kChiSquareCritical) {
  const Peak& low = peak1.radius < peak2.radius ? peak1 : peak2;
  const Peak& high = peak1.radius < peak2.radius ? peak2 : peak1;

  if (auto lam = lookup_lambda(table, low.radius, high.radius))
    return preferred_radius(low, high, lrt_from_lambda(*lam, threshold), r_hat);

  // No direct comparison: substitute the most equally-preferred stand-in.
  std::optional<Peak> substitute;
  double best_equiv = threshold;
  for (const Peak& cand : all_stimuli) {
    if (cand.radius == low.radius || cand.radius == high.radius) continue;
    const auto equiv = lookup_lambda(table, cand.radius, low.radius);
    const auto main = lookup_lambda(table, cand.radius, high.radius);
    if (!equiv || !main || *equiv >= threshold) continue;
    if (!substitute || *equiv < best_equiv) {
      substitute = cand;
      best_equiv = *equiv;
    }
  }
  if (!substitute)
    throw std::runtime_error(
        "peaks " + std::to_string(low.radius) + " and " +
        std::to_string(high.radius) +
        " were never compared directly and no equally-preferred substitute "
        "links them");

  const double lam = *lookup_lambda(table, substitute->radius, high.radius);
  const LrtResult test = lrt_from_lambda(lam, threshold);
  if (test.reject_null) {
    // The substitute answers for the original lower peak.
    return substitute->score > high.score ? low.radius : high.radius;
  }
  return preferred_radius(low, high, test, r_hat);
}

struct SceneAnalysis {
  std::string scene;
  std::vector<int> radii;
  BtScores scores;
  LrtTable lrt_table;  // every directly compared pair
  std::vector<Peak> peaks;
  int r_hat = 0;
  int preferred = 0;
};

inline SceneAnalysis analyze_scene(const ComparisonMatrix& w, int r_hat,
                                   const BtOptions& options = {}) {
  SceneAnalysis analysis;
  analysis.scene = w.scene;
  analysis.radii = w.stimuli;
  analysis.r_hat = r_hat;
  analysis.scores = bt_fit(w, options);

  const int n = w.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w.win(i, j) + w.win(j, i) >= 1.0)
        analysis.lrt_table[{w.stimuli[i], w.stimuli[j]}] =
            lrt(w.win(i, j), w.win(j, i)).lambda;

  analysis.peaks = find_peaks(w, analysis.scores);
  if (analysis.peaks.size() == 1) {
    analysis.preferred = analysis.peaks.front().radius;
    return analysis;
  }

  std::vector<Peak> all;
  for (int i = 0; i < n; ++i) all.push_back({w.stimuli[i], analysis.scores.q[i]});
  analysis.preferred =
      decide_preferred_radius(analysis.peaks[0], analysis.peaks[1],
                              analysis.lrt_table, all, r_hat);
  return analysis;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  return fields;
}

}  // namespace detail

// Reads vote rows (participant, scene, radius_a, radius_b, choice a|b) and
// accumulates one win matrix per scene, scenes sorted by id. A header row is
// skipped when present. An optional radius whitelist rejects typos early.
inline std::vector<ComparisonMatrix> ingest_votes(
    const std::string& csv_path, const std::set<int>& allowed_radii = {}) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open votes file '" + csv_path + "'");

  struct Vote {
    int radius_a, radius_b;
    bool chose_a;
  };
  std::map<std::string, std::vector<Vote>> votes_by_scene;
  std::map<std::string, std::set<int>> radii_by_scene;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::vector<std::string> f = detail::split_csv_row(line);
    if (line_no == 1 && !f.empty() && f[0] == "participant") continue;
    if (f.size() != 5)
      throw std::runtime_error("votes line " + std::to_string(line_no) +
                               ": expected 5 fields "
                               "(participant,scene,radius_a,radius_b,choice), "
                               "got " +
                               std::to_string(f.size()));
    int ra, rb;
    try {
      size_t pos_a = 0, pos_b = 0;
      ra = std::stoi(f[2], &pos_a);
      rb = std::stoi(f[3], &pos_b);
      if (pos_a != f[2].size() || pos_b != f[3].size())
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::runtime_error("votes line " + std::to_string(line_no) +
                               ": radii must be integers, got '" + f[2] +
                               "' and '" + f[3] + "'");
    }
    if (ra == rb)
      throw std::runtime_error("votes line " + std::to_string(line_no) +
                               ": a pair cannot compare radius " +
                               std::to_string(ra) + " with itself");
    for (int r : {ra, rb})
      if (!allowed_radii.empty() && !allowed_radii.count(r))
        throw std::runtime_error("votes line " + std::to_string(line_no) +
                                 ": unknown radius " + std::to_string(r));
    bool chose_a;
    if (f[4] == "a" || f[4] == "A")
      chose_a = true;
    else if (f[4] == "b" || f[4] == "B")
      chose_a = false;
    else
      throw std::runtime_error("votes line " + std::to_string(line_no) +
                               ": choice must be 'a' or 'b', got '" + f[4] +
                               "'");
    votes_by_scene[f[1]].push_back({ra, rb, chose_a});
    radii_by_scene[f[1]].insert({ra, rb});
  }

  std::vector<ComparisonMatrix> out;
  for (const auto& [scene, votes] : votes_by_scene) {
    ComparisonMatrix m;
    m.scene = scene;
    m.stimuli.assign(radii_by_scene[scene].begin(),
                     radii_by_scene[scene].end());
    m.wins.assign(m.stimuli.size() * m.stimuli.size(), 0.0);
    for (const Vote& v : votes) {
      const int i = m.index_of(v.chose_a ? v.radius_a : v.radius_b);
      const int j = m.index_of(v.chose_a ? v.radius_b : v.radius_a);
      m.win(i, j) += 1.0;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace lfdasc

#endif  // LFDASC_STUDY_ANALYSIS_HPP_
