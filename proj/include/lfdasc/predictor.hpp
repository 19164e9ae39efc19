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

#ifndef LFDASC_PREDICTOR_HPP_
#define LFDASC_PREDICTOR_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lfdasc {

// Decreasing sigmoid mapping a scene complexity score to a blur radius:
// r(f) = kappa / (1 + exp(beta * (f - gamma))).
struct SigmoidModel {
  double kappa = 0.0;  // radius ceiling
  double beta = 0.0;   // transition steepness
  double gamma = 0.0;  // score at the half-kappa midpoint

  void validate() const {
    if (kappa <= 0.0)
      throw std::invalid_argument("SigmoidModel: kappa must be positive");
  }

  // Shipped coefficients of the reference fit against the study data.
  static SigmoidModel reference() { return {21.9, 4.5, 9.0}; }
};

// Evaluates the sigmoid with an overflow-safe logistic; extreme scores
// return the limit values 0 and kappa.
inline double sigmoid_eval(const SigmoidModel& model, double f) {
  model.validate();
  const double x = model.beta * (f - model.gamma);
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return model.kappa * e / (1.0 + e);
  }
  return model.kappa / (1.0 + std::exp(x));
}

struct FitSample {
  double f = 0.0;
  double radius = 0.0;
};

struct FitResult {
  SigmoidModel model;
  int iterations = 0;
  double residual = 0.0;          // sum of squared errors at the final model
  double initial_residual = 0.0;  // same at the starting point
  bool converged = false;
};

namespace detail {

inline double logistic(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// Solves a 3x3 system in place with partial pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    std::swap(m[col], m[pivot]);
    if (std::abs(m[col][col]) < 1e-300)
      throw std::runtime_error("sigmoid fit: singular normal equations");
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double factor = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

inline double sum_squared_error(const SigmoidModel& model,
                                const std::vector<FitSample>& samples) {
  double s = 0.0;
  for (const FitSample& p : samples) {
    const double r = sigmoid_eval(model, p.f) - p.radius;
    s += r * r;
  }
  return s;
}

}  // namespace detail

// Least-squares fit of the sigmoid by damped Gauss-Newton with the analytic
// Jacobian. Start: kappa at the largest observed radius, gamma at the median
// score, beta = 1. Each step is halved (up to 30 times) until the squared
// error decreases; iteration stops once the error improves by less than
// 1e-10 or after 500 rounds. Deterministic for fixed input order.
inline FitResult fit_sigmoid(const std::vector<FitSample>& samples) {
  if (samples.size() < 3)
    throw std::invalid_argument("fit_sigmoid: need at least 3 samples");
  const double radius_lo =
      std::min_element(samples.begin(), samples.end(),
                       [](const FitSample& a, const FitSample& b) {
                         return a.radius < b.radius;
                       })
          ->radius;
  const double radius_hi =
      std::max_element(samples.begin(), samples.end(),
                       [](const FitSample& a, const FitSample& b) {
                         return a.radius < b.radius;
                       })
          ->radius;
  if (radius_lo == radius_hi)
    throw std::invalid_argument(
        "fit_sigmoid: all radii are equal, the transition is unidentifiable");
  if (radius_hi <= 0.0)
    throw std::invalid_argument("fit_sigmoid: radii must include a positive value");

  std::vector<double> fs;
  fs.reserve(samples.size());
  for (const FitSample& p : samples) fs.push_back(p.f);
  std::sort(fs.begin(), fs.end());
  const size_t mid = fs.size() / 2;
  const double median_f = fs.size() % 2 == 1
                              ? fs[mid]
                              : 0.5 * (fs[mid - 1] + fs[mid]);

  FitResult result;
  result.model = {radius_hi, 1.0, median_f};
  result.initial_residual = detail::sum_squared_error(result.model, samples);
  double error = result.initial_residual;

  constexpr int kMaxIterations = 500;
  constexpr int kMaxHalvings = 30;
  constexpr double kErrorTolerance = 1e-10;

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    result.iterations = iter;

    // Normal equations J^T J delta = -J^T r.
    std::array<std::array<double, 4>, 3> normal{};
    for (const FitSample& p : samples) {
      const double x = result.model.beta * (p.f - result.model.gamma);
      const double sig = detail::logistic(x);
      const double slope = result.model.kappa * sig * (1.0 - sig);
      const std::array<double, 3> jac = {
          sig,                            // d/d kappa
          -slope * (p.f - result.model.gamma),  // d/d beta
          slope * result.model.beta,      // d/d gamma
      };
      const double r = result.model.kappa * sig - p.radius;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) normal[a][b] += jac[a] * jac[b];
        normal[a][3] -= jac[a] * r;
      }
    }
    const std::array<double, 3> delta = detail::solve3(normal);

    double step = 1.0;
    bool improved = false;
    SigmoidModel candidate = result.model;
    double candidate_error = error;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      SigmoidModel trial = {result.model.kappa + step * delta[0],
                            result.model.beta + step * delta[1],
                            result.model.gamma + step * delta[2]};
      if (trial.kappa > 0.0) {
        const double trial_error = detail::sum_squared_error(trial, samples);
        if (trial_error < error) {
          candidate = trial;
          candidate_error = trial_error;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) {
      result.converged = true;  // no descent direction left
      break;
    }
    const double gain = error - candidate_error;
    result.model = candidate;
    error = candidate_error;
    if (gain < kErrorTolerance) {
      result.converged = true;
      break;
    }
  }
  result.residual = error;
  return result;
}

// Evaluates the model and snaps to the nearest available radius, rounding
// ties toward the larger (more aliasing-suppressing) radius.
inline int predict_radius(const SigmoidModel& model, double f,
                          const std::vector<int>& available) {
  if (available.empty())
    throw std::invalid_argument("predict_radius: no radii to choose from");
  const double raw = sigmoid_eval(model, f);
  int best = available.front();
  for (int r : available) {
    const double d = std::abs(raw - r);
    const double best_d = std::abs(raw - best);
    if (d < best_d || (d == best_d && r > best)) best = r;
  }
  return best;
}

inline void save_model(const std::filesystem::path& path,
                       const SigmoidModel& model) {
  nlohmann::json j;
  j["kappa"] = model.kappa;
  j["beta"] = model.beta;
  j["gamma"] = model.gamma;
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot create model file '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

inline SigmoidModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open model file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed model file '" + path.string() +
                             "': " + e.what());
  }
  SigmoidModel model;
  try {
    model.kappa = j.at("kappa").get<double>();
    model.beta = j.at("beta").get<double>();
    model.gamma = j.at("gamma").get<double>();
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("model file '" + path.string() +
                             "' must define kappa, beta and gamma");
  }
  model.validate();
  return model;
}

}  // namespace lfdasc

#endif  // LFDASC_PREDICTOR_HPP_
