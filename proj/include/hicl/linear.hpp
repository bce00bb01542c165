#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hicl/corpus.hpp"

namespace hicl {

// Binary linear model for one hierarchy node: sparse weights plus an
// explicit unregularized bias (no intercept feature is appended to data).
struct NodeClassifier {
  std::vector<std::pair<int, double>> weights;  // ascending feature id
  double bias = 0.0;
};

struct TrainConfig {
  double c = 1.0;            // inverse-regularization strength on the loss term
  int max_iterations = 1000;
  double tolerance = 1e-6;   // gradient infinity-norm target
  std::uint64_t seed = 0;
  int threads = 1;           // fan-out for per-node training
};

struct LabeledExample {
  const Document* doc = nullptr;
  int sign = 0;  // +1 or -1
};

struct LabeledSet {
  std::vector<LabeledExample> examples;
};

// Value and gradient of J(w,b) = 0.5*||w||^2 + c * sum_i ln(1+exp(-y_i(w.x_i+b))).
struct Objective {
  double value = 0.0;
  std::vector<double> weight_grad;
  double bias_grad = 0.0;
};

Objective logistic_objective(const LabeledSet& data, const std::vector<double>& weights,
                             double bias, double c);

struct TrainResult {
  NodeClassifier classifier;
  int iterations = 0;
  double objective = 0.0;
  double grad_inf_norm = 0.0;
  bool converged = false;
  bool single_class = false;  // constant-output fallback engaged
};

// Deterministic full-batch L-BFGS from the zero start; converged once the
// gradient infinity-norm drops to cfg.tolerance. Training sets holding a
// single sign get the constant classifier (zero weights, large-margin bias)
// instead of a diverging optimization.
TrainResult train_logistic(const LabeledSet& data, const TrainConfig& cfg);

double sigmoid(double z);
double log_sigmoid(double z);  // ln(sigma(z)) without forming sigma

double predict_logit(const NodeClassifier& m, const Document& d);
double predict_proba(const NodeClassifier& m, const Document& d);
double log_predict_proba(const NodeClassifier& m, const Document& d);

// Bias magnitude of the constant classifier; sigma(35) is 1 within ~6e-16.
inline constexpr double kSingleClassLogit = 35.0;

}  // namespace hicl
