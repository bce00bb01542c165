#include "hicl/linear.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace hicl {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double log_sigmoid(double z) {
  if (z >= 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

namespace {

// ln(1 + exp(t)) without overflow.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

int dimension_of(const LabeledSet& data) {
  int max_feature = -1;
  for (const LabeledExample& ex : data.examples)
    if (!ex.doc->features.empty())
      max_feature = std::max(max_feature, ex.doc->features.back().first);
  return max_feature + 1;
}

}  // namespace

Objective logistic_objective(const LabeledSet& data, const std::vector<double>& weights,
                             double bias, double c) {
  Objective obj;
  obj.weight_grad.assign(weights.size(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    obj.value += 0.5 * weights[i] * weights[i];
    obj.weight_grad[i] = weights[i];
  }
  for (const LabeledExample& ex : data.examples) {
    double z = bias;
    for (const auto& [feature, value] : ex.doc->features)
      if (feature < static_cast<int>(weights.size())) z += weights[feature] * value;
    const double margin = ex.sign * z;
    obj.value += c * softplus(-margin);
    const double coef = c * (-ex.sign) * sigmoid(-margin);
    obj.bias_grad += coef;
    for (const auto& [feature, value] : ex.doc->features)
      if (feature < static_cast<int>(weights.size())) obj.weight_grad[feature] += coef * value;
  }
  return obj;
}

namespace {

// Flat parameter layout: [w_0 .. w_{D-1}, b].
struct Eval {
  double value;
  std::vector<double> grad;
};

class LbfgsHistory {
public:
  explicit LbfgsHistory(std::size_t memory) : memory_(memory) {}

  void push(std::vector<double> s, std::vector<double> y) {
    double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    if (!(sy > 1e-12 * yy)) return;  // curvature too weak, skip the pair
    entries_.push_back({std::move(s), std::move(y), sy});
    if (entries_.size() > memory_) entries_.pop_front();
  }

  // Two-loop recursion for d = -H * g.
  std::vector<double> direction(const std::vector<double>& grad) const {
    std::vector<double> q = grad;
    std::vector<double> alpha(entries_.size());
    for (std::size_t i = entries_.size(); i-- > 0;) {
      const Entry& e = entries_[i];
      alpha[i] = std::inner_product(e.s.begin(), e.s.end(), q.begin(), 0.0) / e.sy;
      for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * e.y[j];
    }
    if (!entries_.empty()) {
      const Entry& last = entries_.back();
      double yy = std::inner_product(last.y.begin(), last.y.end(), last.y.begin(), 0.0);
      double gamma = last.sy / yy;
      for (double& v : q) v *= gamma;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const Entry& e = entries_[i];
      double beta = std::inner_product(e.y.begin(), e.y.end(), q.begin(), 0.0) / e.sy;
      for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * e.s[j];
    }
    for (double& v : q) v = -v;
    return q;
  }

  bool empty() const { return entries_.empty(); }

private:
  struct Entry {
    std::vector<double> s, y;
    double sy;
  };
  std::size_t memory_;
  std::deque<Entry> entries_;
};

double inf_norm(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::fabs(x));
  return out;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

TrainResult train_logistic(const LabeledSet& data, const TrainConfig& cfg) {
  if (data.examples.empty())
    throw Error(Errc::invalid_argument, "empty training set");
  if (cfg.c <= 0.0 || cfg.tolerance <= 0.0 || cfg.max_iterations <= 0)
    throw Error(Errc::invalid_argument, "train config requires c > 0, tolerance > 0, max_iterations > 0");

  bool has_pos = false, has_neg = false;
  for (const LabeledExample& ex : data.examples) {
    if (ex.sign > 0) has_pos = true;
    else has_neg = true;
  }
  if (!has_pos || !has_neg) {
    TrainResult result;
    result.classifier.bias = has_pos ? kSingleClassLogit : -kSingleClassLogit;
    result.single_class = true;
    result.converged = true;
    std::vector<double> none;
    Objective obj = logistic_objective(data, none, result.classifier.bias, cfg.c);
    result.objective = obj.value;
    result.grad_inf_norm = std::fabs(obj.bias_grad);
    return result;
  }

  const int dim = dimension_of(data);
  std::vector<double> x(dim + 1, 0.0);  // weights then bias

  auto evaluate = [&](const std::vector<double>& point) -> Eval {
    std::vector<double> w(point.begin(), point.end() - 1);
    Objective obj = logistic_objective(data, w, point.back(), cfg.c);
    Eval ev{obj.value, std::move(obj.weight_grad)};
    ev.grad.push_back(obj.bias_grad);
    return ev;
  };

  Eval cur = evaluate(x);
  if (!std::isfinite(cur.value) || !all_finite(cur.grad))
    throw Error(Errc::non_finite_loss, "objective not finite at start");

  LbfgsHistory history(10);
  int iter = 0;
  while (iter < cfg.max_iterations && inf_norm(cur.grad) > cfg.tolerance) {
    std::vector<double> dir = history.direction(cur.grad);
    double slope = std::inner_product(dir.begin(), dir.end(), cur.grad.begin(), 0.0);
    if (!(slope < 0.0)) {  // not a descent direction, restart from steepest descent
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -cur.grad[i];
      slope = -std::inner_product(cur.grad.begin(), cur.grad.end(), cur.grad.begin(), 0.0);
    }

    // Backtracking Armijo line search.
    double step = history.empty() ? std::min(1.0, 1.0 / inf_norm(cur.grad)) : 1.0;
    std::vector<double> next(x.size());
    Eval trial{};
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] + step * dir[i];
      trial = evaluate(next);
      if (std::isfinite(trial.value) && trial.value <= cur.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++iter;
    if (!accepted) break;  // no representable progress along this direction

    if (!all_finite(trial.grad))
      throw Error(Errc::non_finite_loss, "gradient not finite during optimization");

    std::vector<double> s(x.size()), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s[i] = next[i] - x[i];
      y[i] = trial.grad[i] - cur.grad[i];
    }
    history.push(std::move(s), std::move(y));
    x = std::move(next);
    cur = std::move(trial);
  }

  TrainResult result;
  result.iterations = iter;
  result.objective = cur.value;
  result.grad_inf_norm = inf_norm(cur.grad);
  result.converged = result.grad_inf_norm <= cfg.tolerance;
  result.classifier.bias = x.back();
  for (int f = 0; f < dim; ++f)
    if (x[f] != 0.0) result.classifier.weights.emplace_back(f, x[f]);
  return result;
}

double predict_logit(const NodeClassifier& m, const Document& d) {
  double z = m.bias;
  auto wi = m.weights.begin();
  auto di = d.features.begin();
  while (wi != m.weights.end() && di != d.features.end()) {
    if (wi->first < di->first) ++wi;
    else if (di->first < wi->first) ++di;
    else {
      z += wi->second * di->second;
      ++wi;
      ++di;
    }
  }
  return z;
}

double predict_proba(const NodeClassifier& m, const Document& d) {
  return sigmoid(predict_logit(m, d));
}

double log_predict_proba(const NodeClassifier& m, const Document& d) {
  return log_sigmoid(predict_logit(m, d));
}

}  // namespace hicl
