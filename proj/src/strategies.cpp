#include "hicl/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <unordered_set>

namespace hicl {

namespace {

std::unordered_set<NodeId> leaf_set_under(const Hierarchy& h, NodeId n) {
  auto leaves = h.leaf_descendants(n);
  return {leaves.begin(), leaves.end()};
}

void check_training_corpus(const Hierarchy& h, const Corpus& c) {
  if (c.documents.empty()) throw Error(Errc::empty_corpus, "no documents to train on");
  for (std::size_t i = 0; i < c.documents.size(); ++i) {
    const Document& doc = c.documents[i];
    if (!doc.label)
      throw Error(Errc::missing_label, "training document " + std::to_string(i) + " has no label");
    if (!h.contains(*doc.label) || !h.is_leaf(*doc.label))
      throw Error(Errc::non_leaf_label, "training document " + std::to_string(i) + " labeled " +
                                            std::to_string(*doc.label) +
                                            ", which is not a leaf of the hierarchy");
  }
}

struct NodeJob {
  NodeId node;
  LabeledSet set;
};

struct NodeOutcome {
  NodeId node;
  NodeClassifier classifier;
  NodeTrainStat stat;
};

NodeOutcome run_node_job(const NodeJob& job, const TrainConfig& cfg) {
  NodeOutcome out;
  out.node = job.node;
  out.stat.node = job.node;
  for (const LabeledExample& ex : job.set.examples)
    (ex.sign > 0 ? out.stat.positives : out.stat.negatives)++;
  if (job.set.examples.empty()) {
    out.stat.empty = true;  // zero classifier, probability 0.5 everywhere
    return out;
  }
  TrainResult result = train_logistic(job.set, cfg);
  out.classifier = std::move(result.classifier);
  out.stat.iterations = result.iterations;
  out.stat.grad_inf_norm = result.grad_inf_norm;
  out.stat.converged = result.converged;
  out.stat.single_class = result.single_class;
  return out;
}

// Runs the jobs on cfg.threads workers. Jobs are independent and outputs are
// merged in input order, so the result does not depend on the thread count.
std::vector<NodeOutcome> run_jobs(std::vector<NodeJob>&& jobs, const TrainConfig& cfg) {
  std::vector<NodeOutcome> outcomes(jobs.size());
  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run_node_job(jobs[i], cfg);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      outcomes[i] = run_node_job(jobs[i], cfg);
    }
  };
  std::vector<std::future<void>> futures;
  for (int t = 0; t < threads; ++t) futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();
  return outcomes;
}

void record_outcome(const NodeOutcome& outcome, std::map<NodeId, NodeClassifier>& classifiers,
                    TrainReport* report) {
  classifiers[outcome.node] = outcome.classifier;
  if (!report) return;
  report->nodes.push_back(outcome.stat);
  if (outcome.stat.empty)
    report->warnings.push_back("node " + std::to_string(outcome.node) +
                               ": no labeled descendants, zero classifier");
  else if (outcome.stat.single_class)
    report->warnings.push_back("node " + std::to_string(outcome.node) +
                               ": single-class training set, constant classifier");
  else if (!outcome.stat.converged)
    report->warnings.push_back("node " + std::to_string(outcome.node) +
                               ": optimizer stopped before reaching tolerance");
}

}  // namespace

LabeledSet node_training_set(const Hierarchy& h, const Corpus& c, NodeId n) {
  auto parent = h.parent(n);  // throws UnknownNode for foreign ids
  if (!parent) throw Error(Errc::root_has_no_training_set, "root node has no siblings");

  auto positive_leaves = leaf_set_under(h, n);
  std::unordered_set<NodeId> negative_leaves;
  for (NodeId sibling : h.children(*parent)) {
    if (sibling == n) continue;
    for (NodeId leaf : h.leaf_descendants(sibling)) negative_leaves.insert(leaf);
  }

  LabeledSet set;
  for (const Document& doc : c.documents) {
    if (!doc.label) continue;
    if (positive_leaves.count(*doc.label)) set.examples.push_back({&doc, +1});
    else if (negative_leaves.count(*doc.label)) set.examples.push_back({&doc, -1});
  }
  return set;
}

HierModel train_hierarchical(const Hierarchy& h, const Corpus& c, const TrainConfig& cfg,
                             TrainReport* report) {
  check_training_corpus(h, c);
  std::vector<NodeJob> jobs;
  for (NodeId n : h.all_nodes()) {
    if (n == h.root()) continue;
    jobs.push_back({n, node_training_set(h, c, n)});
  }
  HierModel model;
  model.hierarchy = h;
  for (const NodeOutcome& outcome : run_jobs(std::move(jobs), cfg))
    record_outcome(outcome, model.node_classifiers, report);
  return model;
}

FlatModel train_flat(const Hierarchy& h, const Corpus& c, const TrainConfig& cfg,
                     TrainReport* report) {
  check_training_corpus(h, c);
  std::vector<NodeJob> jobs;
  for (NodeId leaf : h.leaves()) {
    LabeledSet set;
    for (const Document& doc : c.documents)
      set.examples.push_back({&doc, *doc.label == leaf ? +1 : -1});
    jobs.push_back({leaf, std::move(set)});
  }
  FlatModel model;
  for (const NodeOutcome& outcome : run_jobs(std::move(jobs), cfg))
    record_outcome(outcome, model.leaf_classifiers, report);
  return model;
}

namespace {

const NodeClassifier& classifier_for(const HierModel& m, NodeId n) {
  auto it = m.node_classifiers.find(n);
  if (it == m.node_classifiers.end())
    throw Error(Errc::bad_model_file, "no classifier for node " + std::to_string(n));
  return it->second;
}

}  // namespace

NodeId cascade_predict(const HierModel& m, const Document& d) {
  NodeId current = m.hierarchy.root();
  while (!m.hierarchy.is_leaf(current)) {
    const std::vector<NodeId>& kids = m.hierarchy.children(current);
    NodeId best = kids.front();
    double best_p = predict_proba(classifier_for(m, best), d);
    for (std::size_t i = 1; i < kids.size(); ++i) {
      double p = predict_proba(classifier_for(m, kids[i]), d);
      if (p > best_p) {
        best = kids[i];
        best_p = p;
      }
    }
    current = best;
  }
  return current;
}

std::vector<ScoredLeaf> ppath_scores(const HierModel& m, const Document& d) {
  std::vector<ScoredLeaf> out;
  out.reserve(m.hierarchy.leaves().size());
  // Depth-first accumulation of log-probabilities; the paper's product over
  // ancestors underflows on deep paths, the log-sum does not.
  std::vector<std::pair<NodeId, double>> stack{{m.hierarchy.root(), 0.0}};
  while (!stack.empty()) {
    auto [node, acc] = stack.back();
    stack.pop_back();
    if (m.hierarchy.is_leaf(node)) {
      out.push_back({node, acc});
      continue;
    }
    for (NodeId child : m.hierarchy.children(node))
      stack.push_back({child, acc + log_predict_proba(classifier_for(m, child), d)});
  }
  std::sort(out.begin(), out.end(),
            [](const ScoredLeaf& a, const ScoredLeaf& b) { return a.leaf < b.leaf; });
  return out;
}

namespace {

NodeId argmax_leaf(const std::vector<ScoredLeaf>& scores) {
  NodeId best = scores.front().leaf;
  double best_score = scores.front().log_score;
  for (const ScoredLeaf& s : scores) {
    if (s.log_score > best_score) {  // strict: ties keep the smaller id
      best = s.leaf;
      best_score = s.log_score;
    }
  }
  return best;
}

}  // namespace

NodeId ppath_predict(const HierModel& m, const Document& d) {
  return argmax_leaf(ppath_scores(m, d));
}

std::vector<ScoredLeaf> flat_scores(const FlatModel& m, const Document& d) {
  std::vector<ScoredLeaf> out;
  out.reserve(m.leaf_classifiers.size());
  for (const auto& [leaf, clf] : m.leaf_classifiers)
    out.push_back({leaf, log_predict_proba(clf, d)});
  return out;
}

NodeId flat_predict(const FlatModel& m, const Document& d) {
  if (m.leaf_classifiers.empty())
    throw Error(Errc::invalid_argument, "flat model has no classifiers");
  return argmax_leaf(flat_scores(m, d));
}

std::vector<NodeId> top_k(const std::vector<ScoredLeaf>& scores, int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be >= 1");
  std::vector<ScoredLeaf> sorted = scores;
  std::sort(sorted.begin(), sorted.end(), [](const ScoredLeaf& a, const ScoredLeaf& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    return a.leaf < b.leaf;
  });
  std::size_t n = std::min<std::size_t>(k, sorted.size());
  std::vector<NodeId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sorted[i].leaf;
  return out;
}

Document transform_for_model(const std::optional<IdfTable>& idf, const Document& d) {
  return idf ? idf->apply(d) : d;
}

}  // namespace hicl
