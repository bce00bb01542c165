#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hicl/corpus.hpp"
#include "hicl/hierarchy.hpp"
#include "hicl/linear.hpp"

namespace hicl {

// The shared artifact for cascade and path-product prediction: the tree plus
// one binary classifier per non-root node. The root needs none, its
// probability is 1 by definition.
struct HierModel {
  Hierarchy hierarchy;
  std::map<NodeId, NodeClassifier> node_classifiers;
  std::optional<IdfTable> idf;
};

// One-vs-all baseline: one binary classifier per leaf.
struct FlatModel {
  std::map<NodeId, NodeClassifier> leaf_classifiers;
  std::optional<IdfTable> idf;
};

struct ScoredLeaf {
  NodeId leaf = -1;
  double log_score = 0.0;
};

struct NodeTrainStat {
  NodeId node = -1;
  int positives = 0;
  int negatives = 0;
  int iterations = 0;
  double grad_inf_norm = 0.0;
  bool converged = false;
  bool single_class = false;
  bool empty = false;  // no labeled descendants: zero classifier
};

struct TrainReport {
  std::vector<NodeTrainStat> nodes;
  std::vector<std::string> warnings;
};

// Positives: documents labeled under n; negatives: documents labeled under
// n's siblings; everything else excluded. Examples keep corpus order.
LabeledSet node_training_set(const Hierarchy& h, const Corpus& c, NodeId n);

// One classifier per non-root node; nodes without labeled descendants get a
// zero classifier and a warning. cfg.threads > 1 fans per-node jobs out over
// a worker pool; results are identical regardless of thread count.
HierModel train_hierarchical(const Hierarchy& h, const Corpus& c, const TrainConfig& cfg,
                             TrainReport* report = nullptr);

// One-vs-all classifier per leaf over the same corpus.
FlatModel train_flat(const Hierarchy& h, const Corpus& c, const TrainConfig& cfg,
                     TrainReport* report = nullptr);

// Greedy root-to-leaf descent, most probable child at each level; ties go to
// the earlier child in hierarchy file order.
NodeId cascade_predict(const HierModel& m, const Document& d);

// Log-probability of every root-to-leaf path, one depth-first traversal,
// each node classifier scored exactly once. Ascending leaf id.
std::vector<ScoredLeaf> ppath_scores(const HierModel& m, const Document& d);

// argmax over ppath_scores; ties go to the smaller leaf id.
NodeId ppath_predict(const HierModel& m, const Document& d);

// Per-leaf log-probabilities of the one-vs-all classifiers. Ascending leaf id.
std::vector<ScoredLeaf> flat_scores(const FlatModel& m, const Document& d);

// argmax of predict_proba over leaf classifiers; ties to the smaller leaf id.
NodeId flat_predict(const FlatModel& m, const Document& d);

// The min(k, #entries) highest-scoring leaves, descending score, ties by
// smaller leaf id.
std::vector<NodeId> top_k(const std::vector<ScoredLeaf>& scores, int k);

// Applies the model's idf table when present, otherwise returns the raw
// document unchanged (tf feature mode).
Document transform_for_model(const std::optional<IdfTable>& idf, const Document& d);

}  // namespace hicl
