#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hicl/hierarchy.hpp"

namespace hicl {

// Sparse document: (feature id, weight) pairs with strictly ascending ids.
// Raw ingested weights are term counts; after tfidf_transform they are
// reweighted and L2-normalized reals.
struct Document {
  std::vector<std::pair<int, double>> features;
  std::optional<NodeId> label;
};

struct Corpus {
  std::vector<Document> documents;
  int num_features = 0;              // max feature id + 1 seen at ingest
  std::map<int, int> doc_frequency;  // feature id -> #documents containing it
};

// One document per non-blank line: "label f1:v1 f2:v2 ..." with strictly
// increasing feature ids and non-negative integer term counts. Zero counts
// are dropped and do not contribute to document frequency.
Corpus parse_corpus(const std::vector<std::string>& lines);

// Inverse serialization for term-count corpora (synthetic data, fixtures).
std::string write_corpus(const Corpus& corpus);

// Frozen document-frequency statistics of a training corpus. Applies
// v -> v * ln(N/df) followed by L2 normalization; features never seen in
// training have no defined idf and are dropped.
class IdfTable {
public:
  IdfTable() = default;
  IdfTable(int num_docs, std::map<int, int> doc_frequency);

  static IdfTable from_corpus(const Corpus& corpus);  // EmptyCorpus on no docs

  Document apply(const Document& doc) const;

  int num_docs() const { return num_docs_; }
  const std::map<int, int>& doc_frequency() const { return df_; }

  bool operator==(const IdfTable& other) const {
    return num_docs_ == other.num_docs_ && df_ == other.df_;
  }

private:
  int num_docs_ = 0;
  std::map<int, int> df_;
};

// Rebuilds every document with idf weights taken from the input corpus
// itself. The returned corpus keeps the input's doc_frequency so the same
// table can be applied to unseen documents later.
Corpus tfidf_transform(const Corpus& corpus);

}  // namespace hicl
