#include "hicl/corpus.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace hicl {

namespace {

const char* skip_ws(const char* p, const char* end) {
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

bool parse_int(const char*& p, const char* end, long long& value) {
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec != std::errc() || next == p) return false;
  p = next;
  return true;
}

}  // namespace

Corpus parse_corpus(const std::vector<std::string>& lines) {
  Corpus corpus;
  int max_feature = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const int line_no = static_cast<int>(i + 1);
    const char* p = line.data();
    const char* end = line.data() + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;  // blank line

    long long label = 0;
    if (!parse_int(p, end, label) || label < 0)
      throw Error(Errc::malformed_line, "expected non-negative integer label", line_no);

    Document doc;
    doc.label = static_cast<NodeId>(label);
    long long prev_feature = -1;
    while (true) {
      p = skip_ws(p, end);
      if (p == end) break;
      long long feature = 0;
      if (!parse_int(p, end, feature) || feature < 0 || p == end || *p != ':')
        throw Error(Errc::malformed_line, "expected \"feature:count\" token", line_no);
      ++p;  // ':'
      long long value = 0;
      const char* value_start = p;
      if (!parse_int(p, end, value) || (p < end && *p != ' ' && *p != '\t' && *p != '\r')) {
        // Distinguish "0:-3" (negative count) from "0:x" / "0:1.5" (malformed).
        if (value_start < end && *value_start == '-')
          throw Error(Errc::negative_value, "negative term count", line_no);
        throw Error(Errc::malformed_line, "expected integer term count", line_no);
      }
      if (value < 0) throw Error(Errc::negative_value, "negative term count", line_no);
      if (feature <= prev_feature)
        throw Error(Errc::non_monotone_feature_ids,
                    "feature ids must be strictly increasing", line_no);
      prev_feature = feature;
      if (feature > max_feature) max_feature = static_cast<int>(feature);
      if (value > 0) {
        doc.features.emplace_back(static_cast<int>(feature), static_cast<double>(value));
        ++corpus.doc_frequency[static_cast<int>(feature)];
      }
    }
    corpus.documents.push_back(std::move(doc));
  }
  corpus.num_features = max_feature + 1;
  return corpus;
}

std::string write_corpus(const Corpus& corpus) {
  std::ostringstream out;
  for (const Document& doc : corpus.documents) {
    if (!doc.label)
      throw Error(Errc::missing_label, "cannot serialize a document without a label");
    out << *doc.label;
    for (const auto& [feature, value] : doc.features) {
      out << ' ' << feature << ':';
      if (value == static_cast<double>(static_cast<long long>(value)))
        out << static_cast<long long>(value);
      else
        out << value;
    }
    out << '\n';
  }
  return out.str();
}

IdfTable::IdfTable(int num_docs, std::map<int, int> doc_frequency)
    : num_docs_(num_docs), df_(std::move(doc_frequency)) {}

IdfTable IdfTable::from_corpus(const Corpus& corpus) {
  if (corpus.documents.empty()) throw Error(Errc::empty_corpus, "cannot build idf from no documents");
  return IdfTable(static_cast<int>(corpus.documents.size()), corpus.doc_frequency);
}

Document IdfTable::apply(const Document& doc) const {
  Document out;
  out.label = doc.label;
  out.features.reserve(doc.features.size());
  double norm_sq = 0.0;
  for (const auto& [feature, value] : doc.features) {
    auto it = df_.find(feature);
    if (it == df_.end()) continue;  // never seen in training: idf undefined, drop
    double weight = value * std::log(static_cast<double>(num_docs_) / it->second);
    if (weight == 0.0) continue;    // df == N, idf is 0
    out.features.emplace_back(feature, weight);
    norm_sq += weight * weight;
  }
  if (norm_sq > 0.0) {
    double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto& [feature, weight] : out.features) weight *= inv_norm;
  }
  return out;
}

Corpus tfidf_transform(const Corpus& corpus) {
  IdfTable table = IdfTable::from_corpus(corpus);
  Corpus out;
  out.num_features = corpus.num_features;
  out.doc_frequency = corpus.doc_frequency;
  out.documents.reserve(corpus.documents.size());
  for (const Document& doc : corpus.documents) out.documents.push_back(table.apply(doc));
  return out;
}

}  // namespace hicl
