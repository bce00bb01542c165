#include "hicl/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace hicl {

namespace {

constexpr const char* kVersionLine = "hicl-model v1";

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string serialize_model(const ModelFile& file) {
  std::ostringstream out;
  out << kVersionLine << '\n';
  out << "kind " << (file.kind == ModelKind::hier ? "hier" : "flat") << '\n';
  out << "features " << file.features << '\n';
  if (file.idf) {
    out << "idf docs " << file.idf->num_docs() << " entries " << file.idf->doc_frequency().size()
        << '\n';
    for (const auto& [feature, df] : file.idf->doc_frequency())
      out << feature << ':' << df << '\n';
  }
  for (const auto& [node, clf] : file.classifiers) {
    out << "node " << node << " bias " << format_double(clf.bias) << '\n';
    for (const auto& [feature, weight] : clf.weights)
      out << feature << ':' << format_double(weight) << '\n';
  }
  return out.str();
}

ModelFile hier_model_file(const HierModel& m, const std::string& features) {
  ModelFile file;
  file.kind = ModelKind::hier;
  file.features = features;
  file.idf = m.idf;
  file.classifiers = m.node_classifiers;
  return file;
}

ModelFile flat_model_file(const FlatModel& m, const std::string& features) {
  ModelFile file;
  file.kind = ModelKind::flat;
  file.features = features;
  file.idf = m.idf;
  file.classifiers = m.leaf_classifiers;
  return file;
}

namespace {

[[noreturn]] void bad(const std::string& message, int line) {
  throw Error(Errc::bad_model_file, message, line);
}

bool parse_long(const char*& p, const char* end, long long& value) {
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec != std::errc() || next == p) return false;
  p = next;
  return true;
}

bool parse_double(const char*& p, const char* end, double& value) {
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec != std::errc() || next == p) return false;
  p = next;
  return true;
}

bool consume(const char*& p, const char* end, std::string_view token) {
  if (static_cast<std::size_t>(end - p) < token.size()) return false;
  if (std::string_view(p, token.size()) != token) return false;
  p += token.size();
  return true;
}

std::string strip_cr(const std::string& line) {
  if (!line.empty() && line.back() == '\r') return line.substr(0, line.size() - 1);
  return line;
}

}  // namespace

ModelFile parse_model(const std::vector<std::string>& lines) {
  if (lines.empty() || strip_cr(lines[0]) != kVersionLine)
    bad("missing version line \"" + std::string(kVersionLine) + "\"", 1);

  ModelFile file;
  std::size_t i = 1;
  auto next_line = [&]() -> std::string {
    return strip_cr(lines[i]);
  };

  // header: kind, features
  if (i >= lines.size()) bad("missing kind line", static_cast<int>(i + 1));
  {
    std::string line = next_line();
    if (line == "kind hier") file.kind = ModelKind::hier;
    else if (line == "kind flat") file.kind = ModelKind::flat;
    else bad("expected \"kind hier|flat\"", static_cast<int>(i + 1));
    ++i;
  }
  if (i >= lines.size()) bad("missing features line", static_cast<int>(i + 1));
  {
    std::string line = next_line();
    if (line == "features tf") file.features = "tf";
    else if (line == "features tfidf") file.features = "tfidf";
    else bad("expected \"features tf|tfidf\"", static_cast<int>(i + 1));
    ++i;
  }

  // optional idf block
  if (i < lines.size() && next_line().rfind("idf ", 0) == 0) {
    std::string line = next_line();
    long long docs = 0, entries = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    if (!consume(p, end, "idf docs ") || !parse_long(p, end, docs) ||
        !consume(p, end, " entries ") || !parse_long(p, end, entries) || p != end)
      bad("expected \"idf docs <N> entries <K>\"", static_cast<int>(i + 1));
    if (docs < 1 || entries < 0) bad("idf header out of range", static_cast<int>(i + 1));
    ++i;
    std::map<int, int> df;
    for (long long k = 0; k < entries; ++k, ++i) {
      if (i >= lines.size()) bad("idf block truncated", static_cast<int>(i + 1));
      std::string entry = next_line();
      const char* q = entry.data();
      const char* qend = entry.data() + entry.size();
      long long feature = 0, count = 0;
      if (!parse_long(q, qend, feature) || q == qend || *q != ':' ||
          (++q, !parse_long(q, qend, count)) || q != qend || feature < 0 || count < 1)
        bad("expected \"feature:df\"", static_cast<int>(i + 1));
      if (!df.emplace(static_cast<int>(feature), static_cast<int>(count)).second)
        bad("duplicate idf feature", static_cast<int>(i + 1));
    }
    file.idf = IdfTable(static_cast<int>(docs), std::move(df));
  }

  // classifier blocks
  NodeClassifier* current = nullptr;
  int last_feature = -1;
  for (; i < lines.size(); ++i) {
    std::string line = next_line();
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    if (line.rfind("node ", 0) == 0) {
      p += 5;
      long long node = 0;
      double bias = 0.0;
      if (!parse_long(p, end, node) || node < 0 || !consume(p, end, " bias ") ||
          !parse_double(p, end, bias) || p != end)
        bad("expected \"node <id> bias <float>\"", static_cast<int>(i + 1));
      auto [it, inserted] = file.classifiers.emplace(static_cast<int>(node), NodeClassifier{});
      if (!inserted) bad("duplicate classifier block for node " + std::to_string(node),
                         static_cast<int>(i + 1));
      it->second.bias = bias;
      current = &it->second;
      last_feature = -1;
      continue;
    }
    if (!current) bad("weight line before any \"node\" header", static_cast<int>(i + 1));
    long long feature = 0;
    double weight = 0.0;
    if (!parse_long(p, end, feature) || feature < 0 || p == end || *p != ':' ||
        (++p, !parse_double(p, end, weight)) || p != end)
      bad("expected \"feature:weight\"", static_cast<int>(i + 1));
    if (feature <= last_feature)
      bad("weight feature ids must be strictly increasing", static_cast<int>(i + 1));
    last_feature = static_cast<int>(feature);
    current->weights.emplace_back(static_cast<int>(feature), weight);
  }
  return file;
}

HierModel to_hier_model(const ModelFile& file, const Hierarchy& h) {
  if (file.kind != ModelKind::hier)
    throw Error(Errc::model_strategy_mismatch, "model file is not a hierarchical model");
  HierModel model;
  model.hierarchy = h;
  model.idf = file.idf;
  model.node_classifiers = file.classifiers;
  for (NodeId n : h.all_nodes()) {
    if (n == h.root()) continue;
    if (!model.node_classifiers.count(n))
      throw Error(Errc::bad_model_file, "model lacks a classifier for node " + std::to_string(n));
  }
  if (model.node_classifiers.size() != h.node_count() - 1)
    throw Error(Errc::bad_model_file, "model holds classifiers for nodes outside the hierarchy");
  return model;
}

FlatModel to_flat_model(const ModelFile& file) {
  if (file.kind != ModelKind::flat)
    throw Error(Errc::model_strategy_mismatch, "model file is not a flat model");
  FlatModel model;
  model.idf = file.idf;
  model.leaf_classifiers = file.classifiers;
  if (model.leaf_classifiers.empty())
    throw Error(Errc::bad_model_file, "flat model holds no classifiers");
  return model;
}

}  // namespace hicl
