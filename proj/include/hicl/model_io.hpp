#pragma once

#include <string>
#include <vector>

#include "hicl/strategies.hpp"

namespace hicl {

// Text model format, exact round-trip:
//
//   hicl-model v1
//   kind hier|flat
//   features tf|tfidf
//   idf docs <N> entries <K>      (tfidf only, followed by K "f:df" lines)
//   node <id> bias <float>        (one block per classifier)
//   <f>:<w>
//   ...
//
// Floats are printed with 17 significant digits so parse(serialize(m))
// reproduces every weight bit-exactly.

enum class ModelKind { hier, flat };

struct ModelFile {
  ModelKind kind = ModelKind::hier;
  std::string features = "tf";  // "tf" or "tfidf"
  std::optional<IdfTable> idf;
  std::map<NodeId, NodeClassifier> classifiers;
};

std::string format_double(double value);  // 17 significant digits

std::string serialize_model(const ModelFile& file);
ModelFile hier_model_file(const HierModel& m, const std::string& features);
ModelFile flat_model_file(const FlatModel& m, const std::string& features);

ModelFile parse_model(const std::vector<std::string>& lines);

// Attach the hierarchy and validate coverage: exactly one classifier per
// non-root node.
HierModel to_hier_model(const ModelFile& file, const Hierarchy& h);
FlatModel to_flat_model(const ModelFile& file);

}  // namespace hicl
