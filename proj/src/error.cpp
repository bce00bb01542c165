#include "hicl/error.hpp"

namespace hicl {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::multiple_roots: return "MultipleRoots";
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::duplicate_parent: return "DuplicateParent";
    case Errc::empty_input: return "EmptyInput";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::malformed_line: return "MalformedLine";
    case Errc::non_monotone_feature_ids: return "NonMonotoneFeatureIds";
    case Errc::negative_value: return "NegativeValue";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::missing_label: return "MissingLabel";
    case Errc::non_finite_loss: return "NonFiniteLoss";
    case Errc::root_has_no_training_set: return "RootHasNoTrainingSet";
    case Errc::model_strategy_mismatch: return "ModelStrategyMismatch";
    case Errc::bad_model_file: return "BadModelFile";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::non_leaf_label: return "NonLeafLabel";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

namespace {

std::string format_message(Errc code, const std::string& message, int line) {
  std::string out = errc_name(code);
  if (line >= 0) {
    out += " at line ";
    out += std::to_string(line);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, int line)
    : std::runtime_error(format_message(code, message, line)), code_(code), line_(line) {}

}  // namespace hicl
