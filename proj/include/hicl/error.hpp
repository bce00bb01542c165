#pragma once

#include <stdexcept>
#include <string>

namespace hicl {

enum class Errc {
  // hierarchy
  multiple_roots,
  cycle_detected,
  duplicate_parent,
  empty_input,
  unknown_node,
  malformed_line,
  // corpus
  non_monotone_feature_ids,
  negative_value,
  empty_corpus,
  missing_label,
  // linear
  non_finite_loss,
  // strategies / model files
  root_has_no_training_set,
  model_strategy_mismatch,
  bad_model_file,
  // eval
  length_mismatch,
  non_leaf_label,
  // io / cli
  io_error,
  invalid_argument,
};

const char* errc_name(Errc code);

// All library failures are reported through this type. `line` is the 1-based
// input line for parse errors, -1 when there is no line to point at.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message, int line = -1);

  Errc code() const { return code_; }
  int line() const { return line_; }

private:
  Errc code_;
  int line_;
};

}  // namespace hicl
