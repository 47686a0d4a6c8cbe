#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ordlab {

enum class UniformityLabel { uniform, non_uniform, unknown };

inline std::string label_name(UniformityLabel label) {
  switch (label) {
    case UniformityLabel::uniform: return "UNIFORM";
    case UniformityLabel::non_uniform: return "NON_UNIFORM";
    case UniformityLabel::unknown: return "UNKNOWN";
  }
  throw std::invalid_argument("unknown label");
}

// Machine-readable classification outcome. Non-uniform verdicts always name a
// sampler and a witness graph on which the named sampler realises the
// non-uniform consistent ordering.
struct Verdict {
  UniformityLabel label = UniformityLabel::unknown;
  std::string certificate;      // e.g. "t:free", "t:joins", "l:homog"
  std::string direction;        // extra certificate data (twin direction etc.)
  std::string witness_sampler;  // sampler kind name, for NON_UNIFORM
  std::string witness_graph;    // edge-list text of the witness graph
  std::vector<std::string> notes;
};

}  // namespace ordlab
