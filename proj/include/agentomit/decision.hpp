#pragma once

#include <array>
#include <string>
#include <vector>

namespace agentomit {

enum class ThoughtMode { verbose, empty };
enum class ActionKind { tool_call, answer };

/// One action the agent may take this turn, with its feature row.
/// Features: bias, question-overlap, legality, novelty, progress, length/16.
struct ActionCandidate {
  std::string text;
  ActionKind kind = ActionKind::tool_call;
  std::array<double, 6> features{};
};

/// A single turn's structured policy output: the unit of log-probability.
/// omit_flags is aligned to the present prior observations (ascending turn
/// index); the set of true flags is this turn's omission set.
struct Decision {
  ThoughtMode thought_mode = ThoughtMode::verbose;
  int action = 0;
  std::vector<bool> omit_flags;

  bool omits_anything() const {
    if (thought_mode == ThoughtMode::empty) return true;
    for (bool f : omit_flags)
      if (f) return true;
    return false;
  }
  bool omits_observation() const {
    for (bool f : omit_flags)
      if (f) return true;
    return false;
  }
  bool operator==(const Decision&) const = default;
};

}  // namespace agentomit
