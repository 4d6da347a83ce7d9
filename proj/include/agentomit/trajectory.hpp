#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agentomit/decision.hpp"

namespace agentomit {

struct ThoughtBlock {
  ThoughtMode mode = ThoughtMode::verbose;
  std::string text;  // empty iff mode == empty
  bool operator==(const ThoughtBlock&) const = default;
};

struct ActionBlock {
  ActionKind kind = ActionKind::tool_call;
  std::string text;  // never empty
  bool operator==(const ActionBlock&) const = default;
};

enum class ObsState { present, omitted };

/// Environment feedback. The original text is retained even when omitted:
/// rewards need the pruned token count and analyses need counterfactual
/// replay.
struct ObservationCell {
  ObsState state = ObsState::present;
  std::string text;
  bool operator==(const ObservationCell&) const = default;
};

struct Turn {
  int t = 0;  // 1-based
  ThoughtBlock thought;
  std::vector<int> omit;  // ascending indices of earlier turns, all < t
  ActionBlock action;
  std::optional<ObservationCell> observation;  // absent on the final answer turn
  bool operator==(const Turn&) const = default;
};

struct Trajectory {
  std::string task_id;
  std::string env;
  std::uint64_t seed = 0;
  std::string question;
  std::vector<Turn> turns;
  std::string final_answer;
  double r_task = 0.0;
  double r_omit = 0.0;
  bool operator==(const Trajectory&) const = default;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enforces the structural invariants: consecutive 1-based turn indices,
/// exactly the last turn answers, observations present on every non-final
/// turn and absent on the final one, every omit entry references an earlier
/// turn with an observation, and an observation is marked omitted iff some
/// later turn's omit set names it.
void validate(const Trajectory& trajectory);

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON-Lines codec, one object per line, field order fixed for byte-stable
/// output. decode validates every record and reports line + field on error.
std::string encode_jsonl(std::span<const Trajectory> trajectories);
std::vector<Trajectory> decode_jsonl(std::string_view stream);

enum class View { live, transcript };

struct TokenBreakdown {
  struct PerTurn {
    std::int64_t thought = 0;
    std::int64_t action = 0;
    std::int64_t observation = 0;
    std::int64_t markers = 0;
  };
  std::int64_t thought = 0;
  std::int64_t action = 0;
  std::int64_t observation = 0;
  std::int64_t markers = 0;
  std::vector<PerTurn> per_turn;
  std::int64_t total() const { return thought + action + observation + markers; }
};

/// Category-wise token accounting over the turns (the question is input, not
/// part of the trajectory's own cost). In transcript view observations count
/// in full regardless of omission state; in live view an omitted observation
/// contributes its 2-token placeholder to the markers category instead.
TokenBreakdown token_breakdown(const Trajectory& trajectory, View view = View::transcript);

/// Tok(y): token count of the pre-omission transcript. Thoughts count as
/// emitted (an empty thought still costs its 2 tag tokens), observations in
/// full, omission commands included.
std::int64_t full_transcript_tokens(const Trajectory& trajectory);

}  // namespace agentomit
