#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agentomit/trajectory.hpp"

namespace agentomit {

enum class SegmentOrigin { agent, environment };
enum class SegmentCategory { question, thought, action, observation, marker };

struct TranscriptSegment {
  std::string text;
  SegmentOrigin origin = SegmentOrigin::agent;
  int turn = 0;  // 0 for the question
  SegmentCategory category = SegmentCategory::thought;
  std::int64_t tokens = 0;
};

struct RenderedContext {
  std::vector<TranscriptSegment> segments;
  std::int64_t total_tokens = 0;  // sum over all segments, question included
  View view = View::transcript;

  std::string text() const;           // segments joined with newlines
  std::int64_t turn_tokens() const;   // total minus the question segment
};

/// Renders the tag wire format. Per turn: the think block (`<think> </think>`
/// when empty), one `<omit_tool_response_K></omit_tool_response_K>` command
/// per element of the turn's omission set in ascending order, the
/// `<tool_call>`/`<answer>` block, then the observation as
/// `<tool_response_T>TEXT</tool_response_T>`. In live view an observation
/// already omitted by a command in the rendered turns shows as the 2-token
/// placeholder `<omitted_tool_response_T></omitted_tool_response_T>`; in
/// transcript view every observation renders in full. A non-empty question
/// renders first as `<question>TEXT</question>`.
RenderedContext render(const std::string& question, std::span<const Turn> turns, View view);

struct OmissionApplied {
  std::vector<Turn> turns;
  int redundant = 0;  // indices that were already omitted (tolerated no-ops)
};

/// Marks the observations named by gamma as omitted and records the command
/// on turn t. Every index must be < t and reference an existing observation.
/// Re-omission of an already-omitted index is a counted no-op, not an error.
OmissionApplied apply_omission(std::vector<Turn> turns, int t, const std::vector<int>& gamma);

/// True for tokens of agent-origin segments, false for environment text
/// (observations and the question). Aligned to the concatenated token stream.
std::vector<bool> agent_token_mask(const RenderedContext& rendered);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

/// Inverse of render in transcript view: parse(render(q, turns)) == (q, turns).
std::pair<std::string, std::vector<Turn>> parse_transcript(std::string_view text);

}  // namespace agentomit
