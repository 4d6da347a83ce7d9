#include "agentomit/render.hpp"

#include <algorithm>
#include <set>

#include "agentomit/tokenizer.hpp"

namespace agentomit {

std::string RenderedContext::text() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '\n';
    out += segments[i].text;
  }
  return out;
}

std::int64_t RenderedContext::turn_tokens() const {
  std::int64_t n = 0;
  for (const TranscriptSegment& s : segments)
    if (s.category != SegmentCategory::question) n += s.tokens;
  return n;
}

namespace {

void push(RenderedContext& ctx, std::string text, SegmentOrigin origin, int turn,
          SegmentCategory category) {
  TranscriptSegment seg;
  seg.tokens = static_cast<std::int64_t>(token_count(text));
  seg.text = std::move(text);
  seg.origin = origin;
  seg.turn = turn;
  seg.category = category;
  ctx.total_tokens += seg.tokens;
  ctx.segments.push_back(std::move(seg));
}

}  // namespace

RenderedContext render(const std::string& question, std::span<const Turn> turns, View view) {
  RenderedContext ctx;
  ctx.view = view;
  if (!question.empty())
    push(ctx, "<question>" + question + "</question>", SegmentOrigin::environment, 0,
         SegmentCategory::question);

  std::set<int> omitted;
  for (const Turn& turn : turns)
    for (int k : turn.omit) omitted.insert(k);

  for (const Turn& turn : turns) {
    if (turn.thought.mode == ThoughtMode::empty)
      push(ctx, "<think> </think>", SegmentOrigin::agent, turn.t, SegmentCategory::thought);
    else
      push(ctx, "<think>" + turn.thought.text + "</think>", SegmentOrigin::agent, turn.t,
           SegmentCategory::thought);

    for (int k : turn.omit) {
      const std::string ks = std::to_string(k);
      push(ctx, "<omit_tool_response_" + ks + "></omit_tool_response_" + ks + ">",
           SegmentOrigin::agent, turn.t, SegmentCategory::marker);
    }

    if (turn.action.kind == ActionKind::tool_call)
      push(ctx, "<tool_call>" + turn.action.text + "</tool_call>", SegmentOrigin::agent, turn.t,
           SegmentCategory::action);
    else
      push(ctx, "<answer>" + turn.action.text + "</answer>", SegmentOrigin::agent, turn.t,
           SegmentCategory::action);

    if (turn.observation) {
      const std::string ts = std::to_string(turn.t);
      if (view == View::live && omitted.count(turn.t))
        push(ctx, "<omitted_tool_response_" + ts + "></omitted_tool_response_" + ts + ">",
             SegmentOrigin::agent, turn.t, SegmentCategory::marker);
      else
        push(ctx, "<tool_response_" + ts + ">" + turn.observation->text + "</tool_response_" + ts + ">",
             SegmentOrigin::environment, turn.t, SegmentCategory::observation);
    }
  }
  return ctx;
}

OmissionApplied apply_omission(std::vector<Turn> turns, int t, const std::vector<int>& gamma) {
  if (t < 1 || t > static_cast<int>(turns.size()))
    throw ValidationError("apply_omission: turn " + std::to_string(t) + " out of range");
  OmissionApplied out;
  std::vector<int> accepted;
  for (int k : gamma) {
    if (k >= t)
      throw ValidationError("apply_omission: index " + std::to_string(k) +
                            " is not an earlier turn than " + std::to_string(t));
    if (k < 1 || !turns[static_cast<std::size_t>(k) - 1].observation)
      throw ValidationError("apply_omission: turn " + std::to_string(k) + " has no observation");
    ObservationCell& cell = *turns[static_cast<std::size_t>(k) - 1].observation;
    if (cell.state == ObsState::omitted) {
      ++out.redundant;
      continue;
    }
    cell.state = ObsState::omitted;
    accepted.push_back(k);
  }
  Turn& issuer = turns[static_cast<std::size_t>(t) - 1];
  issuer.omit.insert(issuer.omit.end(), accepted.begin(), accepted.end());
  std::sort(issuer.omit.begin(), issuer.omit.end());
  out.turns = std::move(turns);
  return out;
}

std::vector<bool> agent_token_mask(const RenderedContext& rendered) {
  std::vector<bool> mask;
  mask.reserve(static_cast<std::size_t>(rendered.total_tokens));
  for (const TranscriptSegment& seg : rendered.segments)
    mask.insert(mask.end(), static_cast<std::size_t>(seg.tokens),
                seg.origin == SegmentOrigin::agent);
  return mask;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == ' ' ||
                                   text_[pos_] == '\t' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek(std::string_view tag) {
    skip_ws();
    return text_.substr(pos_).starts_with(tag);
  }
  void expect(std::string_view tag) {
    skip_ws();
    if (!text_.substr(pos_).starts_with(tag))
      throw ParseError("expected '" + std::string(tag) + "'", pos_);
    pos_ += tag.size();
  }
  // Raw text up to the closing tag, which is consumed.
  std::string until(std::string_view closing) {
    std::size_t at = text_.find(closing, pos_);
    if (at == std::string_view::npos)
      throw ParseError("unbalanced tag, missing '" + std::string(closing) + "'", pos_);
    std::string body(text_.substr(pos_, at - pos_));
    pos_ = at + closing.size();
    return body;
  }
  // Digits of a numbered tag like <tool_response_12>.
  int number_until(char stop) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start || pos_ >= text_.size() || text_[pos_] != stop)
      throw ParseError("expected a turn number", start);
    ++pos_;
    return std::stoi(std::string(text_.substr(start, pos_ - 1 - start)));
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::pair<std::string, std::vector<Turn>> parse_transcript(std::string_view text) {
  Cursor cur(text);
  std::string question;
  std::vector<Turn> turns;

  if (cur.peek("<question>")) {
    cur.expect("<question>");
    question = cur.until("</question>");
  }

  std::set<int> omitted;
  while (!cur.at_end()) {
    Turn turn;
    turn.t = static_cast<int>(turns.size()) + 1;

    cur.expect("<think>");
    std::string th = cur.until("</think>");
    if (th == " ") {
      turn.thought.mode = ThoughtMode::empty;
    } else {
      turn.thought.mode = ThoughtMode::verbose;
      turn.thought.text = std::move(th);
    }

    while (cur.peek("<omit_tool_response_")) {
      cur.expect("<omit_tool_response_");
      int k = cur.number_until('>');
      cur.expect("</omit_tool_response_" + std::to_string(k) + ">");
      if (k >= turn.t) throw ParseError("omission of a non-earlier turn", cur.pos());
      turn.omit.push_back(k);
      omitted.insert(k);
    }

    if (cur.peek("<tool_call>")) {
      cur.expect("<tool_call>");
      turn.action = {ActionKind::tool_call, cur.until("</tool_call>")};
    } else if (cur.peek("<answer>")) {
      cur.expect("<answer>");
      turn.action = {ActionKind::answer, cur.until("</answer>")};
    } else {
      throw ParseError("expected <tool_call> or <answer>", cur.pos());
    }

    if (cur.peek("<tool_response_")) {
      cur.expect("<tool_response_");
      int t = cur.number_until('>');
      if (t != turn.t) throw ParseError("observation numbered for the wrong turn", cur.pos());
      ObservationCell cell;
      cell.text = cur.until("</tool_response_" + std::to_string(t) + ">");
      turn.observation = std::move(cell);
    }
    turns.push_back(std::move(turn));
  }

  for (Turn& turn : turns)
    if (turn.observation && omitted.count(turn.t)) turn.observation->state = ObsState::omitted;
  return {std::move(question), std::move(turns)};
}

}  // namespace agentomit
