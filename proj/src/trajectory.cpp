#include "agentomit/trajectory.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "agentomit/render.hpp"
#include "agentomit/tokenizer.hpp"

namespace agentomit {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* mode_name(ThoughtMode m) { return m == ThoughtMode::verbose ? "verbose" : "empty"; }
const char* kind_name(ActionKind k) { return k == ActionKind::tool_call ? "tool_call" : "answer"; }
const char* state_name(ObsState s) { return s == ObsState::present ? "present" : "omitted"; }

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

}  // namespace

void validate(const Trajectory& trajectory) {
  const auto& turns = trajectory.turns;
  if (!(trajectory.r_task >= 0.0 && trajectory.r_task <= 1.0)) fail("r_task", "outside [0,1]");
  if (!(trajectory.r_omit >= 0.0)) fail("r_omit", "negative");

  std::set<int> omitted_anywhere;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const Turn& turn = turns[i];
    const std::string where = "turns[" + std::to_string(i) + "]";
    if (turn.t != static_cast<int>(i) + 1) fail(where + ".t", "indices must be consecutive from 1");
    if (turn.thought.mode == ThoughtMode::empty && !turn.thought.text.empty())
      fail(where + ".thought", "empty mode with non-empty text");
    if (turn.action.text.empty()) fail(where + ".action", "empty action text");

    const bool last = (i + 1 == turns.size());
    if (last && turn.action.kind != ActionKind::answer)
      fail(where + ".action", "last turn must be the answer");
    if (!last && turn.action.kind == ActionKind::answer)
      fail(where + ".action", "answer before the last turn");
    if (last && turn.observation.has_value())
      fail(where + ".observation", "final answer turn carries an observation");
    if (!last && !turn.observation.has_value())
      fail(where + ".observation", "missing observation on a non-final turn");

    int prev = 0;
    for (int k : turn.omit) {
      if (k <= prev) fail(where + ".omit", "indices must be strictly ascending and positive");
      if (k >= turn.t) fail(where + ".omit", "forward or self reference " + std::to_string(k));
      omitted_anywhere.insert(k);
      prev = k;
    }
  }
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (!turns[i].observation) continue;
    const bool flagged = omitted_anywhere.count(turns[i].t) > 0;
    const bool marked = turns[i].observation->state == ObsState::omitted;
    if (flagged != marked)
      fail("turns[" + std::to_string(i) + "].observation",
           marked ? "marked omitted without a matching omit entry"
                  : "named in an omit set but still marked present");
  }
}

std::string encode_jsonl(std::span<const Trajectory> trajectories) {
  std::string out;
  for (const Trajectory& tr : trajectories) {
    validate(tr);
    ordered_json j;
    j["task_id"] = tr.task_id;
    j["env"] = tr.env;
    j["seed"] = tr.seed;
    j["question"] = tr.question;
    ordered_json turns = ordered_json::array();
    for (const Turn& turn : tr.turns) {
      ordered_json t;
      t["t"] = turn.t;
      t["thought"] = {{"mode", mode_name(turn.thought.mode)}, {"text", turn.thought.text}};
      t["omit"] = turn.omit;
      t["action"] = {{"kind", kind_name(turn.action.kind)}, {"text", turn.action.text}};
      if (turn.observation)
        t["observation"] = {{"state", state_name(turn.observation->state)},
                            {"text", turn.observation->text}};
      turns.push_back(std::move(t));
    }
    j["turns"] = std::move(turns);
    j["final_answer"] = tr.final_answer;
    j["r_task"] = tr.r_task;
    j["r_omit"] = tr.r_omit;
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void decode_fail(std::size_t line, const std::string& field, const std::string& what) {
  throw DecodeError("line " + std::to_string(line) + ": " + field + ": " + what);
}

const ordered_json& need(const ordered_json& j, const char* key, std::size_t line,
                         const std::string& scope) {
  auto it = j.find(key);
  if (it == j.end()) decode_fail(line, scope + key, "missing field");
  return *it;
}

std::string need_string(const ordered_json& j, const char* key, std::size_t line,
                        const std::string& scope) {
  const auto& v = need(j, key, line, scope);
  if (!v.is_string()) decode_fail(line, scope + key, "expected a string");
  return v.get<std::string>();
}

double need_number(const ordered_json& j, const char* key, std::size_t line,
                   const std::string& scope) {
  const auto& v = need(j, key, line, scope);
  if (!v.is_number()) decode_fail(line, scope + key, "expected a number");
  return v.get<double>();
}

}  // namespace

std::vector<Trajectory> decode_jsonl(std::string_view stream) {
  std::vector<Trajectory> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    std::size_t end = stream.find('\n', pos);
    if (end == std::string_view::npos) end = stream.size();
    std::string_view line = stream.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) decode_fail(line_no, "<record>", "not valid JSON");
    if (!j.is_object()) decode_fail(line_no, "<record>", "expected an object");

    Trajectory tr;
    tr.task_id = need_string(j, "task_id", line_no, "");
    tr.env = need_string(j, "env", line_no, "");
    const auto& seed = need(j, "seed", line_no, "");
    if (!seed.is_number_integer() && !seed.is_number_unsigned())
      decode_fail(line_no, "seed", "expected an integer");
    tr.seed = seed.get<std::uint64_t>();
    tr.question = need_string(j, "question", line_no, "");

    const auto& turns = need(j, "turns", line_no, "");
    if (!turns.is_array()) decode_fail(line_no, "turns", "expected an array");
    for (std::size_t i = 0; i < turns.size(); ++i) {
      const std::string scope = "turns[" + std::to_string(i) + "].";
      const auto& tj = turns[i];
      if (!tj.is_object()) decode_fail(line_no, scope, "expected an object");
      Turn turn;
      const auto& tv = need(tj, "t", line_no, scope);
      if (!tv.is_number_integer()) decode_fail(line_no, scope + "t", "expected an integer");
      turn.t = tv.get<int>();

      const auto& th = need(tj, "thought", line_no, scope);
      std::string mode = need_string(th, "mode", line_no, scope + "thought.");
      if (mode == "verbose") turn.thought.mode = ThoughtMode::verbose;
      else if (mode == "empty") turn.thought.mode = ThoughtMode::empty;
      else decode_fail(line_no, scope + "thought.mode", "unknown mode '" + mode + "'");
      turn.thought.text = need_string(th, "text", line_no, scope + "thought.");

      const auto& omit = need(tj, "omit", line_no, scope);
      if (!omit.is_array()) decode_fail(line_no, scope + "omit", "expected an array");
      for (const auto& k : omit) {
        if (!k.is_number_integer()) decode_fail(line_no, scope + "omit", "expected integers");
        turn.omit.push_back(k.get<int>());
      }

      const auto& act = need(tj, "action", line_no, scope);
      std::string kind = need_string(act, "kind", line_no, scope + "action.");
      if (kind == "tool_call") turn.action.kind = ActionKind::tool_call;
      else if (kind == "answer") turn.action.kind = ActionKind::answer;
      else decode_fail(line_no, scope + "action.kind", "unknown kind '" + kind + "'");
      turn.action.text = need_string(act, "text", line_no, scope + "action.");

      if (auto it = tj.find("observation"); it != tj.end()) {
        std::string state = need_string(*it, "state", line_no, scope + "observation.");
        ObservationCell cell;
        if (state == "present") cell.state = ObsState::present;
        else if (state == "omitted") cell.state = ObsState::omitted;
        else decode_fail(line_no, scope + "observation.state", "unknown state '" + state + "'");
        cell.text = need_string(*it, "text", line_no, scope + "observation.");
        turn.observation = std::move(cell);
      }
      tr.turns.push_back(std::move(turn));
    }

    tr.final_answer = need_string(j, "final_answer", line_no, "");
    tr.r_task = need_number(j, "r_task", line_no, "");
    tr.r_omit = need_number(j, "r_omit", line_no, "");

    try {
      validate(tr);
    } catch (const ValidationError& e) {
      decode_fail(line_no, "<record>", e.what());
    }
    out.push_back(std::move(tr));
  }
  return out;
}

TokenBreakdown token_breakdown(const Trajectory& trajectory, View view) {
  TokenBreakdown out;
  out.per_turn.resize(trajectory.turns.size());
  RenderedContext ctx = render("", trajectory.turns, view);
  for (const TranscriptSegment& seg : ctx.segments) {
    if (seg.turn < 1) continue;
    TokenBreakdown::PerTurn& row = out.per_turn[static_cast<std::size_t>(seg.turn) - 1];
    switch (seg.category) {
      case SegmentCategory::thought: row.thought += seg.tokens; out.thought += seg.tokens; break;
      case SegmentCategory::action: row.action += seg.tokens; out.action += seg.tokens; break;
      case SegmentCategory::observation:
        row.observation += seg.tokens;
        out.observation += seg.tokens;
        break;
      case SegmentCategory::marker: row.markers += seg.tokens; out.markers += seg.tokens; break;
      case SegmentCategory::question: break;
    }
  }
  return out;
}

std::int64_t full_transcript_tokens(const Trajectory& trajectory) {
  return render("", trajectory.turns, View::transcript).turn_tokens();
}

}  // namespace agentomit
