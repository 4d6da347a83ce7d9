#include "agentomit/env.hpp"

#include <algorithm>

#include "agentomit/text.hpp"
#include "agentomit/tokenizer.hpp"
#include "env_internal.hpp"

namespace agentomit {

const char* to_string(Difficulty d) {
  switch (d) {
    case Difficulty::easy: return "easy";
    case Difficulty::medium: return "medium";
    case Difficulty::hard: return "hard";
  }
  return "easy";
}

Difficulty parse_difficulty(std::string_view name) {
  if (name == "easy") return Difficulty::easy;
  if (name == "medium") return Difficulty::medium;
  if (name == "hard") return Difficulty::hard;
  throw EnvError("unknown difficulty '" + std::string(name) + "'");
}

EnvState::EnvState(Task task) : task_(std::move(task)) {
  question_tokens_ = token_set(task_.question);
}

bool EnvState::observation_present(int turn_index) const {
  return observation_visible(turn_index);
}

bool EnvState::observation_visible(int turn_index) const {
  if (turn_index < 1 || turn_index > turns_taken()) return false;
  return omitted_[static_cast<std::size_t>(turn_index) - 1] == 0;
}

void EnvState::note_thought(ThoughtMode mode) {
  if (!thought_seen_ && mode == ThoughtMode::verbose) plan_established_ = true;
  thought_seen_ = true;
}

void EnvState::mark_omitted(int turn_index) {
  if (turn_index < 1 || turn_index > turns_taken())
    throw EnvError("mark_omitted: no observation for turn " + std::to_string(turn_index));
  omitted_[static_cast<std::size_t>(turn_index) - 1] = 1;
}

StepOutcome EnvState::step(const std::string& action) {
  if (done_) throw EnvError("step on a done state");
  if (action.empty()) throw EnvError("step with an empty action");
  StepOutcome out = step_impl(action);
  observations_.push_back(out.observation);
  omitted_.push_back(0);
  actions_.push_back(action);
  last_ok_ = out.ok;
  if (turns_taken() >= task_.max_turns) done_ = true;
  out.done = done_;
  return out;
}

ActionCandidate EnvState::make_candidate(const std::string& text, ActionKind kind) const {
  return candidate_for(text, kind, oracle_action().text);
}

ActionCandidate EnvState::candidate_for(const std::string& text, ActionKind kind,
                                        const std::string& oracle_text) const {
  ActionCandidate c;
  c.text = text;
  c.kind = kind;
  const bool novel =
      std::find(actions_.begin(), actions_.end(), text) == actions_.end();
  const bool progress = plan_established_ && text == oracle_text;
  c.features = {1.0,
                token_jaccard(token_set(text), question_tokens_),
                is_legal(text) ? 1.0 : 0.0,
                novel ? 1.0 : 0.0,
                progress ? 1.0 : 0.0,
                static_cast<double>(token_count(text)) / 16.0};
  return c;
}

std::vector<ActionCandidate> EnvState::enumerate_actions() const {
  auto texts = candidate_texts();
  const OracleAction oracle = oracle_action();
  bool have_oracle = false;
  for (const auto& [text, kind] : texts)
    if (text == oracle.text) have_oracle = true;
  if (!have_oracle) texts.emplace_back(oracle.text, oracle.kind);

  // Cap at 12, preferring to drop late non-essential entries.
  if (texts.size() > 12) {
    std::vector<std::pair<std::string, ActionKind>> kept;
    const std::size_t essentials = [&] {
      std::size_t n = 0;
      for (const auto& [text, kind] : texts)
        if (text == oracle.text || kind == ActionKind::answer) ++n;
      return n;
    }();
    std::size_t budget = 12 - essentials;
    for (const auto& entry : texts) {
      const bool essential = entry.first == oracle.text || entry.second == ActionKind::answer;
      if (essential) {
        kept.push_back(entry);
      } else if (budget > 0) {
        kept.push_back(entry);
        --budget;
      }
    }
    texts = std::move(kept);
  }

  std::vector<ActionCandidate> out;
  out.reserve(texts.size());
  for (const auto& [text, kind] : texts) {
    ActionCandidate c = make_candidate(text, kind);
    c.kind = kind;
    out.push_back(std::move(c));
  }
  return out;
}

OracleAction EnvState::oracle_action() const { return oracle_action_impl(); }

std::string EnvState::oracle_thought() const {
  if (turns_taken() == 0) return detail::fit_token_range(plan_text(), 30, 80);
  const OracleAction next = oracle_action();
  auto toks = tokenize(next.text).tokens;
  std::string desc;
  for (std::size_t i = 0; i < toks.size() && i < 6; ++i) {
    if (i) desc += ' ';
    desc += toks[i];
  }
  return "now i will simply do this step : " + desc + " .";
}

double Environment::grade(const Task& task, const std::string& final_answer) const {
  return normalize_answer(final_answer) == normalize_answer(gold_answer(task)) ? 1.0 : 0.0;
}

namespace {

const Environment& registry_get(std::string_view name) {
  static const detail::CraftWorld craftworld;
  static const detail::GridNav gridnav;
  static const detail::FactSearch factsearch;
  if (name == "craftworld") return craftworld;
  if (name == "gridnav") return gridnav;
  if (name == "factsearch") return factsearch;
  throw EnvError("unknown environment '" + std::string(name) + "'");
}

}  // namespace

const Environment& environment(std::string_view name) { return registry_get(name); }

std::vector<std::string> environment_names() { return {"craftworld", "gridnav", "factsearch"}; }

Task make_task(std::string_view env, std::uint64_t seed, Difficulty difficulty) {
  return environment(env).make_task(seed, difficulty);
}

Task task_from(const Trajectory& trajectory) {
  // task_id layout: "<env>-<difficulty>-<seed>"
  const std::string& id = trajectory.task_id;
  auto first = id.find('-');
  auto second = first == std::string::npos ? std::string::npos : id.find('-', first + 1);
  if (second == std::string::npos) throw EnvError("malformed task_id '" + id + "'");
  const std::string env = id.substr(0, first);
  const Difficulty difficulty = parse_difficulty(id.substr(first + 1, second - first - 1));
  Task task = environment(env).make_task(trajectory.seed, difficulty);
  if (task.task_id != id) throw EnvError("task_id mismatch: '" + id + "' vs '" + task.task_id + "'");
  return task;
}

std::unique_ptr<EnvState> restore(const Task& task, std::span<const std::string> actions) {
  auto state = environment(task.env).init(task);
  for (const std::string& a : actions) state->step(a);
  return state;
}

Decision oracle_decide(const EnvState& state, std::span<const Turn> history) {
  const OracleAction next = state.oracle_action();
  auto candidates = state.enumerate_actions();
  Decision d;
  d.thought_mode = history.empty() ? ThoughtMode::verbose : ThoughtMode::empty;
  d.action = -1;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i].text == next.text) {
      d.action = static_cast<int>(i);
      break;
    }
  if (d.action < 0) throw EnvError("expert action missing from candidates");
  int present = 0;
  for (const Turn& turn : history)
    if (turn.observation && turn.observation->state == ObsState::present) ++present;
  d.omit_flags.assign(static_cast<std::size_t>(present), false);
  return d;
}

Trajectory oracle_rollout(const Task& task, OracleStyle style) {
  const Environment& env = environment(task.env);
  auto state = env.init(task);
  Trajectory out;
  out.task_id = task.task_id;
  out.env = task.env;
  out.seed = task.seed;
  out.question = task.question;

  for (int t = 1; t <= task.max_turns; ++t) {
    const ThoughtMode mode =
        (style == OracleStyle::verbose || t == 1) ? ThoughtMode::verbose : ThoughtMode::empty;
    Turn turn;
    turn.t = t;
    turn.thought.mode = mode;
    if (mode == ThoughtMode::verbose) turn.thought.text = state->oracle_thought();
    state->note_thought(mode);

    const OracleAction action = state->oracle_action();
    turn.action = {action.kind, action.text};
    if (action.kind == ActionKind::answer) {
      out.final_answer = action.text;
      out.turns.push_back(std::move(turn));
      break;
    }
    StepOutcome res = state->step(action.text);
    turn.observation = ObservationCell{ObsState::present, res.observation};
    out.turns.push_back(std::move(turn));
  }
  if (out.final_answer.empty() && !out.turns.empty() &&
      out.turns.back().action.kind != ActionKind::answer) {
    Turn turn;
    turn.t = static_cast<int>(out.turns.size()) + 1;
    turn.thought.mode = ThoughtMode::empty;
    turn.action = {ActionKind::answer, "no answer"};
    out.final_answer = "no answer";
    out.turns.push_back(std::move(turn));
  }
  out.r_task = env.grade(task, out.final_answer);
  validate(out);
  return out;
}

namespace detail {

std::string coined_word(Rng& rng) {
  static const char* heads[] = {"ka", "ve", "lor", "mi", "ta", "sol", "re",  "dun",
                                "fel", "or", "za",  "bel", "ti", "mar", "quo", "nes"};
  static const char* tails[] = {"na", "rin", "dor", "la", "mos", "vek", "sa", "lun",
                                "per", "ga", "tor", "nia", "ro", "min", "eth", "ul"};
  std::string w = heads[rng.below(16)];
  if (rng.below(3) == 0) w += heads[rng.below(16)];
  w += tails[rng.below(16)];
  return w;
}

std::string entity_name(Rng& rng) {
  static const char* nouns[] = {"cove", "ridge", "vale", "harbor", "plains", "hollow",
                                "falls", "spire", "marsh", "garden", "bridge", "tower"};
  return coined_word(rng) + " " + nouns[rng.below(12)];
}

std::string fit_token_range(std::string text, int lo, int hi) {
  static const char* filler[] = {
      "i will keep the context short along the way .",
      "i will check the result after each step .",
      "this order avoids wasted moves .",
      "i expect no surprises from the environment .",
  };
  int n = static_cast<int>(token_count(text));
  int fi = 0;
  while (n < lo) {
    text += ' ';
    text += filler[fi % 4];
    ++fi;
    n = static_cast<int>(token_count(text));
  }
  if (n > hi) {
    auto toks = tokenize(text).tokens;
    std::string cut;
    for (int i = 0; i < hi - 1; ++i) {
      if (i) cut += ' ';
      cut += toks[static_cast<std::size_t>(i)];
    }
    cut += " .";
    return cut;
  }
  return text;
}

}  // namespace detail

}  // namespace agentomit
