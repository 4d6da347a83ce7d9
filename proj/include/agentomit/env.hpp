#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentomit/decision.hpp"
#include "agentomit/rng.hpp"
#include "agentomit/trajectory.hpp"

namespace agentomit {

enum class Difficulty { easy, medium, hard };
const char* to_string(Difficulty d);
Difficulty parse_difficulty(std::string_view name);

class TaskDetail {
 public:
  virtual ~TaskDetail() = default;
  virtual std::string summary_json() const = 0;
};

struct Task {
  std::string task_id;  // "<env>-<difficulty>-<seed>"
  std::string env;
  Difficulty difficulty = Difficulty::easy;
  std::uint64_t seed = 0;
  std::string question;
  int max_turns = 2;
  std::shared_ptr<const TaskDetail> detail;
};

struct StepOutcome {
  std::string observation;
  bool ok = true;      // the action had its intended effect
  bool done = false;   // no further steps accepted
  double r_task = 0.0; // environments grade through answers; stays 0 here
};

struct OracleAction {
  std::string text;
  ActionKind kind = ActionKind::tool_call;
};

/// Live environment state for one episode. Owned by exactly one rollout
/// worker; the harness feeds back the agent's thought mode (plan gating) and
/// omission decisions (candidate availability).
class EnvState {
 public:
  virtual ~EnvState() = default;

  const Task& task() const { return task_; }
  int turns_taken() const { return static_cast<int>(observations_.size()); }
  bool done() const { return done_; }
  bool plan_established() const { return plan_established_; }
  bool last_action_ok() const { return last_ok_; }
  const std::vector<std::string>& observation_texts() const { return observations_; }
  const std::vector<std::string>& action_history() const { return actions_; }
  bool observation_present(int turn_index) const;

  /// A verbose thought on the very first turn establishes the plan; later
  /// thoughts add text but do not unlock the progress feature.
  void note_thought(ThoughtMode mode);
  /// Prunes an earlier observation from the live context.
  void mark_omitted(int turn_index);

  StepOutcome step(const std::string& action);

  /// 4..12 candidates. Always contains the expert's next action; an
  /// answer-kind candidate appears only when the episode can be answered.
  /// Feature row: bias, question-overlap, legality, novelty, progress,
  /// length/16. Progress marks the expert action and is zeroed until the
  /// plan is established.
  std::vector<ActionCandidate> enumerate_actions() const;

  /// Feature row for an arbitrary action text against this state, matching
  /// what enumerate_actions would produce for it.
  ActionCandidate make_candidate(const std::string& text, ActionKind kind) const;

  OracleAction oracle_action() const;
  /// Template thought the expert would emit here: 30..80 tokens before the
  /// first action, 10..15 after.
  std::string oracle_thought() const;

 protected:
  explicit EnvState(Task task);

  virtual StepOutcome step_impl(const std::string& action) = 0;
  virtual std::vector<std::pair<std::string, ActionKind>> candidate_texts() const = 0;
  virtual bool is_legal(const std::string& action) const = 0;
  virtual OracleAction oracle_action_impl() const = 0;
  virtual std::string plan_text() const = 0;

  bool observation_visible(int turn_index) const;  // produced and not omitted

  Task task_;
  std::set<std::string> question_tokens_;

 private:
  std::vector<std::string> observations_;
  std::vector<char> omitted_;
  std::vector<std::string> actions_;
  bool plan_established_ = false;
  bool done_ = false;
  bool last_ok_ = true;
  bool thought_seen_ = false;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::string name() const = 0;
  virtual Task make_task(std::uint64_t seed, Difficulty difficulty) const = 0;
  virtual std::unique_ptr<EnvState> init(const Task& task) const = 0;
  virtual std::string gold_answer(const Task& task) const = 0;

  /// 1.0 on normalized (case-folded, whitespace-collapsed) exact match.
  double grade(const Task& task, const std::string& final_answer) const;
};

struct EnvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const Environment& environment(std::string_view name);
std::vector<std::string> environment_names();

Task make_task(std::string_view env, std::uint64_t seed, Difficulty difficulty);

/// Rebuilds the task a trajectory was rolled out on from its identifiers.
Task task_from(const Trajectory& trajectory);

/// Replays an action list from the initial state. Throws when a step is
/// attempted past a done state.
std::unique_ptr<EnvState> restore(const Task& task, std::span<const std::string> actions);

/// Scripted expert decision over the current candidate set: acts on the
/// expert's next action, thinks verbosely on turn 1 and emptily after, never
/// omits.
Decision oracle_decide(const EnvState& state, std::span<const Turn> history);

enum class OracleStyle {
  efficient,  // verbose thought on turn 1, empty afterwards
  verbose     // verbose thought every turn (pre-training behavior)
};

/// Full scripted rollout; grades the answer. Omission-free by construction.
Trajectory oracle_rollout(const Task& task, OracleStyle style);

}  // namespace agentomit
