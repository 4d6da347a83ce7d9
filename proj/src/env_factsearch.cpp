#include <algorithm>
#include <set>
#include <sstream>

#include "agentomit/text.hpp"
#include "agentomit/tokenizer.hpp"
#include "env_internal.hpp"

namespace agentomit::detail {

namespace {

struct Fact {
  std::string subject, relation, object;
  std::string text() const { return subject + " : " + relation + " : " + object; }
};

struct FactTask final : TaskDetail {
  std::vector<Fact> corpus;
  std::string subject;  // s of the 2-hop chain
  std::string r1, r2;
  std::string bridge;  // b: object of (s,r1,b), subject of (b,r2,o)
  std::string gold;    // o, present in exactly one fact

  std::string summary_json() const override {
    std::ostringstream os;
    os << "{\"facts\":" << corpus.size() << ",\"subject\":\"" << subject << "\",\"bridge\":\""
       << bridge << "\",\"gold\":\"" << gold << "\"}";
    return os.str();
  }
};

const char* kRelations[] = {"capital", "founder", "river",  "summit", "harbor",
                            "anthem",  "forest",  "border", "patron", "market"};

class FactState final : public EnvState {
 public:
  FactState(Task task, std::shared_ptr<const FactTask> detail)
      : EnvState(std::move(task)), d_(std::move(detail)) {}

 protected:
  StepOutcome step_impl(const std::string& action) override {
    if (action.rfind("search ", 0) == 0 && action.size() > 7) {
      const std::string query = action.substr(7);
      auto hits = rank(query);
      std::string obs;
      for (std::size_t i = 0; i < hits.size(); ++i) {
        if (i) obs += ' ';
        obs += "result " + std::to_string(i + 1) + " : " + d_->corpus[hits[i]].text() + " .";
      }
      returned_.push_back(hits);
      return {obs, true, false, 0.0};
    }
    returned_.emplace_back();
    return {"cannot parse the action .", false, false, 0.0};
  }

  std::vector<std::pair<std::string, ActionKind>> candidate_texts() const override {
    std::vector<std::pair<std::string, ActionKind>> out;
    if (gold_visible()) out.emplace_back(d_->gold, ActionKind::answer);
    out.emplace_back("answer unknown", ActionKind::answer);
    out.emplace_back("search " + d_->subject + " " + d_->r1, ActionKind::tool_call);
    out.emplace_back("search " + d_->r1 + " " + d_->r2, ActionKind::tool_call);
    out.emplace_back("search " + d_->subject, ActionKind::tool_call);
    // Follow-up searches for entities surfaced by visible results, newest
    // first. This is how the bridge becomes actionable.
    std::vector<std::string> seen;
    for (int t = turns_taken(); t >= 1 && seen.size() < 3; --t) {
      if (!observation_visible(t)) continue;
      for (std::size_t f : returned_[static_cast<std::size_t>(t) - 1]) {
        const std::string& obj = d_->corpus[f].object;
        if (obj == d_->subject) continue;
        if (std::find(seen.begin(), seen.end(), obj) == seen.end()) {
          seen.push_back(obj);
          if (seen.size() >= 3) break;
        }
      }
    }
    for (const std::string& e : seen)
      out.emplace_back("search " + e + " " + d_->r2, ActionKind::tool_call);
    return out;
  }

  bool is_legal(const std::string& action) const override {
    if (action.rfind("search ", 0) == 0) return action.size() > 7;
    return action == "answer unknown" || action == d_->gold;
  }

  OracleAction oracle_action_impl() const override {
    if (gold_visible()) return {d_->gold, ActionKind::answer};
    if (turns_taken() == 0) return {"search " + d_->r1 + " " + d_->r2, ActionKind::tool_call};
    const std::string bridge_query = "search " + d_->bridge + " " + d_->r2;
    if (bridge_visible()) {
      if (!tried(bridge_query)) return {bridge_query, ActionKind::tool_call};
      return {"answer unknown", ActionKind::answer};  // bridge result was pruned
    }
    const std::string hop1 = "search " + d_->subject + " " + d_->r1;
    if (!tried(hop1)) return {hop1, ActionKind::tool_call};
    return {"answer unknown", ActionKind::answer};
  }

  std::string plan_text() const override {
    return "the question asks for the " + d_->r2 + " of the " + d_->r1 + " of " + d_->subject +
           " . plan : first scan the corpus for background facts . then search " + d_->subject +
           " with " + d_->r1 + " to find the bridge entity . then search the bridge entity with " +
           d_->r2 + " . finally answer with the entity found .";
  }

 private:
  bool tried(const std::string& action) const {
    const auto& h = action_history();
    return std::find(h.begin(), h.end(), action) != h.end();
  }
  bool gold_visible() const { return phrase_visible(d_->gold); }
  bool bridge_visible() const { return phrase_visible(d_->bridge); }
  bool phrase_visible(const std::string& phrase) const {
    for (int t = 1; t <= turns_taken(); ++t) {
      if (!observation_visible(t)) continue;
      if (contains_token_phrase(observation_texts()[static_cast<std::size_t>(t) - 1], phrase))
        return true;
    }
    return false;
  }

  // Top-5 by token-set overlap with the query, ties by corpus index.
  std::vector<std::size_t> rank(const std::string& query) const {
    auto q = token_set(query);
    std::vector<std::pair<int, std::size_t>> scored;
    scored.reserve(d_->corpus.size());
    for (std::size_t i = 0; i < d_->corpus.size(); ++i) {
      auto f = token_set(d_->corpus[i].subject + " " + d_->corpus[i].relation + " " +
                         d_->corpus[i].object);
      int overlap = 0;
      for (const auto& tok : f) overlap += static_cast<int>(q.count(tok));
      scored.emplace_back(-overlap, i);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scored.size() && i < 5; ++i) out.push_back(scored[i].second);
    return out;
  }

  std::shared_ptr<const FactTask> d_;
  std::vector<std::vector<std::size_t>> returned_;  // fact indices per turn
};

}  // namespace

Task FactSearch::make_task(std::uint64_t seed, Difficulty difficulty) const {
  Rng rng = Rng(seed).derive("factsearch-task");
  auto detail = std::make_shared<FactTask>();

  const std::size_t extra =
      difficulty == Difficulty::easy ? 38 : difficulty == Difficulty::medium ? 48 : 58;

  std::size_t ra = rng.below(10);
  std::size_t rb = rng.below(9);
  detail->r1 = kRelations[ra];
  detail->r2 = kRelations[(ra + 1 + rb) % 10];

  std::set<std::string> taken;
  auto fresh_entity = [&] {
    for (;;) {
      std::string e = entity_name(rng);
      if (taken.insert(e).second) return e;
    }
  };
  detail->subject = fresh_entity();
  detail->bridge = fresh_entity();
  detail->gold = fresh_entity();

  // Ten noise facts over the question's relations come first, so a broad
  // relation query surfaces only distractors.
  for (int i = 0; i < 10; ++i) {
    Fact f;
    f.subject = fresh_entity();
    f.relation = i < 5 ? detail->r1 : detail->r2;
    f.object = fresh_entity();
    detail->corpus.push_back(std::move(f));
  }
  // Filler facts over random relations and fresh entities.
  for (std::size_t i = 0; i < extra; ++i) {
    Fact f;
    f.subject = fresh_entity();
    f.relation = kRelations[rng.below(10)];
    f.object = fresh_entity();
    detail->corpus.push_back(std::move(f));
  }
  // The 2-hop chain. The bridge appears as a subject exactly once and the
  // gold object nowhere else in the corpus.
  const std::size_t at1 = 12 + rng.below(15);
  const std::size_t at2 = 30 + rng.below(15);
  detail->corpus.insert(detail->corpus.begin() + static_cast<long>(at1),
                        Fact{detail->subject, detail->r1, detail->bridge});
  detail->corpus.insert(detail->corpus.begin() + static_cast<long>(at2),
                        Fact{detail->bridge, detail->r2, detail->gold});

  Task task;
  task.env = "factsearch";
  task.difficulty = difficulty;
  task.seed = seed;
  task.max_turns = 8;
  task.task_id = "factsearch-" + std::string(to_string(difficulty)) + "-" + std::to_string(seed);
  task.question = "what is the " + detail->r2 + " of the " + detail->r1 + " of " +
                  detail->subject + " ?";
  task.detail = detail;
  return task;
}

std::unique_ptr<EnvState> FactSearch::init(const Task& task) const {
  auto detail = std::dynamic_pointer_cast<const FactTask>(task.detail);
  if (!detail) throw EnvError("factsearch: task detail of the wrong kind");
  return std::make_unique<FactState>(task, std::move(detail));
}

std::string FactSearch::gold_answer(const Task& task) const {
  auto detail = std::dynamic_pointer_cast<const FactTask>(task.detail);
  if (!detail) throw EnvError("factsearch: task detail of the wrong kind");
  return detail->gold;
}

}  // namespace agentomit::detail
