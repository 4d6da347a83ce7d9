#include <algorithm>
#include <map>
#include <sstream>

#include "agentomit/text.hpp"
#include "env_internal.hpp"

namespace agentomit::detail {

namespace {

struct Recipe {
  std::string target;
  std::vector<std::pair<int, std::string>> inputs;  // (count, item)
};

std::string craft_text(const Recipe& r) {
  std::string s = "craft 1 " + r.target + " using ";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    if (i) s += " , ";
    s += std::to_string(r.inputs[i].first) + " " + r.inputs[i].second;
  }
  return s;
}

struct CraftTask final : TaskDetail {
  std::string goal;
  std::vector<Recipe> recipes;          // question order, goal recipe included
  std::vector<std::string> base_items;  // gettable, sorted
  std::map<std::string, const Recipe*> by_target;

  void index() {
    for (const Recipe& r : recipes) by_target[r.target] = &r;
  }
  std::string summary_json() const override {
    std::ostringstream os;
    os << "{\"goal\":\"" << goal << "\",\"recipes\":" << recipes.size()
       << ",\"base_items\":" << base_items.size() << "}";
    return os.str();
  }
};

// Fixed pools; tasks draw without replacement so names stay distinct.
const char* kBases[] = {"oak log",      "stone chunk", "iron ore",   "reed fiber",
                        "clay lump",    "sand pile",   "flint shard", "birch log",
                        "copper ore",   "straw bundle"};
const char* kMids[] = {"wood plank", "stone brick", "iron ingot", "paper sheet",
                       "clay brick", "glass pane",  "rope coil",  "wool cloth"};
const char* kGoals[] = {"wooden hoe",  "stone hammer", "iron lantern", "market stall",
                        "writing desk", "storage crate", "royal banner", "copper kettle"};

class CraftState final : public EnvState {
 public:
  CraftState(Task task, std::shared_ptr<const CraftTask> detail)
      : EnvState(std::move(task)), d_(std::move(detail)) {}

 protected:
  StepOutcome step_impl(const std::string& action) override {
    if (action.rfind("get 1 ", 0) == 0) {
      const std::string item = action.substr(6);
      if (std::find(d_->base_items.begin(), d_->base_items.end(), item) != d_->base_items.end()) {
        ++inventory_[item];
        return {"got 1 " + item + " . held " + std::to_string(held()) + " .", true, false, 0.0};
      }
      return {"cannot get " + item + " .", false, false, 0.0};
    }
    if (action.rfind("craft 1 ", 0) == 0) {
      for (const Recipe& r : d_->recipes) {
        if (action != craft_text(r)) continue;
        for (const auto& [cnt, ing] : r.inputs)
          if (count_of(ing) < cnt)
            return {"cannot craft 1 " + r.target + " : missing " +
                        std::to_string(cnt - count_of(ing)) + " " + ing + " .",
                    false, false, 0.0};
        for (const auto& [cnt, ing] : r.inputs) inventory_[ing] -= cnt;
        ++inventory_[r.target];
        return {"crafted 1 " + r.target + " . held " + std::to_string(held()) + " .", true,
                false, 0.0};
      }
      return {"cannot craft that : unknown recipe .", false, false, 0.0};
    }
    if (action == "inventory") {
      std::string listing;
      for (const auto& [item, cnt] : inventory_) {
        if (cnt <= 0) continue;
        if (!listing.empty()) listing += " , ";
        listing += std::to_string(cnt) + " " + item;
      }
      if (listing.empty()) listing = "nothing";
      return {"held : " + listing + " .", true, false, 0.0};
    }
    return {"cannot parse the action .", false, false, 0.0};
  }

  std::vector<std::pair<std::string, ActionKind>> candidate_texts() const override {
    std::vector<std::pair<std::string, ActionKind>> out;
    if (count_of(d_->goal) >= 1)
      out.emplace_back("inventory has 1 " + d_->goal, ActionKind::answer);
    for (const Recipe& r : d_->recipes) out.emplace_back(craft_text(r), ActionKind::tool_call);
    for (const std::string& b : d_->base_items)
      out.emplace_back("get 1 " + b, ActionKind::tool_call);
    out.emplace_back("inventory", ActionKind::tool_call);
    return out;
  }

  bool is_legal(const std::string& action) const override {
    if (action.rfind("get 1 ", 0) == 0)
      return std::find(d_->base_items.begin(), d_->base_items.end(), action.substr(6)) !=
             d_->base_items.end();
    if (action.rfind("craft 1 ", 0) == 0) {
      for (const Recipe& r : d_->recipes) {
        if (action != craft_text(r)) continue;
        for (const auto& [cnt, ing] : r.inputs)
          if (count_of(ing) < cnt) return false;
        return true;
      }
      return false;
    }
    return action == "inventory" || action.rfind("inventory has 1 ", 0) == 0;
  }

  OracleAction oracle_action_impl() const override {
    if (count_of(d_->goal) >= 1) return {"inventory has 1 " + d_->goal, ActionKind::answer};
    auto next = plan_for(d_->goal, 1);
    if (!next) return {"inventory", ActionKind::tool_call};  // unreachable on well-formed tasks
    return {*next, ActionKind::tool_call};
  }

  std::string plan_text() const override {
    std::string s = "the goal is to craft 1 " + d_->goal + " . plan : gather the base materials";
    for (const std::string& b : bases_on_path()) s += " , " + b;
    s += " . then work through the recipes";
    for (const Recipe* r : path_recipes()) s += " : craft 1 " + r->target;
    s += " . finally answer once 1 " + d_->goal + " is held .";
    return s;
  }

 private:
  int held() const {
    int n = 0;
    for (const auto& [item, cnt] : inventory_) n += cnt;
    return n;
  }
  int count_of(const std::string& item) const {
    auto it = inventory_.find(item);
    return it == inventory_.end() ? 0 : it->second;
  }
  bool is_base(const std::string& item) const {
    return std::find(d_->base_items.begin(), d_->base_items.end(), item) != d_->base_items.end();
  }

  // First action that moves toward holding `needed` of `item`.
  std::optional<std::string> plan_for(const std::string& item, int needed) const {
    if (count_of(item) >= needed) return std::nullopt;
    if (is_base(item)) return "get 1 " + item;
    auto it = d_->by_target.find(item);
    if (it == d_->by_target.end()) return std::nullopt;
    const Recipe& r = *it->second;
    for (const auto& [cnt, ing] : r.inputs)
      if (count_of(ing) < cnt) return plan_for(ing, cnt);
    return craft_text(r);
  }

  // Recipes reachable from the goal, deepest first (crafting order).
  std::vector<const Recipe*> path_recipes() const {
    std::vector<const Recipe*> out;
    collect(d_->goal, out);
    return out;
  }
  void collect(const std::string& item, std::vector<const Recipe*>& out) const {
    auto it = d_->by_target.find(item);
    if (it == d_->by_target.end()) return;
    for (const auto& [cnt, ing] : it->second->inputs) collect(ing, out);
    out.push_back(it->second);
  }
  std::vector<std::string> bases_on_path() const {
    std::vector<std::string> out;
    for (const Recipe* r : path_recipes())
      for (const auto& [cnt, ing] : r->inputs)
        if (is_base(ing) && std::find(out.begin(), out.end(), ing) == out.end())
          out.push_back(ing);
    return out;
  }

  std::shared_ptr<const CraftTask> d_;
  std::map<std::string, int> inventory_;
};

}  // namespace

Task CraftWorld::make_task(std::uint64_t seed, Difficulty difficulty) const {
  Rng rng = Rng(seed).derive("craftworld-task");
  auto detail = std::make_shared<CraftTask>();

  std::vector<std::string> bases(std::begin(kBases), std::end(kBases));
  std::vector<std::string> mids(std::begin(kMids), std::end(kMids));
  std::vector<std::string> goals(std::begin(kGoals), std::end(kGoals));
  // seeded draw without replacement
  auto draw = [&rng](std::vector<std::string>& pool) {
    std::size_t i = rng.below(pool.size());
    std::string v = pool[i];
    pool.erase(pool.begin() + static_cast<long>(i));
    return v;
  };

  const int depth = difficulty == Difficulty::easy ? 2 : difficulty == Difficulty::medium ? 3 : 4;
  detail->goal = draw(goals);

  // Chain: goal <- two inputs at the top, one of which recurses to full
  // depth; everything at depth 1 is a base material.
  std::vector<std::string> used_bases;
  auto build = [&](auto&& self, const std::string& target, int levels) -> void {
    Recipe r;
    r.target = target;
    const int fanout = levels == depth ? 2 : (rng.below(2) == 0 ? 1 : 2);
    for (int i = 0; i < fanout; ++i) {
      const bool deep = (i == 0 && levels > 1);
      if (deep) {
        std::string mid = draw(mids);
        r.inputs.emplace_back(1, mid);
        self(self, mid, levels - 1);
      } else {
        std::string base = draw(bases);
        used_bases.push_back(base);
        const int cnt = (levels == 1 && rng.below(3) == 0) ? 2 : 1;
        r.inputs.emplace_back(cnt, base);
      }
    }
    detail->recipes.push_back(std::move(r));
  };
  build(build, detail->goal, depth);

  // Two distractor recipes over otherwise unused names.
  for (int i = 0; i < 2; ++i) {
    Recipe r;
    r.target = draw(goals);
    std::string base = draw(bases);
    used_bases.push_back(base);
    r.inputs.emplace_back(1 + static_cast<int>(rng.below(2)), base);
    detail->recipes.push_back(std::move(r));
  }

  std::sort(used_bases.begin(), used_bases.end());
  detail->base_items = used_bases;

  // Shuffle recipe listing order.
  for (std::size_t i = detail->recipes.size(); i > 1; --i)
    std::swap(detail->recipes[i - 1], detail->recipes[rng.below(i)]);
  detail->index();

  Task task;
  task.env = "craftworld";
  task.difficulty = difficulty;
  task.seed = seed;
  task.max_turns = 20;
  task.task_id = "craftworld-" + std::string(to_string(difficulty)) + "-" + std::to_string(seed);
  std::string q = "craft 1 " + detail->goal + " . known recipes :";
  for (const Recipe& r : detail->recipes) q += " " + craft_text(r) + " ;";
  q += " base materials :";
  for (std::size_t i = 0; i < detail->base_items.size(); ++i)
    q += (i ? " , " : " ") + detail->base_items[i];
  q += " .";
  task.question = q;
  task.detail = detail;
  return task;
}

std::unique_ptr<EnvState> CraftWorld::init(const Task& task) const {
  auto detail = std::dynamic_pointer_cast<const CraftTask>(task.detail);
  if (!detail) throw EnvError("craftworld: task detail of the wrong kind");
  return std::make_unique<CraftState>(task, std::move(detail));
}

std::string CraftWorld::gold_answer(const Task& task) const {
  auto detail = std::dynamic_pointer_cast<const CraftTask>(task.detail);
  if (!detail) throw EnvError("craftworld: task detail of the wrong kind");
  return "inventory has 1 " + detail->goal;
}

}  // namespace agentomit::detail
