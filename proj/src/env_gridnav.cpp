#include <array>
#include <optional>
#include <queue>
#include <sstream>

#include "env_internal.hpp"

namespace agentomit::detail {

namespace {

// Cell legend: '#' wall, '.' floor, 'G' goal, 'D' open door, 'L' locked
// door, 'K' key.
struct GridTask final : TaskDetail {
  int n = 6;
  std::vector<char> cells;
  int start = 0;  // r * n + c
  std::string key_color;

  char at(int r, int c) const { return cells[static_cast<std::size_t>(r * n + c)]; }
  std::string summary_json() const override {
    std::ostringstream os;
    int goal = -1;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] == 'G') goal = static_cast<int>(i);
    os << "{\"n\":" << n << ",\"start\":" << start << ",\"goal\":" << goal << ",\"locked\":"
       << (key_color.empty() ? "false" : "true") << "}";
    return os.str();
  }
};

constexpr std::array<std::pair<int, int>, 4> kDirs = {{{-1, 0}, {1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<const char*, 4> kDirNames = {"north", "south", "east", "west"};

class GridState final : public EnvState {
 public:
  GridState(Task task, std::shared_ptr<const GridTask> detail)
      : EnvState(std::move(task)), d_(std::move(detail)), cells_(d_->cells), pos_(d_->start) {}

 protected:
  StepOutcome step_impl(const std::string& action) override {
    for (int i = 0; i < 4; ++i) {
      if (action != std::string("move ") + kDirNames[i]) continue;
      auto [r, c] = rc(pos_);
      int nr = r + kDirs[static_cast<std::size_t>(i)].first;
      int nc = c + kDirs[static_cast<std::size_t>(i)].second;
      if (!inside(nr, nc))
        return {std::string("cannot move ") + kDirNames[i] + " : edge .", false, false, 0.0};
      char cell = at(nr, nc);
      if (cell == '#')
        return {std::string("cannot move ") + kDirNames[i] + " : wall .", false, false, 0.0};
      if (cell == 'L')
        return {std::string("cannot move ") + kDirNames[i] + " : locked door .", false, false, 0.0};
      pos_ = nr * d_->n + nc;
      return {view(), true, false, 0.0};
    }
    if (action == "pick up key") {
      if (at_pos() == 'K') {
        has_key_ = true;
        cells_[static_cast<std::size_t>(pos_)] = '.';
        return {"picked up the " + d_->key_color + " key .", true, false, 0.0};
      }
      return {"cannot pick up a key here .", false, false, 0.0};
    }
    if (action == "unlock door") {
      if (has_key_) {
        auto [r, c] = rc(pos_);
        for (auto [dr, dc] : kDirs) {
          if (!inside(r + dr, c + dc)) continue;
          if (at(r + dr, c + dc) == 'L') {
            cells_[static_cast<std::size_t>((r + dr) * d_->n + c + dc)] = 'D';
            return {"unlocked the " + d_->key_color + " door .", true, false, 0.0};
          }
        }
      }
      return {"cannot unlock a door here .", false, false, 0.0};
    }
    if (action == "look") return {view(), true, false, 0.0};
    return {"cannot parse the action .", false, false, 0.0};
  }

  std::vector<std::pair<std::string, ActionKind>> candidate_texts() const override {
    std::vector<std::pair<std::string, ActionKind>> out;
    if (at_pos() == 'G') out.emplace_back("at goal", ActionKind::answer);
    for (const char* dir : kDirNames)
      out.emplace_back(std::string("move ") + dir, ActionKind::tool_call);
    out.emplace_back("look", ActionKind::tool_call);
    out.emplace_back("pick up key", ActionKind::tool_call);
    out.emplace_back("unlock door", ActionKind::tool_call);
    return out;
  }

  bool is_legal(const std::string& action) const override {
    for (int i = 0; i < 4; ++i) {
      if (action != std::string("move ") + kDirNames[i]) continue;
      auto [r, c] = rc(pos_);
      int nr = r + kDirs[static_cast<std::size_t>(i)].first;
      int nc = c + kDirs[static_cast<std::size_t>(i)].second;
      return inside(nr, nc) && at(nr, nc) != '#' && at(nr, nc) != 'L';
    }
    if (action == "pick up key") return at_pos() == 'K';
    if (action == "unlock door") {
      if (!has_key_) return false;
      auto [r, c] = rc(pos_);
      for (auto [dr, dc] : kDirs)
        if (inside(r + dr, c + dc) && at(r + dr, c + dc) == 'L') return true;
      return false;
    }
    return action == "look" || action == "at goal";
  }

  OracleAction oracle_action_impl() const override {
    if (at_pos() == 'G') return {"at goal", ActionKind::answer};
    if (at_pos() == 'K' && !has_key_ && needs_key()) return {"pick up key", ActionKind::tool_call};
    auto next = bfs_next(goal_cell());
    if (!next && !has_key_) next = bfs_next(key_cell());
    if (!next) return {"look", ActionKind::tool_call};  // boxed in; padded tasks avoid this
    auto [r, c] = rc(pos_);
    auto [nr, nc] = rc(*next);
    if (at(nr, nc) == 'L') return {"unlock door", ActionKind::tool_call};
    for (int i = 0; i < 4; ++i)
      if (nr == r + kDirs[static_cast<std::size_t>(i)].first &&
          nc == c + kDirs[static_cast<std::size_t>(i)].second)
        return {std::string("move ") + kDirNames[i], ActionKind::tool_call};
    return {"look", ActionKind::tool_call};
  }

  std::string plan_text() const override {
    std::string s = "the goal is to reach the goal tile . plan :";
    if (!d_->key_color.empty())
      s += " fetch the " + d_->key_color + " key , unlock the door ,";
    s += " then walk the corridor to the goal and answer .";
    s += " the grid is " + std::to_string(d_->n) + " by " + std::to_string(d_->n) + " .";
    return s;
  }

 private:
  std::pair<int, int> rc(int p) const { return {p / d_->n, p % d_->n}; }
  bool inside(int r, int c) const { return r >= 0 && r < d_->n && c >= 0 && c < d_->n; }
  char at(int r, int c) const { return cells_[static_cast<std::size_t>(r * d_->n + c)]; }
  char at_pos() const { return cells_[static_cast<std::size_t>(pos_)]; }
  int goal_cell() const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] == 'G') return static_cast<int>(i);
    return -1;
  }
  int key_cell() const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] == 'K') return static_cast<int>(i);
    return -1;
  }
  bool needs_key() const {
    for (char c : cells_)
      if (c == 'L') return true;
    return false;
  }

  // First step of the shortest path; locked doors are passable only with
  // the key in hand (the step onto them becomes an unlock).
  std::optional<int> bfs_next(int target) const {
    if (target < 0) return std::nullopt;
    std::vector<int> prev(cells_.size(), -2);
    std::queue<int> q;
    q.push(pos_);
    prev[static_cast<std::size_t>(pos_)] = -1;
    while (!q.empty()) {
      int p = q.front();
      q.pop();
      if (p == target) {
        int step = p;
        while (prev[static_cast<std::size_t>(step)] != -1) {
          if (prev[static_cast<std::size_t>(step)] == pos_) return step;
          step = prev[static_cast<std::size_t>(step)];
        }
        return std::nullopt;  // already there
      }
      auto [r, c] = rc(p);
      for (auto [dr, dc] : kDirs) {
        int nr = r + dr;
        int nc = c + dc;
        if (!inside(nr, nc)) continue;
        char cell = at(nr, nc);
        if (cell == '#') continue;
        if (cell == 'L' && !has_key_) continue;
        int np = nr * d_->n + nc;
        if (prev[static_cast<std::size_t>(np)] != -2) continue;
        prev[static_cast<std::size_t>(np)] = p;
        q.push(np);
      }
    }
    return std::nullopt;
  }

  std::string describe(int r, int c) const {
    if (!inside(r, c)) return "edge";
    switch (at(r, c)) {
      case '#': return "wall";
      case 'G': return "goal";
      case 'D': return "open door";
      case 'L': return "locked door";
      case 'K': return "key";
      default: return "floor";
    }
  }

  std::string view() const {
    auto [r, c] = rc(pos_);
    std::string s = "at row " + std::to_string(r) + " col " + std::to_string(c) + " .";
    const char* names[4] = {"north", "south", "east", "west"};
    for (int i = 0; i < 4; ++i)
      s += std::string(" ") + names[i] + " : " +
           describe(r + kDirs[static_cast<std::size_t>(i)].first,
                    c + kDirs[static_cast<std::size_t>(i)].second) +
           " .";
    if (at_pos() == 'G') s += " you have reached the goal .";
    if (at_pos() == 'K') s += " a " + d_->key_color + " key is here .";
    return s;
  }

  std::shared_ptr<const GridTask> d_;
  std::vector<char> cells_;
  int pos_;
  bool has_key_ = false;
};

// Shortest solve length via the oracle itself; -1 when it stalls.
int solve_length(const Task& task, std::shared_ptr<const GridTask> detail) {
  GridState state(task, std::move(detail));
  for (int t = 1; t <= task.max_turns; ++t) {
    OracleAction a = state.oracle_action();
    if (a.kind == ActionKind::answer) return t;
    state.step(a.text);
  }
  return -1;
}

}  // namespace

Task GridNav::make_task(std::uint64_t seed, Difficulty difficulty) const {
  const int n = difficulty == Difficulty::easy ? 6 : difficulty == Difficulty::medium ? 8 : 10;

  Task task;
  task.env = "gridnav";
  task.difficulty = difficulty;
  task.seed = seed;
  task.max_turns = 10;
  task.task_id = "gridnav-" + std::string(to_string(difficulty)) + "-" + std::to_string(seed);

  for (std::uint64_t salt = 0;; ++salt) {
    Rng rng = Rng(seed).derive("gridnav-task").derive(salt);
    auto detail = std::make_shared<GridTask>();
    detail->n = n;
    detail->cells.assign(static_cast<std::size_t>(n * n), '#');

    auto carve = [&](int r, int c, char v) { detail->cells[static_cast<std::size_t>(r * n + c)] = v; };
    int sr = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
    int sc = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
    // L-shaped corridor: vertical leg then horizontal leg, total length 4-5.
    int vlen = 2 + static_cast<int>(rng.below(2));
    int hlen = 2 + static_cast<int>(rng.below(2));
    int vdir = sr + vlen < n - 1 ? 1 : -1;
    int hdir = sc + hlen < n - 1 ? 1 : -1;

    std::vector<std::pair<int, int>> path;
    path.emplace_back(sr, sc);
    for (int i = 1; i <= vlen; ++i) path.emplace_back(sr + vdir * i, sc);
    for (int i = 1; i <= hlen; ++i) path.emplace_back(sr + vdir * vlen, sc + hdir * i);
    bool ok = true;
    for (auto [r, c] : path)
      if (r < 0 || r >= n || c < 0 || c >= n) ok = false;
    if (!ok) continue;

    for (auto [r, c] : path) carve(r, c, '.');
    auto [gr, gc] = path.back();
    carve(gr, gc, 'G');
    detail->start = sr * n + sc;

    if (difficulty == Difficulty::medium) {
      auto [dr, dc] = path[path.size() / 2];
      carve(dr, dc, 'D');
    } else if (difficulty == Difficulty::hard) {
      static const char* colors[] = {"red", "blue", "green", "yellow"};
      detail->key_color = colors[rng.below(4)];
      auto [dr, dc] = path[path.size() / 2];
      carve(dr, dc, 'L');
      // Key on a side cell next to the first path cell after the start.
      auto [kr0, kc0] = path[1];
      bool placed = false;
      for (auto [or_, oc] : kDirs) {
        int kr = kr0 + or_;
        int kc = kc0 + oc;
        if (kr <= 0 || kr >= n - 1 || kc <= 0 || kc >= n - 1) continue;
        if (detail->at(kr, kc) == '#') {
          carve(kr, kc, 'K');
          placed = true;
          break;
        }
      }
      if (!placed) continue;
    }

    // Sprinkle extra floor for texture; never touching the border.
    for (int r = 1; r < n - 1; ++r)
      for (int c = 1; c < n - 1; ++c)
        if (detail->at(r, c) == '#' && rng.below(4) == 0) carve(r, c, '.');

    task.detail = detail;
    task.question =
        "reach the goal tile in the " + std::to_string(n) + " by " + std::to_string(n) +
        " grid . you can move north , south , east or west , pick up a key and unlock a door .";

    int steps = solve_length(task, detail);
    if (steps > 0 && steps <= task.max_turns - 1) return task;
  }
}

std::unique_ptr<EnvState> GridNav::init(const Task& task) const {
  auto detail = std::dynamic_pointer_cast<const GridTask>(task.detail);
  if (!detail) throw EnvError("gridnav: task detail of the wrong kind");
  return std::make_unique<GridState>(task, std::move(detail));
}

std::string GridNav::gold_answer(const Task&) const { return "at goal"; }

}  // namespace agentomit::detail
