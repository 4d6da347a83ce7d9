#pragma once

#include <string>
#include <vector>

#include "agentomit/env.hpp"
#include "agentomit/rng.hpp"

namespace agentomit::detail {

// Synthetic lowercase name, 2-3 syllables.
std::string coined_word(Rng& rng);
// "<coined> <pool noun>" two-token entity name.
std::string entity_name(Rng& rng);

// Pads with filler sentences / truncates whole tokens until the text lands
// in [lo, hi] tokens. Filler is deterministic.
std::string fit_token_range(std::string text, int lo, int hi);

class CraftWorld final : public Environment {
 public:
  std::string name() const override { return "craftworld"; }
  Task make_task(std::uint64_t seed, Difficulty difficulty) const override;
  std::unique_ptr<EnvState> init(const Task& task) const override;
  std::string gold_answer(const Task& task) const override;
};

class GridNav final : public Environment {
 public:
  std::string name() const override { return "gridnav"; }
  Task make_task(std::uint64_t seed, Difficulty difficulty) const override;
  std::unique_ptr<EnvState> init(const Task& task) const override;
  std::string gold_answer(const Task& task) const override;
};

class FactSearch final : public Environment {
 public:
  std::string name() const override { return "factsearch"; }
  Task make_task(std::uint64_t seed, Difficulty difficulty) const override;
  std::unique_ptr<EnvState> init(const Task& task) const override;
  std::string gold_answer(const Task& task) const override;
};

}  // namespace agentomit::detail
