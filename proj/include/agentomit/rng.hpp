#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace agentomit {

// splitmix64 finalizer. Basis for every derived stream in the project.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// FNV-1a, used to fold strings (task ids, file contents) into stream keys.
constexpr std::uint64_t hash_bytes(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Counter-based generator. Streams are derived by key, draws are addressed
// by salt, so two runs that share a key see identical values at identical
// addresses no matter what happened in between. Keyed draws keep paired
// rollouts aligned even when one arm consumes a different number of values.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc908ull)) {}

  Rng derive(std::uint64_t salt) const { return Rng(raw(), mix64(key_ ^ mix64(salt))); }
  Rng derive(std::string_view salt) const { return derive(hash_bytes(salt)); }

  // Addressed draws (pure, position-independent).
  std::uint64_t word_at(std::uint64_t salt) const { return mix64(key_ ^ mix64(salt + 0x9e3779b97f4a7c15ull)); }
  double uniform_at(std::uint64_t salt) const { return to_unit(word_at(salt)); }

  // Sequential draws for generation code that does not need pairing.
  std::uint64_t next() { return mix64(key_ + (++counter_) * 0xd1342543de82ef95ull); }
  double uniform() { return to_unit(next()); }
  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  double normal() {
    // Box-Muller; counter advances by two.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  Rng(std::uint64_t, std::uint64_t premixed) : key_(premixed) {}
  std::uint64_t raw() const { return key_; }
  static double to_unit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1.0p-53; }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace agentomit
