#include "ipd/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ipd {
namespace {

struct Entry {
  std::string_view name;
  CoopVector coop;
  InitialPolicy initial;
};

// JOSS and ZDEXTORT-2 open with D: both tie ALLD at mutual defection in the
// reference tournament, which requires a defecting first move.
constexpr std::array<Entry, 9> kRegistry{{
    {"TFT", {1.0, 0.0, 1.0, 0.0}, InitialPolicy::AlwaysC},
    {"GTFT", {1.0, 1.0 / 3.0, 1.0, 1.0 / 3.0}, InitialPolicy::AlwaysC},
    {"WSLS", {1.0, 0.0, 0.0, 1.0}, InitialPolicy::AlwaysC},
    {"ALLD", {0.0, 0.0, 0.0, 0.0}, InitialPolicy::AlwaysD},
    {"ALLC", {1.0, 1.0, 1.0, 1.0}, InitialPolicy::AlwaysC},
    {"JOSS", {0.9, 0.0, 0.9, 0.0}, InitialPolicy::AlwaysD},
    {"ZDGTFT-2", {1.0, 1.0 / 8.0, 1.0, 1.0 / 4.0}, InitialPolicy::AlwaysC},
    {"ZDEXTORT-2", {8.0 / 9.0, 1.0 / 2.0, 1.0 / 3.0, 0.0}, InitialPolicy::AlwaysD},
    {"RANDOM", {0.5, 0.5, 0.5, 0.5}, InitialPolicy::UniformRandom},
}};

constexpr std::array<std::string_view, 9> kNames{"TFT",  "GTFT",     "WSLS",       "ALLD",  "ALLC",
                                                 "JOSS", "ZDGTFT-2", "ZDEXTORT-2", "RANDOM"};

std::string_view canonical(std::string_view name) {
  if (name == "ZD-GTFT-2") return "ZDGTFT-2";
  if (name == "ZD-EXTORT-2") return "ZDEXTORT-2";
  return name;
}

constexpr std::array<std::string_view, 4> kSlotNames{"p(C|CC)", "p(C|CD)", "p(C|DC)", "p(C|DD)"};

}  // namespace

std::string_view to_string(InitialPolicy p) {
  switch (p) {
    case InitialPolicy::AlwaysC: return "AlwaysC";
    case InitialPolicy::AlwaysD: return "AlwaysD";
    case InitialPolicy::UniformRandom: return "UniformRandom";
  }
  return "?";
}

InitialPolicy parse_initial_policy(std::string_view text) {
  if (text == "C" || text == "AlwaysC") return InitialPolicy::AlwaysC;
  if (text == "D" || text == "AlwaysD") return InitialPolicy::AlwaysD;
  if (text == "random" || text == "UniformRandom") return InitialPolicy::UniformRandom;
  throw std::invalid_argument("unknown initial policy '" + std::string(text) +
                              "' (expected C, D or random)");
}

std::span<const std::string_view> builtin_names() { return kNames; }

bool is_builtin(std::string_view name) {
  auto n = canonical(name);
  return std::any_of(kRegistry.begin(), kRegistry.end(), [&](const Entry& e) { return e.name == n; });
}

MemoryOneStrategy builtin(std::string_view name) {
  auto n = canonical(name);
  for (const auto& e : kRegistry) {
    if (e.name == n) return MemoryOneStrategy{std::string(e.name), e.coop, e.initial};
  }
  std::string valid;
  for (auto v : kNames) {
    if (!valid.empty()) valid += ", ";
    valid += v;
  }
  throw UnknownStrategyError("unknown strategy '" + std::string(name) + "'; valid names: " + valid);
}

MemoryOneStrategy make_strategy(std::string name, const CoopVector& coop, InitialPolicy initial) {
  for (std::size_t i = 0; i < coop.size(); ++i) {
    if (!(coop[i] >= 0.0 && coop[i] <= 1.0)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", coop[i]);
      throw InvalidStrategyError("strategy '" + name + "': " + std::string(kSlotNames[i]) + " = " +
                                 buf + " is outside [0, 1]");
    }
  }
  return MemoryOneStrategy{std::move(name), coop, initial};
}

Action next_action(const MemoryOneStrategy& s, JointOutcome prev, RngStream& rng) {
  return rng.bernoulli(s.coop_prob(prev)) ? Action::C : Action::D;
}

Action initial_action(const MemoryOneStrategy& s, RngStream& rng, bool randomize_override) {
  const double u = rng.uniform();
  if (randomize_override) return u < 0.5 ? Action::C : Action::D;
  switch (s.initial) {
    case InitialPolicy::AlwaysC: return Action::C;
    case InitialPolicy::AlwaysD: return Action::D;
    case InitialPolicy::UniformRandom: return u < 0.5 ? Action::C : Action::D;
  }
  return Action::D;
}

CoopVector as_model_view(const CoopVector& coop) { return {coop[0], coop[2], coop[1], coop[3]}; }

CoopVector as_model_view(const MemoryOneStrategy& s) { return as_model_view(s.coop); }

}  // namespace ipd
