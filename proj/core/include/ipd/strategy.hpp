#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ipd/game.hpp"
#include "ipd/rng.hpp"

namespace ipd {

enum class InitialPolicy { AlwaysC, AlwaysD, UniformRandom };

std::string_view to_string(InitialPolicy p);
/// Accepts "C"/"AlwaysC", "D"/"AlwaysD", "random"/"UniformRandom".
InitialPolicy parse_initial_policy(std::string_view text);

/// Cooperation probabilities in the order p(C|CC), p(C|CD), p(C|DC), p(C|DD).
using CoopVector = std::array<double, 4>;

/// A memory-1 strategy. `coop` is indexed in the owner's orientation:
/// own previous move first.
struct MemoryOneStrategy {
  std::string name;
  CoopVector coop{};
  InitialPolicy initial = InitialPolicy::AlwaysC;

  double coop_prob(JointOutcome prev) const { return coop[prev.index()]; }

  friend bool operator==(const MemoryOneStrategy&, const MemoryOneStrategy&) = default;
};

class UnknownStrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidStrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Registry names, in registry order.
std::span<const std::string_view> builtin_names();

bool is_builtin(std::string_view name);

/// Looks up one of the nine library strategies. "ZD-GTFT-2" and
/// "ZD-EXTORT-2" are accepted as aliases. Throws UnknownStrategyError.
MemoryOneStrategy builtin(std::string_view name);

/// Builds a custom strategy; throws InvalidStrategyError naming the first
/// entry outside [0, 1].
MemoryOneStrategy make_strategy(std::string name, const CoopVector& coop, InitialPolicy initial);

/// Samples the next move given the previous turn in `s`'s orientation.
/// Consumes exactly one draw, including for deterministic entries.
Action next_action(const MemoryOneStrategy& s, JointOutcome prev, RngStream& rng);

/// First move. With `randomize_override` the policy is replaced by a fair
/// coin. Consumes exactly one draw.
Action initial_action(const MemoryOneStrategy& s, RngStream& rng, bool randomize_override);

/// Re-indexes a cooperation vector into the opposing player's orientation
/// (swaps the CD and DC slots). This is the only converter between the two.
CoopVector as_model_view(const CoopVector& coop);
CoopVector as_model_view(const MemoryOneStrategy& s);

}  // namespace ipd
