#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ipd/rational.hpp"

namespace ipd {

enum class Action : std::uint8_t { C = 0, D = 1 };

constexpr char to_char(Action a) { return a == Action::C ? 'C' : 'D'; }

/// Both moves of one turn, seen from the focal player: own move first.
struct JointOutcome {
  Action self = Action::C;
  Action opponent = Action::C;

  /// Position in the canonical order CC, CD, DC, DD.
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(self) * 2 + static_cast<std::size_t>(opponent);
  }
  static constexpr JointOutcome from_index(std::size_t i) {
    return {static_cast<Action>(i / 2), static_cast<Action>(i % 2)};
  }
  /// The same turn seen by the other player.
  constexpr JointOutcome mirrored() const { return {opponent, self}; }

  friend constexpr bool operator==(JointOutcome, JointOutcome) = default;
};

inline constexpr JointOutcome kCC{Action::C, Action::C};
inline constexpr JointOutcome kCD{Action::C, Action::D};
inline constexpr JointOutcome kDC{Action::D, Action::C};
inline constexpr JointOutcome kDD{Action::D, Action::D};
inline constexpr std::array<JointOutcome, 4> kAllOutcomes{kCC, kCD, kDC, kDD};

std::string to_string(JointOutcome o);

struct PayoffPair {
  Rational self;
  Rational opponent;
  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

/// Symmetric stage-game payoffs, stored exactly.
///
/// Values coming from floating point are snapped to a 1e-6 grid so that the
/// predictor's expected-payoff comparisons are exact and order independent.
class PayoffMatrix {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  PayoffMatrix() = default;  // (R, S, T, P) = (3, 0, 5, 1)
  PayoffMatrix(Rational reward, Rational sucker, Rational temptation, Rational punishment)
      : reward_(reward), sucker_(sucker), temptation_(temptation), punishment_(punishment) {}

  static PayoffMatrix from_doubles(double reward, double sucker, double temptation, double punishment);

  const Rational& reward() const { return reward_; }
  const Rational& sucker() const { return sucker_; }
  const Rational& temptation() const { return temptation_; }
  const Rational& punishment() const { return punishment_; }

  /// The focal player's payoff for `o`.
  const Rational& value(JointOutcome o) const;

  /// (R, S, T, P) as doubles, in that order.
  std::array<double, 4> as_doubles() const;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  Rational reward_ = 3;
  Rational sucker_ = 0;
  Rational temptation_ = 5;
  Rational punishment_ = 1;
};

PayoffPair payoff(const PayoffMatrix& matrix, JointOutcome outcome);

struct ValidationReport {
  /// One entry per violated inequality, e.g. "P < R fails (P=5, R=3)".
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Checks S < P < R < T and 2R > T + S.
ValidationReport validate(const PayoffMatrix& matrix);

}  // namespace ipd
