#include "ipd/game.hpp"

#include <cstdio>

namespace ipd {
namespace {

std::string show(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", r.to_double());
  return buf;
}

}  // namespace

std::string to_string(JointOutcome o) { return {to_char(o.self), to_char(o.opponent)}; }

PayoffMatrix PayoffMatrix::from_doubles(double reward, double sucker, double temptation,
                                        double punishment) {
  return PayoffMatrix(Rational::from_double(reward, kScale), Rational::from_double(sucker, kScale),
                      Rational::from_double(temptation, kScale),
                      Rational::from_double(punishment, kScale));
}

const Rational& PayoffMatrix::value(JointOutcome o) const {
  switch (o.index()) {
    case 0: return reward_;
    case 1: return sucker_;
    case 2: return temptation_;
    default: return punishment_;
  }
}

std::array<double, 4> PayoffMatrix::as_doubles() const {
  return {reward_.to_double(), sucker_.to_double(), temptation_.to_double(),
          punishment_.to_double()};
}

PayoffPair payoff(const PayoffMatrix& matrix, JointOutcome outcome) {
  return {matrix.value(outcome), matrix.value(outcome.mirrored())};
}

std::string ValidationReport::describe() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ValidationReport validate(const PayoffMatrix& m) {
  ValidationReport report;
  const auto& R = m.reward();
  const auto& S = m.sucker();
  const auto& T = m.temptation();
  const auto& P = m.punishment();
  if (!(S < P)) report.violations.push_back("S < P fails (S=" + show(S) + ", P=" + show(P) + ")");
  if (!(P < R)) report.violations.push_back("P < R fails (P=" + show(P) + ", R=" + show(R) + ")");
  if (!(R < T)) report.violations.push_back("R < T fails (R=" + show(R) + ", T=" + show(T) + ")");
  if (!(R + R > T + S)) {
    report.violations.push_back("2R > T + S fails (2R=" + show(R + R) + ", T+S=" + show(T + S) + ")");
  }
  return report;
}

}  // namespace ipd
