#pragma once

// Behaviors: systems of four context-indexed joint outcome distributions
// p_xy(a,b) for a bipartite experiment with two settings per party and
// outcomes in {-1,+1}, plus the functionals computed on them (expectations,
// marginals, the eight CHSH variants, the no-signaling discrepancy).
//
// Settings are labels, never values: they index contexts and are only
// mapped to the {+1,-1} alias where a construction calls for it.

#include <array>
#include <string>
#include <utility>

#include "bellkit/scalar.hpp"

namespace bellkit {

// Simplex / consistency tolerance for float-valued distributions.
inline constexpr double kFloatTol = 1e-12;

enum class Party { alice, bob };

// A measurement setting: which party, and which of its two settings (1 or 2).
struct SettingLabel {
  Party party;
  int index;  // 1 or 2
};

// Alias used where settings are written as x,y in {1,-1}: 1 -> +1, 2 -> -1.
inline int setting_alias(int index) { return index == 1 ? 1 : -1; }

struct Context {
  int a = 1;  // Alice's setting index, 1 or 2
  int b = 1;  // Bob's setting index, 1 or 2

  friend bool operator==(const Context& x, const Context& y) {
    return x.a == y.a && x.b == y.b;
  }
};

inline constexpr std::array<Context, 4> kContexts{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

inline int context_index(const Context& c) {
  if ((c.a != 1 && c.a != 2) || (c.b != 1 && c.b != 2)) {
    throw ValidationError("context settings must be 1 or 2");
  }
  return (c.a - 1) * 2 + (c.b - 1);
}

// Joint distribution over (a,b) in {+1,-1}^2. Entries are stored in the
// fixed order (++, +-, -+, --). Exact entries validate exactly; float
// entries validate within kFloatTol.
class OutcomeDist {
 public:
  static OutcomeDist from_probs(Scalar pp, Scalar pm, Scalar mp, Scalar mm);

  // a, b in {+1,-1}.
  const Scalar& p(int a, int b) const {
    return p_[index_of(a, b)];
  }
  const std::array<Scalar, 4>& probs() const { return p_; }
  bool is_exact() const;

  static int index_of(int a, int b) {
    if ((a != 1 && a != -1) || (b != 1 && b != -1)) {
      throw ValidationError("outcomes must be +1 or -1");
    }
    return (a == 1 ? 0 : 2) + (b == 1 ? 0 : 1);
  }

 private:
  std::array<Scalar, 4> p_{};
};

// E(AB) = p(+,+) + p(-,-) - p(+,-) - p(-,+); exact for exact input.
Scalar expectation(const OutcomeDist& dist);

// (P(a=+1), P(b=+1)).
std::pair<Scalar, Scalar> marginals(const OutcomeDist& dist);

// The four context-indexed outcome distributions, in the fixed order
// (1,1), (1,2), (2,1), (2,2).
class Behavior {
 public:
  explicit Behavior(std::array<OutcomeDist, 4> table) : table_(std::move(table)) {}

  const OutcomeDist& at(const Context& c) const { return table_[context_index(c)]; }
  const std::array<OutcomeDist, 4>& table() const { return table_; }
  bool is_exact() const;

  // The four pairwise expectations (E11, E12, E21, E22).
  std::array<Scalar, 4> expectations() const;

 private:
  std::array<OutcomeDist, 4> table_;
};

// The eight signed CHSH sums. Variant 2m   =  (E11+E12+E21+E22) - 2*E_m,
//                              variant 2m+1 = its negation,
// where m runs over the position of the single minus sign (E11..E22).
struct ChshReport {
  std::array<Scalar, 8> variants;
  Scalar max_abs;
  int argmax = 0;  // index of the largest positive variant

  static std::string variant_name(int k);
};

ChshReport chsh(const Behavior& behavior);

// Largest cross-context discrepancy of a single party's marginal:
// 0 means consistently connected (no signaling).
Scalar no_signaling_delta(const Behavior& behavior);

}  // namespace bellkit
