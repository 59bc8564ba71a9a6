#ifndef LLPA_SEMIGROUP_HPP
#define LLPA_SEMIGROUP_HPP

#include <string>
#include <tuple>

#include "llpa/space.hpp"

namespace llpa {

// Element (alpha, A, beta) of the inverse semigroup of a labelled space,
// or the absorbing zero.  Nonzero elements keep A nonempty and inside
// r(alpha) & r(beta); equality is structural.
struct Triple {
  bool zero = true;
  Word alpha;
  VSet A = 0;
  Word beta;

  static Triple make_zero() { return Triple{}; }

  static Triple make(const LabelledSpace& sp, Word alpha, VSet A, Word beta) {
    if (!sp.family.contains(A)) throw validation_error("triple: set is not a member");
    if (A == 0) throw validation_error("triple: nonzero elements need a nonempty set");
    if (!subset(A, sp.graph.range(alpha)) || !subset(A, sp.graph.range(beta)))
      throw validation_error("triple: set must lie in the range of both words");
    Triple t;
    t.zero = false;
    t.alpha = std::move(alpha);
    t.A = A;
    t.beta = std::move(beta);
    return t;
  }

  bool is_idempotent() const { return zero || alpha == beta; }

  friend bool operator==(const Triple& a, const Triple& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.alpha == b.alpha && a.A == b.A && a.beta == b.beta;
  }
  friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }
  friend bool operator<(const Triple& a, const Triple& b) {
    return std::tie(a.zero, a.alpha, a.A, a.beta) < std::tie(b.zero, b.alpha, b.A, b.beta);
  }
};

inline Triple star(const Triple& s) {
  if (s.zero) return s;
  Triple t = s;
  std::swap(t.alpha, t.beta);
  return t;
}

// Case-split product: the middle words must be comparable, and the
// transported sets must still meet.
inline Triple product(const LabelledSpace& sp, const Triple& s, const Triple& t) {
  if (s.zero || t.zero) return Triple::make_zero();
  if (word_prefix(s.beta, t.alpha)) {
    Word g = word_suffix_from(t.alpha, s.beta.size());
    VSet A = sp.graph.range(s.A, g) & t.A;
    if (A == 0) return Triple::make_zero();
    return Triple::make(sp, word_concat(s.alpha, g), A, t.beta);
  }
  if (word_prefix(t.alpha, s.beta)) {
    Word b = word_suffix_from(s.beta, t.alpha.size());
    VSet A = s.A & sp.graph.range(t.A, b);
    if (A == 0) return Triple::make_zero();
    return Triple::make(sp, s.alpha, A, word_concat(t.beta, b));
  }
  return Triple::make_zero();
}

// Natural order on idempotents, decided by the word-extension criterion;
// coincides with product(p, q) == p.
inline bool natural_leq(const LabelledSpace& sp, const Triple& p, const Triple& q) {
  if (!p.is_idempotent() || !q.is_idempotent())
    throw validation_error("natural_leq: both arguments must be idempotent");
  if (p.zero) return true;
  if (q.zero) return false;
  if (!word_prefix(q.alpha, p.alpha)) return false;
  Word rest = word_suffix_from(p.alpha, q.alpha.size());
  return subset(p.A, sp.graph.range(q.A, rest));
}

inline std::string triple_string(const LabelledSpace& sp, const Triple& t) {
  if (t.zero) return "0";
  return "(" + sp.graph.word_string(t.alpha) + "," + sp.graph.set_string(t.A) + "," +
         sp.graph.word_string(t.beta) + ")";
}

}  // namespace llpa

#endif  // LLPA_SEMIGROUP_HPP
