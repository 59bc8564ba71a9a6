#ifndef LLPA_GROUPOID_HPP
#define LLPA_GROUPOID_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "llpa/action.hpp"

namespace llpa {

// ---------------------------------------------------------------------------
// Cycles and exits.

// (gamma, C): every member below C is carried onto itself by gamma.
struct Cycle {
  Word gamma;
  VSet C;
};

// Relative range is additive over disjoint unions, so fixing every atom
// below C is the same as fixing every member below C.
inline bool is_cycle(const LabelledSpace& sp, const Word& gamma, VSet C) {
  if (gamma.empty() || C == 0 || !sp.family.contains(C)) return false;
  if (!subset(C, sp.graph.range(gamma))) return false;
  for (VSet t : sp.family.atoms())
    if (subset(t, C) && sp.graph.range(t, gamma) != t) return false;
  return true;
}

// An exit is a nonzero member along the cycle emitting anything other than
// the next cycle letter.  A union of atoms emits exactly the union of what
// its atoms emit, so searching atoms is complete.
inline bool cycle_has_exit(const LabelledSpace& sp, const Cycle& c) {
  int n = static_cast<int>(c.gamma.size());
  VSet image = c.C;
  for (int k = 0; k <= n; ++k) {
    int next = c.gamma[static_cast<size_t>(k % n)];
    for (VSet t : sp.family.atoms()) {
      if (!subset(t, image)) continue;
      auto letters = sp.graph.letters_from(t);
      if (letters.size() != 1 || letters[0] != next) return true;
    }
    if (k < n) image = sp.graph.range(image, c.gamma[static_cast<size_t>(k)]);
  }
  return false;
}

// All cycles found by breadth-first search over the assignment
// atom -> current image.  A word is emitted the first time its assignment
// state fixes some atoms; C is the union of those atoms, so sub-members are
// cycles implicitly and powers of an emitted word are suppressed by the
// visited-state set.
inline std::vector<Cycle> enumerate_cycles(const LabelledSpace& sp) {
  const auto& atoms = sp.family.atoms();
  size_t n = atoms.size();
  std::vector<Cycle> out;
  if (n == 0) return out;
  std::vector<VSet> init(atoms.begin(), atoms.end());
  std::set<std::vector<VSet>> visited{init};
  std::vector<std::pair<std::vector<VSet>, Word>> frontier{{init, {}}};
  long long budget = 200000;
  while (!frontier.empty()) {
    std::vector<std::pair<std::vector<VSet>, Word>> next;
    for (auto& [state, word] : frontier) {
      for (int a = 0; a < sp.graph.num_letters(); ++a) {
        if (--budget < 0) throw internal_error("enumerate_cycles: state budget exceeded");
        std::vector<VSet> s2(n);
        bool alive = false;
        for (size_t i = 0; i < n; ++i) {
          s2[i] = sp.graph.range(state[i], a);
          alive |= s2[i] != 0;
        }
        if (!alive || !visited.insert(s2).second) continue;
        Word w2 = word;
        w2.push_back(a);
        VSet fixed = 0;
        for (size_t i = 0; i < n; ++i)
          if (s2[i] == atoms[i]) fixed |= atoms[i];
        if (fixed != 0) out.push_back({w2, fixed});
        next.push_back({std::move(s2), std::move(w2)});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// A cycle without exits forces a deterministic single-letter walk: every
// atom along it must emit exactly the next cycle letter.  Following that
// walk from each atom decides existence exactly.
inline std::optional<Cycle> find_cycle_without_exit(const LabelledSpace& sp) {
  for (VSet t : sp.family.atoms()) {
    VSet m = t;
    Word gamma;
    std::set<VSet> visited{t};
    for (;;) {
      int forced = -1;
      bool dead = false;
      for (VSet u : sp.family.atoms()) {
        if (!subset(u, m)) continue;
        auto letters = sp.graph.letters_from(u);
        if (letters.size() != 1 || (forced >= 0 && letters[0] != forced)) {
          dead = true;
          break;
        }
        forced = letters[0];
      }
      if (dead || forced < 0) break;
      gamma.push_back(forced);
      m = sp.graph.range(m, forced);
      if (m == t) return Cycle{gamma, t};
      if (!visited.insert(m).second) break;
    }
  }
  return std::nullopt;
}

struct ConditionLReport {
  bool holds;
  std::optional<Cycle> witness;  // a cycle without exits, when holds is false
};

inline ConditionLReport condition_L(const LabelledSpace& sp) {
  auto w = find_cycle_without_exit(sp);
  return {!w.has_value(), w};
}

// ---------------------------------------------------------------------------
// Transformation groupoid elements.

// (t, xi) with xi in V_t; the range is xi, the source is phi_{t^{-1}}(xi).
struct GroupoidElement {
  GroupWord t;
  TightFilter xi;

  static GroupoidElement make(const LabelledSpace& sp, GroupWord t, TightFilter xi) {
    if (!in_domain(sp, t, xi))
      throw validation_error("groupoid element: filter is not in V_t");
    return {std::move(t), canonical_filter(xi)};
  }

  friend bool operator==(const GroupoidElement& a, const GroupoidElement& b) {
    return a.t == b.t && a.xi == b.xi;
  }
};

inline TightFilter source_filter(const LabelledSpace& sp, const GroupoidElement& g) {
  return apply_action(sp, group_inverse(g.t), g.xi);
}

inline GroupoidElement invert(const LabelledSpace& sp, const GroupoidElement& g) {
  return GroupoidElement::make(sp, group_inverse(g.t), source_filter(sp, g));
}

inline GroupoidElement compose(const LabelledSpace& sp, const GroupoidElement& g1,
                               const GroupoidElement& g2) {
  if (source_filter(sp, g1) != g2.xi)
    throw validation_error("compose: source of the left factor is not the range of the right");
  return GroupoidElement::make(sp, group_mul(g1.t, g2.t), g1.xi);
}

// ---------------------------------------------------------------------------
// Isotropy.

namespace detail {

inline int minimal_word_period(const Word& w) {
  int n = static_cast<int>(w.size());
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int j = d; j < n && ok; ++j) ok = w[static_cast<size_t>(j)] == w[static_cast<size_t>(j % d)];
    if (ok) return d;
  }
  return n;
}

inline long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace detail

// A filter of finite type never has isotropy; an eventually periodic filter
// has non-trivial isotropy exactly when some shift of its purely periodic
// part fixes it.  Stripping the base conjugates the isotropy group to the
// purely periodic filter eta, where every non-unit isotropy candidate is a
// power of the minimal word period; powers act as a deterministic shift, so
// recurrence of eta in its own shift orbit decides the question.
inline bool isotropy_nontrivial(const LabelledSpace& sp, const TightFilter& xi) {
  if (!xi.periodic) return false;
  TightFilter c = canonical_filter(xi);
  TightFilter eta = apply_action(sp, group_inverse(group_of_positive(c.base)), c);
  int d = detail::minimal_word_period(c.period);
  Word theta;
  for (int j = 0; j < d; ++j) theta.push_back(eta.letter_at(j));
  GroupWord shift = group_inverse(group_of_positive(theta));
  std::set<TightFilter> seen{eta};
  TightFilter cur = eta;
  for (;;) {
    cur = apply_action(sp, shift, cur);
    if (cur == eta) return true;
    if (!seen.insert(cur).second) return false;
  }
}

// Membership of (t, xi) in the interior of the isotropy bundle.  Non-unit
// interior elements live over conjugates t = beta gamma^{±1} beta^{-1} of a
// cycle without exits (gamma, C) with C in the filter at level |beta|; all
// admissible decompositions of t differ by sliding beta along gamma, and
// the filter's level data is eventually periodic, so a bounded search in j
// is complete.
inline bool iso_interior_contains(const LabelledSpace& sp, const GroupoidElement& g) {
  if (g.t.identity()) return true;
  if (!g.xi.periodic) return false;

  size_t pos = 0;
  Word P, N;
  while (pos < g.t.syms.size() && g.t.syms[pos] > 0) P.push_back(g.t.syms[pos++] - 1);
  while (pos < g.t.syms.size() && g.t.syms[pos] < 0) N.push_back(-g.t.syms[pos++] - 1);
  if (pos != g.t.syms.size()) return false;  // not a conjugate of a positive word
  std::reverse(N.begin(), N.end());

  Word beta0, gamma0;
  if (word_prefix(N, P) && N.size() < P.size()) {
    beta0 = N;
    gamma0 = word_suffix_from(P, N.size());
  } else if (word_prefix(P, N) && P.size() < N.size()) {
    beta0 = P;
    gamma0 = word_suffix_from(N, P.size());
  } else {
    return false;
  }

  // The filter's word must be beta0 gamma0^infinity.
  TightFilter f = canonical_filter(g.xi);
  long long horizon = static_cast<long long>(std::max(f.base.size(), beta0.size())) +
                      detail::lcm_ll(static_cast<long long>(f.period.size()),
                                     static_cast<long long>(gamma0.size()));
  for (long long i = 0; i < horizon; ++i) {
    size_t b0 = beta0.size();
    int expected = static_cast<long long>(i) < static_cast<long long>(b0)
                       ? beta0[static_cast<size_t>(i)]
                       : gamma0[static_cast<size_t>((i - static_cast<long long>(b0)) %
                                                    gamma0.size())];
    if (f.letter_at(static_cast<int>(i)) != expected) return false;
  }

  long long jmax = std::max<long long>(0, static_cast<long long>(f.base.size()) -
                                              static_cast<long long>(beta0.size())) +
                   detail::lcm_ll(static_cast<long long>(f.period.size()),
                                  static_cast<long long>(gamma0.size()));
  VSet R = sp.graph.all_vertices();
  for (size_t i = 0; i < beta0.size(); ++i) R = sp.graph.range(R, beta0[i]);
  int glen = static_cast<int>(gamma0.size());
  for (long long j = 0; j <= jmax; ++j) {
    int level = static_cast<int>(beta0.size() + static_cast<size_t>(j));
    VSet atom = f.atom_at(level);
    if (atom != 0) {
      Word gj;
      for (int i = 0; i < glen; ++i)
        gj.push_back(gamma0[static_cast<size_t>((j + i) % glen)]);
      for (VSet m : sp.family.members()) {
        if (m == 0 || !subset(atom, m) || !subset(m, R)) continue;
        if (is_cycle(sp, gj, m) && !cycle_has_exit(sp, {gj, m})) return true;
      }
    }
    R = sp.graph.range(R, f.letter_at(level));
  }
  return false;
}

}  // namespace llpa

#endif  // LLPA_GROUPOID_HPP
