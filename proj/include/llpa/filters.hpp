#ifndef LLPA_FILTERS_HPP
#define LLPA_FILTERS_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "llpa/semigroup.hpp"
#include "llpa/space.hpp"

namespace llpa {

// A tight filter in atom form.  The filter at level n is an ultrafilter in
// the Boolean algebra restricted to r(word_{1,n}); in a finite normal space
// an ultrafilter is the upward closure of a unique atom, so the whole
// complete family is a chain of atoms.  Level 0 may instead be the empty
// filter, encoded as mask 0.
//
// finite kind: word = base, chain holds levels 0..|base|.
// periodic kind: word = base followed by period repeated forever, chain
// holds levels 0..|base|+|period|-1 and wraps with period |period| beyond.
struct TightFilter {
  bool periodic = false;
  Word base;
  Word period;
  std::vector<VSet> chain;

  int stored_levels() const { return static_cast<int>(chain.size()); }

  int letter_at(int level) const {  // letter between level and level+1
    int b = static_cast<int>(base.size());
    if (level < b) return base[static_cast<size_t>(level)];
    if (!periodic) throw internal_error("letter_at: past the end of a finite word");
    int p = static_cast<int>(period.size());
    return period[static_cast<size_t>((level - b) % p)];
  }

  VSet atom_at(int level) const {
    int b = static_cast<int>(base.size());
    if (level < stored_levels()) return chain[static_cast<size_t>(level)];
    if (!periodic) throw internal_error("atom_at: past the end of a finite chain");
    int p = static_cast<int>(period.size());
    return chain[static_cast<size_t>(b + (level - b) % p)];
  }

  // Does the filter's word begin with w?
  bool word_begins_with(const Word& w) const {
    if (!periodic && w.size() > base.size()) return false;
    for (size_t i = 0; i < w.size(); ++i)
      if (letter_at(static_cast<int>(i)) != w[i]) return false;
    return true;
  }

  friend bool operator==(const TightFilter& a, const TightFilter& b) {
    return std::tie(a.periodic, a.base, a.period, a.chain) ==
           std::tie(b.periodic, b.base, b.period, b.chain);
  }
  friend bool operator!=(const TightFilter& a, const TightFilter& b) { return !(a == b); }
  friend bool operator<(const TightFilter& a, const TightFilter& b) {
    return std::tie(a.periodic, a.base, a.period, a.chain) <
           std::tie(b.periodic, b.base, b.period, b.chain);
  }
};

// Minimal member D of the algebra restricted to `ambient` with
// r(D, letter) containing C, or 0 when no member qualifies.  In a normal
// space the qualifying set is meet-closed and D is an atom: if D split as
// a disjoint union of atoms, exactly one of them would already qualify
// (an atom meets C's image or misses it entirely), contradicting
// minimality.  This makes the level-(n+1) -> level-n step of a complete
// family deterministic.
inline VSet down_atom(const LabelledSpace& sp, VSet ambient, int letter, VSet C) {
  bool any = false;
  VSet D = ~VSet{0};
  for (VSet m : sp.family.members()) {
    if (!subset(m, ambient)) continue;
    if (subset(C, sp.graph.range(m, letter))) {
      any = true;
      D &= m;
    }
  }
  if (!any) return 0;
  if (!sp.family.contains(D) || !subset(C, sp.graph.range(D, letter)))
    throw internal_error("down_atom: family is not weakly left-resolving");
  return D;
}

namespace detail {

inline bool is_family_atom(const LabelledSpace& sp, VSet C) {
  const auto& atoms = sp.family.atoms();
  return std::binary_search(atoms.begin(), atoms.end(), C) ||
         std::find(atoms.begin(), atoms.end(), C) != atoms.end();
}

// One completeness step: the stored atom at `level` must be the down image
// of the stored atom at level+1.  Level 0 ranges over the whole family and
// may carry the empty marker.
inline bool level_step_ok(const LabelledSpace& sp, VSet ambient, int level, int letter,
                          VSet at_level, VSet at_next, std::string* why) {
  VSet expected = down_atom(sp, ambient, letter, at_next);
  if (level == 0 && at_level == 0) {
    if (expected != 0) {
      if (why) *why = "level 0 marked empty but a member maps into level 1";
      return false;
    }
    return true;
  }
  if (expected != at_level) {
    if (why)
      *why = "completeness fails at level " + std::to_string(level) + ": expected " +
             sp.graph.set_string(expected) + ", stored " + sp.graph.set_string(at_level);
    return false;
  }
  return true;
}

}  // namespace detail

// Full validity check: every stored level is an atom of the right restricted
// algebra, the completeness recursion holds at every level, and for the
// periodic kind both conditions keep holding along the unfolded word (the
// range sets evolve until they cycle, so the check walks until the
// (phase, range) state repeats).
inline bool check_filter(const LabelledSpace& sp, const TightFilter& f, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  int b = static_cast<int>(f.base.size());
  int p = static_cast<int>(f.period.size());
  if (f.periodic) {
    if (p < 1) return fail("periodic filter needs a nonempty period");
    if (f.stored_levels() != b + p) return fail("periodic chain must store base+period levels");
  } else {
    if (p != 0) return fail("finite filter carries a period word");
    if (f.stored_levels() != b + 1) return fail("finite chain must store base+1 levels");
  }
  for (int l = 0; l < f.stored_levels(); ++l) {
    VSet C = f.chain[static_cast<size_t>(l)];
    if (C == 0) {
      if (l != 0) return fail("empty marker is only allowed at level 0");
      if (b == 0) return fail("level 0 cannot be empty when it is the top or wraps");
    } else if (!detail::is_family_atom(sp, C)) {
      return fail("level " + std::to_string(l) + " entry is not an atom of the family");
    }
  }
  VSet R = sp.graph.all_vertices();
  std::set<std::pair<int, VSet>> seen;
  for (int l = 0;; ++l) {
    if (!f.periodic && l == b) return true;
    if (f.periodic && l >= b) {
      auto key = std::make_pair((l - b) % p, R);
      if (!seen.insert(key).second) return true;
    }
    int a = f.letter_at(l);
    VSet next = f.atom_at(l + 1);
    VSet here = f.atom_at(l);
    VSet Rn = sp.graph.range(R, a);
    if (next == 0 || !subset(next, Rn))
      return fail("level " + std::to_string(l + 1) +
                  " entry does not sit inside the range of the word prefix");
    std::string step_why;
    if (!detail::level_step_ok(sp, R, l, a, here, next, &step_why)) return fail(step_why);
    R = Rn;
  }
}

inline void validate_filter(const LabelledSpace& sp, const TightFilter& f) {
  std::string why;
  if (!check_filter(sp, f, &why)) throw validation_error("invalid filter: " + why);
}

// Canonical representative: minimal period of the unfolded (letter, atom)
// tail, then the shortest base that still presents the same unfolding.
inline TightFilter canonical_filter(const TightFilter& f) {
  if (!f.periodic) return f;
  TightFilter g = f;
  int b = static_cast<int>(g.base.size());
  int p = static_cast<int>(g.period.size());
  for (int d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (int j = 0; j < p && ok; ++j)
      ok = g.period[static_cast<size_t>(j)] == g.period[static_cast<size_t>(j % d)] &&
           g.chain[static_cast<size_t>(b + j)] == g.chain[static_cast<size_t>(b + j % d)];
    if (ok) {
      g.period.resize(static_cast<size_t>(d));
      g.chain.resize(static_cast<size_t>(b + d));
      p = d;
      break;
    }
  }
  while (!g.base.empty()) {
    int letter = g.base.back();
    if (letter != g.period.back()) break;
    VSet here = g.chain[g.base.size() - 1];
    if (here == 0 || here != g.atom_at(static_cast<int>(g.base.size()) - 1 + p)) break;
    Word new_period;
    new_period.push_back(letter);
    new_period.insert(new_period.end(), g.period.begin(), g.period.end() - 1);
    std::vector<VSet> new_chain(g.chain.begin(), g.chain.begin() + static_cast<long>(g.base.size()) - 1);
    for (int j = 0; j < p; ++j)
      new_chain.push_back(g.atom_at(static_cast<int>(g.base.size()) - 1 + j));
    g.base.pop_back();
    g.period = std::move(new_period);
    g.chain = std::move(new_chain);
  }
  return g;
}

// Tightness.  Infinite-type filters in atom form are tight once valid.
// Finite-type filters are tight when every member of the top ultrafilter
// contains a nonzero member made of sinks (the infinite-letter alternative
// never fires on a finite graph).
inline bool is_tight(const LabelledSpace& sp, const TightFilter& f) {
  if (f.periodic) return true;
  VSet top = f.chain.back();
  if (top == 0) return false;
  VSet R = sp.graph.range(f.base);
  for (VSet m : sp.family.members()) {
    if (!subset(top, m) || !subset(m, R)) continue;
    if (sink_split(sp, m).snk == 0) return false;
  }
  return true;
}

// (beta, A, beta) belongs to the filter iff beta begins the word and the
// level-|beta| atom sits inside A.  The empty level-0 filter contains
// nothing at level 0.
inline bool filter_contains(const LabelledSpace& sp, const TightFilter& f, const Triple& e) {
  (void)sp;
  if (e.zero) return false;
  if (!e.is_idempotent()) throw validation_error("filter_contains: not an idempotent");
  if (!f.word_begins_with(e.alpha)) return false;
  VSet atom = f.atom_at(static_cast<int>(e.alpha.size()));
  return atom != 0 && subset(atom, e.A);
}

// V_{e : e_1..e_n} = V_e minus the union of the V_{e_i}.
struct BasicOpenSet {
  Triple e;
  std::vector<Triple> excluded;
};

inline bool basic_set_member(const LabelledSpace& sp, const BasicOpenSet& V,
                             const TightFilter& f) {
  if (!filter_contains(sp, f, V.e)) return false;
  for (const auto& x : V.excluded)
    if (filter_contains(sp, f, x)) return false;
  return true;
}

// All tight filters of bounded description: finite kind with |base| up to
// max_depth and periodic kind with |base|+|period| up to max_depth, each
// emitted once in canonical form.  Walks the level automaton whose states
// are (range of the word prefix, chain atom); a walk that revisits an atom
// closes into a periodic candidate, which is then validated on its own.
inline std::vector<TightFilter> enumerate_tight(const LabelledSpace& sp, int max_depth) {
  if (max_depth < 1) throw validation_error("enumerate_tight: depth must be at least 1");
  std::vector<TightFilter> finite_out;
  std::set<TightFilter> periodic_out;
  Word word;
  std::vector<VSet> hist;
  long long budget = 4'000'000;

  auto dfs = [&](auto&& self, int level, VSet R) -> void {
    if (--budget < 0) throw internal_error("enumerate_tight: state budget exceeded");
    VSet C = hist.back();
    if (C != 0 && subset(C, sp.graph.sinks())) {
      TightFilter f;
      f.base = word;
      f.chain = hist;
      finite_out.push_back(std::move(f));
    }
    for (int b = 0; b < level; ++b) {
      if (hist[static_cast<size_t>(b)] != C) continue;
      TightFilter f;
      f.periodic = true;
      f.base = Word(word.begin(), word.begin() + b);
      f.period = Word(word.begin() + b, word.end());
      f.chain = std::vector<VSet>(hist.begin(), hist.end() - 1);
      if (check_filter(sp, f)) periodic_out.insert(canonical_filter(f));
    }
    if (level == max_depth) return;
    for (int a = 0; a < sp.graph.num_letters(); ++a) {
      VSet Rn = sp.graph.range(R, a);
      if (Rn == 0) continue;
      for (VSet Cn : sp.family.atoms()) {
        if (!subset(Cn, Rn)) continue;
        VSet d = down_atom(sp, R, a, Cn);
        if (C == 0 ? d != 0 : d != C) continue;
        word.push_back(a);
        hist.push_back(Cn);
        self(self, level + 1, Rn);
        word.pop_back();
        hist.pop_back();
      }
    }
  };

  VSet all = sp.graph.all_vertices();
  for (VSet C : sp.family.atoms()) {
    hist.assign(1, C);
    dfs(dfs, 0, all);
  }
  hist.assign(1, 0);  // empty level-0 filter
  dfs(dfs, 0, all);

  std::vector<TightFilter> out = std::move(finite_out);
  out.insert(out.end(), periodic_out.begin(), periodic_out.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string filter_string(const LabelledSpace& sp, const TightFilter& f) {
  std::string out = f.periodic ? "periodic:" : "finite:";
  out += sp.graph.word_string(f.base);
  if (f.periodic) out += "|" + sp.graph.word_string(f.period);
  out += "@";
  for (size_t i = 0; i < f.chain.size(); ++i) {
    if (i) out += ";";
    out += f.chain[i] == 0 ? "-" : sp.graph.set_string(f.chain[i]);
  }
  return out;
}

}  // namespace llpa

#endif  // LLPA_FILTERS_HPP
