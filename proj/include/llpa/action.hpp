#ifndef LLPA_ACTION_HPP
#define LLPA_ACTION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "llpa/filters.hpp"

namespace llpa {

// Reduced word in the free group on the alphabet.  Entries are
// +(letter+1) for a letter and -(letter+1) for its inverse.
struct GroupWord {
  std::vector<int> syms;

  bool identity() const { return syms.empty(); }

  friend bool operator==(const GroupWord& a, const GroupWord& b) { return a.syms == b.syms; }
  friend bool operator!=(const GroupWord& a, const GroupWord& b) { return !(a == b); }
};

inline GroupWord reduce_word(const std::vector<int>& raw) {
  GroupWord g;
  for (int s : raw) {
    if (s == 0) throw validation_error("group word: zero symbol");
    if (!g.syms.empty() && g.syms.back() == -s)
      g.syms.pop_back();
    else
      g.syms.push_back(s);
  }
  return g;
}

inline GroupWord group_inverse(const GroupWord& g) {
  GroupWord h;
  h.syms.assign(g.syms.rbegin(), g.syms.rend());
  for (int& s : h.syms) s = -s;
  return h;
}

inline GroupWord group_mul(const GroupWord& a, const GroupWord& b) {
  std::vector<int> raw = a.syms;
  raw.insert(raw.end(), b.syms.begin(), b.syms.end());
  return reduce_word(raw);
}

inline GroupWord group_of_positive(const Word& w) {
  GroupWord g;
  for (int a : w) g.syms.push_back(a + 1);
  return g;
}

// t = alpha beta^{-1} with a positive prefix and an inverse suffix.
// Group elements without this shape act with empty domain.
struct PosNegSplit {
  Word alpha;
  Word beta;
};

inline std::optional<PosNegSplit> pos_neg_split(const GroupWord& g) {
  PosNegSplit out;
  size_t i = 0;
  while (i < g.syms.size() && g.syms[i] > 0) out.alpha.push_back(g.syms[i++] - 1);
  std::vector<int> neg;
  while (i < g.syms.size() && g.syms[i] < 0) neg.push_back(-g.syms[i++] - 1);
  if (i != g.syms.size()) return std::nullopt;
  out.beta.assign(neg.rbegin(), neg.rend());
  return out;
}

// Domain V_t of the partial homeomorphism phi_t on the tight spectrum.
struct DomainSet {
  enum Kind { whole, empty, basic } kind = empty;
  BasicOpenSet set;  // meaningful for kind == basic
};

inline DomainSet domain_set(const LabelledSpace& sp, const GroupWord& t) {
  if (t.identity()) return {DomainSet::whole, {}};
  auto split = pos_neg_split(t);
  if (!split) return {DomainSet::empty, {}};
  VSet A = sp.graph.range(split->alpha) & sp.graph.range(split->beta);
  if (A == 0) return {DomainSet::empty, {}};
  DomainSet d;
  d.kind = DomainSet::basic;
  d.set.e = Triple::make(sp, split->alpha, A, split->alpha);
  return d;
}

inline bool in_domain(const LabelledSpace& sp, const GroupWord& t, const TightFilter& f) {
  DomainSet d = domain_set(sp, t);
  if (d.kind == DomainSet::whole) return true;
  if (d.kind == DomainSet::empty) return false;
  return filter_contains(sp, f, d.set.e);
}

// phi_t for t = alpha beta^{-1}: strip the prefix beta from the filter's
// word, glue alpha on, and transport the chain.  The transported atom at
// level |alpha|+n is the old level-(|beta|+n) atom cut down to the range of
// the new word prefix; levels below |alpha| are rebuilt by the downward
// recursion.  The result is re-validated: the construction is total on the
// domain, so a failure here is a bug, not an input condition.
inline TightFilter apply_action(const LabelledSpace& sp, const GroupWord& t,
                                const TightFilter& xi) {
  if (t.identity()) return canonical_filter(xi);
  if (!in_domain(sp, group_inverse(t), xi))
    throw validation_error("apply_action: filter is outside the domain of the group element");
  auto split = pos_neg_split(t);
  const Word& alpha = split->alpha;
  const Word& beta = split->beta;
  int blen = static_cast<int>(beta.size());
  int alen = static_cast<int>(alpha.size());

  TightFilter out;
  std::vector<VSet> upper;  // atoms at levels |alpha| .. |alpha|+K
  Word tail;                // letters of the old word after beta

  VSet Rnew = sp.graph.range(alpha);
  auto transported = [&](int n) { return xi.atom_at(blen + n); };

  if (!xi.periodic) {
    int dlen = static_cast<int>(xi.base.size()) - blen;
    for (int n = 0; n < dlen; ++n) tail.push_back(xi.base[static_cast<size_t>(blen + n)]);
    upper.push_back(transported(0) & Rnew);
    for (int n = 0; n < dlen; ++n) {
      Rnew = sp.graph.range(Rnew, tail[static_cast<size_t>(n)]);
      upper.push_back(transported(n + 1) & Rnew);
    }
    out.base = word_concat(alpha, tail);
  } else {
    int p = static_cast<int>(xi.period.size());
    int xb = static_cast<int>(xi.base.size());
    int settle = std::max(0, xb - blen);
    std::map<std::pair<int, VSet>, int> seen;
    int n = 0;
    int cycle_start = -1;
    for (;;) {
      upper.push_back(transported(n) & Rnew);
      if (n >= settle) {
        auto key = std::make_pair((blen + n - xb) % p, Rnew);
        auto it = seen.find(key);
        if (it != seen.end()) {
          cycle_start = it->second;
          break;
        }
        seen.emplace(key, n);
      }
      int a = xi.letter_at(blen + n);
      tail.push_back(a);
      Rnew = sp.graph.range(Rnew, a);
      ++n;
    }
    // levels |alpha|..|alpha|+n-1 are settled; the tail repeats from cycle_start.
    out.periodic = true;
    out.base = word_concat(alpha, Word(tail.begin(), tail.begin() + cycle_start));
    out.period = Word(tail.begin() + cycle_start, tail.end());
    upper.resize(static_cast<size_t>(n));  // drop the repeated state's atom
  }

  // Downward recursion for levels below |alpha|.
  std::vector<VSet> lower(static_cast<size_t>(alen));
  VSet next = upper.front();
  if (next == 0) throw internal_error("apply_action: transported atom vanished");
  for (int l = alen - 1; l >= 0; --l) {
    VSet ambient = l == 0 ? sp.graph.all_vertices() : sp.graph.range(Word(alpha.begin(), alpha.begin() + l));
    VSet d = down_atom(sp, ambient, alpha[static_cast<size_t>(l)], next);
    if (d == 0 && l != 0) throw internal_error("apply_action: chain breaks below the prefix");
    lower[static_cast<size_t>(l)] = d;
    next = d;
  }
  out.chain = std::move(lower);
  out.chain.insert(out.chain.end(), upper.begin(), upper.end());

  validate_filter(sp, out);
  TightFilter res = canonical_filter(out);
  if (!is_tight(sp, res)) throw internal_error("apply_action: image is not tight");
  return res;
}

// A finite Stone-space partial action: disjoint range sets U_a and a
// bijection rho_a from U_{a^{-1}} onto U_a per letter.
struct StonePartialAction {
  std::vector<std::string> point_names;
  std::vector<std::string> letter_names;
  // maps[a] lists (source, target): rho_a(source) = target.
  std::vector<std::vector<std::pair<int, int>>> maps;

  int num_points() const { return static_cast<int>(point_names.size()); }

  void validate() const {
    std::vector<int> seen_target(point_names.size(), -1);
    for (size_t a = 0; a < maps.size(); ++a) {
      std::vector<bool> src(point_names.size(), false);
      for (auto [s, d] : maps[a]) {
        if (s < 0 || s >= num_points() || d < 0 || d >= num_points())
          throw validation_error("stone action: point out of range");
        if (src[static_cast<size_t>(s)])
          throw validation_error("stone action: map '" + letter_names[a] + "' is not injective");
        src[static_cast<size_t>(s)] = true;
        if (seen_target[static_cast<size_t>(d)] != -1)
          throw validation_error(
              seen_target[static_cast<size_t>(d)] == static_cast<int>(a)
                  ? "stone action: map '" + letter_names[a] + "' is not a bijection"
                  : "stone action: range sets of two letters meet (orthogonality)");
        seen_target[static_cast<size_t>(d)] = static_cast<int>(a);
      }
    }
  }
};

struct StoneRealization {
  LabelledSpace space;
  std::vector<TightFilter> point_filter;  // f : X -> tight spectrum
};

// The labelled space of a semi-saturated orthogonal Stone action: one vertex
// per point, an edge labelled a from each point of U_a to its preimage, and
// the full power set as accommodating family.
inline StoneRealization build_from_stone_action(const StonePartialAction& act) {
  act.validate();
  LabelledGraph::Description d;
  d.vertices = act.point_names;
  d.letters = act.letter_names;
  for (size_t a = 0; a < act.maps.size(); ++a)
    for (auto [s, t] : act.maps[a])
      d.edges.push_back({act.point_names[static_cast<size_t>(t)],
                         act.point_names[static_cast<size_t>(s)], act.letter_names[a]});
  StoneRealization out;
  out.space.graph = LabelledGraph::make(d);
  std::vector<VSet> all_subsets;
  for (VSet m = 0; m < (VSet{1} << act.num_points()); ++m) all_subsets.push_back(m);
  out.space.family = SetFamily::from_members(std::move(all_subsets));
  if (!check_left_resolving(out.space) || !check_normal(out.space))
    throw internal_error("stone action: realization is not a normal left-resolving space");

  // rho_{a^{-1}} as a point map, and the emitted letter per point.
  std::vector<int> next_point(act.point_names.size(), -1);
  std::vector<int> emitted(act.point_names.size(), -1);
  for (size_t a = 0; a < act.maps.size(); ++a)
    for (auto [s, t] : act.maps[a]) {
      next_point[static_cast<size_t>(t)] = s;
      emitted[static_cast<size_t>(t)] = static_cast<int>(a);
    }

  for (int x = 0; x < act.num_points(); ++x) {
    Word letters;
    std::vector<int> orbit{x};
    std::vector<int> pos(act.point_names.size(), -1);
    pos[static_cast<size_t>(x)] = 0;
    TightFilter f;
    int cur = x;
    for (;;) {
      if (emitted[static_cast<size_t>(cur)] < 0) {  // sink point: finite word
        f.base = letters;
        break;
      }
      letters.push_back(emitted[static_cast<size_t>(cur)]);
      cur = next_point[static_cast<size_t>(cur)];
      if (pos[static_cast<size_t>(cur)] >= 0) {  // orbit closed: eventually periodic
        int k = pos[static_cast<size_t>(cur)];
        f.periodic = true;
        f.base = Word(letters.begin(), letters.begin() + k);
        f.period = Word(letters.begin() + k, letters.end());
        break;
      }
      pos[static_cast<size_t>(cur)] = static_cast<int>(orbit.size());
      orbit.push_back(cur);
    }
    for (int pt : orbit) f.chain.push_back(bit(pt));
    validate_filter(out.space, f);
    if (!is_tight(out.space, f)) throw internal_error("stone action: point filter is not tight");
    out.point_filter.push_back(canonical_filter(f));
  }
  return out;
}

// f must be a bijection onto the tight spectrum and intertwine rho with the
// spectrum action.  Returns false with a witness description on failure.
inline bool stone_equivariance_check(const StonePartialAction& act, const LabelledSpace& sp,
                                     const std::vector<TightFilter>& f, std::string* witness = nullptr) {
  auto fail = [&](const std::string& m) {
    if (witness) *witness = m;
    return false;
  };
  std::set<TightFilter> image(f.begin(), f.end());
  if (image.size() != f.size()) return fail("f is not injective");
  auto spectrum = enumerate_tight(sp, act.num_points() + 1);
  std::set<TightFilter> full(spectrum.begin(), spectrum.end());
  if (image != full) return fail("f is not onto the enumerated tight spectrum");
  for (size_t a = 0; a < act.maps.size(); ++a)
    for (auto [s, t] : act.maps[a]) {
      GroupWord g;
      g.syms.push_back(-(static_cast<int>(a) + 1));
      TightFilter lhs = f[static_cast<size_t>(s)];
      TightFilter rhs = apply_action(sp, g, f[static_cast<size_t>(t)]);
      if (lhs != rhs)
        return fail("f(rho_{" + act.letter_names[a] + "^-1}(" + act.point_names[static_cast<size_t>(t)] +
                    ")) differs from the spectrum action");
    }
  return true;
}

}  // namespace llpa

#endif  // LLPA_ACTION_HPP
