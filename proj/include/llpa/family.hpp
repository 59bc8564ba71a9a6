#ifndef LLPA_FAMILY_HPP
#define LLPA_FAMILY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "llpa/graph.hpp"
#include "llpa/util.hpp"

namespace llpa {

// A finite family of vertex sets containing the empty set.  Families built
// by accommodating_closure are closed under union, intersection, relative
// complement and relative ranges; tests may construct smaller families
// directly to probe the degenerate cases.
class SetFamily {
 public:
  SetFamily() { members_ = {0}; }

  static SetFamily from_members(std::vector<VSet> ms) {
    SetFamily f;
    ms.push_back(0);
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    f.members_ = std::move(ms);
    f.recompute_atoms();
    return f;
  }

  const std::vector<VSet>& members() const { return members_; }
  const std::vector<VSet>& atoms() const { return atoms_; }

  bool contains(VSet A) const {
    return std::binary_search(members_.begin(), members_.end(), A);
  }

  // Union of all members; a member itself whenever the family is closed
  // under unions.
  VSet top() const {
    VSet t = 0;
    for (VSet m : members_) t |= m;
    return t;
  }

  bool has_top() const { return contains(top()); }

  // Pairwise-disjoint minimal nonzero members whose union is A.
  std::vector<VSet> atoms_below(VSet A) const {
    if (!contains(A)) throw validation_error("atoms_below: set is not a member");
    std::vector<VSet> out;
    for (VSet t : atoms_)
      if (subset(t, A)) out.push_back(t);
    return out;
  }

  bool union_closed() const {
    for (VSet a : members_)
      for (VSet b : members_)
        if (!contains(a | b)) return false;
    return true;
  }

  bool intersection_closed() const {
    for (VSet a : members_)
      for (VSet b : members_)
        if (!contains(a & b)) return false;
    return true;
  }

  bool complement_closed() const {
    for (VSet a : members_)
      for (VSet b : members_)
        if (!contains(a & ~b)) return false;
    return true;
  }

  // {A in fam | A subset of R}.
  SetFamily restrict_to(VSet R) const {
    std::vector<VSet> ms;
    for (VSet m : members_)
      if (subset(m, R)) ms.push_back(m);
    return from_members(std::move(ms));
  }

 private:
  void recompute_atoms() {
    atoms_.clear();
    for (VSet m : members_) {
      if (m == 0) continue;
      bool minimal = true;
      for (VSet other : members_) {
        if (other == 0 || other == m) continue;
        if (subset(other, m)) {
          minimal = false;
          break;
        }
      }
      if (minimal) atoms_.push_back(m);
    }
  }

  std::vector<VSet> members_;  // sorted, contains 0
  std::vector<VSet> atoms_;
};

// Least family containing the seeds and every r(a), closed under union,
// intersection, relative complement and A -> r(A, a).  Terminates because
// the power set is finite.
inline SetFamily accommodating_closure(const LabelledGraph& g, const std::vector<VSet>& seeds) {
  std::set<VSet> have{0};
  std::vector<VSet> work;
  auto add = [&](VSet m) {
    if (have.insert(m).second) work.push_back(m);
  };
  for (VSet s : seeds) add(s);
  for (int a = 0; a < g.num_letters(); ++a) add(g.range(g.all_vertices(), a));
  // Worklist pass for the unary generator, then binary closure rescans.
  bool changed = true;
  while (changed) {
    changed = false;
    while (!work.empty()) {
      VSet m = work.back();
      work.pop_back();
      for (int a = 0; a < g.num_letters(); ++a) add(g.range(m, a));
    }
    std::vector<VSet> snapshot(have.begin(), have.end());
    for (VSet a : snapshot)
      for (VSet b : snapshot) {
        add(a | b);
        add(a & b);
        add(a & ~b);
      }
    changed = !work.empty();
  }
  return SetFamily::from_members(std::vector<VSet>(have.begin(), have.end()));
}

// Lemma-style disjointification: pairwise disjoint members C_1..C_m with the
// same union as the input, each input a union of some C_i.  The coverage map
// lists, per input set, the indices of the C_i composing it.
struct Disjointification {
  std::vector<VSet> parts;
  std::vector<std::vector<size_t>> coverage;
};

// B_alpha = {A in fam | A subset of r(alpha)}; the trivial family {0} when
// alpha is not a labelled path.
inline SetFamily restrict_to_word(const SetFamily& fam, const LabelledGraph& g,
                                  const Word& alpha) {
  return fam.restrict_to(g.range(alpha));
}

inline Disjointification disjointify(const SetFamily& fam, const std::vector<VSet>& sets) {
  for (VSet s : sets)
    if (!fam.contains(s)) throw validation_error("disjointify: input is not a member");
  Disjointification out;
  std::map<VSet, size_t> index;
  for (VSet s : sets) {
    out.coverage.emplace_back();
    for (VSet t : fam.atoms_below(s)) {
      auto it = index.find(t);
      if (it == index.end()) {
        it = index.emplace(t, out.parts.size()).first;
        out.parts.push_back(t);
      }
      out.coverage.back().push_back(it->second);
    }
  }
  return out;
}

}  // namespace llpa

#endif  // LLPA_FAMILY_HPP
