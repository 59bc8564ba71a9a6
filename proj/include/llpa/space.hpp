#ifndef LLPA_SPACE_HPP
#define LLPA_SPACE_HPP

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "llpa/family.hpp"
#include "llpa/graph.hpp"

namespace llpa {

// A labelled space: a labelled graph together with an accommodating family
// of vertex sets.  All higher modules take one of these by reference.
struct LabelledSpace {
  LabelledGraph graph;
  SetFamily family;
};

// Witness (A, B, a) with r(A&B, a) != r(A,a) & r(B,a).
struct WlrCounterexample {
  VSet A;
  VSet B;
  int letter;
};

// The letter-level check decides the full condition: relative ranges compose
// letter by letter and members stay members, so a failure at some word
// shows up at its first offending letter.
inline std::optional<WlrCounterexample> weakly_left_resolving_counterexample(
    const LabelledSpace& sp) {
  const auto& ms = sp.family.members();
  for (VSet A : ms)
    for (VSet B : ms)
      for (int a = 0; a < sp.graph.num_letters(); ++a)
        if (sp.graph.range(A & B, a) != (sp.graph.range(A, a) & sp.graph.range(B, a)))
          return WlrCounterexample{A, B, a};
  return std::nullopt;
}

inline bool check_weakly_left_resolving(const LabelledSpace& sp) {
  return !weakly_left_resolving_counterexample(sp).has_value();
}

inline bool check_normal(const LabelledSpace& sp) {
  return check_weakly_left_resolving(sp) && sp.family.complement_closed();
}

// No vertex receives two equally-labelled edges.
inline bool check_left_resolving(const LabelledSpace& sp) {
  std::set<std::pair<int, int>> seen;  // (dst, letter)
  for (const auto& e : sp.graph.edges())
    if (!seen.insert({e.dst, e.letter}).second) return false;
  return true;
}

// Always true on finite graphs; reported for interface completeness.
inline bool check_label_finite(const LabelledSpace&) { return true; }

// A_snk = union of all members inside A & sinks, A_reg = A \ A_snk.
// A_reg is regular or empty: any member inside A_reg & sinks would already
// have been absorbed into A_snk.
struct SinkSplit {
  VSet snk;
  VSet reg;
};

inline SinkSplit sink_split(const LabelledSpace& sp, VSet A) {
  if (!sp.family.contains(A)) throw validation_error("sink_split: set is not a member");
  VSet target = A & sp.graph.sinks();
  VSet snk = 0;
  for (VSet m : sp.family.members())
    if (subset(m, target)) snk |= m;
  return {snk, A & ~snk};
}

// Nonzero member all of whose nonzero sub-members emit at least one letter.
inline bool is_regular(const LabelledSpace& sp, VSet A) {
  if (!sp.family.contains(A)) throw validation_error("is_regular: set is not a member");
  if (A == 0) return false;
  return sink_split(sp, A).snk == 0;
}

inline std::vector<VSet> regular_sets(const LabelledSpace& sp) {
  std::vector<VSet> out;
  for (VSet m : sp.family.members())
    if (m != 0 && is_regular(sp, m)) out.push_back(m);
  return out;
}

// Least subfamily containing the seeds, closed under relative ranges,
// unions and sub-members, and saturated at regular sets.  Computed as a
// single joint fixed point.
inline std::vector<VSet> hereditary_saturated_closure(const LabelledSpace& sp,
                                                      const std::vector<VSet>& seeds) {
  for (VSet s : seeds)
    if (!sp.family.contains(s))
      throw validation_error("hereditary_saturated_closure: seed is not a member");
  std::set<VSet> H{0};
  for (VSet s : seeds) H.insert(s);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VSet> snapshot(H.begin(), H.end());
    for (VSet A : snapshot)
      for (int a = 0; a < sp.graph.num_letters(); ++a)
        changed |= H.insert(sp.graph.range(A, a)).second;
    for (VSet A : snapshot)
      for (VSet B : snapshot)
        if (sp.family.contains(A | B)) changed |= H.insert(A | B).second;
    for (VSet A : snapshot)
      for (VSet B : sp.family.members())
        if (subset(B, A)) changed |= H.insert(B).second;
    for (VSet A : sp.family.members()) {
      if (A == 0 || H.count(A) || !is_regular(sp, A)) continue;
      bool all_in = true;
      for (int a = 0; a < sp.graph.num_letters() && all_in; ++a)
        all_in = H.count(sp.graph.range(A, a)) != 0;
      if (all_in) {
        H.insert(A);
        changed = true;
      }
    }
  }
  return std::vector<VSet>(H.begin(), H.end());
}

}  // namespace llpa

#endif  // LLPA_SPACE_HPP
