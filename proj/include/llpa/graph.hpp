#ifndef LLPA_GRAPH_HPP
#define LLPA_GRAPH_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "llpa/util.hpp"

namespace llpa {

// A finite directed graph with a surjective edge labelling.  Vertices and
// letters are interned to indices in declaration order; all set-valued
// computations run on bit masks over that order.
class LabelledGraph {
 public:
  struct Edge {
    int src;
    int dst;
    int letter;
  };

  LabelledGraph() = default;

  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& letter_names() const { return letter_names_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_letters() const { return static_cast<int>(letter_names_.size()); }

  VSet all_vertices() const { return all_; }
  VSet sinks() const { return sinks_; }

  int vertex_index(const std::string& name) const {
    auto it = vertex_ids_.find(name);
    return it == vertex_ids_.end() ? -1 : it->second;
  }
  int letter_index(const std::string& name) const {
    auto it = letter_ids_.find(name);
    return it == letter_ids_.end() ? -1 : it->second;
  }

  // r(A, a) for a single letter.
  VSet range(VSet A, int letter) const {
    VSet out = 0;
    VSet m = A;
    for (int v = 0; m; ++v, m >>= 1)
      if (m & 1) out |= step_[static_cast<size_t>(letter)][static_cast<size_t>(v)];
    return out;
  }

  // r(A, alpha); r(A, empty word) = A.
  VSet range(VSet A, const Word& alpha) const {
    VSet cur = A;
    for (int a : alpha) {
      if (cur == 0) return 0;
      cur = range(cur, a);
    }
    return cur;
  }

  // r(alpha) = r(E^0, alpha).
  VSet range(const Word& alpha) const { return range(all_, alpha); }

  // L(A E^1) = set of letters emitted from A.
  std::vector<int> letters_from(VSet A) const {
    std::vector<int> out;
    for (int a = 0; a < num_letters(); ++a)
      if (range(A, a) != 0) out.push_back(a);
    return out;
  }

  bool is_labelled_path(const Word& alpha) const { return range(alpha) != 0; }

  // All labelled paths of length <= max_len, including the empty word,
  // in shortlex order.
  std::vector<Word> enumerate_words(int max_len) const {
    std::vector<Word> out;
    std::vector<std::pair<Word, VSet>> frontier;
    out.push_back({});
    frontier.push_back({{}, all_});
    for (int len = 1; len <= max_len; ++len) {
      std::vector<std::pair<Word, VSet>> next;
      for (auto& [w, R] : frontier) {
        for (int a = 0; a < num_letters(); ++a) {
          VSet R2 = range(R, a);
          if (R2 == 0) continue;
          Word w2 = w;
          w2.push_back(a);
          out.push_back(w2);
          next.push_back({std::move(w2), R2});
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return out;
  }

  // Count of labelled paths of length <= max_len without enumerating them
  // (dynamic programming over the subset automaton).
  long long count_words(int max_len, long long cap) const {
    long long total = 1;
    std::map<VSet, long long> cur{{all_, 1}};
    for (int len = 1; len <= max_len; ++len) {
      std::map<VSet, long long> next;
      for (auto& [R, c] : cur)
        for (int a = 0; a < num_letters(); ++a) {
          VSet R2 = range(R, a);
          if (R2 != 0) next[R2] += c;
        }
      long long layer = 0;
      for (auto& [R, c] : next) layer += c;
      total += layer;
      if (total > cap) return total;
      if (next.empty()) break;
      cur = std::move(next);
    }
    return total;
  }

  std::string word_string(const Word& w) const {
    if (w.empty()) return "";
    std::string out;
    bool multi = false;
    for (const auto& n : letter_names_)
      if (n.size() != 1) multi = true;
    for (size_t i = 0; i < w.size(); ++i) {
      if (multi && i) out += ',';
      out += letter_names_[static_cast<size_t>(w[i])];
    }
    return out;
  }

  std::string set_string(VSet A) const {
    std::string out = "{";
    bool first = true;
    for (int v : bits_of(A)) {
      if (!first) out += ',';
      first = false;
      out += vertex_names_[static_cast<size_t>(v)];
    }
    return out + "}";
  }

  // Raw description, validated by make().
  struct Description {
    std::vector<std::string> vertices;
    std::vector<std::string> letters;  // optional; inferred from edges if empty
    std::vector<std::tuple<std::string, std::string, std::string>> edges;  // src, dst, letter
  };

  static LabelledGraph make(const Description& d) {
    LabelledGraph g;
    if (d.vertices.empty()) throw validation_error("graph has an empty vertex set");
    if (static_cast<int>(d.vertices.size()) > kMaxVertices)
      throw validation_error("too many vertices (limit " + std::to_string(kMaxVertices) + ")");
    for (const auto& v : d.vertices) {
      if (g.vertex_ids_.count(v)) throw validation_error("duplicate vertex '" + v + "'");
      g.vertex_ids_[v] = g.num_vertices();
      g.vertex_names_.push_back(v);
    }
    for (const auto& a : d.letters) {
      if (g.letter_ids_.count(a)) throw validation_error("duplicate letter '" + a + "'");
      g.letter_ids_[a] = g.num_letters();
      g.letter_names_.push_back(a);
    }
    std::vector<bool> used(d.letters.size(), false);
    for (const auto& [src, dst, letter] : d.edges) {
      int s = g.vertex_index(src);
      if (s < 0) throw validation_error("edge from undeclared vertex '" + src + "'");
      int r = g.vertex_index(dst);
      if (r < 0) throw validation_error("edge to undeclared vertex '" + dst + "'");
      int a = g.letter_index(letter);
      if (a < 0) {
        if (!d.letters.empty())
          throw validation_error("edge with undeclared letter '" + letter + "'");
        a = g.num_letters();
        g.letter_ids_[letter] = a;
        g.letter_names_.push_back(letter);
        used.push_back(false);
      }
      used[static_cast<size_t>(a)] = true;
      g.edges_.push_back({s, r, a});
    }
    for (size_t a = 0; a < used.size(); ++a)
      if (!used[a])
        throw validation_error("letter '" + g.letter_names_[a] +
                               "' is declared but labels no edge (labelling must be onto)");
    g.finish();
    return g;
  }

 private:
  void finish() {
    all_ = num_vertices() == kMaxVertices ? ~VSet{0} : bit(num_vertices()) - 1;
    step_.assign(static_cast<size_t>(num_letters()),
                 std::vector<VSet>(static_cast<size_t>(num_vertices()), 0));
    VSet emitters = 0;
    for (const auto& e : edges_) {
      step_[static_cast<size_t>(e.letter)][static_cast<size_t>(e.src)] |= bit(e.dst);
      emitters |= bit(e.src);
    }
    sinks_ = all_ & ~emitters;
  }

  std::vector<std::string> vertex_names_;
  std::vector<std::string> letter_names_;
  std::map<std::string, int> vertex_ids_;
  std::map<std::string, int> letter_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VSet>> step_;
  VSet all_ = 0;
  VSet sinks_ = 0;
};

}  // namespace llpa

#endif  // LLPA_GRAPH_HPP
