#ifndef LLPA_UTIL_HPP
#define LLPA_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace llpa {

// Vertex sets are bit masks over the declared vertex order, letters and
// vertices are indices into the declaring tables.  Everything downstream
// (canonical forms, reports) inherits determinism from these orderings.
using VSet = std::uint64_t;
using Word = std::vector<int>;

constexpr int kMaxVertices = 64;

inline int popcount(VSet m) {
  int c = 0;
  while (m) {
    m &= m - 1;
    ++c;
  }
  return c;
}

inline bool subset(VSet a, VSet b) { return (a & ~b) == 0; }

inline VSet bit(int i) { return VSet{1} << i; }

// Iterate set bits: for (int v : bits_of(m)) ...
inline std::vector<int> bits_of(VSet m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

inline Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline bool word_prefix(const Word& pre, const Word& w) {
  if (pre.size() > w.size()) return false;
  for (size_t i = 0; i < pre.size(); ++i)
    if (pre[i] != w[i]) return false;
  return true;
}

inline Word word_suffix_from(const Word& w, size_t k) {
  return Word(w.begin() + static_cast<long>(k), w.end());
}

// Words compare by the declared alphabet order, sequence-lexicographically.
inline bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Errors surfaced to the CLI.  parse_error -> exit 2, validation_error ->
// exit 3, oracle_error -> exit 4 (two independent procedures disagreed,
// which is always a bug, never an input problem).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};
struct oracle_error : std::runtime_error {
  explicit oracle_error(const std::string& m) : std::runtime_error(m) {}
};
struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& m) : std::runtime_error(m) {}
};

// Tiny deterministic generator (splitmix64).  Test fixtures and the CLI
// selftest must produce identical streams on every platform, which the
// standard <random> distributions do not guarantee.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [0, n); n >= 1.
  int next(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  bool coin() { return (next_u64() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace llpa

#endif  // LLPA_UTIL_HPP
