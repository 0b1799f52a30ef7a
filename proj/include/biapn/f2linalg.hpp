#pragma once

#include <cstdint>
#include <vector>

namespace biapn {

// Dense matrix over F_2, rows packed into 64-bit words.
struct F2Matrix {
  unsigned rows = 0, cols = 0, wpr = 0;
  std::vector<std::uint64_t> w;

  F2Matrix() = default;
  F2Matrix(unsigned r, unsigned c)
      : rows(r), cols(c), wpr(c ? (c + 63) / 64 : 1), w(std::size_t(r) * wpr, 0) {}

  std::uint64_t* row(unsigned i) { return w.data() + std::size_t(i) * wpr; }
  const std::uint64_t* row(unsigned i) const { return w.data() + std::size_t(i) * wpr; }
  bool get(unsigned i, unsigned j) const { return row(i)[j >> 6] >> (j & 63) & 1; }
  void set(unsigned i, unsigned j, bool v) {
    std::uint64_t mask = 1ull << (j & 63);
    if (v)
      row(i)[j >> 6] |= mask;
    else
      row(i)[j >> 6] &= ~mask;
  }
};

unsigned rank_f2(F2Matrix a);  // by value: elimination scratch
// Dimension of {x : A x = 0} = cols - rank.
unsigned kernel_dim_f2(const F2Matrix& a);

// Rank of rows given as single words (cols <= 64). Destroys `rows`.
unsigned rank64(std::vector<std::uint64_t>& rows);

// Small affine system over at most 64 unknowns: each row is (lhs mask, rhs bit).
// solve() produces one particular solution and a kernel basis, or reports the
// system inconsistent.
struct F2System64 {
  unsigned nvars = 0;
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint8_t> rhs;

  explicit F2System64(unsigned vars) : nvars(vars) {}
  void add(std::uint64_t l, bool r) {
    lhs.push_back(l);
    rhs.push_back(r ? 1 : 0);
  }
  bool solve(std::uint64_t& particular,
             std::vector<std::uint64_t>& kernel_basis) const;
};

}  // namespace biapn
