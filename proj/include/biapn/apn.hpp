#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "biapn/biproj.hpp"

namespace biapn {

// Value table of a function on GF(2)^n, n = 2m. The index packs the input as
// x + y * 2^m and each value packs the output the same way.
struct TruthTable {
  unsigned n = 0;
  std::uint64_t poly = 0;  // defining polynomial of the half-size field
  std::vector<std::uint32_t> v;

  unsigned half() const { return n / 2; }
};

// Materializes the pair; throws TooLarge for n > 24.
TruthTable to_truth_table(const BiprojectivePair& p);

// Differential spectrum: for every nonzero direction a and every output b,
// the number of x with F(x) + F(x+a) = b; `counts` maps solution count to
// how many (a, b) cells have it. APN means no cell exceeds 2.
struct DiffSpectrum {
  std::map<std::uint32_t, std::uint64_t> counts;
  std::uint32_t max_count = 0;
  bool apn = false;
};

DiffSpectrum apn_naive(const TruthTable& t);

// Rank test over the 2^m + 1 direction systems; each must have a kernel of
// F_2-dimension exactly 1.
bool apn_projective(const BiprojectivePair& p, unsigned threads = 1);

// Directions whose kernel dimension differs from 1, up to `cap` entries.
std::vector<P1Point> projective_failures(const BiprojectivePair& p, std::size_t cap);

void write_truth_table(std::ostream& os, const TruthTable& t);
TruthTable read_truth_table(std::istream& is);
void save_truth_table(const std::string& path, const TruthTable& t);
TruthTable load_truth_table(const std::string& path);

}  // namespace biapn
