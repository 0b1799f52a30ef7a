#pragma once

#include <cstdint>
#include <map>

#include "biapn/apn.hpp"
#include "biapn/field.hpp"

namespace biapn {

// Bilinear pairing <p, s> = Tr(p1 s1) + Tr(p2 s2) on packed n-bit values.
int trace_pair(const FieldCtx& ctx, std::uint32_t p, std::uint32_t s);

// Index j of the additive character x -> (-1)^<a, x> in Hadamard order:
// bit j of the result is <a, e_j>.
std::uint32_t dual_index(const FieldCtx& ctx, std::uint32_t a, unsigned n);

// Single coefficient sum_x (-1)^(<b, F(x)> + <a, x>).
std::int64_t walsh_coefficient(const FieldCtx& ctx, const TruthTable& t,
                               std::uint32_t b, std::uint32_t a);

// Multiset {|W(b, a)| : b != 0, a} as absolute value -> multiplicity.
struct WalshSpectrum {
  unsigned n = 0;
  std::map<std::uint64_t, std::uint64_t> abs_counts;
};

WalshSpectrum extended_walsh_spectrum(const FieldCtx& ctx, const TruthTable& t,
                                      unsigned threads = 1);

// Exactly the value distribution {0, 2^(n/2), 2^((n+2)/2)} with multiplicities
// (2^n-1) 2^(n-2), (2/3)(2^n-1) 2^n and (1/3)(2^n-1) 2^(n-2).
bool is_classical(const WalshSpectrum& w);

struct ImageProfile {
  std::map<std::uint32_t, std::uint64_t> preimage_hist;  // multiplicity -> #values
  std::uint64_t zero_preimages = 0;                      // #x with F(x) = 0
  bool three_to_one = false;  // 0 once, every other value 0 or 3 times
};

ImageProfile image_profile(const TruthTable& t);

}  // namespace biapn
