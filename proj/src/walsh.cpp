#include "biapn/walsh.hpp"

#include <cstdlib>
#include <mutex>
#include <vector>

#include "biapn/errors.hpp"
#include "biapn/util.hpp"

namespace biapn {

int trace_pair(const FieldCtx& ctx, std::uint32_t p, std::uint32_t s) {
  unsigned m = ctx.m();
  std::uint32_t mask = (1u << m) - 1;
  return ctx.trace(ctx.mul(p & mask, s & mask)) ^
         ctx.trace(ctx.mul(p >> m, s >> m));
}

std::uint32_t dual_index(const FieldCtx& ctx, std::uint32_t a, unsigned n) {
  std::uint32_t idx = 0;
  for (unsigned j = 0; j < n; ++j)
    if (trace_pair(ctx, a, 1u << j)) idx |= 1u << j;
  return idx;
}

std::int64_t walsh_coefficient(const FieldCtx& ctx, const TruthTable& t,
                               std::uint32_t b, std::uint32_t a) {
  std::int64_t acc = 0;
  for (std::uint64_t x = 0; x < t.v.size(); ++x)
    acc += (trace_pair(ctx, b, t.v[x]) ^ trace_pair(ctx, a, std::uint32_t(x))) ? -1 : 1;
  return acc;
}

namespace {

void fwht(std::vector<std::int32_t>& f) {
  for (std::size_t h = 1; h < f.size(); h <<= 1)
    for (std::size_t i = 0; i < f.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        std::int32_t u = f[j], v = f[j + h];
        f[j] = u + v;
        f[j + h] = u - v;
      }
}

}  // namespace

WalshSpectrum extended_walsh_spectrum(const FieldCtx& ctx, const TruthTable& t,
                                      unsigned threads) {
  if (t.n > 18) throw TooLarge("extended_walsh_spectrum: n > 18");
  WalshSpectrum ws;
  ws.n = t.n;
  std::uint64_t size = 1ull << t.n;
  std::mutex merge;
  parallel_for(size - 1, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::map<std::uint64_t, std::uint64_t> local;
    std::vector<std::int32_t> f(size);
    for (std::uint64_t bi = lo; bi < hi; ++bi) {
      std::uint32_t b = std::uint32_t(bi + 1);
      for (std::uint64_t x = 0; x < size; ++x)
        f[x] = trace_pair(ctx, b, t.v[x]) ? -1 : 1;
      fwht(f);
      for (std::uint64_t x = 0; x < size; ++x)
        ++local[std::uint64_t(std::abs(f[x]))];
    }
    std::lock_guard<std::mutex> lock(merge);
    for (auto& [k, v] : local) ws.abs_counts[k] += v;
  });
  return ws;
}

bool is_classical(const WalshSpectrum& w) {
  if (w.n % 2 || w.n < 2) return false;
  std::uint64_t b = (1ull << w.n) - 1;  // 2^n - 1
  std::map<std::uint64_t, std::uint64_t> expect{
      {0, b << (w.n - 2)},
      {1ull << (w.n / 2), 2 * (b << w.n) / 3},
      {1ull << (w.n / 2 + 1), (b << (w.n - 2)) / 3}};
  return w.abs_counts == expect;
}

ImageProfile image_profile(const TruthTable& t) {
  std::vector<std::uint32_t> mult(t.v.size(), 0);
  for (std::uint32_t v : t.v) ++mult[v];
  ImageProfile p;
  p.zero_preimages = mult[0];
  for (std::uint64_t v = 0; v < mult.size(); ++v)
    if (mult[v]) ++p.preimage_hist[mult[v]];
  p.three_to_one = mult[0] == 1 && t.v[0] == 0;
  if (p.three_to_one)
    for (std::uint64_t v = 1; v < mult.size(); ++v)
      if (mult[v] != 0 && mult[v] != 3) {
        p.three_to_one = false;
        break;
      }
  return p;
}

}  // namespace biapn
