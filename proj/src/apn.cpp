#include "biapn/apn.hpp"

#include <atomic>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "biapn/errors.hpp"
#include "biapn/util.hpp"

namespace biapn {

TruthTable to_truth_table(const BiprojectivePair& p) {
  unsigned m = p.m(), n = 2 * m;
  if (n > 24) throw TooLarge("to_truth_table: n > 24");
  TruthTable t;
  t.n = n;
  t.poly = p.ctx->poly();
  t.v.resize(1ull << n);
  std::uint64_t card = p.ctx->card();
  for (std::uint64_t y = 0; y < card; ++y)
    for (std::uint64_t x = 0; x < card; ++x) {
      ProductElement e = p.evaluate(Fe(x), Fe(y));
      t.v[(y << m) | x] = e.x | (std::uint32_t(e.y) << m);
    }
  return t;
}

DiffSpectrum apn_naive(const TruthTable& t) {
  if (t.n > 20) throw TooLarge("apn_naive: n > 20");
  std::uint64_t size = 1ull << t.n;
  DiffSpectrum s;
  std::vector<std::uint32_t> cnt(size);
  for (std::uint64_t a = 1; a < size; ++a) {
    std::memset(cnt.data(), 0, size * sizeof(std::uint32_t));
    for (std::uint64_t x = 0; x < size; ++x) ++cnt[t.v[x] ^ t.v[x ^ a]];
    for (std::uint64_t b = 0; b < size; ++b) {
      ++s.counts[cnt[b]];
      if (cnt[b] > s.max_count) s.max_count = cnt[b];
    }
  }
  s.apn = s.max_count <= 2;
  return s;
}

bool apn_projective(const BiprojectivePair& p, unsigned threads) {
  auto pts = p1_points(*p.ctx);
  std::atomic<bool> ok{true};
  parallel_for(pts.size(), threads, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi && ok.load(std::memory_order_relaxed); ++i)
      if (build_delta_system(p, pts[i]).kernel_dim() != 1)
        ok.store(false, std::memory_order_relaxed);
  });
  return ok.load();
}

std::vector<P1Point> projective_failures(const BiprojectivePair& p, std::size_t cap) {
  std::vector<P1Point> bad;
  for (const P1Point& u : p1_points(*p.ctx)) {
    if (build_delta_system(p, u).kernel_dim() != 1) {
      bad.push_back(u);
      if (bad.size() >= cap) break;
    }
  }
  return bad;
}

// Binary layout: magic "BTT1", u32 n, u64 poly, then 2^n values in
// little-endian ceil(n/8)-byte cells.
static constexpr char kMagic[4] = {'B', 'T', 'T', '1'};

void write_truth_table(std::ostream& os, const TruthTable& t) {
  os.write(kMagic, 4);
  std::uint32_t n = t.n;
  os.write(reinterpret_cast<const char*>(&n), 4);
  os.write(reinterpret_cast<const char*>(&t.poly), 8);
  unsigned cell = (t.n + 7) / 8;
  for (std::uint32_t v : t.v)
    os.write(reinterpret_cast<const char*>(&v), cell);
}

TruthTable read_truth_table(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw DomainError("truth table: bad magic");
  TruthTable t;
  std::uint32_t n = 0;
  is.read(reinterpret_cast<char*>(&n), 4);
  is.read(reinterpret_cast<char*>(&t.poly), 8);
  if (!is || n == 0 || n > 24 || n % 2) throw DomainError("truth table: bad n");
  t.n = n;
  t.v.resize(1ull << n);
  unsigned cell = (n + 7) / 8;
  for (auto& v : t.v) {
    v = 0;
    is.read(reinterpret_cast<char*>(&v), cell);
  }
  if (!is) throw DomainError("truth table: truncated");
  return t;
}

void save_truth_table(const std::string& path, const TruthTable& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open " + path);
  write_truth_table(f, t);
}

TruthTable load_truth_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open " + path);
  return read_truth_table(f);
}

}  // namespace biapn
