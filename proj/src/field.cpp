#include "biapn/field.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "biapn/util.hpp"

namespace biapn {

namespace {

// Carry-less helpers on raw u64 bit polynomials, degrees < 64.

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t preduce(std::uint64_t a, std::uint64_t f, unsigned m) {
  for (int i = 63 - static_cast<int>(m); i >= 0; --i)
    if (a >> (i + m) & 1) a ^= f << i;
  return a;
}

std::uint64_t pgcd(std::uint64_t a, std::uint64_t b) {
  auto deg = [](std::uint64_t x) { return x ? 63 - __builtin_clzll(x) : -1; };
  while (b) {
    int da = deg(a), db = deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    a ^= b << (da - db);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % mod);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  a %= mod;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, mod);
    a = mulmod_u64(a, a, mod);
    e >>= 1;
  }
  return r;
}

}  // namespace

Fe FieldCtx::mul_slow(Fe a, Fe b) const {
  return static_cast<Fe>(preduce(clmul(a, b), poly_, m_));
}

FieldCtx::FieldCtx(unsigned m, std::uint64_t poly) : m_(m), poly_(poly) {
  // Trace is F_2-linear, so one mask of basis traces suffices for all m.
  for (unsigned j = 0; j < m_; ++j) {
    Fe e = static_cast<Fe>(1u << j), t = e, s = e;
    for (unsigned i = 1; i < m_; ++i) {
      s = mul_slow(s, s);
      t ^= s;
    }
    if (t & 1) trace_mask_ |= 1u << j;
    // Absolute trace lands in F_2; anything else means a reducible modulus,
    // which the factory already rejected.
  }

  if (m_ > kMaxTableM) return;

  std::uint64_t n = order();
  Fe gen = 1;
  if (m_ > 1) {
    auto primes = prime_factors(n);
    for (Fe g = 2; g < card(); ++g) {
      bool ok = true;
      for (std::uint64_t p : primes) {
        Fe t = 1, base = g;
        std::uint64_t e = n / p;
        while (e) {
          if (e & 1) t = mul_slow(t, base);
          base = mul_slow(base, base);
          e >>= 1;
        }
        if (t == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = g;
        break;
      }
    }
  }
  exp_.assign(2 * n, 1);
  log_.assign(card(), 0);
  Fe cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = cur;
    exp_[i + n] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = mul_slow(cur, gen);
  }
  has_tables_ = true;
}

FieldCtxPtr FieldCtx::make(unsigned m) { return make(m, default_poly(m)); }

FieldCtxPtr FieldCtx::make(unsigned m, std::uint64_t poly) {
  if (m < 1 || m > kMaxM) throw DomainError("field degree m must be in [1, 32]");
  if ((poly >> m) != 1)
    throw DomainError("defining polynomial must have degree exactly m");
  if (!is_irreducible(poly, m))
    throw DomainError("defining polynomial is reducible: 0x" + to_hex(poly));
  return FieldCtxPtr(new FieldCtx(m, poly));
}

Fe FieldCtx::inv(Fe a) const {
  if (a == 0) throw DivisionByZero();
  if (has_tables_) return exp_[order() - log_[a]];
  return pow(a, order() - 1);
}

Fe FieldCtx::pow(Fe a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (has_tables_) {
    std::uint64_t le = log_[a] * (e % order()) % order();
    return exp_[le];
  }
  Fe r = 1;
  e %= order();
  while (e) {
    if (e & 1) r = mul_slow(r, a);
    a = mul_slow(a, a);
    e >>= 1;
  }
  return r;
}

Fe FieldCtx::frob(Fe a, int k) const {
  int mm = static_cast<int>(m_);
  unsigned kk = static_cast<unsigned>((k % mm + mm) % mm);
  if (a == 0 || kk == 0) return a;
  if (has_tables_)
    return exp_[(static_cast<std::uint64_t>(log_[a]) << kk) % order()];
  Fe r = a;
  for (unsigned i = 0; i < kk; ++i) r = mul_slow(r, r);
  return r;
}

bool FieldCtx::is_cube(Fe a) const {
  if (a == 0) throw DomainError("cube classification is defined on M^x only");
  if (order() % 3) return true;
  return pow(a, order() / 3) == 1;
}

Fe FieldCtx::least_noncube() const {
  for (Fe a = 1; a < card(); ++a)
    if (!is_cube(a)) return a;
  throw DomainError("every element of M^x is a cube (m odd)");
}

bool FieldCtx::in_subfield(Fe a, unsigned d) const {
  if (d == 0 || m_ % d) throw DomainError("subfield degree must divide m");
  return frob(a, static_cast<int>(d)) == a;
}

FieldCtx::UnitParts FieldCtx::unit_decompose(Fe x) const {
  if (m_ % 4 != 2)
    throw DomainError("unit decomposition requires m = 2 (mod 4)");
  if (x == 0) throw DomainError("unit decomposition is defined on M^x only");
  std::uint64_t Q = 1ull << (m_ / 2);
  // CRT exponents: e1 = 1 mod Q-1, 0 mod Q+1 and e2 the complement, so that
  // x^e1 in K^x, x^e2 in the (Q+1)-st roots of unity, product x^(Q^2) = x.
  std::uint64_t e1 = (Q + 1) * (Q / 2);
  std::uint64_t e2 = (Q - 1) * (Q / 2);
  return {pow(x, e1), pow(x, e2)};
}

bool FieldCtx::is_irreducible(std::uint64_t poly, unsigned m) {
  if (m < 1 || m > kMaxM || (poly >> m) != 1) return false;
  if (m == 1) return true;
  auto sq = [&](std::uint64_t a) { return preduce(clmul(a, a), poly, m); };
  std::uint64_t x = 2, t = x;
  for (unsigned i = 0; i < m; ++i) t = sq(t);
  if (t != x) return false;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    std::uint64_t s = x;
    for (unsigned i = 0; i < d; ++i) s = sq(s);
    if (pgcd(s ^ x, poly) != 1) return false;
  }
  return true;
}

std::uint64_t FieldCtx::default_poly(unsigned m) {
  // Lexicographically least irreducible of each degree.
  static const std::uint64_t table[33] = {
      0,          0x3,       0x7,        0xb,        0x13,      0x25,
      0x43,       0x83,      0x11b,      0x203,      0x409,     0x805,
      0x1009,     0x201b,    0x4021,     0x8003,     0x1002b,   0x20009,
      0x40009,    0x80027,   0x100009,   0x200005,   0x400003,  0x800021,
      0x100001b,  0x2000009, 0x400001b,  0x8000027,  0x10000003,
      0x20000005, 0x40000003, 0x80000009, 0x10000008dull};
  if (m < 1 || m > kMaxM) throw DomainError("field degree m must be in [1, 32]");
  return table[m];
}

GcdFacts gcd_exponent_facts(unsigned m, unsigned k) {
  if (m % 4 != 2) throw DomainError("gcd facts require m = 2 (mod 4)");
  if (k == 0 || k >= m || std::gcd<std::uint64_t>(k, m) != 1)
    throw DomainError("gcd facts require gcd(k, m) = 1 with 0 < k < m");
  std::uint64_t n = (1ull << m) - 1;
  std::uint64_t q = 1ull << k;
  std::uint64_t r = 1ull << ((k + m / 2) % m);
  std::uint64_t Q = 1ull << (m / 2);
  return {std::gcd(q + 1, n),     std::gcd(r - 1, n), std::gcd(q * q - 1, n),
          std::gcd(q - 1, n),     std::gcd(r + 1, n), std::gcd(q + 1, Q - 1)};
}

TwoPrimitive two_primitive_divisor(unsigned m) {
  if (m < 1 || m > FieldCtx::kMaxM) throw DomainError("m out of range");
  std::uint64_t n = (1ull << m) - 1;
  for (std::uint64_t p : prime_factors(n)) {
    unsigned ord = 0;
    for (unsigned d = 1; d <= m; ++d) {
      if (m % d) continue;
      if (powmod_u64(2, d, p) == 1) {
        ord = d;
        break;
      }
    }
    if (ord == m) {
      std::uint64_t part = 1, t = n;
      while (t % p == 0) {
        part *= p;
        t /= p;
      }
      return {p, part};
    }
  }
  throw DomainError("no 2-primitive prime divisor exists for m=" +
                    std::to_string(m));
}

bool has_two_primitive_divisor(unsigned m) {
  try {
    two_primitive_divisor(m);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::map<unsigned, std::uint64_t> parse_poly_config(const std::string& text) {
  std::map<unsigned, std::uint64_t> out;
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string mtok, ptok;
    if (!(ls >> mtok)) continue;
    if (!(ls >> ptok) || mtok.rfind("m=", 0) != 0 || ptok.rfind("poly=", 0) != 0)
      throw DomainError("poly config line " + std::to_string(lineno) +
                        ": expected 'm=<dec> poly=<hex>'");
    unsigned m = 0;
    try {
      m = static_cast<unsigned>(std::stoul(mtok.substr(2)));
    } catch (...) {
      throw DomainError("poly config line " + std::to_string(lineno) +
                        ": bad m value");
    }
    std::uint64_t poly = 0;
    if (!parse_hex(ptok.substr(5), poly))
      throw DomainError("poly config line " + std::to_string(lineno) +
                        ": bad poly value");
    out[m] = poly;
  }
  return out;
}

std::map<unsigned, std::uint64_t> load_poly_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open poly config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_poly_config(ss.str());
}

}  // namespace biapn
