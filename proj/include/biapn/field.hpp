#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "biapn/errors.hpp"

namespace biapn {

// Field element of GF(2^m) in polynomial basis, bits below 2^m.
using Fe = std::uint32_t;

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// Immutable context for GF(2^m), m <= 32. Log/antilog tables are built for
// m <= 16; larger fields fall back to carry-less multiply plus reduction.
class FieldCtx {
 public:
  static constexpr unsigned kMaxM = 32;
  static constexpr unsigned kMaxTableM = 16;

  static FieldCtxPtr make(unsigned m);
  static FieldCtxPtr make(unsigned m, std::uint64_t poly);

  unsigned m() const { return m_; }
  std::uint64_t poly() const { return poly_; }
  std::uint64_t card() const { return 1ull << m_; }
  std::uint64_t order() const { return card() - 1; }

  Fe add(Fe a, Fe b) const { return a ^ b; }
  Fe mul(Fe a, Fe b) const {
    if (has_tables_) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return mul_slow(a, b);
  }
  Fe sqr(Fe a) const {
    if (has_tables_) {
      if (a == 0) return 0;
      return exp_[2 * static_cast<std::uint32_t>(log_[a])];
    }
    return mul_slow(a, a);
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::uint64_t e) const;
  // a^(2^k); k may be negative or exceed m, reduced mod m.
  Fe frob(Fe a, int k) const;
  int trace(Fe a) const { return __builtin_parity(a & trace_mask_); }
  // Cube test in M^x; throws DomainError on 0. All of M^x when 3 does not
  // divide 2^m - 1 (m odd).
  bool is_cube(Fe a) const;
  Fe least_noncube() const;
  bool in_subfield(Fe a, unsigned d) const;

  // x = c * g with c in K^x (K = GF(2^(m/2))) and g^(Q+1) = 1, Q = 2^(m/2).
  // Unique; requires m = 2 (mod 4) and x != 0.
  struct UnitParts {
    Fe c;
    Fe g;
  };
  UnitParts unit_decompose(Fe x) const;

  static bool is_irreducible(std::uint64_t poly, unsigned m);
  static std::uint64_t default_poly(unsigned m);

 private:
  FieldCtx(unsigned m, std::uint64_t poly);
  Fe mul_slow(Fe a, Fe b) const;

  unsigned m_ = 0;
  std::uint64_t poly_ = 0;
  bool has_tables_ = false;
  Fe trace_mask_ = 0;
  std::vector<Fe> exp_;             // g^i for i in [0, 2*order), table path only
  std::vector<std::uint32_t> log_;  // discrete log base g, log_[0] unused
};

// Lemma-level gcd bookkeeping for the q = 2^k, r = 2^(k+m/2), Q = 2^(m/2)
// setting; all gcds over plain integers. Requires m = 2 (mod 4), gcd(k,m) = 1.
struct GcdFacts {
  std::uint64_t q_plus_1;    // gcd(q+1,  2^m-1)
  std::uint64_t r_minus_1;   // gcd(r-1,  2^m-1)
  std::uint64_t q2_minus_1;  // gcd(q^2-1,2^m-1)
  std::uint64_t q_minus_1;   // gcd(q-1,  2^m-1)
  std::uint64_t r_plus_1;    // gcd(r+1,  2^m-1)
  std::uint64_t q_plus_1_Q;  // gcd(q+1,  Q-1)
};
GcdFacts gcd_exponent_facts(unsigned m, unsigned k);

// Smallest prime p dividing 2^m - 1 with multiplicative order of 2 mod p equal
// to m, plus the full p-part of 2^m - 1. Exists for m > 2, m != 6.
struct TwoPrimitive {
  std::uint64_t p;
  std::uint64_t p_part;
};
TwoPrimitive two_primitive_divisor(unsigned m);
bool has_two_primitive_divisor(unsigned m);

// Config overrides for defining polynomials. Text format, one entry per line:
//   m=<decimal> poly=<hex, no 0x>
// Blank lines and lines starting with '#' are ignored.
std::map<unsigned, std::uint64_t> load_poly_config(const std::string& path);
std::map<unsigned, std::uint64_t> parse_poly_config(const std::string& text);

}  // namespace biapn
