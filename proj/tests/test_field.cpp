#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "biapn/errors.hpp"
#include "biapn/field.hpp"
#include "doctest.h"

using namespace biapn;

namespace {

// xorshift64 for reproducible sampling, independent of the library RNG
struct rng64 {
  std::uint64_t s;
  explicit rng64(std::uint64_t seed) : s(seed ? seed : 1) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  Fe elem(const FieldCtx& ctx) {
    return static_cast<Fe>(next() & (ctx.card() - 1));
  }
  Fe unit(const FieldCtx& ctx) {
    Fe a = 0;
    while (a == 0) a = elem(ctx);
    return a;
  }
};

// schoolbook oracle: shift-and-xor polynomial product, then long division
Fe mul_oracle(Fe a, Fe b, unsigned m, std::uint64_t poly) {
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < m; ++i)
    if ((b >> i) & 1) prod ^= static_cast<std::uint64_t>(a) << i;
  for (int d = 2 * static_cast<int>(m) - 2; d >= static_cast<int>(m); --d)
    if ((prod >> d) & 1) prod ^= poly << (d - m);
  return static_cast<Fe>(prod);
}

}  // namespace

// ---- multiplication against the schoolbook oracle ----

TEST_CASE("table multiply matches schoolbook reduction") {
  for (unsigned m : {3u, 4u, 5u, 6u, 8u, 10u}) {
    auto ctx = FieldCtx::make(m);
    rng64 rng(0x90210 + m);
    for (int i = 0; i < 2000; ++i) {
      Fe a = rng.elem(*ctx), b = rng.elem(*ctx);
      CAPTURE(m);
      CAPTURE(a);
      CAPTURE(b);
      REQUIRE(ctx->mul(a, b) == mul_oracle(a, b, m, ctx->poly()));
    }
  }
}

TEST_CASE("carry-less path matches schoolbook reduction at m = 20") {
  auto ctx = FieldCtx::make(20);
  rng64 rng(0xfeed);
  for (int i = 0; i < 2000; ++i) {
    Fe a = rng.elem(*ctx), b = rng.elem(*ctx);
    REQUIRE(ctx->mul(a, b) == mul_oracle(a, b, 20, ctx->poly()));
  }
}

// ---- field axioms ----

TEST_CASE("ring axioms hold on random samples") {
  for (unsigned m : {4u, 6u, 20u}) {
    auto ctx = FieldCtx::make(m);
    rng64 rng(0xabc + m);
    for (int i = 0; i < 3000; ++i) {
      Fe a = rng.elem(*ctx), b = rng.elem(*ctx), c = rng.elem(*ctx);
      CHECK(ctx->mul(a, b) == ctx->mul(b, a));
      CHECK(ctx->mul(a, ctx->mul(b, c)) == ctx->mul(ctx->mul(a, b), c));
      CHECK(ctx->mul(a, ctx->add(b, c)) ==
            ctx->add(ctx->mul(a, b), ctx->mul(a, c)));
      CHECK(ctx->mul(a, 1) == a);
      CHECK(ctx->sqr(a) == ctx->mul(a, a));
    }
  }
}

TEST_CASE("every unit has a working inverse") {
  auto ctx = FieldCtx::make(6);
  for (Fe a = 1; a < ctx->card(); ++a)
    REQUIRE(ctx->mul(a, ctx->inv(a)) == 1);
  CHECK_THROWS_AS(ctx->inv(0), DomainError);
}

TEST_CASE("pow satisfies exponent laws") {
  auto ctx = FieldCtx::make(7);
  rng64 rng(0x7777);
  for (int i = 0; i < 500; ++i) {
    Fe a = rng.unit(*ctx);
    std::uint64_t e1 = rng.next() % 1000, e2 = rng.next() % 1000;
    CHECK(ctx->pow(a, e1 + e2) == ctx->mul(ctx->pow(a, e1), ctx->pow(a, e2)));
    CHECK(ctx->pow(a, ctx->order()) == 1);
    CHECK(ctx->pow(a, 0) == 1);
  }
  CHECK(ctx->pow(0, 0) == 1);
  CHECK(ctx->pow(0, 5) == 0);
}

// ---- Frobenius ----

TEST_CASE("frobenius powers compose and wrap") {
  for (unsigned m : {5u, 6u, 20u}) {
    auto ctx = FieldCtx::make(m);
    rng64 rng(0xf0 + m);
    for (int i = 0; i < 500; ++i) {
      Fe a = rng.elem(*ctx);
      CHECK(ctx->frob(a, 1) == ctx->sqr(a));
      CHECK(ctx->frob(a, static_cast<int>(m)) == a);
      CHECK(ctx->frob(ctx->frob(a, 2), 3) == ctx->frob(a, 5));
      CHECK(ctx->sqr(ctx->frob(a, -1)) == a);
      CHECK(ctx->frob(a, -2) == ctx->frob(a, static_cast<int>(m) - 2));
    }
  }
}

TEST_CASE("frobenius is additive") {
  auto ctx = FieldCtx::make(6);
  for (Fe a = 0; a < ctx->card(); ++a)
    for (Fe b : {Fe(3), Fe(17), Fe(60)})
      CHECK(ctx->frob(a ^ b, 1) == (ctx->frob(a, 1) ^ ctx->frob(b, 1)));
}

// ---- trace ----

TEST_CASE("trace is balanced, additive, and frobenius invariant") {
  for (unsigned m : {3u, 4u, 6u}) {
    auto ctx = FieldCtx::make(m);
    unsigned zeros = 0;
    for (Fe a = 0; a < ctx->card(); ++a) {
      if (ctx->trace(a) == 0) ++zeros;
      CHECK(ctx->trace(a) == ctx->trace(ctx->sqr(a)));
      CHECK(ctx->trace(a ^ 1) == (ctx->trace(a) ^ ctx->trace(1)));
    }
    CHECK(zeros == ctx->card() / 2);
  }
}

TEST_CASE("trace agrees with the summed frobenius orbit") {
  auto ctx = FieldCtx::make(6);
  for (Fe a = 0; a < ctx->card(); ++a) {
    Fe s = 0;
    for (unsigned i = 0; i < 6; ++i) s ^= ctx->frob(a, static_cast<int>(i));
    CHECK(static_cast<Fe>(ctx->trace(a)) == s);
  }
}

// ---- cube classification ----

TEST_CASE("cube census matches the index of the cube subgroup") {
  auto ctx = FieldCtx::make(6);  // 3 | 2^6 - 1
  unsigned cubes = 0;
  for (Fe a = 1; a < ctx->card(); ++a)
    if (ctx->is_cube(a)) ++cubes;
  CHECK(cubes == ctx->order() / 3);
  // closure under the actual cubing map
  std::set<Fe> image;
  for (Fe a = 1; a < ctx->card(); ++a)
    image.insert(ctx->mul(a, ctx->sqr(a)));
  for (Fe a : image) CHECK(ctx->is_cube(a));
  CHECK(image.size() == ctx->order() / 3);
  CHECK_THROWS_AS(ctx->is_cube(0), DomainError);
}

TEST_CASE("odd degree means every unit is a cube") {
  auto ctx = FieldCtx::make(5);
  for (Fe a = 1; a < ctx->card(); ++a) CHECK(ctx->is_cube(a));
  CHECK_THROWS_AS(ctx->least_noncube(), DomainError);
}

TEST_CASE("least_noncube is minimal and not a cube") {
  for (unsigned m : {4u, 6u, 10u}) {
    auto ctx = FieldCtx::make(m);
    Fe w = ctx->least_noncube();
    CHECK_FALSE(ctx->is_cube(w));
    for (Fe a = 1; a < w; ++a) CHECK(ctx->is_cube(a));
  }
}

// ---- subfields ----

TEST_CASE("subfield membership counts are 2^d") {
  auto ctx = FieldCtx::make(6);
  for (unsigned d : {1u, 2u, 3u, 6u}) {
    unsigned n = 0;
    for (Fe a = 0; a < ctx->card(); ++a)
      if (ctx->in_subfield(a, d)) ++n;
    CHECK(n == (1u << d));
  }
  CHECK_THROWS_AS(ctx->in_subfield(1, 4), DomainError);
  CHECK_THROWS_AS(ctx->in_subfield(1, 0), DomainError);
}

TEST_CASE("subfield elements are closed under arithmetic") {
  auto ctx = FieldCtx::make(6);
  std::vector<Fe> sub;
  for (Fe a = 0; a < ctx->card(); ++a)
    if (ctx->in_subfield(a, 3)) sub.push_back(a);
  for (Fe a : sub)
    for (Fe b : sub) {
      CHECK(ctx->in_subfield(ctx->mul(a, b), 3));
      CHECK(ctx->in_subfield(a ^ b, 3));
    }
}

// ---- unit decomposition ----

TEST_CASE("unit decomposition splits M^x as K^x times the norm-one circle") {
  auto ctx = FieldCtx::make(6);
  const Fe q_half = 8;  // 2^(m/2)
  std::set<std::pair<Fe, Fe>> seen;
  for (Fe x = 1; x < ctx->card(); ++x) {
    auto parts = ctx->unit_decompose(x);
    CHECK(ctx->mul(parts.c, parts.g) == x);
    CHECK(parts.c != 0);
    CHECK(ctx->in_subfield(parts.c, 3));
    CHECK(ctx->pow(parts.g, q_half + 1) == 1);
    seen.insert({parts.c, parts.g});
  }
  CHECK(seen.size() == ctx->order());  // decomposition is injective
  CHECK_THROWS_AS(ctx->unit_decompose(0), DomainError);
  auto bad = FieldCtx::make(4);  // 4 = 0 (mod 4): no such splitting
  CHECK_THROWS_AS(bad->unit_decompose(1), DomainError);
}

// ---- defining polynomials ----

TEST_CASE("default polynomials are the frozen lexicographic minima") {
  CHECK(FieldCtx::default_poly(3) == 0xb);
  CHECK(FieldCtx::default_poly(4) == 0x13);
  CHECK(FieldCtx::default_poly(5) == 0x25);
  CHECK(FieldCtx::default_poly(6) == 0x43);
  CHECK(FieldCtx::default_poly(10) == 0x409);
}

TEST_CASE("default polynomial is the least irreducible of its degree") {
  for (unsigned m = 2; m <= 10; ++m) {
    std::uint64_t p = FieldCtx::default_poly(m);
    REQUIRE(FieldCtx::is_irreducible(p, m));
    for (std::uint64_t q = 1ull << m; q < p; ++q)
      CHECK_FALSE(FieldCtx::is_irreducible(q, m));
  }
}

TEST_CASE("irreducibility test rejects known factorizations") {
  CHECK_FALSE(FieldCtx::is_irreducible(0x15, 4));  // (x^2+x+1)^2
  CHECK_FALSE(FieldCtx::is_irreducible(0x11, 4));  // (x+1)^4
  CHECK_FALSE(FieldCtx::is_irreducible(0x18, 4));  // divisible by x
  CHECK(FieldCtx::is_irreducible(0x13, 4));
  CHECK(FieldCtx::is_irreducible(0x19, 4));
}

TEST_CASE("constructing a field with a reducible polynomial throws") {
  CHECK_THROWS_AS(FieldCtx::make(4, 0x15), DomainError);
  CHECK_THROWS_AS(FieldCtx::make(4, 0xb), DomainError);  // degree mismatch
  CHECK_THROWS_AS(FieldCtx::make(0), DomainError);
  CHECK_THROWS_AS(FieldCtx::make(33), DomainError);
}

TEST_CASE("alternate irreducible polynomial gives a consistent field") {
  auto ctx = FieldCtx::make(4, 0x19);  // x^4 + x^3 + 1
  CHECK(ctx->poly() == 0x19);
  for (Fe a = 1; a < ctx->card(); ++a)
    REQUIRE(ctx->mul(a, ctx->inv(a)) == 1);
  rng64 rng(0x19);
  for (int i = 0; i < 500; ++i) {
    Fe a = rng.elem(*ctx), b = rng.elem(*ctx);
    CHECK(ctx->mul(a, b) == mul_oracle(a, b, 4, 0x19));
  }
}

// ---- poly config parsing ----

TEST_CASE("poly config text parses entries and skips noise") {
  auto map = parse_poly_config(
      "# override table\n"
      "\n"
      "m=6 poly=43\n"
      "m=10 poly=409   # trailing comment\n");
  CHECK(map.size() == 2);
  CHECK(map.at(6) == 0x43);
  CHECK(map.at(10) == 0x409);
}

TEST_CASE("malformed poly config lines throw") {
  CHECK_THROWS_AS(parse_poly_config("m=6\n"), DomainError);
  CHECK_THROWS_AS(parse_poly_config("poly=43 m=6\n"), DomainError);
  CHECK_THROWS_AS(parse_poly_config("m=six poly=43\n"), DomainError);
  CHECK_THROWS_AS(parse_poly_config("m=6 poly=0xzz\n"), DomainError);
}

// ---- gcd bookkeeping ----

TEST_CASE("exponent gcd facts at m = 6, k = 1") {
  auto f = gcd_exponent_facts(6, 1);
  CHECK(f.q_plus_1 == 3);
  CHECK(f.r_minus_1 == 3);
  CHECK(f.q2_minus_1 == 3);
  CHECK(f.q_minus_1 == 1);
  CHECK(f.r_plus_1 == 1);
  CHECK(f.q_plus_1_Q == 1);
}

TEST_CASE("exponent gcd facts at m = 10, k = 3") {
  // q = 8, r = 2^8 = 256, Q = 32, 2^10 - 1 = 1023 = 3 * 11 * 31
  auto f = gcd_exponent_facts(10, 3);
  CHECK(f.q_plus_1 == 3);    // gcd(9, 1023)
  CHECK(f.r_minus_1 == 3);   // gcd(255, 1023)
  CHECK(f.q2_minus_1 == 3);  // gcd(63, 1023)
  CHECK(f.q_minus_1 == 1);   // gcd(7, 1023)
  CHECK(f.r_plus_1 == 1);    // gcd(257, 1023)
  CHECK(f.q_plus_1_Q == 1);  // gcd(9, 31)
}

TEST_CASE("gcd facts reject invalid degrees") {
  CHECK_THROWS_AS(gcd_exponent_facts(4, 1), DomainError);   // m = 0 (mod 4)
  CHECK_THROWS_AS(gcd_exponent_facts(5, 1), DomainError);   // m odd
  CHECK_THROWS_AS(gcd_exponent_facts(6, 2), DomainError);   // gcd(k, m) > 1
}

// ---- primitive prime divisors ----

TEST_CASE("primitive prime divisor pins") {
  CHECK(two_primitive_divisor(3).p == 7);
  CHECK(two_primitive_divisor(3).p_part == 7);
  CHECK(two_primitive_divisor(4).p == 5);
  CHECK(two_primitive_divisor(4).p_part == 5);
  CHECK(two_primitive_divisor(5).p == 31);
  CHECK(two_primitive_divisor(5).p_part == 31);
  CHECK(two_primitive_divisor(7).p == 127);
  CHECK(two_primitive_divisor(10).p == 11);
  CHECK(two_primitive_divisor(10).p_part == 11);
  CHECK(two_primitive_divisor(12).p == 13);
}

TEST_CASE("primitive prime divisor existence boundary") {
  CHECK_FALSE(has_two_primitive_divisor(6));
  CHECK_THROWS_AS(two_primitive_divisor(6), DomainError);
  for (unsigned m : {3u, 4u, 5u, 7u, 8u, 9u, 10u, 11u, 12u})
    CHECK(has_two_primitive_divisor(m));
}

TEST_CASE("primitive prime divisor really has order m") {
  for (unsigned m : {3u, 4u, 5u, 7u, 10u, 12u}) {
    auto tp = two_primitive_divisor(m);
    REQUIRE((1ull << m) % tp.p == 1);  // p | 2^m - 1
    std::uint64_t pw = 2 % tp.p;
    unsigned ord = 1;
    while (pw != 1) {
      pw = pw * 2 % tp.p;
      ++ord;
    }
    CHECK(ord == m);
    CHECK(tp.p_part % tp.p == 0);
    CHECK(((1ull << m) - 1) % tp.p_part == 0);
  }
}
