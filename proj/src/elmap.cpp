#include "biapn/elmap.hpp"

#include <algorithm>
#include <cstring>
#include <map>

#include "biapn/errors.hpp"
#include "biapn/f2linalg.hpp"
#include "biapn/util.hpp"

namespace biapn {

// ---------------------------------------------------------------------------
// linearized polynomials

Fe eval_lin(const FieldCtx& ctx, const LinPoly& p, Fe x) {
  Fe acc = 0;
  for (const auto& term : p) acc ^= ctx.mul(term.c, ctx.frob(x, static_cast<int>(term.t)));
  return acc;
}

LinPoly lin_canon(const FieldCtx& ctx, const LinPoly& p) {
  std::map<unsigned, Fe> coef;
  for (const auto& term : p) {
    if (term.c == 0) continue;
    coef[term.t % ctx.m()] ^= term.c;
  }
  LinPoly out;
  for (const auto& [t, c] : coef)
    if (c != 0) out.push_back({c, t});
  return out;
}

LinPoly lin_add(const FieldCtx& ctx, const LinPoly& a, const LinPoly& b) {
  LinPoly out = a;
  out.insert(out.end(), b.begin(), b.end());
  return lin_canon(ctx, out);
}

LinPoly lin_compose(const FieldCtx& ctx, const LinPoly& a, const LinPoly& b) {
  LinPoly out;
  for (const auto& ta : a)
    for (const auto& tb : b)
      out.push_back({ctx.mul(ta.c, ctx.frob(tb.c, static_cast<int>(ta.t))),
                     (ta.t + tb.t) % ctx.m()});
  return lin_canon(ctx, out);
}

bool lin_is_zero(const LinPoly& p) {
  for (const auto& term : p)
    if (term.c != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// extended linear maps

ProductElement ELMap::apply_m(Fe x, Fe y) const {
  return {static_cast<Fe>(eval_lin(*ctx, M[0], x) ^ eval_lin(*ctx, M[1], y)),
          static_cast<Fe>(eval_lin(*ctx, M[2], x) ^ eval_lin(*ctx, M[3], y))};
}

ProductElement ELMap::apply_n(Fe x, Fe y) const {
  return {static_cast<Fe>(eval_lin(*ctx, N[0], x) ^ eval_lin(*ctx, N[1], y)),
          static_cast<Fe>(eval_lin(*ctx, N[2], x) ^ eval_lin(*ctx, N[3], y))};
}

ProductElement ELMap::apply_l(Fe u, Fe v) const {
  return {static_cast<Fe>(eval_lin(*ctx, L[0], u) ^ eval_lin(*ctx, L[1], v)),
          static_cast<Fe>(eval_lin(*ctx, L[2], u) ^ eval_lin(*ctx, L[3], v))};
}

ELMap el_identity(const FieldCtxPtr& ctx) {
  ELMap e;
  e.ctx = ctx;
  e.M[0] = e.M[3] = {{1, 0}};
  e.L[0] = e.L[3] = {{1, 0}};
  return e;
}

ELMap el_compose(const ELMap& a, const ELMap& b) {
  const FieldCtx& ctx = *a.ctx;
  auto mul2 = [&](const std::array<LinPoly, 4>& p, const std::array<LinPoly, 4>& q) {
    std::array<LinPoly, 4> r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r[2 * i + j] = lin_add(ctx, lin_compose(ctx, p[2 * i], q[j]),
                               lin_compose(ctx, p[2 * i + 1], q[2 + j]));
    return r;
  };
  ELMap e;
  e.ctx = a.ctx;
  e.M = mul2(a.M, b.M);
  e.L = mul2(a.L, b.L);
  auto na = mul2(a.N, b.M);
  auto nb = mul2(a.L, b.N);
  for (int i = 0; i < 4; ++i) e.N[i] = lin_add(ctx, na[i], nb[i]);
  return e;
}

namespace {

bool blocks_invertible(const FieldCtx& ctx, const std::array<LinPoly, 4>& b) {
  const unsigned m = ctx.m();
  std::vector<std::uint64_t> rows;
  rows.reserve(2 * m);
  for (unsigned j = 0; j < 2 * m; ++j) {
    Fe x = j < m ? static_cast<Fe>(1u << j) : 0;
    Fe y = j < m ? 0 : static_cast<Fe>(1u << (j - m));
    Fe hi = static_cast<Fe>(eval_lin(ctx, b[2], x) ^ eval_lin(ctx, b[3], y));
    rows.push_back(static_cast<std::uint64_t>(eval_lin(ctx, b[0], x) ^ eval_lin(ctx, b[1], y)) |
                   (static_cast<std::uint64_t>(hi) << m));
  }
  return rank64(rows) == 2 * m;
}

}  // namespace

bool el_invertible(const ELMap& e) {
  return blocks_invertible(*e.ctx, e.M) && blocks_invertible(*e.ctx, e.L);
}

std::string serialize_elmap(const ELMap& e) {
  static const char* kNames[12] = {"M1", "M2", "M3", "M4", "N1", "N2",
                                   "N3", "N4", "L1", "L2", "L3", "L4"};
  const std::array<LinPoly, 4>* groups[3] = {&e.M, &e.N, &e.L};
  std::string out;
  for (int g = 0; g < 3; ++g)
    for (int i = 0; i < 4; ++i)
      for (const auto& term : lin_canon(*e.ctx, (*groups[g])[i])) {
        if (!out.empty()) out += ';';
        out += kNames[4 * g + i];
        out += ':';
        out += to_hex(term.c);
        out += ':';
        out += std::to_string(term.t);
      }
  return out;
}

ELMap parse_elmap(const FieldCtxPtr& ctx, const std::string& text) {
  ELMap e;
  e.ctx = ctx;
  for (const auto& token : split(text, ';')) {
    if (token.empty()) continue;
    auto parts = split(token, ':');
    if (parts.size() != 3) throw DomainError("bad map token: " + token);
    static const char kGroup[] = "MNL";
    const char* g = parts[0].size() == 2 ? std::strchr(kGroup, parts[0][0]) : nullptr;
    int idx = parts[0].size() == 2 ? parts[0][1] - '1' : -1;
    std::uint64_t c = 0;
    if (g == nullptr || idx < 0 || idx > 3 || !parse_hex(parts[1], c) || c >= ctx->card())
      throw DomainError("bad map token: " + token);
    unsigned t = static_cast<unsigned>(std::stoul(parts[2])) % ctx->m();
    std::array<LinPoly, 4>* group = g - kGroup == 0 ? &e.M : (g - kGroup == 1 ? &e.N : &e.L);
    (*group)[idx].push_back({static_cast<Fe>(c), t});
  }
  for (int i = 0; i < 4; ++i) {
    e.M[i] = lin_canon(*ctx, e.M[i]);
    e.N[i] = lin_canon(*ctx, e.N[i]);
    e.L[i] = lin_canon(*ctx, e.L[i]);
  }
  return e;
}

// ---------------------------------------------------------------------------
// graphs

GraphSet graph_of(const BiprojectivePair& p) {
  const unsigned m = p.m();
  if (2 * m > 14) throw TooLarge("graph materialization limited to 14 input bits");
  GraphSet g;
  g.n = 2 * m;
  g.codes.reserve(1ull << (2 * m));
  for (Fe y = 0; y < p.ctx->card(); ++y)
    for (Fe x = 0; x < p.ctx->card(); ++x) {
      ProductElement f = p.evaluate(x, y);
      g.codes.push_back(static_cast<std::uint64_t>(x) | (static_cast<std::uint64_t>(y) << m) |
                        (static_cast<std::uint64_t>(f.x) << (2 * m)) |
                        (static_cast<std::uint64_t>(f.y) << (3 * m)));
    }
  std::sort(g.codes.begin(), g.codes.end());
  return g;
}

GraphSet apply_el(const ELMap& e, const GraphSet& g) {
  if (!el_invertible(e)) throw NonInvertible("extended linear map is degenerate");
  const unsigned m = e.ctx->m();
  if (g.n != 2 * m) throw DomainError("graph dimension does not match the map");
  GraphSet out;
  out.n = g.n;
  out.codes.reserve(g.codes.size());
  const std::uint64_t mask = (1ull << m) - 1;
  for (std::uint64_t code : g.codes) {
    Fe x = static_cast<Fe>(code & mask), y = static_cast<Fe>((code >> m) & mask);
    Fe u = static_cast<Fe>((code >> (2 * m)) & mask), v = static_cast<Fe>((code >> (3 * m)) & mask);
    ProductElement in = e.apply_m(x, y);
    ProductElement nx = e.apply_n(x, y);
    ProductElement lu = e.apply_l(u, v);
    out.codes.push_back(static_cast<std::uint64_t>(in.x) |
                        (static_cast<std::uint64_t>(in.y) << m) |
                        (static_cast<std::uint64_t>(nx.x ^ lu.x) << (2 * m)) |
                        (static_cast<std::uint64_t>(nx.y ^ lu.y) << (3 * m)));
  }
  std::sort(out.codes.begin(), out.codes.end());
  return out;
}

bool is_graph_equiv(const BiprojectivePair& f, const BiprojectivePair& g, const ELMap& e) {
  const unsigned m = f.m();
  if (2 * m > 14) throw TooLarge("pointwise check limited to 14 input bits");
  if (g.m() != m) throw DomainError("field size mismatch");
  if (!el_invertible(e)) return false;
  for (Fe y = 0; y < f.ctx->card(); ++y)
    for (Fe x = 0; x < f.ctx->card(); ++x) {
      ProductElement in = e.apply_m(x, y);
      ProductElement fv = f.evaluate(x, y);
      ProductElement nx = e.apply_n(x, y);
      ProductElement lf = e.apply_l(fv.x, fv.y);
      ProductElement gv = g.evaluate(in.x, in.y);
      if (gv.x != (nx.x ^ lf.x) || gv.y != (nx.y ^ lf.y)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// exact witness verification by comparing reduced monomial coefficients
//
// Monomials are products of at most two Frobenius powers per variable with
// exponents reduced mod m. Distinct reduced monomials are linearly
// independent as functions on M^2, so coefficient identity is equivalent to
// functional identity.

namespace {

constexpr std::uint8_t kNone = 0xff;

// Exponent slots: {x0, x1, y0, y1}, absent = kNone, present slots sorted.
using Mono = std::array<std::uint8_t, 4>;
using PolyMap = std::map<Mono, Fe>;

void norm_slots(unsigned m, std::uint8_t& a, std::uint8_t& b) {
  if (a != kNone) a = static_cast<std::uint8_t>(a % m);
  if (b != kNone) b = static_cast<std::uint8_t>(b % m);
  if (a == kNone && b != kNone) std::swap(a, b);
  if (a != kNone && b != kNone) {
    if (a == b) {  // x^(2^a) * x^(2^a) = x^(2^(a+1))
      a = static_cast<std::uint8_t>((a + 1) % m);
      b = kNone;
    } else if (a > b) {
      std::swap(a, b);
    }
  }
}

void add_term(unsigned m, PolyMap& acc, Mono mono, Fe c) {
  if (c == 0) return;
  norm_slots(m, mono[0], mono[1]);
  norm_slots(m, mono[2], mono[3]);
  Fe& slot = acc[mono];
  slot ^= c;
  if (slot == 0) acc.erase(mono);
}

struct VarTerm {
  Fe c;
  int var;  // 0 = x, 1 = y
  unsigned t;
};

std::vector<VarTerm> var_terms(const FieldCtx& ctx, const LinPoly& on_x, const LinPoly& on_y) {
  std::vector<VarTerm> out;
  for (const auto& term : lin_canon(ctx, on_x)) out.push_back({term.c, 0, term.t});
  for (const auto& term : lin_canon(ctx, on_y)) out.push_back({term.c, 1, term.t});
  return out;
}

void add_product(unsigned m, PolyMap& acc, const VarTerm& a, unsigned shift_a,
                 const VarTerm& b, Fe scale, const FieldCtx& ctx) {
  Fe coef = ctx.mul(scale, ctx.mul(ctx.frob(a.c, static_cast<int>(shift_a)), b.c));
  if (coef == 0) return;
  Mono mono = {kNone, kNone, kNone, kNone};
  auto ea = static_cast<std::uint8_t>((a.t + shift_a) % m);
  auto eb = static_cast<std::uint8_t>(b.t % m);
  if (a.var == b.var) {
    mono[2 * a.var] = ea;
    mono[2 * a.var + 1] = eb;
  } else {
    mono[2 * a.var] = ea;
    mono[2 * b.var] = eb;
  }
  add_term(m, acc, mono, coef);
}

// Expansion of quad(u, v) with u, v given as linear combinations of
// Frobenius powers of x and y.
void expand_quad_comp(const FieldCtx& ctx, unsigned k, const Quad& q,
                      const std::vector<VarTerm>& u, const std::vector<VarTerm>& v,
                      PolyMap& acc) {
  const unsigned m = ctx.m();
  for (const auto& a : u)
    for (const auto& b : u) add_product(m, acc, a, k, b, q.a, ctx);
  for (const auto& a : u)
    for (const auto& b : v) add_product(m, acc, a, k, b, q.b, ctx);
  for (const auto& a : v)
    for (const auto& b : u) add_product(m, acc, a, k, b, q.c, ctx);
  for (const auto& a : v)
    for (const auto& b : v) add_product(m, acc, a, k, b, q.d, ctx);
}

// Expansion of lp(quad(x, y)) for a component of the untransformed pair.
void expand_lin_of_quad(const FieldCtx& ctx, unsigned k, const Quad& q,
                        const LinPoly& lp, PolyMap& acc) {
  const unsigned m = ctx.m();
  for (const auto& term : lin_canon(ctx, lp)) {
    auto lo = static_cast<std::uint8_t>(term.t % m);
    auto hi = static_cast<std::uint8_t>((term.t + k) % m);
    add_term(m, acc, {hi, lo, kNone, kNone}, ctx.mul(term.c, ctx.frob(q.a, static_cast<int>(term.t))));
    add_term(m, acc, {hi, kNone, lo, kNone}, ctx.mul(term.c, ctx.frob(q.b, static_cast<int>(term.t))));
    add_term(m, acc, {lo, kNone, hi, kNone}, ctx.mul(term.c, ctx.frob(q.c, static_cast<int>(term.t))));
    add_term(m, acc, {kNone, kNone, hi, lo}, ctx.mul(term.c, ctx.frob(q.d, static_cast<int>(term.t))));
  }
}

void expand_lin_var(const FieldCtx& ctx, const LinPoly& lp, int var, PolyMap& acc) {
  const unsigned m = ctx.m();
  for (const auto& term : lin_canon(ctx, lp)) {
    Mono mono = {kNone, kNone, kNone, kNone};
    mono[2 * var] = static_cast<std::uint8_t>(term.t % m);
    add_term(m, acc, mono, term.c);
  }
}

}  // namespace

bool verify_el_witness(const BiprojectivePair& f, const BiprojectivePair& g, const ELMap& e) {
  const FieldCtx& ctx = *f.ctx;
  if (g.m() != f.m() || e.ctx->m() != f.m()) throw DomainError("field size mismatch");
  if (!el_invertible(e)) return false;
  auto u = var_terms(ctx, e.M[0], e.M[1]);
  auto v = var_terms(ctx, e.M[2], e.M[3]);
  for (int comp = 0; comp < 2; ++comp) {
    PolyMap lhs, rhs;
    expand_quad_comp(ctx, comp == 0 ? g.k : g.l, comp == 0 ? g.f : g.g, u, v, lhs);
    expand_lin_of_quad(ctx, f.k, f.f, e.L[2 * comp], rhs);
    expand_lin_of_quad(ctx, f.l, f.g, e.L[2 * comp + 1], rhs);
    expand_lin_var(ctx, e.N[2 * comp], 0, rhs);
    expand_lin_var(ctx, e.N[2 * comp + 1], 1, rhs);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace biapn
