#include "biapn/equiv.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "biapn/errors.hpp"
#include "biapn/f2linalg.hpp"

namespace biapn {

// ---------------------------------------------------------------------------
// group action on forms

Quad transform_quad(const FieldCtx& ctx, unsigned k, const Quad& f,
                    Fe c1, Fe c2, Fe c3, Fe c4) {
  const int kk = static_cast<int>(k);
  Fe c1q = ctx.frob(c1, kk), c2q = ctx.frob(c2, kk);
  Fe c3q = ctx.frob(c3, kk), c4q = ctx.frob(c4, kk);
  Quad out;
  out.a = eval_quad(ctx, k, f, c1, c3);
  out.d = eval_quad(ctx, k, f, c2, c4);
  out.b = static_cast<Fe>(ctx.mul(f.a, ctx.mul(c1q, c2)) ^ ctx.mul(f.b, ctx.mul(c1q, c4)) ^
                          ctx.mul(f.c, ctx.mul(c2, c3q)) ^ ctx.mul(f.d, ctx.mul(c3q, c4)));
  out.c = static_cast<Fe>(ctx.mul(f.a, ctx.mul(c1, c2q)) ^ ctx.mul(f.b, ctx.mul(c2q, c3)) ^
                          ctx.mul(f.c, ctx.mul(c1, c4q)) ^ ctx.mul(f.d, ctx.mul(c3, c4q)));
  return out;
}

Quad g_action(const FieldCtx& ctx, unsigned k, const GGroupElement& g, const Quad& f) {
  Quad t = transform_quad(ctx, k, f, g.c1, g.c2, g.c3, g.c4);
  return {ctx.mul(g.a, t.a), ctx.mul(g.a, t.b), ctx.mul(g.a, t.c), ctx.mul(g.a, t.d)};
}

std::uint64_t g_group_order(const FieldCtx& ctx) {
  if (ctx.m() > 10) throw TooLarge("group order exceeds 64 bits");
  std::uint64_t c = ctx.card(), u = c - 1;
  return u * u * u * (c + 1) * c;
}

OrbitInfo orbit_and_stabilizer(const FieldCtx& ctx, unsigned k, const Quad& f) {
  if (ctx.m() > 6) throw TooLarge("stabilizer scan limited to m <= 6");
  if (f.a == 0 && f.b == 0 && f.c == 0 && f.d == 0)
    throw DomainError("stabilizer of the zero form");
  const Fe card = ctx.card();
  std::uint64_t stab = 0;
  for (Fe c1 = 0; c1 < card; ++c1)
    for (Fe c2 = 0; c2 < card; ++c2)
      for (Fe c3 = 0; c3 < card; ++c3)
        for (Fe c4 = 0; c4 < card; ++c4) {
          if ((ctx.mul(c1, c4) ^ ctx.mul(c2, c3)) == 0) continue;
          Quad t = transform_quad(ctx, k, f, c1, c2, c3, c4);
          // proportional to f by a nonzero scalar?
          Fe lam = 0;
          bool ok = true;
          const Fe fs[4] = {f.a, f.b, f.c, f.d};
          const Fe ts[4] = {t.a, t.b, t.c, t.d};
          for (int i = 0; i < 4 && ok; ++i) {
            if (fs[i] == 0) {
              ok = ts[i] == 0;
            } else {
              Fe r = ctx.div(ts[i], fs[i]);
              if (lam == 0)
                lam = r;
              else
                ok = r == lam;
            }
          }
          if (ok && lam != 0) ++stab;
        }
  OrbitInfo info;
  info.group_order = g_group_order(ctx);
  info.stabilizer_size = stab;
  info.orbit_size = info.group_order / stab;
  return info;
}

// ---------------------------------------------------------------------------
// canonical diagonal self-maps

ELMap z_subgroup_map(const BiprojectivePair& p, Fe a) {
  if (a == 0) throw DomainError("scalar must be nonzero");
  const FieldCtx& ctx = *p.ctx;
  ELMap e;
  e.ctx = p.ctx;
  e.M[0] = e.M[3] = {{a, 0}};
  e.L[0] = {{ctx.mul(ctx.frob(a, static_cast<int>(p.k)), a), 0}};
  e.L[3] = {{ctx.mul(ctx.frob(a, static_cast<int>(p.l)), a), 0}};
  return e;
}

bool z_subgroup_member(const BiprojectivePair& p, Fe a) {
  return verify_el_witness(p, p, z_subgroup_map(p, a));
}

// ---------------------------------------------------------------------------
// restricted witness search
//
// Shapes: every block of M, N, L is a monomial c x^(2^t); all M blocks share
// one exponent t; L is diagonal or antidiagonal. Component i of G(M(x, y))
// is matched against one component of F through one L entry. Writing X for
// x^(2^t), the composed component is
//   P1 X^(qG+1) + P2 X^qG Y + P3 X Y^qG + P4 Y^(qG+1)
// and the matched side is d * (F component)^(2^tau) plus an N row. P1 fixes
// d when the F component has a nonzero leading coefficient; the two middle
// coefficients give F_2-linear equations in (g2, g4, d); P4 and the rest are
// enforced on each enumerated solution.

namespace {

struct MatchTask {
  unsigned kG = 0;
  Quad gq;
  unsigned kF = 0;
  Quad fq;
  unsigned tau = 0;
  bool swap_mid = false;  // exponent matched with opposite sign
  bool k0 = false;        // F component has exponent 0
};

std::vector<MatchTask> task_options(unsigned m, unsigned kG, const Quad& gq,
                                    unsigned kF, const Quad& fq, unsigned t) {
  std::vector<MatchTask> out;
  kG %= m;
  kF %= m;
  if (kF == 0) {
    if (kG == 0) out.push_back({kG, gq, kF, fq, t, false, true});
    return out;
  }
  if (kG == kF) out.push_back({kG, gq, kF, fq, t, false, false});
  if ((kG + kF) % m == 0) out.push_back({kG, gq, kF, fq, (t + kG) % m, true, false});
  return out;
}

struct PointCandidate {
  Fe g2 = 0, g4 = 0;
  std::array<Fe, 2> d = {0, 0};
};

struct LinEq {
  // sum over terms of A * frob(var_block, e) plus optional d column = rhs
  struct Col {
    Fe coef;
    unsigned base;
    unsigned e;
  };
  std::vector<Col> cols;
  Fe rhs = 0;
};

// Solves the middle-coefficient system at fixed (g1, g3); validated
// candidates are appended. Returns false if the solution space was capped.
bool solve_point(const FieldCtx& ctx, const std::array<MatchTask, 2>& tasks,
                 Fe g1, Fe g3, std::uint64_t cap, std::vector<PointCandidate>& out) {
  const unsigned m = ctx.m();
  std::array<Fe, 2> dpre = {0, 0};
  std::array<bool, 2> dsolved = {false, false};
  std::array<int, 2> dvar = {-1, -1};
  unsigned nvars = 2 * m;

  for (int i = 0; i < 2; ++i) {
    const MatchTask& T = tasks[i];
    if (!T.k0) {
      Fe p1 = eval_quad(ctx, T.kG, T.gq, g1, g3);
      Fe fa = ctx.frob(T.fq.a, static_cast<int>(T.tau));
      if (fa != 0) {
        if (p1 == 0) return true;  // L entry would vanish
        dpre[i] = ctx.div(p1, fa);
        dsolved[i] = true;
        continue;
      }
      if (p1 != 0) return true;  // unmatched leading coefficient
    }
    dvar[i] = static_cast<int>(nvars);
    nvars += m;
  }

  std::vector<LinEq> eqs;
  for (int i = 0; i < 2; ++i) {
    const MatchTask& T = tasks[i];
    const int kk = static_cast<int>(T.kG);
    Fe g1q = ctx.frob(g1, kk), g3q = ctx.frob(g3, kk);
    Fe U = static_cast<Fe>(ctx.mul(T.gq.a, g1q) ^ ctx.mul(T.gq.c, g3q));
    Fe V = static_cast<Fe>(ctx.mul(T.gq.b, g1q) ^ ctx.mul(T.gq.d, g3q));
    Fe W = static_cast<Fe>(ctx.mul(T.gq.a, g1) ^ ctx.mul(T.gq.b, g3));
    Fe X = static_cast<Fe>(ctx.mul(T.gq.c, g1) ^ ctx.mul(T.gq.d, g3));
    const int tt = static_cast<int>(T.tau);
    if (T.k0) {
      LinEq eq;
      eq.cols.push_back({static_cast<Fe>(U ^ W), 0, 0});
      eq.cols.push_back({static_cast<Fe>(V ^ X), m, 0});
      eq.cols.push_back({ctx.frob(static_cast<Fe>(T.fq.b ^ T.fq.c), tt),
                         static_cast<unsigned>(dvar[i]), 0});
      eqs.push_back(eq);
      continue;
    }
    Fe tb = ctx.frob(T.swap_mid ? T.fq.c : T.fq.b, tt);
    Fe tc = ctx.frob(T.swap_mid ? T.fq.b : T.fq.c, tt);
    LinEq alpha, beta;
    alpha.cols.push_back({U, 0, 0});
    alpha.cols.push_back({V, m, 0});
    beta.cols.push_back({W, 0, T.kG});
    beta.cols.push_back({X, m, T.kG});
    if (dsolved[i]) {
      alpha.rhs = ctx.mul(dpre[i], tb);
      beta.rhs = ctx.mul(dpre[i], tc);
    } else {
      alpha.cols.push_back({tb, static_cast<unsigned>(dvar[i]), 0});
      beta.cols.push_back({tc, static_cast<unsigned>(dvar[i]), 0});
    }
    eqs.push_back(alpha);
    eqs.push_back(beta);
  }

  F2System64 sys(nvars);
  for (const auto& eq : eqs) {
    // precompute field value contributed by each F_2 variable bit
    std::vector<std::pair<unsigned, Fe>> cols;
    for (const auto& c : eq.cols)
      for (unsigned b = 0; b < m; ++b) {
        Fe v = ctx.mul(c.coef, ctx.frob(static_cast<Fe>(1u << b), static_cast<int>(c.e)));
        if (v != 0) cols.emplace_back(c.base + b, v);
      }
    for (unsigned bit = 0; bit < m; ++bit) {
      std::uint64_t lhs = 0;
      for (const auto& [var, v] : cols)
        if ((v >> bit) & 1u) lhs |= 1ull << var;
      sys.add(lhs, (eq.rhs >> bit) & 1u);
    }
  }

  std::uint64_t particular = 0;
  std::vector<std::uint64_t> kernel;
  if (!sys.solve(particular, kernel)) return true;

  const unsigned dim = static_cast<unsigned>(kernel.size());
  bool capped = dim >= 63 || (1ull << dim) > cap;
  std::uint64_t total = capped ? cap : (1ull << dim);
  const std::uint64_t mmask = (1ull << m) - 1;

  for (std::uint64_t s = 0; s < total; ++s) {
    std::uint64_t vec = particular;
    for (unsigned b = 0; b < dim; ++b)
      if ((s >> b) & 1u) vec ^= kernel[b];
    PointCandidate cand;
    cand.g2 = static_cast<Fe>(vec & mmask);
    cand.g4 = static_cast<Fe>((vec >> m) & mmask);
    bool ok = true;
    for (int i = 0; i < 2 && ok; ++i) {
      cand.d[i] = dsolved[i] ? dpre[i] : static_cast<Fe>((vec >> dvar[i]) & mmask);
      ok = cand.d[i] != 0;
    }
    if (!ok) continue;
    if ((ctx.mul(g1, cand.g4) ^ ctx.mul(cand.g2, g3)) == 0) continue;
    for (int i = 0; i < 2 && ok; ++i) {
      const MatchTask& T = tasks[i];
      const int tt = static_cast<int>(T.tau);
      Quad p = transform_quad(ctx, T.kG, T.gq, g1, cand.g2, g3, cand.g4);
      if (T.k0) {
        ok = static_cast<Fe>(p.b ^ p.c) ==
             ctx.mul(cand.d[i], ctx.frob(static_cast<Fe>(T.fq.b ^ T.fq.c), tt));
        continue;
      }
      ok = p.a == ctx.mul(cand.d[i], ctx.frob(T.fq.a, tt)) &&
           p.d == ctx.mul(cand.d[i], ctx.frob(T.fq.d, tt)) &&
           p.b == ctx.mul(cand.d[i], ctx.frob(T.swap_mid ? T.fq.c : T.fq.b, tt)) &&
           p.c == ctx.mul(cand.d[i], ctx.frob(T.swap_mid ? T.fq.b : T.fq.c, tt));
    }
    if (ok) out.push_back(cand);
  }
  return !capped;
}

ELMap assemble_witness(const BiprojectivePair& f, const std::array<MatchTask, 2>& tasks,
                       int branch, unsigned t, Fe g1, Fe g3, const PointCandidate& cand) {
  const FieldCtx& ctx = *f.ctx;
  const unsigned m = ctx.m();
  ELMap e;
  e.ctx = f.ctx;
  e.M[0] = lin_canon(ctx, {{g1, t}});
  e.M[1] = lin_canon(ctx, {{cand.g2, t}});
  e.M[2] = lin_canon(ctx, {{g3, t}});
  e.M[3] = lin_canon(ctx, {{cand.g4, t}});
  const int lidx[2][2] = {{0, 3}, {1, 2}};
  for (int i = 0; i < 2; ++i) {
    const MatchTask& T = tasks[i];
    e.L[lidx[branch][i]] = {{cand.d[i], T.tau}};
    if (T.k0) {
      const int tt = static_cast<int>(T.tau);
      Quad p = transform_quad(ctx, T.kG, T.gq, g1, cand.g2, g3, cand.g4);
      Fe nx = static_cast<Fe>(p.a ^ ctx.mul(cand.d[i], ctx.frob(T.fq.a, tt)));
      Fe ny = static_cast<Fe>(p.d ^ ctx.mul(cand.d[i], ctx.frob(T.fq.d, tt)));
      e.N[2 * i] = lin_canon(ctx, {{nx, (t + 1) % m}});
      e.N[2 * i + 1] = lin_canon(ctx, {{ny, (t + 1) % m}});
    }
  }
  return e;
}

}  // namespace

std::string verdict_name(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::Equivalent: return "equivalent";
    case EquivVerdict::ExponentFilter: return "exponent-filter";
    case EquivVerdict::CoefficientObstruction: return "coefficient-obstruction";
  }
  return "?";
}

EquivResult el_witness_search(const BiprojectivePair& f, const BiprojectivePair& g,
                              std::uint64_t cap) {
  const FieldCtx& ctx = *f.ctx;
  const unsigned m = ctx.m();
  if (g.m() != m) throw DomainError("field size mismatch");
  if (m > 16) throw TooLarge("witness search limited to m <= 16");
  const Fe card = ctx.card();

  EquivResult res;
  bool any_shape = false;
  bool exhaustive = true;

  for (unsigned t = 0; t < m; ++t)
    for (int branch = 0; branch < 2; ++branch) {
      // branch 0: component i of G matches component i of F (L diagonal);
      // branch 1: components are crossed (L antidiagonal)
      auto opts0 = branch == 0 ? task_options(m, g.k, g.f, f.k, f.f, t)
                               : task_options(m, g.k, g.f, f.l, f.g, t);
      auto opts1 = branch == 0 ? task_options(m, g.l, g.g, f.l, f.g, t)
                               : task_options(m, g.l, g.g, f.k, f.f, t);
      for (const auto& t0 : opts0)
        for (const auto& t1 : opts1) {
          any_shape = true;
          std::array<MatchTask, 2> tasks = {t0, t1};
          // (g1, g3) scanned up to the diagonal scalar maps that fix F
          for (Fe pt = 0; pt <= card; ++pt) {
            Fe g1 = pt < card ? 1 : 0;
            Fe g3 = pt < card ? pt : 1;
            std::vector<PointCandidate> cands;
            if (!solve_point(ctx, tasks, g1, g3, cap, cands)) exhaustive = false;
            for (const auto& cand : cands) {
              ELMap e = assemble_witness(f, tasks, branch, t, g1, g3, cand);
              if (!el_invertible(e)) continue;
              if (verify_el_witness(f, g, e)) {
                res.verdict = EquivVerdict::Equivalent;
                res.witness = e;
                res.exhaustive = true;
                return res;
              }
            }
          }
        }
    }

  res.verdict = any_shape ? EquivVerdict::CoefficientObstruction : EquivVerdict::ExponentFilter;
  res.exhaustive = exhaustive;
  return res;
}

bool source_preconditions_ok(const BiprojectivePair& f) {
  const unsigned m = f.m();
  if (m <= 2 || m == 6) return false;
  unsigned k = f.k % m, l = f.l % m;
  if (m % 2 == 0 && (k == m / 2 || l == m / 2)) return false;
  if (k == l || (k + l) % m == 0) return false;
  return true;
}

void require_source_preconditions(const BiprojectivePair& f) {
  const unsigned m = f.m();
  if (m <= 2) throw PreconditionViolated("field too small for the reduction");
  if (m == 6) throw PreconditionViolated("2^6 - 1 has no primitive prime divisor");
  unsigned k = f.k % m, l = f.l % m;
  if (m % 2 == 0 && (k == m / 2 || l == m / 2))
    throw PreconditionViolated("component exponent equals m/2");
  if (k == l || (k + l) % m == 0)
    throw PreconditionViolated("component exponents coincide up to sign");
}

EquivResult restricted_equiv(const BiprojectivePair& f, const BiprojectivePair& g,
                             std::uint64_t cap) {
  require_source_preconditions(f);
  return el_witness_search(f, g, cap);
}

// ---------------------------------------------------------------------------
// centralizer

namespace {

Fe find_generator(const FieldCtx& ctx) {
  const std::uint64_t n = ctx.order();
  std::vector<std::uint64_t> primes;
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= r; ++p)
    if (r % p == 0) {
      primes.push_back(p);
      while (r % p == 0) r /= p;
    }
  if (r > 1) primes.push_back(r);
  for (Fe g = 2; g < ctx.card(); ++g) {
    bool full = true;
    for (std::uint64_t p : primes)
      if (ctx.pow(g, n / p) == 1) {
        full = false;
        break;
      }
    if (full) return g;
  }
  return 1;
}

bool el_commute(const ELMap& a, const ELMap& b) {
  return serialize_elmap(el_compose(a, b)) == serialize_elmap(el_compose(b, a));
}

}  // namespace

CentralizerReport centralizer_search(const BiprojectivePair& f, std::uint64_t cap) {
  const FieldCtx& ctx = *f.ctx;
  const unsigned m = ctx.m();
  if (m > 8) throw TooLarge("centralizer scan limited to m <= 8");
  const Fe card = ctx.card();

  // Self-maps of the graph must also commute with the scalar subgroup piece
  // whose order is the full power of the primitive prime divisor of 2^m - 1
  // (with the whole scalar subgroup when no such prime exists). This cuts
  // away Frobenius twists that fix instances with subfield coefficients.
  Fe gen = find_generator(ctx);
  Fe sylow = gen;
  if (has_two_primitive_divisor(m))
    sylow = ctx.pow(gen, ctx.order() / two_primitive_divisor(m).p_part);
  const ELMap z_gen = z_subgroup_map(f, sylow);

  CentralizerReport rep;
  std::set<std::string> seen;
  for (unsigned t = 0; t < m; ++t)
    for (int branch = 0; branch < 2; ++branch) {
      auto opts0 = branch == 0 ? task_options(m, f.k, f.f, f.k, f.f, t)
                               : task_options(m, f.k, f.f, f.l, f.g, t);
      auto opts1 = branch == 0 ? task_options(m, f.l, f.g, f.l, f.g, t)
                               : task_options(m, f.l, f.g, f.k, f.f, t);
      for (const auto& t0 : opts0)
        for (const auto& t1 : opts1) {
          std::array<MatchTask, 2> tasks = {t0, t1};
          for (Fe g1 = 0; g1 < card; ++g1)
            for (Fe g3 = 0; g3 < card; ++g3) {
              if (g1 == 0 && g3 == 0) continue;
              std::vector<PointCandidate> cands;
              if (!solve_point(ctx, tasks, g1, g3, cap, cands))
                throw TooLarge("centralizer solution space exceeded the cap");
              for (const auto& cand : cands) {
                ELMap e = assemble_witness(f, tasks, branch, t, g1, g3, cand);
                if (!el_invertible(e) || !verify_el_witness(f, f, e)) continue;
                if (!seen.insert(serialize_elmap(e)).second) continue;
                if (!el_commute(e, z_gen)) continue;
                ++rep.size;
                if (cand.g2 == 0 && g3 == 0) {
                  Fe w = ctx.div(cand.g4, g1);
                  if (w == 1)
                    ++rep.diag_scalar;
                  else if (ctx.mul(w, ctx.mul(w, w)) == 1)
                    ++rep.diag_twisted;
                  else
                    ++rep.other_count;
                } else if (g1 == 0 && cand.g4 == 0) {
                  ++rep.anti_count;
                } else {
                  ++rep.other_count;
                }
              }
            }
        }
    }

  rep.index = rep.size / (card - 1);
  if (has_two_primitive_divisor(m)) {
    rep.has_prime = true;
    rep.prime = two_primitive_divisor(m).p;
    rep.condition_c = rep.index % rep.prime != 0;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Carlet instances as exponent-0 Zhou-Pott shapes

CarletTransport carlet_to_zp(const FamilyInstance& inst) {
  if (inst.family != Family::Carlet) throw DomainError("input is not a Carlet instance");
  const FieldCtxPtr& ctxp = inst.pair.ctx;
  const FieldCtx& ctx = *ctxp;
  const unsigned m = ctx.m();
  if (m % 2 != 0) throw ConditionViolated("carlet-to-zp.m_even");
  const unsigned k = inst.pair.l;  // exponent of the quadratic component
  const Quad gq = inst.pair.g;
  const Fe card = ctx.card();
  const Fe u0 = ctx.least_noncube();

  for (Fe c1 = 0; c1 < card; ++c1)
    for (Fe c3 = 0; c3 < card; ++c3) {
      if (c1 == 0 && c3 == 0) continue;
      Fe d2 = eval_quad(ctx, k, gq, c1, c3);
      if (d2 == 0) continue;
      // kill both middle coefficients, then demand g(c2, c4) = d2 u0
      const int kk = static_cast<int>(k);
      Fe c1q = ctx.frob(c1, kk), c3q = ctx.frob(c3, kk);
      Fe U = static_cast<Fe>(ctx.mul(gq.a, c1q) ^ ctx.mul(gq.c, c3q));
      Fe V = static_cast<Fe>(ctx.mul(gq.b, c1q) ^ ctx.mul(gq.d, c3q));
      Fe W = static_cast<Fe>(ctx.mul(gq.a, c1) ^ ctx.mul(gq.b, c3));
      Fe X = static_cast<Fe>(ctx.mul(gq.c, c1) ^ ctx.mul(gq.d, c3));
      F2System64 sys(2 * m);
      for (unsigned bit = 0; bit < m; ++bit) {
        std::uint64_t la = 0, lb = 0;
        for (unsigned b = 0; b < m; ++b) {
          Fe eb = static_cast<Fe>(1u << b);
          if ((ctx.mul(U, eb) >> bit) & 1u) la |= 1ull << b;
          if ((ctx.mul(V, eb) >> bit) & 1u) la |= 1ull << (m + b);
          if ((ctx.mul(W, ctx.frob(eb, kk)) >> bit) & 1u) lb |= 1ull << b;
          if ((ctx.mul(X, ctx.frob(eb, kk)) >> bit) & 1u) lb |= 1ull << (m + b);
        }
        sys.add(la, 0);
        sys.add(lb, 0);
      }
      std::uint64_t particular = 0;
      std::vector<std::uint64_t> kernel;
      if (!sys.solve(particular, kernel)) continue;
      const unsigned dim = static_cast<unsigned>(kernel.size());
      if (dim > 20) throw TooLarge("transport solution space too large");
      const std::uint64_t mmask = (1ull << m) - 1;
      for (std::uint64_t s = 0; s < (1ull << dim); ++s) {
        std::uint64_t vec = particular;
        for (unsigned b = 0; b < dim; ++b)
          if ((s >> b) & 1u) vec ^= kernel[b];
        Fe c2 = static_cast<Fe>(vec & mmask), c4 = static_cast<Fe>((vec >> m) & mmask);
        Fe det = static_cast<Fe>(ctx.mul(c1, c4) ^ ctx.mul(c2, c3));
        if (det == 0) continue;
        if (eval_quad(ctx, k, gq, c2, c4) != ctx.mul(d2, u0)) continue;

        FamilyParams params;
        params.k = inst.params.k;
        params.j = 0;
        params.d = u0;
        CarletTransport tr{make_family(ctxp, Family::ZhouPott, params), {}};
        ELMap& e = tr.witness;
        e.ctx = ctxp;
        e.M[0] = lin_canon(ctx, {{c1, 0}});
        e.M[1] = lin_canon(ctx, {{c2, 0}});
        e.M[2] = lin_canon(ctx, {{c3, 0}});
        e.M[3] = lin_canon(ctx, {{c4, 0}});
        e.L[1] = {{det, 0}};
        e.L[2] = {{d2, 0}};
        e.N[0] = lin_canon(ctx, {{ctx.mul(c1, c3), 1}});
        e.N[1] = lin_canon(ctx, {{ctx.mul(c2, c4), 1}});
        if (!verify_el_witness(tr.zp.pair, inst.pair, e))
          throw DomainError("transport witness failed verification");
        return tr;
      }
    }
  throw DomainError("no transport found; input is not in the expected orbit");
}

// ---------------------------------------------------------------------------
// F4 canonical form

namespace {

Fe solve_norm_q1(const FieldCtx& ctx, unsigned k, Fe target) {
  // smallest rho with rho^(2^k + 1) = target
  const std::uint64_t e = (1ull << k) + 1;
  for (Fe rho = 1; rho < ctx.card(); ++rho)
    if (ctx.pow(rho, e) == target) return rho;
  throw DomainError("norm equation has no solution");
}

struct F4Move {
  Fe to = 0;
  unsigned t = 0;
  bool anti = false;
  Fe scale = 0;  // rho for diagonal moves, sigma for antidiagonal ones
};

// target a reachable from source move.to at fixed (k, B); witness maps the
// graph of (k, B, move.to) onto the graph of (k, B, from)
ELMap f4_move_witness(const FieldCtxPtr& ctxp, unsigned k, Fe B, Fe from, const F4Move& mv) {
  const FieldCtx& ctx = *ctxp;
  const unsigned m = ctx.m();
  const unsigned lexp = (k + m / 2) % m;
  const std::uint64_t qq = 1ull << k;
  ELMap e;
  e.ctx = ctxp;
  if (!mv.anti) {
    e.M[0] = {{mv.scale, mv.t}};
    e.M[3] = {{1, mv.t}};
    e.L[0] = {{ctx.pow(mv.scale, qq + 1), mv.t}};
    e.L[3] = {{ctx.frob(mv.scale, static_cast<int>(lexp)), mv.t}};
  } else {
    e.M[1] = {{mv.scale, mv.t}};
    e.M[2] = {{1, mv.t}};
    e.L[0] = {{B, mv.t}};
    e.L[3] = {{ctx.mul(ctx.div(from, B), mv.scale), mv.t}};
  }
  return e;
}

// one move per twist exponent t: even t uses a diagonal map, odd t an
// antidiagonal one
F4Move f4_move(const FieldCtx& ctx, unsigned k, Fe B, Fe a, unsigned t) {
  const unsigned m = ctx.m();
  const std::uint64_t q = 1ull << k;
  const std::uint64_t Q = 1ull << (m / 2);
  const std::uint64_t e = q * (Q + 1);
  F4Move mv;
  mv.t = t;
  if (t % 2 == 0) {
    // rho^(q+1) = B^(1 - 2^t); new a = (a / rho^(q(Q+1)))^(2^(m-t))
    Fe target = ctx.div(1, ctx.frob(B, static_cast<int>(t)));
    target = ctx.mul(B, target);
    mv.anti = false;
    mv.scale = solve_norm_q1(ctx, k, target);
    mv.to = ctx.frob(ctx.div(a, ctx.pow(mv.scale, e)), static_cast<int>((m - t) % m));
  } else {
    // sigma^(q+1) = B^(1 + 2^t); new a = (sigma^(q(Q+1)) / a)^(2^(m-t))
    Fe target = ctx.mul(B, ctx.frob(B, static_cast<int>(t)));
    mv.anti = true;
    mv.scale = solve_norm_q1(ctx, k, target);
    mv.to = ctx.frob(ctx.div(ctx.pow(mv.scale, e), a), static_cast<int>((m - t) % m));
  }
  return mv;
}

}  // namespace

std::vector<Fe> f4_a_orbit(const FieldCtxPtr& ctx, unsigned k, Fe B, Fe a) {
  const unsigned m = ctx->m();
  std::map<Fe, bool> seen;
  std::queue<Fe> work;
  seen[a] = true;
  work.push(a);
  while (!work.empty()) {
    Fe cur = work.front();
    work.pop();
    for (unsigned t = 0; t < m; ++t) {
      Fe nxt = f4_move(*ctx, k, B, cur, t).to;
      if (!seen.count(nxt)) {
        seen[nxt] = true;
        work.push(nxt);
      }
    }
  }
  std::vector<Fe> orbit;
  for (const auto& [v, _] : seen) orbit.push_back(v);
  return orbit;
}

F4Canonical f4_canonicalize(const FamilyInstance& inst) {
  if (inst.family != Family::F4) throw DomainError("input is not an F4 instance");
  const FieldCtxPtr& ctxp = inst.pair.ctx;
  const FieldCtx& ctx = *ctxp;
  const unsigned m = ctx.m();
  const unsigned half = m / 2;
  const std::uint64_t Q = 1ull << half;

  unsigned k = inst.params.k;
  Fe B = inst.params.B;
  Fe a = inst.params.a;
  ELMap total = el_identity(ctxp);
  bool have = false;
  auto push = [&](const ELMap& w) { total = have ? el_compose(total, w) : w; have = true; };

  // exponent into [1, m/2)
  if (k > half) {
    const unsigned kk = m - k;
    ELMap w;
    w.ctx = ctxp;
    w.M[0] = w.M[3] = {{1, kk}};
    w.L[0] = {{1, 0}};
    w.L[3] = {{ctx.div(a, B), half}};
    push(w);
    a = ctx.div(ctx.pow(B, Q + 1), a);
    k = kk;
  }

  // B to the least non-cube
  const Fe B0 = ctx.least_noncube();
  if (B != B0) {
    unsigned t = ctx.is_cube(ctx.div(B, B0)) ? 0 : 1;
    Fe u = ctx.div(B, ctx.frob(B0, static_cast<int>(t)));
    Fe rho = solve_norm_q1(ctx, k, u);
    const std::uint64_t e = (1ull << k) * (Q + 1);
    ELMap w;
    w.ctx = ctxp;
    w.M[0] = {{rho, t}};
    w.M[3] = {{1, t}};
    w.L[0] = {{u, t}};
    w.L[3] = {{ctx.frob(rho, static_cast<int>((k + half) % m)), t}};
    push(w);
    a = ctx.frob(ctx.div(a, ctx.pow(rho, e)), static_cast<int>((m - t) % m));
    B = B0;
  }

  // a to the least value reachable at fixed (k, B): breadth-first search
  // recording the move that discovered each value, then walk back from the
  // minimum
  std::map<Fe, std::pair<Fe, F4Move>> parent;  // value -> (from, move)
  std::queue<Fe> work;
  parent[a] = {a, {}};
  work.push(a);
  while (!work.empty()) {
    Fe cur = work.front();
    work.pop();
    for (unsigned t = 0; t < m; ++t) {
      F4Move mv = f4_move(ctx, k, B, cur, t);
      if (!parent.count(mv.to)) {
        parent[mv.to] = {cur, mv};
        work.push(mv.to);
      }
    }
  }
  Fe amin = parent.begin()->first;
  // chain of witnesses from amin back up to a
  std::vector<std::pair<Fe, F4Move>> path;  // (from, move from -> to)
  for (Fe cur = amin; cur != a;) {
    const auto& [from, mv] = parent.at(cur);
    path.push_back({from, mv});
    cur = from;
  }
  // moves listed bottom-up: last entry moves a itself
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    push(f4_move_witness(ctxp, k, B, it->first, it->second));

  FamilyParams params;
  params.k = k;
  params.B = B;
  params.a = amin;
  F4Canonical out{make_family(ctxp, Family::F4, params), have ? total : el_identity(ctxp)};
  if (!verify_el_witness(out.canonical.pair, inst.pair, out.witness))
    throw DomainError("canonicalization witness failed verification");
  return out;
}

}  // namespace biapn
