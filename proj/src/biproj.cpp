#include "biapn/biproj.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "biapn/errors.hpp"
#include "biapn/f2linalg.hpp"
#include "biapn/util.hpp"

namespace biapn {

Fe eval_quad(const FieldCtx& ctx, unsigned k, const Quad& q, Fe x, Fe y) {
  Fe xq = ctx.frob(x, int(k)), yq = ctx.frob(y, int(k));
  Fe v = ctx.mul(q.a, ctx.mul(xq, x));
  v ^= ctx.mul(q.b, ctx.mul(xq, y));
  v ^= ctx.mul(q.c, ctx.mul(x, yq));
  v ^= ctx.mul(q.d, ctx.mul(yq, y));
  return v;
}

bool rootless_check(const FieldCtx& ctx, const ProjPoly& p) {
  if (p.p.a == 0) throw DomainError("rootless_check: leading coefficient is zero");
  for (std::uint64_t x = 0; x < ctx.card(); ++x) {
    Fe xe = Fe(x), xq = ctx.frob(xe, int(p.k));
    Fe v = ctx.mul(p.p.a, ctx.mul(xq, xe)) ^ ctx.mul(p.p.b, xq) ^
           ctx.mul(p.p.c, xe) ^ p.p.d;
    if (v == 0) return false;
  }
  return true;
}

std::uint64_t rootless_quad_count(const FieldCtx& ctx, unsigned k) {
  // Scaling all four coefficients by a unit preserves rootlessness, so count
  // monic quads and multiply by 2^m - 1.
  std::uint64_t monic = 0;
  for (std::uint64_t b = 0; b < ctx.card(); ++b)
    for (std::uint64_t c = 0; c < ctx.card(); ++c)
      for (std::uint64_t d = 0; d < ctx.card(); ++d)
        if (rootless_check(ctx, {k, {1, Fe(b), Fe(c), Fe(d)}})) ++monic;
  return monic * ctx.order();
}

std::uint64_t rootless_quad_count_formula(unsigned m) {
  if (m > 16) throw TooLarge("rootless_quad_count_formula: m > 16");
  std::uint64_t card = 1ull << m;
  return (card + 1) * card * (card - 1) * (card - 1) / 3;
}

std::string serialize_pair(const BiprojectivePair& p) {
  std::ostringstream os;
  os << "m=" << p.m() << " k=" << p.k << " l=" << p.l;
  os << " c0=" << to_hex(p.f.a) << ',' << to_hex(p.f.b) << ',' << to_hex(p.f.c)
     << ',' << to_hex(p.f.d);
  os << " c1=" << to_hex(p.g.a) << ',' << to_hex(p.g.b) << ',' << to_hex(p.g.c)
     << ',' << to_hex(p.g.d);
  os << " poly=" << to_hex(p.ctx->poly());
  return os.str();
}

namespace {

Quad parse_quad(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw DomainError("pair text: quad needs 4 coefficients");
  std::uint64_t v[4];
  for (int i = 0; i < 4; ++i)
    if (!parse_hex(parts[i], v[i])) throw DomainError("pair text: bad coefficient");
  return {Fe(v[0]), Fe(v[1]), Fe(v[2]), Fe(v[3])};
}

}  // namespace

BiprojectivePair parse_pair(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  bool have_m = false, have_k = false, have_l = false, have_c0 = false,
       have_c1 = false;
  unsigned m = 0, k = 0, l = 0;
  std::uint64_t poly = 0;
  Quad f, g;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw DomainError("pair text: expected key=value");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "m") {
      m = unsigned(std::stoul(val));
      have_m = true;
    } else if (key == "k") {
      k = unsigned(std::stoul(val));
      have_k = true;
    } else if (key == "l") {
      l = unsigned(std::stoul(val));
      have_l = true;
    } else if (key == "c0") {
      f = parse_quad(val);
      have_c0 = true;
    } else if (key == "c1") {
      g = parse_quad(val);
      have_c1 = true;
    } else if (key == "poly") {
      if (!parse_hex(val, poly)) throw DomainError("pair text: bad poly");
    } else {
      throw DomainError("pair text: unknown key " + key);
    }
  }
  if (!have_m || !have_k || !have_l || !have_c0 || !have_c1)
    throw DomainError("pair text: missing field");
  auto ctx = poly ? FieldCtx::make(m, poly) : FieldCtx::make(m);
  if (k >= m || l >= m) throw DomainError("pair text: exponent out of range");
  std::uint64_t cap = ctx->card();
  for (Fe v : {f.a, f.b, f.c, f.d, g.a, g.b, g.c, g.d})
    if (v >= cap) throw DomainError("pair text: coefficient out of range");
  return {ctx, k, l, f, g};
}

std::vector<P1Point> p1_points(const FieldCtx& ctx) {
  std::vector<P1Point> pts;
  pts.reserve(ctx.card() + 1);
  pts.push_back({true, 0});
  for (std::uint64_t u = 0; u < ctx.card(); ++u) pts.push_back({false, Fe(u)});
  return pts;
}

DeltaSystem build_delta_system(const BiprojectivePair& p, const P1Point& u) {
  const FieldCtx& ctx = *p.ctx;
  DeltaSystem ds;
  ds.m = p.m();
  auto direction = [&](const Quad& q, unsigned k) -> Quad {
    if (u.inf) return {q.a, q.a, q.c, q.b};
    Fe uq = ctx.frob(u.u, int(k));
    return {Fe(ctx.mul(q.a, u.u) ^ q.b), Fe(ctx.mul(q.a, uq) ^ q.c),
            Fe(ctx.mul(q.c, u.u) ^ q.d), Fe(ctx.mul(q.b, uq) ^ q.d)};
  };
  ds.fu = direction(p.f, p.k);
  ds.gu = direction(p.g, p.l);
  ds.images.resize(2 * ds.m);
  for (unsigned j = 0; j < ds.m; ++j) {
    Fe e = Fe(1) << j;
    Fe ef = ctx.frob(e, int(p.k)), eg = ctx.frob(e, int(p.l));
    std::uint64_t xf = ctx.mul(ds.fu.a, ef) ^ ctx.mul(ds.fu.b, e);
    std::uint64_t xg = ctx.mul(ds.gu.a, eg) ^ ctx.mul(ds.gu.b, e);
    ds.images[j] = xf | (xg << ds.m);
    std::uint64_t yf = ctx.mul(ds.fu.c, ef) ^ ctx.mul(ds.fu.d, e);
    std::uint64_t yg = ctx.mul(ds.gu.c, eg) ^ ctx.mul(ds.gu.d, e);
    ds.images[ds.m + j] = yf | (yg << ds.m);
  }
  return ds;
}

ProductElement DeltaSystem::apply(const FieldCtx&, Fe x, Fe y) const {
  std::uint64_t acc = 0;
  for (unsigned j = 0; j < m; ++j) {
    if (x >> j & 1) acc ^= images[j];
    if (y >> j & 1) acc ^= images[m + j];
  }
  return {Fe(acc & ((1ull << m) - 1)), Fe(acc >> m)};
}

unsigned DeltaSystem::kernel_dim() const {
  std::vector<std::uint64_t> rows(images);
  return 2 * m - rank64(rows);
}

// ---------------------------------------------------------------- families

const char* family_name(Family f) {
  switch (f) {
    case Family::Gold: return "gold";
    case Family::Carlet: return "carlet";
    case Family::Taniguchi: return "taniguchi";
    case Family::ZhouPott: return "zhou-pott";
    case Family::F1: return "f1";
    case Family::F2: return "f2";
    case Family::F4: return "f4";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
  if (s == "gold") return Family::Gold;
  if (s == "carlet") return Family::Carlet;
  if (s == "taniguchi") return Family::Taniguchi;
  if (s == "zhou-pott" || s == "zhoupott" || s == "zp") return Family::ZhouPott;
  if (s == "f1") return Family::F1;
  if (s == "f2") return Family::F2;
  if (s == "f4") return Family::F4;
  return std::nullopt;
}

namespace {

void normalize_params(const FieldCtx& ctx, Family fam, FamilyParams& par) {
  if (fam == Family::Gold && ctx.m() % 2 == 0 && par.a == 0) {
    for (std::uint64_t a = 1; a < ctx.card(); ++a)
      if (ctx.trace(Fe(a)) == 1) {
        par.a = Fe(a);
        break;
      }
  }
}

Fe gold_b(const FieldCtx& ctx, Fe a, unsigned k) {
  Fe b = 0;
  for (unsigned i = 0; i < k; ++i) b ^= ctx.frob(a, int(i));
  return b;
}

}  // namespace

std::vector<Fe> zhou_pott_forbidden(const FieldCtx& ctx, unsigned k, unsigned j) {
  std::vector<bool> seen(ctx.card(), false);
  for (std::uint64_t b = 0; b < ctx.card(); ++b) {
    Fe w = ctx.frob(Fe(b), int(k)) ^ Fe(b);
    if (w == 0) continue;
    Fe t = ctx.div(w, ctx.frob(w, int(j)));  // w^(1-r)
    for (std::uint64_t a = 0; a < ctx.card(); ++a) {
      Fe apow = ctx.mul(ctx.frob(Fe(a), int(k)), Fe(a));  // a^(q+1)
      seen[ctx.mul(apow, t)] = true;
    }
  }
  std::vector<Fe> out;
  for (std::uint64_t v = 0; v < ctx.card(); ++v)
    if (seen[v]) out.push_back(Fe(v));
  return out;
}

std::optional<std::string> family_violation(const FieldCtxPtr& ctx, Family fam,
                                            FamilyParams par) {
  const FieldCtx& F = *ctx;
  unsigned m = F.m(), k = par.k;
  normalize_params(F, fam, par);
  auto k_ok = [&](unsigned mult) {
    return k > 0 && k < m && std::gcd(std::uint64_t(mult) * k, std::uint64_t(m)) == 1;
  };
  switch (fam) {
    case Family::Gold:
      if (!k_ok(1)) return "gold.k_coprime";
      if (m % 2 == 0 && F.trace(par.a) != 1) return "gold.trace_a";
      return std::nullopt;
    case Family::Carlet:
      if (!k_ok(1)) return "carlet.k_coprime";
      if (!rootless_check(F, {k, {1, par.b, par.c, par.d}})) return "carlet.rootless";
      return std::nullopt;
    case Family::Taniguchi:
      if (!k_ok(1)) return "taniguchi.k_coprime";
      if (!rootless_check(F, {k, {1, 0, 1, par.d}})) return "taniguchi.rootless";
      return std::nullopt;
    case Family::ZhouPott: {
      if (m % 2 != 0) return "zhou-pott.m_even";
      if (!k_ok(1)) return "zhou-pott.k_coprime";
      if (par.j >= m) return "zhou-pott.j_range";
      for (std::uint64_t b = 0; b < F.card(); ++b) {
        Fe w = F.frob(Fe(b), int(k)) ^ Fe(b);
        if (w == 0) continue;
        Fe t = F.div(w, F.frob(w, int(par.j)));
        for (std::uint64_t a = 0; a < F.card(); ++a) {
          Fe apow = F.mul(F.frob(Fe(a), int(k)), Fe(a));
          if (F.mul(apow, t) == par.d) return "zhou-pott.d_admissible";
        }
      }
      return std::nullopt;
    }
    case Family::F1:
      if (k == 0 || k >= m || std::gcd(3ull * k, std::uint64_t(m)) != 1)
        return "f1.3k_coprime";
      return std::nullopt;
    case Family::F2:
      if (m % 2 == 0) return "f2.m_odd";
      if (k == 0 || k >= m || std::gcd(3ull * k, std::uint64_t(m)) != 1)
        return "f2.3k_coprime";
      return std::nullopt;
    case Family::F4: {
      if (m % 4 != 2) return "f4.m_mod4";
      if (!k_ok(1)) return "f4.k_coprime";
      if (par.B == 0 || F.is_cube(par.B)) return "f4.B_noncube";
      if (par.a == 0 || !F.in_subfield(par.a, m / 2)) return "f4.a_subfield";
      unsigned l = (k + m / 2) % m;
      Fe Bqr = F.mul(F.frob(par.B, int(k)), F.frob(par.B, int(l)));
      Fe aq1 = F.mul(F.frob(par.a, int(k)), par.a);
      if (Bqr == aq1) return "f4.B_a_power";
      return std::nullopt;
    }
  }
  return "unknown_family";
}

FamilyInstance make_family(const FieldCtxPtr& ctx, Family fam, FamilyParams par) {
  normalize_params(*ctx, fam, par);
  if (auto bad = family_violation(ctx, fam, par)) throw ConditionViolated(*bad);
  const FieldCtx& F = *ctx;
  unsigned m = F.m(), k = par.k;
  FamilyInstance inst;
  inst.family = fam;
  switch (fam) {
    case Family::Gold:
      if (m % 2) {
        inst.pair = {ctx, k, k, {0, 1, 1, 0}, {1, 0, 1, 1}};
      } else {
        Fe b = gold_b(F, par.a, k);
        par.b = b;
        inst.pair = {ctx, k, k, {1, 0, b, par.a}, {0, 1, 1, Fe(b ^ 1)}};
      }
      break;
    case Family::Carlet:
      inst.pair = {ctx, 0, k, {0, 1, 0, 0}, {1, par.b, par.c, par.d}};
      break;
    case Family::Taniguchi:
      inst.pair = {ctx, k, 2 * k % m, {1, 0, 1, par.d}, {0, 0, 1, 0}};
      break;
    case Family::ZhouPott:
      inst.pair = {ctx, k, par.j, {1, 0, 0, par.d}, {0, 0, 1, 0}};
      break;
    case Family::F1:
      inst.pair = {ctx, k, 2 * k % m, {1, 0, 1, 1}, {1, 1, 0, 1}};
      break;
    case Family::F2:
      inst.pair = {ctx, k, 3 * k % m, {1, 0, 1, 1}, {0, 1, 1, 0}};
      break;
    case Family::F4:
      inst.pair = {ctx, k, (k + m / 2) % m,
                   {1, 0, 0, par.B},
                   {0, 1, F.div(par.a, par.B), 0}};
      break;
  }
  inst.params = par;
  return inst;
}

std::string FamilyInstance::describe() const {
  std::ostringstream os;
  os << family_name(family) << " m=" << pair.m() << " k=" << params.k;
  switch (family) {
    case Family::Gold:
      if (pair.m() % 2 == 0) os << " a=" << to_hex(params.a);
      break;
    case Family::Carlet:
      os << " b=" << to_hex(params.b) << " c=" << to_hex(params.c)
         << " d=" << to_hex(params.d);
      break;
    case Family::Taniguchi:
      os << " d=" << to_hex(params.d);
      break;
    case Family::ZhouPott:
      os << " j=" << params.j << " d=" << to_hex(params.d);
      break;
    case Family::F1:
    case Family::F2:
      break;
    case Family::F4:
      os << " B=" << to_hex(params.B) << " a=" << to_hex(params.a);
      break;
  }
  return os.str();
}

}  // namespace biapn
