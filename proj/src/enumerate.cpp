#include "biapn/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "biapn/apn.hpp"
#include "biapn/equiv.hpp"
#include "biapn/errors.hpp"
#include "biapn/walsh.hpp"

namespace biapn {

namespace {

std::vector<unsigned> coprime_ks(unsigned m) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1) out.push_back(k);
  return out;
}

}  // namespace

std::vector<FamilyInstance> enumerate_family(const FieldCtxPtr& ctx, Family fam,
                                             const EnumeratePolicy& pol) {
  const FieldCtx& f = *ctx;
  const unsigned m = f.m();
  const Fe card = f.card();
  std::vector<FamilyInstance> out;
  auto admissible = [&](const FamilyParams& p) {
    return !family_violation(ctx, fam, p).has_value();
  };

  switch (fam) {
    case Family::Gold:
      for (unsigned k : coprime_ks(m)) {
        FamilyParams p;
        p.k = k;
        if (admissible(p)) out.push_back(make_family(ctx, fam, p));
      }
      break;

    case Family::Carlet:
      for (unsigned k : coprime_ks(m)) {
        if (pol.max_per_group == 0) {
          if (m > 7) throw TooLarge("full coefficient enumeration limited to m <= 7");
          for (Fe b = 0; b < card; ++b)
            for (Fe c = 0; c < card; ++c)
              for (Fe d = 0; d < card; ++d) {
                FamilyParams p;
                p.k = k;
                p.b = b;
                p.c = c;
                p.d = d;
                if (admissible(p)) out.push_back(make_family(ctx, fam, p));
              }
        } else {
          std::mt19937_64 rng(pol.seed ^ (static_cast<std::uint64_t>(m) << 32) ^ k);
          std::set<std::tuple<Fe, Fe, Fe>> chosen;
          std::uint64_t trials = 0;
          const std::uint64_t limit = pol.max_per_group * 4000 + 10000;
          while (chosen.size() < pol.max_per_group && trials++ < limit) {
            FamilyParams p;
            p.k = k;
            p.b = static_cast<Fe>(rng() % card);
            p.c = static_cast<Fe>(rng() % card);
            p.d = static_cast<Fe>(rng() % card);
            if (admissible(p)) chosen.insert({p.b, p.c, p.d});
          }
          for (const auto& [b, c, d] : chosen) {
            FamilyParams p;
            p.k = k;
            p.b = b;
            p.c = c;
            p.d = d;
            out.push_back(make_family(ctx, fam, p));
          }
        }
      }
      break;

    case Family::Taniguchi:
      for (unsigned k : coprime_ks(m)) {
        std::uint64_t taken = 0;
        for (Fe d = 0; d < card; ++d) {
          FamilyParams p;
          p.k = k;
          p.d = d;
          if (!admissible(p)) continue;
          out.push_back(make_family(ctx, fam, p));
          if (pol.max_per_group && ++taken >= pol.max_per_group) break;
        }
      }
      break;

    case Family::ZhouPott:
      if (m % 2 != 0) break;
      // j = 0 (r = 1) is accepted: the admissibility condition specializes to
      // d non-cube, and the resulting pairs absorb the even-m Carlet family.
      for (unsigned k : coprime_ks(m))
        for (unsigned j = 0; j < m; ++j) {
          std::uint64_t taken = 0;
          for (Fe d = 0; d < card; ++d) {
            FamilyParams p;
            p.k = k;
            p.j = j;
            p.d = d;
            if (!admissible(p)) continue;
            out.push_back(make_family(ctx, fam, p));
            if (pol.max_per_group && ++taken >= pol.max_per_group) break;
          }
        }
      break;

    case Family::F1:
    case Family::F2:
      if (fam == Family::F2 && m % 2 == 0) break;
      for (unsigned k = 1; k < m; ++k) {
        if (std::gcd(3 * k, m) != 1) continue;
        FamilyParams p;
        p.k = k;
        if (admissible(p)) out.push_back(make_family(ctx, fam, p));
      }
      break;

    case Family::F4:
      if (m % 4 != 2) break;
      for (unsigned k : coprime_ks(m))
        for (Fe B = 1; B < card; ++B) {
          if (f.is_cube(B)) continue;
          std::uint64_t taken = 0;
          for (Fe a = 1; a < card; ++a) {
            if (!f.in_subfield(a, m / 2)) continue;
            FamilyParams p;
            p.k = k;
            p.B = B;
            p.a = a;
            if (!admissible(p)) continue;
            out.push_back(make_family(ctx, fam, p));
            if (pol.max_per_group && ++taken >= pol.max_per_group) break;
          }
        }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// pairwise decisions

namespace {

bool condition_c_ok(const BiprojectivePair& f, std::uint64_t cap) {
  if (!has_two_primitive_divisor(f.m()) || f.m() > 8) return false;
  static std::map<std::string, CentralizerReport> cache;
  static std::mutex mu;
  const std::string key = serialize_pair(f);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.condition_c;
  }
  CentralizerReport rep = centralizer_search(f, cap);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, rep);
  return rep.condition_c;
}

}  // namespace

PairDecision decide_pair(const FamilyInstance& a, const FamilyInstance& b,
                         const EnumeratePolicy& pol) {
  const FamilyInstance* insts[2] = {&a, &b};
  for (int i = 0; i < 2; ++i) {
    const BiprojectivePair& src = insts[i]->pair;
    const BiprojectivePair& dst = insts[1 - i]->pair;
    EquivResult r = el_witness_search(src, dst, pol.witness_cap);
    if (r.verdict == EquivVerdict::Equivalent)
      return {"equivalent", "positive-witness", serialize_elmap(*r.witness)};
    if (r.exhaustive && source_preconditions_ok(src) && condition_c_ok(src, pol.witness_cap))
      return {"inequivalent", verdict_name(r.verdict), ""};
  }
  if (2 * a.pair.m() <= 14) {
    WalshSpectrum wa = extended_walsh_spectrum(*a.pair.ctx, to_truth_table(a.pair), 1);
    WalshSpectrum wb = extended_walsh_spectrum(*b.pair.ctx, to_truth_table(b.pair), 1);
    if (wa.abs_counts != wb.abs_counts) return {"inequivalent", "walsh-separation", ""};
  }
  return {"undecided", "undecided", ""};
}

// ---------------------------------------------------------------------------
// classification

namespace {

unsigned exp_min(unsigned e, unsigned m) {
  e %= m;
  return std::min(e, (m - e) % m);
}

std::pair<unsigned, unsigned> exponent_signature(const BiprojectivePair& p) {
  unsigned x = exp_min(p.k, p.m()), y = exp_min(p.l, p.m());
  if (x > y) std::swap(x, y);
  return {x, y};
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(b)] = find(a); }
};

}  // namespace

ClassifyReport classify(const std::vector<FamilyInstance>& instances,
                        const EnumeratePolicy& pol) {
  ClassifyReport rep;
  rep.instances = instances;
  const std::size_t n = instances.size();
  UnionFind uf(n);

  // F4 instances: group by canonical form, each merge backed by the two
  // verified canonicalization witnesses
  std::map<std::tuple<unsigned, Fe, Fe>, std::size_t> f4_groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (instances[i].family != Family::F4) continue;
    F4Canonical c = f4_canonicalize(instances[i]);
    auto key = std::make_tuple(c.canonical.params.k, c.canonical.params.B, c.canonical.params.a);
    auto [it, fresh] = f4_groups.emplace(key, i);
    if (!fresh) {
      uf.unite(it->second, i);
      rep.merges.push_back({it->second, i, "canonical-form", serialize_elmap(c.witness)});
    }
  }

  // everything else: decide against representatives with the same exponent
  // signature
  std::map<std::pair<unsigned, unsigned>, std::vector<std::size_t>> sig_reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (instances[i].family == Family::F4) continue;
    auto& reps = sig_reps[exponent_signature(instances[i].pair)];
    bool merged = false;
    std::uint64_t open = 0;
    for (std::size_t r : reps) {
      PairDecision d = decide_pair(instances[r], instances[i], pol);
      if (d.verdict == "equivalent") {
        uf.unite(r, i);
        rep.merges.push_back({r, i, d.justification, d.witness});
        merged = true;
        break;
      }
      if (d.verdict == "undecided") ++open;
    }
    if (!merged) {
      reps.push_back(i);
      rep.undecided_pairs += open;
    }
  }

  std::map<std::size_t, ClassifyReport::ClassInfo> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].members.push_back(i);
  for (auto& [root, info] : by_root) {
    info.representative = *std::min_element(info.members.begin(), info.members.end());
    rep.classes.push_back(info);
  }
  std::sort(rep.classes.begin(), rep.classes.end(),
            [](const auto& x, const auto& y) { return x.representative < y.representative; });
  return rep;
}

SweepReport cross_family_sweep(const std::vector<FamilyInstance>& reps,
                               const EnumeratePolicy& pol) {
  SweepReport out;
  out.reps = reps;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (reps[i].family == reps[j].family) continue;
      PairDecision d = decide_pair(reps[i], reps[j], pol);
      out.rows.push_back({i, j, d.verdict, d.justification, d.witness});
      if (d.verdict == "undecided") ++out.undecided;
    }
  return out;
}

}  // namespace biapn
