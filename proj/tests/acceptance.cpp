// Release gate: eleven end-to-end checks over the library, one line each.
// Exit status is 0 only if every check passes.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "biapn/apn.hpp"
#include "biapn/biproj.hpp"
#include "biapn/elmap.hpp"
#include "biapn/enumerate.hpp"
#include "biapn/equiv.hpp"
#include "biapn/field.hpp"
#include "biapn/walsh.hpp"

using namespace biapn;
using clk = std::chrono::steady_clock;

namespace {

struct Gate {
  int failed = 0;

  void report(const char* id, const char* what, bool ok, clk::time_point t0,
              const std::string& detail) {
    double secs = std::chrono::duration<double>(clk::now() - t0).count();
    std::printf("[%s] %s %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, what,
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
};

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---- c1: every f4 instance passes both apn tests -------------------------

void c1_f4_apn(Gate& g) {
  auto t0 = clk::now();
  std::uint64_t both6 = 0, total6 = 0, rank10 = 0, total10 = 0;
  auto f46 = enumerate_family(FieldCtx::make(6), Family::F4);
  for (const auto& inst : f46) {
    ++total6;
    if (apn_naive(to_truth_table(inst.pair)).apn && apn_projective(inst.pair))
      ++both6;
  }
  auto f410 = enumerate_family(FieldCtx::make(10), Family::F4);
  std::set<unsigned> ks10;
  for (const auto& inst : f410) {
    ++total10;
    ks10.insert(inst.params.k);
    if (apn_projective(inst.pair)) ++rank10;
  }
  bool ok = total6 == 504 && both6 == total6 && total10 == 81840 &&
            rank10 == total10 && ks10 == std::set<unsigned>{1, 3, 7, 9};
  g.report("C01", "f4-apn-verification", ok, t0,
           fmt("m=6 both methods %llu/%llu, m=10 rank test %llu/%llu",
               (unsigned long long)both6, (unsigned long long)total6,
               (unsigned long long)rank10, (unsigned long long)total10));
}

// ---- c2: naive and rank verdicts agree across the catalog ----------------

void c2_method_agreement(Gate& g) {
  auto t0 = clk::now();
  std::uint64_t checked = 0, agreed = 0;
  for (unsigned m = 3; m <= 6; ++m) {
    auto ctx = FieldCtx::make(m);
    EnumeratePolicy pol;
    pol.max_per_group = m <= 5 ? 12 : 3;  // keep the n = 12 tables affordable
    for (Family fam : {Family::Gold, Family::Carlet, Family::Taniguchi,
                       Family::ZhouPott, Family::F1, Family::F2, Family::F4})
      for (const auto& inst : enumerate_family(ctx, fam, pol)) {
        ++checked;
        bool naive = apn_naive(to_truth_table(inst.pair)).apn;
        bool rank = apn_projective(inst.pair);
        if (naive == rank && naive) ++agreed;
      }
  }
  g.report("C02", "dual-method-agreement", checked > 0 && agreed == checked,
           t0, fmt("%llu catalog instances, verdicts agree on %llu",
                   (unsigned long long)checked, (unsigned long long)agreed));
}

// ---- c3: rootless censuses match the closed formula -----------------------

void c3_rootless_census(Gate& g) {
  auto t0 = clk::now();
  // values pinned by the closed formula (2^m+1) 2^m (2^m-1)^2 / 3 and
  // confirmed by the exhaustive scans below
  std::uint64_t want3 = 1176, want4 = 20400, want5 = 338272;
  bool ok = rootless_quad_count_formula(3) == want3 &&
            rootless_quad_count_formula(4) == want4 &&
            rootless_quad_count_formula(5) == want5;
  std::uint64_t got3 = rootless_quad_count(*FieldCtx::make(3), 1);
  std::uint64_t got4 = rootless_quad_count(*FieldCtx::make(4), 1);
  std::uint64_t got5 = rootless_quad_count(*FieldCtx::make(5), 1);
  ok = ok && got3 == want3 && got4 == want4 && got5 == want5;
  g.report("C03", "rootless-census", ok, t0,
           fmt("scans m=3,4,5 -> %llu, %llu, %llu", (unsigned long long)got3,
               (unsigned long long)got4, (unsigned long long)got5));
}

// ---- c4: orbit sizes and stabilizers of rootless forms --------------------

void c4_orbit_stabilizer(Gate& g) {
  auto t0 = clk::now();
  auto c3 = FieldCtx::make(3);
  Quad base3{};
  for (Fe d = 0; d < 8 && base3 == Quad{}; ++d)
    if (rootless_check(*c3, {1, {1, 0, 1, d}})) base3 = {1, 0, 1, d};
  auto info3 = orbit_and_stabilizer(*c3, 1, base3);
  auto c4 = FieldCtx::make(4);
  Fe u = c4->least_noncube();
  auto info4 = orbit_and_stabilizer(*c4, 1, Quad{1, 0, 0, u});
  bool ok = info3.stabilizer_size == 21 && info3.orbit_size == 1176 &&
            info4.stabilizer_size == 45 && info4.orbit_size == 20400;
  g.report("C04", "orbit-stabilizer", ok, t0,
           fmt("m=3 stab %llu orbit %llu, m=4 stab %llu orbit %llu",
               (unsigned long long)info3.stabilizer_size,
               (unsigned long long)info3.orbit_size,
               (unsigned long long)info4.stabilizer_size,
               (unsigned long long)info4.orbit_size));
}

// ---- c5: carlet-to-zhou-pott transport re-verifies on full graphs ---------

void c5_carlet_transport(Gate& g) {
  auto t0 = clk::now();
  auto ctx = FieldCtx::make(4);
  int verified = 0, attempted = 0;
  std::set<std::string> distinct;
  for (Fe b = 0; b < 16 && verified < 10; ++b)
    for (Fe c = 0; c < 16 && verified < 10; ++c)
      for (Fe d = 0; d < 16 && verified < 10; ++d) {
        FamilyParams par{.k = 1, .b = b, .c = c, .d = d};
        if (family_violation(ctx, Family::Carlet, par)) continue;
        auto inst = make_family(ctx, Family::Carlet, par);
        if (!distinct.insert(serialize_pair(inst.pair)).second) continue;
        ++attempted;
        auto tr = carlet_to_zp(inst);
        bool good = tr.zp.family == Family::ZhouPott && tr.zp.params.j == 0 &&
                    !ctx->is_cube(tr.zp.params.d) &&
                    verify_el_witness(tr.zp.pair, inst.pair, tr.witness) &&
                    is_graph_equiv(tr.zp.pair, inst.pair, tr.witness) &&
                    apply_el(tr.witness, graph_of(tr.zp.pair)) ==
                        graph_of(inst.pair);
        if (good) ++verified;
      }
  g.report("C05", "carlet-transport", verified >= 10, t0,
           fmt("%d/%d distinct m=4 instances transported and re-verified",
               verified, attempted));
}

// ---- c6: centralizer sets ---------------------------------------------------

void c6_centralizers(Gate& g) {
  auto t0 = clk::now();
  auto c5 = FieldCtx::make(5);
  auto c6 = FieldCtx::make(6);
  struct Want {
    const char* tag;
    BiprojectivePair pair;
    std::uint64_t size, index, ds, dt, anti, other;
  };
  std::vector<Want> table;
  table.push_back({"taniguchi@5",
                   make_family(c5, Family::Taniguchi, {.k = 1, .d = 1}).pair,
                   31, 1, 31, 0, 0, 0});
  table.push_back({"carlet@5",
                   make_family(c5, Family::Carlet,
                               {.k = 1, .b = 0, .c = 1, .d = 1})
                       .pair,
                   93, 3, 31, 0, 0, 62});
  table.push_back({"f1@5", make_family(c5, Family::F1, {.k = 1}).pair, 93, 3,
                   31, 0, 0, 62});
  table.push_back({"f2@5", make_family(c5, Family::F2, {.k = 1}).pair, 93, 3,
                   31, 0, 0, 62});
  table.push_back({"f4@6",
                   make_family(c6, Family::F4, {.k = 1, .a = 1, .B = 7}).pair,
                   189, 3, 63, 126, 0, 0});
  table.push_back({"zp@6",
                   make_family(c6, Family::ZhouPott, {.k = 1, .j = 2, .d = 2})
                       .pair,
                   189, 3, 63, 126, 0, 0});
  bool ok = true;
  std::string detail;
  for (const auto& w : table) {
    auto r = centralizer_search(w.pair);
    bool match = r.size == w.size && r.index == w.index &&
                 r.diag_scalar == w.ds && r.diag_twisted == w.dt &&
                 r.anti_count == w.anti && r.other_count == w.other;
    ok = ok && match;
    if (!detail.empty()) detail += ", ";
    detail += fmt("%s %llu/%llu%s", w.tag, (unsigned long long)r.size,
                  (unsigned long long)r.index, match ? "" : "(!)");
  }
  g.report("C06", "centralizer-sets", ok, t0, detail);
}

// ---- c7: scalar maps are graph automorphisms for all units -----------------

void c7_scalar_automorphisms(Gate& g) {
  auto t0 = clk::now();
  // each family at its smallest admissible field size
  struct Case {
    unsigned m;
    Family fam;
    FamilyParams par;
  };
  std::vector<Case> cases = {
      {3, Family::Gold, {.k = 1}},
      {3, Family::Carlet, {.k = 1, .b = 0, .c = 1, .d = 2}},
      {3, Family::Taniguchi, {.k = 1, .d = 2}},
      {4, Family::ZhouPott, {.k = 1, .j = 0, .d = 7}},
      {4, Family::F1, {.k = 1}},
      {5, Family::F2, {.k = 1}},
      {6, Family::F4, {.k = 1, .a = 1, .B = 7}},
  };
  std::uint64_t families_ok = 0;
  std::string detail;
  for (const auto& c : cases) {
    auto ctx = FieldCtx::make(c.m);
    if (family_violation(ctx, c.fam, c.par)) {
      detail += fmt("%s@%u invalid params; ", family_name(c.fam), c.m);
      continue;
    }
    auto inst = make_family(ctx, c.fam, c.par);
    bool all = true;
    for (Fe a = 1; a < ctx->card(); ++a) {
      auto e = z_subgroup_map(inst.pair, a);
      if (!z_subgroup_member(inst.pair, a) ||
          !verify_el_witness(inst.pair, inst.pair, e) || !el_invertible(e)) {
        all = false;
        break;
      }
    }
    if (all) ++families_ok;
  }
  g.report("C07", "scalar-automorphisms", families_ok == cases.size(), t0,
           detail + fmt("%llu/%zu families, all units checked",
                        (unsigned long long)families_ok, cases.size()));
}

// ---- c8: within-family class counts ----------------------------------------

void c8_class_counts(Gate& g) {
  auto t0 = clk::now();
  auto classes_of = [](unsigned m, Family fam, std::uint64_t cap) {
    EnumeratePolicy pol;
    pol.max_per_group = cap;
    auto insts = enumerate_family(FieldCtx::make(m), fam, pol);
    auto rep = classify(insts, pol);
    return std::pair<std::size_t, std::uint64_t>(rep.classes.size(),
                                                 rep.undecided_pairs);
  };
  auto [carlet5, u1] = classes_of(5, Family::Carlet, 50);
  auto [f1_5, u2] = classes_of(5, Family::F1, 0);
  auto [f2_5, u3] = classes_of(5, Family::F2, 0);
  auto [carlet7, u4] = classes_of(7, Family::Carlet, 12);
  auto [f1_7, u5] = classes_of(7, Family::F1, 0);
  auto [f2_7, u6] = classes_of(7, Family::F2, 0);
  auto t1 = clk::now();
  auto f410 = enumerate_family(FieldCtx::make(10), Family::F4);
  auto rep10 = classify(f410);
  std::size_t f4_10 = rep10.classes.size();
  bool ok = carlet5 == 2 && f1_5 == 2 && f2_5 == 2 && carlet7 == 3 &&
            f1_7 == 3 && f2_7 == 3 && f4_10 >= 6 && f4_10 <= 60 &&
            u1 + u2 + u3 + u4 + u5 + u6 + rep10.undecided_pairs == 0;
  (void)t1;
  g.report("C08", "within-family-classes", ok, t0,
           fmt("m=5 carlet/f1/f2 = %zu/%zu/%zu, m=7 = %zu/%zu/%zu, "
               "f4 m=10 = %zu in [6,60]",
               carlet5, f1_5, f2_5, carlet7, f1_7, f2_7, f4_10));
}

// ---- c9: cross-family separation at m = 5 ----------------------------------

void c9_cross_family(Gate& g) {
  auto t0 = clk::now();
  auto c5 = FieldCtx::make(5);
  std::vector<FamilyInstance> reps;
  reps.push_back(make_family(c5, Family::Gold, {.k = 1}));
  reps.push_back(make_family(c5, Family::Carlet, {.k = 1, .b = 0, .c = 1, .d = 1}));
  reps.push_back(make_family(c5, Family::Taniguchi, {.k = 1, .d = 1}));
  reps.push_back(make_family(c5, Family::F1, {.k = 1}));
  reps.push_back(make_family(c5, Family::F2, {.k = 1}));
  auto sweep = cross_family_sweep(reps);
  std::uint64_t inequivalent = 0, certified = 0;
  for (const auto& row : sweep.rows) {
    if (row.verdict == "inequivalent") ++inequivalent;
    if (row.justification == "exponent-filter" ||
        row.justification == "coefficient-obstruction")
      ++certified;
  }
  bool ok = sweep.rows.size() == 10 && inequivalent == 10 && certified == 10 &&
            sweep.undecided == 0;
  g.report("C09", "cross-family-separation", ok, t0,
           fmt("10 pairs: %llu inequivalent, %llu certified, %llu undecided",
               (unsigned long long)inequivalent,
               (unsigned long long)certified,
               (unsigned long long)sweep.undecided));
}

// ---- c10: walsh spectra ------------------------------------------------------

void c10_walsh(Gate& g) {
  auto t0 = clk::now();
  auto c3 = FieldCtx::make(3);
  auto gold = to_truth_table(make_family(c3, Family::Gold, {.k = 1}).pair);
  auto wg = extended_walsh_spectrum(*c3, gold);
  bool gold_ok = wg.abs_counts ==
                 std::map<std::uint64_t, std::uint64_t>{
                     {0, 1008}, {8, 2688}, {16, 336}};
  auto c6 = FieldCtx::make(6);
  auto f4 = to_truth_table(
      make_family(c6, Family::F4, {.k = 1, .a = 1, .B = 7}).pair);
  auto prof = image_profile(f4);
  auto wf4 = extended_walsh_spectrum(*c6, f4);
  bool f4_ok = prof.three_to_one && is_classical(wf4);
  auto c5 = FieldCtx::make(5);
  auto w1 = extended_walsh_spectrum(
      *c5, to_truth_table(make_family(c5, Family::F1, {.k = 1}).pair));
  auto w2 = extended_walsh_spectrum(
      *c5, to_truth_table(make_family(c5, Family::F2, {.k = 1}).pair));
  bool tail_ok = is_classical(w1) && is_classical(w2);
  g.report("C10", "walsh-spectra", gold_ok && f4_ok && tail_ok, t0,
           fmt("gold n=6 multiset %s, f4 n=12 3-to-1 classical %s, "
               "f1/f2 n=10 classical %s",
               gold_ok ? "exact" : "WRONG", f4_ok ? "yes" : "no",
               tail_ok ? "yes" : "no"));
}

// ---- c11: property suites at 10^4 samples per law ---------------------------

void c11_properties(Gate& g) {
  auto t0 = clk::now();
  std::mt19937_64 rng(0xacce97);
  std::uint64_t bad = 0;
  const int samples = 10000;

  {  // field axioms at m = 6 and m = 20
    auto small = FieldCtx::make(6);
    auto big = FieldCtx::make(20);
    for (int i = 0; i < samples; ++i) {
      for (const auto& ctx : {small, big}) {
        Fe a = static_cast<Fe>(rng() & (ctx->card() - 1));
        Fe b = static_cast<Fe>(rng() & (ctx->card() - 1));
        Fe c = static_cast<Fe>(rng() & (ctx->card() - 1));
        if (ctx->mul(a, b) != ctx->mul(b, a)) ++bad;
        if (ctx->mul(a, ctx->mul(b, c)) != ctx->mul(ctx->mul(a, b), c)) ++bad;
        if (ctx->mul(a, b ^ c) != (ctx->mul(a, b) ^ ctx->mul(a, c))) ++bad;
        if (a && ctx->mul(a, ctx->inv(a)) != 1) ++bad;
      }
    }
  }
  std::uint64_t bad_axioms = bad;

  {  // bidegree scaling law at m = 5
    auto ctx = FieldCtx::make(5);
    for (int i = 0; i < samples; ++i) {
      Quad q{static_cast<Fe>(rng() & 31), static_cast<Fe>(rng() & 31),
             static_cast<Fe>(rng() & 31), static_cast<Fe>(rng() & 31)};
      unsigned k = 1 + rng() % 4;
      Fe x = static_cast<Fe>(rng() & 31), y = static_cast<Fe>(rng() & 31);
      Fe c = static_cast<Fe>(rng() & 31);
      Fe lhs = eval_quad(*ctx, k, q, ctx->mul(c, x), ctx->mul(c, y));
      Fe scale = ctx->mul(ctx->frob(c, static_cast<int>(k)), c);
      if (lhs != ctx->mul(scale, eval_quad(*ctx, k, q, x, y))) ++bad;
    }
  }
  std::uint64_t bad_bidegree = bad - bad_axioms;

  {  // group action laws at m = 4
    auto ctx = FieldCtx::make(4);
    auto unit = [&] { return static_cast<Fe>(1 + rng() % 15); };
    auto elem = [&] { return static_cast<Fe>(rng() & 15); };
    for (int i = 0; i < samples; ++i) {
      Quad f{elem(), elem(), elem(), elem()};
      GGroupElement g1{unit(), elem(), elem(), elem(), elem()};
      GGroupElement g2{unit(), elem(), elem(), elem(), elem()};
      if (g_action(*ctx, 1, GGroupElement{}, f) != f) ++bad;
      Quad lhs = g_action(*ctx, 1, g1, g_action(*ctx, 1, g2, f));
      GGroupElement prod;
      prod.a = ctx->mul(g1.a, g2.a);
      prod.c1 = ctx->mul(g2.c1, g1.c1) ^ ctx->mul(g2.c2, g1.c3);
      prod.c2 = ctx->mul(g2.c1, g1.c2) ^ ctx->mul(g2.c2, g1.c4);
      prod.c3 = ctx->mul(g2.c3, g1.c1) ^ ctx->mul(g2.c4, g1.c3);
      prod.c4 = ctx->mul(g2.c3, g1.c2) ^ ctx->mul(g2.c4, g1.c4);
      if (lhs != g_action(*ctx, 1, prod, f)) ++bad;
    }
  }
  std::uint64_t bad_action = bad - bad_axioms - bad_bidegree;

  {  // parseval per component row at n = 8
    auto ctx = FieldCtx::make(4);
    auto t = to_truth_table(make_family(ctx, Family::Gold, {.k = 1}).pair);
    for (int i = 0; i < samples; ++i) {
      std::uint32_t b = 1 + rng() % 255;
      std::int64_t sum = 0;
      for (std::uint32_t a = 0; a < 256; ++a) {
        std::int64_t w = walsh_coefficient(*ctx, t, b, a);
        sum += w * w;
      }
      if (sum != 65536ll) ++bad;  // 2^(2n), n = 8
    }
  }
  std::uint64_t bad_parseval = bad - bad_axioms - bad_bidegree - bad_action;

  g.report("C11", "property-suites", bad == 0, t0,
           fmt("axioms/bidegree/action/parseval violations = "
               "%llu/%llu/%llu/%llu over %d samples each",
               (unsigned long long)bad_axioms,
               (unsigned long long)bad_bidegree,
               (unsigned long long)bad_action,
               (unsigned long long)bad_parseval, samples));
}

}  // namespace

int main() {
  Gate g;
  c1_f4_apn(g);
  c2_method_agreement(g);
  c3_rootless_census(g);
  c4_orbit_stabilizer(g);
  c5_carlet_transport(g);
  c6_centralizers(g);
  c7_scalar_automorphisms(g);
  c8_class_counts(g);
  c9_cross_family(g);
  c10_walsh(g);
  c11_properties(g);
  if (g.failed) {
    std::printf("gate: %d of 11 checks failed\n", g.failed);
    return 1;
  }
  std::printf("gate: all 11 checks passed\n");
  return 0;
}
