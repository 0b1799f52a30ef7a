// command line front end: field inspection, family construction, APN and
// Walsh checks, orbit/centralizer computations, equivalence decisions,
// enumeration and cross-family sweeps
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biapn/apn.hpp"
#include "biapn/biproj.hpp"
#include "biapn/enumerate.hpp"
#include "biapn/equiv.hpp"
#include "biapn/errors.hpp"
#include "biapn/report.hpp"
#include "biapn/util.hpp"
#include "biapn/walsh.hpp"

namespace {

using namespace biapn;
using nlohmann::json;

struct CommonOpts {
  unsigned m = 0;
  std::string poly_hex;
  std::string poly_config;
  bool as_json = false;
  bool as_csv = false;
  unsigned threads = 1;
};

struct InstanceOpts {
  std::string family;
  std::string pair_text;
  unsigned k = 0, j = 1;  // k = 0 means "not given"
  std::string a, b, c, d, B;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_threads = false) {
  cmd->add_option("--m", o.m, "field degree")->required();
  cmd->add_option("--poly", o.poly_hex, "defining polynomial (hex, no 0x)");
  cmd->add_option("--poly-config", o.poly_config, "polynomial config file");
  cmd->add_flag("--json", o.as_json, "JSON output");
  if (with_threads) cmd->add_option("--threads", o.threads, "worker threads");
}

void add_instance(CLI::App* cmd, InstanceOpts& o) {
  cmd->add_option("--family", o.family, "family name");
  cmd->add_option("--pair", o.pair_text, "serialized pair");
  cmd->add_option("--k", o.k, "main exponent");
  cmd->add_option("--j", o.j, "second exponent (zhou-pott)");
  cmd->add_option("--a", o.a, "coefficient a (hex)");
  cmd->add_option("--b", o.b, "coefficient b (hex)");
  cmd->add_option("--c", o.c, "coefficient c (hex)");
  cmd->add_option("--d", o.d, "coefficient d (hex)");
  cmd->add_option("--B", o.B, "coefficient B (hex)");
}

FieldCtxPtr make_ctx(const CommonOpts& o) {
  if (!o.poly_hex.empty()) {
    std::uint64_t poly = 0;
    if (!parse_hex(o.poly_hex, poly)) throw DomainError("bad polynomial: " + o.poly_hex);
    return FieldCtx::make(o.m, poly);
  }
  if (!o.poly_config.empty()) {
    auto cfg = load_poly_config(o.poly_config);
    auto it = cfg.find(o.m);
    if (it != cfg.end()) return FieldCtx::make(o.m, it->second);
  }
  return FieldCtx::make(o.m);
}

Fe parse_fe(const FieldCtx& ctx, const std::string& s, const char* what) {
  std::uint64_t v = 0;
  if (!parse_hex(s, v) || v >= ctx.card())
    throw DomainError(std::string("bad field element for ") + what + ": " + s);
  return static_cast<Fe>(v);
}

BiprojectivePair get_pair(const FieldCtxPtr& ctx, const InstanceOpts& o,
                          FamilyInstance* inst_out = nullptr) {
  if (!o.pair_text.empty()) return parse_pair(o.pair_text);
  if (o.family.empty()) throw DomainError("need --family or --pair");
  auto fam = family_from_name(o.family);
  if (!fam) throw DomainError("unknown family: " + o.family);
  FamilyParams p;
  p.k = o.k == 0 ? 1 : o.k;
  p.j = o.j;
  if (!o.a.empty()) p.a = parse_fe(*ctx, o.a, "a");
  if (!o.b.empty()) p.b = parse_fe(*ctx, o.b, "b");
  if (!o.c.empty()) p.c = parse_fe(*ctx, o.c, "c");
  if (!o.d.empty()) p.d = parse_fe(*ctx, o.d, "d");
  if (!o.B.empty()) p.B = parse_fe(*ctx, o.B, "B");
  FamilyInstance inst = make_family(ctx, *fam, p);
  if (inst_out) *inst_out = inst;
  return inst.pair;
}

std::vector<Family> parse_families(const std::string& list) {
  std::vector<Family> out;
  for (const auto& name : split(list, ',')) {
    auto fam = family_from_name(name);
    if (!fam) throw DomainError("unknown family: " + name);
    out.push_back(*fam);
  }
  return out;
}

int cmd_field_info(const CommonOpts& o) {
  FieldCtxPtr ctx = make_ctx(o);
  json j = field_info_json(*ctx);
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m=" << ctx->m() << " poly=" << to_hex(ctx->poly()) << " card=" << ctx->card()
              << "\n";
    if (j["two_primitive_prime"].is_null())
      std::cout << "two_primitive_prime: none\n";
    else
      std::cout << "two_primitive_prime: " << j["two_primitive_prime"] << "\n";
  }
  return 0;
}

int cmd_apn_check(const CommonOpts& o, const InstanceOpts& io, std::string method,
                  bool all_params) {
  FieldCtxPtr ctx = make_ctx(o);
  // the naive scan is quadratic in the table size; keep it for small fields
  // unless the caller asks for it explicitly
  if (method.empty()) method = 2 * o.m <= 14 ? "both" : "projective";

  if (all_params) {
    if (io.family.empty()) throw DomainError("--all-params needs --family");
    auto fam = family_from_name(io.family);
    if (!fam) throw DomainError("unknown family: " + io.family);
    std::vector<FamilyInstance> insts = enumerate_family(ctx, *fam);
    json arr = json::array();
    bool all_apn = true;
    for (const auto& inst : insts) {
      if (io.k != 0 && inst.params.k != io.k) continue;
      bool apn = true;
      if (method == "naive" || method == "both")
        apn = apn && apn_naive(to_truth_table(inst.pair)).apn;
      if (method == "projective" || method == "both")
        apn = apn && apn_projective(inst.pair, o.threads);
      all_apn = all_apn && apn;
      if (o.as_json)
        arr.push_back({{"params", inst.describe()}, {"apn", apn}});
      else
        std::cout << inst.describe() << " apn: " << (apn ? "yes" : "no") << "\n";
    }
    if (o.as_json) std::cout << arr.dump(2) << "\n";
    return all_apn ? 0 : 1;
  }

  BiprojectivePair pair = get_pair(ctx, io);
  json j = pair_json(pair);
  bool ran_naive = false, ran_proj = false, apn = true;
  if (method == "naive" || method == "both") {
    DiffSpectrum d = apn_naive(to_truth_table(pair));
    j["naive"] = diff_json(d);
    apn = apn && d.apn;
    ran_naive = true;
  }
  if (method == "projective" || method == "both") {
    bool ok = apn_projective(pair, o.threads);
    j["projective"] = ok;
    apn = apn && ok;
    ran_proj = true;
  }
  j["apn"] = apn;
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair: " << serialize_pair(pair) << "\n";
    std::cout << "apn: " << (apn ? "yes" : "no");
    if (ran_naive && ran_proj)
      std::cout << " (differential count and rank test agree)";
    std::cout << "\n";
  }
  return apn ? 0 : 1;
}

int cmd_walsh(const CommonOpts& o, const InstanceOpts& io) {
  FieldCtxPtr ctx = make_ctx(o);
  BiprojectivePair pair = get_pair(ctx, io);
  TruthTable t = to_truth_table(pair);
  WalshSpectrum w = extended_walsh_spectrum(*ctx, t, o.threads);
  ImageProfile prof = image_profile(t);
  if (o.as_json) {
    json j = pair_json(pair);
    j["walsh"] = walsh_json(w);
    j["image"] = image_json(prof);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair: " << serialize_pair(pair) << "\n";
    for (const auto& [v, c] : w.abs_counts) std::cout << "  |W|=" << v << " count=" << c << "\n";
    std::cout << "classical: " << (is_classical(w) ? "yes" : "no") << "\n";
    std::cout << "three_to_one: " << (prof.three_to_one ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_equiv(const CommonOpts& o, const std::string& left, const std::string& right,
              std::uint64_t cap, bool opportunistic) {
  BiprojectivePair f = parse_pair(left);
  BiprojectivePair g = parse_pair(right);
  EquivResult r = opportunistic ? el_witness_search(f, g, cap) : restricted_equiv(f, g, cap);
  if (o.as_json) {
    std::cout << equiv_json(r).dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
    if (r.witness) std::cout << "witness: " << serialize_elmap(*r.witness) << "\n";
    if (!r.exhaustive) std::cout << "note: solution spaces were capped\n";
  }
  return r.verdict == EquivVerdict::Equivalent ? 0 : 1;
}

int cmd_orbit(const CommonOpts& o, unsigned k, const std::string& quad_text) {
  FieldCtxPtr ctx = make_ctx(o);
  auto parts = split(quad_text, ',');
  if (parts.size() != 4) throw DomainError("--quad wants a,b,c,d in hex");
  Quad q{parse_fe(*ctx, parts[0], "a"), parse_fe(*ctx, parts[1], "b"),
         parse_fe(*ctx, parts[2], "c"), parse_fe(*ctx, parts[3], "d")};
  OrbitInfo info = orbit_and_stabilizer(*ctx, k, q);
  if (o.as_json)
    std::cout << orbit_json(info).dump(2) << "\n";
  else
    std::cout << "orbit=" << info.orbit_size << " stabilizer=" << info.stabilizer_size
              << " group=" << info.group_order << "\n";
  return 0;
}

int cmd_centralizer(const CommonOpts& o, const InstanceOpts& io, std::uint64_t cap) {
  FieldCtxPtr ctx = make_ctx(o);
  BiprojectivePair pair = get_pair(ctx, io);
  CentralizerReport rep = centralizer_search(pair, cap);
  if (o.as_json) {
    json j = pair_json(pair);
    j["centralizer"] = centralizer_json(rep);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "size=" << rep.size << " index=" << rep.index
              << " condition_c=" << (rep.condition_c ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_enumerate(const CommonOpts& o, const std::string& family, const EnumeratePolicy& pol,
                  bool run_classify) {
  FieldCtxPtr ctx = make_ctx(o);
  auto fam = family_from_name(family);
  if (!fam) throw DomainError("unknown family: " + family);
  auto instances = enumerate_family(ctx, *fam, pol);
  if (!run_classify) {
    if (o.as_json) {
      json j = json::array();
      for (const auto& inst : instances) j.push_back(family_json(inst));
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& inst : instances) std::cout << serialize_pair(inst.pair) << "\n";
      std::cout << "count: " << instances.size() << "\n";
    }
    return 0;
  }
  ClassifyReport rep = classify(instances, pol);
  if (o.as_json)
    std::cout << classify_json(rep).dump(2) << "\n";
  else if (o.as_csv)
    std::cout << classify_csv(rep);
  else
    std::cout << "instances=" << rep.instances.size() << " classes=" << rep.classes.size()
              << " undecided_pairs=" << rep.undecided_pairs << "\n";
  return rep.undecided_pairs == 0 ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::string& families, const EnumeratePolicy& pol) {
  FieldCtxPtr ctx = make_ctx(o);
  std::vector<Family> fams =
      families.empty() ? std::vector<Family>{Family::Gold, Family::Carlet, Family::Taniguchi,
                                             Family::ZhouPott, Family::F1, Family::F2, Family::F4}
                       : parse_families(families);
  std::vector<FamilyInstance> reps;
  for (Family fam : fams) {
    auto instances = enumerate_family(ctx, fam, pol);
    if (instances.empty()) continue;
    ClassifyReport rep = classify(instances, pol);
    for (const auto& c : rep.classes) reps.push_back(rep.instances[c.representative]);
  }
  SweepReport rep = cross_family_sweep(reps, pol);
  if (o.as_json)
    std::cout << sweep_json(rep).dump(2) << "\n";
  else if (o.as_csv)
    std::cout << sweep_csv(rep);
  else
    std::cout << "reps=" << rep.reps.size() << " rows=" << rep.rows.size()
              << " undecided=" << rep.undecided << "\n";
  return rep.undecided == 0 ? 0 : 1;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const char* what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };
  FieldCtxPtr f3 = FieldCtx::make(3);
  FamilyParams gp;
  gp.k = 1;
  FamilyInstance gold = make_family(f3, Family::Gold, gp);
  check(apn_projective(gold.pair), "gold m=3 rank test");
  check(apn_naive(to_truth_table(gold.pair)).apn, "gold m=3 differential count");
  check(z_subgroup_member(gold.pair, 3), "diagonal self-map m=3");
  OrbitInfo info = orbit_and_stabilizer(*f3, 1, Quad{1, 0, 1, 2});
  check(info.orbit_size == rootless_quad_count_formula(3), "orbit size matches count m=3");
  FieldCtxPtr f6 = FieldCtx::make(6);
  FamilyParams fp;
  fp.k = 1;
  fp.B = f6->least_noncube();
  fp.a = 0;
  for (Fe a = 1; a < f6->card(); ++a) {
    if (!f6->in_subfield(a, 3)) continue;
    FamilyParams t = fp;
    t.a = a;
    if (!family_violation(f6, Family::F4, t)) {
      fp.a = a;
      break;
    }
  }
  FamilyInstance f4 = make_family(f6, Family::F4, fp);
  check(apn_projective(f4.pair), "f4 m=6 rank test");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biprojective APN constructions and equivalence tools"};
  app.require_subcommand(1);

  CommonOpts fo, ao, wo, co, eo, so, oo, qo;
  InstanceOpts ai, wi, ci;
  std::string method;
  bool all_params = false;
  std::string left, right, families, family, quad_text;
  unsigned orbit_k = 1;
  std::uint64_t cap = 4096;
  bool opportunistic = false, run_classify = false;
  EnumeratePolicy pol;

  auto* c_info = app.add_subcommand("field-info", "field parameters and invariants");
  add_common(c_info, fo);

  auto* c_apn = app.add_subcommand("apn-check", "verify a pair is APN");
  add_common(c_apn, ao, true);
  add_instance(c_apn, ai);
  c_apn->add_option("--method", method,
                    "naive | projective | both (default: both up to n = 14)");
  c_apn->add_flag("--all-params", all_params, "check every instance of the family");

  auto* c_walsh = app.add_subcommand("walsh", "extended Walsh spectrum and image profile");
  add_common(c_walsh, wo, true);
  add_instance(c_walsh, wi);

  auto* c_equiv = app.add_subcommand("equiv", "restricted equivalence of two pairs");
  add_common(c_equiv, qo);
  c_equiv->add_option("--left", left, "serialized source pair")->required();
  c_equiv->add_option("--right", right, "serialized target pair")->required();
  c_equiv->add_option("--cap", cap, "solution enumeration cap");
  c_equiv->add_flag("--opportunistic", opportunistic, "skip precondition gate");

  auto* c_orbit = app.add_subcommand("orbit", "orbit and stabilizer of a form");
  add_common(c_orbit, oo);
  c_orbit->add_option("--k", orbit_k, "form exponent");
  c_orbit->add_option("--quad", quad_text, "form coefficients a,b,c,d (hex)")->required();

  auto* c_cent = app.add_subcommand("centralizer", "restricted self-equivalences of a pair");
  add_common(c_cent, co);
  add_instance(c_cent, ci);
  c_cent->add_option("--cap", cap, "solution enumeration cap");

  auto* c_enum = app.add_subcommand("enumerate", "list family instances");
  add_common(c_enum, eo);
  c_enum->add_option("--family", family, "family name")->required();
  c_enum->add_option("--max-per-group", pol.max_per_group, "cap per parameter group");
  c_enum->add_option("--seed", pol.seed, "sampling seed");
  c_enum->add_flag("--classify", run_classify, "group into equivalence classes");
  c_enum->add_flag("--csv", eo.as_csv, "CSV output");

  auto* c_sweep = app.add_subcommand("sweep", "cross-family equivalence sweep");
  add_common(c_sweep, so);
  c_sweep->add_option("--families", families, "comma separated family names");
  c_sweep->add_option("--max-per-group", pol.max_per_group, "cap per parameter group");
  c_sweep->add_option("--seed", pol.seed, "sampling seed");
  c_sweep->add_flag("--csv", so.as_csv, "CSV output");

  auto* c_self = app.add_subcommand("selftest", "quick built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_info->parsed()) return cmd_field_info(fo);
    if (c_apn->parsed()) return cmd_apn_check(ao, ai, method, all_params);
    if (c_walsh->parsed()) return cmd_walsh(wo, wi);
    if (c_equiv->parsed()) return cmd_equiv(qo, left, right, cap, opportunistic);
    if (c_orbit->parsed()) return cmd_orbit(oo, orbit_k, quad_text);
    if (c_cent->parsed()) return cmd_centralizer(co, ci, cap);
    if (c_enum->parsed()) return cmd_enumerate(eo, family, pol, run_classify);
    if (c_sweep->parsed()) return cmd_sweep(so, families, pol);
    if (c_self->parsed()) return cmd_selftest();
  } catch (const PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const ConditionViolated& e) {
    std::cerr << "condition violated: " << e.condition << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
