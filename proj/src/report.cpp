#include "biapn/report.hpp"

#include <sstream>

#include "biapn/util.hpp"

namespace biapn {

using nlohmann::json;

json field_info_json(const FieldCtx& ctx) {
  json j;
  j["m"] = ctx.m();
  j["poly"] = to_hex(ctx.poly());
  j["card"] = ctx.card();
  j["order"] = ctx.order();
  j["least_noncube"] = ctx.m() % 2 == 0 ? json(to_hex(ctx.least_noncube())) : json();
  if (has_two_primitive_divisor(ctx.m())) {
    TwoPrimitive tp = two_primitive_divisor(ctx.m());
    j["two_primitive_prime"] = tp.p;
    j["two_primitive_part"] = tp.p_part;
  } else {
    j["two_primitive_prime"] = nullptr;
  }
  return j;
}

json pair_json(const BiprojectivePair& p) {
  json j;
  j["m"] = p.m();
  j["k"] = p.k;
  j["l"] = p.l;
  j["pair"] = serialize_pair(p);
  return j;
}

json family_json(const FamilyInstance& inst) {
  json j = pair_json(inst.pair);
  j["family"] = family_name(inst.family);
  j["describe"] = inst.describe();
  json p;
  p["k"] = inst.params.k;
  p["j"] = inst.params.j;
  p["a"] = to_hex(inst.params.a);
  p["b"] = to_hex(inst.params.b);
  p["c"] = to_hex(inst.params.c);
  p["d"] = to_hex(inst.params.d);
  p["B"] = to_hex(inst.params.B);
  j["params"] = p;
  return j;
}

json diff_json(const DiffSpectrum& d) {
  json j;
  j["apn"] = d.apn;
  j["max_count"] = d.max_count;
  json counts = json::object();
  for (const auto& [k, v] : d.counts) counts[std::to_string(k)] = v;
  j["counts"] = counts;
  return j;
}

json walsh_json(const WalshSpectrum& w) {
  json j;
  j["n"] = w.n;
  j["classical"] = is_classical(w);
  json counts = json::object();
  for (const auto& [k, v] : w.abs_counts) counts[std::to_string(k)] = v;
  j["abs_counts"] = counts;
  return j;
}

json image_json(const ImageProfile& p) {
  json j;
  j["zero_preimages"] = p.zero_preimages;
  j["three_to_one"] = p.three_to_one;
  json hist = json::object();
  for (const auto& [k, v] : p.preimage_hist) hist[std::to_string(k)] = v;
  j["preimage_hist"] = hist;
  return j;
}

json orbit_json(const OrbitInfo& o) {
  json j;
  j["orbit_size"] = o.orbit_size;
  j["stabilizer_size"] = o.stabilizer_size;
  j["group_order"] = o.group_order;
  return j;
}

json centralizer_json(const CentralizerReport& c) {
  json j;
  j["size"] = c.size;
  j["index"] = c.index;
  j["diag_scalar"] = c.diag_scalar;
  j["diag_twisted"] = c.diag_twisted;
  j["anti"] = c.anti_count;
  j["other"] = c.other_count;
  j["prime"] = c.has_prime ? json(c.prime) : json();
  j["condition_c"] = c.condition_c;
  return j;
}

json equiv_json(const EquivResult& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["exhaustive"] = r.exhaustive;
  j["witness"] = r.witness ? json(serialize_elmap(*r.witness)) : json();
  return j;
}

json classify_json(const ClassifyReport& r) {
  json j;
  j["instances"] = r.instances.size();
  j["class_count"] = r.classes.size();
  j["undecided_pairs"] = r.undecided_pairs;
  json classes = json::array();
  for (const auto& c : r.classes) {
    json e;
    e["representative"] = family_json(r.instances[c.representative]);
    e["size"] = c.members.size();
    classes.push_back(e);
  }
  j["classes"] = classes;
  json merges = json::array();
  for (const auto& e : r.merges) {
    json row;
    row["a"] = e.a;
    row["b"] = e.b;
    row["justification"] = e.justification;
    row["witness"] = e.witness;
    merges.push_back(row);
  }
  j["merges"] = merges;
  return j;
}

json sweep_json(const SweepReport& r) {
  json j;
  j["reps"] = json::array();
  for (const auto& rep : r.reps) j["reps"].push_back(family_json(rep));
  j["undecided"] = r.undecided;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["left"] = row.left;
    e["right"] = row.right;
    e["verdict"] = row.verdict;
    e["justification"] = row.justification;
    e["witness"] = row.witness;
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string classify_csv(const ClassifyReport& r) {
  std::ostringstream os;
  os << "class,representative,size,family\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    const FamilyInstance& rep = r.instances[c.representative];
    os << i << ',' << csv_quote(serialize_pair(rep.pair)) << ',' << c.members.size() << ','
       << family_name(rep.family) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "left,right,left_family,right_family,verdict,justification\n";
  for (const auto& row : r.rows)
    os << row.left << ',' << row.right << ',' << family_name(r.reps[row.left].family) << ','
       << family_name(r.reps[row.right].family) << ',' << row.verdict << ','
       << row.justification << '\n';
  return os.str();
}

}  // namespace biapn
