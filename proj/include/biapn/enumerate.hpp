#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biapn/biproj.hpp"

namespace biapn {

struct EnumeratePolicy {
  std::uint64_t max_per_group = 0;  // cap per parameter group, 0 = no cap
  std::uint64_t seed = 0x5eedbea7;  // sampling seed for capped enumeration
  std::uint64_t witness_cap = 4096;
};

// Deterministic list of instances of one family over the given field.
// Families whose conditions exclude the field size yield an empty list.
std::vector<FamilyInstance> enumerate_family(const FieldCtxPtr& ctx, Family fam,
                                             const EnumeratePolicy& pol = {});

// Outcome of comparing two instances under the restricted equivalence test.
struct PairDecision {
  std::string verdict;        // equivalent | inequivalent | undecided
  std::string justification;  // positive-witness | exponent-filter |
                              // coefficient-obstruction | walsh-separation |
                              // undecided
  std::string witness;        // serialized map for positive verdicts
};

PairDecision decide_pair(const FamilyInstance& a, const FamilyInstance& b,
                         const EnumeratePolicy& pol = {});

struct ClassifyReport {
  struct Edge {
    std::size_t a = 0, b = 0;
    std::string justification;
    std::string witness;
  };
  struct ClassInfo {
    std::size_t representative = 0;
    std::vector<std::size_t> members;
  };
  std::vector<FamilyInstance> instances;
  std::vector<ClassInfo> classes;
  std::vector<Edge> merges;
  std::uint64_t undecided_pairs = 0;  // representative pairs left open
};

// Groups instances into restricted-equivalence classes. Instances of the F4
// family are grouped through their canonical forms; everything else is
// decided pairwise against class representatives.
ClassifyReport classify(const std::vector<FamilyInstance>& instances,
                        const EnumeratePolicy& pol = {});

struct SweepRow {
  std::size_t left = 0, right = 0;  // indices into the representative list
  std::string verdict;
  std::string justification;
  std::string witness;
};

struct SweepReport {
  std::vector<FamilyInstance> reps;
  std::vector<SweepRow> rows;
  std::uint64_t undecided = 0;
};

// Pairwise decisions for representatives of distinct families.
SweepReport cross_family_sweep(const std::vector<FamilyInstance>& reps,
                               const EnumeratePolicy& pol = {});

}  // namespace biapn
