#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biapn/biproj.hpp"
#include "biapn/elmap.hpp"

namespace biapn {

// ---------------------------------------------------------------------------
// action of M^x x GL(2, M) on (q, 1)-forms:
//   (a, C) . f = a * f(c1 x + c2 y, c3 x + c4 y)

struct GGroupElement {
  Fe a = 1;
  Fe c1 = 1, c2 = 0, c3 = 0, c4 = 1;
};

// Coefficients of f(c1 x + c2 y, c3 x + c4 y) as a (2^k, 1)-form.
Quad transform_quad(const FieldCtx& ctx, unsigned k, const Quad& f,
                    Fe c1, Fe c2, Fe c3, Fe c4);
Quad g_action(const FieldCtx& ctx, unsigned k, const GGroupElement& g, const Quad& f);
std::uint64_t g_group_order(const FieldCtx& ctx);

struct OrbitInfo {
  std::uint64_t orbit_size = 0;
  std::uint64_t stabilizer_size = 0;
  std::uint64_t group_order = 0;
};
// Stabilizer by direct scan over GL(2, M) (m <= 8); orbit size by the
// orbit-stabilizer relation.
OrbitInfo orbit_and_stabilizer(const FieldCtx& ctx, unsigned k, const Quad& f);

// ---------------------------------------------------------------------------
// canonical diagonal self-maps of a pair: for a in M^x the map
//   (x, y) -> (a x, a y),  (u, v) -> (a^(q+1) u, a^(r+1) v)
// fixes the graph of any (q, r)-biprojective pair.

ELMap z_subgroup_map(const BiprojectivePair& p, Fe a);
bool z_subgroup_member(const BiprojectivePair& p, Fe a);

// ---------------------------------------------------------------------------
// witness search for extended linear equivalence restricted to block maps
// with monomial entries: G(M(x, y)) = N(x, y) + L(F(x, y)) where every block
// of M, N, L is c x^(2^t).

enum class EquivVerdict {
  Equivalent,              // verified witness found
  ExponentFilter,          // no exponent-compatible shape exists
  CoefficientObstruction,  // shapes exist but every linear system is infeasible
};

std::string verdict_name(EquivVerdict v);

struct EquivResult {
  EquivVerdict verdict = EquivVerdict::CoefficientObstruction;
  std::optional<ELMap> witness;  // maps the graph of F onto the graph of G
  bool exhaustive = true;        // false if a solution space overflowed the cap
};

// Searches the restricted shape space; no structural preconditions checked.
EquivResult el_witness_search(const BiprojectivePair& f, const BiprojectivePair& g,
                              std::uint64_t cap = 4096);

// Preconditions under which a restricted no-witness answer certifies
// extended linear inequivalence for the source pair F. Throws
// PreconditionViolated when they fail.
void require_source_preconditions(const BiprojectivePair& f);
bool source_preconditions_ok(const BiprojectivePair& f);

EquivResult restricted_equiv(const BiprojectivePair& f, const BiprojectivePair& g,
                             std::uint64_t cap = 4096);

// ---------------------------------------------------------------------------
// centralizer of the Sylow piece of the scalar subgroup inside the self-maps
// of the graph of F: all invertible block maps (M, N, L) with
// F(M(x, y)) = N(x, y) + L(F(x, y)) that additionally commute with the
// scalar maps of order p^v, where p is the primitive prime divisor of
// 2^m - 1 and p^v its full power (the whole scalar subgroup when no such
// prime exists, e.g. m = 6).

struct CentralizerReport {
  std::uint64_t size = 0;       // number of distinct maps
  std::uint64_t index = 0;      // size / (2^m - 1)
  std::uint64_t diag_scalar = 0;   // M = (a, a) diagonal
  std::uint64_t diag_twisted = 0;  // M = (a, w a), w cube root of unity != 1
  std::uint64_t anti_count = 0;    // antidiagonal M
  std::uint64_t other_count = 0;   // anything else
  bool has_prime = false;       // a primitive prime divisor of 2^m - 1 exists
  std::uint64_t prime = 0;
  bool condition_c = false;     // prime exists and does not divide the index
};

CentralizerReport centralizer_search(const BiprojectivePair& f, std::uint64_t cap = 4096);

// ---------------------------------------------------------------------------
// explicit transports

// For m even, rewrites a Carlet instance [xy, g] as an instance of the
// Zhou-Pott shape [x^(q+1) + d y^(q+1), x y^(2^j)] with j = 0 and d a
// non-cube. The witness maps the graph of the output onto the graph of the
// input instance.
struct CarletTransport {
  FamilyInstance zp;
  ELMap witness;
};
CarletTransport carlet_to_zp(const FamilyInstance& inst);

// Canonical representative of an F4 instance under restricted equivalence:
// exponent flipped into [1, m/2), B reduced to the least non-cube, a reduced
// to the least value reachable by diagonal and antidiagonal monomial maps.
// The witness maps the graph of the canonical instance onto the instance's.
struct F4Canonical {
  FamilyInstance canonical;
  ELMap witness;
};
F4Canonical f4_canonicalize(const FamilyInstance& inst);
// Reachable a-parameters at fixed (k, B); sorted, contains a.
std::vector<Fe> f4_a_orbit(const FieldCtxPtr& ctx, unsigned k, Fe B, Fe a);

}  // namespace biapn
