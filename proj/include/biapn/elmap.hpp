#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "biapn/biproj.hpp"

namespace biapn {

// Linearized monomial c * x^(2^t) and sums thereof.
struct LinTerm {
  Fe c = 0;
  unsigned t = 0;
};
using LinPoly = std::vector<LinTerm>;

Fe eval_lin(const FieldCtx& ctx, const LinPoly& p, Fe x);
// Collapses duplicate exponents (mod m) and drops zero coefficients.
LinPoly lin_canon(const FieldCtx& ctx, const LinPoly& p);
LinPoly lin_add(const FieldCtx& ctx, const LinPoly& a, const LinPoly& b);
LinPoly lin_compose(const FieldCtx& ctx, const LinPoly& a, const LinPoly& b);  // a after b
bool lin_is_zero(const LinPoly& p);

// Extended linear map on M^2 x M^2 in block triangular form
//   (x, y, u, v) -> (M(x, y), N(x, y) + L(u, v)),
// each of M, N, L given as 2x2 blocks of linearized polynomials in row-major
// order (B[0] B[1]; B[2] B[3]).
struct ELMap {
  FieldCtxPtr ctx;
  std::array<LinPoly, 4> M, N, L;

  ProductElement apply_m(Fe x, Fe y) const;
  ProductElement apply_n(Fe x, Fe y) const;
  ProductElement apply_l(Fe u, Fe v) const;
};

ELMap el_identity(const FieldCtxPtr& ctx);
ELMap el_compose(const ELMap& a, const ELMap& b);  // a after b
// Both M and L invertible as F_2-linear maps on M^2.
bool el_invertible(const ELMap& e);

// One token per nonzero term: <block>:<c hex>:<t>, blocks M1..M4, N1..N4,
// L1..L4, tokens joined by ';'.
std::string serialize_elmap(const ELMap& e);
ELMap parse_elmap(const FieldCtxPtr& ctx, const std::string& text);

// Graph {(x, y, F(x, y))} as sorted codes x | y<<m | f<<2m | g<<3m.
struct GraphSet {
  unsigned n = 0;
  std::vector<std::uint64_t> codes;
  bool operator==(const GraphSet&) const = default;
};

GraphSet graph_of(const BiprojectivePair& p);  // TooLarge if n > 14
// Image of the graph under the map; throws NonInvertible for degenerate maps.
GraphSet apply_el(const ELMap& e, const GraphSet& g);
// Pointwise test G(M(x,y)) = N(x,y) + L(F(x,y)); TooLarge if n > 14.
bool is_graph_equiv(const BiprojectivePair& f, const BiprojectivePair& g,
                    const ELMap& e);
// Exact identity of reduced-exponent coefficients, any field size. Requires
// only that the map's blocks are linearized polynomials.
bool verify_el_witness(const BiprojectivePair& f, const BiprojectivePair& g,
                       const ELMap& e);

}  // namespace biapn
