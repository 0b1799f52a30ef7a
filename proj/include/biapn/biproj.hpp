#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "biapn/field.hpp"

namespace biapn {

// Coefficient quad (a,b,c,d) of a form a x^(q+1) + b x^q y + c x y^q + d y^(q+1).
struct Quad {
  Fe a = 0, b = 0, c = 0, d = 0;
  bool operator==(const Quad&) const = default;
};

// Evaluates the k-form given by `q` at (x, y), q = 2^k.
Fe eval_quad(const FieldCtx& ctx, unsigned k, const Quad& q, Fe x, Fe y);

// Projective polynomial p1 x^(q+1) + p2 x^q + p3 x + p4 (the quad read as
// coefficients of x^(q+1), x^q, x, 1).
struct ProjPoly {
  unsigned k = 0;
  Quad p;
};

// True when the polynomial has no root in the field. Requires p1 != 0.
bool rootless_check(const FieldCtx& ctx, const ProjPoly& p);

// Number of quads (p1,p2,p3,p4), p1 != 0, whose projective polynomial has no
// root; equals (2^m + 1) 2^m (2^m - 1)^2 / 3 for gcd(k, m) = 1.
std::uint64_t rootless_quad_count(const FieldCtx& ctx, unsigned k);
std::uint64_t rootless_quad_count_formula(unsigned m);

struct ProductElement {
  Fe x = 0, y = 0;
  bool operator==(const ProductElement&) const = default;
};

// Pair of forms F = (f, g) : M x M -> M x M, f a k-form and g an l-form.
struct BiprojectivePair {
  FieldCtxPtr ctx;
  unsigned k = 0, l = 0;
  Quad f, g;

  unsigned m() const { return ctx->m(); }
  ProductElement evaluate(Fe x, Fe y) const {
    return {eval_quad(*ctx, k, f, x, y), eval_quad(*ctx, l, g, x, y)};
  }
};

std::string serialize_pair(const BiprojectivePair& p);
BiprojectivePair parse_pair(const std::string& text);

// Point of the projective line over M: u in M or the point at infinity.
struct P1Point {
  bool inf = false;
  Fe u = 0;
};

// All 2^m + 1 points, infinity first.
std::vector<P1Point> p1_points(const FieldCtx& ctx);

// The pair of linearized forms attached to a direction u: for each component
// the map (x, y) -> A x^q + B x + C y^q + D y, both components stacked into
// one F_2-linear map M x M -> M x M. Rows are images of the standard basis,
// component values packed as f | g << m.
struct DeltaSystem {
  unsigned m = 0;
  Quad fu, gu;                       // (A,B,C,D) per component
  std::vector<std::uint64_t> images;  // 2m basis images

  ProductElement apply(const FieldCtx& ctx, Fe x, Fe y) const;
  unsigned kernel_dim() const;
};

DeltaSystem build_delta_system(const BiprojectivePair& p, const P1Point& u);

// ---------------------------------------------------------------- families

enum class Family { Gold, Carlet, Taniguchi, ZhouPott, F1, F2, F4 };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct FamilyParams {
  unsigned k = 0;  // main exponent, q = 2^k
  unsigned j = 0;  // second exponent (ZhouPott)
  Fe a = 0;        // Gold even-degree form / F4 subfield coefficient
  Fe b = 0, c = 0, d = 0;  // Carlet / Taniguchi coefficients
  Fe B = 0;        // F4 non-cube coefficient
};

struct FamilyInstance {
  Family family = Family::Gold;
  FamilyParams params;
  BiprojectivePair pair;

  std::string describe() const;
};

// Empty when the parameters satisfy the family's defining conditions,
// otherwise the name of the violated condition. Defaulted parameters (the
// Gold trace element) are filled the same way make_family fills them.
std::optional<std::string> family_violation(const FieldCtxPtr& ctx, Family fam,
                                            FamilyParams par);

// Builds the instance; throws ConditionViolated naming the failed condition.
FamilyInstance make_family(const FieldCtxPtr& ctx, Family fam, FamilyParams par);

// Values d for which the ZhouPott condition fails: d = a^(q+1) (b^q + b)^(1-r)
// over all a, b. q = 2^k, r = 2^j.
std::vector<Fe> zhou_pott_forbidden(const FieldCtx& ctx, unsigned k, unsigned j);

}  // namespace biapn
