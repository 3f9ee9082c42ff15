#include "morpho/catalog.hpp"

#include <algorithm>

namespace morpho {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"complex-noncompact", Algebra::Complex, Variant::Noncompact, SizeParam::Q, true,
       "SU(p,q)/S(U(p)xU(q)) on U_pq(C)", "Z1 Z0^-1"},
      {"complex-compact", Algebra::Complex, Variant::Compact, SizeParam::Q, true,
       "SU(p+q)/S(U(p)xU(q)) on V*_pq(C), det Z0 != 0", "Z1 Z0^-1"},
      {"real-m-method", Algebra::Real, Variant::Noncompact, SizeParam::R, false,
       "R^{(p+s)xp}, s = p+2r, semi-Euclidean", "(A; W) + M (B; conj W), M in so(p,r)^C"},
      {"real-w-over-a", Algebra::Real, Variant::Noncompact, SizeParam::R, true,
       "SO0(p,s)/SO(p)xSO(s) on U_ps(R), s = p+2r", "W A^-1"},
      {"real-s-method", Algebra::Real, Variant::Noncompact, SizeParam::R, true,
       "SO0(p,s-1)/SO(p)xSO(s-1) on U_{p,s-1}(R), r >= 2", "S (W + M conj W) A^-1, M in so(r,C)"},
      {"real-compact-m-method", Algebra::Real, Variant::Compact, SizeParam::R, false,
       "R^{(p+s)xp}, s = p+2r, Euclidean", "(Z; W) + M (conj Z; conj W), M in so(p+r,C)"},
      {"real-compact-w-over-z", Algebra::Real, Variant::Compact, SizeParam::R, true,
       "SO(p+s)/SO(p)xSO(s) on V*_ps(R), det Z != 0", "W Z^-1"},
      {"real-compact-s-method", Algebra::Real, Variant::Compact, SizeParam::R, true,
       "SO(p+s-1)/SO(p)xSO(s-1) on V*_{p,s-1}(R), r >= 2", "S (W + M conj W) Z^-1, M in so(r,C)"},
      {"quat-noncompact", Algebra::Quaternion, Variant::Noncompact, SizeParam::R, true,
       "Sp(p,q)/Sp(p)xSp(q) on U_pq(H), q = p+r", "(U V) [[Z-X, W-Y], [conj Y-conj W, conj Z-conj X]]^-1"},
      {"quat-compact", Algebra::Quaternion, Variant::Compact, SizeParam::R, true,
       "Sp(p+q)/Sp(p)xSp(q) on V*_pq(H), q = p+r", "(U -V) [[Z-X, Y-W], [conj Y+conj W, conj Z+conj X]]^-1"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& label) {
  const auto& c = catalog();
  const auto it = std::find_if(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.label == label; });
  if (it == c.end()) throw ShapeError("unknown family '" + label + "'");
  return *it;
}

namespace {

bool is_s_method(const std::string& label) { return label.find("s-method") != std::string::npos; }

}  // namespace

FamilyParams resolve(const FamilyParams& params) {
  const CatalogEntry& e = catalog_entry(params.label);
  FamilyParams out = params;
  if (params.p < 1) throw ShapeError("p must be a positive integer");
  if (params.q && params.r) {
    FamilyParams from_r = params;
    from_r.q.reset();
    if (e.size_param == SizeParam::Q || resolve(from_r).q != params.q)
      throw ShapeError("--q and --r are inconsistent for " + e.label);
    return params;
  }

  if (e.size_param == SizeParam::Q) {
    if (params.r) throw ShapeError(e.label + " is parameterized by q, not r");
    if (!params.q) throw ShapeError(e.label + " requires --q");
    if (*params.q < 1) throw ShapeError("q must be a positive integer");
    return out;
  }

  if (e.algebra == Algebra::Quaternion) {
    if (params.q) out.r = *params.q - params.p;
    if (!out.r) throw ShapeError(e.label + " requires --r or --q");
    if (*out.r < 1) throw ShapeError("quaternionic constructions require q = p + r with r >= 1 (p = q excluded)");
    out.q = params.p + *out.r;
    return out;
  }

  // Real layouts: q = s = p + 2r, or s - 1 for the S-methods.
  const int drop = is_s_method(e.label) ? 1 : 0;
  if (params.q) {
    const int twice_r = *params.q + drop - params.p;
    if (twice_r < 2 || twice_r % 2 != 0)
      throw ShapeError(drop ? "S-method requires q = p + 2r - 1 with r >= 2"
                            : "real constructions require q = p + 2r with r >= 1 (p not in {q, q+-1})");
    out.r = twice_r / 2;
  }
  if (!out.r) throw ShapeError(e.label + " requires --r or --q");
  if (*out.r < 1) throw ShapeError("r must be a positive integer");
  if (drop && *out.r < 2) throw ShapeError("independent of the last row requires r >= 2");
  out.q = params.p + 2 * *out.r - drop;
  return out;
}

Family build_family(const FamilyParams& params) {
  const FamilyParams f = resolve(params);
  const int p = f.p;
  Rng skew_rng(f.skew_seed);
  const std::string& l = f.label;
  if (l == "complex-noncompact") return complex_noncompact(p, *f.q);
  if (l == "complex-compact") return complex_compact(p, *f.q);
  const int r = *f.r;
  if (l == "real-m-method") return real_linear_m(p, r, SkewParam::random_indefinite(p, r, skew_rng));
  if (l == "real-w-over-a") return real_w_over_a(p, r);
  if (l == "real-s-method") return real_s_method(p, r, SkewParam::random_complex(r, skew_rng));
  if (l == "real-compact-m-method") return real_compact_linear_m(p, r, SkewParam::random_complex(p + r, skew_rng));
  if (l == "real-compact-w-over-z") return real_compact_w_over_z(p, r);
  if (l == "real-compact-s-method") return real_compact_s_method(p, r, SkewParam::random_complex(r, skew_rng));
  if (l == "quat-noncompact") return quat_noncompact(p, r);
  return quat_compact(p, r);
}

}  // namespace morpho
