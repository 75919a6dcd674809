#pragma once

// The covering a x^3 + 2rb y^3 = z^3 -> y^2 = x^3 + r^2 a^2 b^2 and the point
// it produces.

#include "rankstab/curve.hpp"
#include "rankstab/triple_sieve.hpp"

#include <string>

namespace rankstab {

/// (x, y) on the cover maps to (a x / y^2, a (y^-3 - r b)). Throws
/// std::domain_error for y = 0 or an off-cover input; the image is checked
/// on y^2 = x^3 + r^2 a^2 b^2.
CurvePoint cover_map(const FieldElem& a, const FieldElem& b, const FieldElem& r, const FieldElem& x,
                     const FieldElem& y);

/// Same map over a residue field.
Point<Fq> cover_map(const Fq& a, const Fq& b, const Fq& r, const Fq& x, const Fq& y);

enum class WitnessStatus { verified, torsion_witness };
const char* to_string(WitnessStatus s);

struct CoverDatum {
    FieldElem a, b;
    EisInt r;
    FieldElem n_raw;       // r^2 a^2 b^2
    CurvePoint point_raw;  // (a, a (1 - r b))
    CurveModel curve;      // curve_from_n(n_raw)
    CurvePoint point;      // point_raw on the integral model
    TorsionBound torsion;
    NontorsionCheck nontorsion;
    WitnessStatus status = WitnessStatus::torsion_witness;
};

/// Requires a + 2rb = 1 and n_raw != 0 (std::domain_error otherwise).
CoverDatum build_positive_rank_witness(const FieldElem& a, const FieldElem& b, const EisInt& r,
                                       const std::vector<PrimeElem>& support = {}, unsigned torsion_witnesses = 4);
CoverDatum build_positive_rank_witness(const TwistParams& params, unsigned torsion_witnesses = 4);

}  // namespace rankstab
