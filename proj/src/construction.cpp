#include "rankstab/construction.hpp"

#include <stdexcept>

namespace rankstab {

CurvePoint cover_map(const FieldElem& a, const FieldElem& b, const FieldElem& r, const FieldElem& x,
                     const FieldElem& y) {
    if (y.is_zero()) throw std::domain_error("cover_map: y = 0");
    // z = 1 on a x^3 + 2 r b y^3 = z^3
    if (a * x.pow(3) + FieldElem(2) * r * b * y.pow(3) != FieldElem(1))
        throw std::domain_error("cover_map: (x, y, 1) is not on the cover");
    const CurvePoint image = CurvePoint::affine(a * x / (y * y), a * (y.pow(-3) - r * b));
    if (!on_curve(r * r * a * a * b * b, image)) throw std::logic_error("cover_map: image off curve");
    return image;
}

Point<Fq> cover_map(const Fq& a, const Fq& b, const Fq& r, const Fq& x, const Fq& y) {
    if (y.is_zero()) throw std::domain_error("cover_map: y = 0");
    const Fq one = a.field()->one();
    const Fq two = one + one;
    if (a * x * x * x + two * r * b * y * y * y != one) throw std::domain_error("cover_map: (x, y, 1) is not on the cover");
    const Fq yinv = one / y;
    const Point<Fq> image = Point<Fq>::affine(a * x * yinv * yinv, a * (yinv * yinv * yinv - r * b));
    if (!on_curve(r * r * a * a * b * b, image)) throw std::logic_error("cover_map: image off curve");
    return image;
}

const char* to_string(WitnessStatus s) {
    return s == WitnessStatus::verified ? "verified" : "torsion-witness";
}

CoverDatum build_positive_rank_witness(const FieldElem& a, const FieldElem& b, const EisInt& r,
                                       const std::vector<PrimeElem>& support, unsigned torsion_witnesses) {
    const FieldElem R(r);
    if (a + FieldElem(2) * R * b != FieldElem(1)) throw std::domain_error("build_positive_rank_witness: a + 2rb != 1");
    CoverDatum d;
    d.a = a;
    d.b = b;
    d.r = r;
    d.n_raw = R * R * a * a * b * b;
    if (d.n_raw.is_zero()) throw std::domain_error("build_positive_rank_witness: r^2 a^2 b^2 = 0");
    d.point_raw = cover_map(a, b, R, 1, 1);
    d.curve = curve_from_n(d.n_raw, support);
    d.point = d.curve.from_original(d.point_raw);
    if (!d.curve.contains(d.point)) throw std::logic_error("build_positive_rank_witness: scaled point off curve");
    d.torsion = torsion_bound(d.curve, torsion_witnesses);
    d.nontorsion = check_nontorsion(d.curve, d.point, d.torsion);
    d.status = d.nontorsion.nontorsion ? WitnessStatus::verified : WitnessStatus::torsion_witness;
    return d;
}

CoverDatum build_positive_rank_witness(const TwistParams& params, unsigned torsion_witnesses) {
    return build_positive_rank_witness(params.a, params.b, params.r, params.support, torsion_witnesses);
}

}  // namespace rankstab
