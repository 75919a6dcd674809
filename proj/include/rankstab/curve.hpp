#pragma once

// Mordell curves y^2 = x^3 + n over Q(w), their reductions, and quadratic twists.

#include "rankstab/field.hpp"
#include "rankstab/quad_elem.hpp"
#include "rankstab/residue_field.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rankstab {

// ---------------------------------------------------------------------------
// Field-generic group law. T needs + - * / unary-, == and is_zero(T).

template <class T>
struct Point {
    bool infinity = true;
    T x{};
    T y{};

    static Point at_infinity() { return {}; }
    static Point affine(T x, T y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(const Point& p, const Point& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
};

template <class T>
bool on_curve(const T& n, const Point<T>& p) {
    return p.infinity || p.y * p.y == p.x * p.x * p.x + n;
}

template <class T>
Point<T> negate(const Point<T>& p) {
    if (p.infinity) return p;
    return Point<T>::affine(p.x, -p.y);
}

/// Chord-tangent addition on y^2 = x^3 + n; inputs are assumed on the curve.
template <class T>
Point<T> add(const T& /*n*/, const Point<T>& p, const Point<T>& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    T slope;
    if (p.x == q.x) {
        if (p.y != q.y || is_zero(p.y)) return Point<T>::at_infinity();
        const T xx = p.x * p.x;
        slope = (xx + xx + xx) / (p.y + p.y);
    } else {
        slope = (q.y - p.y) / (q.x - p.x);
    }
    T x3 = slope * slope - p.x - q.x;
    T y3 = slope * (p.x - x3) - p.y;
    return Point<T>::affine(std::move(x3), std::move(y3));
}

template <class T>
Point<T> multiply(const T& n, const Integer& k, const Point<T>& p) {
    if (k < 0) return multiply(n, Integer(-k), negate(p));
    Point<T> result;
    Point<T> base = p;
    const std::size_t bits = k == 0 ? 0 : mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) result = add(n, result, base);
        if (i + 1 < bits) base = add(n, base, base);
    }
    return result;
}

/// [zeta](x, y) = (w x, y) for a chosen image w of a primitive cube root of unity.
template <class T>
Point<T> zeta(const T& w, const Point<T>& p) {
    if (p.infinity) return p;
    return Point<T>::affine(w * p.x, p.y);
}

/// phi = 1 - zeta.
template <class T>
Point<T> phi(const T& n, const T& w, const Point<T>& p) {
    return add(n, p, negate(zeta(w, p)));
}

/// (X, Y) on y^2 = x^3 + q^3 n  ->  (X/q, Y/(q sqrt q)) on y^2 = x^3 + n over T(sqrt q).
template <class T>
Point<QuadElem<T>> transport_to_twist(const T& q, const Point<T>& p) {
    if (p.infinity) return {};
    const T zero = q - q;
    const T q2 = q * q;
    return Point<QuadElem<T>>::affine(QuadElem<T>(p.x / q, zero, q), QuadElem<T>(zero, p.y / q2, q));
}

/// Inverse of transport_to_twist; nullopt when the point is not in the image.
template <class T>
std::optional<Point<T>> transport_from_twist(const T& q, const Point<QuadElem<T>>& p) {
    if (p.infinity) return Point<T>::at_infinity();
    if (!p.x.in_base() || !is_zero(p.y.c0())) return std::nullopt;
    return Point<T>::affine(q * p.x.c0(), q * q * p.y.c1());
}

// ---------------------------------------------------------------------------
// Curves over Q(w)

using CurvePoint = Point<FieldElem>;
using KElem = QuadElem<FieldElem>;
using KPoint = Point<KElem>;

/// y^2 = x^3 + n with n integral and sixth-power free; the original model
/// y^2 = x^3 + n0 satisfies n0 = n * scaling^-6 and (x, y) -> (u^2 x, u^3 y)
/// carries its points here.
struct CurveModel {
    EisInt n;
    FieldElem scaling = 1;

    FieldElem original_n() const { return FieldElem(n) / scaling.pow(6); }
    bool contains(const CurvePoint& p) const { return on_curve(FieldElem(n), p); }
    /// Image of a point of the original model.
    CurvePoint from_original(const CurvePoint& p) const;
};

CurveModel curve_from_n(const FieldElem& n0);
/// Same, factoring over a known prime support first (for large inputs).
CurveModel curve_from_n(const FieldElem& n0, const std::vector<PrimeElem>& support);

CurvePoint point_add(const CurveModel& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint scalar_mul(const CurveModel& e, const Integer& k, const CurvePoint& p);
CurvePoint zeta_action(const CurveModel& e, const CurvePoint& p);
CurvePoint phi_endo(const CurveModel& e, const CurvePoint& p);

/// p does not divide 6n.
bool has_good_reduction(const CurveModel& e, const PrimeElem& p);

/// Reduction of an F-point into E(k_p); points with p in a denominator go to infinity.
Point<Fq> reduce_point(const CurvePoint& p, const ResidueField& k);

/// #{(x, y) : y^2 = x^3 + n} + 1 over k, with no smoothness requirement.
std::int64_t count_points_raw(const Fq& n, const ResidueField& k);

/// #E(k_p) including infinity; std::domain_error at bad primes.
std::int64_t count_points(const CurveModel& e, const PrimeElem& p);

/// All points of E(k_p), infinity first.
std::vector<Point<Fq>> enumerate_points(const Fq& n, const ResidueField& k);

/// count_points over many primes: OpenMP kernel and its serial reference.
std::vector<std::int64_t> count_points_sweep(const CurveModel& e, const std::vector<PrimeElem>& primes);
std::vector<std::int64_t> count_points_sweep_serial(const CurveModel& e, const std::vector<PrimeElem>& primes);

struct TorsionWitness {
    PrimeElem prime;
    std::int64_t order;
};

/// A multiple of #E(F)_tors from point counts at good primes. For every
/// rational prime l the l-part is the smallest l-part among witnesses of
/// residue characteristic different from l (where reduction is injective on
/// l-power torsion).
struct TorsionBound {
    std::int64_t bound = 0;
    std::vector<TorsionWitness> witnesses;
};

/// Witnesses are the first good primes with N(p) odd and prime to 3, taken
/// until there are at least `count` of them spanning two characteristics.
TorsionBound torsion_bound(const CurveModel& e, unsigned count);

/// Recomputes the bound from a witness list.
std::int64_t bound_from_witnesses(const std::vector<TorsionWitness>& witnesses);

struct NontorsionCheck {
    bool nontorsion = false;
    /// Good prime where [B] P reduces to a nonzero point, when one exists.
    std::optional<PrimeElem> witness;
};

/// Certifies [B] P != infinity through a reduction witness (the first good
/// prime, not dividing a coordinate denominator, in norm order below
/// `max_norm`); falls back to exact arithmetic when no witness exists.
NontorsionCheck check_nontorsion(const CurveModel& e, const CurvePoint& p, const TorsionBound& tb,
                                 std::uint64_t max_norm = 5000);
bool is_nontorsion(const CurveModel& e, const CurvePoint& p, const TorsionBound& tb);

/// P on y^2 = x^3 + q^3 n mapped to y^2 = x^3 + n over K = F(sqrt q).
KPoint twist_transport(const CurveModel& e, const EisInt& q, const CurvePoint& p);

}  // namespace rankstab
