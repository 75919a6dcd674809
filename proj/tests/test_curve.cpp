#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "rankstab/curve.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <set>

using namespace rankstab;

namespace {

const FieldElem w = FieldElem(EisInt::omega());

CurvePoint pt(FieldElem x, FieldElem y) { return CurvePoint::affine(std::move(x), std::move(y)); }

// #{(x, y) mod p : y^2 = x^3 + n} + 1 by a double loop over Z[w]/(p)
std::int64_t count_by_search(oracle::E n, oracle::E p) {
    const oracle::Quotient k(p);
    const std::vector<oracle::E> el = k.elements();
    std::map<oracle::i64, std::int64_t> squares;
    for (const oracle::E& y : el) ++squares[k.index(oracle::mul(y, y))];
    std::int64_t count = 1;
    for (const oracle::E& x : el) {
        const auto it = squares.find(k.index(oracle::add(oracle::mul(oracle::mul(x, x), x), n)));
        if (it != squares.end()) count += it->second;
    }
    return count;
}

// y with y^2 = v, searching the elements of norm sqrt N(v)
std::optional<oracle::E> small_sqrt(oracle::E v) {
    const oracle::i64 n = oracle::norm(v);
    const auto s = static_cast<oracle::i64>(std::llround(std::sqrt(static_cast<double>(n))));
    if (s * s != n) return std::nullopt;
    for (const oracle::E& y : oracle::ball(s))
        if (oracle::norm(y) == s && oracle::mul(y, y) == v) return y;
    return std::nullopt;
}

std::vector<Point<Fq>> random_points(const std::vector<Point<Fq>>& all, oracle::Gen& g, int count) {
    std::vector<Point<Fq>> out;
    for (int i = 0; i < count; ++i) out.push_back(all[static_cast<std::size_t>(g.range(0, static_cast<oracle::i64>(all.size()) - 1))]);
    return out;
}

}  // namespace

TEST_CASE("group law on y^2 = x^3 + 1") {
    const CurveModel e{1};
    const CurvePoint p = pt(2, 3);
    CHECK(point_add(e, p, p) == pt(0, 1));
    CHECK(scalar_mul(e, 6, p).infinity);
    CHECK(!scalar_mul(e, 3, p).infinity);
    CHECK(!scalar_mul(e, 2, p).infinity);
    CHECK(point_add(e, p, CurvePoint::at_infinity()) == p);
    CHECK(point_add(e, CurvePoint::at_infinity(), p) == p);
    CHECK(point_add(e, p, negate(p)).infinity);
    CHECK(scalar_mul(e, -1, p) == negate(p));
    CHECK(scalar_mul(e, 0, p).infinity);
    CHECK_THROWS_AS(point_add(e, pt(1, 1), p), std::domain_error);
    CHECK_THROWS_AS(scalar_mul(e, 2, pt(1, 1)), std::domain_error);
    CHECK_THROWS_AS(zeta_action(e, pt(1, 1)), std::domain_error);
    CHECK_THROWS_AS(phi_endo(e, pt(1, 1)), std::domain_error);
}

TEST_CASE("zeta and phi") {
    const CurveModel e{1};
    const CurvePoint z = zeta_action(e, pt(2, 3));
    CHECK(z == pt(2 * w, 3));
    CHECK(e.contains(z));
    CHECK(phi_endo(e, pt(0, 1)).infinity);
    CHECK(phi_endo(e, pt(0, -1)).infinity);
    CHECK(!phi_endo(e, pt(2, 3)).infinity);

    // exact points on a few curves, including one of infinite order
    const std::vector<std::pair<CurveModel, CurvePoint>> samples = {
        {CurveModel{1}, pt(2, 3)}, {CurveModel{-2}, pt(3, 5)}, {CurveModel{8}, pt(1, 3)}, {CurveModel{17}, pt(-2, 3)}};
    for (const auto& [curve, p] : samples) {
        REQUIRE(curve.contains(p));
        const CurvePoint z1 = zeta_action(curve, p), z2 = zeta_action(curve, z1);
        CHECK(zeta_action(curve, z2) == p);
        // (1 - zeta)(1 - zeta^2) = 3
        const CurvePoint f = phi_endo(curve, p);
        const CurvePoint conj_phi = point_add(curve, f, negate(zeta_action(curve, zeta_action(curve, f))));
        CHECK(conj_phi == scalar_mul(curve, 3, p));
        // zeta is additive
        const CurvePoint two = scalar_mul(curve, 2, p);
        CHECK(zeta_action(curve, point_add(curve, p, two)) == point_add(curve, z1, zeta_action(curve, two)));
    }
}

TEST_CASE("point counts against a direct double loop") {
    CHECK(count_points(CurveModel{1}, PrimeElem::from(EisInt(3, 1))) == 12);
    CHECK(count_by_search({1, 0}, {3, 1}) == 12);
    const ResidueField f4(PrimeElem::from(2));
    CHECK(f4.size() == 4);
    CHECK(count_points_raw(f4.one(), f4) == 5);
    CHECK(count_by_search({1, 0}, {2, 0}) == 5);
    CHECK_THROWS_AS(count_points(CurveModel{1}, PrimeElem::from(2)), std::domain_error);
    CHECK_THROWS_AS(count_points(CurveModel{7}, PrimeElem::from(EisInt(3, 1))), std::domain_error);

    for (const EisInt n : {EisInt(1), EisInt(5), EisInt(2, 7), EisInt(-3, 4), EisInt(11)}) {
        const CurveModel e{n};
        for (const PrimeElem& p : primes_up_to(400)) {
            if (!has_good_reduction(e, p)) continue;
            const std::int64_t c = count_points(e, p);
            CHECK(c == count_by_search(to_e(n), to_e(p.value())));
            const double np = p.norm().get_d();
            CHECK(std::abs(np + 1 - static_cast<double>(c)) <= 2 * std::sqrt(np));
            const ResidueField k(p);
            CHECK(static_cast<std::int64_t>(enumerate_points(k.reduce(n), k).size()) == c);
        }
    }
}

TEST_CASE("Weil bound and conjugate primes") {
    for (const EisInt n : {EisInt(5), EisInt(3, 8), EisInt(-7, 2)}) {
        const CurveModel e{n};
        const CurveModel ec{n.conj()};
        for (const PrimeElem& p : primes_up_to(20000)) {
            if (!has_good_reduction(e, p)) continue;
            const std::int64_t c = count_points(e, p);
            const double np = p.norm().get_d();
            CHECK(std::abs(np + 1 - static_cast<double>(c)) <= 2 * std::sqrt(np));
            // complex conjugation maps E(k_p) onto the conjugate curve mod conj(p)
            if (p.kind() == PrimeKind::split) CHECK(count_points(ec, PrimeElem::from(p.value().conj())) == c);
        }
    }
    // rational n: the two primes above a split p give the same count
    const CurveModel e{5};
    for (const PrimeElem& p : primes_up_to(20000))
        if (p.kind() == PrimeKind::split && has_good_reduction(e, p))
            CHECK(count_points(e, PrimeElem::from(p.value().conj())) == count_points(e, p));
}

TEST_CASE("count_points sweep kernel matches the serial reference") {
    const CurveModel e{EisInt(2, 7)};
    std::vector<PrimeElem> primes;
    for (const PrimeElem& p : primes_up_to(5000))
        if (has_good_reduction(e, p)) primes.push_back(p);
    CHECK(count_points_sweep(e, primes) == count_points_sweep_serial(e, primes));
}

TEST_CASE("curve_from_n") {
    const CurveModel a = curve_from_n(FieldElem(1, 64));
    CHECK(a.n == EisInt(1));
    CHECK(a.scaling.pow(6) == FieldElem(64));
    CHECK(a.original_n() == FieldElem(1, 64));
    const CurveModel b = curve_from_n(5);
    CHECK(b.n == EisInt(5));
    CHECK(b.scaling == FieldElem(1));
    CHECK_THROWS(curve_from_n(0));

    oracle::Gen g(21);
    for (int i = 0; i < 200; ++i) {
        const EisInt s = to_eis(g.nonzero(4)), num = to_eis(g.nonzero(20)), den = to_eis(g.nonzero(6));
        const FieldElem n0 = FieldElem(num * pow(s, 6 + static_cast<unsigned>(g.range(0, 7))), den);
        const CurveModel m = curve_from_n(n0);
        CHECK(m.original_n() == n0);
        for (const auto& [p, e] : factor(m.n).factors) CHECK(e < 6);
        // the scaling carries points of the original model onto the integral one
        const FieldElem x0 = FieldElem(to_eis(g.nonzero(5)), to_eis(g.nonzero(3)));
        const FieldElem u = m.scaling;
        const FieldElem x = u * u * x0;
        CHECK(x * x * x + FieldElem(m.n) == u.pow(6) * (x0 * x0 * x0 + n0));
    }
    // a point on the original model
    const CurveModel c = curve_from_n(FieldElem(1, 64));
    const CurvePoint p0 = pt(FieldElem(1, 2), FieldElem(3, 8));  // (1/8 + 1/64) = 9/64
    REQUIRE(on_curve(FieldElem(1, 64), p0));
    CHECK(c.contains(c.from_original(p0)));
}

TEST_CASE("group axioms over residue fields") {
    oracle::Gen g(22);
    const std::vector<PrimeElem> primes = primes_up_to(300);
    for (int round = 0; round < 60; ++round) {
        const PrimeElem& p = primes[static_cast<std::size_t>(g.range(0, static_cast<oracle::i64>(primes.size()) - 1))];
        const EisInt n = to_eis(g.nonzero(30));
        const CurveModel e{n};
        if (!has_good_reduction(e, p)) continue;
        const ResidueField k(p);
        const Fq nn = k.reduce(n);
        const std::vector<Point<Fq>> all = enumerate_points(nn, k);
        CHECK(all.front().infinity);
        const Integer order = static_cast<long>(all.size());
        const Fq wk = k.omega();
        CHECK(wk * wk * wk == k.one());
        CHECK(wk != k.one());
        for (const auto& p1 : random_points(all, g, 8)) {
            CHECK(on_curve(nn, p1));
            CHECK(add(nn, p1, Point<Fq>::at_infinity()) == p1);
            CHECK(add(nn, p1, negate(p1)).infinity);
            CHECK(multiply(nn, order, p1).infinity);
            CHECK(multiply(nn, Integer(3), p1) == add(nn, phi(nn, wk, p1), negate(zeta(wk, zeta(wk, phi(nn, wk, p1))))));
            for (const auto& p2 : random_points(all, g, 4)) {
                CHECK(add(nn, p1, p2) == add(nn, p2, p1));
                CHECK(on_curve(nn, add(nn, p1, p2)));
                for (const auto& p3 : random_points(all, g, 2))
                    CHECK(add(nn, add(nn, p1, p2), p3) == add(nn, p1, add(nn, p2, p3)));
                CHECK(zeta(wk, add(nn, p1, p2)) == add(nn, zeta(wk, p1), zeta(wk, p2)));
            }
        }
    }
}

TEST_CASE("exact group axioms on small points") {
    const CurveModel e{-2};
    const CurvePoint p = pt(3, 5), q = zeta_action(e, p), r = scalar_mul(e, 2, p);
    CHECK(point_add(e, point_add(e, p, q), r) == point_add(e, p, point_add(e, q, r)));
    CHECK(point_add(e, p, q) == point_add(e, q, p));
    CHECK(scalar_mul(e, 5, p) == point_add(e, scalar_mul(e, 2, p), scalar_mul(e, 3, p)));
}

TEST_CASE("reduction of points") {
    const CurveModel e{1};
    const ResidueField k(PrimeElem::from(EisInt(3, 1)));
    const Point<Fq> r = reduce_point(pt(2, 3), k);
    CHECK(!r.infinity);
    CHECK(on_curve(k.reduce(EisInt(1)), r));
    CHECK(reduce_point(CurvePoint::at_infinity(), k).infinity);
    // p in a denominator goes to infinity
    const CurvePoint far = scalar_mul(CurveModel{-2}, 3, pt(3, 5));
    for (const PrimeElem& p : primes_up_to(200)) {
        if (!has_good_reduction(CurveModel{-2}, p)) continue;
        const ResidueField kp(p);
        const Point<Fq> red = reduce_point(far, kp);
        const bool in_den = divides(p.value(), far.x.den());
        CHECK(red.infinity == in_den);
        // reduction is a homomorphism
        const Fq nn = kp.reduce(EisInt(-2));
        const Point<Fq> p1 = reduce_point(pt(3, 5), kp);
        CHECK(multiply(nn, Integer(3), p1) == red);
    }
}

TEST_CASE("torsion on y^2 = x^3 + 1") {
    const CurveModel e{1};
    const TorsionBound tb = torsion_bound(e, 4);
    CHECK(tb.bound % 12 == 0);
    CHECK(tb.witnesses.size() >= 4);
    CHECK(bound_from_witnesses(tb.witnesses) == tb.bound);
    std::set<Integer> chars;
    for (const auto& wt : tb.witnesses) {
        CHECK(has_good_reduction(e, wt.prime));
        CHECK(count_points(e, wt.prime) == wt.order);
        CHECK(wt.order % tb.bound == 0);
        chars.insert(wt.prime.characteristic());
    }
    CHECK(chars.size() >= 2);
    CHECK_FALSE(is_nontorsion(e, pt(2, 3), tb));
    CHECK_FALSE(is_nontorsion(e, CurvePoint::at_infinity(), tb));

    // integral points of small height; all torsion here
    std::vector<CurvePoint> found = {CurvePoint::at_infinity()};
    for (const oracle::E& x : oracle::ball(40)) {
        const oracle::E v = oracle::add(oracle::mul(oracle::mul(x, x), x), {1, 0});
        const auto y = small_sqrt(v);
        if (!y) continue;
        found.push_back(pt(to_eis(x), to_eis(*y)));
        if (*y != oracle::E{}) found.push_back(pt(to_eis(x), -FieldElem(to_eis(*y))));
    }
    CHECK(found.size() >= 12);
    for (const CurvePoint& p : found) {
        CHECK(e.contains(p));
        CHECK(scalar_mul(e, tb.bound, p).infinity);
    }
}

TEST_CASE("nontorsion points") {
    const CurveModel e{-2};
    const TorsionBound tb = torsion_bound(e, 4);
    const NontorsionCheck c = check_nontorsion(e, pt(3, 5), tb);
    CHECK(c.nontorsion);
    REQUIRE(c.witness.has_value());
    const ResidueField k(*c.witness);
    CHECK(!multiply(k.reduce(EisInt(-2)), Integer(tb.bound), reduce_point(pt(3, 5), k)).infinity);
    CHECK(!scalar_mul(e, tb.bound, pt(3, 5)).infinity);
    CHECK_THROWS(torsion_bound(e, 1));
}

TEST_CASE("twist transport") {
    // y^2 = x^3 + 125 against y^2 = x^3 + 1 over F(sqrt 5)
    const CurveModel e{1};
    const EisInt q = 5;
    int transported = 0;
    for (const oracle::E& x : oracle::ball(60)) {
        const oracle::E v = oracle::add(oracle::mul(oracle::mul(x, x), x), {125, 0});
        const auto y = small_sqrt(v);
        if (!y) continue;
        const CurvePoint p = pt(to_eis(x), to_eis(*y));
        const KPoint img = twist_transport(e, q, p);
        CHECK(on_curve(KElem(FieldElem(1), 0, FieldElem(q)), img));
        CHECK(img.x.in_base());
        CHECK(is_zero(img.y.c0()));
        CHECK(transport_from_twist(FieldElem(q), img) == std::optional<CurvePoint>(p));
        if (y->a == 0 && y->b == 0) CHECK(is_zero(img.y));
        ++transported;
    }
    CHECK(transported >= 3);
    CHECK_THROWS_AS(twist_transport(e, q, pt(1, 1)), std::domain_error);
    CHECK(twist_transport(e, q, CurvePoint::at_infinity()).infinity);
    const KPoint off = KPoint::affine(KElem(FieldElem(1), FieldElem(1), FieldElem(q)), KElem(FieldElem(1), 0, FieldElem(q)));
    CHECK_FALSE(transport_from_twist(FieldElem(q), off).has_value());
}
