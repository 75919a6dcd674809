#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "rankstab/quad_ext.hpp"
#include "rankstab/selmer_local.hpp"

#include <algorithm>

using namespace rankstab;

namespace {

// x is a nonzero square modulo the prime p, by listing all squares
bool square_mod(oracle::E x, oracle::E p) {
    const oracle::Quotient k(p);
    for (const oracle::E& y : k.elements())
        if (k.same(oracle::mul(y, y), x)) return true;
    return false;
}

// p odd, not dividing q: inert in F(sqrt q) iff q is a non-square mod p
bool inert_by_search(const EisInt& q, const PrimeElem& p) { return !square_mod(to_e(q), to_e(p.value())); }

bool contains(const std::vector<PrimeElem>& v, const EisInt& x) {
    return std::any_of(v.begin(), v.end(), [&](const PrimeElem& p) { return p.value() == x; });
}

}  // namespace

TEST_CASE("make_quad_ext normalizes q") {
    CHECK(make_quad_ext(20).q == EisInt(5));
    CHECK(make_quad_ext(5).q == EisInt(5));
    const QuadExt minus_one = make_quad_ext(-1);
    CHECK(minus_one.q == EisInt(-1));
    // -1 is not a square in F: no element squares to it
    for (const oracle::E& y : oracle::ball(4)) CHECK(oracle::mul(y, y) != oracle::E{-1, 0});
    REQUIRE(minus_one.ramified.size() == 1);
    CHECK(minus_one.ramified[0].value() == EisInt(2));
    const QuadExt fifteen = make_quad_ext(15);
    CHECK(is_associate(fifteen.q, 5));
    CHECK(fifteen.lambda_unramified);

    CHECK_THROWS_WITH_AS(make_quad_ext(4), doctest::Contains("trivial extension"), std::domain_error);
    CHECK_THROWS_WITH_AS(make_quad_ext(-3 * 49), doctest::Contains("trivial extension"), std::domain_error);
    CHECK_THROWS_WITH_AS(make_quad_ext(EisInt::lambda() * 5), doctest::Contains("lambda ramified"), std::domain_error);
    CHECK_THROWS(make_quad_ext(0));
}

TEST_CASE("make_quad_ext is square-class invariant") {
    oracle::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const EisInt q = to_eis(g.nonzero(15));
        QuadExt a;
        try {
            a = make_quad_ext(q);
        } catch (const std::domain_error&) {
            continue;
        }
        const EisInt s = to_eis(g.nonzero(6));
        const QuadExt b = make_quad_ext(q * s * s);
        CHECK(a.q == b.q);
        // no square prime factor
        for (const auto& [p, e] : factor(a.q).factors) CHECK(e == 1);
    }
}

TEST_CASE("splitting examples for q = 5") {
    const QuadExt ext = make_quad_ext(5);
    CHECK(splitting_type(ext, PrimeElem::from(EisInt(3, 1))) == PrimeKind::inert);
    CHECK(!square_mod({5, 0}, {3, 1}));
    CHECK(splitting_type(ext, PrimeElem::from(5)) == PrimeKind::ramified);
    CHECK(splitting_type(ext, PrimeElem::from(2)) == PrimeKind::split);
    // 5 = (1 + 2w)^2 mod 8
    CHECK(oracle::Quotient({8, 0}).same(oracle::mul({1, 2}, {1, 2}), {5, 0}));
    REQUIRE(ext.ramified.size() == 1);
    CHECK(ext.ramified[0].value() == canonical_associate(5));
}

TEST_CASE("splitting agrees with square search at odd primes") {
    for (const EisInt q : {EisInt(5), EisInt(-1), EisInt(7), EisInt(2, 3), EisInt(-2)}) {
        const QuadExt ext = make_quad_ext(q);
        for (const PrimeElem& p : primes_up_to(700)) {
            if (p.characteristic() == 2 || p.characteristic() == 3) continue;
            const PrimeKind k = splitting_type(ext, p);
            if (divides(p.value(), ext.q))
                CHECK(k == PrimeKind::ramified);
            else
                CHECK((k == PrimeKind::inert) == inert_by_search(ext.q, p));
        }
    }
}

TEST_CASE("splitting at 2 against residues mod 8") {
    // q odd at 2: split iff q is a square mod 8, unramified iff a square mod 4
    const oracle::Quotient m8({8, 0}), m4({4, 0});
    for (const oracle::E& x : oracle::ball(60)) {
        if (oracle::divides({2, 0}, x) || oracle::divides({1, -1}, x) || oracle::norm(x) <= 1) continue;
        QuadExt ext;
        try {
            ext = make_quad_ext(to_eis(x));
        } catch (const std::domain_error&) {
            continue;
        }
        bool sq8 = false, sq4 = false;
        for (const oracle::E& y : m8.elements()) sq8 = sq8 || m8.same(oracle::mul(y, y), to_e(ext.q));
        for (const oracle::E& y : m4.elements()) sq4 = sq4 || m4.same(oracle::mul(y, y), to_e(ext.q));
        const PrimeKind k = splitting_type(ext, PrimeElem::from(2));
        CHECK((k == PrimeKind::split) == sq8);
        CHECK((k == PrimeKind::ramified) == !sq4);
    }
}

TEST_CASE("classify_primes kernel matches the serial reference") {
    const QuadExt ext = make_quad_ext(5);
    const auto par = classify_primes(ext, 3000);
    const auto ser = classify_primes_serial(ext, 3000);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].first == ser[i].first);
        CHECK(par[i].second == ser[i].second);
    }
}

TEST_CASE("inert fraction is about one half") {
    for (const EisInt q : {EisInt(5), EisInt(-1), EisInt(7)}) {
        std::size_t inert = 0, total = 0;
        for (const auto& [p, k] : classify_primes(make_quad_ext(q), 10000)) {
            ++total;
            if (k == PrimeKind::inert) ++inert;
        }
        const double frac = static_cast<double>(inert) / static_cast<double>(total);
        CHECK(frac > 0.4);
        CHECK(frac < 0.6);
    }
}

TEST_CASE("Sigma sets for q = 5, r = 1") {
    const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
    const auto& sp = sigma.S_prime_superset();
    CHECK(sp.size() == 3);
    CHECK(contains(sp, 2));
    CHECK(contains(sp, EisInt::lambda()));
    CHECK(contains(sp, canonical_associate(5)));
    REQUIRE(sigma.S().size() == 2);
    CHECK(sigma.S()[0].value() == EisInt::lambda());
    CHECK(sigma.S()[1].value() == EisInt(2));
    for (const PrimeElem& p : sigma.S()) CHECK(contains(sp, p.value()));

    const bool inert_43 = inert_by_search(5, PrimeElem::from(EisInt(7, 1)));
    CHECK(sigma.is_sigma_unit(FieldElem(EisInt(7, 1))) == inert_43);
    CHECK(sigma.is_sigma_unit(FieldElem(1)));
    CHECK(sigma.is_sigma_unit(FieldElem(EisInt(3, 1))));
    CHECK(sigma.is_sigma_unit(FieldElem(2) / FieldElem(EisInt::lambda())));
    CHECK_FALSE(sigma.is_sigma_unit(FieldElem(5)));
}

TEST_CASE("is_sigma_unit against per-prime classification") {
    const SigmaSets sigma = build_sigma(make_quad_ext(5), EisInt(2, 3));
    oracle::Gen g(12);
    for (int i = 0; i < 300; ++i) {
        const FieldElem x(to_eis(g.nonzero(30)), to_eis(g.nonzero(30)));
        bool expected = true;
        for (const EisInt part : {x.num(), x.den()})
            for (const auto& [p, e] : factor(part).factors) {
                const bool ok = sigma.in_S(p) || (p.characteristic() != 2 && p.characteristic() != 3 &&
                                                  !divides(p.value(), 5) && inert_by_search(5, p));
                expected = expected && ok;
            }
        CHECK(sigma.is_sigma_unit(x) == expected);
        std::vector<PrimeElem> support;
        for (const EisInt part : {x.num(), x.den()})
            for (const auto& [p, e] : factor(part).factors) support.push_back(p);
        CHECK(sigma.is_sigma_unit(x, support) == expected);
    }
}

TEST_CASE("build_sigma guards and monotonicity") {
    const QuadExt ext = make_quad_ext(5);
    CHECK_THROWS_AS(build_sigma(ext, 5), std::domain_error);
    CHECK_THROWS_AS(build_sigma(ext, 0), std::domain_error);
    oracle::Gen g(13);
    for (int i = 0; i < 40; ++i) {
        const EisInt r1 = to_eis(g.nonzero(12)), r2 = to_eis(g.nonzero(12));
        if (divides(canonical_associate(5), r1 * r2)) continue;
        const SigmaSets a = build_sigma(ext, r1), b = build_sigma(ext, r1 * r2);
        for (const PrimeElem& p : a.S_prime_superset()) CHECK(contains(b.S_prime_superset(), p.value()));
        for (const PrimeElem& p : a.S()) CHECK(contains(b.S(), p.value()));
        for (const PrimeElem& p : b.S())
            CHECK((p.value() == EisInt::lambda() || splitting_type(ext, p) == PrimeKind::split));
    }
}

TEST_CASE("inert residue targets") {
    const InertTargets t5 = inert_residue_targets(make_quad_ext(5));
    CHECK(t5.modulus == canonical_associate(5));
    CHECK(t5.targets.size() == 12);
    const oracle::Quotient m5({5, 0});
    for (const EisInt& u : t5.targets) CHECK_FALSE(square_mod(to_e(u), {5, 0}));
    (void)m5;

    const InertTargets tm1 = inert_residue_targets(make_quad_ext(-1));
    CHECK(tm1.modulus == canonical_associate(8));
    CHECK_FALSE(tm1.targets.empty());
    const oracle::Quotient m8({8, 0});
    for (const EisInt& u : tm1.targets) {
        bool sq = false;
        for (const oracle::E& y : m8.elements()) sq = sq || m8.same(oracle::mul(y, y), to_e(u));
        CHECK_FALSE(sq);
    }

    // three smallest primes in each target class are inert
    for (const EisInt q : {EisInt(5), EisInt(-1), EisInt(7)}) {
        const QuadExt ext = make_quad_ext(q);
        const InertTargets t = inert_residue_targets(ext);
        CHECK_FALSE(t.targets.empty());
        for (const EisInt& u : t.targets) {
            const std::vector<EisInt> ws = witness_primes(u, t.modulus, 3);
            CHECK(ws.size() == 3);
            for (const EisInt& w : ws) {
                CHECK(mod(w, t.modulus) == u);
                const PrimeElem p = PrimeElem::from(w);
                CHECK(splitting_type(ext, p) == PrimeKind::inert);
                if (p.characteristic() != 2) CHECK(inert_by_search(ext.q, p));
            }
        }
    }
    CHECK_THROWS(inert_residue_targets(make_quad_ext(5), 0));
}

TEST_CASE("conic solutions") {
    for (const EisInt q : {EisInt(5), EisInt(-1), EisInt(7)}) {
        const InertTargets t = inert_residue_targets(make_quad_ext(q));
        for (const EisInt beta : {EisInt(2), EisInt(2) * pow(2 * EisInt::lambda(), 15), EisInt(6, 2)}) {
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                const ConicSolution s = conic_solvable_units(t, beta, seed);
                CHECK(conic_holds(s, beta));
                const oracle::Quotient m(to_e(t.modulus));
                for (const EisInt* v : {&s.x, &s.y, &s.z, &s.t1, &s.t2}) CHECK(m.is_unit(to_e(*v)));
                const oracle::E lhs = oracle::add(oracle::mul(to_e(s.t1), oracle::mul(to_e(s.x), to_e(s.x))),
                                                  oracle::mul(to_e(mod(beta, t.modulus)),
                                                              oracle::mul(to_e(s.t2), oracle::mul(to_e(s.y), to_e(s.y)))));
                CHECK(m.same(lhs, oracle::mul(to_e(s.t3), oracle::mul(to_e(s.z), to_e(s.z)))));
                CHECK(std::find(t.targets.begin(), t.targets.end(), s.t1) != t.targets.end());
                CHECK(std::find(t.targets.begin(), t.targets.end(), s.t2) != t.targets.end());
                CHECK(std::find(t.targets.begin(), t.targets.end(), s.t3) != t.targets.end());
                if (!divides(2, t.modulus)) CHECK(s.t1 == s.t3);
            }
        }
    }
    // the seed changes the selected pair
    const InertTargets t = inert_residue_targets(make_quad_ext(5));
    const ConicSolution a = conic_solvable_units(t, 2, 0), b = conic_solvable_units(t, 2, 1);
    CHECK((a.t1 != b.t1 || a.t2 != b.t2));
}

TEST_CASE("inert and ramified primes are silent for n = q^3 r^2") {
    for (const EisInt q : {EisInt(5), EisInt(-1), EisInt(7)}) {
        const QuadExt ext = make_quad_ext(q);
        for (const EisInt r : {EisInt(1), EisInt(3, 1)}) {
            const FieldElem n(pow(ext.q, 3) * r * r);
            for (const auto& [p, k] : classify_primes(ext, 2000)) {
                if (k == PrimeKind::split || p.kind() == PrimeKind::ramified) continue;
                if (divides(p.value(), r)) continue;
                CHECK(is_silent(n, p));
            }
        }
    }
}
