#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "rankstab/curve.hpp"
#include "rankstab/local.hpp"
#include "rankstab/selmer_local.hpp"
#include "rankstab/triple_sieve.hpp"

#include <algorithm>
#include <set>

using namespace rankstab;

namespace {

bool square_mod(oracle::E x, oracle::E p) {
    const oracle::Quotient k(p);
    for (const oracle::E& y : k.elements())
        if (k.same(oracle::mul(y, y), x)) return true;
    return false;
}

// affine points of y^2 = x^3 + n mod p with x = 0, the only candidates for
// a nontrivial kernel of 1 - zeta when p is prime to 3
std::vector<oracle::E> kernel_candidates(oracle::E n, oracle::E p) {
    const oracle::Quotient k(p);
    std::vector<oracle::E> ys;
    for (const oracle::E& y : k.elements())
        if (k.same(oracle::mul(y, y), n)) ys.push_back(y);
    return ys;
}

bool contains(const std::vector<PrimeElem>& v, const EisInt& x) {
    return std::any_of(v.begin(), v.end(), [&](const PrimeElem& p) { return p.value() == x; });
}

}  // namespace

TEST_CASE("is_silent examples") {
    CHECK(is_silent(5, PrimeElem::from(EisInt(3, 1))));
    CHECK_FALSE(is_silent(5, PrimeElem::from(2)));
    CHECK(is_silent(2, PrimeElem::from(2)));
    CHECK(is_silent(FieldElem(1, 2), PrimeElem::from(2)));
    CHECK_FALSE(is_silent(4, PrimeElem::from(2)));
    CHECK_THROWS_AS(is_silent(5, PrimeElem::from(EisInt::lambda())), std::domain_error);
}

TEST_CASE("is_silent against squares mod p") {
    oracle::Gen g(31);
    for (const PrimeElem& p : primes_up_to(600)) {
        if (p.characteristic() == 2 || p.characteristic() == 3) continue;
        for (int i = 0; i < 6; ++i) {
            const oracle::E n = g.nonzero(40);
            const EisInt ne = to_eis(n);
            if (oracle::divides(to_e(p.value()), n)) {
                const unsigned v = valuation(ne, p.value());
                if (v % 2 == 1) CHECK(is_silent(ne, p));
                continue;
            }
            CHECK(is_silent(ne, p) == !square_mod(n, to_e(p.value())));
        }
    }
}

TEST_CASE("is_silent depends only on the square class") {
    oracle::Gen g(32);
    const std::vector<PrimeElem> primes = primes_up_to(400);
    for (int i = 0; i < 400; ++i) {
        const PrimeElem& p = primes[static_cast<std::size_t>(g.range(0, static_cast<oracle::i64>(primes.size()) - 1))];
        if (p.kind() == PrimeKind::ramified) continue;
        const FieldElem n(to_eis(g.nonzero(30)), to_eis(g.nonzero(10)));
        const EisInt s = to_eis(g.nonzero(20));
        if (divides(p.value(), s)) continue;
        CHECK(is_silent(n, p) == is_silent(n * FieldElem(s * s), p));
        CHECK(is_silent(n, p) == is_silent(n / FieldElem(s * s), p));
    }
}

TEST_CASE("silence by brute force") {
    CHECK(verify_silence_bruteforce(5, PrimeElem::from(EisInt(3, 1))) == SilenceCheck::holds);
    CHECK_FALSE(square_mod({5, 0}, {3, 1}));
    CHECK_THROWS_AS(verify_silence_bruteforce(1, PrimeElem::from(EisInt(3, 1))), std::domain_error);
    CHECK_THROWS_AS(verify_silence_bruteforce(7, PrimeElem::from(EisInt(3, 1))), std::domain_error);
    CHECK_THROWS_AS(verify_silence_bruteforce(5, PrimeElem::from(2)), std::domain_error);

    int n13 = 0;
    for (const PrimeElem& p : primes_up_to(13)) {
        if (p.norm() != 13 || square_mod({2, 0}, to_e(p.value()))) continue;
        CHECK(is_silent(2, p));
        CHECK(verify_silence_bruteforce(2, p) == SilenceCheck::holds);
        CHECK(kernel_candidates({2, 0}, to_e(p.value())).empty());
        ++n13;
    }
    CHECK(n13 == 2);

    int beyond = 0;
    for (const PrimeElem& p : primes_up_to(700)) {
        if (p.norm() <= 500 || p.characteristic() == 5 || !is_silent(5, p)) continue;
        CHECK(verify_silence_bruteforce(5, p) == SilenceCheck::skipped);
        CHECK(verify_silence_bruteforce(5, p, 700) == SilenceCheck::holds);
        ++beyond;
    }
    CHECK(beyond > 0);
}

TEST_CASE("silent primes give a bijective phi on reductions") {
    for (const EisInt n : {EisInt(2), EisInt(5), EisInt(7), EisInt(125), EisInt(-125), EisInt(125) * 4}) {
        int checked = 0;
        for (const PrimeElem& p : primes_up_to(500)) {
            if (p.characteristic() == 2 || p.characteristic() == 3 || divides(p.value(), n)) continue;
            const bool silent = is_silent(n, p);
            const std::vector<oracle::E> ys = kernel_candidates(to_e(n), to_e(p.value()));
            CHECK(silent == ys.empty());
            if (!silent) {
                // (0, sqrt n) is a nonzero point killed by phi
                const ResidueField k(p);
                const Fq nk = k.reduce(n);
                for (const oracle::E& y : ys) {
                    const Point<Fq> pt = Point<Fq>::affine(k.zero(), k.reduce(to_eis(y)));
                    CHECK(on_curve(nk, pt));
                    CHECK(phi(nk, k.omega(), pt).infinity);
                }
                continue;
            }
            CHECK(verify_silence_bruteforce(n, p) == SilenceCheck::holds);
            ++checked;
        }
        CHECK(checked > 20);
    }
}

TEST_CASE("preservation for t = 1") {
    const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
    const PreservationCertificate c = preservation_report(sigma, 1);
    CHECK(c.verified);
    CHECK(c.n_base == FieldElem(125));
    CHECK(c.n_twisted == c.n_base);
    REQUIRE(c.reports.size() == 3);
    for (const LocalConditionReport& r : c.reports) {
        CHECK(r.passed());
        if (r.prime.value() == EisInt::lambda() || r.prime.value() == EisInt(2))
            CHECK(r.local_case == LocalCase::in_S_isomorphic);
        else
            CHECK(r.local_case == LocalCase::silent);
    }
    CHECK(c.conclusion == "local conditions coincide at every prime");
}

TEST_CASE("report coverage and case invariants") {
    oracle::Gen g(33);
    const QuadExt ext = make_quad_ext(5);
    const SigmaSets sigma = build_sigma(ext, EisInt(2, 3));
    std::vector<EisInt> pool = {EisInt::lambda(), 2};
    for (const PrimeElem& p : primes_up_to(300))
        if (sigma.in_sigma(p) && !sigma.in_S(p)) pool.push_back(p.value());
    for (int i = 0; i < 60; ++i) {
        EisInt num = 1, den = 1;
        for (int j = 0; j < 4; ++j) {
            const EisInt& p = pool[static_cast<std::size_t>(g.range(0, static_cast<oracle::i64>(pool.size()) - 1))];
            (g.range(0, 1) ? num : den) *= p;
        }
        const FieldElem t(num, den);
        const PreservationCertificate c = preservation_report(sigma, t);
        std::set<EisInt, bool (*)(const EisInt&, const EisInt&)> expected(norm_order_less);
        for (const EisInt part : {6 * ext.q * sigma.r(), t.num(), t.den()})
            for (const auto& [p, e] : factor(part).factors) expected.insert(p.value());
        std::set<EisInt, bool (*)(const EisInt&, const EisInt&)> got(norm_order_less);
        for (const LocalConditionReport& r : c.reports) got.insert(r.prime.value());
        CHECK(got == expected);
        bool all = true;
        for (const LocalConditionReport& r : c.reports) {
            all = all && r.passed();
            switch (r.local_case) {
                case LocalCase::in_S_isomorphic:
                    CHECK(sigma.in_S(r.prime));
                    REQUIRE(r.checks.size() == 1);
                    CHECK(r.checks[0].first == "t is a local cube");
                    CHECK(r.checks[0].second == is_local_power(t, r.prime, 3));
                    break;
                case LocalCase::silent:
                    CHECK(splitting_type(ext, r.prime) != PrimeKind::split);
                    CHECK(r.passed());
                    break;
                case LocalCase::good_unramified:
                    CHECK(splitting_type(ext, r.prime) == PrimeKind::split);
                    break;
            }
        }
        CHECK(c.verified == all);
    }
}

TEST_CASE("preservation for global cubes") {
    oracle::Gen g(34);
    const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
    std::vector<EisInt> pool = {EisInt::lambda(), 2};
    for (const PrimeElem& p : primes_up_to(200))
        if (sigma.in_sigma(p) && !sigma.in_S(p)) pool.push_back(p.value());
    for (int i = 0; i < 40; ++i) {
        EisInt num = 1, den = 1;
        for (int j = 0; j < 3; ++j) {
            const EisInt& p = pool[static_cast<std::size_t>(g.range(0, static_cast<oracle::i64>(pool.size()) - 1))];
            (g.range(0, 1) ? num : den) *= p;
        }
        const FieldElem c = FieldElem(num, den);
        CHECK(preservation_report(sigma, c * c * c).verified);
    }
}

TEST_CASE("preservation failures and guards") {
    const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
    // 2 has valuation 1 at (2), not a local cube
    const PreservationCertificate c = preservation_report(sigma, 2);
    CHECK_FALSE(c.verified);
    bool flagged = false;
    for (const LocalConditionReport& r : c.reports)
        if (!r.passed()) flagged = flagged || r.prime.value() == EisInt(2);
    CHECK(flagged);
    // 7 + w has norm 43; a split prime of K is not a Sigma-prime
    const PrimeElem p43 = PrimeElem::from(EisInt(7, 1));
    if (!sigma.in_sigma(p43)) CHECK_THROWS_AS(preservation_report(sigma, EisInt(7, 1)), std::domain_error);
    for (const PrimeElem& p : primes_up_to(100))
        if (!sigma.in_sigma(p)) CHECK_THROWS_AS(preservation_report(sigma, FieldElem(1, p.value())), std::domain_error);
    CHECK_THROWS_AS(preservation_report(sigma, 0), std::domain_error);
}

TEST_CASE("preservation for the pipeline twist") {
    const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
    const CongruenceSystem sys = build_congruence_system(sigma, 1);
    const Integer nc = sys.modulus.norm();
    const SieveResult res = sieve_triples(sys, {nc * nc, 2, true});
    REQUIRE(!res.triples.empty());
    const TwistParams params = derive_twist_params(res.triples[0], sys, sigma);
    const PreservationCertificate c = preservation_report(sigma, params.t, params.support);
    CHECK(c.verified);
    CHECK(contains(c.support, EisInt::lambda()));
    CHECK(contains(c.support, 2));
    for (const LocalConditionReport& r : c.reports)
        if (r.local_case == LocalCase::in_S_isomorphic) {
            CHECK(r.passed());
            CHECK(is_local_power(params.t, r.prime, 3));
        }
}
