#include "rankstab/selmer_local.hpp"

#include "rankstab/curve.hpp"
#include "rankstab/local.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankstab {

bool is_silent(const FieldElem& n, const PrimeElem& p) {
    if (p.kind() == PrimeKind::ramified) throw std::domain_error("is_silent: p = lambda lies over 3");
    return !is_local_power(n, p, 2);
}

const char* to_string(SilenceCheck c) {
    switch (c) {
        case SilenceCheck::holds: return "holds";
        case SilenceCheck::fails: return "fails";
        case SilenceCheck::skipped: return "skipped";
    }
    return "?";
}

SilenceCheck verify_silence_bruteforce(const EisInt& n, const PrimeElem& p, std::uint64_t max_norm) {
    if (divides(p.value(), 6 * n)) throw std::domain_error("verify_silence_bruteforce: bad reduction at " + p.value().str());
    if (!is_silent(FieldElem(n), p)) throw std::domain_error("verify_silence_bruteforce: n is a square at " + p.value().str());
    if (p.norm() > max_norm) return SilenceCheck::skipped;

    const ResidueField k(p);
    const Fq nk = k.reduce(n);
    const Fq w = k.omega();
    const std::vector<Point<Fq>> points = enumerate_points(nk, k);
    const auto code = [&](const Point<Fq>& P) -> std::int64_t {
        return P.infinity ? -1 : k.index(P.x) * k.size() + k.index(P.y);
    };
    std::vector<std::int64_t> images;
    images.reserve(points.size());
    for (const Point<Fq>& P : points) {
        const Point<Fq> image = phi(nk, w, P);
        if (!on_curve(nk, image)) return SilenceCheck::fails;
        if (image.infinity && !P.infinity) return SilenceCheck::fails;
        images.push_back(code(image));
    }
    std::sort(images.begin(), images.end());
    return std::adjacent_find(images.begin(), images.end()) == images.end() ? SilenceCheck::holds
                                                                             : SilenceCheck::fails;
}

const char* to_string(LocalCase c) {
    switch (c) {
        case LocalCase::in_S_isomorphic: return "in_S_isomorphic";
        case LocalCase::silent: return "silent";
        case LocalCase::good_unramified: return "good_unramified";
    }
    return "?";
}

bool LocalConditionReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

PreservationCertificate preservation_report(const SigmaSets& sigma, const FieldElem& t,
                                            const std::vector<PrimeElem>& t_support) {
    if (t.is_zero()) throw std::domain_error("preservation_report: t = 0");
    const QuadExt& ext = sigma.ext();
    PreservationCertificate cert;
    cert.q = ext.q;
    cert.r = sigma.r();
    cert.t = t;
    const EisInt q3 = pow(ext.q, 3);
    cert.n_base = FieldElem(q3 * sigma.r() * sigma.r());
    cert.n_twisted = cert.n_base * t * t;

    std::vector<PrimeElem> support;
    const auto add = [&](const PrimeElem& p) {
        if (std::find(support.begin(), support.end(), p) == support.end()) support.push_back(p);
    };
    for (const auto& [p, e] : factor(6 * ext.q * sigma.r()).factors) add(p);
    for (const EisInt* part : {&t.num(), &t.den()}) {
        const PartialFactorization f = factor_over(*part, t_support);
        std::vector<PrimeElem> primes;
        for (const auto& [p, e] : f.factors) primes.push_back(p);
        if (!f.cofactor.is_unit())
            for (const auto& [p, e] : factor(f.cofactor).factors) primes.push_back(p);
        for (const PrimeElem& p : primes) {
            if (!sigma.in_sigma(p))
                throw std::domain_error("preservation_report: t is not a Sigma-unit (prime " + p.value().str() + ")");
            add(p);
        }
    }
    std::sort(support.begin(), support.end());

    for (const PrimeElem& p : support) {
        LocalConditionReport rep{p, LocalCase::good_unramified, {}};
        if (sigma.in_S(p)) {
            rep.local_case = LocalCase::in_S_isomorphic;
            rep.checks.emplace_back("t is a local cube", is_local_power(t, p, 3));
        } else if (const PrimeKind kind = splitting_type(ext, p); kind != PrimeKind::split) {
            rep.local_case = LocalCase::silent;
            const bool prime_to_3 = p.kind() != PrimeKind::ramified;
            rep.checks.emplace_back("prime to 3", prime_to_3);
            rep.checks.emplace_back("n non-square locally", prime_to_3 && is_silent(cert.n_base, p));
        } else {
            const bool prime_to_6 = !divides(p.value(), 6);
            rep.checks.emplace_back("prime to 6", prime_to_6);
            rep.checks.emplace_back("good reduction base", valuation(cert.n_base, p) == 0);
            rep.checks.emplace_back("good reduction twist", valuation(cert.n_twisted, p) == 0);
        }
        cert.reports.push_back(std::move(rep));
    }
    cert.support = support;
    cert.verified = std::all_of(cert.reports.begin(), cert.reports.end(),
                                [](const LocalConditionReport& r) { return r.passed(); });
    cert.conclusion = "local conditions coincide at every prime";
    return cert;
}

}  // namespace rankstab
