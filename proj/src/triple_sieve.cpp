#include "rankstab/triple_sieve.hpp"

#include "rankstab/local.hpp"
#include "rankstab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rankstab {

EisInt choose_gamma(const SigmaSets& sigma) {
    EisInt g = 1;
    for (const PrimeElem& p : sigma.S()) g *= p.value();
    return g;
}

CongruenceSystem CongruenceSystem::unconstrained(const EisInt& beta) {
    if (beta.is_zero()) throw std::domain_error("CongruenceSystem: beta = 0");
    CongruenceSystem s;
    s.modulus = 1;
    s.u1 = s.u2 = s.u3 = 0;
    s.gamma = 1;
    s.depth = 0;
    s.beta = beta;
    s.r = divide_exact(beta, 2).value_or(EisInt(0));
    return s;
}

EisInt CongruenceSystem::s_modulus() const {
    EisInt m = 1;
    for (const auto& [p, e] : depth_map)
        if (divides(p.value(), gamma)) m *= pow(p.value(), e);
    return m;
}

bool CongruenceSystem::consistent() const {
    if (modulus.is_zero()) return false;
    if (modulus.is_unit()) return true;
    for (const EisInt* u : {&u1, &u2, &u3})
        if (!euclid_gcd(*u, modulus).is_unit()) return false;
    return mod(u1 + beta * u2 - u3, modulus).is_zero();
}

CongruenceSystem build_congruence_system(const SigmaSets& sigma, const EisInt& r, unsigned depth, std::uint64_t seed) {
    if (depth < 5) throw std::domain_error("build_congruence_system: depth must be at least 5");
    if (r != sigma.r()) throw std::domain_error("build_congruence_system: r differs from the Sigma sets");
    CongruenceSystem sys;
    sys.gamma = choose_gamma(sigma);
    sys.depth = depth;
    sys.r = r;
    sys.seed = seed;
    sys.beta = 2 * r * pow(sys.gamma, 3 * depth);

    EisInt s_part = 1;
    for (const PrimeElem& p : sigma.S()) {
        sys.depth_map.emplace_back(p, depth);
        s_part *= pow(p.value(), depth);
    }
    std::vector<ResidueClass> c2{ResidueClass(s_part, -1)};
    std::vector<ResidueClass> c3{ResidueClass(s_part, -1)};
    EisInt inert_part = 1;
    const QuadExt& ext = sigma.ext();
    if (!ext.ramified.empty()) {
        const InertTargets targets = inert_residue_targets(ext);
        const ConicSolution conic = conic_solvable_units(targets, sys.beta, seed);
        inert_part = targets.modulus;
        for (const PrimeElem& p : ext.ramified) sys.depth_map.emplace_back(p, p.characteristic() == 2 ? 3 : 1);
        c2.emplace_back(inert_part, conic.u2());
        c3.emplace_back(inert_part, conic.u3());
        sys.conic = conic;
    }
    const ResidueClass u2 = crt_solve(c2);
    const ResidueClass u3 = crt_solve(c3);
    sys.modulus = u2.modulus();
    sys.u2 = u2.representative();
    sys.u3 = u3.representative();
    sys.u1 = mod(sys.u3 - sys.beta * sys.u2, sys.modulus);
    if (!sys.consistent())
        throw std::logic_error("build_congruence_system: u1 is not a unit modulo " + sys.modulus.str());
    if (sys.conic && mod(sys.u1 - sys.conic->u1(), inert_part) != EisInt(0))
        throw std::logic_error("build_congruence_system: inert part of u1 disagrees with the conic");
    return sys;
}

bool triple_satisfies(const PrimeTriple& t, const CongruenceSystem& system) {
    if (t.beta != system.beta) return false;
    if (t.p1 + t.beta * t.p2 != t.p3) return false;
    for (const EisInt* p : {&t.p1, &t.p2, &t.p3})
        if (p->norm() <= 1 || !is_prime_element(*p)) return false;
    if (canonical_associate(t.p2) != t.p2) return false;
    const EisInt& C = system.modulus;
    return mod(t.p1, C) == mod(system.u1, C) && mod(t.p2, C) == mod(system.u2, C) && mod(t.p3, C) == mod(system.u3, C);
}

std::vector<EisInt> coset_shell(const EisInt& u, const EisInt& m, const Integer& lo, const Integer& hi) {
    if (m.is_zero()) throw std::domain_error("coset_shell: zero modulus");
    std::vector<EisInt> out;
    if (hi <= lo || hi <= 0) return out;
    // x = u + m k with k in a disc around -u/m of radius sqrt(hi / N(m))
    const Integer nm = m.norm();
    const EisInt num = -(u * m.conj());  // -u/m = num / N(m)
    const long double inv = 1.0L / nm.get_d();
    const long double na = num.a().get_d(), nb = num.b().get_d();
    const long double sqrt3 = std::sqrt(3.0L);
    const long double cx = (na - nb / 2) * inv, cy = (nb * sqrt3 / 2) * inv;
    const long double radius = std::sqrt(hi.get_d() * inv);
    const long t_lo = static_cast<long>(std::floor((cy - radius) * 2 / sqrt3)) - 1;
    const long t_hi = static_cast<long>(std::ceil((cy + radius) * 2 / sqrt3)) + 1;
    for (long t = t_lo; t <= t_hi; ++t) {
        const long double dy = t * sqrt3 / 2 - cy;
        const long double half = radius * radius - dy * dy;
        if (half < -1) continue;
        const long double w = std::sqrt(std::max<long double>(half, 0)) + 1;
        const long s_lo = static_cast<long>(std::floor(cx + t / 2.0L - w));
        const long s_hi = static_cast<long>(std::ceil(cx + t / 2.0L + w));
        for (long s = s_lo; s <= s_hi; ++s) {
            EisInt x = u + m * EisInt(Integer(s), Integer(t));
            const Integer n = x.norm();
            if (n > lo && n <= hi) out.push_back(std::move(x));
        }
    }
    std::sort(out.begin(), out.end(), norm_order_less);
    return out;
}

std::string to_line(const PrimeTriple& t) {
    return t.p1.str() + " " + t.p2.str() + " " + t.p3.str() + " " + t.beta.str();
}

namespace {

bool usable_prime(const EisInt& x) { return x.norm() > 1 && is_prime_element(x); }

// Shell boundaries: (0, h0], (h0, 2 h0], ... capped at the norm bound.
class ShellCursor {
public:
    ShellCursor(const EisInt& modulus, Integer bound)
        : bound_(std::move(bound)), hi_(std::max<Integer>(4 * modulus.norm(), 64)) {}

    bool done() const { return lo_ >= bound_; }
    std::pair<Integer, Integer> next() {
        const Integer lo = lo_;
        const Integer hi = std::min(hi_, bound_);
        lo_ = hi;
        hi_ *= 2;
        return {lo, hi};
    }

private:
    Integer bound_;
    Integer lo_ = 0;
    Integer hi_;
};

// Primes of the p1 coset in enumeration order, grown one shell at a time.
class CosetPrimes {
public:
    CosetPrimes(EisInt u, EisInt m, const Integer& bound, bool parallel)
        : u_(std::move(u)), m_(std::move(m)), cursor_(m_, bound), parallel_(parallel) {}

    const std::vector<EisInt>& primes() const { return primes_; }
    bool complete() const { return cursor_.done(); }
    std::uint64_t candidates() const { return candidates_; }

    void extend() {
        const auto [lo, hi] = cursor_.next();
        const std::vector<EisInt> shell = coset_shell(u_, m_, lo, hi);
        candidates_ += shell.size();
        std::vector<char> keep(shell.size(), 0);
        const auto test = [&](std::int64_t i) { keep[i] = usable_prime(shell[i]) ? 1 : 0; };
        if (parallel_)
            parallel_for(static_cast<std::int64_t>(shell.size()), test);
        else
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(shell.size()); ++i) test(i);
        for (std::size_t i = 0; i < shell.size(); ++i)
            if (keep[i]) primes_.push_back(shell[i]);
    }

private:
    EisInt u_, m_;
    ShellCursor cursor_;
    bool parallel_;
    std::vector<EisInt> primes_;
    std::uint64_t candidates_ = 0;
};

struct P2Scan {
    EisInt p2;
    std::size_t position = 0;
    std::vector<PrimeTriple> found;
    bool done = false;
};

// Advances one p2 through the p1 primes currently known.
void advance(P2Scan& scan, const CosetPrimes& p1s, const CongruenceSystem& sys, std::size_t cap) {
    const EisInt& C = sys.modulus;
    const EisInt u3 = mod(sys.u3, C);
    const EisInt shift = sys.beta * scan.p2;
    const auto& primes = p1s.primes();
    for (; scan.position < primes.size() && scan.found.size() < cap; ++scan.position) {
        const EisInt& p1 = primes[scan.position];
        EisInt p3 = p1 + shift;
        if (p3.norm() <= 1 || mod(p3, C) != u3 || !is_prime_element(p3)) continue;
        scan.found.push_back({p1, scan.p2, std::move(p3), sys.beta});
    }
    if (scan.found.size() >= cap || (scan.position == primes.size() && p1s.complete())) scan.done = true;
}

void check_options(const CongruenceSystem& sys, const SieveOptions& options) {
    if (options.max_results == 0) throw std::domain_error("sieve_triples: max_results = 0");
    const Integer nc = sys.modulus.norm();
    if (options.enforce_norm_bound_floor && options.norm_bound < nc * nc)
        throw std::domain_error("sieve_triples: norm_bound below N(C)^2");
    if (!sys.consistent()) throw std::domain_error("sieve_triples: inconsistent congruence system");
}

bool canonical_p2(const EisInt& x) { return x.norm() > 1 && canonical_associate(x) == x && is_prime_element(x); }

SieveResult run_sieve(const CongruenceSystem& sys, const SieveOptions& options, bool parallel) {
    check_options(sys, options);
    SieveResult result;
    CosetPrimes p1s(sys.u1, sys.modulus, options.norm_bound, parallel);
    ShellCursor p2_shells(sys.modulus, options.norm_bound);
    const std::size_t block = parallel ? static_cast<std::size_t>(std::max(1, thread_count())) * 2 : 1;

    while (!p2_shells.done() && result.triples.size() < options.max_results) {
        const auto [lo, hi] = p2_shells.next();
        const std::vector<EisInt> shell = coset_shell(sys.u2, sys.modulus, lo, hi);
        result.p2_candidates += shell.size();
        std::vector<char> keep(shell.size(), 0);
        const auto test = [&](std::int64_t i) { keep[i] = canonical_p2(shell[i]) ? 1 : 0; };
        if (parallel)
            parallel_for(static_cast<std::int64_t>(shell.size()), test);
        else
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(shell.size()); ++i) test(i);
        std::vector<EisInt> p2s;
        for (std::size_t i = 0; i < shell.size(); ++i)
            if (keep[i]) p2s.push_back(shell[i]);

        for (std::size_t start = 0; start < p2s.size() && result.triples.size() < options.max_results;
             start += block) {
            const std::size_t cap = options.max_results - result.triples.size();
            std::vector<P2Scan> scans;
            for (std::size_t i = start; i < std::min(p2s.size(), start + block); ++i) scans.push_back(P2Scan{p2s[i], 0, {}, false});
            while (true) {
                const auto step = [&](std::int64_t i) {
                    if (!scans[i].done) advance(scans[i], p1s, sys, cap);
                };
                if (parallel)
                    parallel_for(static_cast<std::int64_t>(scans.size()), step);
                else
                    for (std::int64_t i = 0; i < static_cast<std::int64_t>(scans.size()); ++i) step(i);
                if (std::all_of(scans.begin(), scans.end(), [](const P2Scan& s) { return s.done; })) break;
                p1s.extend();
            }
            for (P2Scan& s : scans)
                for (PrimeTriple& t : s.found)
                    if (result.triples.size() < options.max_results) result.triples.push_back(std::move(t));
        }
    }
    result.p1_candidates = p1s.candidates();
    result.exhausted = result.triples.size() < options.max_results;
    return result;
}

}  // namespace

SieveResult sieve_triples(const CongruenceSystem& system, const SieveOptions& options) {
    return run_sieve(system, options, true);
}

SieveResult sieve_triples_serial(const CongruenceSystem& system, const SieveOptions& options) {
    return run_sieve(system, options, false);
}

namespace {

TwistParams twist_core(const PrimeTriple& triple, const CongruenceSystem& system) {
    if (!triple_satisfies(triple, system)) throw std::logic_error("derive_twist_params: triple fails the congruence system");
    if (system.beta != 2 * system.r * pow(system.gamma, 3 * system.depth))
        throw std::logic_error("derive_twist_params: beta is not 2 r gamma^(3 depth)");
    TwistParams tp;
    tp.r = system.r;
    tp.source = triple;
    tp.a = FieldElem(triple.p1, triple.p3);
    tp.b = FieldElem(pow(system.gamma, 3 * system.depth) * triple.p2, triple.p3);
    tp.t = tp.a * tp.b;
    if (tp.a + FieldElem(2 * system.r) * tp.b != FieldElem(1)) throw std::logic_error("derive_twist_params: a + 2rb != 1");
    const auto add = [&](const EisInt& x) {
        const PrimeElem p = PrimeElem::from(x);
        if (std::find(tp.support.begin(), tp.support.end(), p) == tp.support.end()) tp.support.push_back(p);
    };
    if (!system.gamma.is_unit())
        for (const auto& [p, e] : factor(system.gamma).factors) add(p.value());
    add(triple.p1);
    add(triple.p2);
    add(triple.p3);
    std::sort(tp.support.begin(), tp.support.end());
    return tp;
}

}  // namespace

TwistParams derive_twist_params(const PrimeTriple& triple, const CongruenceSystem& system) {
    return twist_core(triple, system);
}

TwistParams derive_twist_params(const PrimeTriple& triple, const CongruenceSystem& system, const SigmaSets& sigma) {
    TwistParams tp = twist_core(triple, system);
    if (!sigma.is_sigma_unit(tp.a, tp.support)) throw std::logic_error("derive_twist_params: a is not a Sigma-unit");
    if (!sigma.is_sigma_unit(tp.b, tp.support)) throw std::logic_error("derive_twist_params: b is not a Sigma-unit");
    for (const PrimeElem& p : sigma.S())
        if (!is_local_power(tp.t, p, 3))
            throw std::logic_error("derive_twist_params: t is not a cube at " + p.value().str());
    return tp;
}

}  // namespace rankstab
