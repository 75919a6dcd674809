#include "rankstab/quad_ext.hpp"

#include "rankstab/local.hpp"
#include "rankstab/parallel.hpp"
#include "small_quotient.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace rankstab {

namespace {

bool is_square_mod(const EisInt& x, const EisInt& m) {
    const EisInt target = mod(x, m);
    for (const EisInt& y : residue_system(m))
        if (mod(y * y, m) == target) return true;
    return false;
}

PrimeKind type_at_two(const EisInt& q) {
    const PrimeElem two = PrimeElem::from(2);
    if (divides(EisInt(2), q)) return PrimeKind::ramified;
    if (is_local_power(FieldElem(q), two, 2)) return PrimeKind::split;
    // unramified iff q is a square modulo 4
    return is_square_mod(q, 4) ? PrimeKind::inert : PrimeKind::ramified;
}

using detail::SmallQuotient;

bool contains(const std::vector<PrimeElem>& v, const PrimeElem& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

QuadExt make_quad_ext(const EisInt& q_raw) {
    if (q_raw.is_zero()) throw std::domain_error("make_quad_ext: q = 0");
    const Factorization f = factor(q_raw);
    EisInt q = 1;
    unsigned unit_power = 0;
    const auto& us = units();
    for (unsigned i = 0; i < us.size(); ++i)
        if (us[i] == f.unit) unit_power = i;
    // units() runs through powers of -w^2, a generator; even powers are squares
    QuadExt ext;
    for (const auto& [p, e] : f.factors) {
        if (e % 2 == 0) continue;
        if (p.kind() == PrimeKind::ramified) throw std::domain_error("make_quad_ext: lambda ramified in F(sqrt q); unsupported");
        q *= p.value();
    }
    if (unit_power % 2 == 1) q = -q;
    if (q == EisInt(1)) throw std::domain_error("make_quad_ext: trivial extension (q is a square)");
    ext.q = q;
    for (const auto& [p, e] : f.factors)
        if (e % 2 == 1 && p.characteristic() != 2) ext.ramified.push_back(p);
    if (type_at_two(q) == PrimeKind::ramified) ext.ramified.push_back(PrimeElem::from(2));
    std::sort(ext.ramified.begin(), ext.ramified.end());
    ext.lambda_unramified = true;
    return ext;
}

PrimeKind splitting_type(const QuadExt& ext, const PrimeElem& p) {
    if (p.characteristic() == 2) return type_at_two(ext.q);
    if (divides(p.value(), ext.q)) return PrimeKind::ramified;
    return is_local_power(FieldElem(ext.q), p, 2) ? PrimeKind::split : PrimeKind::inert;
}

std::vector<std::pair<PrimeElem, PrimeKind>> classify_primes(const QuadExt& ext, std::uint64_t max_norm) {
    const std::vector<PrimeElem> primes = primes_up_to(max_norm);
    std::vector<PrimeKind> kinds(primes.size());
    parallel_for(static_cast<std::int64_t>(primes.size()),
                 [&](std::int64_t i) { kinds[static_cast<std::size_t>(i)] = splitting_type(ext, primes[i]); });
    std::vector<std::pair<PrimeElem, PrimeKind>> out;
    out.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) out.emplace_back(primes[i], kinds[i]);
    return out;
}

std::vector<std::pair<PrimeElem, PrimeKind>> classify_primes_serial(const QuadExt& ext, std::uint64_t max_norm) {
    std::vector<std::pair<PrimeElem, PrimeKind>> out;
    for (const PrimeElem& p : primes_up_to(max_norm)) out.emplace_back(p, splitting_type(ext, p));
    return out;
}

SigmaSets::SigmaSets(QuadExt ext, EisInt r, std::vector<PrimeElem> s_prime, std::vector<PrimeElem> s)
    : ext_(std::move(ext)), r_(std::move(r)), s_prime_(std::move(s_prime)), s_(std::move(s)) {}

bool SigmaSets::in_S(const PrimeElem& p) const { return contains(s_, p); }

bool SigmaSets::is_sigma_unit(const FieldElem& x) const {
    if (x.is_zero()) return false;
    for (const EisInt* part : {&x.num(), &x.den()})
        for (const auto& [p, e] : factor(*part).factors)
            if (!in_sigma(p)) return false;
    return true;
}

bool SigmaSets::is_sigma_unit(const FieldElem& x, const std::vector<PrimeElem>& support) const {
    if (x.is_zero()) return false;
    for (const EisInt* part : {&x.num(), &x.den()}) {
        const PartialFactorization f = factor_over(*part, support);
        if (!f.cofactor.is_unit()) return false;
        for (const auto& [p, e] : f.factors)
            if (!in_sigma(p)) return false;
    }
    return true;
}

SigmaSets build_sigma(const QuadExt& ext, const EisInt& r) {
    if (r.is_zero()) throw std::domain_error("build_sigma: r = 0");
    for (const PrimeElem& p : ext.ramified)
        if (divides(p.value(), r))
            throw std::domain_error("build_sigma: r is divisible by the ramified prime " + p.value().str());
    std::vector<PrimeElem> s_prime;
    for (const auto& [p, e] : factor(6 * ext.q * r).factors) s_prime.push_back(p);
    std::vector<PrimeElem> s;
    for (const PrimeElem& p : s_prime)
        if (p.kind() == PrimeKind::ramified || splitting_type(ext, p) == PrimeKind::split) s.push_back(p);
    return {ext, r, std::move(s_prime), std::move(s)};
}

InertTargets inert_residue_targets(const QuadExt& ext, unsigned witnesses) {
    if (ext.ramified.empty()) throw std::domain_error("inert_residue_targets: K/F unramified");
    if (witnesses == 0) throw std::domain_error("inert_residue_targets: need at least one witness");
    EisInt M = 1;
    for (const PrimeElem& p : ext.ramified) M *= pow(p.value(), p.characteristic() == 2 ? 3 : 1);
    M = canonical_associate(M);

    const std::vector<EisInt> classes = unit_residues(M);
    std::map<EisInt, std::vector<PrimeKind>, bool (*)(const EisInt&, const EisInt&)> verdicts(norm_order_less);
    for (const EisInt& u : classes) verdicts[u];
    std::size_t open = classes.size();

    std::uint64_t limit = 256;
    std::size_t seen = 0;
    while (open > 0) {
        const std::vector<PrimeElem> primes = primes_up_to(limit);
        while (seen < primes.size() && open > 0) {
            // all prime elements of one norm, in (a, b) order
            const Integer norm = primes[seen].norm();
            std::vector<std::pair<EisInt, PrimeKind>> batch;
            for (; seen < primes.size() && primes[seen].norm() == norm; ++seen) {
                const PrimeElem& p = primes[seen];
                if (!euclid_gcd(p.value(), M).is_unit()) continue;
                const PrimeKind kind = splitting_type(ext, p);
                for (const EisInt& unit : units()) batch.emplace_back(unit * p.value(), kind);
            }
            std::sort(batch.begin(), batch.end(),
                      [](const auto& l, const auto& r) { return norm_order_less(l.first, r.first); });
            for (const auto& [x, kind] : batch) {
                auto& list = verdicts[mod(x, M)];
                if (list.size() >= witnesses) continue;
                list.push_back(kind);
                if (list.size() == witnesses) --open;
            }
        }
        if (seen < primes.size()) break;
        if (limit > (1ULL << 26)) throw std::logic_error("inert_residue_targets: witness search exhausted");
        limit *= 4;
    }

    InertTargets out{M, {}, witnesses};
    for (const EisInt& u : classes) {
        const auto& list = verdicts[u];
        const bool all_inert = std::all_of(list.begin(), list.end(), [](PrimeKind k) { return k == PrimeKind::inert; });
        const bool none_inert = std::none_of(list.begin(), list.end(), [](PrimeKind k) { return k == PrimeKind::inert; });
        if (!all_inert && !none_inert)
            throw std::logic_error("inert_residue_targets: witnesses disagree on class " + u.str() + " mod " + M.str());
        if (all_inert) out.targets.push_back(u);
    }
    if (out.targets.empty()) throw std::logic_error("inert_residue_targets: no inert class mod " + M.str());
    return out;
}

std::vector<EisInt> witness_primes(const EisInt& u, const EisInt& m, unsigned count) {
    const SmallQuotient k(m);
    const long target = k.index(u);
    std::vector<EisInt> out;
    std::uint64_t limit = 256;
    std::size_t seen = 0;
    while (true) {
        const std::vector<PrimeElem> primes = primes_up_to(limit);
        while (seen < primes.size()) {
            const Integer norm = primes[seen].norm();
            for (; seen < primes.size() && primes[seen].norm() == norm; ++seen)
                for (const EisInt& unit : units()) {
                    EisInt x = unit * primes[seen].value();
                    if (k.index(x) == target) out.push_back(std::move(x));
                }
            if (out.size() >= count) {
                std::sort(out.begin(), out.end(), norm_order_less);
                out.resize(count);
                return out;
            }
        }
        if (limit > (1ULL << 26)) throw std::runtime_error("witness_primes: none found for " + u.str());
        limit *= 4;
    }
}

EisInt ConicSolution::u1() const { return mod(t1 * x * x, modulus); }
EisInt ConicSolution::u2() const { return mod(t2 * y * y, modulus); }
EisInt ConicSolution::u3() const { return mod(t3 * z * z, modulus); }

bool conic_holds(const ConicSolution& s, const EisInt& beta) {
    const EisInt& M = s.modulus;
    for (const EisInt* v : {&s.t1, &s.t2, &s.t3, &s.x, &s.y, &s.z})
        if (!euclid_gcd(*v, M).is_unit()) return false;
    return mod(s.t1 * s.x * s.x + beta * s.t2 * s.y * s.y - s.t3 * s.z * s.z, M).is_zero();
}

ConicSolution conic_solvable_units(const InertTargets& targets, const EisInt& beta, std::uint64_t seed) {
    if (beta.is_zero()) throw std::domain_error("conic_solvable_units: beta = 0");
    const EisInt& M = targets.modulus;
    const SmallQuotient k(M);
    const std::vector<EisInt> us = unit_residues(M);
    std::vector<long> unit_index(us.size());
    std::vector<long> unit_at(static_cast<std::size_t>(k.size()), -1);
    for (std::size_t i = 0; i < us.size(); ++i) {
        unit_index[i] = k.index(us[i]);
        unit_at[static_cast<std::size_t>(unit_index[i])] = static_cast<long>(i);
    }
    // distinct unit squares in order of first appearance, each with its first root
    std::vector<long> squares, root(static_cast<std::size_t>(k.size()), -1);
    for (std::size_t i = 0; i < us.size(); ++i) {
        const long s = k.mul(unit_index[i], unit_index[i]);
        if (root[static_cast<std::size_t>(s)] < 0) {
            root[static_cast<std::size_t>(s)] = static_cast<long>(i);
            squares.push_back(s);
        }
    }
    const long one = k.index(1, 0);
    const auto inverse = [&](long t) {
        for (const long u : unit_index)
            if (k.mul(t, u) == one) return u;
        throw std::logic_error("conic_solvable_units: target is not a unit");
    };

    const std::vector<EisInt>& ts = targets.targets;
    const std::size_t n = ts.size();
    std::vector<long> t_index(n), t_class(n);
    for (std::size_t i = 0; i < n; ++i) {
        t_index[i] = k.index(ts[i]);
        long c = k.size();
        for (const long s : squares) c = std::min(c, k.mul(t_index[i], s));
        t_class[i] = c;
    }
    const long b = k.index(beta);

    const auto search = [&](std::size_t i1, std::size_t i2, std::size_t i3) -> std::optional<ConicSolution> {
        const long inv3 = inverse(t_index[i3]);
        const long a = k.mul(t_index[i1], inv3), c = k.mul(k.mul(b, t_index[i2]), inv3);
        std::vector<long> cy(squares.size());
        for (std::size_t j = 0; j < squares.size(); ++j) cy[j] = k.mul(c, squares[j]);
        for (const long sx : squares) {
            const long ax = k.mul(a, sx);
            for (std::size_t j = 0; j < squares.size(); ++j) {
                const long v = k.add(ax, cy[j]);
                if (root[static_cast<std::size_t>(v)] < 0 || unit_at[static_cast<std::size_t>(v)] < 0) continue;
                ConicSolution s{ts[i1], ts[i2], ts[i3], us[static_cast<std::size_t>(root[static_cast<std::size_t>(sx)])],
                                us[static_cast<std::size_t>(root[static_cast<std::size_t>(squares[j])])],
                                us[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])], M};
                if (!conic_holds(s, beta)) throw std::logic_error("conic_solvable_units: inconsistent witness");
                return s;
            }
        }
        return std::nullopt;
    };

    // solvability depends only on the classes of the t_i modulo unit squares
    std::set<std::array<long, 3>> failed;
    const auto attempt = [&](std::size_t i1, std::size_t i2, std::size_t i3) -> std::optional<ConicSolution> {
        const std::array<long, 3> key{t_class[i1], t_class[i2], t_class[i3]};
        if (failed.count(key)) return std::nullopt;
        auto s = search(i1, i2, i3);
        if (!s) failed.insert(key);
        return s;
    };
    // t1 = t3 first; when 2 ramifies and v_2(beta) = 1 that has no unit solution mod 8
    for (std::size_t step = 0; step < n * n; ++step) {
        const std::size_t index = (seed + step) % (n * n);
        if (auto s = attempt(index / n, index % n, index / n)) return *s;
    }
    for (std::size_t step = 0; step < n * n * n; ++step) {
        const std::size_t index = (seed + step) % (n * n * n);
        const std::size_t i1 = index / (n * n), i2 = (index / n) % n, i3 = index % n;
        if (i1 == i3) continue;
        if (auto s = attempt(i1, i2, i3)) return *s;
    }
    throw std::logic_error("conic_solvable_units: no unit solution modulo " + M.str());
}

}  // namespace rankstab
