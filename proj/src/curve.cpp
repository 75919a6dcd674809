#include "rankstab/curve.hpp"

#include "rankstab/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rankstab {

namespace {

void require_on(const CurveModel& e, const CurvePoint& p, const char* what) {
    if (!e.contains(p)) throw std::domain_error(std::string(what) + ": point not on y^2 = x^3 + " + e.n.str());
}

// exponents of num and den over primes, using `support` first and factor() on leftovers
std::map<EisInt, std::pair<unsigned, unsigned>, bool (*)(const EisInt&, const EisInt&)>
joint_exponents(const FieldElem& x, const std::vector<PrimeElem>& support) {
    std::map<EisInt, std::pair<unsigned, unsigned>, bool (*)(const EisInt&, const EisInt&)> out(norm_order_less);
    const auto collect = [&](const EisInt& v, bool is_den) {
        PartialFactorization partial = factor_over(v, support);
        for (const auto& [p, k] : partial.factors) (is_den ? out[p.value()].second : out[p.value()].first) += k;
        if (!partial.cofactor.is_unit())
            for (const auto& [p, k] : factor(partial.cofactor).factors)
                (is_den ? out[p.value()].second : out[p.value()].first) += k;
    };
    collect(x.num(), false);
    collect(x.den(), true);
    return out;
}

}  // namespace

CurvePoint CurveModel::from_original(const CurvePoint& p) const {
    if (p.infinity) return p;
    const FieldElem u2 = scaling * scaling;
    return CurvePoint::affine(u2 * p.x, u2 * scaling * p.y);
}

CurveModel curve_from_n(const FieldElem& n0) { return curve_from_n(n0, {}); }

CurveModel curve_from_n(const FieldElem& n0, const std::vector<PrimeElem>& support) {
    if (n0.is_zero()) throw std::domain_error("curve_from_n: n = 0");
    // n0 * den^6 = num * den^5 is integral
    EisInt n = n0.num() * pow(n0.den(), 5);
    FieldElem u = n0.den();
    for (const auto& [p, exps] : joint_exponents(n0, support)) {
        const unsigned k = (exps.first + 5 * exps.second) / 6;
        if (k == 0) continue;
        n = exact_quotient(n, pow(p, 6 * k));
        u /= FieldElem(pow(p, k));
    }
    return {n, u};
}

CurvePoint point_add(const CurveModel& e, const CurvePoint& p, const CurvePoint& q) {
    require_on(e, p, "point_add");
    require_on(e, q, "point_add");
    return add(FieldElem(e.n), p, q);
}

CurvePoint scalar_mul(const CurveModel& e, const Integer& k, const CurvePoint& p) {
    require_on(e, p, "scalar_mul");
    return multiply(FieldElem(e.n), k, p);
}

CurvePoint zeta_action(const CurveModel& e, const CurvePoint& p) {
    require_on(e, p, "zeta_action");
    return zeta(FieldElem(EisInt::omega()), p);
}

CurvePoint phi_endo(const CurveModel& e, const CurvePoint& p) {
    require_on(e, p, "phi_endo");
    return phi(FieldElem(e.n), FieldElem(EisInt::omega()), p);
}

bool has_good_reduction(const CurveModel& e, const PrimeElem& p) { return !divides(p.value(), 6 * e.n); }

Point<Fq> reduce_point(const CurvePoint& p, const ResidueField& k) {
    if (p.infinity) return {};
    auto x = k.reduce(p.x);
    auto y = k.reduce(p.y);
    if (!x || !y) return {};
    return Point<Fq>::affine(*x, *y);
}

std::int64_t count_points_raw(const Fq& n, const ResidueField& k) {
    const std::vector<std::int32_t> roots = square_root_counts(k);
    std::int64_t total = 1;
    for (std::int64_t i = 0; i < k.size(); ++i) {
        const Fq x = k.element(i);
        total += roots[static_cast<std::size_t>(k.index(x * x * x + n))];
    }
    return total;
}

std::int64_t count_points(const CurveModel& e, const PrimeElem& p) {
    if (!has_good_reduction(e, p))
        throw std::domain_error("count_points: bad reduction at " + p.value().str());
    const ResidueField k(p);
    return count_points_raw(k.reduce(e.n), k);
}

std::vector<Point<Fq>> enumerate_points(const Fq& n, const ResidueField& k) {
    std::vector<std::vector<std::int64_t>> roots(static_cast<std::size_t>(k.size()));
    for (std::int64_t i = 0; i < k.size(); ++i) {
        const Fq y = k.element(i);
        roots[static_cast<std::size_t>(k.index(y * y))].push_back(i);
    }
    std::vector<Point<Fq>> out{Point<Fq>::at_infinity()};
    for (std::int64_t i = 0; i < k.size(); ++i) {
        const Fq x = k.element(i);
        for (std::int64_t j : roots[static_cast<std::size_t>(k.index(x * x * x + n))])
            out.push_back(Point<Fq>::affine(x, k.element(j)));
    }
    return out;
}

std::vector<std::int64_t> count_points_sweep(const CurveModel& e, const std::vector<PrimeElem>& primes) {
    std::vector<std::int64_t> out(primes.size());
    parallel_for(static_cast<std::int64_t>(primes.size()),
                 [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = count_points(e, primes[i]); });
    return out;
}

std::vector<std::int64_t> count_points_sweep_serial(const CurveModel& e, const std::vector<PrimeElem>& primes) {
    std::vector<std::int64_t> out;
    out.reserve(primes.size());
    for (const PrimeElem& p : primes) out.push_back(count_points(e, p));
    return out;
}

std::int64_t bound_from_witnesses(const std::vector<TorsionWitness>& witnesses) {
    std::map<std::int64_t, int> ell_exponent;  // -1 = unconstrained so far
    for (const TorsionWitness& w : witnesses) {
        if (w.order <= 0) throw std::domain_error("torsion witness with nonpositive order");
        std::int64_t m = w.order;
        for (std::int64_t l = 2; l * l <= m; ++l)
            for (; m % l == 0; m /= l) ell_exponent.emplace(l, -1);
        if (m > 1) ell_exponent.emplace(m, -1);
    }
    std::int64_t bound = 1;
    for (auto& [l, exponent] : ell_exponent) {
        for (const TorsionWitness& w : witnesses) {
            if (w.prime.characteristic() == l) continue;
            int v = 0;
            for (std::int64_t m = w.order; m % l == 0; m /= l) ++v;
            exponent = exponent < 0 ? v : std::min(exponent, v);
        }
        if (exponent < 0) throw std::domain_error("torsion witnesses do not constrain the " + std::to_string(l) + "-part");
        for (int i = 0; i < exponent; ++i) bound *= l;
    }
    return bound;
}

TorsionBound torsion_bound(const CurveModel& e, unsigned count) {
    if (count < 2) throw std::domain_error("torsion_bound: need at least two witnesses");
    TorsionBound tb;
    std::vector<Integer> characteristics;
    std::uint64_t limit = 64;
    std::size_t seen = 0;
    while (true) {
        const std::vector<PrimeElem> primes = primes_up_to(limit);
        for (; seen < primes.size(); ++seen) {
            const PrimeElem& p = primes[seen];
            if (!has_good_reduction(e, p)) continue;
            tb.witnesses.push_back({p, count_points(e, p)});
            const Integer c = p.characteristic();
            if (std::find(characteristics.begin(), characteristics.end(), c) == characteristics.end())
                characteristics.push_back(c);
            if (tb.witnesses.size() >= count && characteristics.size() >= 2) {
                tb.bound = bound_from_witnesses(tb.witnesses);
                return tb;
            }
        }
        if (limit >= (1ULL << 20)) {
            std::string tried;
            for (const auto& w : tb.witnesses) tried += " " + w.prime.value().str();
            throw std::runtime_error("torsion_bound: not enough good primes below 2^20; witnesses:" + tried);
        }
        limit *= 4;
    }
}

NontorsionCheck check_nontorsion(const CurveModel& e, const CurvePoint& p, const TorsionBound& tb,
                                 std::uint64_t max_norm) {
    require_on(e, p, "check_nontorsion");
    if (p.infinity) return {};
    const Integer B = tb.bound;
    for (const PrimeElem& prime : primes_up_to(max_norm)) {
        if (!has_good_reduction(e, prime)) continue;
        const ResidueField k(prime);
        const Point<Fq> reduced = reduce_point(p, k);
        if (reduced.infinity) continue;
        if (!multiply(k.reduce(e.n), B, reduced).infinity) return {true, prime};
    }
    return {!multiply(FieldElem(e.n), B, p).infinity, std::nullopt};
}

bool is_nontorsion(const CurveModel& e, const CurvePoint& p, const TorsionBound& tb) {
    return check_nontorsion(e, p, tb).nontorsion;
}

KPoint twist_transport(const CurveModel& e, const EisInt& q, const CurvePoint& p) {
    if (q.is_zero()) throw std::domain_error("twist_transport: q = 0");
    const FieldElem Q(q);
    const FieldElem n(e.n);
    if (!on_curve(Q * Q * Q * n, p)) throw std::domain_error("twist_transport: point not on the twisted model");
    KPoint image = transport_to_twist(Q, p);
    if (!on_curve(KElem(n, 0, Q), image)) throw std::logic_error("twist_transport: image off curve");
    return image;
}

}  // namespace rankstab
