#include "rankstab/eisenstein.hpp"

#include "small_quotient.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace rankstab {

EisInt& EisInt::operator+=(const EisInt& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

EisInt& EisInt::operator-=(const EisInt& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

EisInt& EisInt::operator*=(const EisInt& o) {
    // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w
    Integer bd = b_ * o.b_;
    Integer na = a_ * o.a_ - bd;
    Integer nb = a_ * o.b_ + b_ * o.a_ - bd;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

std::string EisInt::str() const {
    if (b_ == 0) return a_.get_str();
    std::string out;
    if (a_ != 0) out = a_.get_str();
    if (b_ == 1) {
        out += out.empty() ? "w" : "+w";
    } else if (b_ == -1) {
        out += "-w";
    } else {
        if (b_ > 0 && !out.empty()) out += "+";
        out += b_.get_str() + "w";
    }
    return out;
}

EisInt EisInt::parse(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ') text += c;
    if (text.empty()) throw std::invalid_argument("empty Eisenstein integer");
    if (auto comma = text.find(','); comma != std::string::npos)
        return {parse_integer(text.substr(0, comma)), parse_integer(text.substr(comma + 1))};
    if (text.back() != 'w') return {parse_integer(text), 0};
    // split "A+Bw" at the last sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t i = text.size() - 1; i > 0; --i) {
        if (text[i] == '+' || text[i] == '-') {
            split = i;
            break;
        }
    }
    std::string a_part = split == std::string::npos ? "0" : text.substr(0, split);
    std::string b_part = text.substr(split == std::string::npos ? 0 : split);
    b_part.pop_back();
    if (b_part.empty() || b_part == "+") b_part = "1";
    if (b_part == "-") b_part = "-1";
    return {parse_integer(a_part), parse_integer(b_part)};
}

std::ostream& operator<<(std::ostream& os, const EisInt& x) { return os << x.str(); }

bool norm_order_less(const EisInt& x, const EisInt& y) {
    int c = cmp(x.norm(), y.norm());
    if (c != 0) return c < 0;
    c = cmp(x.a(), y.a());
    if (c != 0) return c < 0;
    return x.b() < y.b();
}

const std::array<EisInt, 6>& units() {
    static const std::array<EisInt, 6> table = {EisInt(1, 0),  EisInt(1, 1),   EisInt(0, 1),
                                                EisInt(-1, 0), EisInt(-1, -1), EisInt(0, -1)};
    return table;
}

EisInt pow(EisInt base, unsigned exponent) {
    EisInt result = 1;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

std::pair<EisInt, EisInt> divmod(const EisInt& x, const EisInt& y) {
    if (y.is_zero()) throw std::domain_error("divmod: division by zero");
    const Integer n = y.norm();
    const EisInt p = x * y.conj();
    const Integer two_n = 2 * n;
    EisInt q(floor_div(2 * p.a() + n, two_n), floor_div(2 * p.b() + n, two_n));
    EisInt r = x - q * y;
    return {std::move(q), std::move(r)};
}

EisInt mod(const EisInt& x, const EisInt& m) { return divmod(x, m).second; }

bool divides(const EisInt& d, const EisInt& x) {
    if (d.is_zero()) return x.is_zero();
    const EisInt p = x * d.conj();
    const Integer n = d.norm();
    return mpz_divisible_p(p.a().get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(p.b().get_mpz_t(), n.get_mpz_t());
}

std::optional<EisInt> divide_exact(const EisInt& x, const EisInt& d) {
    if (d.is_zero()) return std::nullopt;
    const EisInt p = x * d.conj();
    const Integer n = d.norm();
    if (!mpz_divisible_p(p.a().get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(p.b().get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    Integer qa, qb;
    mpz_divexact(qa.get_mpz_t(), p.a().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(qb.get_mpz_t(), p.b().get_mpz_t(), n.get_mpz_t());
    return EisInt(std::move(qa), std::move(qb));
}

EisInt exact_quotient(const EisInt& x, const EisInt& d) {
    auto q = divide_exact(x, d);
    if (!q) throw std::domain_error("exact_quotient: " + d.str() + " does not divide " + x.str());
    return *q;
}

EisInt powmod(const EisInt& x, const Integer& e, const EisInt& m) {
    if (e < 0) throw std::domain_error("powmod: negative exponent");
    if (!m.is_zero() && m.norm() <= Integer(1) << 24) {
        const detail::SmallQuotient k(m);
        return mod(k.element(k.pow(k.index(x), e)), m);
    }
    EisInt result = mod(1, m);
    EisInt base = mod(x, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mod(result * result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(result * base, m);
    }
    return result;
}

bool is_primary(const EisInt& x) {
    return mpz_divisible_ui_p(Integer(x.a() + 1).get_mpz_t(), 3) && mpz_divisible_ui_p(x.b().get_mpz_t(), 3);
}

namespace {

bool lambda_divides(const EisInt& x) {
    // Z[w]/(lambda) = F_3 with w -> 1
    return mpz_divisible_ui_p(Integer(x.a() + x.b()).get_mpz_t(), 3);
}

EisInt divide_by_lambda(const EisInt& x) {
    // x / (1 - w) = x (2 + w) / 3
    EisInt p = x * EisInt(2, 1);
    Integer qa, qb;
    mpz_divexact_ui(qa.get_mpz_t(), p.a().get_mpz_t(), 3);
    mpz_divexact_ui(qb.get_mpz_t(), p.b().get_mpz_t(), 3);
    return {std::move(qa), std::move(qb)};
}

}  // namespace

EisInt normalizing_unit(const EisInt& x) {
    if (x.is_zero()) throw std::domain_error("normalizing_unit: zero");
    EisInt rest = x;
    while (lambda_divides(rest)) rest = divide_by_lambda(rest);
    if (rest.is_unit()) return rest.conj();
    for (const EisInt& u : units())
        if (is_primary(u * rest)) return u;
    throw std::logic_error("normalizing_unit: no primary associate for " + x.str());
}

EisInt canonical_associate(const EisInt& x) {
    if (x.is_zero()) return x;
    return normalizing_unit(x) * x;
}

bool is_associate(const EisInt& x, const EisInt& y) {
    return canonical_associate(x) == canonical_associate(y);
}

EisInt euclid_gcd(const EisInt& x, const EisInt& y) {
    if (x.is_zero() && y.is_zero()) throw std::domain_error("euclid_gcd: both arguments are zero");
    EisInt u = x, v = y;
    while (!v.is_zero()) {
        EisInt r = mod(u, v);
        u = std::move(v);
        v = std::move(r);
    }
    return canonical_associate(u);
}

BezoutResult bezout(const EisInt& x, const EisInt& y) {
    if (x.is_zero() && y.is_zero()) throw std::domain_error("bezout: both arguments are zero");
    EisInt r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        EisInt s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        EisInt t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const EisInt u = normalizing_unit(r0);
    return {u * r0, u * s0, u * t0};
}

unsigned valuation(const EisInt& x, const EisInt& p) {
    if (x.is_zero()) throw std::domain_error("valuation: zero argument");
    if (p.is_unit() || p.is_zero()) throw std::domain_error("valuation: not a prime");
    unsigned v = 0;
    EisInt rest = x;
    while (auto q = divide_exact(rest, p)) {
        rest = std::move(*q);
        ++v;
    }
    return v;
}

std::optional<EisInt> sqrt_exact(const EisInt& x) {
    if (x.is_zero()) return EisInt(0);
    // w^2 = x with m = N(w): then Tr(w)^2 = Tr(x) + 2m and w = (x + m) / Tr(w).
    auto m = exact_sqrt(x.norm());
    if (!m) return std::nullopt;
    Integer t2 = x.trace() + 2 * *m;
    auto t = exact_sqrt(t2);
    if (!t) return std::nullopt;
    std::optional<EisInt> w;
    if (*t == 0) {
        // w is a rational multiple of sqrt(-3) = 1 + 2w, so x = -3 c^2
        if (x.b() != 0 || !mpz_divisible_ui_p(x.a().get_mpz_t(), 3)) return std::nullopt;
        auto c = exact_sqrt(-x.a() / 3);
        if (!c) return std::nullopt;
        w = EisInt(*c, 2 * *c);
    } else {
        w = divide_exact(x + EisInt(*m), EisInt(*t));
    }
    if (!w || *w * *w != x) return std::nullopt;
    return w;
}

// ---------------------------------------------------------------------------

const char* to_string(PrimeKind kind) {
    switch (kind) {
        case PrimeKind::split: return "split";
        case PrimeKind::inert: return "inert";
        case PrimeKind::ramified: return "ramified";
    }
    return "?";
}

bool is_prime_element(const EisInt& x) {
    if (x.is_zero()) throw std::domain_error("is_prime_element: zero");
    if (x.is_unit()) throw std::domain_error("is_prime_element: unit " + x.str());
    const Integer n = x.norm();
    if (is_prime(n)) return true;
    auto p = exact_sqrt(n);
    return p && *p % 3 == 2 && is_prime(*p);
}

PrimeElem PrimeElem::from(const EisInt& x) {
    if (!is_prime_element(x)) throw std::domain_error("not a prime element: " + x.str());
    const Integer n = x.norm();
    if (n == 3) return {EisInt::lambda(), n, PrimeKind::ramified};
    const EisInt v = canonical_associate(x);
    return {v, n, exact_sqrt(n) ? PrimeKind::inert : PrimeKind::split};
}

Integer PrimeElem::characteristic() const {
    if (kind_ == PrimeKind::inert) return *exact_sqrt(norm_);
    return norm_;
}

EisInt prime_above(const Integer& p) {
    if (p % 3 != 1 || !is_prime(p)) throw std::domain_error("prime_above: need a prime = 1 mod 3");
    auto s = sqrt_mod_prime(Integer(-3), p);
    Integer w = (*s - 1) % p;
    if (w < 0) w += p;
    if (mpz_odd_p(w.get_mpz_t())) w += p;
    w /= 2;  // w^2 + w + 1 = 0 mod p
    return euclid_gcd(EisInt(p), EisInt(-w, 1));
}

EisInt Factorization::product() const {
    EisInt out = unit;
    for (const auto& [p, e] : factors) out *= pow(p.value(), e);
    return out;
}

Factorization factor(const EisInt& x) {
    if (x.is_zero()) throw std::domain_error("factor: zero");
    Factorization out;
    EisInt rest = x;
    const auto take = [&](const EisInt& prime) {
        unsigned e = 0;
        while (auto q = divide_exact(rest, prime)) {
            rest = std::move(*q);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(PrimeElem::from(prime), e);
    };
    if (!x.is_unit()) {
        for (const auto& [p, _] : factor_integer(x.norm())) {
            if (p == 3) {
                take(EisInt::lambda());
            } else if (p % 3 == 2) {
                take(EisInt(p));
            } else {
                const EisInt pi = prime_above(p);
                take(pi);
                take(canonical_associate(pi.conj()));
            }
        }
    }
    if (!rest.is_unit()) throw std::logic_error("factor: leftover non-unit " + rest.str());
    out.unit = rest;
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
}

PartialFactorization factor_over(const EisInt& x, const std::vector<PrimeElem>& primes) {
    if (x.is_zero()) throw std::domain_error("factor_over: zero");
    PartialFactorization out{{}, x};
    for (const PrimeElem& p : primes) {
        unsigned e = 0;
        while (auto q = divide_exact(out.cofactor, p.value())) {
            out.cofactor = std::move(*q);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(p, e);
    }
    return out;
}

namespace {

std::vector<PrimeElem> compute_primes_up_to(std::uint64_t max_norm) {
    std::vector<PrimeElem> out;
    if (max_norm < 3) return out;
    std::vector<bool> composite(max_norm + 1, false);
    for (std::uint64_t i = 2; i * i <= max_norm; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= max_norm; j += i) composite[j] = true;
    for (std::uint64_t p = 2; p <= max_norm; ++p) {
        if (composite[p]) continue;
        if (p == 3) {
            out.push_back(PrimeElem::from(EisInt::lambda()));
        } else if (p % 3 == 2) {
            if (p <= max_norm / p) out.push_back(PrimeElem::from(EisInt(Integer(p))));
        } else {
            const EisInt pi = prime_above(Integer(p));
            out.push_back(PrimeElem::from(pi));
            out.push_back(PrimeElem::from(pi.conj()));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<PrimeElem> primes_up_to(std::uint64_t max_norm) {
    static std::mutex lock;
    static std::uint64_t cached_bound = 0;
    static std::vector<PrimeElem> cached;
    std::lock_guard<std::mutex> guard(lock);
    if (max_norm > cached_bound) {
        cached = compute_primes_up_to(std::max<std::uint64_t>(max_norm, 1 << 14));
        cached_bound = std::max<std::uint64_t>(max_norm, 1 << 14);
    }
    const auto end = std::upper_bound(cached.begin(), cached.end(), Integer(static_cast<unsigned long>(max_norm)),
                                      [](const Integer& n, const PrimeElem& p) { return n < p.norm(); });
    return {cached.begin(), end};
}

// ---------------------------------------------------------------------------

ResidueClass::ResidueClass(const EisInt& modulus, const EisInt& value) {
    if (modulus.is_zero()) throw std::domain_error("ResidueClass: zero modulus");
    modulus_ = canonical_associate(modulus);
    rep_ = mod(value, modulus_);
}

bool ResidueClass::is_unit() const {
    if (modulus_.is_unit()) return true;
    if (rep_.is_zero()) return false;
    return euclid_gcd(rep_, modulus_).is_unit();
}

std::vector<EisInt> residue_system(const EisInt& m_in) {
    if (m_in.is_zero()) throw std::domain_error("residue_system: zero modulus");
    const EisInt m = canonical_associate(m_in);
    Integer g;
    mpz_gcd(g.get_mpz_t(), m.a().get_mpz_t(), m.b().get_mpz_t());
    const Integer d = m.norm() / g;  // generator of (m) intersected with Z
    std::vector<EisInt> out;
    out.reserve(m.norm().get_ui());
    for (Integer y = 0; y < g; ++y)
        for (Integer x = 0; x < d; ++x) out.push_back(mod(EisInt(x, y), m));
    std::sort(out.begin(), out.end(), norm_order_less);
    return out;
}

std::vector<EisInt> unit_residues(const EisInt& m) {
    std::vector<EisInt> out;
    for (EisInt& r : residue_system(m))
        if (m.is_unit() || (!r.is_zero() && euclid_gcd(r, m).is_unit())) out.push_back(std::move(r));
    return out;
}

EisInt inverse_mod(const EisInt& x, const EisInt& m) {
    if (m.is_unit()) return 0;
    if (x.is_zero()) throw std::domain_error("inverse_mod: zero is not invertible");
    const BezoutResult r = bezout(x, m);
    if (!r.gcd.is_unit()) throw std::domain_error("inverse_mod: " + x.str() + " not a unit mod " + m.str());
    // s*x + t*m = g with g a unit
    return mod(r.s * exact_quotient(1, r.gcd), m);
}

ResidueClass crt_solve(const std::vector<ResidueClass>& constraints) {
    if (constraints.empty()) return {1, 0};
    EisInt m = constraints.front().modulus();
    EisInt x = constraints.front().representative();
    for (std::size_t i = 1; i < constraints.size(); ++i) {
        const EisInt& m2 = constraints[i].modulus();
        const EisInt& x2 = constraints[i].representative();
        const BezoutResult b = bezout(m, m2);
        const EisInt diff = x2 - x;
        auto k = divide_exact(diff, b.gcd);
        if (!k) throw std::domain_error("crt_solve: inconsistent targets modulo " + b.gcd.str());
        // x + m * s * k solves both: m*s = g - m2*t
        const EisInt lcm = exact_quotient(m * m2, b.gcd);
        x = mod(x + m * b.s * *k, lcm);
        m = canonical_associate(lcm);
    }
    return {m, x};
}

}  // namespace rankstab
