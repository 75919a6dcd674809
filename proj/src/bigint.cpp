#include "rankstab/bigint.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace rankstab {

namespace {

constexpr std::array<unsigned long, 13> kWitnessBases = {2, 3, 5, 7, 11, 13, 17,
                                                          19, 23, 29, 31, 37, 41};

bool strong_probable_prime(const Integer& n, const Integer& d, unsigned s, unsigned long base) {
    Integer a = base;
    a %= n;
    if (a == 0) return true;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

Integer rho_split(const Integer& n) {
    // Pollard-Brent; n is odd, composite, not a perfect power.
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto f = [&](const Integer& v) {
            Integer out = v * v + c;
            out %= n;
            return out;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = x - y;
                    if (diff < 0) diff = -diff;
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer diff = x - ys;
                if (diff < 0) diff = -diff;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const Integer& n, unsigned mult, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += mult;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2;; ++k) {
            Integer root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                factor_into(root, mult * static_cast<unsigned>(k), out);
                return;
            }
        }
    }
    Integer d = rho_split(n);
    Integer rest = n / d;
    factor_into(d, mult, out);
    factor_into(rest, mult, out);
}

}  // namespace

Integer deterministic_primality_limit() {
    static const Integer limit("3317044064679887385961981");
    return limit;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned long p : kWitnessBases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (unsigned long base : kWitnessBases)
        if (!strong_probable_prime(n, d, s, base)) return false;
    if (n < deterministic_primality_limit()) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
}

bool primality_is_proven(const Integer& n) { return n < deterministic_primality_limit(); }

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n_in) {
    if (n_in <= 0) throw std::domain_error("factor_integer: argument must be positive");
    std::map<Integer, unsigned> found;
    Integer n = n_in;
    for (unsigned long p = 2; p < 2000 && n > 1; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        found[Integer(p)] += e;
    }
    factor_into(n, 1, found);
    return {found.begin(), found.end()};
}

std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r != n) return std::nullopt;
    return r;
}

std::optional<Integer> sqrt_mod_prime(const Integer& a_in, const Integer& p) {
    Integer a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return Integer(0);
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    Integer q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Integer c, x, t, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        Integer b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
        x = (x * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return x;
}

Integer floor_div(const Integer& n, const Integer& d) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer parse_integer(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("bad integer literal: " + text);
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad integer literal: " + text);
    return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

}  // namespace rankstab
