#pragma once

// Z[w]/(m) for N(m) <= 2^24 as Z^2 modulo the lattice of m and m w, in
// Hermite form {(g, e), (0, h)}; residues are indexed a * h + b.

#include "rankstab/eisenstein.hpp"

#include <stdexcept>
#include <utility>

namespace rankstab::detail {

class SmallQuotient {
public:
    explicit SmallQuotient(const EisInt& m) {
        if (m.norm() > Integer(1) << 24) throw std::domain_error("modulus too large: " + m.str());
        long r1[2] = {m.a().get_si(), m.b().get_si()};
        long r2[2] = {-r1[1], r1[0] - r1[1]};
        while (r2[0] != 0) {
            const long q = r1[0] / r2[0];
            r1[0] -= q * r2[0];
            r1[1] -= q * r2[1];
            std::swap(r1[0], r2[0]);
            std::swap(r1[1], r2[1]);
        }
        if (r1[0] < 0) r1[0] = -r1[0], r1[1] = -r1[1];
        g_ = r1[0];
        e_ = r1[1];
        h_ = r2[1] < 0 ? -r2[1] : r2[1];
    }
    long size() const { return g_ * h_; }
    long index(long a, long b) const {
        const long ra = floor_mod(a, g_);
        const long k = (a - ra) / g_;
        return ra * h_ + floor_mod(b - k * e_, h_);
    }
    long index(const EisInt& x) const {
        if (x.a().fits_slong_p() && x.b().fits_slong_p() && abs(x.a()) < (1L << 40) && abs(x.b()) < (1L << 40))
            return index(x.a().get_si(), x.b().get_si());
        const EisInt r = mod(x, EisInt(g_, 0) * h_);  // any multiple of M keeps the class
        return index(r.a().get_si(), r.b().get_si());
    }
    long add(long i, long j) const { return index(i / h_ + j / h_, i % h_ + j % h_); }
    long mul(long i, long j) const {
        const long a = i / h_, b = i % h_, c = j / h_, d = j % h_;
        return index(a * c - b * d, a * d + b * c - b * d);
    }
    long pow(long i, const Integer& e) const {
        long r = index(1, 0);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t k = bits; k-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(e.get_mpz_t(), k)) r = mul(r, i);
        }
        return r;
    }
    /// A representative of the class with index i.
    EisInt element(long i) const { return {Integer(i / h_), Integer(i % h_)}; }

private:
    static long floor_mod(long x, long m) {
        const long r = x % m;
        return r < 0 ? r + m : r;
    }
    long g_ = 1, e_ = 0, h_ = 1;
};

}  // namespace rankstab::detail
