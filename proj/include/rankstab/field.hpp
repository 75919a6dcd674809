#pragma once

// Elements of Q(w) as reduced fractions of Eisenstein integers.

#include "rankstab/eisenstein.hpp"

#include <string>

namespace rankstab {

/// num / den with gcd(num, den) a unit and den canonical (see canonical_associate).
class FieldElem {
public:
    FieldElem() : num_(0), den_(1) {}
    FieldElem(long v) : num_(v), den_(1) {}          // NOLINT(google-explicit-constructor)
    FieldElem(EisInt v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
    FieldElem(const EisInt& num, const EisInt& den);

    const EisInt& num() const { return num_; }
    const EisInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == EisInt(1); }

    FieldElem inverse() const;
    FieldElem pow(int exponent) const;

    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);

    friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
    friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
    friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
    friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
    friend FieldElem operator-(const FieldElem& x) { return FieldElem::raw(-x.num_, x.den_); }
    friend bool operator==(const FieldElem& x, const FieldElem& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    /// True if (num, den) is already in canonical form.
    static bool is_canonical(const EisInt& num, const EisInt& den);

    std::string str() const;

private:
    static FieldElem raw(EisInt num, EisInt den) {
        FieldElem out;
        out.num_ = std::move(num);
        out.den_ = std::move(den);
        return out;
    }

    EisInt num_;
    EisInt den_;
};

inline bool is_zero(const FieldElem& x) { return x.is_zero(); }

/// Valuation of a nonzero field element at a prime.
int valuation(const FieldElem& x, const PrimeElem& p);

/// Exact square root in Q(w), if any.
std::optional<FieldElem> sqrt_exact(const FieldElem& x);

/// Image of x in Z[w]/(m) when den(x) is a unit there.
std::optional<EisInt> reduce_mod(const FieldElem& x, const EisInt& m);

}  // namespace rankstab
