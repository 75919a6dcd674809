#pragma once

// Exact arithmetic in the Eisenstein integers Z[w], w^2 + w + 1 = 0.

#include "rankstab/bigint.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankstab {

/// a + b*w with arbitrary-precision coordinates.
class EisInt {
public:
    EisInt() = default;
    EisInt(long a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
    EisInt(Integer a, Integer b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT

    static EisInt omega() { return {0, 1}; }
    static EisInt omega_squared() { return {-1, -1}; }
    /// The ramified prime above 3.
    static EisInt lambda() { return {1, -1}; }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }

    Integer norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
    Integer trace() const { return 2 * a_ - b_; }
    EisInt conj() const { return {a_ - b_, -b_}; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_unit() const { return norm() == 1; }
    bool is_rational() const { return b_ == 0; }

    EisInt& operator+=(const EisInt& o);
    EisInt& operator-=(const EisInt& o);
    EisInt& operator*=(const EisInt& o);

    friend EisInt operator+(EisInt x, const EisInt& y) { return x += y; }
    friend EisInt operator-(EisInt x, const EisInt& y) { return x -= y; }
    friend EisInt operator*(EisInt x, const EisInt& y) { return x *= y; }
    friend EisInt operator-(const EisInt& x) { return {-x.a_, -x.b_}; }
    friend bool operator==(const EisInt& x, const EisInt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const EisInt& x, const EisInt& y) { return !(x == y); }

    /// "a+bw" form, e.g. "3+w", "2-w", "-1-2w", "5".
    std::string str() const;
    static EisInt parse(const std::string& text);

private:
    Integer a_ = 0;
    Integer b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const EisInt& x);

/// Ordering by (norm, a, b); the enumeration order used everywhere.
bool norm_order_less(const EisInt& x, const EisInt& y);

/// The six units 1, -w^2 (= 1 + w), w, -1, w^2, -w in rotation order.
const std::array<EisInt, 6>& units();

EisInt pow(EisInt base, unsigned exponent);

/// Division with remainder: x = q*y + r, N(r) < N(y). The quotient is the
/// coordinate-wise rounding of x/y (ties round up), so r depends only on the
/// class of x modulo y.
std::pair<EisInt, EisInt> divmod(const EisInt& x, const EisInt& y);

/// Canonical representative of x modulo m (m nonzero).
EisInt mod(const EisInt& x, const EisInt& m);

bool divides(const EisInt& d, const EisInt& x);
std::optional<EisInt> divide_exact(const EisInt& x, const EisInt& d);
/// x / d; throws std::domain_error when d does not divide x.
EisInt exact_quotient(const EisInt& x, const EisInt& d);

/// x^e mod m by square-and-multiply.
EisInt powmod(const EisInt& x, const Integer& e, const EisInt& m);

/// Unit-normalized gcd; throws std::domain_error when both inputs vanish.
EisInt euclid_gcd(const EisInt& x, const EisInt& y);

struct BezoutResult {
    EisInt gcd;  // canonical associate
    EisInt s;
    EisInt t;    // s*x + t*y == gcd
};
BezoutResult bezout(const EisInt& x, const EisInt& y);

/// x = -1 (mod 3), i.e. a = -1 and b = 0 (mod 3).
bool is_primary(const EisInt& x);

/// Canonical associate: lambda^k times the primary associate of the
/// lambda-free part (or just lambda^k when that part is a unit). Zero maps to
/// zero. Not multiplicative: renormalize after products.
EisInt canonical_associate(const EisInt& x);
/// The unit u with u * x == canonical_associate(x).
EisInt normalizing_unit(const EisInt& x);
bool is_associate(const EisInt& x, const EisInt& y);

/// Exponent of the prime element p in x (x nonzero).
unsigned valuation(const EisInt& x, const EisInt& p);

/// Exact square root in Z[w], if x is a square.
std::optional<EisInt> sqrt_exact(const EisInt& x);

// ---------------------------------------------------------------------------
// Primes

enum class PrimeKind { split, inert, ramified };

const char* to_string(PrimeKind kind);

/// A canonical Eisenstein prime: lambda = 1 - w for the ramified prime,
/// the primary associate otherwise.
class PrimeElem {
public:
    /// Validates primality and normalizes; throws std::domain_error otherwise.
    static PrimeElem from(const EisInt& x);

    const EisInt& value() const { return value_; }
    const Integer& norm() const { return norm_; }
    PrimeKind kind() const { return kind_; }
    /// The rational prime below.
    Integer characteristic() const;

    friend bool operator==(const PrimeElem& x, const PrimeElem& y) { return x.value_ == y.value_; }
    friend bool operator!=(const PrimeElem& x, const PrimeElem& y) { return !(x == y); }
    friend bool operator<(const PrimeElem& x, const PrimeElem& y) {
        return norm_order_less(x.value_, y.value_);
    }

private:
    PrimeElem(EisInt v, Integer n, PrimeKind k) : value_(std::move(v)), norm_(std::move(n)), kind_(k) {}
    EisInt value_;
    Integer norm_;
    PrimeKind kind_ = PrimeKind::split;
};

/// True iff x generates a prime ideal. Throws std::domain_error on zero or a unit.
bool is_prime_element(const EisInt& x);

/// The canonical prime of norm p above a rational prime p = 1 (mod 3); its
/// conjugate's canonical associate is the other one.
EisInt prime_above(const Integer& p);

struct Factorization {
    EisInt unit = 1;
    std::vector<std::pair<PrimeElem, unsigned>> factors;  // sorted by norm order

    EisInt product() const;
};

/// x = unit * prod p^e. Throws std::domain_error on zero.
Factorization factor(const EisInt& x);

/// Divides out the given primes; returns the exponents and leaves the cofactor.
/// Used where the candidate support is known in advance.
struct PartialFactorization {
    std::vector<std::pair<PrimeElem, unsigned>> factors;
    EisInt cofactor;
};
PartialFactorization factor_over(const EisInt& x, const std::vector<PrimeElem>& primes);

/// All canonical primes of norm <= max_norm, in norm order.
std::vector<PrimeElem> primes_up_to(std::uint64_t max_norm);

// ---------------------------------------------------------------------------
// Residues

/// A class in Z[w]/(m), stored as the canonical representative modulo the
/// canonical associate of m.
class ResidueClass {
public:
    ResidueClass(const EisInt& modulus, const EisInt& value);

    const EisInt& modulus() const { return modulus_; }
    const EisInt& representative() const { return rep_; }
    bool is_unit() const;

    friend bool operator==(const ResidueClass& x, const ResidueClass& y) {
        return x.modulus_ == y.modulus_ && x.rep_ == y.rep_;
    }
    friend bool operator!=(const ResidueClass& x, const ResidueClass& y) { return !(x == y); }

private:
    EisInt modulus_;
    EisInt rep_;
};

/// Complete canonical residue system modulo m, in norm order.
std::vector<EisInt> residue_system(const EisInt& m);
/// The residues in residue_system(m) that are coprime to m.
std::vector<EisInt> unit_residues(const EisInt& m);
/// Multiplicative inverse of x modulo m; throws std::domain_error if not a unit.
EisInt inverse_mod(const EisInt& x, const EisInt& m);

/// Chinese remaindering. Non-coprime moduli are merged when consistent;
/// inconsistent targets throw std::domain_error.
ResidueClass crt_solve(const std::vector<ResidueClass>& constraints);

}  // namespace rankstab
