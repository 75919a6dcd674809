#pragma once

// Machine-word arithmetic in the residue field k_p = Z[w]/(p) of a small prime.

#include "rankstab/field.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace rankstab {

class ResidueField;

/// c0 + c1*w in k_p. For prime fields (split p, lambda) c1 is always zero.
class Fq {
public:
    Fq() = default;
    Fq(const ResidueField* field, std::int64_t c0, std::int64_t c1) : field_(field), c0_(c0), c1_(c1) {}

    const ResidueField* field() const { return field_; }
    std::int64_t c0() const { return c0_; }
    std::int64_t c1() const { return c1_; }

    friend Fq operator+(const Fq& x, const Fq& y);
    friend Fq operator-(const Fq& x, const Fq& y);
    friend Fq operator*(const Fq& x, const Fq& y);
    friend Fq operator/(const Fq& x, const Fq& y);
    friend Fq operator-(const Fq& x);
    friend bool operator==(const Fq& x, const Fq& y) { return x.c0_ == y.c0_ && x.c1_ == y.c1_; }
    friend bool operator!=(const Fq& x, const Fq& y) { return !(x == y); }

    Fq inverse() const;
    bool is_zero() const { return c0_ == 0 && c1_ == 0; }

private:
    const ResidueField* field_ = nullptr;
    std::int64_t c0_ = 0;
    std::int64_t c1_ = 0;
};

inline bool is_zero(const Fq& x) { return x.is_zero(); }

class ResidueField {
public:
    /// Requires N(p) < 2^31 so products fit in 64 bits.
    explicit ResidueField(const PrimeElem& p);
    // elements point back at their field
    ResidueField(const ResidueField&) = delete;
    ResidueField& operator=(const ResidueField&) = delete;

    const PrimeElem& prime() const { return prime_; }
    std::int64_t characteristic() const { return char_; }
    std::int64_t size() const { return size_; }
    bool is_prime_field() const { return prime_field_; }

    Fq zero() const { return {this, 0, 0}; }
    Fq one() const { return {this, 1, 0}; }
    Fq from_int(std::int64_t v) const;
    /// Image of w.
    Fq omega() const { return omega_; }

    Fq reduce(const EisInt& x) const;
    std::optional<Fq> reduce(const FieldElem& x) const;

    /// Bijection between elements and 0 .. size()-1.
    std::int64_t index(const Fq& x) const { return x.c0() + x.c1() * char_; }
    Fq element(std::int64_t index) const;

    std::int64_t norm_mod(std::int64_t c0, std::int64_t c1) const;
    std::int64_t inverse_mod_char(std::int64_t v) const;
    std::int64_t mul_mod(std::int64_t a, std::int64_t b) const { return (a * b) % char_; }
    std::int64_t normalize(std::int64_t v) const {
        v %= char_;
        return v < 0 ? v + char_ : v;
    }

private:
    PrimeElem prime_;
    std::int64_t char_ = 0;
    std::int64_t size_ = 0;
    bool prime_field_ = true;
    std::int64_t root_ = 0;  // image of w when the field is prime
    Fq omega_;
};

/// Table of #{y : y^2 = v} indexed by ResidueField::index; valid in every characteristic.
std::vector<std::int32_t> square_root_counts(const ResidueField& k);

}  // namespace rankstab
