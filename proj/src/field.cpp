#include "rankstab/field.hpp"

#include <stdexcept>

namespace rankstab {

FieldElem::FieldElem(const EisInt& num, const EisInt& den) {
    if (den.is_zero()) throw std::domain_error("FieldElem: zero denominator");
    if (num.is_zero()) {
        num_ = 0;
        den_ = 1;
        return;
    }
    const EisInt g = euclid_gcd(num, den);
    EisInt n = exact_quotient(num, g);
    EisInt d = exact_quotient(den, g);
    const EisInt u = normalizing_unit(d);
    num_ = u * n;
    den_ = u * d;
}

bool FieldElem::is_canonical(const EisInt& num, const EisInt& den) {
    if (den.is_zero()) return false;
    if (num.is_zero()) return den == EisInt(1);
    return den == canonical_associate(den) && euclid_gcd(num, den).is_unit();
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
    return {den_, num_};
}

FieldElem FieldElem::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    return {rankstab::pow(num_, static_cast<unsigned>(exponent)),
            rankstab::pow(den_, static_cast<unsigned>(exponent))};
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    if (den_ == o.den_) return *this = FieldElem(num_ + o.num_, den_);
    return *this = FieldElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    if (den_ == o.den_) return *this = FieldElem(num_ - o.num_, den_);
    return *this = FieldElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    return *this = FieldElem(num_ * o.num_, den_ * o.den_);
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
    if (o.is_zero()) throw std::domain_error("FieldElem: division by zero");
    return *this = FieldElem(num_ * o.den_, den_ * o.num_);
}

std::string FieldElem::str() const {
    if (is_integral()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

int valuation(const FieldElem& x, const PrimeElem& p) {
    if (x.is_zero()) throw std::domain_error("valuation: zero");
    return static_cast<int>(valuation(x.num(), p.value())) - static_cast<int>(valuation(x.den(), p.value()));
}

std::optional<FieldElem> sqrt_exact(const FieldElem& x) {
    // sqrt(n/d) = sqrt(n d) / d
    auto r = sqrt_exact(x.num() * x.den());
    if (!r) return std::nullopt;
    return FieldElem(*r, x.den());
}

std::optional<EisInt> reduce_mod(const FieldElem& x, const EisInt& m) {
    if (x.is_integral()) return mod(x.num(), m);
    if (!euclid_gcd(x.den(), m).is_unit()) return std::nullopt;
    return mod(x.num() * inverse_mod(x.den(), m), m);
}

}  // namespace rankstab
