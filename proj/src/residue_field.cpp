#include "rankstab/residue_field.hpp"

#include <stdexcept>

namespace rankstab {

ResidueField::ResidueField(const PrimeElem& p) : prime_(p) {
    if (p.norm() >= Integer(1L << 31)) throw std::domain_error("ResidueField: norm too large for word arithmetic");
    char_ = p.characteristic().get_si();
    size_ = p.norm().get_si();
    if (p.kind() == PrimeKind::inert) {
        prime_field_ = false;
        omega_ = Fq(this, 0, 1);
        return;
    }
    if (p.kind() == PrimeKind::ramified) {
        root_ = 1;
    } else {
        const Integer s = *sqrt_mod_prime(Integer(-3), Integer(char_));
        for (const Integer& cand : {s, Integer(char_ - s)}) {
            Integer w = cand - 1;
            if (mpz_odd_p(w.get_mpz_t())) w += char_;
            w /= 2;
            w %= char_;
            if (divides(p.value(), EisInt(-w, 1))) root_ = w.get_si();
        }
    }
    omega_ = Fq(this, root_, 0);
}

Fq ResidueField::from_int(std::int64_t v) const { return {this, normalize(v), 0}; }

Fq ResidueField::reduce(const EisInt& x) const {
    const Integer P(char_);
    Integer a = x.a() % P, b = x.b() % P;
    std::int64_t a0 = normalize(a.get_si()), b0 = normalize(b.get_si());
    if (prime_field_) return {this, normalize(a0 + mul_mod(b0, root_)), 0};
    return {this, a0, b0};
}

std::optional<Fq> ResidueField::reduce(const FieldElem& x) const {
    Fq d = reduce(x.den());
    if (d.is_zero()) return std::nullopt;
    return reduce(x.num()) / d;
}

Fq ResidueField::element(std::int64_t index) const {
    if (index < 0 || index >= size_) throw std::out_of_range("ResidueField::element");
    return {this, index % char_, index / char_};
}

std::int64_t ResidueField::norm_mod(std::int64_t c0, std::int64_t c1) const {
    return normalize(mul_mod(c0, c0) - mul_mod(c0, c1) + mul_mod(c1, c1));
}

std::int64_t ResidueField::inverse_mod_char(std::int64_t v) const {
    // extended Euclid over Z/char
    std::int64_t r0 = char_, r1 = normalize(v), s0 = 0, s1 = 1;
    if (r1 == 0) throw std::domain_error("ResidueField: inverse of zero");
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return normalize(s0);
}

Fq operator+(const Fq& x, const Fq& y) {
    const ResidueField& k = *x.field_;
    return {x.field_, k.normalize(x.c0_ + y.c0_), k.normalize(x.c1_ + y.c1_)};
}

Fq operator-(const Fq& x, const Fq& y) {
    const ResidueField& k = *x.field_;
    return {x.field_, k.normalize(x.c0_ - y.c0_), k.normalize(x.c1_ - y.c1_)};
}

Fq operator-(const Fq& x) {
    const ResidueField& k = *x.field_;
    return {x.field_, k.normalize(-x.c0_), k.normalize(-x.c1_)};
}

Fq operator*(const Fq& x, const Fq& y) {
    const ResidueField& k = *x.field_;
    if (k.is_prime_field()) return {x.field_, k.mul_mod(x.c0_, y.c0_), 0};
    const std::int64_t bd = k.mul_mod(x.c1_, y.c1_);
    return {x.field_, k.normalize(k.mul_mod(x.c0_, y.c0_) - bd),
            k.normalize(k.mul_mod(x.c0_, y.c1_) + k.mul_mod(x.c1_, y.c0_) - bd)};
}

Fq Fq::inverse() const {
    const ResidueField& k = *field_;
    if (is_zero()) throw std::domain_error("Fq: inverse of zero");
    if (k.is_prime_field()) return {field_, k.inverse_mod_char(c0_), 0};
    // conj(a + bw) = (a - b) - bw, and x * conj(x) = N(x)
    const std::int64_t inv_n = k.inverse_mod_char(k.norm_mod(c0_, c1_));
    return {field_, k.mul_mod(k.normalize(c0_ - c1_), inv_n), k.mul_mod(k.normalize(-c1_), inv_n)};
}

Fq operator/(const Fq& x, const Fq& y) { return x * y.inverse(); }

std::vector<std::int32_t> square_root_counts(const ResidueField& k) {
    std::vector<std::int32_t> counts(static_cast<std::size_t>(k.size()), 0);
    for (std::int64_t i = 0; i < k.size(); ++i) {
        const Fq y = k.element(i);
        ++counts[static_cast<std::size_t>(k.index(y * y))];
    }
    return counts;
}

}  // namespace rankstab
