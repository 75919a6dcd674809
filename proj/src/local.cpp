#include "rankstab/local.hpp"

#include "small_quotient.hpp"

#include <stdexcept>

namespace rankstab {

namespace {

void check_exponent(unsigned e) {
    if (e != 2 && e != 3) throw std::domain_error("power residue exponent must be 2 or 3");
}

bool divides_exponent(const PrimeElem& p, unsigned e) {
    return (e == 2 && p.characteristic() == 2) || (e == 3 && p.kind() == PrimeKind::ramified);
}

}  // namespace

ResidueSymbol residue_symbol(const EisInt& x, const PrimeElem& p, unsigned e) {
    check_exponent(e);
    if (divides_exponent(p, e))
        throw std::domain_error("residue_symbol: " + p.value().str() + " lies over " + std::to_string(e) +
                                "; use is_local_power");
    const EisInt& m = p.value();
    const Integer exponent = (p.norm() - 1) / e;
    const EisInt candidates2[] = {1, -1};
    const EisInt candidates3[] = {1, EisInt::omega(), EisInt::omega_squared()};
    const EisInt* begin = e == 2 ? candidates2 : candidates3;
    const EisInt* end = e == 2 ? candidates2 + 2 : candidates3 + 3;
    if (p.norm() <= Integer(1) << 24) {
        const detail::SmallQuotient k(m);
        const long xi = k.index(x);
        if (xi == 0) return {true, 0};
        const long r = k.pow(xi, exponent);
        for (const EisInt* c = begin; c != end; ++c)
            if (k.index(*c) == r) return {false, *c};
        throw std::logic_error("residue_symbol: power is not a root of unity");
    }
    if (divides(m, x)) return {true, 0};
    const EisInt r = powmod(x, exponent, m);
    for (const EisInt* c = begin; c != end; ++c)
        if (mod(*c, m) == r) return {false, *c};
    throw std::logic_error("residue_symbol: power is not a root of unity");
}

unsigned hensel_precision(const PrimeElem& p, unsigned e) {
    check_exponent(e);
    if (!divides_exponent(p, e)) return 1;
    // v_lambda(3) = 2, v_2(2) = 1
    return e == 3 ? 5 : 3;
}

bool is_local_power(const FieldElem& x, const PrimeElem& p, unsigned e) {
    check_exponent(e);
    if (x.is_zero()) throw std::domain_error("is_local_power: zero");
    if (!divides_exponent(p, e)) {
        const ResidueSymbol s = residue_symbol(x.num() * pow(x.den(), e - 1), p, e);
        if (!s.zero) return s.is_one();
    }
    const unsigned vn = valuation(x.num(), p.value());
    const unsigned vd = valuation(x.den(), p.value());
    const int v = static_cast<int>(vn) - static_cast<int>(vd);
    if (v % static_cast<int>(e) != 0) return false;
    const EisInt pn = pow(p.value(), vn);
    const EisInt pd = pow(p.value(), vd);
    const EisInt num = exact_quotient(x.num(), pn);
    const EisInt den = exact_quotient(x.den(), pd);

    if (!divides_exponent(p, e)) {
        // num / den is a p-unit with the symbol of num den^(e-1)
        return residue_symbol(num * pow(den, e - 1), p, e).is_one();
    }

    const EisInt m = pow(p.value(), hensel_precision(p, e));
    const EisInt target = mod(num * inverse_mod(den, m), m);
    for (const EisInt& y : unit_residues(m)) {
        EisInt yy = y * y;
        if (e == 3) yy *= y;
        if (mod(yy, m) == target) return true;
    }
    return false;
}

}  // namespace rankstab
