#pragma once

// Power residue symbols and local e-th power tests at primes of Z[w].

#include "rankstab/field.hpp"

namespace rankstab {

/// Value of the e-th power residue symbol (x/p)_e.
struct ResidueSymbol {
    bool zero = false;  // p divides x
    EisInt root;        // +-1 for e = 2; one of 1, w, w^2 for e = 3

    bool is_one() const { return !zero && root == EisInt(1); }
};

/// x^((N(p)-1)/e) mod p identified with an e-th root of unity.
/// e must be 2 (p odd) or 3 (p != lambda); otherwise std::domain_error
/// pointing at is_local_power.
ResidueSymbol residue_symbol(const EisInt& x, const PrimeElem& p, unsigned e);

/// Hensel precision 2*v_p(e) + 1 at which the brute-force test decides.
unsigned hensel_precision(const PrimeElem& p, unsigned e);

/// True iff x lies in (F_p^*)^e. e in {2, 3}; x nonzero.
bool is_local_power(const FieldElem& x, const PrimeElem& p, unsigned e);

}  // namespace rankstab
