#pragma once

// Conversions between the oracle's machine integers and library types.

#include "oracle.hpp"
#include "rankstab/eisenstein.hpp"

inline rankstab::EisInt to_eis(oracle::E x) { return {rankstab::Integer(static_cast<long>(x.a)), rankstab::Integer(static_cast<long>(x.b))}; }

inline oracle::E to_e(const rankstab::EisInt& x) { return {x.a().get_si(), x.b().get_si()}; }

/// Random small prime elements (oracle-checked).
inline rankstab::EisInt random_prime(oracle::Gen& g, oracle::i64 radius) {
    for (;;) {
        const oracle::E x = g.nonzero(radius);
        if (oracle::norm(x) > 1 && oracle::is_prime(x)) return to_eis(x);
    }
}
