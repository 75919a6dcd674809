#pragma once

// Local conditions for the phi-Selmer group of y^2 = x^3 + n: silent primes,
// a brute-force check on reductions, and the prime-by-prime comparison of a
// base curve with its twist by t.

#include "rankstab/quad_ext.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rankstab {

/// n is not a square in F_p (odd valuation included). p = lambda throws std::domain_error.
bool is_silent(const FieldElem& n, const PrimeElem& p);

enum class SilenceCheck { holds, fails, skipped };
const char* to_string(SilenceCheck c);

/// Enumerates E(k_p) for y^2 = x^3 + n and checks that 1 - zeta is injective
/// (equivalently bijective) there. Requires is_silent(n, p) and p not dividing
/// 6n (std::domain_error otherwise); N(p) > max_norm gives `skipped`.
SilenceCheck verify_silence_bruteforce(const EisInt& n, const PrimeElem& p, std::uint64_t max_norm = 500);

enum class LocalCase { in_S_isomorphic, silent, good_unramified };
const char* to_string(LocalCase c);

struct LocalConditionReport {
    PrimeElem prime;
    LocalCase local_case;
    std::vector<std::pair<std::string, bool>> checks;

    bool passed() const;
};

struct PreservationCertificate {
    EisInt q;
    EisInt r;
    FieldElem t;
    FieldElem n_base;     // q^3 r^2
    FieldElem n_twisted;  // q^3 r^2 t^2
    std::vector<LocalConditionReport> reports;  // norm order
    /// Primes with an explicit report; every other prime is covered by the
    /// blanket good_unramified entry (valuation 0 in both models, prime to 6).
    std::vector<PrimeElem> support;
    std::string conclusion;
    bool verified = false;
};

/// Requires t to be a Sigma-unit over its factorization support, which is
/// searched among `t_support` first (factor() on any leftover).
PreservationCertificate preservation_report(const SigmaSets& sigma, const FieldElem& t,
                                            const std::vector<PrimeElem>& t_support = {});

}  // namespace rankstab
