#pragma once

// Rational-integer helpers on top of GMP: primality, factoring, modular roots.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankstab {

using Integer = mpz_class;

/// Strong-pseudoprime bases 2..41 decide primality for every n below this bound.
Integer deterministic_primality_limit();

/// Miller-Rabin with the first thirteen prime bases; exact below
/// deterministic_primality_limit(), BPSW-strength above it.
bool is_prime(const Integer& n);

/// True when is_prime(n) is a proof rather than a probable-prime verdict.
bool primality_is_proven(const Integer& n);

/// Prime factorization of n > 0 by trial division, perfect-power detection
/// and Pollard-Brent rho. Sorted by prime.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// Exact integer square root when n is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);

/// Square root of a modulo an odd prime p (Tonelli-Shanks).
std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p);

/// floor(n / d) for d > 0.
Integer floor_div(const Integer& n, const Integer& d);

/// Decimal parse; throws std::invalid_argument on junk.
Integer parse_integer(const std::string& text);

}  // namespace rankstab
