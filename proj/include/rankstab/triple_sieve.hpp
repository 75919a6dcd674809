#pragma once

// Prime triples p1 + beta p2 = p3 under congruence conditions, and the twist
// parameters derived from them.

#include "rankstab/quad_ext.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankstab {

/// Product of one copy of each prime in S (1 for empty S).
EisInt choose_gamma(const SigmaSets& sigma);

struct CongruenceSystem {
    EisInt modulus;                                     // C
    EisInt u1, u2, u3;                                  // canonical residues mod C
    std::vector<std::pair<PrimeElem, unsigned>> depth_map;
    EisInt gamma;
    unsigned depth = 0;
    EisInt r;
    EisInt beta;                                        // 2 r gamma^(3 depth), or set directly
    std::optional<ConicSolution> conic;                 // absent when no inert part
    std::uint64_t seed = 0;

    /// C = 1, every target trivial, beta given (r = beta/2 when 2 | beta).
    static CongruenceSystem unconstrained(const EisInt& beta);

    /// The S-part prod p^depth of C.
    EisInt s_modulus() const;
    /// u1 + beta u2 = u3 mod C and every target a unit mod C.
    bool consistent() const;
};

/// depth >= 5. The S-part targets are u2 = u3 = -1, which makes every p2 in
/// the coset primary; the inert part comes from conic_solvable_units with the
/// given seed.
CongruenceSystem build_congruence_system(const SigmaSets& sigma, const EisInt& r, unsigned depth = 5,
                                         std::uint64_t seed = 0);

struct PrimeTriple {
    EisInt p1, p2, p3;  // p2 canonical
    EisInt beta;

    friend bool operator==(const PrimeTriple&, const PrimeTriple&) = default;
};

/// Identity, primality of all three, p2 canonical and p_i = u_i mod C.
bool triple_satisfies(const PrimeTriple& t, const CongruenceSystem& system);

struct SieveOptions {
    Integer norm_bound;                 // >= N(C)^2 unless relaxed
    std::size_t max_results = 8;
    bool enforce_norm_bound_floor = true;
};

struct SieveResult {
    std::vector<PrimeTriple> triples;  // (N(p2), p2, N(p1), p1) order
    bool exhausted = false;            // fewer than max_results below the bound
    std::uint64_t p2_candidates = 0;
    std::uint64_t p1_candidates = 0;
};

/// The first max_results triples in (N(p2), p2, N(p1), p1) order with
/// N(p1), N(p2) <= norm_bound. The OpenMP kernel shards p2 across threads and
/// shares a lazily grown list of coset primes for p1.
SieveResult sieve_triples(const CongruenceSystem& system, const SieveOptions& options);
/// Single-threaded reference with the same output.
SieveResult sieve_triples_serial(const CongruenceSystem& system, const SieveOptions& options);

/// Elements x = u mod m with lo < N(x) <= hi in (norm, a, b) order.
std::vector<EisInt> coset_shell(const EisInt& u, const EisInt& m, const Integer& lo, const Integer& hi);

/// One line per triple: "p1 p2 p3 beta" in EisInt notation.
std::string to_line(const PrimeTriple& t);

struct TwistParams {
    FieldElem a, b, t;
    EisInt r;
    PrimeTriple source;
    /// Primes of a and b (the primes of gamma and p1, p2, p3).
    std::vector<PrimeElem> support;
};

/// a = p1/p3, b = gamma^(3 depth) p2/p3, t = a b. Checks a + 2rb = 1, the
/// Sigma-unit audit of a and b, and t being a cube at every prime of S;
/// any failure throws std::logic_error.
TwistParams derive_twist_params(const PrimeTriple& triple, const CongruenceSystem& system, const SigmaSets& sigma);
/// Without Sigma sets (S empty): only the identity is checked.
TwistParams derive_twist_params(const PrimeTriple& triple, const CongruenceSystem& system);

}  // namespace rankstab
