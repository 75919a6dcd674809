#pragma once

// The quadratic extension K = F(sqrt q) of F = Q(w): normalization, splitting
// of primes, the sets S' and S, and residue targets for inert primes.

#include "rankstab/field.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rankstab {

struct QuadExt {
    EisInt q;                         // +-(product of distinct canonical primes)
    std::vector<PrimeElem> ramified;  // norm order
    bool lambda_unramified = true;
};

/// Strips squares and normalizes the unit to +-1. Throws std::domain_error
/// with "trivial extension" when q_raw is a square and "lambda ramified" when
/// v_lambda(q_raw) is odd.
QuadExt make_quad_ext(const EisInt& q_raw);

/// Decomposition of p in K.
PrimeKind splitting_type(const QuadExt& ext, const PrimeElem& p);

/// splitting_type over all primes of norm <= max_norm; OpenMP kernel and serial reference.
std::vector<std::pair<PrimeElem, PrimeKind>> classify_primes(const QuadExt& ext, std::uint64_t max_norm);
std::vector<std::pair<PrimeElem, PrimeKind>> classify_primes_serial(const QuadExt& ext, std::uint64_t max_norm);

class SigmaSets {
public:
    SigmaSets(QuadExt ext, EisInt r, std::vector<PrimeElem> s_prime, std::vector<PrimeElem> s);

    const QuadExt& ext() const { return ext_; }
    const EisInt& r() const { return r_; }
    /// Primes dividing 6qr.
    const std::vector<PrimeElem>& S_prime_superset() const { return s_prime_; }
    /// Members of S' above 3 or split in K.
    const std::vector<PrimeElem>& S() const { return s_; }

    bool in_S(const PrimeElem& p) const;
    bool is_inert(const PrimeElem& p) const { return splitting_type(ext_, p) == PrimeKind::inert; }
    bool in_sigma(const PrimeElem& p) const { return in_S(p) || is_inert(p); }
    /// Factors x completely.
    bool is_sigma_unit(const FieldElem& x) const;
    /// Audit against a claimed support: x must factor over `support` with a
    /// unit cofactor and every prime used must lie in Sigma.
    bool is_sigma_unit(const FieldElem& x, const std::vector<PrimeElem>& support) const;

private:
    QuadExt ext_;
    EisInt r_;
    std::vector<PrimeElem> s_prime_;
    std::vector<PrimeElem> s_;
};

/// Throws std::domain_error when r = 0 or r shares a prime with the ramified set.
SigmaSets build_sigma(const QuadExt& ext, const EisInt& r);

/// Unit classes modulo M = prod over ramified p of p^d (d = 1 for odd p,
/// d = 3 at 2) all of whose primes are inert in K.
struct InertTargets {
    EisInt modulus;
    std::vector<EisInt> targets;  // canonical representatives, norm order
    unsigned witnesses_per_class = 0;
};

/// Every unit class is classified by its `witnesses` smallest prime elements
/// (all associates of all primes, norm order); a class whose witnesses
/// disagree throws std::logic_error.
InertTargets inert_residue_targets(const QuadExt& ext, unsigned witnesses = 3);

/// Smallest prime elements x (norm order, then (a, b)) with x = u mod m.
std::vector<EisInt> witness_primes(const EisInt& u, const EisInt& m, unsigned count);

/// A solution of t1 x^2 + beta t2 y^2 = t3 z^2 modulo M with t1, t2, t3 inert
/// targets and x, y, z units. t1 = t3 whenever such a solution exists.
struct ConicSolution {
    EisInt t1, t2, t3;
    EisInt x, y, z;
    /// t1 x^2, t2 y^2, t3 z^2 reduced mod M.
    EisInt u1() const;
    EisInt u2() const;
    EisInt u3() const;
    EisInt modulus;
};

/// Deterministic search; `seed` rotates the starting (t1, t2) pair, then the
/// (t1, t2, t3) triple when t1 = t3 is impossible.
/// Throws std::logic_error if no solution exists.
ConicSolution conic_solvable_units(const InertTargets& targets, const EisInt& beta, std::uint64_t seed = 0);

bool conic_holds(const ConicSolution& s, const EisInt& beta);

}  // namespace rankstab
