#pragma once

// End-to-end construction of a certificate and its independent verification.

#include "rankstab/certificate.hpp"
#include "rankstab/construction.hpp"
#include "rankstab/selmer_local.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rankstab {

struct ConstructOptions {
    unsigned depth = 5;
    std::optional<Integer> norm_bound;  // default N(C)^2
    std::uint64_t seed = 0;
    std::size_t max_results = 8;
    unsigned torsion_witnesses = 4;
};

/// Runs the whole chain and returns the certificate. Failures never throw
/// past this point: they become a failed step carrying the error text.
Json construct_instance(const EisInt& q_raw, const EisInt& r, const ConstructOptions& options,
                        const std::optional<RankZeroAssertion>& oracle);

/// Conclusion status recorded in a certificate.
Verdict certificate_verdict(const Json& certificate);

struct CheckLine {
    std::string step;
    bool ok = false;
    std::string message;
};

struct VerifyReport {
    std::vector<CheckLine> checks;
    Verdict verdict = Verdict::failed;  // recomputed, not read from the certificate

    bool clean() const;
    int exit_code() const { return clean() ? rankstab::exit_code(verdict) : 1; }
    std::string summary() const;
};

/// Rechecks every step from the embedded data with arithmetic primitives
/// only; the sieve is never run.
VerifyReport verify_certificate(const Json& certificate);
/// Parse errors are reported as a failed "schema" check.
VerifyReport verify_certificate_text(const std::string& text);

// JSON encodings of the step data, shared by construction and verification.
Json quad_ext_data(const QuadExt& ext, const EisInt& q_raw);
Json sigma_data(const SigmaSets& sigma);
Json congruence_data(const CongruenceSystem& sys, const InertTargets* targets);
Json triple_data(const PrimeTriple& t);
Json twist_data(const FieldElem& a, const FieldElem& b, const EisInt& r, const std::vector<PrimeElem>& support,
                const SigmaSets& sigma);
Json preservation_data(const PreservationCertificate& pc);
Json witness_data(const CoverDatum& d);
Json identity_data(const EisInt& q, const EisInt& r, const FieldElem& t);

}  // namespace rankstab
