#pragma once

// Certificate JSON: exact encodings of ring and field elements, step records
// and the status algebra.

#include "rankstab/curve.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankstab {

using Json = nlohmann::json;

inline constexpr const char* kCertificateVersion = "rankstab-certificate/1";
inline constexpr const char* kAbsentOracle = "rank-0 input absent";
inline constexpr const char* kRankZeroClaim = "Sel_phi(J_n) = 0";

// Integers are decimal strings throughout.
Json to_json(const Integer& v);
Json to_json(const EisInt& v);
Json to_json(const FieldElem& v);
Json to_json(const PrimeElem& v);
Json to_json(const CurvePoint& p);
Json to_json(const std::vector<PrimeElem>& ps);

/// Decoders throw std::invalid_argument on any schema mismatch.
Integer integer_from_json(const Json& j);
EisInt eis_from_json(const Json& j);
FieldElem field_from_json(const Json& j);
CurvePoint point_from_json(const Json& j);
std::vector<EisInt> eis_list_from_json(const Json& j);
std::uint64_t u64_from_json(const Json& j);

enum class StepStatus { verified, asserted, failed };
enum class Verdict { verified, conditional, failed };

const char* to_string(StepStatus s);
const char* to_string(Verdict v);
StepStatus step_status_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

/// Exit code for a verdict: 0 verified, 2 conditional, 1 failed.
int exit_code(Verdict v);

/// failed if any step failed or an asserted step has no assertion to rest on;
/// verified if every step is verified and there are no assertions;
/// conditional otherwise.
Verdict conclude(const std::vector<StepStatus>& steps, std::size_t assertions);
/// Same over named steps, where only the oracle step may be asserted; an
/// asserted status anywhere else counts as failed.
Verdict conclude(const std::vector<std::pair<std::string, StepStatus>>& steps, std::size_t assertions);

inline constexpr const char* kOracleStep = "rank_zero_base";

/// The ordered step names and their fixed anchor texts.
struct StepSpec {
    const char* name;
    const char* anchor;
};
const std::vector<StepSpec>& step_table();
const char* anchor_for(const std::string& step_name);

inline constexpr const char* kConclusionStatement = "rank A(K) = rank A(F) > 0 for A = J_{r^2a^2b^2}";
inline constexpr const char* kPositiveRankStatement = "rank J_{r^2a^2b^2}(F) > 0";
inline constexpr const char* kRankEqualityStatement = "rank A(K) = rank A(F)";
inline constexpr const char* kRankRelation = "rank A(K) = rank A(F) + rank A^K(F), A^K = J_{q^3 r^2 t^2}";

/// A supplied or absent rank-0 assertion for n = q^3 r^2.
struct RankZeroAssertion {
    FieldElem n;
    std::string claim = kRankZeroClaim;
    std::string provenance;
    bool supplied = false;
};

Json to_json(const RankZeroAssertion& a);
RankZeroAssertion assertion_from_json(const Json& j);

/// Reads {"n": EisInt or FieldElem JSON or string, "claim": ..., "provenance": ...}.
RankZeroAssertion load_oracle(const std::string& path);

}  // namespace rankstab
