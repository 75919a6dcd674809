#include "rankstab/certificate.hpp"

#include <fstream>
#include <stdexcept>

namespace rankstab {

namespace {

[[noreturn]] void schema(const std::string& what) { throw std::invalid_argument("certificate schema: " + what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing key '") + key + "'");
    return j.at(key);
}

void exact_keys(const Json& j, std::initializer_list<const char*> keys) {
    if (!j.is_object() || j.size() != keys.size()) schema("unexpected object shape " + j.dump());
    for (const char* k : keys)
        if (!j.contains(k)) schema(std::string("missing key '") + k + "'");
}

}  // namespace

Json to_json(const Integer& v) { return v.get_str(); }

Json to_json(const EisInt& v) { return {{"a", to_json(v.a())}, {"b", to_json(v.b())}}; }

Json to_json(const FieldElem& v) { return {{"num", to_json(v.num())}, {"den", to_json(v.den())}}; }

Json to_json(const PrimeElem& v) { return to_json(v.value()); }

Json to_json(const CurvePoint& p) {
    if (p.infinity) return "infinity";
    return {{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

Json to_json(const std::vector<PrimeElem>& ps) {
    Json out = Json::array();
    for (const PrimeElem& p : ps) out.push_back(to_json(p));
    return out;
}

Integer integer_from_json(const Json& j) {
    if (!j.is_string()) schema("integer must be a decimal string");
    const std::string s = j.get<std::string>();
    if (s.empty() || s == "-" || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
        schema("bad integer '" + s + "'");
    if ((s.size() > 1 && s[0] == '0') || (s.size() > 2 && s[0] == '-' && s[1] == '0') || s == "-0")
        schema("non-canonical integer '" + s + "'");
    return Integer(s);
}

std::uint64_t u64_from_json(const Json& j) {
    const Integer v = integer_from_json(j);
    if (v < 0 || !v.fits_ulong_p()) schema("value out of range");
    return v.get_ui();
}

EisInt eis_from_json(const Json& j) {
    exact_keys(j, {"a", "b"});
    return {integer_from_json(j.at("a")), integer_from_json(j.at("b"))};
}

FieldElem field_from_json(const Json& j) {
    exact_keys(j, {"num", "den"});
    const EisInt num = eis_from_json(j.at("num"));
    const EisInt den = eis_from_json(j.at("den"));
    if (!FieldElem::is_canonical(num, den)) schema("non-canonical field element " + j.dump());
    return {num, den};
}

CurvePoint point_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "infinity") schema("bad point");
        return {};
    }
    exact_keys(j, {"x", "y"});
    return CurvePoint::affine(field_from_json(j.at("x")), field_from_json(j.at("y")));
}

std::vector<EisInt> eis_list_from_json(const Json& j) {
    if (!j.is_array()) schema("expected an array");
    std::vector<EisInt> out;
    for (const Json& e : j) out.push_back(eis_from_json(e));
    return out;
}

const char* to_string(StepStatus s) {
    switch (s) {
        case StepStatus::verified: return "verified";
        case StepStatus::asserted: return "asserted";
        case StepStatus::failed: return "failed";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::conditional: return "conditional";
        case Verdict::failed: return "failed";
    }
    return "?";
}

StepStatus step_status_from_string(const std::string& s) {
    if (s == "verified") return StepStatus::verified;
    if (s == "asserted") return StepStatus::asserted;
    if (s == "failed") return StepStatus::failed;
    schema("bad step status '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "verified") return Verdict::verified;
    if (s == "conditional") return Verdict::conditional;
    if (s == "failed") return Verdict::failed;
    schema("bad verdict '" + s + "'");
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::verified: return 0;
        case Verdict::conditional: return 2;
        case Verdict::failed: return 1;
    }
    return 1;
}

Verdict conclude(const std::vector<StepStatus>& steps, std::size_t assertions) {
    bool any_asserted = false;
    for (StepStatus s : steps) {
        if (s == StepStatus::failed) return Verdict::failed;
        if (s == StepStatus::asserted) any_asserted = true;
    }
    if (any_asserted && assertions == 0) return Verdict::failed;
    if (!any_asserted && assertions == 0) return Verdict::verified;
    return Verdict::conditional;
}

Verdict conclude(const std::vector<std::pair<std::string, StepStatus>>& steps, std::size_t assertions) {
    std::vector<StepStatus> plain;
    for (const auto& [name, s] : steps)
        plain.push_back(s == StepStatus::asserted && name != kOracleStep ? StepStatus::failed : s);
    return conclude(plain, assertions);
}

const std::vector<StepSpec>& step_table() {
    static const std::vector<StepSpec> table = {
        {"quadratic_extension", "K = F(sqrt q), squarefree generator, lambda unramified"},
        {"sigma_sets", "S' = primes of 6qr; S = primes above 3 or split in K"},
        {"congruence_system", "p2 = p3 to depth n on S; inert square classes mod the conductor support"},
        {"prime_triple", "p1 + beta p2 = p3 with beta = 2 r gamma^(3n)"},
        {"twist_params", "a = p1/p3, b = gamma^(3n) p2/p3, a + 2rb = 1, t = ab local cube on S"},
        {"selmer_preservation", "local conditions of J_{q^3 r^2} and J_{q^3 r^2 t^2} agree at every prime"},
        {"rank_zero_base", "Sel_phi(J_{q^3 r^2}) = 0 (external input)"},
        {"positive_rank_witness", "P = pi(1,1) on J_{r^2 a^2 b^2}, non-torsion by reduction"},
        {"rank_identity", "rank over K splits as the rank of A plus the rank of its K-twist"},
    };
    return table;
}

const char* anchor_for(const std::string& step_name) {
    for (const StepSpec& s : step_table())
        if (step_name == s.name) return s.anchor;
    throw std::invalid_argument("unknown step '" + step_name + "'");
}

Json to_json(const RankZeroAssertion& a) {
    return {{"n", to_json(a.n)}, {"claim", a.claim}, {"provenance", a.provenance}, {"supplied", a.supplied}};
}

RankZeroAssertion assertion_from_json(const Json& j) {
    exact_keys(j, {"n", "claim", "provenance", "supplied"});
    RankZeroAssertion a;
    a.n = field_from_json(j.at("n"));
    if (!j.at("claim").is_string() || !j.at("provenance").is_string() || !j.at("supplied").is_boolean())
        schema("bad oracle assertion");
    a.claim = j.at("claim").get<std::string>();
    a.provenance = j.at("provenance").get<std::string>();
    a.supplied = j.at("supplied").get<bool>();
    return a;
}

RankZeroAssertion load_oracle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open oracle file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("oracle file: ") + e.what());
    }
    RankZeroAssertion a;
    const Json& n = member(j, "n");
    if (n.is_string()) {
        a.n = FieldElem(EisInt::parse(n.get<std::string>()));
    } else if (n.is_object() && n.contains("num")) {
        a.n = field_from_json(n);
    } else {
        a.n = FieldElem(eis_from_json(n));
    }
    if (j.contains("claim")) a.claim = member(j, "claim").get<std::string>();
    if (a.claim != kRankZeroClaim) throw std::invalid_argument("oracle file: claim must be '" + std::string(kRankZeroClaim) + "'");
    a.provenance = member(j, "provenance").get<std::string>();
    if (a.provenance.empty() || a.provenance == kAbsentOracle)
        throw std::invalid_argument("oracle file: provenance must describe the evidence");
    a.supplied = true;
    return a;
}

}  // namespace rankstab
