#include "rankstab/pipeline.hpp"

#include "rankstab/local.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rankstab {

namespace {

const char* primality_method(const EisInt& p) { return primality_is_proven(p.norm()) ? "deterministic" : "probable"; }

Json eis_list(const std::vector<EisInt>& xs) {
    Json out = Json::array();
    for (const EisInt& x : xs) out.push_back(to_json(x));
    return out;
}

Json step(const char* name, StepStatus status, Json data) {
    return {{"name", name}, {"anchor", anchor_for(name)}, {"status", to_string(status)}, {"data", std::move(data)}};
}

FieldElem base_n(const EisInt& q, const EisInt& r) { return FieldElem(pow(q, 3) * r * r); }

const std::vector<const char*>& positive_rank_requirements() {
    static const std::vector<const char*> v = {"quadratic_extension", "sigma_sets", "congruence_system",
                                               "prime_triple", "twist_params", "positive_rank_witness"};
    return v;
}

const std::vector<const char*>& rank_equality_requirements() {
    static const std::vector<const char*> v = {"selmer_preservation", "rank_zero_base", "rank_identity"};
    return v;
}

// statuses by step name; missing steps count as failed
Json conclusion_data(const std::vector<std::pair<std::string, StepStatus>>& steps, std::size_t assertions) {
    const auto status_of = [&](const char* name) {
        for (const auto& [n, s] : steps)
            if (n == name) return std::make_pair(std::string(name), s);
        return std::make_pair(std::string(name), StepStatus::failed);
    };
    std::vector<std::pair<std::string, StepStatus>> all;
    for (const StepSpec& s : step_table()) all.push_back(status_of(s.name));
    const Verdict overall = conclude(all, assertions);

    std::vector<std::pair<std::string, StepStatus>> pos;
    for (const char* n : positive_rank_requirements()) pos.push_back(status_of(n));
    const Verdict positive = conclude(pos, 0);
    std::vector<std::pair<std::string, StepStatus>> eq = pos;
    for (const char* n : rank_equality_requirements()) eq.push_back(status_of(n));
    const Verdict equality = conclude(eq, assertions);

    const auto names = [](const std::vector<const char*>& v) {
        Json out = Json::array();
        for (const char* n : v) out.push_back(n);
        return out;
    };
    return {{"statement", kConclusionStatement},
            {"status", to_string(overall)},
            {"sub_statements",
             Json::array({{{"statement", kPositiveRankStatement}, {"status", to_string(positive)},
                           {"requires", names(positive_rank_requirements())}},
                          {{"statement", kRankEqualityStatement}, {"status", to_string(equality)},
                           {"requires", names(rank_equality_requirements())}}})}};
}

}  // namespace

// ---------------------------------------------------------------------------
// step data

Json quad_ext_data(const QuadExt& ext, const EisInt& q_raw) {
    return {{"q_raw", to_json(q_raw)},
            {"q", to_json(ext.q)},
            {"ramified", to_json(ext.ramified)},
            {"lambda_unramified", ext.lambda_unramified}};
}

Json sigma_data(const SigmaSets& sigma) {
    return {{"r", to_json(sigma.r())},
            {"S_prime_superset", to_json(sigma.S_prime_superset())},
            {"S", to_json(sigma.S())},
            {"gamma", to_json(choose_gamma(sigma))}};
}

Json congruence_data(const CongruenceSystem& sys, const InertTargets* targets) {
    Json depth_map = Json::array();
    for (const auto& [p, e] : sys.depth_map) depth_map.push_back({{"prime", to_json(p)}, {"exponent", std::to_string(e)}});
    Json j = {{"depth", std::to_string(sys.depth)},
              {"gamma", to_json(sys.gamma)},
              {"beta", to_json(sys.beta)},
              {"modulus", to_json(sys.modulus)},
              {"u1", to_json(sys.u1)},
              {"u2", to_json(sys.u2)},
              {"u3", to_json(sys.u3)},
              {"depth_map", depth_map}};
    if (sys.conic && targets) {
        const ConicSolution& c = *sys.conic;
        j["inert"] = {{"modulus", to_json(targets->modulus)},
                      {"targets", eis_list(targets->targets)},
                      {"conic",
                       {{"t1", to_json(c.t1)}, {"t2", to_json(c.t2)}, {"t3", to_json(c.t3)},
                        {"x", to_json(c.x)}, {"y", to_json(c.y)}, {"z", to_json(c.z)}}}};
    }
    return j;
}

Json triple_data(const PrimeTriple& t) {
    return {{"p1", to_json(t.p1)},
            {"p2", to_json(t.p2)},
            {"p3", to_json(t.p3)},
            {"beta", to_json(t.beta)},
            {"norms", {{"p1", to_json(t.p1.norm())}, {"p2", to_json(t.p2.norm())}, {"p3", to_json(t.p3.norm())}}},
            {"primality",
             {{"p1", primality_method(t.p1)}, {"p2", primality_method(t.p2)}, {"p3", primality_method(t.p3)}}}};
}

Json twist_data(const FieldElem& a, const FieldElem& b, const EisInt& r, const std::vector<PrimeElem>& support,
                const SigmaSets& sigma) {
    const FieldElem t = a * b;
    const auto audit = [&](const FieldElem& x) {
        Json out = Json::array();
        for (const PrimeElem& p : support) {
            const int v = valuation(x, p);
            if (v == 0) continue;
            const char* cls = sigma.in_S(p) ? "S" : (sigma.is_inert(p) ? "inert" : "outside");
            out.push_back({{"prime", to_json(p)}, {"exponent", std::to_string(v)}, {"class", cls}});
        }
        return out;
    };
    Json cubes = Json::array();
    for (const PrimeElem& p : sigma.S()) cubes.push_back({{"prime", to_json(p)}, {"holds", is_local_power(t, p, 3)}});
    const bool identity = a + FieldElem(2 * r) * b == FieldElem(1);
    return {{"a", to_json(a)},
            {"b", to_json(b)},
            {"t", to_json(t)},
            {"r", to_json(r)},
            {"identity", identity ? "a + 2rb = 1" : "a + 2rb != 1"},
            {"support", to_json(support)},
            {"sigma_audit",
             {{"a", audit(a)},
              {"b", audit(b)},
              {"a_cofactor_unit", factor_over(a.num(), support).cofactor.is_unit() &&
                                      factor_over(a.den(), support).cofactor.is_unit()},
              {"b_cofactor_unit", factor_over(b.num(), support).cofactor.is_unit() &&
                                      factor_over(b.den(), support).cofactor.is_unit()}}},
            {"local_cubes", cubes}};
}

Json preservation_data(const PreservationCertificate& pc) {
    Json reports = Json::array();
    for (const LocalConditionReport& rep : pc.reports) {
        Json checks = Json::object();
        for (const auto& [name, ok] : rep.checks) checks[name] = ok;
        reports.push_back({{"prime", to_json(rep.prime)}, {"case", to_string(rep.local_case)}, {"checks", checks}});
    }
    return {{"q", to_json(pc.q)},
            {"r", to_json(pc.r)},
            {"t", to_json(pc.t)},
            {"n_base", to_json(pc.n_base)},
            {"n_twisted", to_json(pc.n_twisted)},
            {"reports", reports},
            {"blanket",
             {{"case", "good_unramified"},
              {"covers", "every prime outside support"},
              {"support", to_json(pc.support)}}},
            {"conclusion", pc.conclusion},
            {"verified", pc.verified}};
}

Json witness_data(const CoverDatum& d) {
    Json witnesses = Json::array();
    for (const TorsionWitness& w : d.torsion.witnesses)
        witnesses.push_back({{"prime", to_json(w.prime)}, {"order", std::to_string(w.order)}});
    Json nontorsion = {{"method", d.nontorsion.witness ? "reduction" : "exact"},
                       {"result", d.nontorsion.nontorsion}};
    if (d.nontorsion.witness) nontorsion["prime"] = to_json(*d.nontorsion.witness);
    return {{"a", to_json(d.a)},
            {"b", to_json(d.b)},
            {"r", to_json(d.r)},
            {"n_raw", to_json(d.n_raw)},
            {"point_raw", to_json(d.point_raw)},
            {"curve", {{"n", to_json(d.curve.n)}, {"scaling", to_json(d.curve.scaling)}}},
            {"point", to_json(d.point)},
            {"torsion", {{"bound", std::to_string(d.torsion.bound)}, {"witnesses", witnesses}}},
            {"nontorsion", nontorsion},
            {"outcome", to_string(d.status)}};
}

Json identity_data(const EisInt& q, const EisInt& r, const FieldElem& t) {
    const FieldElem R(r);
    const FieldElem a_n = R * R * t * t;
    return {{"relation", kRankRelation},
            {"A", {{"n", to_json(a_n)}}},
            {"twist", {{"n", to_json(FieldElem(pow(q, 3)) * a_n)}}},
            {"base", {{"n", to_json(base_n(q, r))}}},
            {"twist_rank_zero_via", Json::array({"rank_zero_base", "selmer_preservation"})}};
}

// ---------------------------------------------------------------------------
// construction

Json construct_instance(const EisInt& q_raw, const EisInt& r, const ConstructOptions& options,
                        const std::optional<RankZeroAssertion>& oracle) {
    Json cert;
    cert["version"] = kCertificateVersion;
    cert["inputs"] = {{"q", to_json(q_raw)},
                      {"r", to_json(r)},
                      {"depth", std::to_string(options.depth)},
                      {"norm_bound", to_json(options.norm_bound.value_or(0))},
                      {"max_results", std::to_string(options.max_results)},
                      {"seed", std::to_string(options.seed)},
                      {"torsion_witnesses", std::to_string(options.torsion_witnesses)}};
    Json steps = Json::array();
    std::vector<std::pair<std::string, StepStatus>> statuses;
    Json assertions = Json::array();

    const auto push = [&](const char* name, StepStatus status, Json data) {
        statuses.emplace_back(name, status);
        steps.push_back(step(name, status, std::move(data)));
    };
    const auto finish = [&]() {
        cert["steps"] = steps;
        cert["oracle_assertions"] = assertions;
        cert["conclusion"] = conclusion_data(statuses, assertions.size());
        return cert;
    };
    const char* current = "quadratic_extension";
    const auto fail = [&](const std::string& message) {
        push(current, StepStatus::failed, {{"error", message}});
        return finish();
    };

    try {
        const QuadExt ext = make_quad_ext(q_raw);
        push(current, StepStatus::verified, quad_ext_data(ext, q_raw));

        current = "sigma_sets";
        const SigmaSets sigma = build_sigma(ext, r);
        push(current, StepStatus::verified, sigma_data(sigma));

        // the assertion is needed for the status algebra whatever happens later
        RankZeroAssertion assertion;
        if (oracle) {
            assertion = *oracle;
            if (assertion.n != base_n(ext.q, r))
                throw std::domain_error("oracle n = " + assertion.n.str() + " does not match q^3 r^2 = " +
                                        base_n(ext.q, r).str());
        } else {
            assertion.n = base_n(ext.q, r);
            assertion.provenance = kAbsentOracle;
            assertion.supplied = false;
        }
        assertions.push_back(to_json(assertion));

        current = "congruence_system";
        const CongruenceSystem sys = build_congruence_system(sigma, r, options.depth, options.seed);
        std::optional<InertTargets> targets;
        if (!ext.ramified.empty()) targets = inert_residue_targets(ext);
        if (!sys.consistent()) throw std::logic_error("congruence system inconsistent");
        push(current, StepStatus::verified, congruence_data(sys, targets ? &*targets : nullptr));

        current = "prime_triple";
        const Integer nc = sys.modulus.norm();
        const Integer bound = options.norm_bound.value_or(nc * nc);
        cert["inputs"]["norm_bound"] = to_json(bound);
        const SieveResult sieved = sieve_triples(sys, {bound, options.max_results, true});
        if (sieved.triples.empty())
            throw std::runtime_error("sieve exhausted: no triple with norms up to " + bound.get_str() +
                                     "; raise --norm-bound");

        std::optional<TwistParams> params;
        std::optional<CoverDatum> datum;
        for (const PrimeTriple& triple : sieved.triples) {
            if (!triple_satisfies(triple, sys)) throw std::logic_error("sieve produced an invalid triple " + to_line(triple));
            TwistParams tp = derive_twist_params(triple, sys, sigma);
            CoverDatum d = build_positive_rank_witness(tp, options.torsion_witnesses);
            if (d.status == WitnessStatus::verified) {
                params = std::move(tp);
                datum = std::move(d);
                break;
            }
        }
        if (!params)
            throw std::runtime_error("all " + std::to_string(sieved.triples.size()) +
                                     " triples gave torsion points; raise --max-results");
        push(current, StepStatus::verified, triple_data(params->source));

        current = "twist_params";
        push(current, StepStatus::verified, twist_data(params->a, params->b, r, params->support, sigma));

        current = "selmer_preservation";
        const PreservationCertificate pc = preservation_report(sigma, params->t, params->support);
        if (!pc.verified) throw std::runtime_error("local condition check failed");
        push(current, StepStatus::verified, preservation_data(pc));

        current = "rank_zero_base";
        push(current, StepStatus::asserted, {{"n", to_json(assertion.n)}, {"claim", kRankZeroClaim}});

        current = "positive_rank_witness";
        push(current, StepStatus::verified, witness_data(*datum));

        current = "rank_identity";
        push(current, StepStatus::verified, identity_data(ext.q, r, params->t));
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return finish();
}

Verdict certificate_verdict(const Json& certificate) {
    return verdict_from_string(certificate.at("conclusion").at("status").get<std::string>());
}

// ---------------------------------------------------------------------------
// verification

bool VerifyReport::clean() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.ok; });
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    for (const CheckLine& c : checks)
        out << (c.ok ? "ok   " : "FAIL ") << c.step << (c.message.empty() ? "" : ": " + c.message) << "\n";
    out << "verdict: " << (clean() ? to_string(verdict) : "failed") << "\n";
    return out.str();
}

namespace {

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool condition, const std::string& what) {
    if (!condition) throw Mismatch(what);
}

void expect_equal(const Json& got, const Json& want, const std::string& what) {
    if (got != want) throw Mismatch(what + " differs from recomputation");
}

void expect_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& what) {
    expect(j.is_object() && j.size() == keys.size(), what + ": unexpected keys");
    for (const char* k : keys) expect(j.contains(k), what + ": missing '" + k + "'");
}

bool is_canonical_residue(const EisInt& x, const EisInt& m) { return mod(x, m) == x; }

// State shared between step checks; filled in as steps pass.
struct Context {
    EisInt q_raw, r;
    unsigned depth = 0;
    unsigned torsion_witnesses = 0;
    std::uint64_t seed = 0;
    std::optional<QuadExt> ext;
    std::optional<SigmaSets> sigma;
    std::optional<CongruenceSystem> sys;
    std::optional<PrimeTriple> triple;
    FieldElem a, b, t;
    std::vector<PrimeElem> support;
    std::vector<RankZeroAssertion> assertions;
};

void check_quadratic_extension(Context& c, const Json& d) {
    c.ext = make_quad_ext(c.q_raw);
    expect_equal(d, quad_ext_data(*c.ext, c.q_raw), "quadratic extension");
}

void check_sigma(Context& c, const Json& d) {
    c.sigma = build_sigma(*c.ext, c.r);
    expect_equal(d, sigma_data(*c.sigma), "Sigma sets");
}

void check_congruence(Context& c, const Json& d) {
    const QuadExt& ext = *c.ext;
    const SigmaSets& sigma = *c.sigma;
    const bool has_inert = !ext.ramified.empty();
    if (has_inert)
        expect_keys(d, {"depth", "gamma", "beta", "modulus", "u1", "u2", "u3", "depth_map", "inert"}, "congruence");
    else
        expect_keys(d, {"depth", "gamma", "beta", "modulus", "u1", "u2", "u3", "depth_map"}, "congruence");

    CongruenceSystem sys;
    sys.depth = static_cast<unsigned>(u64_from_json(d.at("depth")));
    expect(sys.depth == c.depth, "depth differs from inputs");
    expect(sys.depth >= 5, "depth below 5");
    sys.gamma = eis_from_json(d.at("gamma"));
    EisInt gamma = 1;
    for (const PrimeElem& p : sigma.S()) gamma *= p.value();
    expect(sys.gamma == gamma, "gamma is not the product of S");
    sys.r = c.r;
    sys.beta = eis_from_json(d.at("beta"));
    expect(sys.beta == 2 * c.r * pow(gamma, 3 * sys.depth), "beta != 2 r gamma^(3n)");

    // expected depth map and moduli
    Json depth_map = Json::array();
    EisInt s_part = 1, m_part = 1;
    for (const PrimeElem& p : sigma.S()) {
        depth_map.push_back({{"prime", to_json(p)}, {"exponent", std::to_string(sys.depth)}});
        s_part *= pow(p.value(), sys.depth);
    }
    for (const PrimeElem& p : ext.ramified) {
        const unsigned e = p.characteristic() == 2 ? 3 : 1;
        depth_map.push_back({{"prime", to_json(p)}, {"exponent", std::to_string(e)}});
        m_part *= pow(p.value(), e);
    }
    expect_equal(d.at("depth_map"), depth_map, "depth map");
    for (const PrimeElem& p : sigma.S())
        for (const PrimeElem& q : ext.ramified) expect(p != q, "S meets the ramified set");
    m_part = canonical_associate(m_part);
    sys.modulus = eis_from_json(d.at("modulus"));
    expect(sys.modulus == canonical_associate(s_part * m_part), "C != prod p^n * M");

    sys.u1 = eis_from_json(d.at("u1"));
    sys.u2 = eis_from_json(d.at("u2"));
    sys.u3 = eis_from_json(d.at("u3"));
    for (const EisInt* u : {&sys.u1, &sys.u2, &sys.u3}) {
        expect(is_canonical_residue(*u, sys.modulus), "target " + u->str() + " is not a canonical residue");
        expect(euclid_gcd(*u, sys.modulus).is_unit(), "target " + u->str() + " is not a unit mod C");
    }
    expect(mod(sys.u2 + 1, s_part).is_zero() && mod(sys.u3 + 1, s_part).is_zero(), "u2, u3 != -1 on the S-part");
    expect(mod(sys.u1 + sys.beta * sys.u2 - sys.u3, sys.modulus).is_zero(), "u1 + beta u2 != u3 mod C");

    if (has_inert) {
        const Json& inert = d.at("inert");
        expect_keys(inert, {"modulus", "targets", "conic"}, "inert part");
        expect(eis_from_json(inert.at("modulus")) == m_part, "inert modulus");
        const InertTargets targets = inert_residue_targets(ext);
        expect_equal(inert.at("targets"), eis_list(targets.targets), "inert targets");
        const Json& cj = inert.at("conic");
        expect_keys(cj, {"t1", "t2", "t3", "x", "y", "z"}, "conic");
        ConicSolution conic{eis_from_json(cj.at("t1")), eis_from_json(cj.at("t2")), eis_from_json(cj.at("t3")),
                            eis_from_json(cj.at("x")),  eis_from_json(cj.at("y")),  eis_from_json(cj.at("z")),
                            m_part};
        for (const EisInt* t : {&conic.t1, &conic.t2, &conic.t3})
            expect(std::find(targets.targets.begin(), targets.targets.end(), *t) != targets.targets.end(),
                   "conic coefficient " + t->str() + " is not an inert target");
        expect(conic_holds(conic, sys.beta), "conic equation fails mod M");
        const ConicSolution canonical = conic_solvable_units(targets, sys.beta, c.seed);
        expect(canonical.t1 == conic.t1 && canonical.t2 == conic.t2 && canonical.t3 == conic.t3 && canonical.x == conic.x &&
                   canonical.y == conic.y && canonical.z == conic.z,
               "conic solution is not the seeded search result");
        expect(mod(sys.u1 - conic.u1(), m_part).is_zero() && mod(sys.u2 - conic.u2(), m_part).is_zero() &&
                   mod(sys.u3 - conic.u3(), m_part).is_zero(),
               "targets disagree with the conic mod M");
        sys.conic = conic;
    }
    c.sys = sys;
}

void check_triple(Context& c, const Json& d) {
    expect_keys(d, {"p1", "p2", "p3", "beta", "norms", "primality"}, "prime triple");
    PrimeTriple t{eis_from_json(d.at("p1")), eis_from_json(d.at("p2")), eis_from_json(d.at("p3")),
                  eis_from_json(d.at("beta"))};
    const CongruenceSystem& sys = *c.sys;
    expect(t.beta == sys.beta, "beta differs from the congruence system");
    expect(t.p1 + t.beta * t.p2 == t.p3, "p1 + beta p2 != p3");
    const EisInt& C = sys.modulus;
    expect(mod(t.p1, C) == sys.u1 && mod(t.p2, C) == sys.u2 && mod(t.p3, C) == sys.u3, "congruence targets");
    expect(canonical_associate(t.p2) == t.p2, "p2 is not canonical");
    expect_equal(d, triple_data(t), "triple record");
    for (const EisInt* p : {&t.p1, &t.p2, &t.p3})
        expect(p->norm() > 1 && is_prime_element(*p), p->str() + " is not prime");
    c.triple = t;
}

void check_twist(Context& c, const Json& d) {
    const PrimeTriple& t = *c.triple;
    const CongruenceSystem& sys = *c.sys;
    c.a = FieldElem(t.p1, t.p3);
    c.b = FieldElem(pow(sys.gamma, 3 * sys.depth) * t.p2, t.p3);
    c.t = c.a * c.b;
    expect(c.a + FieldElem(2 * c.r) * c.b == FieldElem(1), "a + 2rb != 1");
    std::vector<PrimeElem> support;
    for (const PrimeElem& p : c.sigma->S()) support.push_back(p);
    for (const EisInt* p : {&t.p1, &t.p2, &t.p3}) {
        const PrimeElem pe = PrimeElem::from(*p);
        if (std::find(support.begin(), support.end(), pe) == support.end()) support.push_back(pe);
    }
    std::sort(support.begin(), support.end());
    c.support = support;
    const Json want = twist_data(c.a, c.b, c.r, support, *c.sigma);
    expect_equal(d, want, "twist parameters");
    const Json& audit = d.at("sigma_audit");
    expect(audit.at("a_cofactor_unit").get<bool>() && audit.at("b_cofactor_unit").get<bool>(),
           "a or b has primes outside the support");
    for (const char* key : {"a", "b"})
        for (const Json& e : audit.at(key))
            expect(e.at("class") != "outside", std::string(key) + " is not a Sigma-unit");
    for (const Json& e : d.at("local_cubes")) expect(e.at("holds").get<bool>(), "t is not a local cube on S");
}

void check_preservation(Context& c, const Json& d) {
    const PreservationCertificate pc = preservation_report(*c.sigma, c.t, c.support);
    expect(pc.verified, "a local condition check fails");
    expect_equal(d, preservation_data(pc), "preservation report");
}

void check_rank_zero(Context& c, const Json& d) {
    expect_keys(d, {"n", "claim"}, "rank-zero input");
    const FieldElem n = base_n(c.ext->q, c.r);
    expect(field_from_json(d.at("n")) == n, "n != q^3 r^2");
    expect(d.at("claim") == kRankZeroClaim, "claim text");
    expect(std::any_of(c.assertions.begin(), c.assertions.end(),
                       [&](const RankZeroAssertion& a) { return a.n == n && a.claim == kRankZeroClaim; }),
           "no oracle assertion backs this step");
}

void check_witness(Context& c, const Json& d) {
    expect_keys(d, {"a", "b", "r", "n_raw", "point_raw", "curve", "point", "torsion", "nontorsion", "outcome"},
                "witness");
    CoverDatum w;
    w.a = c.a;
    w.b = c.b;
    w.r = c.r;
    const FieldElem R(c.r);
    w.n_raw = R * R * c.a * c.a * c.b * c.b;
    expect(field_from_json(d.at("n_raw")) == w.n_raw, "n_raw != r^2 a^2 b^2");
    w.point_raw = CurvePoint::affine(c.a, c.a * (FieldElem(1) - R * c.b));
    const CurvePoint claimed_raw = point_from_json(d.at("point_raw"));
    expect(on_curve(w.n_raw, claimed_raw), "raw point is off y^2 = x^3 + r^2 a^2 b^2");
    expect(claimed_raw == w.point_raw, "raw point is not (a, a(1 - rb))");
    const CurvePoint claimed = point_from_json(d.at("point"));
    w.curve = curve_from_n(w.n_raw, c.support);
    expect(w.curve.contains(claimed), "point is off the integral model");
    w.point = w.curve.from_original(w.point_raw);
    expect(claimed == w.point, "point is not the scaled raw point");
    expect(w.curve.original_n() == w.n_raw, "model scaling does not reproduce n_raw");
    w.torsion = torsion_bound(w.curve, c.torsion_witnesses);
    expect(w.torsion.bound == bound_from_witnesses(w.torsion.witnesses), "torsion bound arithmetic");
    w.nontorsion = check_nontorsion(w.curve, w.point, w.torsion);
    expect(w.nontorsion.nontorsion, "[B]P = infinity");
    if (w.nontorsion.witness) {
        const ResidueField k(*w.nontorsion.witness);
        expect(!multiply(k.reduce(w.curve.n), Integer(w.torsion.bound), reduce_point(w.point, k)).infinity,
               "[B]P reduces to infinity at the witness prime");
    }
    w.status = WitnessStatus::verified;
    expect_equal(d, witness_data(w), "positive-rank witness");
}

void check_identity(Context& c, const Json& d) {
    expect_equal(d, identity_data(c.ext->q, c.r, c.t), "rank identity");
}

}  // namespace

VerifyReport verify_certificate(const Json& cert) {
    VerifyReport report;
    const auto record = [&](const std::string& name, const std::function<void()>& fn) {
        try {
            fn();
            report.checks.push_back({name, true, ""});
            return true;
        } catch (const std::exception& e) {
            report.checks.push_back({name, false, e.what()});
            return false;
        }
    };

    Context ctx;
    std::vector<std::pair<std::string, StepStatus>> statuses;
    const bool header_ok = record("schema", [&] {
        expect_keys(cert, {"version", "inputs", "oracle_assertions", "steps", "conclusion"}, "certificate");
        expect(cert.at("version") == kCertificateVersion, "unsupported version");
        const Json& in = cert.at("inputs");
        expect_keys(in, {"q", "r", "depth", "norm_bound", "max_results", "seed", "torsion_witnesses"}, "inputs");
        ctx.q_raw = eis_from_json(in.at("q"));
        ctx.r = eis_from_json(in.at("r"));
        ctx.depth = static_cast<unsigned>(u64_from_json(in.at("depth")));
        ctx.seed = u64_from_json(in.at("seed"));
        ctx.torsion_witnesses = static_cast<unsigned>(u64_from_json(in.at("torsion_witnesses")));
        u64_from_json(in.at("max_results"));
        integer_from_json(in.at("norm_bound"));
        expect(cert.at("oracle_assertions").is_array() && cert.at("steps").is_array(), "lists expected");
    });
    if (!header_ok) return report;

    const bool assertions_ok = record("oracle_assertions", [&] {
        for (const Json& a : cert.at("oracle_assertions")) {
            RankZeroAssertion ra = assertion_from_json(a);
            expect(ra.claim == kRankZeroClaim, "claim text");
            if (ra.supplied)
                expect(!ra.provenance.empty() && ra.provenance != kAbsentOracle, "supplied assertion without provenance");
            else
                expect(ra.provenance == kAbsentOracle, "absent assertion must say so");
            ctx.assertions.push_back(std::move(ra));
        }
    });

    using Checker = void (*)(Context&, const Json&);
    const std::vector<std::pair<const char*, Checker>> checkers = {
        {"quadratic_extension", check_quadratic_extension},
        {"sigma_sets", check_sigma},
        {"congruence_system", check_congruence},
        {"prime_triple", check_triple},
        {"twist_params", check_twist},
        {"selmer_preservation", check_preservation},
        {"rank_zero_base", check_rank_zero},
        {"positive_rank_witness", check_witness},
        {"rank_identity", check_identity},
    };
    const Json& steps = cert.at("steps");
    bool chain_ok = assertions_ok;
    for (std::size_t i = 0; i < checkers.size(); ++i) {
        const auto& [name, fn] = checkers[i];
        if (i >= steps.size()) {
            record(name, [&] { throw Mismatch("step missing"); });
            chain_ok = false;
            continue;
        }
        const Json& s = steps[i];
        bool claimed_failed = false;
        const bool ok = record(name, [&] {
            expect_keys(s, {"name", "anchor", "status", "data"}, "step");
            expect(s.at("name") == name, "step order");
            expect(s.at("anchor") == anchor_for(name), "anchor text");
            const StepStatus claimed = step_status_from_string(s.at("status").get<std::string>());
            if (claimed == StepStatus::failed) {
                claimed_failed = true;
                throw Mismatch("certificate records a failure: " + s.at("data").dump());
            }
            const StepStatus expected = std::string(name) == "rank_zero_base" ? StepStatus::asserted : StepStatus::verified;
            expect(claimed == expected, std::string("status must be ") + to_string(expected));
            expect(chain_ok, "an earlier step did not verify");
            fn(ctx, s.at("data"));
            statuses.emplace_back(name, claimed);
        });
        if (!ok) {
            chain_ok = false;
            if (!claimed_failed) statuses.emplace_back(name, StepStatus::failed);
        }
    }
    if (steps.size() > checkers.size()) record("steps", [] { throw Mismatch("extra steps"); });

    record("conclusion", [&] {
        const Json want = conclusion_data(statuses, ctx.assertions.size());
        expect_equal(cert.at("conclusion"), want, "conclusion");
        report.verdict = verdict_from_string(want.at("status").get<std::string>());
    });
    return report;
}

VerifyReport verify_certificate_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        VerifyReport r;
        r.checks.push_back({"schema", false, e.what()});
        return r;
    }
    return verify_certificate(j);
}

}  // namespace rankstab
