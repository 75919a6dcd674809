#include "rankstab/parallel.hpp"
#include "rankstab/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rankstab;

namespace {

// "3+w", "-1-2w", "5" or "a,b"
EisInt parse_eis(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return EisInt::parse(text);
    return {parse_integer(text.substr(0, comma)), parse_integer(text.substr(comma + 1))};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Args {
    std::string q, r, beta, n, prime, oracle, out, file;
    unsigned depth = 5;
    std::string norm_bound;
    std::uint64_t seed = 0;
    std::size_t max_results = 8;
    std::uint64_t max_norm = 100;
    unsigned torsion_witnesses = 4;
    bool relax_floor = false;
    bool quiet = false;
};

int run_construct(const Args& a) {
    ConstructOptions opt;
    opt.depth = a.depth;
    opt.seed = a.seed;
    opt.max_results = a.max_results;
    opt.torsion_witnesses = a.torsion_witnesses;
    if (!a.norm_bound.empty()) opt.norm_bound = parse_integer(a.norm_bound);
    std::optional<RankZeroAssertion> oracle;
    if (!a.oracle.empty()) oracle = load_oracle(a.oracle);
    const Json cert = construct_instance(parse_eis(a.q), parse_eis(a.r), opt, oracle);
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot write " + a.out);
    out << cert.dump(2) << "\n";
    const Verdict v = certificate_verdict(cert);
    if (!a.quiet) {
        for (const Json& s : cert.at("steps"))
            std::cout << s.at("status").get<std::string>() << "  " << s.at("name").get<std::string>() << "\n";
        std::cout << "conclusion: " << to_string(v) << "\n";
    }
    return exit_code(v);
}

int run_verify(const Args& a) {
    std::string text;
    try {
        text = read_file(a.file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const VerifyReport report = verify_certificate_text(text);
    if (!a.quiet) std::cout << report.summary();
    return report.exit_code();
}

int run_sieve(const Args& a) {
    CongruenceSystem sys;
    if (!a.beta.empty()) {
        if (!a.q.empty()) throw CLI::ValidationError("--beta and --q are exclusive");
        sys = CongruenceSystem::unconstrained(parse_eis(a.beta));
    } else {
        if (a.q.empty() || a.r.empty()) throw CLI::ValidationError("sieve needs --beta, or --q and --r");
        const SigmaSets sigma = build_sigma(make_quad_ext(parse_eis(a.q)), parse_eis(a.r));
        sys = build_congruence_system(sigma, parse_eis(a.r), a.depth, a.seed);
    }
    SieveOptions opt;
    const Integer nc = sys.modulus.norm();
    opt.norm_bound = a.norm_bound.empty() ? nc * nc : parse_integer(a.norm_bound);
    opt.max_results = a.max_results;
    opt.enforce_norm_bound_floor = !a.relax_floor;
    const SieveResult res = sieve_triples(sys, opt);
    for (const PrimeTriple& t : res.triples) std::cout << to_line(t) << "\n";
    if (!a.quiet)
        std::cerr << res.triples.size() << " triples, " << res.p2_candidates << " p2 and " << res.p1_candidates
                  << " p1 candidates" << (res.exhausted ? ", bound exhausted" : "") << "\n";
    return 0;
}

int run_classify(const Args& a) {
    const QuadExt ext = make_quad_ext(parse_eis(a.q));
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& [p, kind] : classify_primes(ext, a.max_norm)) {
        std::cout << p.value().str() << "\t" << p.norm().get_str() << "\t" << to_string(kind) << "\n";
        ++counts[static_cast<int>(kind)];
    }
    if (!a.quiet)
        std::cerr << "split " << counts[0] << ", inert " << counts[1] << ", ramified " << counts[2] << "\n";
    return 0;
}

int run_count(const Args& a) {
    const CurveModel e{parse_eis(a.n)};
    const PrimeElem p = PrimeElem::from(parse_eis(a.prime));
    std::cout << count_points(e, p) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-stability constructions over Q(zeta_3): twists, prime triples and certificates"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default RANKSTAB_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
    Args a;

    auto* construct = app.add_subcommand("construct", "build and write a certificate");
    construct->add_option("--q", a.q, "radicand, e.g. 5 or 3+w or 3,1")->required();
    construct->add_option("--r", a.r, "twist parameter r")->required();
    construct->add_option("--depth", a.depth, "congruence depth at S (>= 5)")->capture_default_str();
    construct->add_option("--norm-bound", a.norm_bound, "sieve norm bound (default N(C)^2)");
    construct->add_option("--seed", a.seed, "inert target selection")->capture_default_str();
    construct->add_option("--max-results", a.max_results, "triples to try")->capture_default_str();
    construct->add_option("--torsion-witnesses", a.torsion_witnesses)->capture_default_str();
    construct->add_option("--oracle", a.oracle, "JSON file with the rank-0 assertion")->check(CLI::ExistingFile);
    construct->add_option("--out", a.out, "certificate path")->required();
    construct->add_flag("--quiet", a.quiet);

    auto* verify = app.add_subcommand("verify", "recheck a certificate");
    verify->add_option("file", a.file)->required();
    verify->add_flag("--quiet", a.quiet);

    auto* sieve = app.add_subcommand("sieve", "print prime triples p1 + beta p2 = p3, one per line");
    sieve->add_option("--beta", a.beta, "plain search with C = 1");
    sieve->add_option("--q", a.q);
    sieve->add_option("--r", a.r);
    sieve->add_option("--depth", a.depth)->capture_default_str();
    sieve->add_option("--seed", a.seed)->capture_default_str();
    sieve->add_option("--norm-bound", a.norm_bound);
    sieve->add_option("--max-results", a.max_results)->capture_default_str();
    sieve->add_flag("--relax-floor", a.relax_floor, "allow bounds below N(C)^2");
    sieve->add_flag("--quiet", a.quiet);

    auto* primes = app.add_subcommand("primes", "prime tables");
    primes->require_subcommand(1);
    auto* classify = primes->add_subcommand("classify", "splitting type in F(sqrt q)");
    classify->add_option("--q", a.q)->required();
    classify->add_option("--max-norm", a.max_norm)->capture_default_str();
    classify->add_flag("--quiet", a.quiet);

    auto* curve = app.add_subcommand("curve", "curve utilities");
    curve->require_subcommand(1);
    auto* count = curve->add_subcommand("count", "#E(k_p) for y^2 = x^3 + n");
    count->add_option("--n", a.n)->required();
    count->add_option("--prime", a.prime)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (threads > 0) set_thread_count(threads);

    try {
        if (*construct) return run_construct(a);
        if (*verify) return run_verify(a);
        if (*sieve) return run_sieve(a);
        if (*classify) return run_classify(a);
        if (*count) return run_count(a);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
