#include "rankstab/curve.hpp"
#include "rankstab/parallel.hpp"
#include "rankstab/quad_ext.hpp"
#include "rankstab/triple_sieve.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <stdexcept>

using namespace rankstab;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %9.4f s   openmp %9.4f s   speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d\n", thread_count());

    {
        const CongruenceSystem sys = CongruenceSystem::unconstrained(2);
        const SieveOptions opt{200000, 400, false};
        if (sieve_triples(sys, opt).triples != sieve_triples_serial(sys, opt).triples)
            throw std::logic_error("sieve kernels disagree");
        report("sieve beta=2", seconds([&] { sieve_triples_serial(sys, opt); }, reps),
               seconds([&] { sieve_triples(sys, opt); }, reps));
    }
    {
        const SigmaSets sigma = build_sigma(make_quad_ext(5), 1);
        const CongruenceSystem sys = build_congruence_system(sigma, 1);
        const Integer nc = sys.modulus.norm();
        const SieveOptions opt{nc * nc, 8, true};
        report("sieve q=5 r=1", seconds([&] { sieve_triples_serial(sys, opt); }, reps),
               seconds([&] { sieve_triples(sys, opt); }, reps));
    }
    {
        const CurveModel e{EisInt(2, 7)};
        std::vector<PrimeElem> primes;
        for (const PrimeElem& p : primes_up_to(20000))
            if (has_good_reduction(e, p)) primes.push_back(p);
        if (count_points_sweep(e, primes) != count_points_sweep_serial(e, primes))
            throw std::logic_error("point-count kernels disagree");
        report("count_points sweep", seconds([&] { count_points_sweep_serial(e, primes); }, reps),
               seconds([&] { count_points_sweep(e, primes); }, reps));
    }
    {
        const QuadExt ext = make_quad_ext(5);
        report("classify_primes", seconds([&] { classify_primes_serial(ext, 200000); }, reps),
               seconds([&] { classify_primes(ext, 200000); }, reps));
    }
    return 0;
}
