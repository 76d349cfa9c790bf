// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: the all-triples triangle verification and the range
// scanners.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "divmet/scan.hpp"

using namespace divmet;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void bench_verify(const char* func, Combinator comb, unsigned long n) {
    DistanceTable t = build_table(make_spec(resolve_function(func), comb, Nat(n)));
    auto t0 = clock_type::now();
    AxiomReport serial = verify_pseudometric_serial(t);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    AxiomReport parallel = verify_pseudometric(t);
    double tp = seconds_since(t0);
    bool agree = serial.all_axioms_ok() == parallel.all_axioms_ok() &&
                 serial.triangle_violation_count == parallel.triangle_violation_count;
    std::printf("verify %-28s n=%-6lu |D|^3=%-10zu serial %8.3fs  omp(%d) %8.3fs  x%.2f  %s\n",
                func, n, t.index.size() * t.index.size() * t.index.size(), ts,
                omp_get_max_threads(), tp, ts / tp, agree ? "agree" : "DISAGREE");
}

void bench_scan(const char* func, uint64_t max) {
    ArithmeticFunction f = resolve_function(func);
    auto t0 = clock_type::now();
    ScanReport one = scan_collisions(f, max, ScanMode::All, 1);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    ScanReport many = scan_collisions(f, max, ScanMode::All, omp_get_max_threads());
    double tp = seconds_since(t0);
    bool agree = one.groups.size() == many.groups.size();
    std::printf("scan   %-28s N=%-8llu groups=%-8zu 1 job %8.3fs  omp(%d) %8.3fs  x%.2f  %s\n",
                func, (unsigned long long)max, many.groups.size(), ts, omp_get_max_threads(), tp,
                ts / tp, agree ? "agree" : "DISAGREE");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());
    bench_verify("recip", Combinator::AddH, 5040);
    bench_verify("sigma", Combinator::AddG, 55440);    // tau = 120: 1.7M triples
    bench_verify("phi_over_x", Combinator::MulH, 720720);  // tau = 240: 13.8M triples
    bench_verify("ld", Combinator::DeltaAddF, 55440);
    std::printf("\n");
    bench_scan("sigma_over_x2", 1000000);
    bench_scan("phi_over_x", 1000000);
    bench_scan("sigma_over_x", 1000000);

    auto t0 = clock_type::now();
    MultiperfectReport mp = scan_multiperfect(1000000, 1);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    MultiperfectReport mpp = scan_multiperfect(1000000, omp_get_max_threads());
    double tp = seconds_since(t0);
    std::printf("scan   multiperfect                 N=1000000 hits=%-8zu 1 job %8.3fs  omp(%d) %8.3fs  x%.2f  %s\n",
                mpp.hits.size(), ts, omp_get_max_threads(), tp, ts / tp,
                mp.hits.size() == mpp.hits.size() ? "agree" : "DISAGREE");
    return 0;
}
