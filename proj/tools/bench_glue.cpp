// Benchmark of the parallel gluing kernels against the serial reference:
// Wick pairing of a many-legged remainder and the wheels-line evaluation.
#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "loopline/integrate.hpp"
#include "loopline/random_gen.hpp"

using namespace loopline;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Diagram cycle_with_legs(int m, LegLabel l) {
    Diagram d = make_wheel(m);
    for (auto& v : d.vertices)
        if (!v.internal) v.leg = l;
    return d;
}

} // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 0;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::cout << "OpenMP threads: " << (threads > 0 ? threads : omp_get_max_threads()) << "\n";
#else
    std::cout << "built without OpenMP: parallel variants fall back to serial\n";
#endif

    Rng rng(7);
    // Case 1: pair_glue on an 8-legged remainder (105 matchings per term).
    {
        LaurentMatrix w = random_hermitian_unimodular(rng, 2, 2, 3);
        DiagramSeries r = DiagramSeries::unit();
        Diagram d = disjoint_union(cycle_with_legs(4, x_label(1)), cycle_with_legs(4, x_label(2)));
        r.add(d, Rat(1));
        IntegrableElement elem{w, r};
        Trunc t = Trunc::by_grade(10);

        auto t0 = Clock::now();
        DiagramSeries serial = fg_integrate(elem, t, false);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        DiagramSeries parallel = fg_integrate(elem, t, true);
        double tp = seconds_since(t0);
        std::cout << "fg_integrate  8 legs:  serial " << ts << " s, parallel " << tp
                  << " s, equal: " << (serial == parallel ? "yes" : "NO") << "\n";
        if (!(serial == parallel)) return 1;
    }
    // Case 2: wheels-line evaluation at mu = 3, n = 2.
    {
        LaurentMatrix w = random_hermitian_unimodular(rng, 3, 2, 2);
        auto t0 = Clock::now();
        WheelsLine serial = lmo_chord_exponential(w, 2, 4, false);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        WheelsLine parallel = lmo_chord_exponential(w, 2, 4, true);
        double tp = seconds_since(t0);
        bool equal = serial.scalar == parallel.scalar && serial.wheels == parallel.wheels;
        std::cout << "wheels line mu=3 n=2:  serial " << ts << " s, parallel " << tp
                  << " s, equal: " << (equal ? "yes" : "NO") << "\n";
        if (!equal) return 1;
    }
    // Case 3: LMO gluing with many matchings (mu = 2, n = 2).
    {
        LaurentMatrix w = random_hermitian_unimodular(rng, 2, 1, 2);
        Trunc t;
        t.max_x_legs_per_var = 4;
        t.max_k_legs = 2;
        DiagramSeries f = thr_d(gaussian_chord_exp(w, t), t);
        auto t0 = Clock::now();
        DiagramSeries serial = lmo_integrate_n(f, {1, 2}, 2, t);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        DiagramSeries parallel = lmo_integrate_n_parallel(f, {1, 2}, 2, t);
        double tp = seconds_since(t0);
        std::cout << "lmo glue  mu=2 n=2:  serial " << ts << " s, parallel " << tp
                  << " s, equal: " << (serial == parallel ? "yes" : "NO") << "\n";
        if (!(serial == parallel)) return 1;
    }
    return 0;
}
