// Compares the single-threaded reference verifiers against the OpenMP
// implementations on fixed instances, checking that both produce identical
// reports.  Run through the `bench` target; wall times are printed per
// configuration together with the speedup.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sdesign/design.hpp"
#include "sdesign/expander.hpp"
#include "sdesign/poly.hpp"

using namespace sdesign;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool same_design_report(const VerificationReport& a,
                        const VerificationReport& b) {
    return a.pass == b.pass && a.tested == b.tested &&
           a.max_total == b.max_total && a.witness == b.witness;
}

bool same_expander_report(const ExpanderReport& a, const ExpanderReport& b) {
    return a.pass == b.pass && a.tested == b.tested &&
           a.min_dim == b.min_dim && a.min_ell == b.min_ell &&
           a.witness == b.witness && a.invariant_ok == b.invariant_ok;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at compile time\n");
#endif

    int mismatches = 0;

    {
        Field F3(3);
        DesignInstance D =
            build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
        VerifyOptions opt;
        for (std::uint32_t sprime : {1u, 2u}) {
            auto t0 = clock_type::now();
            VerificationReport serial = verify_design_serial(D, sprime, opt);
            const double ts = seconds_since(t0);
            t0 = clock_type::now();
            VerificationReport parallel = verify_design(D, sprime, opt);
            const double tp = seconds_since(t0);
            const bool same = same_design_report(serial, parallel);
            if (!same) ++mismatches;
            std::printf(
                "design verify s'=%u (%llu subspaces): serial %.3f s, "
                "parallel %.3f s, speedup %.2fx, reports %s\n",
                sprime, static_cast<unsigned long long>(serial.tested), ts,
                tp, tp > 0 ? ts / tp : 0.0, same ? "identical" : "DIFFER");
        }
    }

    {
        ExpanderInstance E = build_expander(17, 4, 1);
        VerifyOptions opt;
        for (std::uint32_t b : {1u, 2u}) {
            auto t0 = clock_type::now();
            ExpanderReport serial = verify_expander_serial(E, b, 1, 3, opt);
            const double ts = seconds_since(t0);
            t0 = clock_type::now();
            ExpanderReport parallel = verify_expander(E, b, 1, 3, opt);
            const double tp = seconds_since(t0);
            const bool same = same_expander_report(serial, parallel);
            if (!same) ++mismatches;
            std::printf(
                "expander verify b=%u (%llu subspaces): serial %.3f s, "
                "parallel %.3f s, speedup %.2fx, reports %s\n",
                b, static_cast<unsigned long long>(serial.tested), ts, tp,
                tp > 0 ? ts / tp : 0.0, same ? "identical" : "DIFFER");
        }
    }

    if (mismatches != 0) {
        std::printf("%d report mismatches\n", mismatches);
        return 1;
    }
    return 0;
}
