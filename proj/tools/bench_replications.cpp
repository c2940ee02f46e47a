// Times the replication kernel serially and under OpenMP on the forged
// instances and checks that both schedules produce identical samples.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swb/forge.hpp"
#include "swb/sim.hpp"

using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

void bench(const char* name, const swb::Instance& inst, const swb::PolicySpec& spec,
           long reps) {
    auto t0 = clk::now();
    auto serial = swb::replicate_regret(inst, spec, reps, swb::kDefaultSeed, swb::Exec::Serial);
    double ts = seconds_since(t0);

    t0 = clk::now();
    auto parallel =
        swb::replicate_regret(inst, spec, reps, swb::kDefaultSeed, swb::Exec::OpenMp);
    double tp = seconds_since(t0);

    bool identical = serial == parallel;
    std::printf("%-28s reps=%-6ld serial %7.3fs   openmp %7.3fs   speedup %.2fx   %s\n", name,
                reps, ts, tp, ts / tp, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both lanes run serially\n");
#endif

    auto [ucb_inst, ucb_params] = swb::forge_ucb(1000, 2);
    bench("ucb-known / forged ucb", ucb_inst, swb::PolicySpec::ucb_known(), 4000);

    swb::Instance eg = swb::forge_eg_mid(1000, 2);
    bench("eps-greedy(0.1) / mid switch", eg, swb::PolicySpec::eps_greedy(0.1), 4000);

    swb::Instance comp = swb::forge_restart_composite(4000, 2, 4, 2, swb::AdversaryKind::Ucb);
    bench("restarted ucb / composite", comp,
          swb::PolicySpec::restarted(swb::PolicySpec::ucb_known(), 4), 1000);
    return 0;
}
