// Times the grid kernels with the serial reference against the OpenMP path.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "catlab/catenoid.hpp"
#include "catlab/monotone.hpp"
#include "catlab/parallel.hpp"
#include "catlab/revolution.hpp"
#include "catlab/two_sheet.hpp"

using namespace catlab;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4f ms %10.4f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        auto run = [&](ExecPolicy pol) { revolution::family_table(4, 2.0, 4000, 0.99, pol); };
        row("family_table 4k rows",
            time_best_of(3, [&] { run(ExecPolicy::serial); }),
            time_best_of(3, [&] { run(ExecPolicy::parallel); }));
    }
    {
        const auto cfg = two_sheet::make_catenoid_config(3, 1.0, 4.0, 400.0, 24);
        std::vector<double> grid(64);
        const double ratio = std::pow(100.0, 1.0 / 63.0);
        for (int i = 0; i < 64; ++i) grid[static_cast<std::size_t>(i)] = 4.0 * std::pow(ratio, i);
        auto run = [&](ExecPolicy pol) { monotone::trace(cfg, grid, pol); };
        row("monotone trace 64 pts",
            time_best_of(3, [&] { run(ExecPolicy::serial); }),
            time_best_of(3, [&] { run(ExecPolicy::parallel); }));
    }
    {
        const auto cfg = two_sheet::make_catenoid_config(2, 1.0, 10.0, 1e3, 256);
        auto run = [&](ExecPolicy pol) { two_sheet::minimal_graph_residual(cfg, {}, pol); };
        row("graph residual 256 nodes",
            time_best_of(3, [&] { run(ExecPolicy::serial); }),
            time_best_of(3, [&] { run(ExecPolicy::parallel); }));
    }
    {
        auto run = [&](ExecPolicy pol) {
            catenoid::CatenoidProfile::sample(3, 1.0, 5e3, 1.01, pol);
        };
        row("catenoid profile ~860 pts",
            time_best_of(3, [&] { run(ExecPolicy::serial); }),
            time_best_of(3, [&] { run(ExecPolicy::parallel); }));
    }
    return 0;
}
