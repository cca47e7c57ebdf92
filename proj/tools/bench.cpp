// Compares the OpenMP kernels against their serial reference implementations
// and verifies that both produce identical results.
//
// Usage: takagi_bench [repeat]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "takagi/kernels.hpp"
#include "takagi/levelsets.hpp"

using namespace takagi;

namespace {

template <typename F>
double time_ms(F&& f, int repeat) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, std::chrono::duration<double, std::milli>(dt).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.2f ms %10.2f ms   x%-5.2f %s\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "outputs-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int repeat = argc > 1 ? std::stoi(argv[1]) : 3;
    std::printf("threads: %d, repeat: %d\n", omp_get_max_threads(), repeat);
    std::printf("%-28s %13s %13s   %-6s\n", "kernel", "serial", "openmp", "speedup");

    {
        kernels::GraphMax a, b;
        double ts = time_ms([&] { a = kernels::graph_max_serial(16); }, repeat);
        double tp = time_ms([&] { b = kernels::graph_max(16); }, repeat);
        row("graph_max depth=16", ts, tp, a.value == b.value && a.argmax == b.argmax);
    }
    {
        std::vector<Rational> a, b;
        double ts = time_ms([&] { a = kernels::graph_values_serial(16); }, repeat);
        double tp = time_ms([&] { b = kernels::graph_values(16); }, repeat);
        row("graph_values depth=16", ts, tp, a == b);
    }
    {
        std::vector<kernels::HumpEntry> a, b;
        double ts = time_ms([&] { a = kernels::leading_hump_table_serial(13); }, repeat);
        double tp = time_ms([&] { b = kernels::leading_hump_table(13); }, repeat);
        bool eq = a.size() == b.size();
        for (std::size_t i = 0; eq && i < a.size(); ++i)
            eq = a[i].word_bits == b[i].word_bits && a[i].order == b[i].order && a[i].t_num == b[i].t_num;
        row("hump_table order<=13", ts, tp, eq);
    }
    {
        std::vector<Rational> xs;
        for (int i = 1; i <= 2000; ++i) xs.push_back(Rational(i, 2999));
        std::vector<Rational> a, b;
        double ts = time_ms([&] { a = kernels::batch_takagi_serial(xs); }, repeat);
        double tp = time_ms([&] { b = kernels::batch_takagi(xs); }, repeat);
        row("batch_takagi n=2000", ts, tp, a == b);
    }
    {
        Rational a, b;
        double ts = time_ms([&] { a = kernels::mc_average_hits_serial(12, 100000, 42); }, repeat);
        double tp = time_ms([&] { b = kernels::mc_average_hits(12, 100000, 42); }, repeat);
        row("mc_hits M=12 n=1e5", ts, tp, a == b);
    }
    {
        LevelSetReport a, b;
        SolveOptions ser;
        ser.parallel = false;
        SolveOptions par;
        par.parallel = true;
        Rational y(2, 3);
        double ts = time_ms([&] { a = solve(y, 30, ser); }, repeat);
        double tp = time_ms([&] { b = solve(y, 30, par); }, repeat);
        row("solve y=2/3 depth=30", ts, tp,
            a.brackets.size() == b.brackets.size() && a.exact_points == b.exact_points);
    }
    {
        std::vector<Rational> ys;
        for (int i = 1; i <= 64; ++i) ys.push_back(Rational(i, 129));
        std::vector<SpinePoint> a, b;
        double ts = time_ms([&] { a = batch_spine_invert_serial(ys, 48); }, repeat);
        double tp = time_ms([&] { b = batch_spine_invert(ys, 48); }, repeat);
        bool eq = a.size() == b.size();
        for (std::size_t i = 0; eq && i < a.size(); ++i) eq = a[i].enclosure == b[i].enclosure;
        row("spine_invert n=64 p=48", ts, tp, eq);
    }
    return 0;
}
