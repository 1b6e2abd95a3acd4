// Compares the serial reference kernels against the OpenMP ones on large
// synthetic workloads and checks that both produce identical results.
//
//   vrtile_bench [n_directions] [n_poses]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vrtile/batch.hpp"

using namespace vrtile;

namespace {

// splitmix64: tiny deterministic generator, identical on every platform.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int repeats, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        double t0 = now_ms();
        body();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

void report(const char* kernel, std::size_t n, double serial_ms, double parallel_ms) {
    std::printf("%-18s n=%-9zu serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", kernel, n,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_dirs = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 8'000'000;
    std::size_t n_poses = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2'000'000;

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available, parallel mode falls back to serial\n");
#endif

    HexafacePartition partition = partition_sphere(96.0, 90.0);
    SplitMix64 rng(0x5eed);

    std::vector<AngleDirection> dirs(n_dirs);
    for (auto& d : dirs) {
        d.yaw_deg = -180.0 + 360.0 * rng.uniform();
        d.pitch_deg = rad_to_deg(std::asin(2.0 * rng.uniform() - 1.0));
    }

    // Smooth synthetic head motion: slow sweep plus jitter.
    std::vector<Pose> poses(n_poses);
    for (std::size_t i = 0; i < n_poses; ++i) {
        double t = static_cast<double>(i) / 90.0;
        poses[i].t_ms = static_cast<std::int64_t>(i) * 11;
        poses[i].yaw_deg = normalize_yaw(40.0 * std::sin(t * 0.31) + 2.0 * rng.uniform());
        poses[i].pitch_deg = 25.0 * std::sin(t * 0.17) + rng.uniform();
        poses[i].roll_deg = 0.0;
    }

    {
        std::array<std::int64_t, 6> serial_counts{}, parallel_counts{};
        double s = time_best_of(
            3, [&] { serial_counts = segment_histogram(partition, dirs, Execution::serial); });
        double p = time_best_of(
            3, [&] { parallel_counts = segment_histogram(partition, dirs, Execution::parallel); });
        if (serial_counts != parallel_counts) {
            std::fprintf(stderr, "FAIL: histogram mismatch between serial and parallel\n");
            return 1;
        }
        report("segment_histogram", n_dirs, s, p);
    }

    {
        std::vector<SegmentId> serial_ids, parallel_ids;
        double s = time_best_of(
            3, [&] { serial_ids = classify_batch(partition, dirs, Execution::serial); });
        double p = time_best_of(
            3, [&] { parallel_ids = classify_batch(partition, dirs, Execution::parallel); });
        if (serial_ids != parallel_ids) {
            std::fprintf(stderr, "FAIL: classify mismatch between serial and parallel\n");
            return 1;
        }
        report("classify_batch", n_dirs, s, p);
    }

    {
        std::vector<Visibility> serial_vis, parallel_vis;
        double s = time_best_of(
            3, [&] { serial_vis = visibility_batch(partition, poses, 0.0, Execution::serial); });
        double p = time_best_of(
            3, [&] { parallel_vis = visibility_batch(partition, poses, 0.0, Execution::parallel); });
        for (std::size_t i = 0; i < n_poses; ++i) {
            if (serial_vis[i].fractions != parallel_vis[i].fractions ||
                serial_vis[i].gaze != parallel_vis[i].gaze) {
                std::fprintf(stderr, "FAIL: visibility mismatch at pose %zu\n", i);
                return 1;
            }
        }
        report("visibility_batch", n_poses, s, p);
    }

    return 0;
}
