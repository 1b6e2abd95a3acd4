#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "vrtile/errors.hpp"
#include "vrtile/viewport.hpp"
#include "test_support.hpp"

using namespace vrtile;
using testsupport::SplitMix64;

namespace {

// Rotation-matrix oracle: R = Ry(yaw) * Rx(pitch) * Rz(roll), row-major.
using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
    return m;
}

Mat3 euler_matrix(double yaw_deg, double pitch_deg, double roll_deg) {
    double cy = std::cos(deg_to_rad(yaw_deg)), sy = std::sin(deg_to_rad(yaw_deg));
    double cp = std::cos(deg_to_rad(pitch_deg)), sp = std::sin(deg_to_rad(pitch_deg));
    double cr = std::cos(deg_to_rad(roll_deg)), sr = std::sin(deg_to_rad(roll_deg));
    Mat3 ry = {{{cy, 0, sy}, {0, 1, 0}, {-sy, 0, cy}}};
    Mat3 rx = {{{1, 0, 0}, {0, cp, -sp}, {0, sp, cp}}};
    Mat3 rz = {{{cr, -sr, 0}, {sr, cr, 0}, {0, 0, 1}}};
    return matmul(ry, matmul(rx, rz));
}

Vec3 mat_apply(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

}  // namespace

TEST_CASE("euler_to_quaternion: identity, yaw 90, unit norm") {
    auto q0 = euler_to_quaternion(0, 0, 0);
    CHECK(q0.w == doctest::Approx(1.0));
    CHECK(q0.x == 0.0);
    CHECK(q0.y == 0.0);
    CHECK(q0.z == 0.0);

    auto q = euler_to_quaternion(90, 0, 0);
    double c45 = std::cos(deg_to_rad(45.0));
    CHECK(std::abs(q.w - c45) < 1e-12);
    CHECK(std::abs(q.x) < 1e-12);
    CHECK(std::abs(q.y - c45) < 1e-12);
    CHECK(std::abs(q.z) < 1e-12);

    SplitMix64 rng(21);
    for (int i = 0; i < 500; ++i) {
        auto r = euler_to_quaternion(rng.uniform(-720, 720), rng.uniform(-90, 90),
                                     rng.uniform(-180, 180));
        CHECK(std::abs(r.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("quaternion rotation agrees with the rotation-matrix oracle") {
    SplitMix64 rng(22);
    const Vec3 basis[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (int i = 0; i < 300; ++i) {
        double yaw = rng.uniform(-180, 180);
        double pitch = rng.uniform(-90, 90);
        double roll = rng.uniform(-180, 180);
        auto q = euler_to_quaternion(yaw, pitch, roll);
        Mat3 m = euler_matrix(yaw, pitch, roll);
        for (const Vec3& v : basis) {
            Vec3 a = q.rotate(v);
            Vec3 b = mat_apply(m, v);
            CHECK(std::abs(a.x - b.x) < 1e-12);
            CHECK(std::abs(a.y - b.y) < 1e-12);
            CHECK(std::abs(a.z - b.z) < 1e-12);
        }
    }
}

TEST_CASE("direction_vector: forward axis under the stated convention") {
    Vec3 fwd = direction_vector(euler_to_quaternion(0, 0, 0));
    CHECK(std::abs(fwd.x) < 1e-12);
    CHECK(std::abs(fwd.y) < 1e-12);
    CHECK(std::abs(fwd.z + 1.0) < 1e-12);

    Vec3 yaw90 = direction_vector(euler_to_quaternion(90, 0, 0));
    CHECK(std::abs(yaw90.x + 1.0) < 1e-12);
    CHECK(std::abs(yaw90.y) < 1e-12);
    CHECK(std::abs(yaw90.z) < 1e-12);

    Vec3 up = direction_vector(euler_to_quaternion(0, 90, 0));
    CHECK(std::abs(up.x) < 1e-12);
    CHECK(std::abs(up.y - 1.0) < 1e-12);
    CHECK(std::abs(up.z) < 1e-12);

    CHECK_THROWS_AS(direction_vector(Quaternion{0.9, 0, 0, 0}), ParameterError);
}

TEST_CASE("direction_to_angles inverts the pipeline") {
    auto [yaw0, pitch0] = direction_to_angles({0, 0, -1});
    CHECK(std::abs(yaw0) < 1e-12);
    CHECK(std::abs(pitch0) < 1e-12);

    auto [yaw1, pitch1] = direction_to_angles({-1, 0, 0});
    CHECK(std::abs(yaw1 - 90.0) < 1e-12);
    CHECK(std::abs(pitch1) < 1e-12);

    auto [yaw2, pitch2] =
        direction_to_angles(direction_vector(euler_to_quaternion(33.5, -21.25, 0)));
    CHECK(std::abs(yaw2 - 33.5) < 1e-9);
    CHECK(std::abs(pitch2 + 21.25) < 1e-9);

    CHECK_THROWS_AS(direction_to_angles(Vec3{0.5, 0, 0}), ParameterError);
}

TEST_CASE("euler -> quaternion -> direction -> angles round-trips to 1e-9 deg") {
    SplitMix64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        double yaw = rng.uniform(-180.0, 180.0);
        double pitch = rng.uniform(-89.9, 89.9);
        auto q = euler_to_quaternion(yaw, pitch, 0.0);
        CHECK(std::abs(q.norm() - 1.0) < 1e-9);
        Vec3 d = direction_vector(q);
        CHECK(std::abs(d.norm() - 1.0) < 1e-9);
        auto [yaw_back, pitch_back] = direction_to_angles(d);
        CHECK(std::abs(normalize_yaw(yaw_back - yaw)) < 1e-9);
        CHECK(std::abs(pitch_back - pitch) < 1e-9);
    }
}

TEST_CASE("visible_segments at the centered pose") {
    auto p = testsupport::default_partition();
    auto vis = visible_segments(p, {0, 0, 0, 0}, 0.0);

    CHECK(vis.gaze == SegmentId::M0);
    CHECK(vis.fraction(SegmentId::M0) == doctest::Approx(0.9375));
    CHECK(vis.fraction(SegmentId::M1) == doctest::Approx(0.03125));
    CHECK(vis.fraction(SegmentId::M3) == doctest::Approx(0.03125));
    CHECK(vis.fraction(SegmentId::M2) == 0.0);
    // Caps only touch the closed middle body at exact tangency.
    CHECK(vis.fraction(SegmentId::Top) == 0.0);
    CHECK(vis.fraction(SegmentId::Bottom) == 0.0);

    auto set = vis.visible_set();
    CHECK(set == std::vector<SegmentId>{SegmentId::M0, SegmentId::M1, SegmentId::M3});

    auto vis5 = visible_segments(p, {0, 0, 0, 0}, 0.05);
    CHECK(vis5.visible_set() == std::vector<SegmentId>{SegmentId::M0});

    double sum = 0.0;
    for (SegmentId s : kAllSegments) sum += vis.fraction(s);
    CHECK(sum <= 1.0 + 1e-6);
}

TEST_CASE("visible_segments looking straight up") {
    auto p = testsupport::default_partition();
    auto vis = visible_segments(p, {0, 0, 90, 0}, 0.0);
    CHECK(vis.gaze == SegmentId::Top);
    for (SegmentId s : kAllSegments)
        CHECK(vis.fraction(SegmentId::Top) >= vis.fraction(s));
    CHECK(vis.fraction(SegmentId::Top) == doctest::Approx(1.0));
}

TEST_CASE("gaze inclusion and set bounds for arbitrary poses") {
    auto p = testsupport::default_partition();
    SplitMix64 rng(24);
    for (int i = 0; i < 2000; ++i) {
        Pose pose = testsupport::random_pose(rng);
        for (double threshold : {0.0, 0.05, 0.3}) {
            auto vis = visible_segments(p, pose, threshold);
            auto set = vis.visible_set();
            CHECK(std::find(set.begin(), set.end(), vis.gaze) != set.end());
            CHECK(set.size() >= 1);
            CHECK(set.size() <= 6);
            CHECK(vis.fraction(vis.gaze) > 0.0);
            double sum = 0.0;
            for (SegmentId s : kAllSegments) sum += vis.fraction(s);
            CHECK(sum <= 1.0 + 1e-6);
        }
    }
}

TEST_CASE("rotating yaw by 90 degrees permutes middle fractions cyclically") {
    auto p = testsupport::default_partition();
    SplitMix64 rng(25);
    const std::array<SegmentId, 4> middles = {SegmentId::M0, SegmentId::M1, SegmentId::M2,
                                              SegmentId::M3};
    for (int i = 0; i < 500; ++i) {
        Pose pose = testsupport::random_pose(rng);
        Pose rotated = pose;
        rotated.yaw_deg = normalize_yaw(pose.yaw_deg + 90.0);
        auto a = visible_segments(p, pose, 0.0);
        auto b = visible_segments(p, rotated, 0.0);
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(b.fraction(middles[(m + 1) % 4]) - a.fraction(middles[m])) < 1e-9);
        CHECK(std::abs(b.fraction(SegmentId::Top) - a.fraction(SegmentId::Top)) < 1e-9);
        CHECK(std::abs(b.fraction(SegmentId::Bottom) - a.fraction(SegmentId::Bottom)) < 1e-9);
    }
}

namespace {

// Ray-sampling oracle: classify a 96x90 grid of viewport directions (cell
// centers) and collect the segments hit.
std::set<SegmentId> ray_sampled_visible(const HexafacePartition& p, const Pose& pose) {
    std::set<SegmentId> hit;
    for (int i = 0; i < 96; ++i) {
        double dyaw = -p.h_fov_deg / 2.0 + (i + 0.5) * p.h_fov_deg / 96.0;
        for (int j = 0; j < 90; ++j) {
            double dpitch = -p.v_fov_deg / 2.0 + (j + 0.5) * p.v_fov_deg / 90.0;
            double pitch = std::clamp(pose.pitch_deg + dpitch, -90.0, 90.0);
            hit.insert(classify_direction(p, pose.yaw_deg + dyaw, pitch));
        }
    }
    return hit;
}

// Interval overlap of a segment with the viewport rectangle, in degrees per axis.
std::pair<double, double> overlap_extents(const HexafacePartition& p, const Pose& pose,
                                          SegmentId s) {
    const AngularRegion& r = p.region(s);
    YawArc view = YawArc::from_bounds(pose.yaw_deg - p.h_fov_deg / 2.0,
                                      pose.yaw_deg + p.h_fov_deg / 2.0);
    double yaw_overlap = r.yaw_span_deg() >= 360.0 ? view.span_deg : view.overlap(r.yaw_arc());
    double lo = std::max(pose.pitch_deg - p.v_fov_deg / 2.0, -90.0);
    double hi = std::min(pose.pitch_deg + p.v_fov_deg / 2.0, 90.0);
    double pitch_overlap = std::min(hi, r.pitch_max_deg) - std::max(lo, r.pitch_min_deg);
    return {yaw_overlap, std::max(pitch_overlap, 0.0)};
}

}  // namespace

TEST_CASE("interval visibility agrees with the ray-sampling oracle") {
    auto p = testsupport::default_partition();
    SplitMix64 rng(26);
    int mismatches = 0;
    const int n = 250;
    for (int i = 0; i < n; ++i) {
        Pose pose = testsupport::random_pose(rng, 30.0);
        auto vis = visible_segments(p, pose, 0.0);
        auto sampled = ray_sampled_visible(p, pose);
        bool disagrees = false;
        for (SegmentId s : kAllSegments) {
            bool interval_says = vis.is_visible(s);
            bool oracle_says = sampled.count(s) > 0;
            if (interval_says == oracle_says) continue;
            auto [yaw_ov, pitch_ov] = overlap_extents(p, pose, s);
            if (yaw_ov < 1.0 || pitch_ov < 1.0) continue;  // sub-degree sliver
            disagrees = true;
        }
        if (disagrees) ++mismatches;
    }
    CHECK(mismatches <= n / 100);
}
