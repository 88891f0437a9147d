#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirtymac/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace dirtymac;

namespace {

// O(n^2) chord oracle: envelope at x_i is the max over all chords (j, k)
// with x_j <= x_i <= x_k, plus the raw value itself.
std::vector<double> brute_force_envelope(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double best = y[i];
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = i; k < x.size(); ++k) {
                if (j == k)
                    continue;
                double t = (x[i] - x[j]) / (x[k] - x[j]);
                best = std::max(best, y[j] + t * (y[k] - y[j]));
            }
        out[i] = best;
    }
    return out;
}

} // namespace

TEST_CASE("concave input is its own envelope") {
    std::vector<double> x, y;
    for (int i = 0; i <= 200; ++i) {
        double xi = 2.0 * i / 200.0;
        x.push_back(xi);
        y.push_back(xi - xi * xi / 4.0);
    }
    auto env = upper_convex_envelope(x, y);
    for (std::size_t i = 0; i < env.size(); ++i)
        CHECK(env[i].enveloped == doctest::Approx(env[i].raw).epsilon(0).scale(1).epsilon(1e-12));
}

TEST_CASE("three-point chord example") {
    std::vector<double> x = {0.0, 1.0, 2.0};
    std::vector<double> y = {0.0, 0.0, 1.0};
    auto env = upper_convex_envelope(x, y);
    CHECK(env[1].enveloped == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(env[0].enveloped == 0.0);
    CHECK(env[2].enveloped == 1.0);
    CHECK(envelope_value_at(env, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(envelope_value_at(env, -3.0) == 0.0);   // clamps to endpoints
    CHECK(envelope_value_at(env, 99.0) == 1.0);
}

TEST_CASE("clipped log curve: strict gain on an initial interval, tangent beyond") {
    std::vector<double> x, y;
    for (int i = 0; i <= 1000; ++i) {
        double p = 10.0 * i / 1000.0;
        x.push_back(p);
        y.push_back(std::max(0.0, 0.5 * std::log2(0.5 + p)));
    }
    auto env = upper_convex_envelope(x, y);
    auto oracle = brute_force_envelope(x, y);
    bool gained = false, tangent_tail = false;
    for (std::size_t i = 0; i < env.size(); ++i) {
        CHECK(env[i].enveloped == doctest::Approx(oracle[i]).epsilon(0).scale(1).epsilon(1e-9));
        CHECK(env[i].enveloped >= env[i].raw - 1e-12);
        if (i > 0 && env[i].enveloped > env[i].raw + 1e-9)
            gained = true;
        if (x[i] > 5.0 && std::fabs(env[i].enveloped - env[i].raw) < 1e-9)
            tangent_tail = true;
    }
    CHECK(gained);
    CHECK(tangent_tail);

    // concavity: second differences of the enveloped values are <= 0 (tol)
    for (std::size_t i = 1; i + 1 < env.size(); ++i) {
        double d2 = env[i + 1].enveloped - 2.0 * env[i].enveloped + env[i - 1].enveloped;
        CHECK(d2 <= 1e-12);
    }
}

TEST_CASE("random sawtooth against the brute-force oracle") {
    std::vector<double> x, y;
    std::uint64_t state = 12345;
    for (int i = 0; i <= 60; ++i) {
        x.push_back(static_cast<double>(i));
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        y.push_back(static_cast<double>(state >> 40) / static_cast<double>(1 << 24));
    }
    auto env = upper_convex_envelope(x, y);
    auto oracle = brute_force_envelope(x, y);
    for (std::size_t i = 0; i < env.size(); ++i)
        CHECK(env[i].enveloped == doctest::Approx(oracle[i]).epsilon(0).scale(1).epsilon(1e-9));
}

TEST_CASE("error paths") {
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS(upper_convex_envelope(one, one), std::invalid_argument);
    std::vector<double> x = {0.0, 1.0, 1.0};
    std::vector<double> y = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(upper_convex_envelope(x, y), std::invalid_argument); // duplicate x
    std::vector<double> xr = {1.0, 0.0};
    std::vector<double> yr = {0.0, 0.0};
    CHECK_THROWS_AS(upper_convex_envelope(xr, yr), std::invalid_argument); // unsorted
    std::vector<double> xn = {0.0, 1.0};
    std::vector<double> yn = {0.0, std::nan("")};
    CHECK_THROWS_AS(upper_convex_envelope(xn, yn), std::invalid_argument);
    std::vector<double> xs = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(upper_convex_envelope(xs, yr), std::invalid_argument); // size mismatch
    CHECK_THROWS_AS(envelope_value_at({}, 0.0), std::invalid_argument);
}
