#include "dirtymac/envelope.hpp"

#include <cmath>
#include <stdexcept>

namespace dirtymac {

std::vector<EnvelopePoint> upper_convex_envelope(std::span<const double> x,
                                                 std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("upper_convex_envelope: size mismatch");
    if (x.size() < 2)
        throw std::invalid_argument("upper_convex_envelope: need at least 2 samples");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw std::invalid_argument("upper_convex_envelope: non-finite sample");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::invalid_argument("upper_convex_envelope: x must be strictly increasing");
    }

    // Monotone chain, upper hull only: keep right turns (cross <= 0 pops).
    std::vector<std::size_t> hull;
    hull.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2];
            std::size_t b = hull[hull.size() - 1];
            double cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    std::vector<EnvelopePoint> out(x.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (seg + 1 < hull.size() && x[hull[seg + 1]] < x[i])
            ++seg;
        double v;
        if (seg + 1 < hull.size()) {
            std::size_t a = hull[seg];
            std::size_t b = hull[seg + 1];
            double t = (x[i] - x[a]) / (x[b] - x[a]);
            v = y[a] + t * (y[b] - y[a]);
        } else {
            v = y[hull.back()];
        }
        if (v < y[i]) // hull dominates by construction; guard rounding
            v = y[i];
        out[i] = {x[i], y[i], v};
    }
    return out;
}

double envelope_value_at(const std::vector<EnvelopePoint>& env, double x) {
    if (env.empty())
        throw std::invalid_argument("envelope_value_at: empty envelope");
    if (x <= env.front().x)
        return env.front().enveloped;
    if (x >= env.back().x)
        return env.back().enveloped;
    std::size_t lo = 0, hi = env.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (env[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    double t = (x - env[lo].x) / (env[hi].x - env[lo].x);
    return env[lo].enveloped + t * (env[hi].enveloped - env[lo].enveloped);
}

} // namespace dirtymac
