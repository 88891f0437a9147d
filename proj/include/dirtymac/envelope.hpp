#pragma once

#include <span>
#include <vector>

namespace dirtymac {

struct EnvelopePoint {
    double x = 0.0;
    double raw = 0.0;       // sampled function value
    double enveloped = 0.0; // least concave majorant at x
};

// Least concave majorant (upper boundary of the convex hull) of the sampled
// graph, evaluated at every input x. Requires >= 2 samples with strictly
// increasing x; throws std::invalid_argument otherwise.
std::vector<EnvelopePoint> upper_convex_envelope(std::span<const double> x,
                                                 std::span<const double> y);

// Piecewise-linear interpolation of the enveloped values; clamps outside the
// sampled range.
double envelope_value_at(const std::vector<EnvelopePoint>& env, double x);

} // namespace dirtymac
