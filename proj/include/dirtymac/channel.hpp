#pragma once

namespace dirtymac {

// Gaussian doubly dirty MAC parameters: per-user powers, receiver noise,
// per-user estimation distortions, and the interference power used only by
// the simulator (closed-form rates never read it).
struct ChannelParams {
    double p1 = 0.0;
    double p2 = 0.0;
    double noise = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double interference_power = 0.0; // 0 = simulator default (1e4 * max power)

    // e1 + e2 + noise: the aggregate the rate formulas see in every denominator.
    double residual() const { return e1 + e2 + noise; }

    // Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

} // namespace dirtymac
