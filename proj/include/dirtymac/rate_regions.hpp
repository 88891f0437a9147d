#pragma once

#include "dirtymac/channel.hpp"
#include "dirtymac/envelope.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dirtymac {

// Parameter regimes of the doubly dirty MAC, split by the sign of
// residual - (sqrt(P1*P2) - min(P1, P2)). Boundary equality reports
// Imbalanced; ExactlyBalanced is the nearly balanced regime with P1 == P2.
enum class Regime { Imbalanced, NearlyBalanced, ExactlyBalanced };

const char* regime_name(Regime r);

// Requested operation does not apply in the parameters' regime.
class RegimeError : public std::runtime_error {
public:
    RegimeError(const std::string& what, double threshold)
            : std::runtime_error(what), threshold_(threshold) {}
    double threshold() const { return threshold_; }

private:
    double threshold_;
};

// Parameters fall outside the constructive power conditions of a proof case.
class ConditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double imbalance_threshold(const ChannelParams& params);
Regime classify_regime(const ChannelParams& params);

// Sum-rate of the imbalanced regime: (1/2) log2(1 + min(P1,P2)/residual).
double sum_rate_imbalanced(const ChannelParams& params);

// Values of the two time-sharing endpoints ((r1, 0) and (0, r2)); both carry
// the same piecewise value. Throws ConditionError when neither power
// condition of the constructive proof holds.
struct CornerPoints {
    double r1 = 0.0;
    double r2 = 0.0;
};
CornerPoints corner_points_imbalanced(const ChannelParams& params);

// Pre-envelope bracketed sum-rate of the exactly balanced regime:
// max(0, (1/2) log2(1/2 + p/residual)).
double raw_sum_rate_balanced(double p, double residual);

// Pre-envelope sum-rate of the general nearly balanced regime:
// max(0, (1/2) log2((p1+p2+residual) / (2*residual + (sqrt(p1)-sqrt(p2))^2))).
double raw_sum_rate_nearly(double p1, double p2, double residual);
double raw_sum_rate_nearly(const ChannelParams& params); // regime-checked

struct GridSpec {
    int points = 1025;
    bool log_spacing = false;
    double max_power = 0.0; // 0 = auto: max(2 * nominal power, 4 * residual)

    void validate() const; // throws std::invalid_argument if points < 16
};

struct EnvelopeResult {
    std::vector<EnvelopePoint> points;
    double value = 0.0; // enveloped sum-rate at the nominal power
};

// Upper convex envelope of raw_sum_rate_balanced over a power grid [0, pmax],
// evaluated at p.
EnvelopeResult sum_rate_exactly_balanced(double p, double residual,
                                         const GridSpec& grid = {});

// Envelope of raw_sum_rate_nearly along the proportional power path
// t -> (t*p1, t*p2) (x-coordinate: average power), evaluated at the nominal
// powers. Reduces to sum_rate_exactly_balanced when p1 == p2.
EnvelopeResult sum_rate_nearly_balanced(const ChannelParams& params,
                                        const GridSpec& grid = {});

// Full-side-information baseline: the matching Philosof-Zamir expression with
// E1 = E2 = 0 substituted, regime-dispatched through the same machinery.
double baseline_full_si(const ChannelParams& params, const GridSpec& grid = {});

// Point-to-point dirty-paper capacity with estimated side information:
// (1/2) log2(1 + px / (d + n)).
double gueguen_sayrac_capacity(double px, double d, double n);

enum class MmseKind { ImbalancedUser2, ImbalancedUser1, Balanced, GeneralNearly };

// Optimal MMSE scaling factor for each scheme family.
double mmse_alpha(MmseKind kind, const ChannelParams& params);

struct RateRegion {
    std::vector<std::pair<double, double>> vertices; // convex polygon, (r1, r2)
    Regime regime = Regime::Imbalanced;
    double sum_rate = 0.0; // bits per channel use
};

// Triangle (0,0), (C,0), (0,C) with C the regime's (enveloped where
// applicable) sum rate.
RateRegion region_boundary(const ChannelParams& params, const GridSpec& grid = {});

enum class Containment { Equal, AInsideB, BInsideA, Incomparable };

struct RegionComparison {
    Containment containment = Containment::Incomparable;
    double sum_rate_gap = 0.0; // |sum_rate(a) - sum_rate(b)|
};

RegionComparison compare_regions(const RateRegion& a, const RateRegion& b);

} // namespace dirtymac
