#include "dirtymac/rate_regions.hpp"

#include <algorithm>
#include <cmath>
#include "dirtymac/strfmt.hpp"
#include <stdexcept>

namespace dirtymac {

namespace {

double half_log2(double x) {
    return 0.5 * std::log2(x);
}

// Additive slack so parameter sets constructed to sit exactly on the regime
// boundary (every T1 corner does) classify deterministically under rounding.
double boundary_tol(double residual, double threshold) {
    return 1e-12 * std::max({residual, threshold, 1.0});
}

} // namespace

void ChannelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p1) || !finite(p2) || !finite(noise) || !finite(e1) || !finite(e2) ||
        !finite(interference_power))
        throw std::invalid_argument("ChannelParams: non-finite field");
    if (p1 <= 0.0 || p2 <= 0.0 || noise <= 0.0)
        throw std::invalid_argument("ChannelParams: p1, p2 and noise must be positive");
    if (e1 < 0.0 || e2 < 0.0)
        throw std::invalid_argument("ChannelParams: e1 and e2 must be nonnegative");
    if (interference_power < 0.0)
        throw std::invalid_argument("ChannelParams: interference_power must be nonnegative");
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::Imbalanced: return "Imbalanced";
    case Regime::NearlyBalanced: return "NearlyBalanced";
    case Regime::ExactlyBalanced: return "ExactlyBalanced";
    }
    return "unknown";
}

double imbalance_threshold(const ChannelParams& params) {
    return std::sqrt(params.p1 * params.p2) - std::min(params.p1, params.p2);
}

Regime classify_regime(const ChannelParams& params) {
    params.validate();
    double thr = imbalance_threshold(params);
    double r = params.residual();
    if (r <= thr + boundary_tol(r, thr))
        return Regime::Imbalanced;
    if (std::fabs(params.p1 - params.p2) <= 1e-9 * std::max(params.p1, params.p2))
        return Regime::ExactlyBalanced;
    return Regime::NearlyBalanced;
}

double sum_rate_imbalanced(const ChannelParams& params) {
    if (classify_regime(params) != Regime::Imbalanced)
        throw RegimeError(
                strfmt::format_msg("sum_rate_imbalanced: residual {} exceeds threshold {}",
                            params.residual(), imbalance_threshold(params)),
                imbalance_threshold(params));
    return half_log2(1.0 + std::min(params.p1, params.p2) / params.residual());
}

CornerPoints corner_points_imbalanced(const ChannelParams& params) {
    double value = 0.0;
    double r = params.residual();
    if (classify_regime(params) != Regime::Imbalanced)
        throw RegimeError("corner_points_imbalanced: not in the imbalanced regime",
                          imbalance_threshold(params));
    double slack1 = 1e-12 * params.p2; // boundary equality counts as satisfied
    double slack2 = 1e-12 * params.p1;
    double need_p2 = params.p1 * std::pow((params.p1 + r) / params.p1, 2.0);
    double need_p1 = params.p2 * std::pow((params.p2 + r) / params.p2, 2.0);
    if (params.p2 + slack1 >= need_p2) {
        value = half_log2(1.0 + params.p1 / r);
    } else if (params.p1 + slack2 >= need_p1) {
        value = half_log2(1.0 + params.p2 / r);
    } else {
        throw ConditionError(strfmt::format_msg(
                "corner_points_imbalanced: neither power condition holds "
                "(need p2 >= {} or p1 >= {})",
                need_p2, need_p1));
    }
    return {value, value};
}

double raw_sum_rate_balanced(double p, double residual) {
    if (!(p > 0.0) && p != 0.0)
        throw std::invalid_argument("raw_sum_rate_balanced: p must be nonnegative");
    if (!(residual > 0.0))
        throw std::invalid_argument("raw_sum_rate_balanced: residual must be positive");
    return std::max(0.0, half_log2(0.5 + p / residual));
}

double raw_sum_rate_nearly(double p1, double p2, double residual) {
    if (p1 < 0.0 || p2 < 0.0 || !(residual > 0.0))
        throw std::invalid_argument("raw_sum_rate_nearly: bad arguments");
    double d = std::sqrt(p1) - std::sqrt(p2);
    double num = p1 + p2 + residual;
    double den = 2.0 * residual + d * d;
    return std::max(0.0, half_log2(num / den));
}

double raw_sum_rate_nearly(const ChannelParams& params) {
    if (classify_regime(params) == Regime::Imbalanced)
        throw RegimeError("raw_sum_rate_nearly: parameters are in the imbalanced regime",
                          imbalance_threshold(params));
    return raw_sum_rate_nearly(params.p1, params.p2, params.residual());
}

void GridSpec::validate() const {
    if (points < 16)
        throw std::invalid_argument("GridSpec: need at least 16 grid points");
    if (max_power < 0.0 || !std::isfinite(max_power))
        throw std::invalid_argument("GridSpec: bad max_power");
}

namespace {

std::vector<double> power_grid(double pmax, const GridSpec& grid) {
    std::vector<double> xs(static_cast<std::size_t>(grid.points));
    auto n = xs.size();
    if (grid.log_spacing) {
        // keep zero as the first point so time-sharing with silence is in the hull
        xs[0] = 0.0;
        double lo = pmax * 1e-6;
        double ratio = std::log(pmax / lo);
        for (std::size_t i = 1; i < n; ++i)
            xs[i] = lo * std::exp(ratio * static_cast<double>(i - 1) /
                                  static_cast<double>(n - 2));
        xs.back() = pmax;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = pmax * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return xs;
}

EnvelopeResult envelope_of(const std::vector<double>& xs, const std::vector<double>& ys,
                           double at) {
    EnvelopeResult res;
    res.points = upper_convex_envelope(xs, ys);
    res.value = envelope_value_at(res.points, at);
    return res;
}

} // namespace

EnvelopeResult sum_rate_exactly_balanced(double p, double residual, const GridSpec& grid) {
    grid.validate();
    if (!(p > 0.0) || !(residual > 0.0))
        throw std::invalid_argument("sum_rate_exactly_balanced: p and residual must be positive");
    double pmax = grid.max_power > 0.0 ? grid.max_power
                                       : std::max(2.0 * p, 4.0 * residual);
    if (p > pmax)
        throw std::invalid_argument("sum_rate_exactly_balanced: p outside grid range");
    auto xs = power_grid(pmax, grid);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] = raw_sum_rate_balanced(xs[i], residual);
    return envelope_of(xs, ys, p);
}

EnvelopeResult sum_rate_nearly_balanced(const ChannelParams& params, const GridSpec& grid) {
    grid.validate();
    if (classify_regime(params) == Regime::Imbalanced)
        throw RegimeError("sum_rate_nearly_balanced: parameters are in the imbalanced regime",
                          imbalance_threshold(params));
    double r = params.residual();
    double pavg = 0.5 * (params.p1 + params.p2);
    double xmax = grid.max_power > 0.0 ? grid.max_power : std::max(2.0 * pavg, 4.0 * r);
    // Cap the path where Eq-43-style scaling would leave the nearly balanced
    // regime: t * (sqrt(p1 p2) - min) <= residual.
    double thr = imbalance_threshold(params);
    if (thr > 0.0) {
        double tcap = r / thr;
        xmax = std::min(xmax, std::max(pavg, tcap * pavg));
    }
    auto xs = power_grid(xmax, grid);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double t = xs[i] / pavg;
        ys[i] = raw_sum_rate_nearly(t * params.p1, t * params.p2, r);
    }
    return envelope_of(xs, ys, pavg);
}

double baseline_full_si(const ChannelParams& params, const GridSpec& grid) {
    ChannelParams full = params;
    full.e1 = 0.0;
    full.e2 = 0.0;
    switch (classify_regime(full)) {
    case Regime::Imbalanced:
        return sum_rate_imbalanced(full);
    case Regime::ExactlyBalanced:
        return sum_rate_exactly_balanced(0.5 * (full.p1 + full.p2), full.noise, grid).value;
    case Regime::NearlyBalanced:
        return sum_rate_nearly_balanced(full, grid).value;
    }
    throw std::logic_error("baseline_full_si: unreachable");
}

double gueguen_sayrac_capacity(double px, double d, double n) {
    if (!(px > 0.0) || !(n > 0.0) || d < 0.0)
        throw std::invalid_argument("gueguen_sayrac_capacity: need px, n > 0 and d >= 0");
    return half_log2(1.0 + px / (d + n));
}

double mmse_alpha(MmseKind kind, const ChannelParams& params) {
    params.validate();
    double r = params.residual();
    switch (kind) {
    case MmseKind::ImbalancedUser2:
        return params.p2 / (params.p2 + r);
    case MmseKind::ImbalancedUser1:
        return params.p1 / (params.p1 + r);
    case MmseKind::Balanced: {
        double p = 0.5 * (params.p1 + params.p2);
        return 2.0 * p / (2.0 * p + r);
    }
    case MmseKind::GeneralNearly: {
        double s1 = std::sqrt(params.p1);
        double s2 = std::sqrt(params.p2);
        return s1 * (s1 + s2) / (params.p1 + params.p2 + r);
    }
    }
    throw std::invalid_argument("mmse_alpha: unknown kind");
}

RateRegion region_boundary(const ChannelParams& params, const GridSpec& grid) {
    Regime regime = classify_regime(params);
    double c = 0.0;
    switch (regime) {
    case Regime::Imbalanced:
        c = sum_rate_imbalanced(params);
        break;
    case Regime::ExactlyBalanced:
        c = sum_rate_exactly_balanced(0.5 * (params.p1 + params.p2), params.residual(), grid)
                    .value;
        break;
    case Regime::NearlyBalanced:
        c = sum_rate_nearly_balanced(params, grid).value;
        break;
    }
    RateRegion region;
    region.regime = regime;
    region.sum_rate = c;
    region.vertices = {{0.0, 0.0}, {c, 0.0}, {0.0, c}};
    return region;
}

namespace {

// Point-in-convex-polygon with tolerance; vertices in counterclockwise order.
bool inside(const RateRegion& region, double px, double py, double tol) {
    const auto& v = region.vertices;
    if (v.size() < 3)
        return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto [ax, ay] = v[i];
        auto [bx, by] = v[(i + 1) % v.size()];
        double cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
        if (cross < -tol)
            return false;
    }
    return true;
}

bool contains(const RateRegion& outer, const RateRegion& inner, double tol) {
    for (auto [x, y] : inner.vertices)
        if (!inside(outer, x, y, tol))
            return false;
    return true;
}

} // namespace

RegionComparison compare_regions(const RateRegion& a, const RateRegion& b) {
    double scale = std::max({a.sum_rate, b.sum_rate, 1e-12});
    double tol = 1e-9 * scale;
    bool ab = contains(b, a, tol);
    bool ba = contains(a, b, tol);
    RegionComparison cmp;
    cmp.sum_rate_gap = std::fabs(a.sum_rate - b.sum_rate);
    if (ab && ba)
        cmp.containment = Containment::Equal;
    else if (ab)
        cmp.containment = Containment::AInsideB;
    else if (ba)
        cmp.containment = Containment::BInsideA;
    else
        cmp.containment = Containment::Incomparable;
    return cmp;
}

} // namespace dirtymac
