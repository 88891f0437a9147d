#pragma once

#include "dirtymac/channel.hpp"
#include "dirtymac/lattice.hpp"
#include "dirtymac/rate_regions.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dirtymac {

// One preset per achievability construction: the two imbalanced corner
// schemes (user 1 helping user 2, in both power orderings), the exactly
// balanced scheme, and the two nearly balanced schemes (user 2 helping
// user 1, in both power orderings).
enum class PresetId { T1Case1, T1Case2, T2Balanced, T3Case1, T3Case2 };

const char* preset_name(PresetId id);
PresetId preset_from_name(std::string_view name); // throws std::invalid_argument

// Fully resolved scalar tuple + lattices instantiating one scheme.
struct SchemeConfig {
    PresetId preset = PresetId::T2Balanced;
    double alpha1 = 1.0, alpha2 = 1.0, alpha_r = 1.0; // encoder/decoder scalings
    double k1 = 1.0, k2 = 1.0, kr = 1.0;              // lattice scale factors
    double beta = 1.0, gamma = 1.0;                   // decoder dither weights
    ScalarLattice lattice1{1.0}, lattice2{1.0}, lattice_r{1.0};
    bool v1_active = true, v2_active = true;
    bool d2_zero = false;

    double signal_power = 0.0; // second moment of the message term in Y'
    // Second moment of the scaled message as it appears inside Y'
    // (equals signal_power except where V enters scaled).
    double signal_scale = 1.0;
};

// Resolves a preset at the given parameters: MMSE-optimal alphas, lattices
// sized to the proof's second-moment assignments, nesting invariants
// satisfied. Throws ConditionError / RegimeError naming the violated
// inequality when the parameters fall outside the preset's constructive case.
SchemeConfig build_preset(PresetId id, const ChannelParams& params);

// Analytic effective-noise power of the preset's equivalent channel.
double effective_noise_analytic(const SchemeConfig& config, const ChannelParams& params);

// Per-dimension sample arrays for one Monte Carlo batch.
struct SignalBatch {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> v1, v2;           // messages (zero when helper)
    std::vector<double> d1, d2;           // dithers
    std::vector<double> s1, s2;           // interference
    std::vector<double> s1_est, s2_est;   // estimated interference
    std::vector<double> z;                // channel noise
    std::vector<double> x1, x2;           // transmitted
    std::vector<double> y, y_prime;       // channel output, decoder front-end
};

// Sources only (V, D, S, S~, Z); X/Y left empty until encode/apply_channel.
SignalBatch generate_batch(const SchemeConfig& config, const ChannelParams& params,
                           std::size_t n, std::uint64_t seed);

// X_i = [V_i - alpha_i * S~_i + D_i] mod Lambda_i
void encode(const SchemeConfig& config, SignalBatch& batch);

// Y = X1 + X2 + S1 + S2 + Z, exact elementwise sum.
void apply_channel(SignalBatch& batch);

// Y' = [alpha_r * Y - gamma * D1 - beta * D2] mod Lambda_r
void decode_frontend(const SchemeConfig& config, SignalBatch& batch);

// The proof's simplified right-hand side for Y', evaluated directly from the
// sources; decode_frontend must match it to rounding error when the nesting
// holds.
std::vector<double> equivalent_channel(const SchemeConfig& config, const SignalBatch& batch);

// Effective-noise samples (the non-message terms of the equivalent channel,
// pre-modulo) and the message term as it appears in Y'.
std::vector<double> effective_noise_samples(const SchemeConfig& config,
                                            const SignalBatch& batch);
std::vector<double> signal_samples(const SchemeConfig& config, const SignalBatch& batch);

struct NoisePower {
    double measured = 0.0;
    double analytic = 0.0;
    double std_error = 0.0;
};

NoisePower effective_noise_power(const SchemeConfig& config, const ChannelParams& params,
                                 const SignalBatch& batch);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct SweepPoint {
    double q = 0.0;
    double measured_noise = 0.0;
    double std_error = 0.0;
    double rate_bound = 0.0; // bits/use from the measured SINR
};

struct SimReport {
    PresetId preset = PresetId::T2Balanced;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double measured_noise = 0.0;
    double analytic_noise = 0.0;
    double noise_std_error = 0.0;
    double equivalence_max_residual = 0.0;
    double empirical_sinr = 0.0;
    double analytic_sinr = 0.0;
    double scalar_rate_bound = 0.0; // (1/2) log2(analytic SINR) - shaping penalty
    double uniformity_pvalue = 0.0;
    double independence_stat = 0.0;
    double var_x1 = 0.0, var_x2 = 0.0;
    std::vector<SweepPoint> interference_sweep;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

struct ExperimentOptions {
    bool break_nesting = false;  // negative control: perturb lattice2 by 1%
    bool with_sweep = false;     // include the default 3-point Q sweep
};

SimReport run_experiment(PresetId id, const ChannelParams& params, std::size_t n,
                         std::uint64_t seed, const ExperimentOptions& opts = {});

// Full pipeline at each interference power Q; the effective-noise statistics
// must be indistinguishable across Q.
std::vector<SweepPoint> interference_sweep(PresetId id, const ChannelParams& params,
                                           const std::vector<double>& q_values,
                                           std::size_t n, std::uint64_t seed);

// Replaces the continuous message by a nested scalar codebook of M equally
// spaced points spanning the active user's cell and decodes by nearest point
// in modulo distance. Returns the symbol error rate. Requires exactly one
// active information user and M >= 2.
double nested_code_experiment(PresetId id, const ChannelParams& params, int codebook_size,
                              std::size_t n, std::uint64_t seed);

} // namespace dirtymac
