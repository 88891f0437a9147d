#include "dirtymac/mac_sim.hpp"

#include "dirtymac/kernels.hpp"
#include "dirtymac/rng.hpp"
#include "dirtymac/stats.hpp"

#include <cmath>
#include "dirtymac/strfmt.hpp"
#include <stdexcept>

namespace dirtymac {

namespace {

constexpr double kDefaultInterferenceFactor = 1e4;

double interference_power_or_default(const ChannelParams& params) {
    if (params.interference_power > 0.0)
        return params.interference_power;
    return kDefaultInterferenceFactor * std::max(params.p1, params.p2);
}

// Coefficients of the equivalent channel's effective noise:
// e = cx1 * X1 + cx2 * X2 + c * ((S1 - S~1) + (S2 - S~2) + Z)
struct NoiseCoeffs {
    double cx1 = 0.0;
    double cx2 = 0.0;
    double c = 0.0;
};

NoiseCoeffs noise_coeffs(const SchemeConfig& cfg) {
    switch (cfg.preset) {
    case PresetId::T1Case1:
        return {0.0, -(1.0 - cfg.alpha2), cfg.alpha2};
    case PresetId::T1Case2:
        return {-(1.0 - cfg.alpha1), 0.0, cfg.alpha1};
    case PresetId::T2Balanced:
        return {-(1.0 - cfg.alpha1), -(1.0 - cfg.alpha2), cfg.alpha1};
    case PresetId::T3Case1:
        return {-(1.0 - cfg.alpha1), -(cfg.alpha1 / cfg.alpha2) * (1.0 - cfg.alpha2),
                cfg.alpha1};
    case PresetId::T3Case2:
        return {-(cfg.alpha2 / cfg.alpha1) * (1.0 - cfg.alpha1), -(1.0 - cfg.alpha2),
                cfg.alpha2};
    }
    throw std::invalid_argument("noise_coeffs: unknown preset");
}

} // namespace

const char* preset_name(PresetId id) {
    switch (id) {
    case PresetId::T1Case1: return "T1-Case1";
    case PresetId::T1Case2: return "T1-Case2";
    case PresetId::T2Balanced: return "T2-Balanced";
    case PresetId::T3Case1: return "T3-Case1";
    case PresetId::T3Case2: return "T3-Case2";
    }
    return "unknown";
}

PresetId preset_from_name(std::string_view name) {
    if (name == "T1-Case1") return PresetId::T1Case1;
    if (name == "T1-Case2") return PresetId::T1Case2;
    if (name == "T2-Balanced") return PresetId::T2Balanced;
    if (name == "T3-Case1") return PresetId::T3Case1;
    if (name == "T3-Case2") return PresetId::T3Case2;
    throw std::invalid_argument(strfmt::format_msg("unknown preset '{}'", name));
}

SchemeConfig build_preset(PresetId id, const ChannelParams& params) {
    params.validate();
    double r = params.residual();
    double p1 = params.p1, p2 = params.p2;
    Regime regime = classify_regime(params);

    SchemeConfig cfg;
    cfg.preset = id;

    switch (id) {
    case PresetId::T1Case1: {
        if (regime != Regime::Imbalanced)
            throw RegimeError(strfmt::format_msg("T1-Case1 needs E1+E2+N <= sqrt(P1*P2)-min(P1,P2) "
                                          "({} > {})",
                                          r, imbalance_threshold(params)),
                              imbalance_threshold(params));
        double need = p2 * std::pow((p2 + r) / p2, 2.0);
        if (p1 < need * (1.0 - 1e-12))
            throw ConditionError(strfmt::format_msg(
                    "T1-Case1 needs P1 >= P2*((P2+N+E1+E2)/P2)^2 ({} < {})", p1, need));
        // MMSE optimum at the corner; power-limited beyond it so that
        // sigma2^2 = alpha2^2 * P1 never exceeds P2.
        double a2 = std::min(p2 / (p2 + r), std::sqrt(p2 / p1));
        cfg.alpha1 = 1.0;
        cfg.alpha2 = cfg.alpha_r = cfg.gamma = a2;
        cfg.beta = 1.0;
        cfg.k1 = 1.0;
        cfg.k2 = cfg.kr = a2;
        cfg.lattice1 = lattice_for_power(p1);
        cfg.lattice2 = ScalarLattice(a2 * cfg.lattice1.step());
        cfg.lattice_r = cfg.lattice2;
        cfg.v1_active = false;
        cfg.v2_active = true;
        cfg.signal_power = cfg.lattice2.second_moment();
        cfg.signal_scale = 1.0;
        break;
    }
    case PresetId::T1Case2: {
        if (regime != Regime::Imbalanced)
            throw RegimeError(strfmt::format_msg("T1-Case2 needs E1+E2+N <= sqrt(P1*P2)-min(P1,P2) "
                                          "({} > {})",
                                          r, imbalance_threshold(params)),
                              imbalance_threshold(params));
        double need = p1 * std::pow((p1 + r) / p1, 2.0);
        if (p2 < need * (1.0 - 1e-12))
            throw ConditionError(strfmt::format_msg(
                    "T1-Case2 needs P2 >= P1*((P1+N+E1+E2)/P1)^2 ({} < {})", p2, need));
        double a1 = std::min(p1 / (p1 + r), std::sqrt(p1 / p2));
        cfg.alpha1 = cfg.alpha_r = a1;
        cfg.alpha2 = 1.0;
        cfg.beta = 0.0;
        cfg.gamma = 1.0;
        cfg.k2 = 1.0;
        cfg.k1 = cfg.kr = a1;
        cfg.lattice2 = lattice_for_power(p2);
        cfg.lattice1 = ScalarLattice(a1 * cfg.lattice2.step());
        cfg.lattice_r = cfg.lattice1;
        cfg.v1_active = false;
        cfg.v2_active = true;
        cfg.d2_zero = true;
        // message enters Y' as alpha1 * V2, uniform over the cell of Lambda1
        cfg.signal_power = cfg.lattice1.second_moment();
        cfg.signal_scale = a1;
        break;
    }
    case PresetId::T2Balanced: {
        if (regime != Regime::ExactlyBalanced)
            throw RegimeError(strfmt::format_msg("T2-Balanced needs the exactly balanced regime "
                                          "(P1 == P2, got {} and {})",
                                          p1, p2),
                              imbalance_threshold(params));
        double p = 0.5 * (p1 + p2);
        double a = 2.0 * p / (2.0 * p + r);
        cfg.alpha1 = cfg.alpha2 = cfg.alpha_r = a;
        cfg.beta = cfg.gamma = 1.0;
        cfg.k1 = cfg.k2 = cfg.kr = 1.0;
        cfg.lattice1 = cfg.lattice2 = cfg.lattice_r = lattice_for_power(p);
        cfg.v1_active = cfg.v2_active = true;
        cfg.signal_power = p;
        cfg.signal_scale = 1.0;
        break;
    }
    case PresetId::T3Case1: {
        if (regime == Regime::Imbalanced)
            throw RegimeError(strfmt::format_msg("T3-Case1 needs E1+E2+N >= sqrt(P1*P2)-min(P1,P2) "
                                          "({} < {})",
                                          r, imbalance_threshold(params)),
                              imbalance_threshold(params));
        if (p1 > p2 * (1.0 + 1e-12))
            throw ConditionError(strfmt::format_msg("T3-Case1 needs P1 <= P2 ({} > {})", p1, p2));
        double cap = p1 * std::pow((p1 + r) / r, 2.0);
        if (p2 > cap * (1.0 + 1e-12))
            throw ConditionError(strfmt::format_msg(
                    "T3-Case1 needs P2 <= P1*((P1+N+E1+E2)/(N+E1+E2))^2 ({} > {})", p2, cap));
        double a1 = mmse_alpha(MmseKind::GeneralNearly, params);
        double ratio = std::sqrt(p1 / p2); // alpha1 / alpha2
        double a2 = a1 / ratio;
        cfg.alpha1 = cfg.alpha_r = a1;
        cfg.alpha2 = a2;
        cfg.beta = ratio;
        cfg.gamma = 1.0;
        cfg.k2 = 1.0;
        cfg.k1 = cfg.kr = ratio;
        cfg.lattice2 = lattice_for_power(p2);
        cfg.lattice1 = ScalarLattice(ratio * cfg.lattice2.step());
        cfg.lattice_r = cfg.lattice1;
        cfg.v1_active = true;
        cfg.v2_active = false;
        cfg.signal_power = cfg.lattice1.second_moment(); // = P1
        cfg.signal_scale = 1.0;
        break;
    }
    case PresetId::T3Case2: {
        if (regime == Regime::Imbalanced)
            throw RegimeError(strfmt::format_msg("T3-Case2 needs E1+E2+N >= sqrt(P1*P2)-min(P1,P2) "
                                          "({} < {})",
                                          r, imbalance_threshold(params)),
                              imbalance_threshold(params));
        if (p2 > p1 * (1.0 + 1e-12))
            throw ConditionError(strfmt::format_msg("T3-Case2 needs P2 <= P1 ({} > {})", p2, p1));
        double cap = p2 * std::pow((p2 + r) / r, 2.0);
        if (p1 > cap * (1.0 + 1e-12))
            throw ConditionError(strfmt::format_msg(
                    "T3-Case2 needs P1 <= P2*((P2+N+E1+E2)/(N+E1+E2))^2 ({} > {})", p1, cap));
        double a1 = mmse_alpha(MmseKind::GeneralNearly, params);
        double ratio = std::sqrt(p2 / p1); // alpha2 / alpha1
        double a2 = a1 * ratio;
        cfg.alpha1 = a1;
        cfg.alpha2 = cfg.alpha_r = a2;
        cfg.beta = 1.0;
        cfg.gamma = ratio;
        cfg.k1 = 1.0;
        cfg.k2 = cfg.kr = ratio;
        cfg.lattice1 = lattice_for_power(p1);
        cfg.lattice2 = ScalarLattice(ratio * cfg.lattice1.step());
        cfg.lattice_r = cfg.lattice2;
        cfg.v1_active = true;
        cfg.v2_active = false;
        // message enters Y' as (alpha2/alpha1) * V1, uniform over the cell of Lambda2
        cfg.signal_power = cfg.lattice2.second_moment(); // = P2
        cfg.signal_scale = ratio;
        break;
    }
    }
    return cfg;
}

double effective_noise_analytic(const SchemeConfig& config, const ChannelParams& params) {
    auto c = noise_coeffs(config);
    double s1 = config.lattice1.second_moment();
    double s2 = config.lattice2.second_moment();
    return c.cx1 * c.cx1 * s1 + c.cx2 * c.cx2 * s2 + c.c * c.c * params.residual();
}

SignalBatch generate_batch(const SchemeConfig& config, const ChannelParams& params,
                           std::size_t n, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("generate_batch: n must be >= 1");
    params.validate();
    SignalBatch b;
    b.n = n;
    b.seed = seed;

    auto fill_uniform_cell = [&](std::vector<double>& v, Role role, const ScalarLattice& lat,
                                 bool active) {
        v.assign(n, 0.0);
        if (!active)
            return;
        Substream s(seed, role);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = s.uniform_symmetric(lat.step());
    };
    auto fill_gaussian = [&](std::vector<double>& v, Role role, double variance) {
        v.assign(n, 0.0);
        if (variance == 0.0)
            return;
        Substream s(seed, role);
        double sigma = std::sqrt(variance);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = s.gaussian(sigma);
    };

    fill_uniform_cell(b.v1, Role::Message1, config.lattice1, config.v1_active);
    fill_uniform_cell(b.v2, Role::Message2, config.lattice2, config.v2_active);
    fill_uniform_cell(b.d1, Role::Dither1, config.lattice1, true);
    fill_uniform_cell(b.d2, Role::Dither2, config.lattice2, !config.d2_zero);

    double q = interference_power_or_default(params);
    fill_gaussian(b.s1, Role::Interference1, q);
    fill_gaussian(b.s2, Role::Interference2, q);
    fill_gaussian(b.z, Role::ChannelNoise, params.noise);

    // S~_i = S_i + W_i, W_i ~ N(0, E_i) independent of everything else
    std::vector<double> w;
    fill_gaussian(w, Role::EstimationError1, params.e1);
    b.s1_est = b.s1;
    kernels::axpy(1.0, w.data(), b.s1_est.data(), n);
    fill_gaussian(w, Role::EstimationError2, params.e2);
    b.s2_est = b.s2;
    kernels::axpy(1.0, w.data(), b.s2_est.data(), n);

    return b;
}

void encode(const SchemeConfig& config, SignalBatch& batch) {
    const std::size_t n = batch.n;
    std::vector<double> tmp(n);

    auto enc = [&](const std::vector<double>& v, double alpha, const std::vector<double>& s_est,
                   const std::vector<double>& d, const ScalarLattice& lat,
                   std::vector<double>& x) {
        tmp = v;
        kernels::axpy(-alpha, s_est.data(), tmp.data(), n);
        kernels::axpy(1.0, d.data(), tmp.data(), n);
        x.resize(n);
        kernels::mod_fold(tmp.data(), x.data(), n, lat.step());
    };

    enc(batch.v1, config.alpha1, batch.s1_est, batch.d1, config.lattice1, batch.x1);
    enc(batch.v2, config.alpha2, batch.s2_est, batch.d2, config.lattice2, batch.x2);
}

void apply_channel(SignalBatch& batch) {
    const std::size_t n = batch.n;
    if (batch.x1.size() != n || batch.x2.size() != n)
        throw std::invalid_argument("apply_channel: encode first");
    batch.y = batch.x1;
    kernels::axpy(1.0, batch.x2.data(), batch.y.data(), n);
    kernels::axpy(1.0, batch.s1.data(), batch.y.data(), n);
    kernels::axpy(1.0, batch.s2.data(), batch.y.data(), n);
    kernels::axpy(1.0, batch.z.data(), batch.y.data(), n);
}

void decode_frontend(const SchemeConfig& config, SignalBatch& batch) {
    const std::size_t n = batch.n;
    if (batch.y.size() != n)
        throw std::invalid_argument("decode_frontend: apply_channel first");
    std::vector<double> tmp(n);
    kernels::scale(config.alpha_r, batch.y.data(), tmp.data(), n);
    kernels::axpy(-config.gamma, batch.d1.data(), tmp.data(), n);
    kernels::axpy(-config.beta, batch.d2.data(), tmp.data(), n);
    batch.y_prime.resize(n);
    kernels::mod_fold(tmp.data(), batch.y_prime.data(), n, config.lattice_r.step());
}

std::vector<double> effective_noise_samples(const SchemeConfig& config,
                                            const SignalBatch& batch) {
    const std::size_t n = batch.n;
    if (batch.x1.size() != n || batch.x2.size() != n)
        throw std::invalid_argument("effective_noise_samples: encode first");
    auto c = noise_coeffs(config);
    std::vector<double> e(n, 0.0);
    if (c.cx1 != 0.0)
        kernels::axpy(c.cx1, batch.x1.data(), e.data(), n);
    if (c.cx2 != 0.0)
        kernels::axpy(c.cx2, batch.x2.data(), e.data(), n);
    kernels::axpy(c.c, batch.s1.data(), e.data(), n);
    kernels::axpy(-c.c, batch.s1_est.data(), e.data(), n);
    kernels::axpy(c.c, batch.s2.data(), e.data(), n);
    kernels::axpy(-c.c, batch.s2_est.data(), e.data(), n);
    kernels::axpy(c.c, batch.z.data(), e.data(), n);
    return e;
}

std::vector<double> signal_samples(const SchemeConfig& config, const SignalBatch& batch) {
    const std::size_t n = batch.n;
    std::vector<double> s(n, 0.0);
    switch (config.preset) {
    case PresetId::T1Case1:
        kernels::axpy(1.0, batch.v2.data(), s.data(), n);
        break;
    case PresetId::T1Case2:
        kernels::axpy(config.alpha1, batch.v2.data(), s.data(), n);
        break;
    case PresetId::T2Balanced:
        kernels::axpy(1.0, batch.v1.data(), s.data(), n);
        kernels::axpy(1.0, batch.v2.data(), s.data(), n);
        break;
    case PresetId::T3Case1:
        kernels::axpy(1.0, batch.v1.data(), s.data(), n);
        break;
    case PresetId::T3Case2:
        kernels::axpy(config.signal_scale, batch.v1.data(), s.data(), n);
        break;
    }
    return s;
}

std::vector<double> equivalent_channel(const SchemeConfig& config, const SignalBatch& batch) {
    auto pre = signal_samples(config, batch);
    auto e = effective_noise_samples(config, batch);
    kernels::axpy(1.0, e.data(), pre.data(), batch.n);
    std::vector<double> out(batch.n);
    kernels::mod_fold(pre.data(), out.data(), batch.n, config.lattice_r.step());
    return out;
}

NoisePower effective_noise_power(const SchemeConfig& config, const ChannelParams& params,
                                 const SignalBatch& batch) {
    auto e = effective_noise_samples(config, batch);
    auto est = stats::mean_square(e.data(), e.size());
    return {est.mean_square, effective_noise_analytic(config, params), est.std_error};
}

bool SimReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

namespace {

SchemeConfig config_for(PresetId id, const ChannelParams& params, bool break_nesting) {
    SchemeConfig cfg = build_preset(id, params);
    if (break_nesting)
        cfg.lattice2 = ScalarLattice(cfg.lattice2.step() * 1.01);
    return cfg;
}

struct PipelineResult {
    SignalBatch batch;
    double residual = 0.0;
    stats::PowerEstimate noise;
    stats::PowerEstimate signal;
};

PipelineResult run_pipeline(const SchemeConfig& cfg, const ChannelParams& params,
                            std::size_t n, std::uint64_t seed) {
    PipelineResult r;
    r.batch = generate_batch(cfg, params, n, seed);
    encode(cfg, r.batch);
    apply_channel(r.batch);
    decode_frontend(cfg, r.batch);
    auto predicted = equivalent_channel(cfg, r.batch);
    r.residual = kernels::max_abs_diff(r.batch.y_prime.data(), predicted.data(), n);
    auto e = effective_noise_samples(cfg, r.batch);
    r.noise = stats::mean_square(e.data(), n);
    // measure the message as it appears inside Y': folded into the cell of
    // Lambda_r (only T2's V1 + V2 actually leaves it)
    auto s = signal_samples(cfg, r.batch);
    std::vector<double> folded(n);
    kernels::mod_fold(s.data(), folded.data(), n, cfg.lattice_r.step());
    r.signal = stats::mean_square(folded.data(), n);
    return r;
}

} // namespace

SimReport run_experiment(PresetId id, const ChannelParams& params, std::size_t n,
                         std::uint64_t seed, const ExperimentOptions& opts) {
    SchemeConfig cfg = config_for(id, params, opts.break_nesting);
    auto pipe = run_pipeline(cfg, params, n, seed);
    const auto& batch = pipe.batch;

    SimReport rep;
    rep.preset = id;
    rep.n = n;
    rep.seed = seed;
    rep.measured_noise = pipe.noise.mean_square;
    rep.analytic_noise = effective_noise_analytic(cfg, params);
    rep.noise_std_error = pipe.noise.std_error;
    rep.equivalence_max_residual = pipe.residual;
    rep.empirical_sinr = pipe.signal.mean_square / pipe.noise.mean_square;
    rep.analytic_sinr = cfg.signal_power / rep.analytic_noise;
    rep.scalar_rate_bound = 0.5 * std::log2(rep.analytic_sinr) - shaping_penalty_bits();

    // crypto-lemma diagnostics on the active information user's transmit signal
    const bool user2 = cfg.v2_active;
    const auto& xa = user2 ? batch.x2 : batch.x1;
    const auto& va = user2 ? batch.v2 : batch.v1;
    const ScalarLattice& la = user2 ? cfg.lattice2 : cfg.lattice1;
    std::size_t m = std::min<std::size_t>(n, 100000);
    double stat = stats::chi_square_uniform_stat(xa.data(), m, -0.5 * la.step(),
                                                 0.5 * la.step(), 32);
    rep.uniformity_pvalue = stats::chi_square_pvalue(stat, 31);
    rep.independence_stat = std::fabs(stats::correlation(xa.data(), va.data(), n));

    rep.var_x1 = stats::sample_stats(batch.x1.data(), n).variance;
    rep.var_x2 = stats::sample_stats(batch.x2.data(), n).variance;

    auto add = [&](std::string name, bool passed, double value, double threshold) {
        rep.checks.push_back({std::move(name), passed, value, threshold});
    };
    double res_tol = 1e-9 * cfg.lattice_r.step();
    add("equivalence_residual", rep.equivalence_max_residual < res_tol,
        rep.equivalence_max_residual, res_tol);
    double noise_err = std::fabs(rep.measured_noise - rep.analytic_noise) / rep.analytic_noise;
    add("effective_noise_match", noise_err < 0.01, noise_err, 0.01);
    double sinr_err = std::fabs(rep.empirical_sinr - rep.analytic_sinr) / rep.analytic_sinr;
    add("sinr_match", sinr_err < 0.02, sinr_err, 0.02);
    add("dither_uniformity", rep.uniformity_pvalue >= 0.01, rep.uniformity_pvalue, 0.01);
    add("dither_independence", rep.independence_stat < 0.01, rep.independence_stat, 0.01);
    add("power_constraint_x1", rep.var_x1 <= params.p1 * 1.02, rep.var_x1, params.p1 * 1.02);
    add("power_constraint_x2", rep.var_x2 <= params.p2 * 1.02, rep.var_x2, params.p2 * 1.02);

    if (opts.with_sweep) {
        double base = std::max(params.p1, params.p2);
        rep.interference_sweep =
                interference_sweep(id, params, {1e2 * base, 1e4 * base, 1e6 * base}, n, seed);
    }
    return rep;
}

std::vector<SweepPoint> interference_sweep(PresetId id, const ChannelParams& params,
                                           const std::vector<double>& q_values, std::size_t n,
                                           std::uint64_t seed) {
    if (q_values.empty())
        throw std::invalid_argument("interference_sweep: q_values must be nonempty");
    SchemeConfig cfg = build_preset(id, params);
    std::vector<SweepPoint> out;
    out.reserve(q_values.size());
    for (double q : q_values) {
        if (!(q > 0.0))
            throw std::invalid_argument("interference_sweep: q values must be positive");
        ChannelParams p = params;
        p.interference_power = q;
        auto pipe = run_pipeline(cfg, p, n, seed);
        double bound = 0.5 * std::log2(pipe.signal.mean_square / pipe.noise.mean_square) -
                       shaping_penalty_bits();
        out.push_back({q, pipe.noise.mean_square, pipe.noise.std_error, bound});
    }
    return out;
}

double nested_code_experiment(PresetId id, const ChannelParams& params, int codebook_size,
                              std::size_t n, std::uint64_t seed) {
    if (codebook_size < 2)
        throw std::invalid_argument("nested_code_experiment: codebook size must be >= 2");
    SchemeConfig cfg = build_preset(id, params);
    if (cfg.v1_active == cfg.v2_active)
        throw std::invalid_argument(
                "nested_code_experiment: preset must have exactly one active information user");

    SignalBatch batch = generate_batch(cfg, params, n, seed);

    const bool user2 = cfg.v2_active;
    auto& v = user2 ? batch.v2 : batch.v1;
    const ScalarLattice& lat = user2 ? cfg.lattice2 : cfg.lattice1;
    const int m = codebook_size;

    // M equally spaced points spanning the active cell; index drawn from the
    // message substream so refinements share random numbers with coarser runs.
    std::vector<double> codebook(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        codebook[static_cast<std::size_t>(j)] =
                lat.step() * ((static_cast<double>(j) + 0.5) / m - 0.5);

    std::vector<int> sent(n);
    Substream msg(seed, user2 ? Role::Message2 : Role::Message1);
    for (std::size_t i = 0; i < n; ++i) {
        int j = static_cast<int>(msg.uniform01() * m);
        if (j >= m)
            j = m - 1;
        sent[i] = j;
        v[i] = codebook[static_cast<std::size_t>(j)];
    }

    encode(cfg, batch);
    apply_channel(batch);
    decode_frontend(cfg, batch);

    // nearest codebook point in modulo-Lambda_r distance, codebook scaled the
    // way the message appears in Y'
    std::vector<double> scaled(codebook.size());
    for (std::size_t j = 0; j < codebook.size(); ++j)
        scaled[j] = cfg.signal_scale * codebook[j];

    const ScalarLattice& lr = cfg.lattice_r;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = 0.0;
        int best_j = -1;
        for (int j = 0; j < m; ++j) {
            double diff = batch.y_prime[i] - scaled[static_cast<std::size_t>(j)];
            double q = std::ceil(diff / lr.step() - 0.5);
            double d = std::fabs(diff - lr.step() * q);
            if (best_j < 0 || d < best) {
                best = d;
                best_j = j;
            }
        }
        if (best_j != sent[i])
            ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(n);
}

} // namespace dirtymac
