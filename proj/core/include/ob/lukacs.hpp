#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ob/grid.hpp"
#include "ob/reduction.hpp"

namespace ob {

struct GammaSpec {
    double shape = 1.0;
    double rate = 1.0;

    void validate() const;
};

/// n i.i.d. draws by the Marsaglia-Tsang squeeze method, deterministic in
/// the seed.
std::vector<double> sample_gamma(const GammaSpec& spec, std::size_t n, std::uint64_t seed);

struct UvSamples {
    std::vector<double> u;  // x + y
    std::vector<double> v;  // x / (x + y), in (0,1)
};

UvSamples transform_uv(std::span<const double> x, std::span<const double> y);

struct IndependenceResult {
    double dcor = 0.0;
    double pvalue = 1.0;
    std::size_t used = 0;          // points entering the O(n^2) statistic
    std::size_t permutations = 0;
    bool subsampled = false;
};

/// Distance-correlation statistic with a permutation p-value in (0, 1],
/// deterministic per seed. Inputs larger than subsample_cap are subsampled
/// (seeded) before the quadratic statistic. Needs >= 200 paired samples and
/// >= 199 permutations.
IndependenceResult independence_test(std::span<const double> u, std::span<const double> v,
                                     std::size_t permutations, std::uint64_t seed,
                                     std::size_t subsample_cap = 2000);

struct KdeOptions {
    enum class Scale { log_positive, plain };
    Scale scale = Scale::log_positive;
    double bandwidth_multiplier = 1.0;
    double mask_rel_threshold = 1e-6;  // points below threshold * peak are masked
};

/// Gaussian KDE with Silverman's bandwidth, returned as a log-density table.
/// Positive variables are estimated on the log scale (no boundary bias at 0);
/// variables on (0,1) use the plain scale. Needs >= 1000 samples.
GridFunction estimate_log_densities(std::span<const double> samples,
                                    const std::vector<double>& grid, const KdeOptions& opts = {});

/// The conversion the characterization proof runs on:
///   a = log fX, b = log fY, c(x) = log fU(x) - log x,
///   d(z) = log fV(z/(1+z)) via the monotone re-index z = v/(1-v).
/// logfV must be tabulated on a grid inside (0,1).
std::array<GridFunction, 4> build_abcd(const GridFunction& logfX, const GridFunction& logfY,
                                       const GridFunction& logfU, const GridFunction& logfV);

struct CharacterizeConfig {
    std::uint64_t seed = 0;
    std::size_t min_samples = 50'000;
    std::size_t permutations = 999;
    std::size_t subsample_cap = 2000;
    double reject_pvalue = 1e-3;
    double bandwidth_multiplier = 1.0;
    double window_lo = 0.02;  // central quantile window for the density grids
    double window_hi = 0.98;
    double grid_ratio = 1.0905077326652577;  // 2^(1/8)
    std::vector<int> ratio_shifts = {-8, -4, 4, 8};
    std::size_t v_grid_points = 129;
    FitMode fit_mode = FitMode::least_squares;  // KDE noise is diffuse, not adversarial
    double semiconstant_tol = 0.5;
    std::size_t min_pairs = 8;
};

struct GammaEstimate {
    double shape_x = 0.0;
    double shape_y = 0.0;
    double rate = 0.0;
    double independence_pvalue = 1.0;
    bool parameters_reported = false;
    IndependenceResult independence;
    RecoveryReport pipeline_report;
};

/// End-to-end Lukacs route: U/V transform, independence test, four KDEs,
/// table conversion, pipeline recovery, shapes kappa+1 and rate -lambda.
/// Refuses to report parameters when independence is rejected at
/// reject_pvalue (the characterization hypothesis fails).
GammaEstimate characterize(std::span<const double> x, std::span<const double> y,
                           const CharacterizeConfig& cfg = {});

/// Noiseless variant: exact closed-form log-densities instead of KDEs,
/// isolating the estimation error. Recovers the spec parameters exactly.
GammaEstimate characterize_closed_form(const GammaSpec& spec_x, const GammaSpec& spec_y,
                                       const CharacterizeConfig& cfg = {});

}  // namespace ob
