#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ob/errors.hpp"

namespace ob {

/// Desk-scale stand-ins for the ideals the equation may fail on.
enum class IdealKind { sparse_random, finite, bounded, countable_surrogate };

std::string to_string(IdealKind kind);
IdealKind ideal_kind_from_string(const std::string& s);

struct ExceptionalMask1D {
    std::vector<double> grid;
    std::vector<std::uint8_t> excluded;
    IdealKind kind = IdealKind::sparse_random;
    std::uint64_t seed = 0;
    double fraction = 0.0;

    static ExceptionalMask1D none(std::vector<double> grid = {});
    bool empty() const { return grid.empty(); }
    bool is_excluded(std::size_t i) const { return !empty() && excluded[i] != 0; }
    std::size_t excluded_count() const;
    double excluded_fraction() const;
    void validate() const;
};

struct ExceptionalMask2D {
    std::vector<double> x_grid;
    std::vector<double> y_grid;
    std::vector<std::uint8_t> excluded;  // row-major: index i*y_grid.size() + j
    IdealKind kind = IdealKind::sparse_random;
    std::uint64_t seed = 0;
    double fraction = 0.0;

    static ExceptionalMask2D none();
    bool empty() const { return x_grid.empty(); }
    bool is_excluded(std::size_t i, std::size_t j) const {
        return !empty() && excluded[i * y_grid.size() + j] != 0;
    }
    std::size_t excluded_count() const;
    double excluded_fraction() const;
    void validate() const;
};

/// Bernoulli(fraction) exclusion per grid pair, deterministic in the seed.
/// fraction must lie in [0, 0.5) (the robust fits downstream break at 0.5)
/// and within the configured cap (default 0.2).
ExceptionalMask2D generate_sparse_mask_2d(std::vector<double> x_grid, std::vector<double> y_grid,
                                          double fraction, std::uint64_t seed, double cap = 0.2);

/// 1-D analogue, used to corrupt single tables.
ExceptionalMask1D generate_sparse_mask_1d(std::vector<double> grid, double fraction,
                                          std::uint64_t seed, double cap = 0.2);

/// The set (1/r)M on the same grids: output point (x, y) is excluded iff
/// (r*x, r*y) snaps onto an excluded input point. Off-grid images drop out.
ExceptionalMask2D scale_mask(const ExceptionalMask2D& mask, double r, double rel_tol = 1e-9);

/// The unimodular maps that suffice for the invariance hypothesis:
/// T1(x,y) = (y,x), T2(x,y) = (x+y,-y), T3(x,y) = (-x-y,x).
enum class Unimodular { T1, T2, T3 };

/// Exact image of the excluded point set (no snapping); cardinality preserved.
std::vector<std::array<double, 2>> unimodular_image(const ExceptionalMask2D& mask,
                                                    Unimodular which);

struct IdealCheckOptions {
    std::vector<double> working_grid;  // properness is "does not cover this"
    double cap = 0.2;                  // sparse_random size bound, as a grid fraction
    double bound = 1e9;                // bounded-kind working bound
    std::vector<std::array<double, 2>> affine_samples = {{3.0, 0.5}, {-2.0, 1.0}, {0.5, -0.25}};
    double match_rel_tol = 1e-12;
};

struct IdealCheckReport {
    bool union_closed = true;
    bool hereditary = true;
    bool affine_closed = true;
    bool proper = true;
    std::vector<std::string> violations;

    bool all_ok() const { return union_closed && hereditary && affine_closed && proper; }
};

/// Verifies the ideal axioms on the given 1-D point sets: closure of the
/// membership surrogate under finite unions, subsets and affine images
/// alpha*A + beta, plus properness (the union leaves some working-grid point
/// uncovered). Violations are reported, never thrown.
IdealCheckReport ideal_axiom_check(const std::vector<std::vector<double>>& sets, IdealKind kind,
                                   const IdealCheckOptions& opts);

/// Fubini-style section property: the fraction of x-columns whose
/// excluded-row fraction exceeds cap + 3*sigma(cap) is itself <= cap.
bool fubini_section_ok(const ExceptionalMask2D& mask, double cap = 0.2);

}  // namespace ob
