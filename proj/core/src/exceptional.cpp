#include "ob/exceptional.hpp"

#include <algorithm>
#include <cmath>

#include "ob/grid.hpp"
#include "ob/rng.hpp"

namespace ob {

std::string to_string(IdealKind kind) {
    switch (kind) {
        case IdealKind::sparse_random: return "sparse_random";
        case IdealKind::finite: return "finite";
        case IdealKind::bounded: return "bounded";
        case IdealKind::countable_surrogate: return "countable_surrogate";
    }
    throw validation_error("unknown ideal kind");
}

IdealKind ideal_kind_from_string(const std::string& s) {
    if (s == "sparse_random") return IdealKind::sparse_random;
    if (s == "finite") return IdealKind::finite;
    if (s == "bounded") return IdealKind::bounded;
    if (s == "countable_surrogate") return IdealKind::countable_surrogate;
    throw validation_error("unknown ideal kind: " + s);
}

namespace {

void check_grid(const std::vector<double>& g, const char* name) {
    if (g.empty()) throw validation_error(std::string("mask: empty ") + name);
    if (g.front() <= 0.0) throw validation_error(std::string("mask: ") + name + " must be positive");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1]))
            throw validation_error(std::string("mask: ") + name + " must be strictly increasing");
}

}  // namespace

ExceptionalMask1D ExceptionalMask1D::none(std::vector<double> grid) {
    ExceptionalMask1D m;
    m.grid = std::move(grid);
    m.excluded.assign(m.grid.size(), 0);
    return m;
}

std::size_t ExceptionalMask1D::excluded_count() const {
    std::size_t n = 0;
    for (auto e : excluded) n += (e != 0);
    return n;
}

double ExceptionalMask1D::excluded_fraction() const {
    return excluded.empty() ? 0.0
                            : static_cast<double>(excluded_count()) /
                                  static_cast<double>(excluded.size());
}

void ExceptionalMask1D::validate() const {
    check_grid(grid, "grid");
    if (excluded.size() != grid.size()) throw validation_error("mask: flag length mismatch");
}

ExceptionalMask2D ExceptionalMask2D::none() { return ExceptionalMask2D{}; }

std::size_t ExceptionalMask2D::excluded_count() const {
    std::size_t n = 0;
    for (auto e : excluded) n += (e != 0);
    return n;
}

double ExceptionalMask2D::excluded_fraction() const {
    return excluded.empty() ? 0.0
                            : static_cast<double>(excluded_count()) /
                                  static_cast<double>(excluded.size());
}

void ExceptionalMask2D::validate() const {
    check_grid(x_grid, "x_grid");
    check_grid(y_grid, "y_grid");
    if (excluded.size() != x_grid.size() * y_grid.size())
        throw validation_error("mask: flag length mismatch");
}

namespace {

void check_fraction(double fraction, double cap) {
    if (!(fraction >= 0.0) || fraction >= 0.5)
        throw validation_error("mask fraction must lie in [0, 0.5)");
    if (fraction > cap)
        throw validation_error("mask fraction exceeds the configured cap");
}

}  // namespace

ExceptionalMask2D generate_sparse_mask_2d(std::vector<double> x_grid, std::vector<double> y_grid,
                                          double fraction, std::uint64_t seed, double cap) {
    check_grid(x_grid, "x_grid");
    check_grid(y_grid, "y_grid");
    check_fraction(fraction, cap);
    ExceptionalMask2D m;
    m.x_grid = std::move(x_grid);
    m.y_grid = std::move(y_grid);
    m.kind = IdealKind::sparse_random;
    m.seed = seed;
    m.fraction = fraction;
    m.excluded.assign(m.x_grid.size() * m.y_grid.size(), 0);
    Rng rng(seed);
    for (auto& flag : m.excluded) flag = (rng.uniform() < fraction) ? 1 : 0;
    return m;
}

ExceptionalMask1D generate_sparse_mask_1d(std::vector<double> grid, double fraction,
                                          std::uint64_t seed, double cap) {
    check_grid(grid, "grid");
    check_fraction(fraction, cap);
    ExceptionalMask1D m;
    m.grid = std::move(grid);
    m.kind = IdealKind::sparse_random;
    m.seed = seed;
    m.fraction = fraction;
    m.excluded.assign(m.grid.size(), 0);
    Rng rng(seed);
    for (auto& flag : m.excluded) flag = (rng.uniform() < fraction) ? 1 : 0;
    return m;
}

ExceptionalMask2D scale_mask(const ExceptionalMask2D& mask, double r, double rel_tol) {
    if (!(r > 0.0)) throw validation_error("scale_mask: r must be positive");
    mask.validate();
    ExceptionalMask2D out = mask;
    std::fill(out.excluded.begin(), out.excluded.end(), 0);
    const std::size_t ny = mask.y_grid.size();
    for (std::size_t i = 0; i < mask.x_grid.size(); ++i) {
        const auto pi = find_grid_index(mask.x_grid, r * mask.x_grid[i], rel_tol);
        if (!pi) continue;
        for (std::size_t j = 0; j < ny; ++j) {
            const auto pj = find_grid_index(mask.y_grid, r * mask.y_grid[j], rel_tol);
            if (!pj) continue;
            if (mask.excluded[*pi * ny + *pj]) out.excluded[i * ny + j] = 1;
        }
    }
    return out;
}

std::vector<std::array<double, 2>> unimodular_image(const ExceptionalMask2D& mask,
                                                    Unimodular which) {
    std::vector<std::array<double, 2>> out;
    if (mask.empty()) return out;
    mask.validate();
    const std::size_t ny = mask.y_grid.size();
    out.reserve(mask.excluded_count());
    for (std::size_t i = 0; i < mask.x_grid.size(); ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            if (!mask.excluded[i * ny + j]) continue;
            const double x = mask.x_grid[i], y = mask.y_grid[j];
            switch (which) {
                case Unimodular::T1: out.push_back({y, x}); break;
                case Unimodular::T2: out.push_back({x + y, -y}); break;
                case Unimodular::T3: out.push_back({-x - y, x}); break;
            }
        }
    }
    return out;
}

namespace {

bool contains_point(const std::vector<double>& set, double x, double rel_tol) {
    for (double s : set)
        if (std::abs(s - x) <= rel_tol * std::max({1.0, std::abs(s), std::abs(x)})) return true;
    return false;
}

bool is_member(const std::vector<double>& set, IdealKind kind, const IdealCheckOptions& opts) {
    switch (kind) {
        case IdealKind::sparse_random:
            return opts.working_grid.empty() ||
                   static_cast<double>(set.size()) <=
                       opts.cap * static_cast<double>(opts.working_grid.size()) + 1e-12;
        case IdealKind::finite:
            return true;  // every tabulated set is finite
        case IdealKind::bounded: {
            for (double x : set)
                if (std::abs(x) > opts.bound) return false;
            return true;
        }
        case IdealKind::countable_surrogate:
            return true;
    }
    return false;
}

std::vector<double> set_union(const std::vector<std::vector<double>>& sets) {
    std::vector<double> u;
    for (const auto& s : sets) u.insert(u.end(), s.begin(), s.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

}  // namespace

IdealCheckReport ideal_axiom_check(const std::vector<std::vector<double>>& sets, IdealKind kind,
                                   const IdealCheckOptions& opts) {
    IdealCheckReport report;
    if (sets.empty()) {
        report.violations.push_back("no sets given");
        report.union_closed = report.hereditary = report.affine_closed = false;
        return report;
    }

    for (std::size_t k = 0; k < sets.size(); ++k)
        if (!is_member(sets[k], kind, opts))
            report.violations.push_back("set " + std::to_string(k) +
                                        " is not a member of the declared kind");

    const std::vector<double> u = set_union(sets);
    if (!is_member(u, kind, opts)) {
        report.union_closed = false;
        report.violations.push_back("finite union leaves the ideal");
    }

    for (std::size_t k = 0; k < sets.size(); ++k) {
        std::vector<double> half, alternate;
        for (std::size_t i = 0; i < sets[k].size(); ++i) {
            if (i < sets[k].size() / 2) half.push_back(sets[k][i]);
            if (i % 2 == 0) alternate.push_back(sets[k][i]);
        }
        if (!is_member(half, kind, opts) || !is_member(alternate, kind, opts)) {
            report.hereditary = false;
            report.violations.push_back("subset of set " + std::to_string(k) +
                                        " leaves the ideal");
        }
    }

    for (const auto& ab : opts.affine_samples) {
        if (ab[0] == 0.0) continue;  // affine maps of the line require alpha != 0
        for (std::size_t k = 0; k < sets.size(); ++k) {
            std::vector<double> image(sets[k].size());
            for (std::size_t i = 0; i < sets[k].size(); ++i) image[i] = ab[0] * sets[k][i] + ab[1];
            if (!is_member(image, kind, opts)) {
                report.affine_closed = false;
                report.violations.push_back("affine image of set " + std::to_string(k) +
                                            " leaves the ideal");
            }
        }
    }

    if (!opts.working_grid.empty()) {
        bool covered = true;
        for (double g : opts.working_grid) {
            if (!contains_point(u, g, opts.match_rel_tol)) {
                covered = false;
                break;
            }
        }
        if (covered) {
            report.proper = false;
            report.violations.push_back("union covers the working grid: ideal is not proper");
        }
    }
    return report;
}

bool fubini_section_ok(const ExceptionalMask2D& mask, double cap) {
    if (mask.empty()) return true;
    mask.validate();
    const std::size_t ny = mask.y_grid.size();
    const double sigma = std::sqrt(cap * (1.0 - cap) / static_cast<double>(ny));
    const double column_threshold = cap + 3.0 * sigma;
    std::size_t bad_columns = 0;
    for (std::size_t i = 0; i < mask.x_grid.size(); ++i) {
        std::size_t row_count = 0;
        for (std::size_t j = 0; j < ny; ++j) row_count += (mask.excluded[i * ny + j] != 0);
        const double row_fraction = static_cast<double>(row_count) / static_cast<double>(ny);
        if (row_fraction > column_threshold) ++bad_columns;
    }
    return static_cast<double>(bad_columns) <= cap * static_cast<double>(mask.x_grid.size());
}

}  // namespace ob
