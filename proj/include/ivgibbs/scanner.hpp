#pragma once

/// \file scanner.hpp
/// \brief Parameter sweeps over (J, Jp, T), phase classification and
/// text emitters for the CLI.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivgibbs/fixpoint.hpp"
#include "ivgibbs/model.hpp"

namespace ivgibbs {

/// Closed range sampled at `steps` evenly spaced points (steps == 1 -> min).
struct ParameterRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    static ParameterRange single(double v) { return {v, v, 1}; }
    /// Parses "min:max:steps" or a single number. Throws std::invalid_argument.
    static ParameterRange parse(std::string_view text);

    std::vector<double> values() const;
};

struct GridSpec {
    ParameterRange J;
    ParameterRange Jp;
    ParameterRange T;

    /// Throws std::invalid_argument on steps < 1, min > max or non-finite bounds.
    void validate() const;
};

struct PhasePoint {
    double J = 0.0;
    double Jp = 0.0;
    double T = 0.0;
    double c = 0.0;
    double d = 0.0;
    int root_count = 0;
    std::vector<double> roots;
    std::vector<Stability> stabilities;
    std::optional<double> eta1;
    std::optional<double> eta2;
    Regime regime = Regime::unique;
    bool phase_transition = false;
    /// One residual per root when consistency checking was requested.
    std::vector<double> consistency_residuals;
    /// Non-empty when this point failed numerically.
    std::string error;
};

struct ScanOptions {
    int workers = 1;
    bool check_consistency = false;
};

struct ScanResult {
    std::vector<PhasePoint> points;
    /// e.g. dropped T = 0 cells
    std::vector<std::string> warnings;
};

/// Analysis of one parameter point; never throws for numerical trouble.
PhasePoint analyze_point(double J, double Jp, double T, bool check_consistency = false);

/// J-major, then Jp, then T. Output order is independent of `workers`.
ScanResult scan_grid(const GridSpec& spec, const ScanOptions& options = {});

/// 12 significant digits, as used in all text output.
std::string format_number(double v);

/// RFC-4180 field quoting (only when needed).
std::string csv_quote(std::string_view field);

std::string emit_csv(const std::vector<PhasePoint>& points, bool with_consistency = false);

/// One JSON object per line.
std::string emit_jsonl(const std::vector<PhasePoint>& points);

struct CurveRow {
    double x;
    double g;
    double excess;  ///< g(x) - x
};

struct CurveTable {
    std::vector<CurveRow> rows;
    std::vector<FixedPoint> fixed_points;
};

inline constexpr double kCurveDefaultMin = 1e-4;
inline constexpr double kCurveDefaultMax = 1e4;
inline constexpr int kCurveDefaultSamples = 400;

/// Log-uniform samples of g over [x_min, x_max] plus the fixed points.
CurveTable emit_curve(const CouplingParameters& params, double x_min = kCurveDefaultMin,
                      double x_max = kCurveDefaultMax, int samples = kCurveDefaultSamples);

/// Header `x,g,g_minus_x,kind`; samples first, then `fixed_point:<stability>` rows.
std::string curve_to_csv(const CurveTable& table);

}  // namespace ivgibbs
