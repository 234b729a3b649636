#include "ivgibbs/scanner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "ivgibbs/oracle.hpp"
#include "ivgibbs/recurrence.hpp"

namespace ivgibbs {

namespace {

double parse_double(std::string_view text, std::string_view what)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

struct Cell {
    double J, Jp, T;
};

}  // namespace

ParameterRange ParameterRange::parse(std::string_view text)
{
    const auto first = text.find(':');
    if (first == std::string_view::npos)
        return single(parse_double(text, "value"));
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw std::invalid_argument("range must look like min:max:steps, got '" + std::string(text) + "'");
    ParameterRange r;
    r.min = parse_double(text.substr(0, first), "range minimum");
    r.max = parse_double(text.substr(first + 1, second - first - 1), "range maximum");
    const auto steps_text = text.substr(second + 1);
    const auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), r.steps);
    if (ec != std::errc() || ptr != steps_text.data() + steps_text.size())
        throw std::invalid_argument("cannot parse range steps '" + std::string(steps_text) + "'");
    return r;
}

std::vector<double> ParameterRange::values() const
{
    if (steps == 1)
        return {min};
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i)
        out[i] = min + (max - min) * i / (steps - 1);
    out.back() = max;
    return out;
}

void GridSpec::validate() const
{
    const std::pair<const char*, const ParameterRange*> ranges[] = {{"J", &J}, {"Jp", &Jp}, {"T", &T}};
    for (const auto& [name, r] : ranges) {
        if (r->steps < 1)
            throw std::invalid_argument(std::string(name) + ": steps must be >= 1");
        if (!std::isfinite(r->min) || !std::isfinite(r->max))
            throw std::invalid_argument(std::string(name) + ": bounds must be finite");
        if (r->min > r->max)
            throw std::invalid_argument(std::string(name) + ": min must not exceed max");
    }
    if (T.min == 0.0 && T.max == 0.0)
        throw std::invalid_argument("T: the range contains only T = 0");
}

PhasePoint analyze_point(double J, double Jp, double T, bool check_consistency)
{
    PhasePoint p;
    p.J = J;
    p.Jp = Jp;
    p.T = T;
    try {
        const CouplingParameters params(J, Jp, T);
        const TransferWeights w = derive_weights(params);
        p.c = w.c();
        p.d = w.d();
        const FixedPointReport report = find_positive_fixed_points(w);
        p.root_count = static_cast<int>(report.count());
        for (const auto& r : report.roots) {
            p.roots.push_back(r.x);
            p.stabilities.push_back(r.stability);
        }
        const ThresholdReport thr = critical_points(w);
        if (thr.has_critical_points) {
            p.eta1 = thr.eta1;
            p.eta2 = thr.eta2;
        }
        p.regime = predict_count(w).regime;
        p.phase_transition = p.root_count >= 2;
        if (check_consistency)
            for (double x : p.roots)
                p.consistency_residuals.push_back(
                    kolmogorov_consistency_check(params, field_from_scalar(x)));
    }
    catch (const std::exception& e) {
        p.root_count = 0;
        p.roots.clear();
        p.stabilities.clear();
        p.consistency_residuals.clear();
        p.phase_transition = false;
        p.error = e.what();
    }
    return p;
}

ScanResult scan_grid(const GridSpec& spec, const ScanOptions& options)
{
    spec.validate();
    ScanResult result;

    std::vector<double> temps;
    const double t_scale = std::max(std::abs(spec.T.min), std::abs(spec.T.max));
    for (double t : spec.T.values()) {
        if (t == 0.0 || std::abs(t) <= 1e-12 * t_scale) {
            result.warnings.push_back("dropped T = 0 from the temperature range");
            continue;
        }
        temps.push_back(t);
    }

    std::vector<Cell> cells;
    for (double j : spec.J.values())
        for (double jp : spec.Jp.values())
            for (double t : temps)
                cells.push_back({j, jp, t});

    result.points.resize(cells.size());
    const int workers = std::max(1, options.workers);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
            result.points[i] = analyze_point(cells[i].J, cells[i].Jp, cells[i].T,
                                             options.check_consistency);
    };
    if (workers == 1) {
        work();
    }
    else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i)
            pool.emplace_back(work);
    }
    return result;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_quote(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string emit_csv(const std::vector<PhasePoint>& points, bool with_consistency)
{
    std::string out = "J,Jp,T,c,d,root_count,roots,stabilities,eta1,eta2,phase_transition";
    if (with_consistency)
        out += ",consistency_residual";
    out += "\r\n";

    auto join = [](const auto& items, auto fmt) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i)
                s += ';';
            s += fmt(items[i]);
        }
        return s;
    };
    for (const auto& p : points) {
        std::string stab = p.error.empty()
                               ? join(p.stabilities, [](Stability s) { return to_string(s); })
                               : "error: " + p.error;
        out += format_number(p.J) + ',' + format_number(p.Jp) + ',' + format_number(p.T) + ','
               + format_number(p.c) + ',' + format_number(p.d) + ',' + std::to_string(p.root_count)
               + ',' + csv_quote(join(p.roots, format_number)) + ',' + csv_quote(stab) + ','
               + (p.eta1 ? format_number(*p.eta1) : "") + ','
               + (p.eta2 ? format_number(*p.eta2) : "") + ','
               + (p.phase_transition ? "true" : "false");
        if (with_consistency)
            out += ',' + join(p.consistency_residuals, format_number);
        out += "\r\n";
    }
    return out;
}

std::string emit_jsonl(const std::vector<PhasePoint>& points)
{
    std::string out;
    for (const auto& p : points) {
        nlohmann::ordered_json j;
        j["J"] = p.J;
        j["Jp"] = p.Jp;
        j["T"] = p.T;
        j["c"] = p.c;
        j["d"] = p.d;
        j["root_count"] = p.root_count;
        j["roots"] = p.roots;
        auto stabs = nlohmann::json::array();
        for (Stability s : p.stabilities)
            stabs.push_back(to_string(s));
        j["stabilities"] = stabs;
        j["eta1"] = p.eta1 ? nlohmann::json(*p.eta1) : nlohmann::json(nullptr);
        j["eta2"] = p.eta2 ? nlohmann::json(*p.eta2) : nlohmann::json(nullptr);
        j["regime"] = to_string(p.regime);
        j["phase_transition"] = p.phase_transition;
        if (!p.consistency_residuals.empty())
            j["consistency_residuals"] = p.consistency_residuals;
        j["error"] = p.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(p.error);
        out += j.dump();
        out += '\n';
    }
    return out;
}

CurveTable emit_curve(const CouplingParameters& params, double x_min, double x_max, int samples)
{
    if (samples < 2)
        throw std::invalid_argument("curve needs at least 2 samples");
    if (!(x_min > 0.0) || !(x_max > x_min))
        throw std::invalid_argument("curve range must satisfy 0 < x_min < x_max");
    const TransferWeights w = derive_weights(params);
    CurveTable table;
    table.rows.reserve(samples);
    const double log_lo = std::log(x_min);
    const double log_hi = std::log(x_max);
    for (int i = 0; i < samples; ++i) {
        double x = std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
        if (i == 0)
            x = x_min;
        else if (i == samples - 1)
            x = x_max;
        const double g = scalar_map_g(x, w);
        table.rows.push_back({x, g, g - x});
    }
    table.fixed_points = find_positive_fixed_points(w).roots;
    return table;
}

std::string curve_to_csv(const CurveTable& table)
{
    std::string out = "x,g,g_minus_x,kind\r\n";
    for (const auto& r : table.rows)
        out += format_number(r.x) + ',' + format_number(r.g) + ',' + format_number(r.excess)
               + ",sample\r\n";
    for (const auto& fp : table.fixed_points)
        out += format_number(fp.x) + ',' + format_number(fp.x) + ",0,fixed_point:"
               + to_string(fp.stability) + "\r\n";
    return out;
}

}  // namespace ivgibbs
