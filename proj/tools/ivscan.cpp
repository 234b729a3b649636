// ivscan: sweep (J, Jp, T) and classify translation-invariant Gibbs measures
// of the Ising-Vannimenus model on the order-3 Cayley tree.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ivgibbs/scanner.hpp"

namespace {

constexpr int kExitInvalidSpec = 2;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Phase scan of the Ising-Vannimenus model on the order-3 Cayley tree"};
    app.allow_extras(false);

    std::string j_text = "0";
    std::string jp_text = "0";
    std::string t_text = "1";
    std::string format = "csv";
    std::string out_path;
    bool curve = false;
    int samples = ivgibbs::kCurveDefaultSamples;
    double x_min = ivgibbs::kCurveDefaultMin;
    double x_max = ivgibbs::kCurveDefaultMax;
    int workers = 1;
    bool check_consistency = false;

    app.add_option("--J", j_text, "nearest-neighbour coupling, value or min:max:steps");
    app.add_option("--Jp", jp_text, "prolonged next-nearest-neighbour coupling, value or min:max:steps");
    app.add_option("--T", t_text, "temperature, value or min:max:steps (T = 0 cells are dropped)");
    app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_flag("--curve", curve, "emit the g(x) curve table for a singleton grid");
    app.add_option("--samples", samples, "curve samples")->check(CLI::PositiveNumber);
    app.add_option("--x-min", x_min, "curve lower bound");
    app.add_option("--x-max", x_max, "curve upper bound");
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--check-consistency", check_consistency,
                 "run the depth-2 consistency check at every fixed point");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidSpec;
    }

    ivgibbs::GridSpec spec;
    std::string text;
    try {
        spec.J = ivgibbs::ParameterRange::parse(j_text);
        spec.Jp = ivgibbs::ParameterRange::parse(jp_text);
        spec.T = ivgibbs::ParameterRange::parse(t_text);
        spec.validate();

        if (curve) {
            if (spec.J.steps != 1 || spec.Jp.steps != 1 || spec.T.steps != 1)
                throw std::invalid_argument("--curve needs a singleton grid");
            const ivgibbs::CouplingParameters params(spec.J.min, spec.Jp.min, spec.T.min);
            text = ivgibbs::curve_to_csv(ivgibbs::emit_curve(params, x_min, x_max, samples));
        }
        else {
            const auto result = ivgibbs::scan_grid(spec, {workers, check_consistency});
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            for (const auto& p : result.points)
                if (!p.error.empty())
                    std::cerr << "warning: point (" << p.J << ", " << p.Jp << ", " << p.T
                              << ") failed: " << p.error << '\n';
            text = format == "csv" ? ivgibbs::emit_csv(result.points, check_consistency)
                                   : ivgibbs::emit_jsonl(result.points);
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    }

    if (out_path.empty()) {
        std::cout << text;
    }
    else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return 1;
        }
        out << text;
    }
    return 0;
}
