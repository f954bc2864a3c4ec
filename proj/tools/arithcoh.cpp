// arithcoh: arithmetic cohomology of metrized bundles over Q and quadratic fields.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arithcoh/bundle_json.hpp"
#include "arithcoh/commands.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return arithcoh::exit_pass;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return arithcoh::exit_usage;
    }
    out << text;
    return out ? arithcoh::exit_pass : arithcoh::exit_usage;
}

int emit_report(const arithcoh::RunReport& report, const std::string& out_path) {
    const int io = emit(report.to_json().dump(2) + "\n", out_path);
    return io != arithcoh::exit_pass ? io : report.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic cohomology h0, h1 and degree of adelic bundles, with Riemann-Roch, "
                 "Serre duality and Poisson verification sweeps"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    double eps = 1e-12;

    auto add_spec_command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--spec", spec_path, "Bundle JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--eps", eps, "Theta tail tolerance")->capture_default_str();
        sub->add_option("--out", out_path, "Write the report here instead of stdout");
        return sub;
    };
    auto* h0_cmd = add_spec_command("h0", "log of the theta count of H^0");
    auto* h1_cmd = add_spec_command("h1", "log of the theta count of H^1 (dual lattice)");
    auto* deg_cmd = app.add_subcommand("deg", "Arakelov degree of the bundle");
    deg_cmd->add_option("--spec", spec_path, "Bundle JSON file")->required()->check(CLI::ExistingFile);
    deg_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

    arithcoh::VerifyOptions vopts;
    std::string kind = "rr";
    std::vector<double> deg_range{-10.0, 10.0};
    double threshold = 0.0;
    auto* verify = app.add_subcommand("verify", "Check rr, duality or poisson identities on random bundles");
    verify->add_option("kind", kind, "rr | duality | poisson")->required()
        ->check(CLI::IsMember({"rr", "duality", "poisson"}));
    verify->add_option("--field", vopts.field, "q or d=<int>")->capture_default_str();
    verify->add_option("--samples", vopts.samples, "Number of random bundles")->capture_default_str()
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopts.seed, "Random seed")->capture_default_str();
    verify->add_option("--deg-range", deg_range, "Degree range LO HI")->expected(2)->capture_default_str();
    verify->add_option("--eps", vopts.eps, "Theta tail tolerance")->capture_default_str();
    auto* thr = verify->add_option("--threshold", threshold, "Maximum tolerated defect");
    verify->add_option("--rank", vopts.rank, "Bundle rank")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_flag("--mixing", vopts.mixing, "Random mixing matrices at every place");
    verify->add_option("--out", out_path, "Write the report here instead of stdout");

    arithcoh::SweepOptions sopts;
    std::string format = "json";
    auto* sweep = app.add_subcommand("sweep", "h0, h1 and RR defect along scalar twists of the trivial line");
    sweep->add_option("--field", sopts.field, "q or d=<int>")->capture_default_str();
    sweep->add_option("--from", sopts.from, "First degree")->capture_default_str();
    sweep->add_option("--to", sopts.to, "Last degree")->capture_default_str();
    sweep->add_option("--step", sopts.step, "Degree step")->capture_default_str();
    sweep->add_option("--eps", sopts.eps, "Theta tail tolerance")->capture_default_str();
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_option("--out", out_path, "Write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? arithcoh::exit_pass : arithcoh::exit_usage;
    }

    try {
        if (*h0_cmd) return emit_report(arithcoh::cmd_h0(arithcoh::read_json_file(spec_path), eps), out_path);
        if (*h1_cmd) return emit_report(arithcoh::cmd_h1(arithcoh::read_json_file(spec_path), eps), out_path);
        if (*deg_cmd) return emit_report(arithcoh::cmd_deg(arithcoh::read_json_file(spec_path)), out_path);
        if (*verify) {
            vopts.kind = arithcoh::parse_verify_kind(kind);
            vopts.deg_lo = deg_range[0];
            vopts.deg_hi = deg_range[1];
            if (*thr) vopts.threshold = threshold;
            return emit_report(arithcoh::cmd_verify(vopts), out_path);
        }
        if (*sweep) {
            const auto report = arithcoh::cmd_sweep(sopts);
            if (format == "csv") return emit(arithcoh::sweep_csv(report), out_path);
            return emit_report(report, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return arithcoh::exit_usage;
    }
    return arithcoh::exit_usage;
}
