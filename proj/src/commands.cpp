#include "arithcoh/commands.hpp"

#include <chrono>
#include <cfloat>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "arithcoh/bundle_json.hpp"
#include "arithcoh/lattice.hpp"
#include "arithcoh/theta.hpp"

namespace arithcoh {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

json bounded(double value, double error_bound) {
    return json{{"value", value}, {"error_bound", error_bound}};
}

// Rounding bound for degree(): a handful of ulps per logarithm term.
double degree_error(const AdelicBundle& b) {
    const auto& F = b.field();
    double mass = 1.0;
    for (const auto& a : b.ideals()) mass += std::abs(log_abs(ideal_norm(F, a)));
    for (int p = 0; p < F.places(); ++p)
        mass += F.place_weight(p) * std::abs(std::log(std::abs(b.at_place(p).determinant())));
    return 16.0 * DBL_EPSILON * mass;
}

double log_abs_disc(const NumberField& F) { return std::log(std::abs(F.discriminant().get_d())); }

struct Evaluated {
    double value;
    double error;
};

Evaluated log_theta(const EuclideanLattice& L, double eps) {
    const auto t = theta_sum(L, eps);
    return {std::log(t.value), t.log_error_bound()};
}

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

RunReport single_value(const char* command, const json& spec, ReportValue value) {
    RunReport r;
    r.command = command;
    r.inputs = spec;
    r.results.push_back(std::move(value));
    return r;
}

std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

json RunReport::to_json(bool include_timing) const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    json res = json::array();
    for (const auto& r : results)
        res.push_back({{"name", r.name}, {"value", r.value}, {"error_bound", r.error_bound}});
    j["results"] = std::move(res);
    if (seed) j["seed"] = *seed;
    if (!table.empty()) j["table"] = table;
    j["exit_code"] = exit_code;
    if (include_timing) j["wall_time_ms"] = wall_time_ms;
    return j;
}

RunReport cmd_h0(const json& spec, double eps) {
    const auto start = Clock::now();
    const auto b = bundle_from_json(spec);
    const auto h = log_theta(lattice_of_bundle(b), eps);
    auto r = single_value("h0", spec, {"h0", h.value, h.error});
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

RunReport cmd_h1(const json& spec, double eps) {
    const auto start = Clock::now();
    const auto b = bundle_from_json(spec);
    const auto h = log_theta(dual_lattice(lattice_of_bundle(b)), eps);
    auto r = single_value("h1", spec, {"h1", h.value, h.error});
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

RunReport cmd_deg(const json& spec) {
    const auto start = Clock::now();
    const auto b = bundle_from_json(spec);
    auto r = single_value("deg", spec, {"deg", degree(b), degree_error(b)});
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

VerifyKind parse_verify_kind(const std::string& text) {
    if (text == "rr") return VerifyKind::rr;
    if (text == "duality") return VerifyKind::duality;
    if (text == "poisson") return VerifyKind::poisson;
    throw ArithcohError("unknown verification kind \"" + text + "\" (expected rr, duality or poisson)");
}

double default_threshold(VerifyKind kind) { return kind == VerifyKind::poisson ? 1e-10 : 1e-8; }

std::uint64_t sample_seed(std::uint64_t seed, int index) {
    // splitmix64 of (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RunReport cmd_verify(const VerifyOptions& o) {
    const auto start = Clock::now();
    if (o.samples < 1) throw ArithcohError("verify: samples must be at least 1");
    const NumberField F = parse_field_flag(o.field);
    const double threshold = o.threshold.value_or(default_threshold(o.kind));
    const char* kind_name = o.kind == VerifyKind::rr ? "rr" : o.kind == VerifyKind::duality ? "duality" : "poisson";

    RunReport report;
    report.command = "verify";
    report.inputs = {{"kind", kind_name}, {"field", F.label()}, {"samples", o.samples},
                     {"deg_range", {o.deg_lo, o.deg_hi}}, {"eps", o.eps},
                     {"rank", o.rank}, {"mixing", o.mixing}, {"threshold", threshold}};
    report.seed = o.seed;

    RandomBundleOptions ropts;
    ropts.mixing = o.mixing;
    double worst = 0.0;
    double worst_error = 0.0;
    for (int i = 0; i < o.samples; ++i) {
        const auto b = random_bundle(F, o.rank, o.deg_lo, o.deg_hi, sample_seed(o.seed, i), ropts);
        const auto L = lattice_of_bundle(b);
        double defect = 0.0;
        double error = 0.0;
        switch (o.kind) {
        case VerifyKind::rr: {
            const auto h0v = log_theta(L, o.eps);
            const auto h1v = log_theta(dual_lattice(L), o.eps);
            defect = h0v.value - h1v.value - degree(b) + 0.5 * b.rank() * log_abs_disc(F);
            error = h0v.error + h1v.error + degree_error(b);
            break;
        }
        case VerifyKind::duality: {
            const auto direct = log_theta(dual_lattice(L), o.eps);
            const auto serre = log_theta(lattice_of_bundle(serre_dual(b)), o.eps);
            defect = serre.value - direct.value;
            error = serre.error + direct.error;
            break;
        }
        case VerifyKind::poisson: {
            const auto t = theta_sum(L, o.eps);
            const auto td = theta_sum(dual_lattice(L), o.eps);
            const double covol = covolume(L);
            defect = (t.value - td.value / covol) / t.value;
            error = (t.tail_bound + td.tail_bound / covol) / t.value;
            break;
        }
        }
        report.table.push_back({{"sample", i},
                                {"deg", bounded(degree(b), degree_error(b))},
                                {"defect", bounded(defect, error)}});
        if (std::abs(defect) >= worst) {
            worst = std::abs(defect);
            worst_error = error;
        }
    }
    report.results.push_back({"max_abs_defect", worst, worst_error});
    report.results.push_back({"threshold", threshold, 0.0});
    report.exit_code = worst > threshold ? exit_breach : exit_pass;
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_sweep(const SweepOptions& o) {
    const auto start = Clock::now();
    if (!(o.step > 0.0)) throw ArithcohError("sweep: step must be positive");
    if (o.to < o.from) throw ArithcohError("sweep: --to must not be below --from");
    const NumberField F = parse_field_flag(o.field);
    const int rows = static_cast<int>(std::floor((o.to - o.from) / o.step + 1e-9)) + 1;

    RunReport report;
    report.command = "sweep";
    report.inputs = {{"field", F.label()}, {"from", o.from}, {"to", o.to}, {"step", o.step}, {"eps", o.eps}};
    const auto trivial = trivial_bundle(F, 1);
    double worst = 0.0;
    double worst_error = 0.0;
    for (int k = 0; k < rows; ++k) {
        const double target = o.from + k * o.step;
        const auto b = scale_infinite(trivial, -target / F.degree());
        const auto L = lattice_of_bundle(b);
        const auto h0v = log_theta(L, o.eps);
        const auto h1v = log_theta(dual_lattice(L), o.eps);
        const double deg = degree(b);
        const double deg_err = degree_error(b);
        const double defect = h0v.value - h1v.value - deg + 0.5 * log_abs_disc(F);
        const double defect_err = h0v.error + h1v.error + deg_err;
        report.table.push_back({{"deg", bounded(deg, deg_err)},
                                {"h0", bounded(h0v.value, h0v.error)},
                                {"h1", bounded(h1v.value, h1v.error)},
                                {"rr_defect", bounded(defect, defect_err)}});
        if (std::abs(defect) >= worst) {
            worst = std::abs(defect);
            worst_error = defect_err;
        }
    }
    report.results.push_back({"max_abs_rr_defect", worst, worst_error});
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

std::string sweep_csv(const RunReport& report) {
    std::ostringstream os;
    os << "deg,h0,h1,rr_defect\r\n";
    for (const auto& row : report.table) {
        os << format_real(row["deg"]["value"].get<double>()) << ','
           << format_real(row["h0"]["value"].get<double>()) << ','
           << format_real(row["h1"]["value"].get<double>()) << ','
           << format_real(row["rr_defect"]["value"].get<double>()) << "\r\n";
    }
    return os.str();
}

} // namespace arithcoh
