#include "arithcoh/bundle_json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace arithcoh {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError("schema error at " + path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

long as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

double as_real(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

std::complex<double> as_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {as_real(j, path), 0.0};
    if (j.is_array() && j.size() == 2)
        return {as_real(j[0], path + "[0]"), as_real(j[1], path + "[1]")};
    fail(path, "expected a number or a [re, im] pair");
}

FractionalIdeal ideal_from_json(const NumberField& F, const json& j, const std::string& path) {
    FractionalIdeal a = unit_ideal(F);
    if (j.is_null()) return a;
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find("primes");
    if (it == j.end()) return a;
    if (!it->is_array()) fail(path + ".primes", "expected an array of [p, e] pairs");
    for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string here = path + ".primes[" + std::to_string(k) + "]";
        const json& pair = (*it)[k];
        if (!pair.is_array() || pair.size() != 2) fail(here, "expected a [p, e] pair");
        const long p = as_integer(pair[0], here + "[0]");
        const long e = as_integer(pair[1], here + "[1]");
        if (!is_prime(p)) fail(here + "[0]", std::to_string(p) + " is not a prime");
        for (const auto& factor : prime_above(F, p)) a = ideal_mul(F, a, ideal_pow(F, factor.ideal, e));
    }
    return a;
}

} // namespace

NumberField field_from_json(const json& j, const std::string& path) {
    const json& kind = require(j, "kind", path);
    if (!kind.is_string()) fail(path + ".kind", "expected \"rational\" or \"quadratic\"");
    const auto k = kind.get<std::string>();
    if (k == "rational") return NumberField::rational();
    if (k != "quadratic") fail(path + ".kind", "unknown field kind \"" + k + "\"");
    const long d = as_integer(require(j, "d", path), path + ".d");
    try {
        return NumberField::quadratic(d);
    } catch (const ArithcohError& e) {
        fail(path + ".d", e.what());
    }
}

NumberField parse_field_flag(const std::string& text) {
    if (text == "q" || text == "Q") return NumberField::rational();
    if (text.rfind("d=", 0) == 0) {
        std::size_t used = 0;
        long d = 0;
        try {
            d = std::stol(text.substr(2), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 2)
            throw SchemaError("--field: cannot parse integer in \"" + text + "\"");
        return NumberField::quadratic(d);
    }
    throw SchemaError("--field: expected q or d=<int>, got \"" + text + "\"");
}

AdelicBundle bundle_from_json(const json& j) {
    if (!j.is_object()) fail("$", "expected an object");
    const NumberField F = field_from_json(require(j, "field", "$"), "$.field");
    const long rank = as_integer(require(j, "rank", "$"), "$.rank");
    if (rank < 1) fail("$.rank", "rank must be at least 1");
    const json& comps = require(j, "components", "$");
    if (!comps.is_array()) fail("$.components", "expected an array");
    if (static_cast<long>(comps.size()) != rank)
        fail("$.components", "expected " + std::to_string(rank) + " components, got " +
                                 std::to_string(comps.size()));

    const int places = F.places();
    const int r = static_cast<int>(rank);
    std::vector<FractionalIdeal> ideals;
    Eigen::MatrixXd scalars = Eigen::MatrixXd::Zero(r, places);
    for (int i = 0; i < r; ++i) {
        const std::string path = "$.components[" + std::to_string(i) + "]";
        const json& c = comps[i];
        if (!c.is_object()) fail(path, "expected an object");
        ideals.push_back(ideal_from_json(F, c.value("ideal", json()), path + ".ideal"));
        if (const auto it = c.find("scalars"); it != c.end() && !it->is_null()) {
            if (!it->is_array() || static_cast<int>(it->size()) != places)
                fail(path + ".scalars", "expected " + std::to_string(places) +
                                            " entries (one per archimedean place)");
            for (int p = 0; p < places; ++p)
                scalars(i, p) = as_real((*it)[p], path + ".scalars[" + std::to_string(p) + "]");
        }
    }

    std::vector<Eigen::MatrixXcd> inf;
    const json mixing = j.value("mixing", json());
    if (!mixing.is_null() && (!mixing.is_array() || static_cast<int>(mixing.size()) != places))
        fail("$.mixing", "expected null or " + std::to_string(places) + " matrices");
    for (int p = 0; p < places; ++p) {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(r, r);
        if (!mixing.is_null()) {
            const std::string path = "$.mixing[" + std::to_string(p) + "]";
            const json& M = mixing[p];
            if (!M.is_array() || static_cast<int>(M.size()) != r)
                fail(path, "expected " + std::to_string(r) + " rows");
            for (int row = 0; row < r; ++row) {
                const std::string rp = path + "[" + std::to_string(row) + "]";
                if (!M[row].is_array() || static_cast<int>(M[row].size()) != r)
                    fail(rp, "expected " + std::to_string(r) + " entries");
                for (int col = 0; col < r; ++col)
                    g(row, col) = as_complex(M[row][col], rp + "[" + std::to_string(col) + "]");
            }
            if (!F.place_is_complex(p) && g.imag().cwiseAbs().maxCoeff() != 0.0)
                fail(path, "real place needs a real matrix");
        }
        for (int i = 0; i < r; ++i) g.col(i) *= std::exp(scalars(i, p));
        inf.push_back(std::move(g));
    }
    return AdelicBundle(F, std::move(ideals), std::move(inf));
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("JSON syntax error: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArithcohError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

} // namespace arithcoh
