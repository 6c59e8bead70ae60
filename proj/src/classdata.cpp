#include "zcp2/classdata.hpp"

#include <cstdlib>
#include <fstream>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"

namespace zcp2 {

namespace {

CyclicAction action_from_json(const nlohmann::json& j, std::int64_t modulus, const std::string& path) {
    try {
        if (!j.is_object()) throw InvariantViolation(path, "expected an object");
        std::vector<std::int64_t> factors = j.value("invariant_factors", std::vector<std::int64_t>{});
        const std::int64_t gen = j.contains("generator_residue") ? j.at("generator_residue").get<std::int64_t>()
                                                                  : arith::primitive_root(modulus);
        auto matrix = j.value("generator_matrix", std::vector<std::vector<std::int64_t>>{});
        return CyclicAction(AbGroup(std::move(factors)), modulus, gen, std::move(matrix));
    } catch (const InvariantViolation& e) {
        if (e.path().rfind(path, 0) == 0) throw;
        throw InvariantViolation(path + "." + e.path(),
                                 std::string(e.what()).substr(e.path().size() + 2));
    } catch (const nlohmann::json::exception& e) {
        throw InvariantViolation(path, e.what());
    }
}

std::vector<PolyMod> units_from_json(const nlohmann::json& j, int p, int m, const std::string& path) {
    std::vector<PolyMod> out;
    if (j.is_null()) return out;
    if (!j.is_array()) throw InvariantViolation(path, "expected an array of coefficient arrays");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string here = path + "[" + std::to_string(i) + "]";
        std::vector<int> c;
        try {
            c = j[i].get<std::vector<int>>();
        } catch (const nlohmann::json::exception& e) {
            throw InvariantViolation(here, e.what());
        }
        if (c.size() > static_cast<std::size_t>(m))
            throw InvariantViolation(here, "more than " + std::to_string(m) + " coefficients");
        PolyMod u(p, m, std::move(c));
        if (!u.is_unit()) throw InvariantViolation(here, "not a unit (constant term is 0 mod p)");
        out.push_back(std::move(u));
    }
    return out;
}

nlohmann::json action_to_json(const CyclicAction& a) {
    return {{"invariant_factors", a.target().invariant_factors()},
            {"generator_residue", a.generator_residue()},
            {"generator_matrix", a.generator_matrix()}};
}

ClassData trivial_data(int p, std::string provenance) {
    ClassData d;
    d.p = p;
    d.H_p = CyclicAction::trivial(p);
    d.H_p2 = CyclicAction::trivial(std::int64_t{p} * p);
    d.provenance = std::move(provenance);
    return d;
}

}  // namespace

std::filesystem::path data_directory() {
    if (const char* env = std::getenv("ZCP2_DATA_DIR"); env && *env) return env;
#ifdef ZCP2_DEFAULT_DATA_DIR
    return ZCP2_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

ClassData builtin(int p) {
    switch (p) {
        case 2:
        case 3:
        case 5:
            return trivial_data(p, "builtin: h(Z[zeta_p]) = h(Z[zeta_p^2]) = 1");
        case 7: {
            const auto file = data_directory() / "classdata_p7.json";
            if (!std::filesystem::exists(file))
                throw NeedsConfig("p = 7: H(Z[zeta_49]) has order 43 but its Galois action is not "
                                  "shipped; supply --classdata (looked for " + file.string() + ")");
            return load_config(file);
        }
        default:
            throw UnsupportedPrime("no built-in class data for p = " + std::to_string(p) +
                                   " (supported: 2, 3, 5, 7)");
    }
}

ClassData class_data_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvariantViolation("$", "expected a JSON object");
    if (!j.contains("p") || !j.at("p").is_number_integer()) throw InvariantViolation("p", "missing integer");
    const int p = j.at("p").get<int>();
    if (!arith::is_prime(p)) throw InvariantViolation("p", std::to_string(p) + " is not prime");
    ClassData d;
    d.p = p;
    d.H_p = j.contains("H_p") ? action_from_json(j.at("H_p"), p, "H_p") : CyclicAction::trivial(p);
    const std::int64_t pp = std::int64_t{p} * p;
    d.H_p2 = j.contains("H_p2") ? action_from_json(j.at("H_p2"), pp, "H_p2") : CyclicAction::trivial(pp);
    d.extra_R_unit_gens = units_from_json(j.value("extra_R_unit_gens", nlohmann::json()), p, p - 1,
                                          "extra_R_unit_gens");
    d.extra_ES_unit_gens = units_from_json(j.value("extra_ES_unit_gens", nlohmann::json()), p, p,
                                           "extra_ES_unit_gens");
    d.provenance = j.value("provenance", std::string{});
    return d;
}

ClassData load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open class-data file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return class_data_from_json(j);
}

nlohmann::json to_json(const ClassData& d) {
    auto units = [](const std::vector<PolyMod>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& u : v) a.push_back(std::vector<int>(u.coeffs().begin(), u.coeffs().end()));
        return a;
    };
    return {{"p", d.p},
            {"H_p", action_to_json(d.H_p)},
            {"H_p2", action_to_json(d.H_p2)},
            {"extra_R_unit_gens", units(d.extra_R_unit_gens)},
            {"extra_ES_unit_gens", units(d.extra_ES_unit_gens)},
            {"provenance", d.provenance}};
}

}  // namespace zcp2
