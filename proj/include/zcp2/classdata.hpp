#pragma once

// Class groups H(Z[zeta_p]), H(Z[zeta_{p^2}]) with their Galois actions, as
// configured data.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "zcp2/abelian.hpp"
#include "zcp2/modring.hpp"

namespace zcp2 {

struct ClassData {
    int p = 0;
    CyclicAction H_p;   // (Z/p)^* on H(Z[zeta_p])
    CyclicAction H_p2;  // (Z/p^2)^* on H(Z[zeta_{p^2}])
    std::vector<PolyMod> extra_R_unit_gens;   // length p-1
    std::vector<PolyMod> extra_ES_unit_gens;  // length p
    std::string provenance;
};

/// Shipped data for p in {2, 3, 5, 7}. p = 7 needs classdata_p7.json in the
/// data directory (ZCP2_DATA_DIR, or the compiled-in default); otherwise
/// NeedsConfig.
ClassData builtin(int p);

ClassData load_config(const std::filesystem::path& path);
ClassData class_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClassData& d);

/// Directory searched by builtin() for optional data files.
std::filesystem::path data_directory();

}  // namespace zcp2
