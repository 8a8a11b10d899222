#pragma once

#include <optional>
#include <string>

#include "thetarig/genus.hpp"
#include "thetarig/lefschetz.hpp"
#include "thetarig/rigidity.hpp"

namespace thetarig {

// A parsed problem instance. All numeric leaves in the file are decimal
// strings parsed at the configured precision; the schema is strict (unknown
// keys are rejected with a path diagnostic).
struct InstanceFile {
    CaseSelector sel;
    unsigned digits = 60;
    long q_order_eighths = 40;
    EquivariantData data;
    std::optional<ManifoldData> manifold;
    VarTablePtr vars;
};

InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::string& path);

// Canonical serialization; parse -> serialize is idempotent.
std::string serialize_instance(const InstanceFile& inst);

// "y", "y^2", "x*y", "" (constant) -> monomial over the table
Monomial parse_monomial(const std::string& text, const VarTable& table);

} // namespace thetarig
