#pragma once

#include <map>
#include <string>
#include <vector>

#include "fj/expr.hpp"
#include "fj/var_table.hpp"

namespace fj {

enum class Mode { Mechanical, FirstOrder };

std::string_view mode_name(Mode m);

/// Velocity symbol for a configuration variable: q -> dq.
std::string velocity_name(const std::string& var);

struct SystemDefinition {
    std::string name;
    std::string notes;
    Mode mode = Mode::Mechanical;
    std::vector<std::string> variables;
    std::vector<std::string> multipliers;
    std::vector<std::string> parameters;
    /// Mechanical mode: T(q, dq) at most quadratic in velocities.
    Expr kinetic;
    /// First-order mode: a_i per variable; absent components are zero.
    std::map<std::string, Expr> one_form;
    Expr potential;

    /// Every declared name with its role; velocities included in mechanical mode.
    VarTable declarations() const;
    /// Throws InputError when identifiers are undeclared, velocities leak
    /// out of the kinetic term, or one-form components name unknown variables.
    void validate() const;

    bool operator==(const SystemDefinition& o) const;
};

}  // namespace fj
