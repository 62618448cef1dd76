#include "fj/system.hpp"

#include <algorithm>

#include "fj/errors.hpp"

namespace fj {

std::string_view mode_name(Mode m) {
    return m == Mode::Mechanical ? "mechanical" : "first-order";
}

std::string velocity_name(const std::string& var) {
    return "d" + var;
}

VarTable SystemDefinition::declarations() const {
    VarTable t;
    for (const auto& v : variables) t.add(v, Role::Configuration);
    for (const auto& v : multipliers) t.add(v, Role::Multiplier);
    for (const auto& v : parameters) t.add(v, Role::Parameter);
    if (mode == Mode::Mechanical) {
        for (const auto& v : variables) {
            std::string dv = velocity_name(v);
            if (t.contains(dv)) throw InputError("velocity name '" + dv + "' clashes with a declared identifier");
            t.add(dv, Role::Velocity);
        }
    }
    return t;
}

void SystemDefinition::validate() const {
    VarTable t = declarations();
    if (variables.empty()) throw InputError("no variables declared");
    auto check = [&](const Expr& e, const std::string& where, bool velocities_allowed) {
        for (const auto& s : e.free_symbols()) {
            auto role = t.role_of(s);
            if (!role) throw InputError("undeclared identifier '" + s + "' in " + where);
            if (*role == Role::Velocity && !velocities_allowed)
                throw InputError("velocity '" + s + "' appears in " + where);
        }
    };
    check(potential, "potential", false);
    if (mode == Mode::Mechanical) {
        if (!one_form.empty()) throw InputError("mechanical systems take a kinetic term, not a one-form");
        check(kinetic, "kinetic term", true);
    } else {
        if (!kinetic.is_zero()) throw InputError("first-order systems take a one-form, not a kinetic term");
        for (const auto& [var, a] : one_form) {
            auto role = t.role_of(var);
            if (!role || (*role != Role::Configuration && *role != Role::Multiplier))
                throw InputError("one-form component for unknown variable '" + var + "'");
            check(a, "one-form component of " + var, false);
        }
    }
}

bool SystemDefinition::operator==(const SystemDefinition& o) const {
    return name == o.name && notes == o.notes && mode == o.mode && variables == o.variables &&
           multipliers == o.multipliers && parameters == o.parameters && kinetic == o.kinetic &&
           one_form == o.one_form && potential == o.potential;
}

}  // namespace fj
