#include "fj/var_table.hpp"

#include <algorithm>

#include "fj/errors.hpp"

namespace fj {

std::string_view role_name(Role r) {
    switch (r) {
    case Role::Configuration: return "configuration";
    case Role::Momentum: return "momentum";
    case Role::Multiplier: return "multiplier";
    case Role::Parameter: return "parameter";
    case Role::Velocity: return "velocity";
    }
    return "unknown";
}

void VarTable::add(std::string name, Role role) {
    if (contains(name)) throw InputError("duplicate declaration of '" + name + "'");
    vars_.push_back(Variable{std::move(name), role});
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::optional<Role> VarTable::role_of(std::string_view name) const {
    auto i = index_of(name);
    if (!i) return std::nullopt;
    return vars_[*i].role;
}

std::vector<std::string> VarTable::names() const {
    std::vector<std::string> out;
    out.reserve(vars_.size());
    for (const auto& v : vars_) out.push_back(v.name);
    return out;
}

std::vector<std::string> VarTable::names_with(Role role) const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.role == role) out.push_back(v.name);
    return out;
}

std::string VarTable::fresh_name(const std::string& base) const {
    std::string n = base;
    while (contains(n)) n += "_";
    return n;
}

bool VarTable::operator==(const VarTable& o) const {
    return std::equal(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                      [](const Variable& a, const Variable& b) { return a.name == b.name && a.role == b.role; });
}

}  // namespace fj
