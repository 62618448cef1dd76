#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fj {

enum class Role { Configuration, Momentum, Multiplier, Parameter, Velocity };

std::string_view role_name(Role r);

struct Variable {
    std::string name;
    Role role;
};

/// Ordered, duplicate-free list of named variables.
class VarTable {
public:
    VarTable() = default;

    /// Throws InputError on a duplicate name.
    void add(std::string name, Role role);

    std::size_t size() const noexcept { return vars_.size(); }
    bool empty() const noexcept { return vars_.empty(); }
    const Variable& operator[](std::size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& entries() const noexcept { return vars_; }

    bool contains(std::string_view name) const { return index_of(name).has_value(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::optional<Role> role_of(std::string_view name) const;

    std::vector<std::string> names() const;
    std::vector<std::string> names_with(Role role) const;

    /// A name not yet in the table: `base`, or `base` followed by underscores.
    std::string fresh_name(const std::string& base) const;

    bool operator==(const VarTable& o) const;

private:
    std::vector<Variable> vars_;
};

}  // namespace fj
