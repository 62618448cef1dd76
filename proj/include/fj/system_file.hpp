#pragma once

// Sectioned text format for system definitions.
//
//   # comment
//   [system]
//   name = ring
//   mode = mechanical          (or first-order)
//   notes = free text
//   [variables]
//   t1, t2, t3
//   [multipliers]
//   [parameters]
//   k, R
//   [kinetic]                  (mechanical; velocities are d<var>)
//   R^2/2*(dt1^2 + dt2^2 + dt3^2)
//   [oneform]                  (first-order; one "var = expr" per line)
//   q1 = q2
//   [potential]
//   k/2*(...)
//
// Expressions may span several lines. Unlisted one-form components are zero.

#include <string>
#include <string_view>

#include "fj/errors.hpp"
#include "fj/system.hpp"

namespace fj {

class SystemFileError : public InputError {
public:
    SystemFileError(const std::string& message, int line, int column = 0);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

SystemDefinition load_system_text(std::string_view text);
/// Throws InputError when the file cannot be read.
SystemDefinition load_system_file(const std::string& path);
std::string print_system(const SystemDefinition& def);

}  // namespace fj
