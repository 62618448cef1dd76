#include "fj/system_file.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fj/parse.hpp"

namespace fj {

SystemFileError::SystemFileError(const std::string& message, int line, int column)
    : InputError("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
                 message),
      line_(line),
      column_(column) {}

namespace {

struct Line {
    int number;
    std::string text;
};

struct Section {
    int header_line = 0;
    std::vector<Line> lines;
};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

const std::set<std::string> known_sections = {"system", "variables", "multipliers", "parameters",
                                              "kinetic", "oneform", "potential"};

std::map<std::string, Section> split_sections(std::string_view text) {
    std::map<std::string, Section> out;
    Section* current = nullptr;
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string t = trim(raw);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw SystemFileError("malformed section header", number, 1);
            std::string name = trim(std::string_view(t).substr(1, t.size() - 2));
            if (!known_sections.count(name)) throw SystemFileError("unknown section [" + name + "]", number, 1);
            if (out.count(name)) throw SystemFileError("duplicate section [" + name + "]", number, 1);
            current = &out[name];
            current->header_line = number;
            continue;
        }
        if (current == nullptr) throw SystemFileError("content before the first section", number, 1);
        current->lines.push_back(Line{number, raw});
    }
    return out;
}

std::vector<std::string> name_list(const Section& s, std::set<std::string>& seen) {
    std::vector<std::string> out;
    for (const auto& l : s.lines) {
        std::string cur;
        auto flush = [&](std::size_t col) {
            if (cur.empty()) return;
            bool ok = std::isalpha(static_cast<unsigned char>(cur[0])) != 0;
            for (char c : cur) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
            if (!ok) throw SystemFileError("invalid identifier '" + cur + "'", l.number, static_cast<int>(col));
            if (cur == "sin" || cur == "cos")
                throw SystemFileError("'" + cur + "' is reserved", l.number, static_cast<int>(col));
            if (!seen.insert(cur).second)
                throw SystemFileError("duplicate declaration of '" + cur + "'", l.number, static_cast<int>(col));
            out.push_back(cur);
            cur.clear();
        };
        std::size_t start = 0;
        for (std::size_t i = 0; i <= l.text.size(); ++i) {
            char c = i < l.text.size() ? l.text[i] : ',';
            if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
                flush(start + 1);
                start = i + 1;
            } else {
                cur += c;
            }
        }
    }
    return out;
}

Expr parse_at(const std::string& text, int first_line, int first_column, const VarTable& vars) {
    try {
        return parse(text, vars);
    } catch (const ParseError& e) {
        int line = first_line + e.line() - 1;
        int column = e.line() == 1 ? first_column + e.column() - 1 : e.column();
        throw SystemFileError(e.message(), line, column);
    }
}

Expr section_expression(const Section& s, const VarTable& vars) {
    std::string text;
    for (std::size_t i = 0; i < s.lines.size(); ++i) {
        if (i > 0) text += "\n";
        text += s.lines[i].text;
    }
    if (trim(text).empty()) return Expr();
    // Blank and comment lines were dropped, so map lines through the kept ones.
    try {
        return parse(text, vars);
    } catch (const ParseError& e) {
        const Line& l = s.lines.at(static_cast<std::size_t>(e.line() - 1));
        throw SystemFileError(e.message(), l.number, e.column());
    }
}

}  // namespace

SystemDefinition load_system_text(std::string_view text) {
    auto sections = split_sections(text);
    auto require = [&](const std::string& name) -> const Section& {
        auto it = sections.find(name);
        if (it == sections.end()) throw SystemFileError("missing section [" + name + "]", 0);
        return it->second;
    };
    SystemDefinition def;
    const Section& sys = require("system");
    bool have_mode = false;
    for (const auto& l : sys.lines) {
        auto eq = l.text.find('=');
        if (eq == std::string::npos) throw SystemFileError("expected key = value", l.number, 1);
        std::string key = trim(std::string_view(l.text).substr(0, eq));
        std::string value = trim(std::string_view(l.text).substr(eq + 1));
        if (key == "name") {
            def.name = value;
        } else if (key == "notes") {
            def.notes = value;
        } else if (key == "mode") {
            if (value == "mechanical") def.mode = Mode::Mechanical;
            else if (value == "first-order") def.mode = Mode::FirstOrder;
            else throw SystemFileError("unknown mode '" + value + "'", l.number, static_cast<int>(eq) + 2);
            have_mode = true;
        } else {
            throw SystemFileError("unknown key '" + key + "'", l.number, 1);
        }
    }
    if (!have_mode) throw SystemFileError("missing mode in [system]", sys.header_line);

    std::set<std::string> seen;
    def.variables = name_list(require("variables"), seen);
    if (def.variables.empty()) throw SystemFileError("no variables declared", require("variables").header_line);
    if (sections.count("multipliers")) def.multipliers = name_list(sections["multipliers"], seen);
    if (sections.count("parameters")) def.parameters = name_list(sections["parameters"], seen);

    VarTable vars;
    try {
        vars = def.declarations();
    } catch (const InputError& e) {
        throw SystemFileError(e.what(), require("variables").header_line);
    }
    VarTable no_velocities;
    for (const auto& v : vars.entries())
        if (v.role != Role::Velocity) no_velocities.add(v.name, v.role);

    if (def.mode == Mode::Mechanical) {
        if (sections.count("oneform")) throw SystemFileError("[oneform] is not allowed in mechanical mode", sections["oneform"].header_line);
        def.kinetic = section_expression(require("kinetic"), vars);
    } else {
        if (sections.count("kinetic")) throw SystemFileError("[kinetic] is not allowed in first-order mode", sections["kinetic"].header_line);
        for (const auto& l : require("oneform").lines) {
            auto eq = l.text.find('=');
            if (eq == std::string::npos) throw SystemFileError("expected var = expression", l.number, 1);
            std::string var = trim(std::string_view(l.text).substr(0, eq));
            auto role = no_velocities.role_of(var);
            if (!role || *role == Role::Parameter)
                throw SystemFileError("one-form component for unknown variable '" + var + "'", l.number, 1);
            if (def.one_form.count(var)) throw SystemFileError("duplicate one-form component '" + var + "'", l.number, 1);
            Expr a = parse_at(l.text.substr(eq + 1), l.number, static_cast<int>(eq) + 2, no_velocities);
            if (!a.is_zero()) def.one_form.emplace(var, a);
        }
    }
    const Section& pot = require("potential");
    try {
        def.potential = section_expression(pot, no_velocities);
    } catch (const SystemFileError& e) {
        for (const auto& v : vars.entries())
            if (v.role == Role::Velocity && std::string(e.what()).find("'" + v.name + "'") != std::string::npos)
                throw SystemFileError("velocity '" + v.name + "' appears in the potential", e.line(), e.column());
        throw;
    }
    def.validate();
    return def;
}

SystemDefinition load_system_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_system_text(ss.str());
}

std::string print_system(const SystemDefinition& def) {
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty()) s += ", ";
            s += x;
        }
        return s;
    };
    std::ostringstream out;
    out << "[system]\n";
    if (!def.name.empty()) out << "name = " << def.name << "\n";
    out << "mode = " << mode_name(def.mode) << "\n";
    if (!def.notes.empty()) out << "notes = " << def.notes << "\n";
    out << "\n[variables]\n" << join(def.variables) << "\n";
    if (!def.multipliers.empty()) out << "\n[multipliers]\n" << join(def.multipliers) << "\n";
    if (!def.parameters.empty()) out << "\n[parameters]\n" << join(def.parameters) << "\n";
    if (def.mode == Mode::Mechanical) {
        out << "\n[kinetic]\n" << def.kinetic.str() << "\n";
    } else {
        out << "\n[oneform]\n";
        std::vector<std::string> order = def.variables;
        order.insert(order.end(), def.multipliers.begin(), def.multipliers.end());
        for (const auto& v : order) {
            auto it = def.one_form.find(v);
            if (it != def.one_form.end()) out << v << " = " << it->second.str() << "\n";
        }
    }
    out << "\n[potential]\n" << def.potential.str() << "\n";
    return out.str();
}

}  // namespace fj
