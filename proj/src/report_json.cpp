#include "fj/report_json.hpp"

#include <sstream>

namespace fj {

using nlohmann::ordered_json;

namespace {

ordered_json exprs(const std::vector<Expr>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& e : v) a.push_back(e.str());
    return a;
}

ordered_json event_json(const Event& e) {
    ordered_json j;
    j["event"] = std::string(event_name(e.kind));
    j["iteration"] = e.iteration;
    if (!e.detail.empty()) j["detail"] = e.detail;
    if (e.expression) j["expression"] = e.expression->str();
    if (!e.vectors.empty() || e.kind == Event::Kind::Singular) {
        ordered_json vs = ordered_json::array();
        for (const auto& v : e.vectors) vs.push_back(exprs(v));
        j[e.kind == Event::Kind::Singular ? "gauge_generators" : "vectors"] = vs;
    }
    return j;
}

ordered_json bindings_json(const Bindings& b) {
    ordered_json j;
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : b.symbols) s[k] = v.get_str();
    ordered_json a = ordered_json::object();
    for (const auto& [k, v] : b.angles) a[k] = v.get_str();
    j["symbols"] = s;
    j["angles"] = a;
    return j;
}

}  // namespace

ordered_json matrix_json(const SymMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(exprs(m.row(i)));
    return rows;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    j["route"] = v.route;
    j["lhs"] = to_string(v.lhs_class);
    j["rhs"] = to_string(v.rhs_class);
    j["points"] = v.points;
    ordered_json d = ordered_json::array();
    for (const auto& b : v.disagreements) d.push_back(bindings_json(b));
    j["disagreements"] = d;
    return j;
}

ordered_json emit_report(const ReductionReport& report, const std::optional<TheoremResults>& theorem,
                         const std::optional<DegeneracyReport>& degeneracy) {
    ordered_json j;
    ordered_json constraints = ordered_json::array();
    for (const auto& c : report.constraints) constraints.push_back(c.expr.str());
    j["Constraints"] = constraints;
    j["ExtendedMatrix"] = matrix_json(report.extended_matrix);
    j["ExtendedOneForm"] = exprs(report.extended_one_form);
    j["ExtendedSymplecticVariables"] = report.extended_variables.names();
    j["InverseExtendedMatrix"] =
        report.inverse_extended_matrix ? matrix_json(*report.inverse_extended_matrix) : ordered_json(nullptr);
    j["IterationCount"] = report.iteration_count;
    j["MatrixStatus"] = std::string(status_name(report.status));
    j["Diagnostics"] = report.diagnostics;
    ordered_json trace = ordered_json::array();
    for (const auto& e : report.trace) trace.push_back(event_json(e));
    if (!trace.empty()) trace.front()["seed"] = std::to_string(report.seed);
    j["Trace"] = trace;
    if (theorem) {
        ordered_json t = verdict_json(theorem->bracket);
        if (theorem->schur) t["schur_route"] = verdict_json(*theorem->schur);
        j["Theorem1"] = t;
    } else {
        j["Theorem1"] = nullptr;
    }
    if (degeneracy) {
        ordered_json d;
        d["determinant"] = degeneracy->determinant.str();
        d["content"] = degeneracy->content.get_str();
        ordered_json fs = ordered_json::array();
        for (const auto& f : degeneracy->factors) {
            ordered_json fj;
            fj["factor"] = f.factor.str();
            fj["multiplicity"] = f.multiplicity;
            fj["parameter_only"] = f.parameter_only;
            fj["denominator"] = f.denominator;
            fs.push_back(fj);
        }
        d["factors"] = fs;
        d["parameters"] = degeneracy->parameters;
        d["vanishing_conditions"] = exprs(degeneracy->vanishing_conditions);
        j["Degeneracy"] = d;
    } else {
        j["Degeneracy"] = nullptr;
    }
    return j;
}

std::string summarize(const ReductionReport& report) {
    const std::size_t n = report.extended_matrix.rows();
    std::ostringstream out;
    out << "System             : " << (report.system_name.empty() ? "(unnamed)" : report.system_name) << "\n";
    out << "Regularity Status  : " << status_name(report.status) << "\n";
    out << "Extended Dimension : " << n << "×" << n << "\n";
    out << "Constraint Count   : " << report.constraints.size() << "\n";
    out << "Iteration Depth    : " << report.iteration_count << "\n";
    for (const auto& d : report.diagnostics) out << "Diagnostic         : " << d << "\n";
    if (report.gauge_generators) out << "Gauge Generators   : " << report.gauge_generators->size() << "\n";
    return out.str();
}

}  // namespace fj
