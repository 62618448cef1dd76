#include "fj/degeneracy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fj/errors.hpp"

namespace fj {

namespace {

std::vector<const Atom*> atom_order(const Poly& p, const std::vector<std::string>& first) {
    std::vector<const Atom*> out;
    std::vector<const Atom*> atoms = p.atoms();
    for (const auto& name : first) {
        const Atom* a = symbol_atom(name);
        if (std::find(atoms.begin(), atoms.end(), a) != atoms.end()) out.push_back(a);
    }
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
        if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    return out;
}

// Yun's algorithm in x for a polynomial primitive in every atom.
void yun(const Poly& a, const Atom* x, std::vector<std::pair<Poly, unsigned>>& out) {
    Poly c = gcd(a, a.partial(x));
    Poly w = divide_or_throw(a, c);
    unsigned i = 1;
    while (!w.is_constant()) {
        Poly y = gcd(w, c);
        Poly z = divide_or_throw(w, y);
        if (!z.is_constant()) out.emplace_back(primitive_normalized(z), i);
        ++i;
        w = y;
        c = divide_or_throw(c, y);
    }
    if (!c.is_constant()) yun(primitive_normalized(c), x, out);
}

void split(const Poly& p, const std::vector<std::string>& first, std::vector<std::pair<Poly, unsigned>>& out) {
    if (p.is_constant()) return;
    std::vector<const Atom*> order = atom_order(p, first);
    for (const Atom* x : order) {
        Poly c = content_in(p, x);
        if (!c.is_constant()) {
            split(primitive_normalized(c), first, out);
            split(primitive_normalized(divide_or_throw(p, c)), first, out);
            return;
        }
    }
    yun(primitive_normalized(p), order.front(), out);
}

bool parameter_only(const Poly& p, const std::set<std::string>& params) {
    for (const Atom* a : p.atoms())
        if (!a->is_symbol() || !params.count(a->key)) return false;
    return true;
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> square_free_factors(const Poly& p, const std::vector<std::string>& first,
                                                           Rational& content) {
    std::vector<std::pair<Poly, unsigned>> raw;
    split(p, first, raw);
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto& [f, m] : raw) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == f; });
        if (it == merged.end()) merged.emplace_back(f, m);
        else it->second += m;
    }
    Poly prod(1);
    for (const auto& [f, m] : merged) prod *= f.pow(m);
    Poly rest = p.is_zero() ? Poly() : divide_or_throw(p, prod);
    if (!rest.is_constant()) throw InternalError("square-free split lost a factor");
    content = rest.constant_value();
    return merged;
}

Expr DegeneracyReport::product() const {
    Expr out(content);
    for (const auto& f : factors) {
        Expr p = f.factor.pow(f.multiplicity);
        out = f.denominator ? out / p : out * p;
    }
    return out;
}

DegeneracyReport degeneracy_locus(const Expr& det, const std::vector<std::string>& parameters) {
    DegeneracyReport r;
    r.determinant = det;
    r.parameters = parameters;
    const std::set<std::string> params(parameters.begin(), parameters.end());
    if (det.is_zero()) {
        r.content = 0;
        return r;
    }
    Rational cn = 1;
    Rational cd = 1;
    for (const auto& [f, m] : square_free_factors(det.numerator(), parameters, cn)) {
        bool po = parameter_only(f, params);
        Expr e(RatFun::normalized(f, Poly(1)));
        r.factors.push_back(Factor{e, m, po, false});
        if (po) r.vanishing_conditions.push_back(e);
    }
    for (const auto& [f, m] : square_free_factors(det.denominator(), parameters, cd))
        r.factors.push_back(Factor{Expr(RatFun::normalized(f, Poly(1))), m, parameter_only(f, params), true});
    r.content = cn / cd;
    return r;
}

DegeneracyReport degeneracy_locus(const ReductionReport& report) {
    Sampler s(report.seed);
    return degeneracy_locus(determinant(report.extended_matrix, s), report.final_state().parameters);
}

std::string ScanTable::csv() const {
    std::ostringstream out;
    for (const auto& p : parameters) out << p << ",";
    out << "status,det\n";
    for (const auto& r : rows) {
        for (const auto& v : r.point) out << v.get_str() << ",";
        out << r.status << "," << r.det << "\n";
    }
    return out.str();
}

ScanTable scan(const ReductionReport& report, const Grid& grid) {
    for (const auto& p : report.final_state().parameters) {
        bool covered = std::any_of(grid.begin(), grid.end(), [&](const auto& g) { return g.first == p; });
        if (!covered) throw InputError("grid does not cover parameter '" + p + "'");
    }
    for (const auto& g : grid)
        if (g.second.empty()) throw InputError("empty grid for parameter '" + g.first + "'");
    Sampler sampler(report.seed);
    const Expr det = determinant(report.extended_matrix, sampler);
    // A pole in any of these marks the row.
    std::vector<Expr> entries = matrix_entries(report.extended_matrix);
    for (const auto& a : report.extended_one_form) entries.push_back(a);
    entries.push_back(report.final_state().potential);
    ScanTable table;
    for (const auto& g : grid) table.parameters.push_back(g.first);
    std::vector<std::size_t> idx(grid.size(), 0);
    for (;;) {
        ScanRow row;
        Expr d = det;
        bool pole = false;
        try {
            std::vector<Expr> specialized = entries;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const Rational& v = grid[i].second[idx[i]];
                row.point.push_back(v);
                Expr sym = Expr::symbol(grid[i].first);
                d = substitute(d, sym, Expr(v));
                for (auto& e : specialized) e = substitute(e, sym, Expr(v));
            }
        } catch (const EvaluationError&) {
            pole = true;
        }
        if (pole) {
            row.point.clear();
            for (std::size_t i = 0; i < grid.size(); ++i) row.point.push_back(grid[i].second[idx[i]]);
            row.status = "pole";
        } else {
            ZeroTest z = is_zero(d, sampler);
            if (z == ZeroTest::Unknown) throw DegenerateStratumError("undecidable determinant at grid point", d.str());
            row.status = z == ZeroTest::NonZero ? "Regular" : "Singular";
            row.det = d.str();
        }
        table.rows.push_back(std::move(row));
        std::size_t k = grid.size();
        while (k > 0) {
            --k;
            if (++idx[k] < grid[k].second.size()) break;
            idx[k] = 0;
            if (k == 0) return table;
        }
        if (grid.empty()) return table;
    }
}

}  // namespace fj
