#include "fj/theorem.hpp"

#include <algorithm>

#include "fj/errors.hpp"

namespace fj {

Expr poisson_bracket(const Expr& f, const Expr& g, const std::vector<std::pair<std::string, std::string>>& pairs) {
    Expr out;
    for (const auto& [q, p] : pairs) {
        Expr sq = Expr::symbol(q);
        Expr sp = Expr::symbol(p);
        Expr fq = differentiate(f, sq);
        Expr gp = differentiate(g, sp);
        if (!fq.is_zero() && !gp.is_zero()) out += fq * gp;
        Expr fp = differentiate(f, sp);
        Expr gq = differentiate(g, sq);
        if (!fp.is_zero() && !gq.is_zero()) out -= fp * gq;
    }
    return out;
}

BracketMatrix constraint_bracket_matrix(const ReductionReport& report) {
    const SymplecticState& lift = report.iterates.front();
    BracketMatrix c;
    c.pairs = lift.canonical_pairs;
    VarTable taken = report.extended_variables;
    for (const auto& p : lift.parameters)
        if (!taken.contains(p)) taken.add(p, Role::Parameter);
    for (const auto& y : lift.noncanonical) {
        std::string pi = taken.fresh_name("pi_" + y);
        taken.add(pi, Role::Momentum);
        c.pairs.emplace_back(y, pi);
        std::size_t i = *lift.vars.index_of(y);
        c.functions.push_back(Expr::symbol(pi) - lift.one_form[i]);
    }
    for (const auto& k : report.constraints) c.functions.push_back(k.expr);
    const std::size_t n = c.functions.size();
    c.entries = SymMatrix(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Expr v = poisson_bracket(c.functions[a], c.functions[b], c.pairs);
            c.entries(a, b) = v;
            c.entries(b, a) = -v;
        }
    c.entries.flag_antisymmetric(true);
    return c;
}

namespace {

Verdict co_vanishing(std::string route, const Expr& lhs, const Expr& rhs, int trials, Sampler& sampler) {
    if (trials < 1) throw InputError("at least one trial is required");
    Verdict v;
    v.route = std::move(route);
    v.lhs = lhs;
    v.rhs = rhs;
    v.lhs_class = is_zero(lhs, sampler);
    v.rhs_class = is_zero(rhs, sampler);
    int failures = 0;
    while (v.points < trials) {
        Bindings at = sampler.point({lhs, rhs});
        try {
            bool z1 = evaluate_exact(lhs, at) == 0;
            bool z2 = evaluate_exact(rhs, at) == 0;
            if (z1 != z2) v.disagreements.push_back(at);
            ++v.points;
        } catch (const EvaluationError&) {
            if (++failures > sampler.options().retries * trials)
                throw DegenerateStratumError("no usable sample point", lhs.str());
        }
    }
    v.pass = v.disagreements.empty() && v.lhs_class == v.rhs_class && v.lhs_class != ZeroTest::Unknown;
    return v;
}

// Canonical sector: lifted (q, p) pairs, or for passthrough systems a greedy
// maximal nonsingular principal block of the initial matrix.
std::vector<std::size_t> canonical_sector(const ReductionReport& report, Sampler& sampler) {
    const SymplecticState& lift = report.iterates.front();
    std::vector<std::size_t> sector;
    if (!lift.canonical_pairs.empty()) {
        for (const auto& [q, p] : lift.canonical_pairs) {
            sector.push_back(*lift.vars.index_of(q));
            sector.push_back(*lift.vars.index_of(p));
        }
        std::sort(sector.begin(), sector.end());
        return sector;
    }
    const SymMatrix& f0 = lift.matrix;
    for (std::size_t i = 0; i < f0.rows(); ++i) {
        if (std::find(sector.begin(), sector.end(), i) != sector.end()) continue;
        for (std::size_t j = i + 1; j < f0.rows(); ++j) {
            if (std::find(sector.begin(), sector.end(), j) != sector.end()) continue;
            auto idx = sector;
            idx.push_back(i);
            idx.push_back(j);
            std::sort(idx.begin(), idx.end());
            if (is_zero(determinant(f0.submatrix(idx, idx), sampler), sampler) == ZeroTest::NonZero) {
                sector = idx;
                break;
            }
        }
    }
    return sector;
}

}  // namespace

Verdict verify_theorem1(const ReductionReport& report, int trials, Sampler& sampler) {
    Expr d1 = determinant(report.extended_matrix, sampler);
    Expr d2 = determinant(constraint_bracket_matrix(report).entries, sampler);
    return co_vanishing("bracket", d1, d2, trials, sampler);
}

Verdict verify_theorem1(const ReductionReport& report, int trials) {
    Sampler s(report.seed);
    return verify_theorem1(report, trials, s);
}

Verdict schur_route_check(const ReductionReport& report, int trials, Sampler& sampler) {
    std::vector<std::size_t> sector = canonical_sector(report, sampler);
    const SymMatrix& f = report.extended_matrix;
    std::vector<std::size_t> order = sector;
    for (std::size_t i = 0; i < f.rows(); ++i)
        if (std::find(sector.begin(), sector.end(), i) == sector.end()) order.push_back(i);
    SymMatrix permuted = f.submatrix(order, order);
    SymMatrix complement;
    try {
        complement = schur_complement(permuted, sector.size(), sampler);
    } catch (const SingularMatrixError&) {
        throw InputError("no invertible canonical sector");
    }
    Expr d1 = determinant(complement, sampler);
    Expr d2 = determinant(constraint_bracket_matrix(report).entries, sampler);
    return co_vanishing("schur", d1, d2, trials, sampler);
}

Verdict schur_route_check(const ReductionReport& report, int trials) {
    Sampler s(report.seed ^ 0x9e3779b97f4a7c15ULL);
    return schur_route_check(report, trials, s);
}

}  // namespace fj
