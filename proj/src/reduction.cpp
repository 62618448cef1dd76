#include "fj/reduction.hpp"

#include <algorithm>
#include <set>

#include "fj/errors.hpp"

namespace fj {

std::string_view event_name(Event::Kind k) {
    switch (k) {
    case Event::Kind::Lift: return "lift";
    case Event::Kind::DeterminantTest: return "determinant-test";
    case Event::Kind::Kernel: return "kernel";
    case Event::Kind::ConstraintAccepted: return "constraint-accepted";
    case Event::Kind::NullCandidate: return "null-candidate";
    case Event::Kind::DependentCandidate: return "dependent-candidate";
    case Event::Kind::Border: return "border";
    case Event::Kind::Inversion: return "inversion";
    case Event::Kind::Singular: return "singular";
    }
    return "unknown";
}

std::string_view status_name(MatrixStatus s) {
    return s == MatrixStatus::Regular ? "Regular" : "Singular";
}

std::vector<Expr> SymplecticState::symbols() const {
    std::vector<Expr> out;
    out.reserve(vars.size());
    for (const auto& v : vars.entries()) out.push_back(Expr::symbol(v.name));
    return out;
}

std::vector<std::string> SymplecticState::fj_multipliers() const {
    std::vector<std::string> out;
    for (const auto& c : constraints) out.push_back(c.multiplier);
    return out;
}

std::vector<Expr> gradient(const Expr& e, const VarTable& vars) {
    std::vector<Expr> g;
    g.reserve(vars.size());
    for (const auto& v : vars.entries()) g.push_back(differentiate(e, Expr::symbol(v.name)));
    return g;
}

SymMatrix presymplectic_form(const SymplecticState& state) {
    const std::size_t n = state.vars.size();
    if (state.one_form.size() != n) throw InternalError("one-form length does not match the variable table");
    std::vector<Expr> xs = state.symbols();
    SymMatrix f(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Expr v = differentiate(state.one_form[j], xs[i]) - differentiate(state.one_form[i], xs[j]);
            f(i, j) = v;
            f(j, i) = -v;
        }
    f.flag_antisymmetric(true);
    return f;
}

namespace {

bool nonsingular(const SymMatrix& w, std::vector<std::size_t> idx, Sampler& sampler) {
    std::sort(idx.begin(), idx.end());
    return is_zero(determinant(w.submatrix(idx, idx), sampler), sampler) == ZeroTest::NonZero;
}

// Maximal nonsingular principal block, grown greedily in index order by single
// indices, or by pairs when only an off-diagonal Schur entry survives.
std::vector<std::size_t> regular_block(const SymMatrix& w, Sampler& sampler) {
    const std::size_t n = w.rows();
    const std::size_t rank = generic_rank(w, sampler).rank;
    std::vector<std::size_t> r;
    auto in_r = [&](std::size_t i) { return std::find(r.begin(), r.end(), i) != r.end(); };
    while (r.size() < rank) {
        bool grown = false;
        for (std::size_t i = 0; i < n && !grown; ++i) {
            if (in_r(i)) continue;
            auto idx = r;
            idx.push_back(i);
            if (nonsingular(w, idx, sampler)) {
                r = idx;
                grown = true;
            }
        }
        for (std::size_t i = 0; i < n && !grown; ++i)
            for (std::size_t j = i + 1; j < n && !grown; ++j) {
                if (in_r(i) || in_r(j)) continue;
                auto idx = r;
                idx.push_back(i);
                idx.push_back(j);
                if (nonsingular(w, idx, sampler)) {
                    r = idx;
                    grown = true;
                }
            }
        if (!grown) throw InternalError("velocity Hessian has no regular principal block of its rank");
        std::sort(r.begin(), r.end());
    }
    return r;
}

Expr substitute_all(Expr e, const std::vector<Expr>& symbols, const Expr& value) {
    for (const auto& s : symbols) e = substitute(e, s, value);
    return e;
}

std::string join_names(const VarTable& t) {
    std::string s;
    for (const auto& v : t.entries()) {
        if (!s.empty()) s += ", ";
        s += v.name;
    }
    return s;
}

SymplecticState lift_mechanical(const SystemDefinition& def, Sampler& sampler) {
    const VarTable decl = def.declarations();
    const std::size_t nq = def.variables.size();
    std::vector<Expr> dq;
    for (const auto& v : def.variables) dq.push_back(Expr::symbol(velocity_name(v)));

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < nq; ++i)
        if (def.kinetic.depends_on(dq[i])) active.push_back(i);

    auto velocity_free = [&](const Expr& e) {
        return std::none_of(dq.begin(), dq.end(), [&](const Expr& d) { return e.depends_on(d); });
    };
    for (const auto& d : dq)
        if (def.potential.depends_on(d)) throw InputError("velocity '" + d.str() + "' appears in the potential");

    const std::size_t na = active.size();
    SymMatrix w(na);
    std::vector<Expr> b(na);
    for (std::size_t i = 0; i < na; ++i) {
        Expr first = differentiate(def.kinetic, dq[active[i]]);
        b[i] = substitute_all(first, dq, Expr());
        for (std::size_t j = 0; j < na; ++j) {
            Expr second = differentiate(first, dq[active[j]]);
            if (!velocity_free(second))
                throw InputError("kinetic term is more than quadratic in velocities");
            w(i, j) = second;
        }
    }
    const Expr t0 = substitute_all(def.kinetic, dq, Expr());

    std::vector<std::size_t> r_local = regular_block(w, sampler);
    std::vector<std::size_t> s_local;
    for (std::size_t i = 0; i < na; ++i)
        if (std::find(r_local.begin(), r_local.end(), i) == r_local.end()) s_local.push_back(i);

    SymplecticState st;
    st.parameters = def.parameters;
    VarTable names = decl;
    std::vector<std::string> momenta;
    for (std::size_t k : r_local) {
        std::string p = names.fresh_name("p_" + def.variables[active[k]]);
        names.add(p, Role::Momentum);
        momenta.push_back(p);
    }

    const std::size_t nr = r_local.size();
    std::vector<Expr> u(nr);
    std::vector<Expr> b_r(nr);
    for (std::size_t a = 0; a < nr; ++a) {
        b_r[a] = b[r_local[a]];
        u[a] = Expr::symbol(momenta[a]) - b_r[a];
    }
    SymMatrix winv = nr == 0 ? SymMatrix(0) : inverse(w.submatrix(r_local, r_local), sampler);
    SymMatrix c = nr == 0 ? SymMatrix(0, s_local.size()) : winv * w.submatrix(r_local, s_local);

    Expr h = def.potential - t0;
    for (std::size_t a = 0; a < nr; ++a)
        for (std::size_t bb = 0; bb < nr; ++bb)
            if (!winv(a, bb).is_zero()) h += Expr(Rational(1, 2)) * u[a] * winv(a, bb) * u[bb];

    std::vector<Expr> a_config(nq);
    for (std::size_t a = 0; a < nr; ++a) a_config[active[r_local[a]]] = Expr::symbol(momenta[a]);
    for (std::size_t s = 0; s < s_local.size(); ++s) {
        Expr comp = b[s_local[s]];
        for (std::size_t a = 0; a < nr; ++a)
            if (!c(a, s).is_zero()) comp += c(a, s) * (Expr::symbol(momenta[a]) - b_r[a]);
        a_config[active[s_local[s]]] = comp;
    }

    std::set<std::string> canonical_q;
    for (std::size_t a = 0; a < nr; ++a) {
        const std::string& q = def.variables[active[r_local[a]]];
        st.canonical_pairs.emplace_back(q, momenta[a]);
        canonical_q.insert(q);
    }
    for (std::size_t i = 0; i < nq; ++i) {
        st.vars.add(def.variables[i], Role::Configuration);
        st.one_form.push_back(a_config[i]);
        if (!canonical_q.count(def.variables[i])) st.noncanonical.push_back(def.variables[i]);
    }
    for (const auto& p : momenta) {
        st.vars.add(p, Role::Momentum);
        st.one_form.emplace_back();
    }
    for (const auto& m : def.multipliers) {
        st.vars.add(m, Role::Multiplier);
        st.one_form.emplace_back();
        st.noncanonical.push_back(m);
    }
    st.potential = h;
    return st;
}

SymplecticState lift_first_order(const SystemDefinition& def) {
    SymplecticState st;
    st.parameters = def.parameters;
    auto component = [&](const std::string& v) {
        auto it = def.one_form.find(v);
        return it == def.one_form.end() ? Expr() : it->second;
    };
    for (const auto& v : def.variables) {
        st.vars.add(v, Role::Configuration);
        st.one_form.push_back(component(v));
        st.noncanonical.push_back(v);
    }
    for (const auto& m : def.multipliers) {
        st.vars.add(m, Role::Multiplier);
        st.one_form.push_back(component(m));
        st.noncanonical.push_back(m);
    }
    st.potential = def.potential;
    return st;
}

}  // namespace

SymplecticState first_order_lift(const SystemDefinition& def, Sampler& sampler) {
    def.validate();
    SymplecticState st = def.mode == Mode::Mechanical ? lift_mechanical(def, sampler) : lift_first_order(def);
    st.matrix = presymplectic_form(st);
    Event e{Event::Kind::Lift, 0, "variables: " + join_names(st.vars), st.potential, {}};
    e.vectors.push_back(st.one_form);
    st.trace.push_back(std::move(e));
    return st;
}

SymplecticState first_order_lift(const SystemDefinition& def) {
    Sampler s;
    return first_order_lift(def, s);
}

ConsistencyOutcome consistency_constraints(const SymplecticState& state, Sampler& sampler) {
    ConsistencyOutcome out;
    KernelBasis k = kernel(state.matrix, sampler);
    out.events.push_back(Event{Event::Kind::Kernel, state.iteration,
                               std::to_string(k.size()) + " kernel vector(s)", std::nullopt, k});
    const std::vector<Expr> grad_v = gradient(state.potential, state.vars);
    std::vector<std::vector<Expr>> rows;
    for (const auto& c : state.constraints) rows.push_back(gradient(c.expr, state.vars));
    for (const auto& v : k) {
        Expr omega;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero() && !grad_v[i].is_zero()) omega += v[i] * grad_v[i];
        if (is_zero(omega, sampler) == ZeroTest::Zero) {
            ++out.null_candidates;
            out.events.push_back(Event{Event::Kind::NullCandidate, state.iteration,
                                       "candidate vanishes identically", omega, {v}});
            continue;
        }
        std::vector<Expr> g = gradient(omega, state.vars);
        auto stacked = rows;
        stacked.push_back(g);
        RankResult rank = generic_rank(SymMatrix::from_rows(stacked), sampler);
        if (rank.rank < stacked.size()) {
            ++out.dependent_candidates;
            out.events.push_back(Event{Event::Kind::DependentCandidate, state.iteration,
                                       "gradient rank " + std::to_string(rank.rank) + " of " +
                                           std::to_string(stacked.size()),
                                       omega, {v}});
            continue;
        }
        rows.push_back(g);
        out.events.push_back(Event{Event::Kind::ConstraintAccepted, state.iteration, "", omega, {v}});
        out.accepted.push_back(Constraint{omega, std::move(g), state.iteration, v, ""});
    }
    return out;
}

SymplecticState border(const SymplecticState& state, const std::vector<Constraint>& constraints) {
    if (constraints.empty()) throw InternalError("border called without constraints");
    SymplecticState next = state;
    VarTable taken = state.vars;
    for (const auto& p : state.parameters)
        if (!taken.contains(p)) taken.add(p, Role::Parameter);
    const std::size_t n = state.vars.size();
    const std::size_t m = constraints.size();
    SymMatrix expected(n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) expected(i, j) = state.matrix(i, j);
    for (std::size_t a = 0; a < m; ++a) {
        Constraint c = constraints[a];
        c.multiplier = taken.fresh_name("lambda" + std::to_string(state.constraints.size() + a + 1));
        taken.add(c.multiplier, Role::Multiplier);
        next.vars.add(c.multiplier, Role::Multiplier);
        next.one_form.push_back(c.expr);
        std::vector<Expr> g = gradient(c.expr, state.vars);
        for (std::size_t j = 0; j < n; ++j) {
            expected(j, n + a) = g[j];
            expected(n + a, j) = -g[j];
        }
        next.trace.push_back(Event{Event::Kind::Border, state.iteration + 1, "multiplier " + c.multiplier, c.expr, {g}});
        next.constraints.push_back(std::move(c));
    }
    next.matrix = presymplectic_form(next);
    if (next.matrix != expected) throw InternalError("rebuilt matrix differs from the bordered form");
    next.iteration = state.iteration + 1;
    return next;
}

ReductionReport reduce(const SystemDefinition& def, const ReduceOptions& options) {
    Sampler sampler(options.seed, options.sampling);
    ReductionReport report;
    report.system_name = def.name;
    report.seed = options.seed;
    SymplecticState state = first_order_lift(def, sampler);
    report.iterates.push_back(state);
    for (;;) {
        Expr det = determinant(state.matrix, sampler);
        ZeroTest z = is_zero(det, sampler);
        state.trace.push_back(Event{Event::Kind::DeterminantTest, state.iteration, to_string(z), det, {}});
        if (z == ZeroTest::Unknown)
            throw DegenerateStratumError("determinant vanishes at every sample point", det.str());
        if (z == ZeroTest::NonZero) {
            report.inverse_extended_matrix = inverse(state.matrix, sampler);
            report.status = MatrixStatus::Regular;
            state.trace.push_back(Event{Event::Kind::Inversion, state.iteration, "", std::nullopt, {}});
            break;
        }
        ConsistencyOutcome out = consistency_constraints(state, sampler);
        for (auto& e : out.events) state.trace.push_back(std::move(e));
        if (out.accepted.empty()) {
            report.status = MatrixStatus::Singular;
            report.diagnostics.emplace_back(out.dependent_candidates == 0 ? null_constraint_message
                                                                          : dependent_constraint_message);
            report.gauge_generators = kernel(state.matrix, sampler);
            state.trace.push_back(Event{Event::Kind::Singular, state.iteration, report.diagnostics.back(),
                                        std::nullopt, *report.gauge_generators});
            break;
        }
        if (state.iteration >= options.max_iterations)
            throw IterationLimitError("iteration limit of " + std::to_string(options.max_iterations) + " reached");
        state = border(state, {out.accepted.front()});
        report.iterates.push_back(state);
    }
    report.iterates.back() = state;
    report.iteration_count = state.iteration;
    report.constraints = state.constraints;
    report.extended_matrix = state.matrix;
    report.extended_one_form = state.one_form;
    report.extended_variables = state.vars;
    report.trace = state.trace;
    return report;
}

}  // namespace fj
