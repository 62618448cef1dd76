#pragma once

// Structural checks on every iterate of a reduction.

#include <string>
#include <vector>

#include "fj/matrix.hpp"
#include "fj/reduction.hpp"

namespace invariants {

inline std::vector<std::string> check(const fj::ReductionReport& r, bool with_pfaffian = true) {
    using namespace fj;
    std::vector<std::string> bad;
    auto fail = [&](const std::string& what, int it) { bad.push_back(r.system_name + " iterate " + std::to_string(it) + ": " + what); };

    for (std::size_t k = 0; k < r.iterates.size(); ++k) {
        const SymplecticState& s = r.iterates[k];
        const SymMatrix& f = s.matrix;
        const int it = s.iteration;
        if (it != static_cast<int>(k)) fail("iteration counter out of step", it);
        if (!f.is_antisymmetric()) fail("matrix is not antisymmetric", it);
        if (presymplectic_form(s) != f) fail("matrix differs from d_i a_j - d_j a_i", it);
        int borders = 0;
        for (const auto& e : s.trace) borders += e.kind == Event::Kind::Border;
        if (borders != it) fail("bordering events do not match the iteration", it);
        if (k > 0) {
            const SymMatrix& prev = r.iterates[k - 1].matrix;
            const std::size_t n = prev.rows();
            const std::size_t m = f.rows() - n;
            if (f.block(0, 0, n, n) != prev) fail("leading block changed", it);
            if (!f.block(n, n, m, m).is_zero()) fail("lower-right block is not zero", it);
            if (f.block(n, 0, m, n) != f.block(0, n, n, m).transpose().map([](const Expr& e) { return -e; }))
                fail("border blocks are not negative transposes", it);
        }
        Expr det = determinant(f);
        if (f.rows() % 2 == 1 && !det.is_zero()) fail("odd-dimensional determinant is not zero", it);
        if (with_pfaffian && f.rows() % 2 == 0 && f.rows() <= pfaffian_default_limit) {
            Expr pf = pfaffian(f);
            if (pf * pf != det) fail("pfaffian squared differs from the determinant", it);
        }
        for (const auto& v : kernel(f))
            for (const auto& e : f * v)
                if (!e.is_zero()) fail("kernel vector does not annihilate the matrix", it);
    }
    for (const auto& c : r.constraints) {
        const SymplecticState& origin = r.iterates.at(static_cast<std::size_t>(c.origin_iteration));
        for (const auto& e : origin.matrix * c.kernel_vector)
            if (!e.is_zero()) fail("constraint source is not a kernel vector", c.origin_iteration);
        std::vector<Expr> g = gradient(origin.potential, origin.vars);
        Expr replay;
        for (std::size_t i = 0; i < g.size(); ++i) replay += c.kernel_vector[i] * g[i];
        if (replay != c.expr) fail("constraint does not replay from its kernel vector", c.origin_iteration);
        if (gradient(c.expr, origin.vars) != c.gradient) fail("stored gradient is stale", c.origin_iteration);
    }
    const int last = r.iteration_count;
    if (r.status == MatrixStatus::Regular) {
        if (!r.inverse_extended_matrix || r.gauge_generators) fail("Regular report shape", last);
        else if (r.extended_matrix * *r.inverse_extended_matrix != SymMatrix::identity(r.extended_matrix.rows()))
            fail("f times its inverse is not the identity", last);
    } else {
        if (r.inverse_extended_matrix || !r.gauge_generators || r.gauge_generators->empty()) fail("Singular report shape", last);
        if (r.diagnostics.empty()) fail("Singular report without a diagnostic", last);
        if (r.gauge_generators)
            for (const auto& v : *r.gauge_generators)
                for (const auto& e : r.extended_matrix * v)
                    if (!e.is_zero()) fail("gauge generator does not annihilate the final matrix", last);
    }
    return bad;
}

}  // namespace invariants
