#pragma once

// Faddeev-Jackiw reduction by matrix bordering.
//
//   lift -> { det test -> inverse (Regular)
//           | kernel -> consistency constraints -> border -> repeat
//           | no usable constraint (Singular) }

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fj/matrix.hpp"
#include "fj/system.hpp"
#include "fj/var_table.hpp"
#include "fj/zero_test.hpp"

namespace fj {

inline constexpr const char* null_constraint_message =
    "Null constraint detected: all new constraints are identically zero.";
inline constexpr const char* dependent_constraint_message =
    "Dependent constraints detected: new constraints are linearly dependent on existing ones.";

struct Constraint {
    Expr expr;
    /// d expr / d xi_j over the variables of the state it was created in.
    std::vector<Expr> gradient;
    int origin_iteration = 0;
    std::vector<Expr> kernel_vector;
    /// Multiplier introduced when the constraint was bordered in.
    std::string multiplier;
};

struct Event {
    enum class Kind {
        Lift,
        DeterminantTest,
        Kernel,
        ConstraintAccepted,
        NullCandidate,
        DependentCandidate,
        Border,
        Inversion,
        Singular,
    };

    Kind kind;
    int iteration = 0;
    std::string detail;
    std::optional<Expr> expression;
    std::vector<std::vector<Expr>> vectors;
};

std::string_view event_name(Event::Kind k);

struct SymplecticState {
    VarTable vars;
    std::vector<Expr> one_form;
    Expr potential;
    SymMatrix matrix;
    int iteration = 0;
    std::vector<Constraint> constraints;
    std::vector<std::string> parameters;
    /// (q, p) pairs created by the Legendre transform.
    std::vector<std::pair<std::string, std::string>> canonical_pairs;
    /// Original variables that are not half of a canonical pair.
    std::vector<std::string> noncanonical;
    std::vector<Event> trace;

    std::vector<Expr> symbols() const;
    /// Variables introduced by bordering.
    std::vector<std::string> fj_multipliers() const;
};

struct ReduceOptions {
    int max_iterations = 8;
    std::uint64_t seed = default_seed;
    SamplingOptions sampling;
};

enum class MatrixStatus { Regular, Singular };

std::string_view status_name(MatrixStatus s);

struct ReductionReport {
    std::string system_name;
    MatrixStatus status = MatrixStatus::Singular;
    int iteration_count = 0;
    std::vector<Constraint> constraints;
    SymMatrix extended_matrix;
    std::vector<Expr> extended_one_form;
    VarTable extended_variables;
    std::optional<SymMatrix> inverse_extended_matrix;
    std::optional<KernelBasis> gauge_generators;
    std::vector<std::string> diagnostics;
    std::vector<Event> trace;
    /// Every state from the lift to the final one.
    std::vector<SymplecticState> iterates;
    std::uint64_t seed = default_seed;

    const SymplecticState& final_state() const { return iterates.back(); }
};

/// Legendre transform on a regular principal block of the velocity Hessian.
/// Velocities outside that block keep their linear one-form terms.
SymplecticState first_order_lift(const SystemDefinition& def, Sampler& sampler);
SymplecticState first_order_lift(const SystemDefinition& def);

/// f_ij = d_i a_j - d_j a_i.
SymMatrix presymplectic_form(const SymplecticState& state);

std::vector<Expr> gradient(const Expr& e, const VarTable& vars);

struct ConsistencyOutcome {
    std::vector<Constraint> accepted;
    std::size_t null_candidates = 0;
    std::size_t dependent_candidates = 0;
    std::vector<Event> events;
};

/// Candidates v . grad V for each kernel vector of the state's matrix.
ConsistencyOutcome consistency_constraints(const SymplecticState& state, Sampler& sampler);

/// Adds one multiplier per constraint with one-form component Omega.
/// Throws InternalError when the rebuilt matrix is not the bordered form.
SymplecticState border(const SymplecticState& state, const std::vector<Constraint>& constraints);

ReductionReport reduce(const SystemDefinition& def, const ReduceOptions& options = {});

}  // namespace fj
