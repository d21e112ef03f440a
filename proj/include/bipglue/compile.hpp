#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipglue/analysis.hpp"
#include "bipglue/glue.hpp"
#include "bipglue/sos.hpp"

namespace bipglue {

enum class CompileTarget { layered_classical, relaxed, simultaneous };

std::string to_string(CompileTarget target);
CompileTarget parse_compile_target(std::string_view text);

struct CompilationResult {
    CompileTarget target;
    GlueExpression expression;
    InteractionModel gamma1; // rule labels plus every premise-choice union
    InteractionModel gamma2; // rule labels
    std::vector<PrioritySet> layers;
};

// Layered compilation: innermost node composes the components under
// (gamma1, layer 1), each further layer reapplies gamma1 under the next
// depth slice, and the outermost node restricts to gamma2. Exactly
// depth+1 nodes. Refused (CycleError) when the inhibiting relation is
// cyclic.
CompilationResult compile_layered(const SosOperator& op,
                                  std::size_t mapping_budget = kDefaultMappingBudget);

// Two nodes: (gamma1, full inhibiting relation) in relaxed mode under a
// (gamma2, empty) cap. Cycles permitted.
CompilationResult compile_relaxed(const SosOperator& op,
                                  std::size_t mapping_budget = kDefaultMappingBudget);

// A single node (gamma2, inhibiting relation) in simultaneous mode.
CompilationResult compile_simultaneous(const SosOperator& op,
                                       std::size_t mapping_budget = kDefaultMappingBudget);

struct Discrepancy {
    std::size_t tuple_index = 0;
    std::string state;
    Interaction label{{"x"}};
    std::string target;
    std::string side; // "oracle-only" or "compiled-only"
};

struct VerificationReport {
    bool equal = true;
    std::size_t behaviours_tested = 0;
    std::optional<Discrepancy> first_discrepancy;
};

// Literal transition-set comparison of the compiled expression against the
// rule semantics on each behaviour tuple. State spaces coincide by
// construction, so equality here is semantic-map equality, not mere
// bisimilarity.
VerificationReport verify_compilation(const SosOperator& op, const CompilationResult& result,
                                      const std::vector<std::vector<Lts>>& behaviour_tuples);

// Deterministic pseudorandom component tuples: per component, between 1 and
// max_states states and each possible (state, label, state) transition kept
// with probability `density`. Same arguments, same output.
std::vector<std::vector<Lts>> random_behaviours(const std::vector<PortSet>& partition,
                                                std::uint64_t seed, std::size_t count,
                                                int max_states, double density);

} // namespace bipglue
