#include "bipglue/compile.hpp"

#include <random>

namespace bipglue {

std::string to_string(CompileTarget target) {
    switch (target) {
    case CompileTarget::layered_classical:
        return "layered";
    case CompileTarget::relaxed:
        return "relaxed";
    case CompileTarget::simultaneous:
        return "simultaneous";
    }
    return "?";
}

CompileTarget parse_compile_target(std::string_view text) {
    if (text == "layered") {
        return CompileTarget::layered_classical;
    }
    if (text == "relaxed") {
        return CompileTarget::relaxed;
    }
    if (text == "simultaneous") {
        return CompileTarget::simultaneous;
    }
    throw ParseError("unknown compile target '" + std::string(text) + "'");
}

namespace {

struct GammaPair {
    InteractionModel gamma1;
    InteractionModel gamma2;
};

GammaPair interaction_models(const SosOperator& op, const InhibitingRelation& rel) {
    PortSet ports = op.ports();
    InteractionSet labels;
    for (const auto& rule : op.rules()) {
        labels.insert(rule.label);
    }
    InteractionSet extended = labels;
    for (const auto& [_, high] : rel.pairs()) {
        extended.insert(high);
    }
    return {InteractionModel(ports, std::move(extended)), InteractionModel(ports, std::move(labels))};
}

std::vector<GlueExpression> leaves(std::size_t n) {
    std::vector<GlueExpression> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(GlueExpression::leaf(i));
    }
    return out;
}

// Layers above the innermost node are unary over the merged port set.
std::vector<PortSet> merged_partition(const SosOperator& op) {
    return {op.ports()};
}

void require_valid(const SosOperator& op) {
    OperatorValidation v = validate_operator(op);
    if (!v.valid) {
        throw ValidationError("invalid operator: " + v.errors.front());
    }
}

} // namespace

CompilationResult compile_layered(const SosOperator& op, std::size_t mapping_budget) {
    require_valid(op);
    InhibitingRelation rel = inhibiting_relation(op, mapping_budget);
    if (!rel.acyclic()) {
        auto cycle = detect_cycle(rel);
        throw CycleError(cycle ? *cycle : std::vector<Interaction>{});
    }
    auto [gamma1, gamma2] = interaction_models(op, rel);
    std::vector<PrioritySet> layers = depth_layers(rel);

    GlueExpression expr = [&] {
        if (layers.empty()) {
            return GlueExpression::node(
                "G2", GlueOperator(op.partition(), gamma2, PriorityModel({}, PriorityMode::classical)),
                leaves(op.arity()));
        }
        GlueExpression inner = GlueExpression::node(
            "G1pi1",
            GlueOperator(op.partition(), gamma1, PriorityModel(layers[0], PriorityMode::classical)),
            leaves(op.arity()));
        for (std::size_t i = 1; i < layers.size(); ++i) {
            inner = GlueExpression::node(
                "G1pi" + std::to_string(i + 1),
                GlueOperator(merged_partition(op), gamma1,
                             PriorityModel(layers[i], PriorityMode::classical)),
                {std::move(inner)});
        }
        return GlueExpression::node(
            "G2",
            GlueOperator(merged_partition(op), gamma2, PriorityModel({}, PriorityMode::classical)),
            {std::move(inner)});
    }();

    for (const auto& layer : layers) {
        GlueOperator node(op.partition(), gamma1, PriorityModel(layer, PriorityMode::classical));
        GlueValidation gv = validate_glue(node);
        if (!gv.valid) {
            throw ValidationError("internal defect: generated layer is not a valid glue operator: " +
                                  gv.errors.front());
        }
    }

    return {CompileTarget::layered_classical, std::move(expr), std::move(gamma1), std::move(gamma2),
            std::move(layers)};
}

CompilationResult compile_relaxed(const SosOperator& op, std::size_t mapping_budget) {
    require_valid(op);
    InhibitingRelation rel = inhibiting_relation(op, mapping_budget);
    auto [gamma1, gamma2] = interaction_models(op, rel);

    GlueExpression inner = GlueExpression::node(
        "G1pi", GlueOperator(op.partition(), gamma1, PriorityModel(rel.pairs(), PriorityMode::relaxed)),
        leaves(op.arity()));
    GlueExpression expr = GlueExpression::node(
        "G2", GlueOperator(merged_partition(op), gamma2, PriorityModel({}, PriorityMode::classical)),
        {std::move(inner)});

    return {CompileTarget::relaxed, std::move(expr), std::move(gamma1), std::move(gamma2),
            {rel.pairs()}};
}

CompilationResult compile_simultaneous(const SosOperator& op, std::size_t mapping_budget) {
    require_valid(op);
    InhibitingRelation rel = inhibiting_relation(op, mapping_budget);
    auto [gamma1, gamma2] = interaction_models(op, rel);

    GlueExpression expr = GlueExpression::node(
        "G2pi",
        GlueOperator(op.partition(), gamma2, PriorityModel(rel.pairs(), PriorityMode::simultaneous)),
        leaves(op.arity()));

    return {CompileTarget::simultaneous, std::move(expr), std::move(gamma1), std::move(gamma2),
            {rel.pairs()}};
}

VerificationReport verify_compilation(const SosOperator& op, const CompilationResult& result,
                                      const std::vector<std::vector<Lts>>& behaviour_tuples) {
    VerificationReport report;
    for (std::size_t t = 0; t < behaviour_tuples.size(); ++t) {
        const auto& tuple = behaviour_tuples[t];
        Lts oracle = apply_sos(op, tuple);
        Lts compiled = eval_expression(result.expression, tuple);
        if (oracle.states() != compiled.states() || oracle.ports() != compiled.ports()) {
            throw ValidationError("compiled expression does not range over the oracle state space");
        }
        ++report.behaviours_tested;
        if (oracle.transitions() == compiled.transitions()) {
            continue;
        }
        report.equal = false;
        for (const auto& tr : oracle.transitions()) {
            if (!compiled.transitions().contains(tr)) {
                report.first_discrepancy =
                    Discrepancy{t, tr.source, tr.label, tr.target, "oracle-only"};
                return report;
            }
        }
        for (const auto& tr : compiled.transitions()) {
            if (!oracle.transitions().contains(tr)) {
                report.first_discrepancy =
                    Discrepancy{t, tr.source, tr.label, tr.target, "compiled-only"};
                return report;
            }
        }
    }
    return report;
}

namespace {

// mt19937_64 output mapped explicitly so results do not depend on the
// standard library's distribution implementations.
std::uint64_t next_u64(std::mt19937_64& rng) {
    return rng();
}

std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(next_u64(rng) % bound);
}

bool chance(std::mt19937_64& rng, double probability) {
    double u = static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
    return u < probability;
}

std::vector<Interaction> all_labels(const PortSet& ports) {
    std::vector<Port> list(ports.begin(), ports.end());
    std::vector<Interaction> out;
    for (std::size_t mask = 1; mask < (1u << list.size()); ++mask) {
        PortSet subset;
        for (std::size_t b = 0; b < list.size(); ++b) {
            if (mask & (1u << b)) {
                subset.insert(list[b]);
            }
        }
        out.emplace_back(subset);
    }
    return out;
}

} // namespace

std::vector<std::vector<Lts>> random_behaviours(const std::vector<PortSet>& partition,
                                                std::uint64_t seed, std::size_t count,
                                                int max_states, double density) {
    if (max_states < 1) {
        throw ValidationError("max_states must be at least 1");
    }
    if (density < 0.0 || density > 1.0) {
        throw ValidationError("density must lie in [0, 1]");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Lts>> tuples;
    tuples.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::vector<Lts> tuple;
        tuple.reserve(partition.size());
        for (const auto& ports : partition) {
            std::size_t k = 1 + pick(rng, static_cast<std::size_t>(max_states));
            std::set<std::string> states;
            std::vector<std::string> names;
            for (std::size_t s = 1; s <= k; ++s) {
                names.push_back(std::to_string(s));
                states.insert(names.back());
            }
            std::set<Transition> transitions;
            for (const auto& src : names) {
                for (const auto& label : all_labels(ports)) {
                    for (const auto& dst : names) {
                        if (chance(rng, density)) {
                            transitions.insert({src, label, dst});
                        }
                    }
                }
            }
            tuple.emplace_back(std::move(states), ports, std::move(transitions));
        }
        tuples.push_back(std::move(tuple));
    }
    return tuples;
}

} // namespace bipglue
