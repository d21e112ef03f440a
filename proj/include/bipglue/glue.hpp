#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bipglue/lts.hpp"

namespace bipglue {

enum class PriorityMode { classical, relaxed, simultaneous };

std::string to_string(PriorityMode mode);
PriorityMode parse_priority_mode(std::string_view text);

/// One priority pair: `low` is suppressed whenever `high` is enabled.
struct PriorityPair {
    Interaction low;
    Interaction high;

    friend bool operator==(const PriorityPair&, const PriorityPair&) = default;
    friend auto operator<=>(const PriorityPair&, const PriorityPair&) = default;
};

using PrioritySet = std::set<PriorityPair>;

class PriorityModel {
public:
    PriorityModel() : mode_(PriorityMode::classical) {}
    PriorityModel(PrioritySet pairs, PriorityMode mode)
        : pairs_(std::move(pairs)), mode_(mode) {}

    const PrioritySet& pairs() const { return pairs_; }
    PriorityMode mode() const { return mode_; }
    bool empty() const { return pairs_.empty(); }

    InteractionSet higher_than(const Interaction& low) const;

    friend bool operator==(const PriorityModel&, const PriorityModel&) = default;

private:
    PrioritySet pairs_;
    PriorityMode mode_;
};

/// The set of allowed interactions over a port set.
class InteractionModel {
public:
    InteractionModel() = default;
    InteractionModel(PortSet ports, InteractionSet interactions)
        : ports_(std::move(ports)), interactions_(std::move(interactions)) {}

    const PortSet& ports() const { return ports_; }
    const InteractionSet& interactions() const { return interactions_; }
    bool contains(const Interaction& a) const { return interactions_.contains(a); }

    friend bool operator==(const InteractionModel&, const InteractionModel&) = default;

private:
    PortSet ports_;
    InteractionSet interactions_;
};

/// An n-ary glue operator: a port partition, an interaction model over the
/// union of the partition, and a priority model. Construction does not
/// validate; see validate_glue.
class GlueOperator {
public:
    GlueOperator(std::vector<PortSet> partition, InteractionModel gamma, PriorityModel pi)
        : partition_(std::move(partition)), gamma_(std::move(gamma)), pi_(std::move(pi)) {}

    const std::vector<PortSet>& partition() const { return partition_; }
    std::size_t arity() const { return partition_.size(); }
    const InteractionModel& gamma() const { return gamma_; }
    const PriorityModel& pi() const { return pi_; }

    friend bool operator==(const GlueOperator&, const GlueOperator&) = default;

private:
    std::vector<PortSet> partition_;
    InteractionModel gamma_;
    PriorityModel pi_;
};

struct GlueValidation {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> notes; // informational, e.g. priority acyclicity
};

// Verdict-producing well-formedness check. Classical mode demands a strict
// partial order within gamma x gamma; relaxed only containment; simultaneous
// only that priority pairs stay within the operator's ports.
GlueValidation validate_glue(const GlueOperator& op);

// Synchronous composition: product states, transitions per the interaction
// rule (all components involved in `a` fire their part, the rest stay put).
Lts apply_interaction(const InteractionModel& gamma, const std::vector<PortSet>& partition,
                      const std::vector<Lts>& components);

// Keeps a transition iff no higher-priority interaction is enabled at its
// source in the operand LTS. Classical and relaxed modes only.
Lts apply_priority(const PriorityModel& pi, const Lts& behaviour);

// Priority staged after interaction (classical/relaxed), or the combined
// one-step semantics (simultaneous).
Lts apply_glue(const GlueOperator& op, const std::vector<Lts>& components);

// Combined application: an interaction fires iff its positive parts fire and
// every higher-priority interaction has a disabled part in some involved
// component. Requires simultaneous mode.
Lts apply_simultaneous(const GlueOperator& op, const std::vector<Lts>& components);

/// A hierarchical glue expression: leaves are component variables Z1..Zn,
/// each used exactly once; internal nodes apply a glue operator to their
/// children.
class GlueExpression {
public:
    static GlueExpression leaf(std::size_t var_index);
    static GlueExpression node(std::string name, GlueOperator op,
                               std::vector<GlueExpression> children);

    bool is_leaf() const { return !op_; }
    std::size_t var_index() const;
    const std::string& name() const { return name_; }
    const GlueOperator& op() const;
    const std::vector<GlueExpression>& children() const { return children_; }

    // Number of distinct variables; leaf indices must form [0, arity).
    std::size_t variable_count() const;

    std::string str() const; // e.g. "(G2 (G1pi1 Z1 Z2))"

private:
    GlueExpression() = default;

    std::size_t var_index_ = 0;
    std::string name_;
    std::shared_ptr<const GlueOperator> op_;
    std::vector<GlueExpression> children_;
};

// Bottom-up evaluation: bindings[i] substitutes for Z(i+1).
Lts eval_expression(const GlueExpression& expr, const std::vector<Lts>& bindings);

} // namespace bipglue
