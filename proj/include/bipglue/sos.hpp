#pragma once

#include <cstddef>
#include <vector>

#include "bipglue/glue.hpp"
#include "bipglue/lts.hpp"

namespace bipglue {

inline constexpr std::size_t kDefaultMappingBudget = 1'000'000;

/// One negative premise: component `component` (0-based) must not enable
/// `label` (a non-empty interaction over that component's ports).
struct NegativePremise {
    std::size_t component;
    Interaction label;

    friend bool operator==(const NegativePremise&, const NegativePremise&) = default;
    friend auto operator<=>(const NegativePremise&, const NegativePremise&) = default;
};

/// A rule in the BIP-like format: the conclusion label induces the positive
/// premises (every component overlapping the label fires its share), plus a
/// set of per-component negative premises.
struct SosRule {
    Interaction label;
    std::set<NegativePremise> premises;

    friend bool operator==(const SosRule&, const SosRule&) = default;
    friend auto operator<=>(const SosRule&, const SosRule&) = default;
};

/// An n-ary operator given by a port partition and a rule list. Rule indices
/// are stable; construction does not validate (see validate_operator).
class SosOperator {
public:
    SosOperator(std::vector<PortSet> partition, std::vector<SosRule> rules)
        : partition_(std::move(partition)), rules_(std::move(rules)) {}

    const std::vector<PortSet>& partition() const { return partition_; }
    std::size_t arity() const { return partition_.size(); }
    const std::vector<SosRule>& rules() const { return rules_; }
    PortSet ports() const { return port_union(partition_); }

    friend bool operator==(const SosOperator&, const SosOperator&) = default;

private:
    std::vector<PortSet> partition_;
    std::vector<SosRule> rules_;
};

struct RuleGroup {
    Interaction interaction;
    std::vector<std::size_t> rule_indices;
};

struct OperatorValidation {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> notes; // e.g. duplicate rules
};

OperatorValidation validate_operator(const SosOperator& op);

// Rule indices partitioned by conclusion label, in label order.
std::vector<RuleGroup> group_rules(const SosOperator& op);

// Direct rule-by-rule evaluation over the full product state space. This is
// the reference semantics every compilation is checked against.
Lts apply_sos(const SosOperator& op, const std::vector<Lts>& components);

// Translates a glue operator into rules: one premise-free rule per
// uninhibited interaction, otherwise one rule per choice of an involved
// component for each higher-priority interaction, carrying that component's
// share as a negative premise. Generated duplicates are collapsed.
SosOperator glue_to_sos(const GlueOperator& op,
                        std::size_t mapping_budget = kDefaultMappingBudget);

} // namespace bipglue
