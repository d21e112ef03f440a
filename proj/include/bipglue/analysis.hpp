#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipglue/sos.hpp"

namespace bipglue {

/// The inhibiting relation of an operator: (a, b) when some choice of one
/// negative premise per rule concluding `a` unions to `b`. Depths are the
/// longest-path distances in the induced DAG, defined when acyclic.
class InhibitingRelation {
public:
    explicit InhibitingRelation(PrioritySet pairs);

    const PrioritySet& pairs() const { return pairs_; }
    bool acyclic() const { return depth_.has_value(); }

    // Longest path leading to `a`; 0 for interactions without inhibitors.
    int depth_of(const Interaction& a) const;
    int max_depth() const; // 0 when the relation is empty

    std::set<Interaction> interactions() const;

private:
    PrioritySet pairs_;
    std::optional<std::map<Interaction, int>> depth_;
};

// Raised when a layered compilation is refused; carries the offending cycle.
class CycleError : public Error {
public:
    explicit CycleError(std::vector<Interaction> cycle);
    const std::vector<Interaction>& cycle() const { return cycle_; }

private:
    std::vector<Interaction> cycle_;
};

InhibitingRelation inhibiting_relation(const SosOperator& op,
                                       std::size_t mapping_budget = kDefaultMappingBudget);

// A cycle a1 < a2 < ... < ak < a1 when one exists, rotated to start at the
// lexicographically least interaction on it.
std::optional<std::vector<Interaction>> detect_cycle(const InhibitingRelation& rel);

// Splits an acyclic relation by the depth of the inhibited interaction:
// layer i holds the pairs whose low side has depth i-1. Each layer is a
// strict partial order (asserted). Throws CycleError on cyclic input.
std::vector<PrioritySet> depth_layers(const InhibitingRelation& rel);

enum class Verdict { expressible, not_expressible, unknown };

std::string to_string(Verdict v);

struct Classification {
    bool acyclic = true;
    int depth_max = 0; // meaningful when acyclic
    std::map<std::string, Verdict> verdicts;
    std::optional<std::vector<Interaction>> cycle;
    PrioritySet pairs;
    std::vector<PrioritySet> layers; // empty when cyclic
};

// Expressiveness verdicts keyed "classical-weak", "classical-strong",
// "relaxed-weak" and "simultaneous-strong".
Classification classify(const SosOperator& op,
                        std::size_t mapping_budget = kDefaultMappingBudget);

// Builds the per-component witness behaviours for a cycle a1 < ... < ak:
// states 0, 1..k and F; state i moves to F on the component's share of a_i
// when non-empty; F loops on every share. State 0 has no transitions.
std::vector<Lts> cycle_witness(const SosOperator& op, const std::vector<Interaction>& cycle);

// The product state of the witnesses in which every component sits on F.
std::string witness_all_final_state(const SosOperator& op);

// The product state from which only a_i should fire: component j sits on
// i+1 when it shares in a_i, on 0 otherwise (i is 0-based here).
std::string witness_mixed_state(const SosOperator& op, const std::vector<Interaction>& cycle,
                                std::size_t i);

} // namespace bipglue
