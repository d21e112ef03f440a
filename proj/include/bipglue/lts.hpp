#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bipglue/error.hpp"

namespace bipglue {

/// A named synchronization point. Names are non-empty tokens of letters,
/// digits and underscores.
class Port {
public:
    explicit Port(std::string name);

    const std::string& name() const { return name_; }

    friend bool operator==(const Port&, const Port&) = default;
    friend auto operator<=>(const Port&, const Port&) = default;

private:
    std::string name_;
};

using PortSet = std::set<Port>;

bool is_valid_port_name(std::string_view name);
PortSet make_ports(std::initializer_list<std::string> names);
PortSet port_union(const std::vector<PortSet>& sets);
std::string join_ports(const PortSet& ports, const std::string& sep);

/// A non-empty set of ports fired together. Ports are kept sorted, so
/// equality and ordering are canonical.
class Interaction {
public:
    explicit Interaction(const PortSet& ports);
    Interaction(std::initializer_list<std::string> names);

    // Parses a comma-joined port list, e.g. "q,r".
    static Interaction parse(std::string_view text);

    const std::vector<Port>& ports() const { return ports_; }
    std::size_t size() const { return ports_.size(); }
    bool contains(const Port& p) const;
    bool within(const PortSet& ports) const;
    PortSet port_set() const;

    std::string str() const; // comma-joined names

    friend bool operator==(const Interaction&, const Interaction&) = default;
    friend auto operator<=>(const Interaction&, const Interaction&) = default;

private:
    std::vector<Port> ports_;
};

using InteractionSet = std::set<Interaction>;

// a ∩ ports, when non-empty.
std::optional<Interaction> restrict_to(const Interaction& a, const PortSet& ports);
Interaction merge(const Interaction& a, const Interaction& b);
std::string join_interactions(const InteractionSet& set, const std::string& sep);

struct Transition {
    std::string source;
    Interaction label;
    std::string target;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A finite labelled transition system: states, ports and transitions
/// labelled by interactions. Immutable after construction; duplicate
/// transitions collapse by set semantics.
class Lts {
public:
    Lts(std::set<std::string> states, PortSet ports, std::set<Transition> transitions);

    const std::set<std::string>& states() const { return states_; }
    const PortSet& ports() const { return ports_; }
    const std::set<Transition>& transitions() const { return transitions_; }

    bool has_state(const std::string& state) const;

    // Interactions with at least one outgoing transition from `state`.
    const InteractionSet& enabled(const std::string& state) const;
    bool enables(const std::string& state, const Interaction& label) const;
    std::vector<std::string> targets(const std::string& state, const Interaction& label) const;

    bool is_deadlock(const std::string& state) const;
    std::set<std::string> deadlock_states() const;

    friend bool operator==(const Lts& a, const Lts& b) {
        return a.states_ == b.states_ && a.ports_ == b.ports_ && a.transitions_ == b.transitions_;
    }

private:
    std::set<std::string> states_;
    PortSet ports_;
    std::set<Transition> transitions_;
    std::map<std::string, InteractionSet> enabled_;
    std::map<std::pair<std::string, Interaction>, std::vector<std::string>> targets_;
};

struct BisimulationResult {
    bool bisimilar = false;
    // Greatest bisimulation, present when `bisimilar`. Pairs are
    // (state of a, state of b).
    std::set<std::pair<std::string, std::string>> relation;
    std::string reason; // non-empty on a negative verdict
};

// Greatest-bisimulation check, total on both state sets (ports must match).
BisimulationResult bisimilar(const Lts& a, const Lts& b);

// Positional product-state rendering: parts joined with '.'.
std::string product_state(const std::vector<std::string>& parts);

} // namespace bipglue
