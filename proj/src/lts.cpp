#include "bipglue/lts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bipglue {

bool is_valid_port_name(std::string_view name) {
    if (name.empty()) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

Port::Port(std::string name) : name_(std::move(name)) {
    if (!is_valid_port_name(name_)) {
        throw ValidationError("invalid port name '" + name_ + "'");
    }
}

PortSet make_ports(std::initializer_list<std::string> names) {
    PortSet out;
    for (const auto& n : names) {
        out.insert(Port(n));
    }
    return out;
}

PortSet port_union(const std::vector<PortSet>& sets) {
    PortSet out;
    for (const auto& s : sets) {
        out.insert(s.begin(), s.end());
    }
    return out;
}

std::string join_ports(const PortSet& ports, const std::string& sep) {
    std::string out;
    for (const auto& p : ports) {
        if (!out.empty()) {
            out += sep;
        }
        out += p.name();
    }
    return out;
}

Interaction::Interaction(const PortSet& ports) : ports_(ports.begin(), ports.end()) {
    if (ports_.empty()) {
        throw ValidationError("interaction must be a non-empty set of ports");
    }
}

Interaction::Interaction(std::initializer_list<std::string> names)
    : Interaction([&] {
          PortSet s;
          for (const auto& n : names) {
              s.insert(Port(n));
          }
          return s;
      }()) {}

Interaction Interaction::parse(std::string_view text) {
    PortSet ports;
    std::string token;
    std::stringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        if (token.empty()) {
            throw ValidationError("empty port name in interaction '" + std::string(text) + "'");
        }
        ports.insert(Port(token));
    }
    if (ports.empty()) {
        throw ValidationError("interaction must be a non-empty set of ports");
    }
    return Interaction(ports);
}

bool Interaction::contains(const Port& p) const {
    return std::binary_search(ports_.begin(), ports_.end(), p);
}

bool Interaction::within(const PortSet& ports) const {
    return std::all_of(ports_.begin(), ports_.end(),
                       [&](const Port& p) { return ports.contains(p); });
}

PortSet Interaction::port_set() const {
    return PortSet(ports_.begin(), ports_.end());
}

std::string Interaction::str() const {
    std::string out;
    for (const auto& p : ports_) {
        if (!out.empty()) {
            out += ',';
        }
        out += p.name();
    }
    return out;
}

std::optional<Interaction> restrict_to(const Interaction& a, const PortSet& ports) {
    PortSet kept;
    for (const auto& p : a.ports()) {
        if (ports.contains(p)) {
            kept.insert(p);
        }
    }
    if (kept.empty()) {
        return std::nullopt;
    }
    return Interaction(kept);
}

Interaction merge(const Interaction& a, const Interaction& b) {
    PortSet ports = a.port_set();
    for (const auto& p : b.ports()) {
        ports.insert(p);
    }
    return Interaction(ports);
}

std::string join_interactions(const InteractionSet& set, const std::string& sep) {
    std::string out;
    for (const auto& a : set) {
        if (!out.empty()) {
            out += sep;
        }
        out += a.str();
    }
    return out;
}

Lts::Lts(std::set<std::string> states, PortSet ports, std::set<Transition> transitions)
    : states_(std::move(states)), ports_(std::move(ports)), transitions_(std::move(transitions)) {
    for (const auto& t : transitions_) {
        if (!states_.contains(t.source)) {
            throw ValidationError("transition source '" + t.source + "' is not a state");
        }
        if (!states_.contains(t.target)) {
            throw ValidationError("transition target '" + t.target + "' is not a state");
        }
        if (!t.label.within(ports_)) {
            throw ValidationError("transition label '" + t.label.str() +
                                  "' uses ports outside the port set");
        }
        enabled_[t.source].insert(t.label);
        targets_[{t.source, t.label}].push_back(t.target);
    }
}

bool Lts::has_state(const std::string& state) const {
    return states_.contains(state);
}

const InteractionSet& Lts::enabled(const std::string& state) const {
    if (!has_state(state)) {
        throw ValidationError("unknown state '" + state + "'");
    }
    static const InteractionSet empty;
    auto it = enabled_.find(state);
    return it == enabled_.end() ? empty : it->second;
}

bool Lts::enables(const std::string& state, const Interaction& label) const {
    return enabled(state).contains(label);
}

std::vector<std::string> Lts::targets(const std::string& state, const Interaction& label) const {
    if (!has_state(state)) {
        throw ValidationError("unknown state '" + state + "'");
    }
    auto it = targets_.find({state, label});
    return it == targets_.end() ? std::vector<std::string>{} : it->second;
}

bool Lts::is_deadlock(const std::string& state) const {
    return enabled(state).empty();
}

std::set<std::string> Lts::deadlock_states() const {
    std::set<std::string> out;
    for (const auto& q : states_) {
        if (is_deadlock(q)) {
            out.insert(q);
        }
    }
    return out;
}

BisimulationResult bisimilar(const Lts& a, const Lts& b) {
    if (a.ports() != b.ports()) {
        return {false, {}, "port mismatch"};
    }

    // Greatest bisimulation via fixpoint refinement of the full relation.
    std::set<std::pair<std::string, std::string>> rel;
    for (const auto& p : a.states()) {
        for (const auto& q : b.states()) {
            rel.insert({p, q});
        }
    }

    auto simulated = [&rel](const Lts& from, const Lts& to, const std::string& p,
                            const std::string& q, bool flipped) {
        for (const auto& label : from.enabled(p)) {
            for (const auto& pp : from.targets(p, label)) {
                bool matched = false;
                for (const auto& qq : to.targets(q, label)) {
                    if (rel.contains(flipped ? std::make_pair(qq, pp) : std::make_pair(pp, qq))) {
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    return false;
                }
            }
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = rel.begin(); it != rel.end();) {
            const auto& [p, q] = *it;
            if (!simulated(a, b, p, q, false) || !simulated(b, a, q, p, true)) {
                it = rel.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }

    std::set<std::string> covered_a, covered_b;
    for (const auto& [p, q] : rel) {
        covered_a.insert(p);
        covered_b.insert(q);
    }
    if (covered_a.size() != a.states().size() || covered_b.size() != b.states().size()) {
        return {false, {}, "no bisimulation total on both state sets"};
    }
    return {true, rel, ""};
}

std::string product_state(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) {
            out += '.';
        }
        out += part;
    }
    return out;
}

} // namespace bipglue
