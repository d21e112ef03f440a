#include "bipglue/glue.hpp"

#include <algorithm>
#include <functional>

namespace bipglue {

std::string to_string(PriorityMode mode) {
    switch (mode) {
    case PriorityMode::classical:
        return "classical";
    case PriorityMode::relaxed:
        return "relaxed";
    case PriorityMode::simultaneous:
        return "simultaneous";
    }
    return "?";
}

PriorityMode parse_priority_mode(std::string_view text) {
    if (text == "classical") {
        return PriorityMode::classical;
    }
    if (text == "relaxed") {
        return PriorityMode::relaxed;
    }
    if (text == "simultaneous") {
        return PriorityMode::simultaneous;
    }
    throw ParseError("unknown priority mode '" + std::string(text) + "'");
}

InteractionSet PriorityModel::higher_than(const Interaction& low) const {
    InteractionSet out;
    for (const auto& [a, b] : pairs_) {
        if (a == low) {
            out.insert(b);
        }
    }
    return out;
}

namespace {

bool pairwise_disjoint(const std::vector<PortSet>& partition, std::string* clash) {
    PortSet seen;
    for (const auto& ps : partition) {
        for (const auto& p : ps) {
            if (!seen.insert(p).second) {
                if (clash) {
                    *clash = p.name();
                }
                return false;
            }
        }
    }
    return true;
}

// Acyclicity of the priority pairs viewed as a digraph on interactions.
bool priority_acyclic(const PrioritySet& pairs) {
    std::map<Interaction, InteractionSet> succ;
    std::set<Interaction> nodes;
    for (const auto& [a, b] : pairs) {
        succ[a].insert(b);
        nodes.insert(a);
        nodes.insert(b);
    }
    std::map<Interaction, int> mark; // 0 unseen, 1 active, 2 done
    std::function<bool(const Interaction&)> dfs = [&](const Interaction& v) {
        mark[v] = 1;
        for (const auto& w : succ[v]) {
            if (mark[w] == 1 || (mark[w] == 0 && !dfs(w))) {
                return false;
            }
        }
        mark[v] = 2;
        return true;
    };
    for (const auto& v : nodes) {
        if (mark[v] == 0 && !dfs(v)) {
            return false;
        }
    }
    return true;
}

void check_components(const std::vector<PortSet>& partition, const std::vector<Lts>& components) {
    if (components.size() != partition.size()) {
        throw ValidationError("expected " + std::to_string(partition.size()) +
                              " components, got " + std::to_string(components.size()));
    }
    std::string clash;
    if (!pairwise_disjoint(partition, &clash)) {
        throw ValidationError("port '" + clash + "' appears in two components of the partition");
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].ports() != partition[i]) {
            throw ValidationError("component " + std::to_string(i + 1) +
                                  " ports do not match its slot in the partition");
        }
    }
}

struct ProductSpace {
    std::vector<std::vector<std::string>> component_states;
    std::set<std::string> states;
};

ProductSpace product_space(const std::vector<Lts>& components) {
    ProductSpace space;
    for (const auto& c : components) {
        space.component_states.emplace_back(c.states().begin(), c.states().end());
    }
    std::vector<std::string> current(components.size());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == components.size()) {
            space.states.insert(product_state(current));
            return;
        }
        for (const auto& q : space.component_states[i]) {
            current[i] = q;
            walk(i + 1);
        }
    };
    walk(0);
    return space;
}

// Every way of firing `a` from `source`: per involved component all targets,
// uninvolved components stay put.
void fire_combinations(const Interaction& a, const std::vector<PortSet>& partition,
                       const std::vector<Lts>& components, const std::vector<std::string>& source,
                       std::set<Transition>* out) {
    std::size_t n = components.size();
    std::vector<std::optional<Interaction>> part(n);
    std::vector<std::vector<std::string>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        part[i] = restrict_to(a, partition[i]);
        if (part[i]) {
            choices[i] = components[i].targets(source[i], *part[i]);
            if (choices[i].empty()) {
                return; // some involved component cannot fire its share
            }
        } else {
            choices[i] = {source[i]};
        }
    }
    std::vector<std::string> target(n);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
            out->insert({product_state(source), a, product_state(target)});
            return;
        }
        for (const auto& q : choices[i]) {
            target[i] = q;
            walk(i + 1);
        }
    };
    walk(0);
}

} // namespace

GlueValidation validate_glue(const GlueOperator& op) {
    GlueValidation v;
    auto fail = [&](std::string msg) {
        v.valid = false;
        v.errors.push_back(std::move(msg));
    };

    std::string clash;
    if (!pairwise_disjoint(op.partition(), &clash)) {
        fail("port '" + clash + "' appears in more than one component of the partition");
    }
    PortSet all = port_union(op.partition());
    if (op.gamma().ports() != all) {
        fail("interaction model ports differ from the union of the partition");
    }
    for (const auto& a : op.gamma().interactions()) {
        if (!a.within(op.gamma().ports())) {
            fail("interaction '" + a.str() + "' uses ports outside the operator");
        }
    }

    const auto& pi = op.pi();
    const bool within_gamma_required = pi.mode() != PriorityMode::simultaneous;
    for (const auto& [low, high] : pi.pairs()) {
        if (within_gamma_required) {
            if (!op.gamma().contains(low)) {
                fail("priority '" + low.str() + " < " + high.str() +
                     "': lower side is not an allowed interaction");
            }
            if (!op.gamma().contains(high)) {
                fail("priority '" + low.str() + " < " + high.str() +
                     "': higher side is not an allowed interaction");
            }
        } else {
            if (!low.within(all) || !high.within(all)) {
                fail("priority '" + low.str() + " < " + high.str() +
                     "' uses ports outside the operator");
            }
        }
    }

    if (pi.mode() == PriorityMode::classical) {
        for (const auto& [low, high] : pi.pairs()) {
            if (low == high) {
                fail("priority model is not irreflexive: '" + low.str() + " < " + low.str() + "'");
            }
        }
        for (const auto& [a, b] : pi.pairs()) {
            for (const auto& [c, d] : pi.pairs()) {
                if (b == c && !pi.pairs().contains({a, d})) {
                    fail("priority model is not transitive: missing '" + a.str() + " < " +
                         d.str() + "'");
                }
            }
        }
        if (v.valid) {
            // Asymmetry follows from irreflexivity and transitivity.
            for (const auto& [a, b] : pi.pairs()) {
                if (pi.pairs().contains({b, a})) {
                    fail("priority model is not asymmetric: '" + a.str() + "' and '" + b.str() +
                         "' dominate each other");
                }
            }
        }
    }

    v.notes.push_back(priority_acyclic(pi.pairs()) ? "priority relation is acyclic"
                                                   : "priority relation has a cycle");
    return v;
}

Lts apply_interaction(const InteractionModel& gamma, const std::vector<PortSet>& partition,
                      const std::vector<Lts>& components) {
    check_components(partition, components);
    PortSet all = port_union(partition);
    if (gamma.ports() != all) {
        throw ValidationError("interaction model ports differ from the union of the partition");
    }

    ProductSpace space = product_space(components);
    std::set<Transition> transitions;
    std::vector<std::string> source(components.size());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == components.size()) {
            for (const auto& a : gamma.interactions()) {
                fire_combinations(a, partition, components, source, &transitions);
            }
            return;
        }
        for (const auto& q : space.component_states[i]) {
            source[i] = q;
            walk(i + 1);
        }
    };
    walk(0);
    return Lts(space.states, all, std::move(transitions));
}

Lts apply_priority(const PriorityModel& pi, const Lts& behaviour) {
    if (pi.mode() == PriorityMode::simultaneous) {
        throw ValidationError("simultaneous priority models require apply_simultaneous");
    }
    for (const auto& [low, high] : pi.pairs()) {
        if (!low.within(behaviour.ports()) || !high.within(behaviour.ports())) {
            throw ValidationError("priority '" + low.str() + " < " + high.str() +
                                  "' uses ports outside the behaviour");
        }
    }

    std::set<Transition> kept;
    for (const auto& t : behaviour.transitions()) {
        bool blocked = false;
        for (const auto& [low, high] : pi.pairs()) {
            if (low == t.label && behaviour.enables(t.source, high)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            kept.insert(t);
        }
    }
    return Lts(behaviour.states(), behaviour.ports(), std::move(kept));
}

Lts apply_glue(const GlueOperator& op, const std::vector<Lts>& components) {
    GlueValidation v = validate_glue(op);
    if (!v.valid) {
        throw ValidationError("invalid glue operator: " + v.errors.front());
    }
    if (op.pi().mode() == PriorityMode::simultaneous) {
        return apply_simultaneous(op, components);
    }
    return apply_priority(op.pi(), apply_interaction(op.gamma(), op.partition(), components));
}

Lts apply_simultaneous(const GlueOperator& op, const std::vector<Lts>& components) {
    if (op.pi().mode() != PriorityMode::simultaneous) {
        throw ValidationError("apply_simultaneous requires a simultaneous-mode priority model");
    }
    GlueValidation v = validate_glue(op);
    if (!v.valid) {
        throw ValidationError("invalid glue operator: " + v.errors.front());
    }
    check_components(op.partition(), components);

    const auto& partition = op.partition();
    ProductSpace space = product_space(components);
    std::set<Transition> transitions;

    // A higher-priority interaction blocks unless some involved component
    // cannot fire its share. This is the choice-mapping rule family folded
    // per interaction; the equivalence is asserted by brute force in tests.
    auto some_part_disabled = [&](const Interaction& high, const std::vector<std::string>& q) {
        for (std::size_t j = 0; j < partition.size(); ++j) {
            auto part = restrict_to(high, partition[j]);
            if (part && !components[j].enables(q[j], *part)) {
                return true;
            }
        }
        return false;
    };

    std::vector<std::string> source(components.size());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == components.size()) {
            for (const auto& a : op.gamma().interactions()) {
                bool allowed = true;
                for (const auto& high : op.pi().higher_than(a)) {
                    if (!some_part_disabled(high, source)) {
                        allowed = false;
                        break;
                    }
                }
                if (allowed) {
                    fire_combinations(a, partition, components, source, &transitions);
                }
            }
            return;
        }
        for (const auto& q : space.component_states[i]) {
            source[i] = q;
            walk(i + 1);
        }
    };
    walk(0);
    return Lts(space.states, port_union(partition), std::move(transitions));
}

GlueExpression GlueExpression::leaf(std::size_t var_index) {
    GlueExpression e;
    e.var_index_ = var_index;
    return e;
}

GlueExpression GlueExpression::node(std::string name, GlueOperator op,
                                    std::vector<GlueExpression> children) {
    if (op.arity() != children.size()) {
        throw ValidationError("glue node '" + name + "' has arity " + std::to_string(op.arity()) +
                              " but " + std::to_string(children.size()) + " children");
    }
    GlueExpression e;
    e.name_ = std::move(name);
    e.op_ = std::make_shared<const GlueOperator>(std::move(op));
    e.children_ = std::move(children);
    return e;
}

std::size_t GlueExpression::var_index() const {
    if (!is_leaf()) {
        throw ValidationError("not a leaf expression");
    }
    return var_index_;
}

const GlueOperator& GlueExpression::op() const {
    if (is_leaf()) {
        throw ValidationError("leaf expression has no operator");
    }
    return *op_;
}

namespace {

void collect_vars(const GlueExpression& e, std::vector<std::size_t>* out) {
    if (e.is_leaf()) {
        out->push_back(e.var_index());
        return;
    }
    for (const auto& c : e.children()) {
        collect_vars(c, out);
    }
}

} // namespace

std::size_t GlueExpression::variable_count() const {
    std::vector<std::size_t> vars;
    collect_vars(*this, &vars);
    std::vector<std::size_t> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            throw ValidationError("expression variables must be Z1..Zn, each used exactly once");
        }
    }
    return vars.size();
}

std::string GlueExpression::str() const {
    if (is_leaf()) {
        return "Z" + std::to_string(var_index_ + 1);
    }
    std::string out = "(" + name_;
    for (const auto& c : children_) {
        out += ' ';
        out += c.str();
    }
    out += ')';
    return out;
}

Lts eval_expression(const GlueExpression& expr, const std::vector<Lts>& bindings) {
    std::size_t vars = expr.variable_count();
    if (vars != bindings.size()) {
        throw ValidationError("expression uses " + std::to_string(vars) + " variables but " +
                              std::to_string(bindings.size()) + " behaviours were bound");
    }
    std::function<Lts(const GlueExpression&)> eval = [&](const GlueExpression& e) -> Lts {
        if (e.is_leaf()) {
            return bindings[e.var_index()];
        }
        std::vector<Lts> parts;
        parts.reserve(e.children().size());
        for (const auto& c : e.children()) {
            parts.push_back(eval(c));
        }
        return apply_glue(e.op(), parts);
    };
    return eval(expr);
}

} // namespace bipglue
