#include "bipglue/sos.hpp"

#include <functional>
#include <map>

namespace bipglue {

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

} // namespace

OperatorValidation validate_operator(const SosOperator& op) {
    OperatorValidation v;
    auto fail = [&](std::string msg) {
        v.valid = false;
        v.errors.push_back(std::move(msg));
    };

    std::string clash;
    if (!pairwise_disjoint(op.partition(), &clash)) {
        fail("port '" + clash + "' appears in more than one component of the partition");
    }
    PortSet all = op.ports();

    for (std::size_t l = 0; l < op.rules().size(); ++l) {
        const SosRule& rule = op.rules()[l];
        std::string where = "rule " + std::to_string(l + 1);
        if (!rule.label.within(all)) {
            fail(where + ": label '" + rule.label.str() + "' uses ports outside the operator");
        }
        for (const auto& prem : rule.premises) {
            if (prem.component >= op.arity()) {
                fail(where + ": premise component " + std::to_string(prem.component + 1) +
                     " is out of range");
                continue;
            }
            if (!prem.label.within(op.partition()[prem.component])) {
                fail(where + ": premise '" + prem.label.str() +
                     "' is not over the ports of component " +
                     std::to_string(prem.component + 1));
            }
        }
    }

    std::map<SosRule, std::vector<std::size_t>> seen;
    for (std::size_t l = 0; l < op.rules().size(); ++l) {
        seen[op.rules()[l]].push_back(l);
    }
    for (const auto& [rule, where] : seen) {
        if (where.size() > 1) {
            std::string msg = "duplicate rules labelled '" + rule.label.str() + "' at indices";
            for (auto i : where) {
                msg += ' ' + std::to_string(i + 1);
            }
            v.notes.push_back(msg);
        }
    }
    return v;
}

std::vector<RuleGroup> group_rules(const SosOperator& op) {
    std::map<Interaction, std::vector<std::size_t>> by_label;
    for (std::size_t l = 0; l < op.rules().size(); ++l) {
        by_label[op.rules()[l].label].push_back(l);
    }
    std::vector<RuleGroup> out;
    out.reserve(by_label.size());
    for (auto& [label, indices] : by_label) {
        out.push_back({label, std::move(indices)});
    }
    return out;
}

Lts apply_sos(const SosOperator& op, const std::vector<Lts>& components) {
    if (components.size() != op.arity()) {
        throw ValidationError("expected " + std::to_string(op.arity()) + " components, got " +
                              std::to_string(components.size()));
    }
    OperatorValidation v = validate_operator(op);
    if (!v.valid) {
        throw ValidationError("invalid operator: " + v.errors.front());
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].ports() != op.partition()[i]) {
            throw ValidationError("component " + std::to_string(i + 1) +
                                  " ports do not match its slot in the partition");
        }
    }

    const auto& partition = op.partition();
    std::size_t n = components.size();

    std::vector<std::vector<std::string>> component_states;
    component_states.reserve(n);
    for (const auto& c : components) {
        component_states.emplace_back(c.states().begin(), c.states().end());
    }

    std::set<std::string> states;
    std::set<Transition> transitions;

    auto fire_rule = [&](const SosRule& rule, const std::vector<std::string>& source) {
        for (const auto& prem : rule.premises) {
            if (components[prem.component].enables(source[prem.component], prem.label)) {
                return;
            }
        }
        std::vector<std::vector<std::string>> choices(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto part = restrict_to(rule.label, partition[i]);
            if (part) {
                choices[i] = components[i].targets(source[i], *part);
                if (choices[i].empty()) {
                    return;
                }
            } else {
                choices[i] = {source[i]};
            }
        }
        std::vector<std::string> target(n);
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (i == n) {
                transitions.insert({product_state(source), rule.label, product_state(target)});
                return;
            }
            for (const auto& q : choices[i]) {
                target[i] = q;
                walk(i + 1);
            }
        };
        walk(0);
    };

    std::vector<std::string> source(n);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
            states.insert(product_state(source));
            for (const auto& rule : op.rules()) {
                fire_rule(rule, source);
            }
            return;
        }
        for (const auto& q : component_states[i]) {
            source[i] = q;
            walk(i + 1);
        }
    };
    walk(0);

    return Lts(std::move(states), op.ports(), std::move(transitions));
}

SosOperator glue_to_sos(const GlueOperator& op, std::size_t mapping_budget) {
    GlueValidation v = validate_glue(op);
    if (!v.valid) {
        throw ValidationError("invalid glue operator: " + v.errors.front());
    }

    const auto& partition = op.partition();
    std::set<SosRule> rules;

    for (const auto& a : op.gamma().interactions()) {
        InteractionSet higher = op.pi().higher_than(a);
        if (higher.empty()) {
            rules.insert({a, {}});
            continue;
        }

        // One rule per choice of an involved component for every
        // higher-priority interaction.
        std::vector<const Interaction*> highs;
        std::vector<std::vector<std::size_t>> involved;
        std::size_t total = 1;
        for (const auto& b : higher) {
            std::vector<std::size_t> comps;
            for (std::size_t j = 0; j < partition.size(); ++j) {
                if (restrict_to(b, partition[j])) {
                    comps.push_back(j);
                }
            }
            if (comps.empty()) {
                throw ValidationError("priority target '" + b.str() +
                                      "' overlaps no component of the partition");
            }
            highs.push_back(&b);
            involved.push_back(std::move(comps));
            total *= involved.back().size();
            if (total > mapping_budget) {
                throw EnumerationLimitError(
                    "choice-mapping enumeration for interaction '" + a.str() + "' exceeds " +
                    std::to_string(mapping_budget) + " mappings");
            }
        }

        std::set<NegativePremise> premises;
        std::function<void(std::size_t)> choose = [&](std::size_t k) {
            if (k == highs.size()) {
                rules.insert({a, premises});
                return;
            }
            for (std::size_t j : involved[k]) {
                NegativePremise prem{j, *restrict_to(*highs[k], partition[j])};
                auto [it, inserted] = premises.insert(prem);
                choose(k + 1);
                if (inserted) {
                    premises.erase(it);
                }
            }
        };
        choose(0);
    }

    return SosOperator(partition, std::vector<SosRule>(rules.begin(), rules.end()));
}

} // namespace bipglue
