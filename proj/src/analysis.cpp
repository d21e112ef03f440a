#include "bipglue/analysis.hpp"

#include <algorithm>
#include <functional>

namespace bipglue {

namespace {

std::map<Interaction, InteractionSet> successors(const PrioritySet& pairs) {
    std::map<Interaction, InteractionSet> succ;
    for (const auto& [a, b] : pairs) {
        succ[a].insert(b);
        succ.try_emplace(b);
    }
    return succ;
}

// Longest-path depths when the relation is acyclic.
std::optional<std::map<Interaction, int>> compute_depths(const PrioritySet& pairs) {
    auto succ = successors(pairs);
    std::map<Interaction, int> depth;
    std::map<Interaction, int> mark; // 0 unseen, 1 active, 2 done
    bool cyclic = false;

    // depth(a) = longest path leading to a; computed as longest path in the
    // reversed graph, i.e. over predecessors.
    std::map<Interaction, InteractionSet> pred;
    for (const auto& [a, b] : pairs) {
        pred[b].insert(a);
        pred.try_emplace(a);
    }
    std::function<int(const Interaction&)> dfs = [&](const Interaction& v) -> int {
        if (mark[v] == 1) {
            cyclic = true;
            return 0;
        }
        if (mark[v] == 2) {
            return depth[v];
        }
        mark[v] = 1;
        int best = 0;
        for (const auto& u : pred[v]) {
            best = std::max(best, dfs(u) + 1);
            if (cyclic) {
                break;
            }
        }
        mark[v] = 2;
        depth[v] = best;
        return best;
    };
    for (const auto& [v, _] : pred) {
        dfs(v);
        if (cyclic) {
            return std::nullopt;
        }
    }
    return depth;
}

} // namespace

InhibitingRelation::InhibitingRelation(PrioritySet pairs)
    : pairs_(std::move(pairs)), depth_(compute_depths(pairs_)) {}

int InhibitingRelation::depth_of(const Interaction& a) const {
    if (!acyclic()) {
        throw ValidationError("depth is undefined on a cyclic inhibiting relation");
    }
    auto it = depth_->find(a);
    return it == depth_->end() ? 0 : it->second;
}

int InhibitingRelation::max_depth() const {
    if (!acyclic()) {
        throw ValidationError("depth is undefined on a cyclic inhibiting relation");
    }
    int best = 0;
    for (const auto& [_, d] : *depth_) {
        best = std::max(best, d);
    }
    return best;
}

std::set<Interaction> InhibitingRelation::interactions() const {
    std::set<Interaction> out;
    for (const auto& [a, b] : pairs_) {
        out.insert(a);
        out.insert(b);
    }
    return out;
}

CycleError::CycleError(std::vector<Interaction> cycle)
    : Error([&] {
          std::string msg = "inhibiting relation has a cycle:";
          for (const auto& a : cycle) {
              msg += ' ' + a.str();
          }
          return msg;
      }()),
      cycle_(std::move(cycle)) {}

InhibitingRelation inhibiting_relation(const SosOperator& op, std::size_t mapping_budget) {
    OperatorValidation v = validate_operator(op);
    if (!v.valid) {
        throw ValidationError("invalid operator: " + v.errors.front());
    }

    PrioritySet pairs;
    for (const auto& group : group_rules(op)) {
        // A premise-free rule admits no choice mapping: the interaction
        // cannot be inhibited.
        bool blockable = true;
        std::size_t total = 1;
        for (std::size_t l : group.rule_indices) {
            std::size_t count = op.rules()[l].premises.size();
            if (count == 0) {
                blockable = false;
                break;
            }
            total *= count;
            if (total > mapping_budget) {
                throw EnumerationLimitError("choice-mapping enumeration for interaction '" +
                                            group.interaction.str() + "' exceeds " +
                                            std::to_string(mapping_budget) + " mappings");
            }
        }
        if (!blockable) {
            continue;
        }

        std::vector<const std::set<NegativePremise>*> premise_sets;
        premise_sets.reserve(group.rule_indices.size());
        for (std::size_t l : group.rule_indices) {
            premise_sets.push_back(&op.rules()[l].premises);
        }

        std::vector<const Interaction*> chosen(premise_sets.size(), nullptr);
        std::function<void(std::size_t)> choose = [&](std::size_t k) {
            if (k == premise_sets.size()) {
                PortSet ports;
                for (const auto* frag : chosen) {
                    for (const auto& p : frag->ports()) {
                        ports.insert(p);
                    }
                }
                pairs.insert({group.interaction, Interaction(ports)});
                return;
            }
            for (const auto& prem : *premise_sets[k]) {
                chosen[k] = &prem.label;
                choose(k + 1);
            }
        };
        choose(0);
    }
    return InhibitingRelation(std::move(pairs));
}

std::optional<std::vector<Interaction>> detect_cycle(const InhibitingRelation& rel) {
    auto succ = successors(rel.pairs());

    auto reaches = [&](const Interaction& from, const Interaction& to) {
        std::set<Interaction> seen;
        std::vector<Interaction> stack{from};
        while (!stack.empty()) {
            Interaction v = stack.back();
            stack.pop_back();
            for (const auto& w : succ[v]) {
                if (w == to) {
                    return true;
                }
                if (seen.insert(w).second) {
                    stack.push_back(w);
                }
            }
        }
        return false;
    };

    // successors() iterates in interaction order, so the first self-reaching
    // node is the lexicographically least one on any cycle. The cycle itself
    // is the shortest path back to it, found by BFS with sorted expansion.
    for (const auto& [start, direct] : succ) {
        if (direct.contains(start)) {
            return std::vector<Interaction>{start};
        }
        if (!reaches(start, start)) {
            continue;
        }
        std::map<Interaction, Interaction> parent;
        std::vector<Interaction> frontier;
        for (const auto& w : direct) {
            parent.emplace(w, start);
            frontier.push_back(w);
        }
        while (!frontier.empty()) {
            std::vector<Interaction> next;
            for (const auto& v : frontier) {
                for (const auto& w : succ[v]) {
                    if (w == start) {
                        std::vector<Interaction> path;
                        for (Interaction at = v; !(at == start); at = parent.at(at)) {
                            path.push_back(at);
                        }
                        std::vector<Interaction> cycle{start};
                        cycle.insert(cycle.end(), path.rbegin(), path.rend());
                        return cycle;
                    }
                    if (parent.emplace(w, v).second) {
                        next.push_back(w);
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    return std::nullopt;
}

std::vector<PrioritySet> depth_layers(const InhibitingRelation& rel) {
    if (!rel.acyclic()) {
        auto cycle = detect_cycle(rel);
        throw CycleError(cycle ? *cycle : std::vector<Interaction>{});
    }
    int d = rel.max_depth();
    std::vector<PrioritySet> layers(static_cast<std::size_t>(d));
    for (const auto& pair : rel.pairs()) {
        layers[static_cast<std::size_t>(rel.depth_of(pair.low))].insert(pair);
    }

    // Each layer must be a strict partial order: lows of a layer share one
    // depth while any high sits strictly deeper, so transitivity is vacuous.
    for (const auto& layer : layers) {
        for (const auto& [a, b] : layer) {
            if (a == b) {
                throw ValidationError("internal defect: reflexive pair in a depth layer");
            }
            for (const auto& [c, d2] : layer) {
                if (b == c && !layer.contains({a, d2})) {
                    throw ValidationError("internal defect: depth layer is not transitive");
                }
            }
        }
    }
    return layers;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::expressible:
        return "expressible";
    case Verdict::not_expressible:
        return "not-expressible";
    case Verdict::unknown:
        return "unknown";
    }
    return "?";
}

Classification classify(const SosOperator& op, std::size_t mapping_budget) {
    InhibitingRelation rel = inhibiting_relation(op, mapping_budget);
    Classification c;
    c.pairs = rel.pairs();
    c.acyclic = rel.acyclic();
    if (c.acyclic) {
        c.depth_max = rel.max_depth();
        c.layers = depth_layers(rel);
    } else {
        c.depth_max = 0;
        c.cycle = detect_cycle(rel);
    }

    c.verdicts["classical-weak"] =
        c.acyclic ? Verdict::expressible : Verdict::not_expressible;
    c.verdicts["classical-strong"] =
        rel.pairs().empty() ? Verdict::expressible : Verdict::unknown;
    c.verdicts["relaxed-weak"] = Verdict::expressible;
    c.verdicts["simultaneous-strong"] = Verdict::expressible;
    return c;
}

std::vector<Lts> cycle_witness(const SosOperator& op, const std::vector<Interaction>& cycle) {
    if (cycle.empty()) {
        throw ValidationError("witness construction needs a non-empty cycle");
    }
    InhibitingRelation rel = inhibiting_relation(op);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Interaction& a = cycle[i];
        const Interaction& b = cycle[(i + 1) % cycle.size()];
        if (!rel.pairs().contains({a, b})) {
            throw ValidationError("'" + a.str() + " < " + b.str() +
                                  "' is not in the inhibiting relation; not a cycle");
        }
    }

    std::vector<Lts> witnesses;
    witnesses.reserve(op.arity());
    for (std::size_t j = 0; j < op.arity(); ++j) {
        const PortSet& ports = op.partition()[j];
        std::set<std::string> states{"0", "F"};
        for (std::size_t i = 1; i <= cycle.size(); ++i) {
            states.insert(std::to_string(i));
        }
        std::set<Transition> transitions;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            auto share = restrict_to(cycle[i], ports);
            if (share) {
                transitions.insert({std::to_string(i + 1), *share, "F"});
                transitions.insert({"F", *share, "F"});
            }
        }
        witnesses.emplace_back(std::move(states), ports, std::move(transitions));
    }
    return witnesses;
}

std::string witness_all_final_state(const SosOperator& op) {
    return product_state(std::vector<std::string>(op.arity(), "F"));
}

std::string witness_mixed_state(const SosOperator& op, const std::vector<Interaction>& cycle,
                                std::size_t i) {
    if (i >= cycle.size()) {
        throw ValidationError("cycle index out of range");
    }
    std::vector<std::string> parts;
    parts.reserve(op.arity());
    for (std::size_t j = 0; j < op.arity(); ++j) {
        parts.push_back(restrict_to(cycle[i], op.partition()[j]) ? std::to_string(i + 1) : "0");
    }
    return product_state(parts);
}

} // namespace bipglue
