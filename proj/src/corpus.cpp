#include "bipglue/corpus.hpp"

#include <filesystem>

#include "bipglue/analysis.hpp"
#include "bipglue/compile.hpp"
#include "bipglue/text_format.hpp"

namespace bipglue {

namespace {

Lts make_lts(std::set<std::string> states, PortSet ports,
             std::vector<std::tuple<std::string, Interaction, std::string>> transitions) {
    std::set<Transition> set;
    for (auto& [src, label, dst] : transitions) {
        set.insert({src, label, dst});
    }
    return Lts(std::move(states), std::move(ports), std::move(set));
}

bool has_transition(const Lts& lts, const std::string& src, const Interaction& label,
                    const std::string& dst) {
    return lts.transitions().contains({src, label, dst});
}

// Two producer/consumer components: the first can do p then q, the second
// can do r once. Minimal shape consistent with the composed states named in
// its defining facts; see the example notes.
std::pair<Lts, Lts> ex1_behaviours() {
    Lts b1 = make_lts({"1", "2", "3"}, make_ports({"p", "q"}),
                      {{"1", {"p"}, "2"}, {"2", {"q"}, "3"}});
    Lts b2 = make_lts({"1", "2"}, make_ports({"r"}), {{"1", {"r"}, "2"}});
    return {b1, b2};
}

GlueOperator ex1_glue() {
    std::vector<PortSet> partition{make_ports({"p", "q"}), make_ports({"r"})};
    InteractionModel gamma(make_ports({"p", "q", "r"}),
                           {Interaction{"p"}, Interaction{"q"}, Interaction{"r"},
                            Interaction{"q", "r"}});
    PriorityModel pi({{Interaction{"q"}, Interaction{"r"}}}, PriorityMode::classical);
    return GlueOperator(partition, gamma, pi);
}

SosOperator ex1_rules() {
    std::vector<PortSet> partition{make_ports({"p", "q"}), make_ports({"r"})};
    return SosOperator(partition, {
                                      {Interaction{"p"}, {}},
                                      {Interaction{"r"}, {}},
                                      {Interaction{"q", "r"}, {}},
                                      {Interaction{"q"}, {{1, Interaction{"r"}}}},
                                  });
}

// Single behaviour where two actions compete and both stay live in state 3.
// Forced by the defining facts: states 1 and 2 keep one transition each and state 3
// must enable both p and r so that they block each other.
Lts nfebo_behaviour() {
    return make_lts({"1", "2", "3"}, make_ports({"p", "r"}),
                    {{"1", {"p"}, "3"}, {"2", {"r"}, "3"}, {"3", {"p"}, "3"}, {"3", {"r"}, "3"}});
}

SosOperator eq5_operator() {
    std::vector<PortSet> partition{make_ports({"p", "q"}), make_ports({"r", "s"}),
                                   make_ports({"t"})};
    return SosOperator(partition, {
                                      {Interaction{"p"}, {{1, Interaction{"r"}}}},
                                      {Interaction{"q"}, {}},
                                      {Interaction{"s"}, {}},
                                      {Interaction{"r", "t"}, {}},
                                  });
}

SosOperator eq6_operator() {
    std::vector<PortSet> partition{make_ports({"p", "r"})};
    return SosOperator(partition, {
                                      {Interaction{"p"}, {{0, Interaction{"r"}}}},
                                      {Interaction{"r"}, {{0, Interaction{"p"}}}},
                                  });
}

SosOperator eq10_operator() {
    std::vector<PortSet> partition{make_ports({"p", "r"})};
    return SosOperator(partition, {{Interaction{"p"}, {{0, Interaction{"r"}}}}});
}

GlueOperator eq10_glue() {
    std::vector<PortSet> partition{make_ports({"p", "r"})};
    InteractionModel gamma(make_ports({"p", "r"}), {Interaction{"p"}});
    PriorityModel pi({{Interaction{"p"}, Interaction{"r"}}}, PriorityMode::simultaneous);
    return GlueOperator(partition, gamma, pi);
}

CorpusExample build_ex1() {
    CorpusExample ex;
    ex.id = "ex1-priority";
    ex.summary = "binary composition where a low-priority action is suppressed "
                 "only while the high-priority one stays enabled";
    auto [b1, b2] = ex1_behaviours();
    ex.partition = {b1.ports(), b2.ports()};
    ex.glue = ex1_glue();
    ex.op = ex1_rules();
    ex.behaviours = {{"b1", b1}, {"b2", b2}};
    ex.notes = {"b1 and b2 are minimal reconstructions; "
                "only the composed states 1.1, 2.1, 2.2, 3.1, 3.2 and the suppression "
                "facts are fixed; the rest of the shape is a minimal completion",
                "further transitions of b1 (e.g. out of state 3) cannot be ruled out; "
                "the minimal shape is used"};

    GlueOperator glue = *ex.glue;
    SosOperator rules = *ex.op;
    std::vector<Lts> comps{b1, b2};

    ex.facts.push_back(
        {"priority composition keeps 2.2 -q-> 3.2", true, [glue, comps] {
             return has_transition(apply_glue(glue, comps), "2.2", Interaction{"q"}, "3.2");
         }});
    ex.facts.push_back(
        {"priority composition drops 2.1 -q-> 3.1", true, [glue, comps] {
             return !has_transition(apply_glue(glue, comps), "2.1", Interaction{"q"}, "3.1");
         }});
    ex.facts.push_back(
        {"interaction-only composition contains 2.1 -q-> 3.1", true, [glue, comps] {
             return has_transition(apply_interaction(glue.gamma(), glue.partition(), comps), "2.1",
                                   Interaction{"q"}, "3.1");
         }});
    ex.facts.push_back({"state 1 of b2 enables exactly {r}", false, [comps] {
                            return comps[1].enabled("1") == InteractionSet{Interaction{"r"}};
                        }});
    ex.facts.push_back({"the four merged rules equal the glue composition", true,
                        [glue, rules, comps] {
                            return apply_sos(rules, comps) == apply_glue(glue, comps);
                        }});
    ex.facts.push_back({"translating the glue yields exactly the four rules", true,
                        [glue, rules] {
                            SosOperator translated = glue_to_sos(glue);
                            std::set<SosRule> got(translated.rules().begin(),
                                                  translated.rules().end());
                            std::set<SosRule> want(rules.rules().begin(), rules.rules().end());
                            return got == want;
                        }});
    ex.facts.push_back({"priority does not change the deadlock states", false, [glue, comps] {
                            return apply_glue(glue, comps).deadlock_states() ==
                                   apply_interaction(glue.gamma(), glue.partition(), comps)
                                       .deadlock_states();
                        }});
    ex.facts.push_back({"priority composition is not bisimilar to the plain one", false,
                        [glue, comps] {
                            Lts with = apply_glue(glue, comps);
                            Lts without =
                                apply_interaction(glue.gamma(), glue.partition(), comps);
                            return !bisimilar(with, without).bisimilar;
                        }});
    return ex;
}

CorpusExample build_eq5() {
    CorpusExample ex;
    ex.id = "eq5-notbip";
    ex.summary = "ternary operator with one cross-component inhibition; compiles "
                 "into two layers but is not a single classical glue";
    SosOperator op = eq5_operator();
    ex.partition = op.partition();
    ex.op = op;

    ex.facts.push_back({"the operator validates", false, [op] {
                            return validate_operator(op).valid;
                        }});
    ex.facts.push_back({"rule groups are p, q, r,t and s with one rule each", false, [op] {
                            auto groups = group_rules(op);
                            if (groups.size() != 4) {
                                return false;
                            }
                            for (const auto& g : groups) {
                                if (g.rule_indices.size() != 1) {
                                    return false;
                                }
                            }
                            return true;
                        }});
    ex.facts.push_back({"the inhibiting relation is exactly p < r", false, [op] {
                            return inhibiting_relation(op).pairs() ==
                                   PrioritySet{{Interaction{"p"}, Interaction{"r"}}};
                        }});
    ex.facts.push_back({"the relation is acyclic with depth 1", false, [op] {
                            InhibitingRelation rel = inhibiting_relation(op);
                            return rel.acyclic() && rel.max_depth() == 1;
                        }});
    ex.facts.push_back(
        {"layered compilation uses gamma2 = labels and gamma1 = labels plus r", false, [op] {
             CompilationResult r = compile_layered(op);
             InteractionSet gamma2{Interaction{"p"}, Interaction{"q"}, Interaction{"s"},
                                   Interaction{"r", "t"}};
             InteractionSet gamma1 = gamma2;
             gamma1.insert(Interaction{"r"});
             return r.gamma2.interactions() == gamma2 && r.gamma1.interactions() == gamma1;
         }});
    ex.facts.push_back({"layered compilation verifies against the rules", false, [op] {
                            CompilationResult r = compile_layered(op);
                            auto tuples = random_behaviours(op.partition(), 7, 40, 3, 0.3);
                            return verify_compilation(op, r, tuples).equal;
                        }});
    ex.facts.push_back({"the classifier does not call the operator a single classical glue", true,
                        [op] {
                            Classification c = classify(op);
                            return c.verdicts.at("classical-strong") != Verdict::expressible;
                        }});
    return ex;
}

CorpusExample build_ex2() {
    CorpusExample ex;
    ex.id = "ex2-notbip2";
    ex.summary = "unary operator whose two rules inhibit each other; introduces a "
                 "deadlock no classical glue can produce";
    SosOperator op = eq6_operator();
    Lts nfebo = nfebo_behaviour();
    ex.partition = op.partition();
    ex.op = op;
    ex.behaviours = {{"nfebo", nfebo}};
    ex.notes = {"the behaviour is a reconstruction: states 1 and 2 keep one transition "
                "each and state 3 must enable both p and r so that the rules block "
                "each other there"};

    ex.facts.push_back({"composition is exactly 1 -p-> 3 and 2 -r-> 3", true, [op, nfebo] {
                            Lts composed = apply_sos(op, {nfebo});
                            return composed.transitions() ==
                                   std::set<Transition>{{"1", Interaction{"p"}, "3"},
                                                        {"2", Interaction{"r"}, "3"}};
                        }});
    ex.facts.push_back({"state 3 of the composition is a deadlock", true, [op, nfebo] {
                            return apply_sos(op, {nfebo}).is_deadlock("3");
                        }});
    ex.facts.push_back({"state 3 of the behaviour enables p and r", false, [nfebo] {
                            return nfebo.enabled("3") ==
                                   InteractionSet{Interaction{"p"}, Interaction{"r"}};
                        }});
    ex.facts.push_back({"the inhibiting relation is the cycle p < r < p", false, [op] {
                            return inhibiting_relation(op).pairs() ==
                                   PrioritySet{{Interaction{"p"}, Interaction{"r"}},
                                               {Interaction{"r"}, Interaction{"p"}}};
                        }});
    ex.facts.push_back({"cycle detection reports [p, r]", false, [op] {
                            auto cycle = detect_cycle(inhibiting_relation(op));
                            return cycle &&
                                   *cycle == std::vector<Interaction>{Interaction{"p"},
                                                                      Interaction{"r"}};
                        }});
    ex.facts.push_back({"layered compilation is refused", false, [op] {
                            try {
                                compile_layered(op);
                            } catch (const CycleError&) {
                                return true;
                            }
                            return false;
                        }});
    ex.facts.push_back({"relaxed two-layer compilation matches the rules on the behaviour",
                        false, [op, nfebo] {
                            CompilationResult r = compile_relaxed(op);
                            return verify_compilation(op, r, {{nfebo}}).equal;
                        }});
    ex.facts.push_back(
        {"a relaxed priority cycle introduces the deadlock a classical one cannot", true,
         [nfebo] {
             std::vector<PortSet> partition{nfebo.ports()};
             InteractionModel gamma(nfebo.ports(), {Interaction{"p"}, Interaction{"r"}});
             PriorityModel cyclic({{Interaction{"p"}, Interaction{"r"}},
                                   {Interaction{"r"}, Interaction{"p"}}},
                                  PriorityMode::relaxed);
             GlueOperator relaxed(partition, gamma, cyclic);
             Lts plain = apply_interaction(gamma, partition, {nfebo});
             Lts prioritized = apply_glue(relaxed, {nfebo});
             return !plain.is_deadlock("3") && prioritized.is_deadlock("3");
         }});
    ex.facts.push_back({"the cyclic pair set is invalid classically, valid relaxed", true, [] {
                            std::vector<PortSet> partition{make_ports({"p", "r"})};
                            InteractionModel gamma(make_ports({"p", "r"}),
                                                   {Interaction{"p"}, Interaction{"r"}});
                            PrioritySet pairs{{Interaction{"p"}, Interaction{"r"}},
                                              {Interaction{"r"}, Interaction{"p"}}};
                            GlueOperator classical(
                                partition, gamma, PriorityModel(pairs, PriorityMode::classical));
                            GlueOperator relaxed(partition, gamma,
                                                 PriorityModel(pairs, PriorityMode::relaxed));
                            return !validate_glue(classical).valid &&
                                   validate_glue(relaxed).valid;
                        }});
    return ex;
}

CorpusExample build_eq10() {
    CorpusExample ex;
    ex.id = "eq10-notstrong";
    ex.summary = "single rule whose combined interaction-and-priority glue keeps "
                 "exactly one transition of the behaviour";
    SosOperator op = eq10_operator();
    GlueOperator glue = eq10_glue();
    Lts nfebo = nfebo_behaviour();
    ex.partition = op.partition();
    ex.op = op;
    ex.glue = glue;
    ex.behaviours = {{"nfebo", nfebo}};
    ex.notes = {"reuses the reconstructed behaviour of ex2-notbip2; its defining facts name "
                "the transitions 2 -r-> 3 and 3 -p-> 3 it must contain"};

    ex.facts.push_back(
        {"simultaneous application yields exactly 1 -p-> 3", true, [glue, nfebo] {
             return apply_simultaneous(glue, {nfebo}).transitions() ==
                    std::set<Transition>{{"1", Interaction{"p"}, "3"}};
         }});
    ex.facts.push_back({"the rule semantics also yields exactly 1 -p-> 3", false, [op, nfebo] {
                            return apply_sos(op, {nfebo}).transitions() ==
                                   std::set<Transition>{{"1", Interaction{"p"}, "3"}};
                        }});
    ex.facts.push_back({"translating the glue yields exactly the single rule", true, [glue, op] {
                            return glue_to_sos(glue).rules() == op.rules();
                        }});
    ex.facts.push_back(
        {"simultaneous compilation of the rule recovers the glue and verifies", false,
         [op, glue, nfebo] {
             CompilationResult r = compile_simultaneous(op);
             return r.gamma2.interactions() == glue.gamma().interactions() &&
                    r.layers.front() == glue.pi().pairs() &&
                    verify_compilation(op, r, {{nfebo}}).equal;
         }});
    return ex;
}

CorpusExample build_cyclebeh() {
    CorpusExample ex;
    ex.id = "cyclebeh-template";
    ex.summary = "witness behaviours instantiated for a cyclic operator: every "
                 "cycle interaction stays available while the rules forbid them all";
    SosOperator op = eq6_operator();
    std::vector<Interaction> cycle{Interaction{"p"}, Interaction{"r"}};
    std::vector<Lts> witnesses = cycle_witness(op, cycle);
    ex.partition = op.partition();
    ex.op = op;
    for (std::size_t j = 0; j < witnesses.size(); ++j) {
        ex.behaviours.push_back({"witness" + std::to_string(j + 1), witnesses[j]});
    }
    ex.notes = {"the witness shape (isolated state 0, one feeder state per cycle "
                "interaction, a final state looping on every share) realises the "
                "construction used by the inexpressibility argument"};

    ex.facts.push_back({"the all-final state deadlocks under the rules", false,
                        [op, witnesses] {
                            return apply_sos(op, witnesses)
                                .is_deadlock(witness_all_final_state(op));
                        }});
    ex.facts.push_back(
        {"the all-final state stays live under the plain interaction model", false,
         [op, witnesses] {
             InteractionSet labels;
             for (const auto& rule : op.rules()) {
                 labels.insert(rule.label);
             }
             InteractionModel gamma2(op.ports(), labels);
             return !apply_interaction(gamma2, op.partition(), witnesses)
                         .is_deadlock(witness_all_final_state(op));
         }});
    ex.facts.push_back({"each mixed state enables exactly its cycle interaction", false,
                        [op, cycle, witnesses] {
                            Lts composed = apply_sos(op, witnesses);
                            for (std::size_t i = 0; i < cycle.size(); ++i) {
                                if (composed.enabled(witness_mixed_state(op, cycle, i)) !=
                                    InteractionSet{cycle[i]}) {
                                    return false;
                                }
                            }
                            return true;
                        }});
    return ex;
}

} // namespace

const std::vector<std::string>& corpus_ids() {
    static const std::vector<std::string> ids{"ex1-priority", "eq5-notbip", "ex2-notbip2",
                                              "eq10-notstrong", "cyclebeh-template"};
    return ids;
}

CorpusExample load_example(const std::string& id) {
    if (id == "ex1-priority") {
        return build_ex1();
    }
    if (id == "eq5-notbip") {
        return build_eq5();
    }
    if (id == "ex2-notbip2") {
        return build_ex2();
    }
    if (id == "eq10-notstrong") {
        return build_eq10();
    }
    if (id == "cyclebeh-template") {
        return build_cyclebeh();
    }
    throw ValidationError("unknown example '" + id + "'");
}

bool SuiteReport::all_passed() const {
    for (const auto& r : results) {
        if (!r.passed) {
            return false;
        }
    }
    return true;
}

bool SuiteReport::all_quoted_passed() const {
    for (const auto& r : results) {
        if (r.quoted && !r.passed) {
            return false;
        }
    }
    return true;
}

SuiteReport run_example_suite() {
    SuiteReport report;
    for (const auto& id : corpus_ids()) {
        SuiteReport one = run_example_suite(id);
        report.results.insert(report.results.end(), one.results.begin(), one.results.end());
    }
    return report;
}

SuiteReport run_example_suite(const std::string& id) {
    CorpusExample ex = load_example(id);
    SuiteReport report;
    for (const auto& fact : ex.facts) {
        bool passed = false;
        try {
            passed = fact.check();
        } catch (const Error&) {
            passed = false;
        }
        report.results.push_back({ex.id, fact.description, fact.quoted, passed});
    }
    return report;
}

std::vector<std::string> export_example(const CorpusExample& ex, const std::string& directory) {
    std::filesystem::create_directories(directory);
    std::vector<std::string> written;
    auto emit = [&](const std::string& file, const std::string& content) {
        std::string path = (std::filesystem::path(directory) / file).string();
        write_file(path, content);
        written.push_back(file);
    };
    for (const auto& [name, lts] : ex.behaviours) {
        emit(name + ".lts", serialize_lts({name, lts}));
    }
    if (ex.op) {
        emit(ex.id + ".sos", serialize_operator({ex.id, *ex.op}));
    }
    if (ex.glue) {
        emit(ex.id + ".glue", serialize_glue({ex.id, *ex.glue}));
    }
    return written;
}

} // namespace bipglue
