#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bipglue/analysis.hpp"
#include "bipglue/compile.hpp"
#include "bipglue/corpus.hpp"
#include "bipglue/report.hpp"
#include "bipglue/text_format.hpp"

namespace {

// Exit codes: 0 success/equal, 1 verified-unequal, 2 parse error,
// 3 validation error, 4 compilation refused.
constexpr int kExitUnequal = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRefused = 4;

bool color_enabled() {
    const char* env = std::getenv("BIPGLUE_COLOR");
    return env != nullptr && std::string(env) == "1";
}

std::string paint(const std::string& text, const char* code) {
    if (!color_enabled()) {
        return text;
    }
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string pass_tag() { return paint("PASS", "32"); }
std::string fail_tag() { return paint("FAIL", "31"); }

void emit(const std::string& content, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << content;
    } else {
        bipglue::write_file(output, content);
    }
}

std::vector<bipglue::Lts> load_components(const std::vector<std::string>& paths) {
    std::vector<bipglue::Lts> out;
    out.reserve(paths.size());
    for (const auto& path : paths) {
        out.push_back(bipglue::parse_lts(bipglue::read_file(path)).lts);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"coordination glue compiler and semantics engine"};
    app.require_subcommand(1);

    // compose
    auto* compose = app.add_subcommand("compose", "apply a glue operator to behaviours");
    std::string compose_glue;
    std::vector<std::string> compose_lts;
    std::string compose_out = "-";
    compose->add_option("glue", compose_glue, "glue file")->required();
    compose->add_option("lts", compose_lts, "component lts files")->required();
    compose->add_option("-o,--output", compose_out, "output file ('-' for stdout)");

    // sos-apply
    auto* sos_apply = app.add_subcommand("sos-apply", "apply a rule operator to behaviours");
    std::string sos_op;
    std::vector<std::string> sos_lts;
    std::string sos_out = "-";
    sos_apply->add_option("operator", sos_op, "operator file")->required();
    sos_apply->add_option("lts", sos_lts, "component lts files")->required();
    sos_apply->add_option("-o,--output", sos_out, "output file");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "analyse an operator's inhibiting relation");
    std::string classify_op;
    std::string classify_out = "-";
    bool classify_json = false;
    classify_cmd->add_option("operator", classify_op, "operator file")->required();
    classify_cmd->add_option("-o,--output", classify_out, "output file");
    classify_cmd->add_flag("--json", classify_json, "machine-readable output");

    // compile
    auto* compile_cmd = app.add_subcommand("compile", "compile an operator into a glue expression");
    std::string compile_op;
    std::string compile_target = "layered";
    std::string compile_out = "-";
    compile_cmd->add_option("operator", compile_op, "operator file")->required();
    compile_cmd->add_option("--target", compile_target, "layered|relaxed|simultaneous");
    compile_cmd->add_option("-o,--output", compile_out, "output file");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a compiled expression against the rules");
    std::string verify_op;
    std::string verify_expr;
    std::uint64_t verify_seed = 42;
    std::size_t verify_tuples = 100;
    int verify_max_states = 3;
    double verify_density = 0.3;
    bool verify_json = false;
    verify_cmd->add_option("operator", verify_op, "operator file")->required();
    verify_cmd->add_option("expression", verify_expr, "expression file")->required();
    verify_cmd->add_option("--seed", verify_seed, "random seed");
    verify_cmd->add_option("--tuples", verify_tuples, "behaviour tuples to test");
    verify_cmd->add_option("--max-states", verify_max_states, "states per component");
    verify_cmd->add_option("--density", verify_density, "transition density in [0,1]");
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");

    // witness
    auto* witness_cmd =
        app.add_subcommand("witness", "build cycle witness behaviours for a cyclic operator");
    std::string witness_op;
    std::string witness_dir;
    witness_cmd->add_option("operator", witness_op, "operator file")->required();
    witness_cmd->add_option("--out-dir", witness_dir, "write witness lts files here");

    // bisim
    auto* bisim_cmd = app.add_subcommand("bisim", "compare two behaviours up to bisimilarity");
    std::string bisim_a, bisim_b;
    bool bisim_json = false;
    bisim_cmd->add_option("a", bisim_a, "first lts file")->required();
    bisim_cmd->add_option("b", bisim_b, "second lts file")->required();
    bisim_cmd->add_flag("--json", bisim_json, "machine-readable output");

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "built-in examples");
    auto* corpus_list = corpus_cmd->add_subcommand("list", "list example ids");
    auto* corpus_export = corpus_cmd->add_subcommand("export", "write an example's files");
    std::string export_id, export_dir;
    corpus_export->add_option("id", export_id, "example id")->required();
    corpus_export->add_option("dir", export_dir, "output directory")->required();
    auto* corpus_run = corpus_cmd->add_subcommand("run", "evaluate example facts");
    std::string run_id;
    corpus_run->add_option("id", run_id, "example id (all when omitted)");
    corpus_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    if (compose->parsed()) {
        auto glue = bipglue::parse_glue(bipglue::read_file(compose_glue));
        auto components = load_components(compose_lts);
        bipglue::Lts composed = bipglue::apply_glue(glue.glue, components);
        emit(bipglue::serialize_lts({glue.name + "_composed", composed}), compose_out);
        return 0;
    }

    if (sos_apply->parsed()) {
        auto op = bipglue::parse_operator(bipglue::read_file(sos_op));
        auto components = load_components(sos_lts);
        bipglue::Lts composed = bipglue::apply_sos(op.op, components);
        emit(bipglue::serialize_lts({op.name + "_composed", composed}), sos_out);
        return 0;
    }

    if (classify_cmd->parsed()) {
        auto op = bipglue::parse_operator(bipglue::read_file(classify_op));
        bipglue::OperatorValidation v = bipglue::validate_operator(op.op);
        if (!v.valid) {
            throw bipglue::ValidationError("invalid operator: " + v.errors.front());
        }
        bipglue::Classification c = bipglue::classify(op.op);
        if (classify_json) {
            emit(bipglue::classification_json(op.name, c).dump(2) + "\n", classify_out);
        } else {
            emit(bipglue::classification_text(op.name, c), classify_out);
        }
        return 0;
    }

    if (compile_cmd->parsed()) {
        auto op = bipglue::parse_operator(bipglue::read_file(compile_op));
        bipglue::CompileTarget target = bipglue::parse_compile_target(compile_target);
        bipglue::CompilationResult result = [&] {
            switch (target) {
            case bipglue::CompileTarget::layered_classical:
                return bipglue::compile_layered(op.op);
            case bipglue::CompileTarget::relaxed:
                return bipglue::compile_relaxed(op.op);
            default:
                return bipglue::compile_simultaneous(op.op);
            }
        }();
        emit(bipglue::serialize_expression(result.expression), compile_out);
        return 0;
    }

    if (verify_cmd->parsed()) {
        auto op = bipglue::parse_operator(bipglue::read_file(verify_op));
        bipglue::GlueExpression expr = bipglue::parse_expression(bipglue::read_file(verify_expr));
        auto tuples = bipglue::random_behaviours(op.op.partition(), verify_seed, verify_tuples,
                                                 verify_max_states, verify_density);
        // The verifier only needs the expression; pass it through a result shell.
        bipglue::CompilationResult shell{bipglue::CompileTarget::layered_classical, expr,
                                         bipglue::InteractionModel{}, bipglue::InteractionModel{},
                                         {}};
        bipglue::VerificationReport report = bipglue::verify_compilation(op.op, shell, tuples);
        if (verify_json) {
            std::cout << bipglue::verification_json(report).dump(2) << '\n';
        } else {
            std::cout << bipglue::verification_text(report);
        }
        return report.equal ? 0 : kExitUnequal;
    }

    if (witness_cmd->parsed()) {
        auto op = bipglue::parse_operator(bipglue::read_file(witness_op));
        auto cycle = bipglue::detect_cycle(bipglue::inhibiting_relation(op.op));
        if (!cycle) {
            throw bipglue::ValidationError(
                "the operator's inhibiting relation is acyclic; no witness exists");
        }
        std::vector<bipglue::Lts> witnesses = bipglue::cycle_witness(op.op, *cycle);
        std::cout << "cycle:";
        for (const auto& a : *cycle) {
            std::cout << ' ' << a.str();
        }
        std::cout << '\n';
        std::string all_final = bipglue::witness_all_final_state(op.op);
        bipglue::Lts composed = bipglue::apply_sos(op.op, witnesses);
        std::cout << "all-final state " << all_final << " deadlocked under the rules: "
                  << (composed.is_deadlock(all_final) ? "yes" : "no") << '\n';
        if (!witness_dir.empty()) {
            std::filesystem::create_directories(witness_dir);
            for (std::size_t j = 0; j < witnesses.size(); ++j) {
                std::string name = "witness" + std::to_string(j + 1);
                bipglue::write_file(
                    (std::filesystem::path(witness_dir) / (name + ".lts")).string(),
                    bipglue::serialize_lts({name, witnesses[j]}));
            }
            std::cout << "wrote " << witnesses.size() << " witness behaviours to " << witness_dir
                      << '\n';
        }
        return 0;
    }

    if (bisim_cmd->parsed()) {
        auto a = bipglue::parse_lts(bipglue::read_file(bisim_a));
        auto b = bipglue::parse_lts(bipglue::read_file(bisim_b));
        bipglue::BisimulationResult result = bipglue::bisimilar(a.lts, b.lts);
        if (bisim_json) {
            nlohmann::json out;
            out["bisimilar"] = result.bisimilar;
            if (!result.bisimilar) {
                out["reason"] = result.reason;
            } else {
                nlohmann::json rel = nlohmann::json::array();
                for (const auto& [p, q] : result.relation) {
                    rel.push_back({{"left", p}, {"right", q}});
                }
                out["relation"] = rel;
            }
            std::cout << out.dump(2) << '\n';
        } else if (result.bisimilar) {
            std::cout << "bisimilar (" << result.relation.size() << " related pairs)\n";
        } else {
            std::cout << "not bisimilar: " << result.reason << '\n';
        }
        return result.bisimilar ? 0 : kExitUnequal;
    }

    if (corpus_list->parsed()) {
        for (const auto& id : bipglue::corpus_ids()) {
            std::cout << id << '\n';
        }
        return 0;
    }
    if (corpus_export->parsed()) {
        bipglue::CorpusExample ex = bipglue::load_example(export_id);
        for (const auto& file : bipglue::export_example(ex, export_dir)) {
            std::cout << file << '\n';
        }
        return 0;
    }
    if (corpus_run->parsed()) {
        bipglue::SuiteReport report =
            run_id.empty() ? bipglue::run_example_suite() : bipglue::run_example_suite(run_id);
        for (const auto& r : report.results) {
            std::cout << (r.passed ? pass_tag() : fail_tag()) << ' ' << r.example << ": "
                      << r.description << (r.quoted ? "" : " [reconstructed]") << '\n';
        }
        std::cout << (report.all_passed() ? "all facts hold\n" : "some facts FAILED\n");
        return report.all_passed() ? 0 : kExitUnequal;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bipglue::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const bipglue::CycleError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitRefused;
    } catch (const bipglue::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const bipglue::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
