#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bipglue/glue.hpp"
#include "bipglue/lts.hpp"
#include "bipglue/sos.hpp"

namespace bipglue {

/// One checkable assertion about an example. `quoted` facts are the
/// example's defining statements; the rest depend on reconstructed
/// behaviour structure.
struct CorpusFact {
    std::string description;
    bool quoted = false;
    std::function<bool()> check;
};

/// A built-in example: its operator and/or glue, the component behaviours
/// (reconstructions are flagged in `notes`), and executable facts.
struct CorpusExample {
    std::string id;
    std::string summary;
    std::vector<PortSet> partition;
    std::optional<SosOperator> op;
    std::optional<GlueOperator> glue;
    std::vector<std::pair<std::string, Lts>> behaviours;
    std::vector<CorpusFact> facts;
    std::vector<std::string> notes;
};

const std::vector<std::string>& corpus_ids();
CorpusExample load_example(const std::string& id);

struct FactResult {
    std::string example;
    std::string description;
    bool quoted = false;
    bool passed = false;
};

struct SuiteReport {
    std::vector<FactResult> results;

    bool all_passed() const;
    bool all_quoted_passed() const;
};

// Evaluates every fact of every example (or of one example when given).
SuiteReport run_example_suite();
SuiteReport run_example_suite(const std::string& id);

// Writes the example's behaviours, operator and glue in the text formats.
// Returns the written file names.
std::vector<std::string> export_example(const CorpusExample& ex, const std::string& directory);

} // namespace bipglue
