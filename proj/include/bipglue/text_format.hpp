#pragma once

#include <string>

#include "bipglue/glue.hpp"
#include "bipglue/lts.hpp"
#include "bipglue/sos.hpp"

namespace bipglue {

// Line-oriented text formats. One directive per line, '#' starts a comment,
// tokens are whitespace-separated. Parse/serialize round-trips are identity.

struct NamedLts {
    std::string name;
    Lts lts;

    friend bool operator==(const NamedLts&, const NamedLts&) = default;
};

struct NamedGlue {
    std::string name;
    GlueOperator glue;

    friend bool operator==(const NamedGlue&, const NamedGlue&) = default;
};

struct NamedOperator {
    std::string name;
    SosOperator op;

    friend bool operator==(const NamedOperator&, const NamedOperator&) = default;
};

// `lts <name>` / `ports p q r` / `states 1 2 3` / `trans <src> <p1,p2,...> <dst>`
NamedLts parse_lts(const std::string& text);
std::string serialize_lts(const NamedLts& named);

// `glue <name>` / `component <i> ports p q` / `interactions p; q; q,r`
// / `priority q < r` / `mode classical|relaxed|simultaneous`
NamedGlue parse_glue(const std::string& text);
std::string serialize_glue(const NamedGlue& named);

// `operator <name>` / `component <i> ports p q` / `rule <a> [neg <j>:<b> ...]`
NamedOperator parse_operator(const std::string& text);
std::string serialize_operator(const NamedOperator& named);

// `expr (G2 (G1pi1 Z1 Z2))` followed by one glue block per named node.
GlueExpression parse_expression(const std::string& text);
std::string serialize_expression(const GlueExpression& expr);

bool expressions_equal(const GlueExpression& a, const GlueExpression& b);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace bipglue
