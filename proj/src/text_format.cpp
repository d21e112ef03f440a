#include "bipglue/text_format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bipglue {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream linein(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (linein >> tok) {
            tokens.push_back(tok);
        }
        if (!tokens.empty()) {
            lines.push_back({number, std::move(tokens)});
        }
    }
    return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& msg) {
    throw ParseError(msg, line.number);
}

Interaction parse_label(const Line& line, const std::string& text) {
    try {
        return Interaction::parse(text);
    } catch (const Error& e) {
        fail(line, e.what());
    }
}

struct PartitionBuilder {
    std::map<std::size_t, PortSet> slots;

    void add(const Line& line) {
        // component <i> ports <p...>
        if (line.tokens.size() < 3 || line.tokens[2] != "ports") {
            fail(line, "expected 'component <i> ports <p...>'");
        }
        std::size_t index = 0;
        try {
            index = std::stoul(line.tokens[1]);
        } catch (const std::exception&) {
            fail(line, "component index '" + line.tokens[1] + "' is not a number");
        }
        if (index == 0) {
            fail(line, "component indices start at 1");
        }
        if (slots.contains(index - 1)) {
            fail(line, "component " + line.tokens[1] + " defined twice");
        }
        PortSet ports;
        for (std::size_t i = 3; i < line.tokens.size(); ++i) {
            try {
                ports.insert(Port(line.tokens[i]));
            } catch (const Error& e) {
                fail(line, e.what());
            }
        }
        slots[index - 1] = std::move(ports);
    }

    std::vector<PortSet> finish(const Line& where) const {
        std::vector<PortSet> out;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            auto it = slots.find(i);
            if (it == slots.end()) {
                fail(where, "component " + std::to_string(i + 1) + " is missing");
            }
            out.push_back(it->second);
        }
        if (out.empty()) {
            fail(where, "at least one component is required");
        }
        return out;
    }
};

} // namespace

NamedLts parse_lts(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "lts") {
        throw ParseError("expected an 'lts <name>' header", lines.empty() ? 1 : lines[0].number);
    }
    if (lines[0].tokens.size() != 2) {
        fail(lines[0], "expected 'lts <name>'");
    }
    std::string name = lines[0].tokens[1];

    PortSet ports;
    std::set<std::string> states;
    std::set<Transition> transitions;
    struct PendingTransition {
        Line line;
        std::string src, label, dst;
    };
    std::vector<PendingTransition> pending;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& directive = line.tokens[0];
        if (directive == "ports") {
            for (std::size_t k = 1; k < line.tokens.size(); ++k) {
                try {
                    ports.insert(Port(line.tokens[k]));
                } catch (const Error& e) {
                    fail(line, e.what());
                }
            }
        } else if (directive == "states") {
            for (std::size_t k = 1; k < line.tokens.size(); ++k) {
                states.insert(line.tokens[k]);
            }
        } else if (directive == "trans") {
            if (line.tokens.size() != 4) {
                fail(line, "expected 'trans <src> <p1,p2,...> <dst>'");
            }
            pending.push_back({line, line.tokens[1], line.tokens[2], line.tokens[3]});
        } else {
            fail(line, "unknown directive '" + directive + "' in an lts file");
        }
    }

    for (const auto& p : pending) {
        Interaction label = parse_label(p.line, p.label);
        if (!states.contains(p.src)) {
            fail(p.line, "transition source '" + p.src + "' is not a declared state");
        }
        if (!states.contains(p.dst)) {
            fail(p.line, "transition target '" + p.dst + "' is not a declared state");
        }
        if (!label.within(ports)) {
            fail(p.line, "label '" + label.str() + "' uses undeclared ports");
        }
        transitions.insert({p.src, label, p.dst});
    }

    return {std::move(name), Lts(std::move(states), std::move(ports), std::move(transitions))};
}

std::string serialize_lts(const NamedLts& named) {
    std::ostringstream out;
    out << "lts " << named.name << '\n';
    out << "ports " << join_ports(named.lts.ports(), " ") << '\n';
    out << "states";
    for (const auto& q : named.lts.states()) {
        out << ' ' << q;
    }
    out << '\n';
    for (const auto& t : named.lts.transitions()) {
        out << "trans " << t.source << ' ' << t.label.str() << ' ' << t.target << '\n';
    }
    return out.str();
}

NamedGlue parse_glue(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "glue") {
        throw ParseError("expected a 'glue <name>' header", lines.empty() ? 1 : lines[0].number);
    }
    if (lines[0].tokens.size() != 2) {
        fail(lines[0], "expected 'glue <name>'");
    }
    std::string name = lines[0].tokens[1];

    PartitionBuilder partition;
    InteractionSet interactions;
    PrioritySet pairs;
    PriorityMode mode = PriorityMode::classical;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& directive = line.tokens[0];
        if (directive == "component") {
            partition.add(line);
        } else if (directive == "interactions") {
            std::string rest;
            for (std::size_t k = 1; k < line.tokens.size(); ++k) {
                if (k > 1) {
                    rest += ' ';
                }
                rest += line.tokens[k];
            }
            std::string item;
            std::istringstream items(rest);
            while (std::getline(items, item, ';')) {
                std::erase(item, ' ');
                if (!item.empty()) {
                    interactions.insert(parse_label(line, item));
                }
            }
        } else if (directive == "priority") {
            if (line.tokens.size() != 4 || line.tokens[2] != "<") {
                fail(line, "expected 'priority <a> < <b>'");
            }
            pairs.insert({parse_label(line, line.tokens[1]), parse_label(line, line.tokens[3])});
        } else if (directive == "mode") {
            if (line.tokens.size() != 2) {
                fail(line, "expected 'mode classical|relaxed|simultaneous'");
            }
            try {
                mode = parse_priority_mode(line.tokens[1]);
            } catch (const Error& e) {
                fail(line, e.what());
            }
        } else {
            fail(line, "unknown directive '" + directive + "' in a glue file");
        }
    }

    auto slots = partition.finish(lines[0]);
    InteractionModel gamma(port_union(slots), std::move(interactions));
    return {std::move(name),
            GlueOperator(std::move(slots), std::move(gamma), PriorityModel(std::move(pairs), mode))};
}

std::string serialize_glue(const NamedGlue& named) {
    std::ostringstream out;
    out << "glue " << named.name << '\n';
    const auto& op = named.glue;
    for (std::size_t i = 0; i < op.partition().size(); ++i) {
        out << "component " << i + 1 << " ports " << join_ports(op.partition()[i], " ") << '\n';
    }
    if (!op.gamma().interactions().empty()) {
        out << "interactions " << join_interactions(op.gamma().interactions(), "; ") << '\n';
    }
    for (const auto& [low, high] : op.pi().pairs()) {
        out << "priority " << low.str() << " < " << high.str() << '\n';
    }
    out << "mode " << to_string(op.pi().mode()) << '\n';
    return out.str();
}

NamedOperator parse_operator(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "operator") {
        throw ParseError("expected an 'operator <name>' header",
                         lines.empty() ? 1 : lines[0].number);
    }
    if (lines[0].tokens.size() != 2) {
        fail(lines[0], "expected 'operator <name>'");
    }
    std::string name = lines[0].tokens[1];

    PartitionBuilder partition;
    std::vector<SosRule> rules;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& directive = line.tokens[0];
        if (directive == "component") {
            partition.add(line);
        } else if (directive == "rule") {
            if (line.tokens.size() < 2) {
                fail(line, "expected 'rule <a> [neg <j>:<b> ...]'");
            }
            SosRule rule{parse_label(line, line.tokens[1]), {}};
            for (std::size_t k = 2; k < line.tokens.size(); ++k) {
                const std::string& tok = line.tokens[k];
                if (tok == "neg") {
                    continue;
                }
                auto colon = tok.find(':');
                if (colon == std::string::npos) {
                    fail(line, "expected '<j>:<b>' in a negative premise, got '" + tok + "'");
                }
                std::size_t j = 0;
                try {
                    j = std::stoul(tok.substr(0, colon));
                } catch (const std::exception&) {
                    fail(line, "premise component '" + tok.substr(0, colon) + "' is not a number");
                }
                if (j == 0) {
                    fail(line, "premise component indices start at 1");
                }
                rule.premises.insert({j - 1, parse_label(line, tok.substr(colon + 1))});
            }
            rules.push_back(std::move(rule));
        } else {
            fail(line, "unknown directive '" + directive + "' in an operator file");
        }
    }

    auto slots = partition.finish(lines[0]);
    return {std::move(name), SosOperator(std::move(slots), std::move(rules))};
}

std::string serialize_operator(const NamedOperator& named) {
    std::ostringstream out;
    out << "operator " << named.name << '\n';
    for (std::size_t i = 0; i < named.op.partition().size(); ++i) {
        out << "component " << i + 1 << " ports " << join_ports(named.op.partition()[i], " ")
            << '\n';
    }
    for (const auto& rule : named.op.rules()) {
        out << "rule " << rule.label.str();
        if (!rule.premises.empty()) {
            out << " neg";
            for (const auto& prem : rule.premises) {
                out << ' ' << prem.component + 1 << ':' << prem.label.str();
            }
        }
        out << '\n';
    }
    return out.str();
}

namespace {

// Minimal s-expression reader for the expr directive.
struct ExprToken {
    enum Kind { open, close, atom } kind;
    std::string text;
};

std::vector<ExprToken> lex_expr(const std::string& text, int line_number) {
    std::vector<ExprToken> out;
    std::string atom;
    auto flush = [&] {
        if (!atom.empty()) {
            out.push_back({ExprToken::atom, atom});
            atom.clear();
        }
    };
    for (char c : text) {
        if (c == '(') {
            flush();
            out.push_back({ExprToken::open, "("});
        } else if (c == ')') {
            flush();
            out.push_back({ExprToken::close, ")"});
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            atom += c;
        }
    }
    flush();
    if (out.empty()) {
        throw ParseError("empty expression", line_number);
    }
    return out;
}

struct ExprNode {
    bool leaf = false;
    std::size_t var_index = 0;
    std::string name;
    std::vector<ExprNode> children;
};

ExprNode parse_expr_tokens(const std::vector<ExprToken>& tokens, std::size_t* pos,
                           int line_number) {
    if (*pos >= tokens.size()) {
        throw ParseError("unexpected end of expression", line_number);
    }
    const ExprToken& tok = tokens[*pos];
    if (tok.kind == ExprToken::atom) {
        ++*pos;
        if (tok.text.size() < 2 || tok.text[0] != 'Z') {
            throw ParseError("expected a variable 'Z<i>', got '" + tok.text + "'", line_number);
        }
        ExprNode node;
        node.leaf = true;
        try {
            std::size_t idx = std::stoul(tok.text.substr(1));
            if (idx == 0) {
                throw std::invalid_argument("zero");
            }
            node.var_index = idx - 1;
        } catch (const std::exception&) {
            throw ParseError("invalid variable '" + tok.text + "'", line_number);
        }
        return node;
    }
    if (tok.kind != ExprToken::open) {
        throw ParseError("unexpected ')'", line_number);
    }
    ++*pos;
    if (*pos >= tokens.size() || tokens[*pos].kind != ExprToken::atom) {
        throw ParseError("expected a glue name after '('", line_number);
    }
    ExprNode node;
    node.name = tokens[*pos].text;
    ++*pos;
    while (*pos < tokens.size() && tokens[*pos].kind != ExprToken::close) {
        node.children.push_back(parse_expr_tokens(tokens, pos, line_number));
    }
    if (*pos >= tokens.size()) {
        throw ParseError("missing ')'", line_number);
    }
    ++*pos;
    if (node.children.empty()) {
        throw ParseError("glue node '" + node.name + "' has no children", line_number);
    }
    return node;
}

GlueExpression build_expression(const ExprNode& node,
                                const std::map<std::string, GlueOperator>& glues,
                                int line_number) {
    if (node.leaf) {
        return GlueExpression::leaf(node.var_index);
    }
    auto it = glues.find(node.name);
    if (it == glues.end()) {
        throw ParseError("expression references undefined glue '" + node.name + "'", line_number);
    }
    std::vector<GlueExpression> children;
    children.reserve(node.children.size());
    for (const auto& c : node.children) {
        children.push_back(build_expression(c, glues, line_number));
    }
    return GlueExpression::node(node.name, it->second, std::move(children));
}

void collect_nodes(const GlueExpression& e, std::vector<const GlueExpression*>* out) {
    if (e.is_leaf()) {
        return;
    }
    out->push_back(&e);
    for (const auto& c : e.children()) {
        collect_nodes(c, out);
    }
}

} // namespace

GlueExpression parse_expression(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    int expr_line = 0;
    std::string expr_text;
    std::string glue_text;
    std::vector<std::pair<int, std::string>> glue_chunks; // (line, text)

    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        std::string stripped = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream linein(stripped);
        std::string first;
        linein >> first;
        if (first == "expr") {
            if (!expr_text.empty()) {
                throw ParseError("duplicate expr directive", number);
            }
            expr_line = number;
            expr_text = stripped.substr(stripped.find("expr") + 4);
        } else if (first == "glue") {
            if (!glue_text.empty()) {
                glue_chunks.back().second = glue_text;
            }
            glue_chunks.push_back({number, ""});
            glue_text = stripped + "\n";
        } else if (!first.empty()) {
            if (glue_text.empty()) {
                throw ParseError("directive '" + first + "' outside a glue block", number);
            }
            glue_text += stripped + "\n";
        }
    }
    if (!glue_text.empty() && !glue_chunks.empty()) {
        glue_chunks.back().second = glue_text;
    }
    if (expr_text.empty()) {
        throw ParseError("missing expr directive");
    }

    std::map<std::string, GlueOperator> glues;
    for (const auto& [line, chunk] : glue_chunks) {
        NamedGlue named = parse_glue(chunk);
        if (!glues.emplace(named.name, named.glue).second) {
            throw ParseError("glue '" + named.name + "' defined twice", line);
        }
    }

    auto tokens = lex_expr(expr_text, expr_line);
    std::size_t pos = 0;
    ExprNode root = parse_expr_tokens(tokens, &pos, expr_line);
    if (pos != tokens.size()) {
        throw ParseError("trailing tokens after the expression", expr_line);
    }
    if (root.leaf) {
        throw ParseError("the top-level expression must be a glue application", expr_line);
    }
    GlueExpression expr = build_expression(root, glues, expr_line);
    expr.variable_count(); // validates Z1..Zn usage
    return expr;
}

std::string serialize_expression(const GlueExpression& expr) {
    std::ostringstream out;
    out << "expr " << expr.str() << '\n';
    std::vector<const GlueExpression*> nodes;
    collect_nodes(expr, &nodes);
    std::set<std::string> seen;
    for (const auto* node : nodes) {
        if (!seen.insert(node->name()).second) {
            throw ValidationError("expression node name '" + node->name() + "' is not unique");
        }
        out << '\n' << serialize_glue({node->name(), node->op()});
    }
    return out.str();
}

bool expressions_equal(const GlueExpression& a, const GlueExpression& b) {
    if (a.is_leaf() != b.is_leaf()) {
        return false;
    }
    if (a.is_leaf()) {
        return a.var_index() == b.var_index();
    }
    if (a.name() != b.name() || !(a.op() == b.op()) ||
        a.children().size() != b.children().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.children().size(); ++i) {
        if (!expressions_equal(a.children()[i], b.children()[i])) {
            return false;
        }
    }
    return true;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << content;
}

} // namespace bipglue
