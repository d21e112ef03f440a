#include "bipglue/report.hpp"

#include <sstream>

namespace bipglue {

namespace {

nlohmann::json pairs_json(const PrioritySet& pairs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [low, high] : pairs) {
        out.push_back({{"low", low.str()}, {"high", high.str()}});
    }
    return out;
}

} // namespace

nlohmann::json classification_json(const std::string& operator_name, const Classification& c) {
    nlohmann::json out;
    out["operator"] = operator_name;
    out["acyclic"] = c.acyclic;
    out["depth"] = c.acyclic ? nlohmann::json(c.depth_max) : nlohmann::json(nullptr);
    out["pairs"] = pairs_json(c.pairs);
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : c.layers) {
        layers.push_back(pairs_json(layer));
    }
    out["layers"] = layers;
    nlohmann::json verdicts;
    for (const auto& [key, verdict] : c.verdicts) {
        verdicts[key] = to_string(verdict);
    }
    out["verdicts"] = verdicts;
    if (c.cycle) {
        nlohmann::json cycle = nlohmann::json::array();
        for (const auto& a : *c.cycle) {
            cycle.push_back(a.str());
        }
        out["cycle"] = cycle;
    }
    return out;
}

std::string classification_text(const std::string& operator_name, const Classification& c) {
    std::ostringstream out;
    out << "operator: " << operator_name << '\n';
    out << "inhibiting pairs:";
    if (c.pairs.empty()) {
        out << " (none)";
    }
    for (const auto& [low, high] : c.pairs) {
        out << ' ' << low.str() << '<' << high.str();
    }
    out << '\n';
    if (c.acyclic) {
        out << "acyclic, depth " << c.depth_max << '\n';
        for (std::size_t i = 0; i < c.layers.size(); ++i) {
            out << "layer " << i + 1 << ':';
            for (const auto& [low, high] : c.layers[i]) {
                out << ' ' << low.str() << '<' << high.str();
            }
            out << '\n';
        }
    } else {
        out << "cyclic:";
        if (c.cycle) {
            for (const auto& a : *c.cycle) {
                out << ' ' << a.str();
            }
        }
        out << '\n';
    }
    for (const auto& [key, verdict] : c.verdicts) {
        out << key << ": " << to_string(verdict) << '\n';
    }
    return out.str();
}

nlohmann::json verification_json(const VerificationReport& report) {
    nlohmann::json out;
    out["equal"] = report.equal;
    out["behaviours_tested"] = report.behaviours_tested;
    if (report.first_discrepancy) {
        const auto& d = *report.first_discrepancy;
        out["first_discrepancy"] = {{"tuple", d.tuple_index},
                                    {"state", d.state},
                                    {"interaction", d.label.str()},
                                    {"target", d.target},
                                    {"side", d.side}};
    }
    return out;
}

std::string verification_text(const VerificationReport& report) {
    std::ostringstream out;
    out << "behaviour tuples tested: " << report.behaviours_tested << '\n';
    if (report.equal) {
        out << "result: equal\n";
    } else {
        out << "result: UNEQUAL\n";
        if (report.first_discrepancy) {
            const auto& d = *report.first_discrepancy;
            out << "first discrepancy: tuple " << d.tuple_index << ", transition " << d.state
                << " -" << d.label.str() << "-> " << d.target << " (" << d.side << ")\n";
        }
    }
    return out.str();
}

} // namespace bipglue
