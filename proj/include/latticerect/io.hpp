#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticerect/graph.hpp"
#include "latticerect/iwasawa.hpp"
#include "latticerect/repr.hpp"

namespace latticerect {

struct IwasawaSpec {
    std::vector<std::string> prime_labels;
    std::vector<long> multiplicities;
    std::vector<long> ap_orders;
    bool ap_remainder = false;
    std::vector<std::string> pfour_labels;
    std::vector<long> vertex;

    iwasawa::TokenRing to_ring() const;
};

struct InputSpec {
    BaseField field = BaseField::rationals();
    std::vector<std::string> variables;
    std::vector<std::pair<std::string, Matrix2>> generators;
    ClosurePolicy closure;
    std::vector<PrimeElem> prime_hints;
    std::optional<IwasawaSpec> iwasawa_spec;

    Representation to_representation() const;
};

/// Parses and fully validates the JSON input document.
InputSpec parse_input(const std::string& json_text);

struct RunOptions {
    std::string command;  // analyze | graph | verify | iwasawa
    std::optional<int> word_bound;
    std::optional<int> window;
    unsigned long seed = 1;  // randomized property checks in `verify` only
};

struct RunResult {
    nlohmann::ordered_json report;
    std::string dot;  // nonempty for graph/verify
    bool checks_passed = true;
};

RunResult run(const InputSpec& spec, const RunOptions& opts);

std::string emit_dot(const LatticeGraph& graph, const std::vector<std::string>& names);
nlohmann::ordered_json graph_to_json(const LatticeGraph& graph,
                                     const std::vector<std::string>& names);

}  // namespace latticerect
