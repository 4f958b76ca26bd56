#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "latticerect/errors.hpp"
#include "latticerect/io.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw latticerect::ValidationError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw latticerect::ValidationError("cannot write file: " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latticerect: stable free lattice graphs over localized polynomial rings"};
    app.require_subcommand(1);

    std::string input_path, dot_path, json_path;
    int word_bound = -1, window = -1;
    unsigned long seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input_path, "input JSON file")->required();
        sub->add_option("--dot", dot_path, "write the class graph as DOT");
        sub->add_option("--json", json_path, "write the report as JSON");
        sub->add_option("--word-bound", word_bound, "override the closure word bound");
        sub->add_option("--window", window, "override the stabilization window");
        sub->add_option("--seed", seed, "seed for the randomized property checks in verify");
    };
    add_common(app.add_subcommand("analyze", "hypotheses and reducibility data"));
    add_common(app.add_subcommand("graph", "build the lattice class graph"));
    add_common(app.add_subcommand("verify", "run every structure-theorem check and oracle"));
    add_common(app.add_subcommand("iwasawa", "symbolic divisor tables for the declared ring"));

    CLI11_PARSE(app, argc, argv);

    try {
        latticerect::RunOptions opts;
        opts.command = app.get_subcommands().front()->get_name();
        if (word_bound > 0) opts.word_bound = word_bound;
        if (window > 0) opts.window = window;
        opts.seed = seed;
        latticerect::InputSpec spec = latticerect::parse_input(slurp(input_path));
        latticerect::RunResult res = latticerect::run(spec, opts);
        if (!dot_path.empty() && !res.dot.empty()) spill(dot_path, res.dot);
        if (!json_path.empty()) spill(json_path, res.report.dump(2) + "\n");
        std::cout << res.report.dump(2) << std::endl;
        return res.checks_passed ? 0 : 1;
    } catch (const latticerect::ParseError& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 2;
    } catch (const latticerect::ValidationError& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 2;
    } catch (const latticerect::HintInsufficient& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 2;
    } catch (const latticerect::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
