#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toricdisc/toricdisc.hpp"

int main(int argc, char** argv) {
    CLI::App app{"toric-disc: sparse resultants and mixed discriminants of planar systems"};
    app.require_subcommand(1, 1);
    toricdisc::RunFlags flags;
    std::string input = "-";
    for (const auto& name : toricdisc::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("input", input, "system description (JSON file, - for stdin)");
        sub->add_option("--seed", flags.seed, "lifting seed");
        sub->add_option("--liftings", flags.liftings, "minimum number of liftings combined");
        sub->add_option("--method", flags.method, "auto, ce or macaulay")->check(CLI::IsMember({"auto", "ce", "macaulay"}));
        sub->add_flag("--audit", flags.audit, "include degree audits");
        sub->add_flag("--timing", flags.timing, "include wall-clock timing");
        auto* text = sub->add_flag("--text", flags.text, "plain text output");
        sub->add_flag("--json", "JSON output (default)")->excludes(text);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    std::stringstream buf;
    if (input == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "cannot open " << input << "\n";
            return 1;
        }
        buf << in.rdbuf();
    }
    toricdisc::RunReport rep;
    try {
        rep = toricdisc::run_command(cmd, toricdisc::parse_system(buf.str()), flags);
    } catch (const std::exception& e) {
        rep.body = {{"error", e.what()}, {"command", cmd}, {"seed", flags.seed}};
        rep.exit_code = 1;
    }
    std::cout << toricdisc::render(rep, flags);
    return rep.exit_code;
}
