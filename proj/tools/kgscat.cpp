#include <iostream>

#include <CLI11.hpp>

#include "kgscat/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Scattering, linear decay and quadratic Klein-Gordon experiments"};
    app.require_subcommand(1);
    kgscat::CommandOptions opt;
    for (const char* name : {"scatter", "linear-decay", "nlkg", "selftest"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "experiment config (key = value with sections)");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_flag("--svg", opt.svg, "also write SVG plots");
        sub->add_option("--cache-basis", opt.cache_basis, "basis cache file, read if it matches, written otherwise");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return kgscat::run_command(app.get_subcommands().front()->get_name(), opt, std::cerr);
}
