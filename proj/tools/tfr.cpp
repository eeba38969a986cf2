#include "tfr/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"toric face ring classification"};
    app.require_subcommand(1);
    tfr::CommandOptions opt;
    std::optional<unsigned long> ch;

    auto common = [&](CLI::App* sub, bool residue_flags) {
        sub->add_option("path", opt.path, "complex document (JSON)")->required();
        sub->add_option("--char", ch, "override the characteristic (0 or a prime)");
        if (!residue_flags) return;
        sub->add_option("--r", opt.r, "even index r for residues");
        sub->add_option("--nmax", opt.nmax, "largest n tested for invertibility");
        sub->add_option("--box", opt.box, "verification box radius for generator mode");
        sub->add_option("--center", opt.center, "lc center for higher residues (cone id)");
    };
    common(app.add_subcommand("validate", "check the document"), false);
    common(app.add_subcommand("classify", "normality and log pair classification"), true);
    common(app.add_subcommand("centers", "lc centers and the LCS locus"), true);
    common(app.add_subcommand("residues", "differents, residue constants, gluing"), true);
    common(app.add_subcommand("chain", "LCS chain with induced boundaries"), true);
    auto* gen = app.add_subcommand("generate", "emit a fixture document");
    gen->add_option("kind", opt.kind, "coordinate-arrangement | stanley-reisner | cusp-cone")->required();
    gen->add_option("params", opt.params, "kind parameters");
    gen->add_option("--char", ch, "characteristic of the document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
    opt.characteristic = ch;
    auto res = tfr::run_command(opt);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
