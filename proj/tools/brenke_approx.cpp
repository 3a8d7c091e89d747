#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <brenke/cli.hpp>

namespace
{

int emit(const brenke::command_result &r, const std::string &out_path)
{
    std::cerr << r.diagnostics;
    if (r.output.empty()) {
        return r.code;
    }
    if (out_path.empty()) {
        std::cout << r.output;
        return r.code;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return brenke::exit_usage;
    }
    out << r.output;
    return r.code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Generalized Brenke-type Szasz operators: validation, evaluation and error-bound experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string family;
    std::string f_name;
    std::optional<std::int64_t> n;
    std::optional<double> x;
    std::string out_path;
    bool print_config = false;

    for (const char *name : {"validate", "eval", "moments", "converge", "bounds"}) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--family", family, "override the family kind");
        sub->add_option("--f", f_name, "registered function");
        sub->add_option("--n", n, "operator index");
        sub->add_option("--x", x, "evaluation point");
        sub->add_option("--out", out_path, "output path (stdout when omitted)");
        sub->add_flag("--print-config", print_config, "print the effective config and exit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : brenke::exit_usage;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    brenke::experiment_config cfg;
    try {
        if (!config_path.empty()) {
            cfg = brenke::load_config(config_path);
        }
        if (!family.empty()) {
            cfg.family.kind = family;
        }
        if (cmd != "eval") {
            if (x) {
                throw brenke::config_error("--x applies to eval only; use x_grid in the config");
            }
            if (n) {
                cfg.n_list = {*n};
            }
            if (!f_name.empty()) {
                cfg.functions = {f_name};
            }
        }
        cfg.validate();
        if (!cfg.family.kind.empty()) {
            // Reject unknown kinds as a usage error before any domain checks.
            (void)brenke::parse_config_text("[family]\nfamily = " + cfg.family.kind + "\n");
        }
    } catch (const brenke::config_error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return brenke::exit_usage;
    }
    if (out_path.empty()) {
        out_path = cfg.output_path;
    }
    if (print_config) {
        std::cout << brenke::to_config_text(cfg);
        return brenke::exit_ok;
    }

    if (cmd == "validate") {
        return emit(brenke::cmd_validate(cfg), out_path);
    }
    if (cmd == "eval") {
        if (f_name.empty() || !n || !x) {
            std::cerr << "eval requires --f, --n and --x\n";
            return brenke::exit_usage;
        }
        return emit(brenke::cmd_eval(cfg, f_name, *n, *x), out_path);
    }
    if (cmd == "moments") {
        return emit(brenke::cmd_moments(cfg), out_path);
    }
    if (cmd == "converge") {
        return emit(brenke::cmd_converge(cfg), out_path);
    }
    return emit(brenke::cmd_bounds(cfg), out_path);
}
