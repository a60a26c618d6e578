// ssbh: steady states, transients and rectification of a Bose-Hubbard site between two baths

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssbh/cli/commands.hpp"
#include "ssbh/error.hpp"
#include "ssbh/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
    std::string config;
    std::vector<std::string> overrides;
    std::string output;
    std::string format{"csv"};
    double tol{0.0};
    bool quiet{false};
    std::size_t threads{ssbh::default_threads()};
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("-c,--config", c.config, "key = value or JSON configuration file");
    sub->add_option("-s,--set", c.overrides, "override a key, e.g. --set chi=2")->take_all();
    sub->add_option("-o,--output", c.output, "output file (default stdout)");
    sub->add_option("-f,--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", c.tol, "truncation tolerance on populations and currents");
    sub->add_flag("-q,--quiet", c.quiet, "suppress warnings on stderr");
    sub->add_option("-j,--threads", c.threads, "worker threads for grid points (default: all cores)")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bose-Hubbard site between two thermal baths"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ssbh::cli::library_version());

    Common common;
    using Handler = ssbh::cli::Table (*)(const ssbh::cli::KeyValues&, const ssbh::cli::RunOptions&);
    const std::vector<std::tuple<const char*, const char*, Handler>> commands{
        {"ness", "steady-state populations and currents", ssbh::cli::cmd_ness},
        {"scan", "steady currents and rectification along one parameter axis", ssbh::cli::cmd_scan},
        {"dynamics", "relaxation from an initial state", ssbh::cli::cmd_dynamics},
        {"tss", "relaxation time versus chi", ssbh::cli::cmd_tss},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help, fn] : commands) {
        subs.push_back(app.add_subcommand(name, help));
        add_common(subs.back(), common);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        ssbh::cli::KeyValues kv;
        if (!common.config.empty()) kv = ssbh::cli::load_config_file(common.config);
        for (const auto& o : common.overrides) ssbh::cli::apply_override(kv, o);
        if (common.tol > 0.0) kv["tol"] = ssbh::cli::format_number(common.tol);

        ssbh::cli::Table table;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) table = std::get<2>(commands[i])(kv, {common.threads});

        if (!common.quiet)
            for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';

        const auto format = common.format == "json" ? ssbh::cli::Format::Json : ssbh::cli::Format::Csv;
        if (common.output.empty()) {
            ssbh::cli::write_table(std::cout, table, format);
        } else {
            std::ofstream out(common.output);
            if (!out) {
                std::cerr << "error: cannot open " << common.output << '\n';
                return kExitConfig;
            }
            ssbh::cli::write_table(out, table, format);
        }
    } catch (const ssbh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool config = e.code() == ssbh::ErrorCode::ConfigError || e.code() == ssbh::ErrorCode::InvalidParameter;
        return config ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
