#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hyperext/commands.hpp"
#include "hyperext/config.hpp"

using namespace hyperext;

int main(int argc, char** argv) {
    CLI::App app{"Boundary extension maps of hyperbolic space: verification, fields, probes, colorings, nets"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "JSON run configuration (defaults apply when omitted)");
    app.add_option("--seed", seed, "Override sampling.seed");
    app.add_option("--out", out_path, "Write output to this file instead of standard output");
    app.add_option("--threads", threads, "Worker threads (0 uses all cores)");

    auto* verify = app.add_subcommand("verify", "Run the property suite and print a JSON report");
    auto* extend = app.add_subcommand("extend", "Print the extension map over a grid as CSV");
    auto* probe = app.add_subcommand("probe", "Print the continuity modulus of the extension as CSV");
    auto* net = app.add_subcommand("net", "Build a separated net and print it as JSON");
    auto* color = app.add_subcommand("color", "Color an edge-list graph first-fit and print the colors as JSON");
    std::string graph_path;
    color->add_option("graph", graph_path, "Edge-list file, one \"u v\" pair per line")->required();
    for (auto* sub : {verify, extend, probe, net, color}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = config_path.empty() ? default_run_config() : load_run_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (seed) cfg.sampling.seed = *seed;
    if (threads) cfg.sampling.threads = *threads;
    if (!out_path.empty()) cfg.out = out_path;

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "error: cannot write " << cfg.out << '\n';
            return kExitUsage;
        }
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    if (*verify) return cmd_verify(cfg, out, std::cerr);
    if (*extend) return cmd_extend(cfg, out, std::cerr);
    if (*probe) return cmd_probe(cfg, out, std::cerr);
    if (*net) return cmd_net(cfg, out, std::cerr);
    std::ifstream edges(graph_path);
    if (!edges) {
        std::cerr << "error: cannot read " << graph_path << '\n';
        return kExitUsage;
    }
    return cmd_color(edges, out, std::cerr);
}
