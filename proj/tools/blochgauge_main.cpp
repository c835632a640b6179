#include <iostream>

#include <CLI11.hpp>

#include "blochgauge/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"blochgauge: audits holomorphic functions on the disk and ball "
                 "against modulus-based Bloch-type membership criteria"};

    std::string config_path;
    std::string out_dir;
    std::string format;
    int grid_k = -1;
    long nodes = -1;
    long workers = -1;
    double tolerance = -1.0;

    app.add_option("--config", config_path, "audit config file (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--grid-k", grid_k, "radial levels K (overrides the config)");
    app.add_option("--nodes", nodes, "circle quadrature nodes, power of two");
    app.add_option("--workers", workers, "worker threads (default: hardware)");
    app.add_option("--tolerance", tolerance, "identity-check tolerance");
    app.add_option("--format", format, "report format: csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    CLI11_PARSE(app, argc, argv);

    try {
        blochgauge::AuditConfig cfg = blochgauge::parse_config_file(config_path);
        if (auto env_seed = blochgauge::seed_from_environment())
            cfg.seed = *env_seed;
        if (!out_dir.empty())
            cfg.out_dir = out_dir;
        if (!format.empty())
            cfg.format = format;
        if (grid_k > 0)
            cfg.grid_k = grid_k;
        if (nodes > 0)
            cfg.nodes = static_cast<std::size_t>(nodes);
        if (workers > 0)
            cfg.workers = static_cast<unsigned>(workers);
        if (tolerance > 0.0)
            cfg.tolerance = tolerance;

        cfg.echo["resolved"] = {{"out", cfg.out_dir},
                                {"format", cfg.format},
                                {"grid_k", cfg.grid_k},
                                {"nodes", cfg.nodes},
                                {"tolerance", cfg.tolerance},
                                {"seed", cfg.seed}};
        // revalidate after overrides
        if (cfg.grid_k < 1 || cfg.grid_k > 16 || (cfg.nodes & (cfg.nodes - 1)) != 0 ||
            cfg.nodes < 64 || cfg.nodes > 65536) {
            std::cerr << "error: grid overrides out of range\n";
            return 2;
        }
        return blochgauge::run_audit(cfg);
    } catch (const blochgauge::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}
