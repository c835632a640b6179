#include "blochgauge/runner.hpp"
#include "blochgauge/parallel.hpp"
#include "blochgauge/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

namespace blochgauge {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

// Output paths must be writable before any computation starts.
void prepare_output(const AuditConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec)
        throw config_error("cannot create output directory '" + cfg.out_dir + "'");
    const std::string probe = (fs::path(cfg.out_dir) / (cfg.basename + ".probe")).string();
    write_file(probe, "");
    fs::remove(probe, ec);
}

std::string out_path(const AuditConfig& cfg, const char* extension) {
    return (fs::path(cfg.out_dir) / (cfg.basename + extension)).string();
}

void emit(const AuditConfig& cfg, const std::string& csv, const json& summary) {
    if (cfg.format == "csv" || cfg.format == "both")
        write_file(out_path(cfg, ".csv"), csv);
    if (cfg.format == "json" || cfg.format == "both")
        write_file(out_path(cfg, ".json"), summary.dump(2) + "\n");
}

unsigned worker_count(const AuditConfig& cfg) {
    return cfg.workers == 0 ? default_workers() : cfg.workers;
}

json base_summary(const AuditConfig& cfg) {
    json s;
    s["command"] = cfg.command;
    s["config_echo"] = cfg.echo;
    return s;
}

bool weight_moderateness_known(const Weight& w) {
    return w.kind != WeightKind::tabulated;
}

// Zero-freeness needed by the lemma: declared, or certified on the sampled
// disk by the argument principle (n = 1).
void require_zero_free(const HoloFunction& f, int levels) {
    if (zero_free_declared(f))
        return;
    if (f.n == 1) {
        const double reach = 1.0 - SampleGrid::dz(levels) / 2.0;
        if (winding_number(f, 0.0, reach) == 0)
            return;
        throw config_error("lemma command needs a zero-free function spec");
    }
    throw config_error("cannot verify zero-freeness of the function spec in n > 1; "
                       "declare an empty zero list or use a structurally zero-free form");
}

} // namespace

int run_check(const AuditConfig& cfg) {
    prepare_output(cfg);
    HoloFunction f = build_function(cfg.function_spec, cfg.nodes);
    Weight w = build_weight(cfg.weight_spec);

    SampleGrid grid;
    grid.n = f.n;
    grid.radial_levels = cfg.grid_k;
    grid.direction_count = cfg.grid_j;
    grid.seed = cfg.seed;

    CriteriaReport report = run_criteria(f, w, grid, cfg.boundary_samples, worker_count(cfg));

    json summary = base_summary(cfg);
    const char* names[4] = {"lhs_i", "lhs_ii", "lhs_iii", "lhs_iv"};
    for (int c = 0; c < 4; ++c) {
        summary["empirical_constants"][names[c]] =
            json_value(report.empirical_constants[static_cast<std::size_t>(c)]);
        summary["trend_flags"][names[c]] = report.trends[static_cast<std::size_t>(c)];
        json rm = json::array();
        for (double v : report.row_maxima[static_cast<std::size_t>(c)])
            rm.push_back(json_value(v));
        summary["row_maxima"][names[c]] = rm;
    }
    summary["verdict"] = report.verdict;
    summary["flags"]["zero_info_verified"] = report.zero_info_verified;
    summary["flags"]["omega_moderateness_verified"] = weight_moderateness_known(w);
    summary["weight_diagnostics"]["moderateness_constant"] =
        json_value(moderateness_constant(w, cfg.weight_k_max));

    emit(cfg, criteria_csv(report), summary);
    return 0;
}

int run_lemma(const AuditConfig& cfg) {
    prepare_output(cfg);
    HoloFunction g = build_function(cfg.function_spec, cfg.nodes);
    require_zero_free(g, cfg.grid_k);

    SampleGrid grid;
    grid.n = g.n;
    grid.radial_levels = cfg.grid_k;
    grid.direction_count = cfg.grid_j;
    grid.seed = cfg.seed;
    const auto dirs = grid.directions();

    // the origin joins the grid: the extremal configurations sit there
    std::vector<BallPoint> points;
    std::vector<MarginRow> rows;
    points.push_back(BallPoint(cvec(g.n, 0.0)));
    rows.push_back(MarginRow{0, 0, 1.0, 0.0});
    for (int k = 1; k <= grid.radial_levels; ++k)
        for (int j = 0; j < static_cast<int>(dirs.size()); ++j) {
            points.push_back(grid.point(k, dirs[static_cast<std::size_t>(j)]));
            rows.push_back(MarginRow{k, j, SampleGrid::dz(k), 0.0});
        }

    // |g| <= 1 is a precondition on the function, not a numerical failure
    for (const BallPoint& z : points)
        if (std::abs(eval(g, z)) > 1.0 + 1e-9)
            throw config_error("lemma command needs |g| <= 1; |g| = " +
                               std::to_string(std::abs(eval(g, z))) + " at " +
                               format_point(z.coords));

    parallel_for(points.size(), worker_count(cfg), [&](std::size_t i) {
        rows[i].margin = schwarz_pick_margin(g, points[i]);
    });

    std::size_t argmin = 0;
    std::vector<double> sorted;
    sorted.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].margin < rows[argmin].margin)
            argmin = i;
        sorted.push_back(rows[i].margin);
    }
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    json summary = base_summary(cfg);
    summary["margins"]["min"] = json_value(rows[argmin].margin);
    summary["margins"]["median"] = json_value(median);
    summary["margins"]["extremal_point"]["k"] = rows[argmin].k;
    summary["margins"]["extremal_point"]["j"] = rows[argmin].j;
    summary["margins"]["extremal_point"]["d_z"] = json_value(rows[argmin].dz);
    summary["margins"]["violated"] = rows[argmin].margin < -cfg.tolerance;

    emit(cfg, margins_csv(rows), summary);

    if (rows[argmin].margin < -cfg.tolerance)
        throw numerical_error("schwarz-pick margin " + format_value(rows[argmin].margin) +
                              " below -tolerance at grid point k=" +
                              std::to_string(rows[argmin].k) + " j=" +
                              std::to_string(rows[argmin].j));
    return 0;
}

int run_thm2(const AuditConfig& cfg) {
    prepare_output(cfg);
    BoundaryData bd = build_boundary(cfg.boundary_spec);
    Weight w = build_weight(cfg.weight_spec);

    std::vector<QuantityRow> rows;
    for (int k = 1; k <= cfg.grid_k; ++k)
        for (int j = 0; j < cfg.grid_j; ++j)
            rows.push_back(QuantityRow{k, j, SampleGrid::dz(k), 0.0});

    parallel_for(rows.size(), worker_count(cfg), [&](std::size_t i) {
        const QuantityRow& r = rows[i];
        cplx z = std::polar(1.0 - r.dz, 2.0 * M_PI * r.j / cfg.grid_j);
        rows[i].value = poisson_oscillation(bd, w, z, cfg.nodes, cfg.boundary_samples);
    });

    std::vector<double> row_maxima(static_cast<std::size_t>(cfg.grid_k), 0.0);
    double sup = 0.0;
    for (const QuantityRow& r : rows) {
        sup = std::max(sup, r.value);
        auto& m = row_maxima[static_cast<std::size_t>(r.k - 1)];
        m = std::max(m, r.value);
    }

    HpNorm hp = hp_norm(bd, cfg.hardy_p, cfg.nodes);

    json summary = base_summary(cfg);
    summary["thm2"]["sup"] = json_value(sup);
    json rm = json::array();
    for (double v : row_maxima)
        rm.push_back(json_value(v));
    summary["thm2"]["row_maxima"] = rm;
    summary["thm2"]["trend"] = trend_verdict(row_maxima);
    summary["hardy"]["p"] = json_value(cfg.hardy_p);
    summary["hardy"]["psi_norm"] = json_value(hp.value);
    summary["hardy"]["log_psi_integrable"] = hp.log_integrable;

    emit(cfg, quantities_csv(rows, "thm2"), summary);
    return 0;
}

int run_little_bloch(const AuditConfig& cfg) {
    prepare_output(cfg);
    BoundaryData bd = build_boundary(cfg.boundary_spec);
    std::vector<double> q = little_bloch_scan(bd, cfg.grid_k, cfg.grid_j, cfg.nodes,
                                              cfg.boundary_samples, worker_count(cfg));

    json summary = base_summary(cfg);
    json seq = json::array();
    for (double v : q)
        seq.push_back(json_value(v));
    summary["little_bloch"]["q"] = seq;
    if (!q.empty()) {
        summary["little_bloch"]["q_first"] = json_value(q.front());
        summary["little_bloch"]["q_last"] = json_value(q.back());
        summary["little_bloch"]["decay_ratio"] =
            q.front() > 0.0 ? json_value(q.back() / q.front()) : json_value(0.0);
    }
    summary["little_bloch"]["trend"] = trend_verdict(q);

    emit(cfg, sequence_csv(q), summary);
    return 0;
}

int run_weights(const AuditConfig& cfg) {
    prepare_output(cfg);
    Weight w = build_weight(cfg.weight_spec);
    const double cmod = moderateness_constant(w, cfg.weight_k_max);
    const double ratio = fast_majorant_ratio(w, cfg.weight_delta);
    const char* cls = to_string(classify(w));

    std::string csv = "kind,parameter,moderateness_constant,fast_majorant_ratio,classification\n";
    csv += cfg.weight_spec.value("kind", "?") + "," + format_value(w.param) + "," +
           format_value(cmod) + "," + format_value(ratio) + "," + cls + "\n";

    json summary = base_summary(cfg);
    summary["weights"]["moderateness_constant"] = json_value(cmod);
    summary["weights"]["fast_majorant_ratio"] = json_value(ratio);
    summary["weights"]["classification"] = cls;
    summary["weights"]["delta"] = json_value(cfg.weight_delta);
    summary["weights"]["k_max"] = cfg.weight_k_max;

    emit(cfg, csv, summary);
    return 0;
}

int run_audit(const AuditConfig& cfg) {
    try {
        if (cfg.command == "check")
            return run_check(cfg);
        if (cfg.command == "lemma")
            return run_lemma(cfg);
        if (cfg.command == "thm2")
            return run_thm2(cfg);
        if (cfg.command == "little-bloch")
            return run_little_bloch(cfg);
        if (cfg.command == "weights")
            return run_weights(cfg);
        std::cerr << "error: unknown command '" << cfg.command << "'\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace blochgauge
