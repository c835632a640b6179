#include "blochgauge/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace blochgauge {

using nlohmann::json;

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

[[noreturn]] void bad(const std::string& message) {
    throw config_error(message);
}

double require_number(const json& j, const char* what) {
    if (!j.is_number())
        bad(std::string(what) + " must be a number");
    return j.get<double>();
}

cplx parse_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad(std::string(what) + " must be a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

// zeros: [re, im] pairs for n = 1, lists of pairs for n > 1
std::vector<cvec> parse_zeros(const json& j) {
    std::vector<cvec> zeros;
    if (!j.is_array())
        bad("zeros must be an array");
    for (const json& z : j) {
        if (!z.is_array() || z.empty())
            bad("zero entries must be points");
        if (z[0].is_number()) {
            zeros.push_back(cvec{parse_complex(z, "zero")});
        } else {
            cvec point;
            for (const json& c : z)
                point.push_back(parse_complex(c, "zero coordinate"));
            zeros.push_back(std::move(point));
        }
    }
    return zeros;
}

cvec generated_series(const std::string& name, std::size_t degree) {
    if (degree < 1 || degree > 4096)
        bad("series degree must lie in [1, 4096]");
    cvec c(degree + 1, 0.0);
    if (name == "identity") {
        c.assign(2, 0.0);
        c[1] = 1.0;
    } else if (name == "geometric") { // truncation of 1/(1-z)
        c.assign(degree + 1, 1.0);
    } else if (name == "log_inverse") { // truncation of log(1/(1-z))
        for (std::size_t j2 = 1; j2 <= degree; ++j2)
            c[j2] = 1.0 / static_cast<double>(j2);
    } else {
        bad("unknown series generator '" + name + "'");
    }
    return c;
}

std::function<double(cplx)> named_density(const std::string& name) {
    if (name == "one")
        return [](cplx) { return 1.0; };
    if (name == "two")
        return [](cplx) { return 2.0; };
    if (name == "half")
        return [](cplx) { return 0.5; };
    if (name == "exp_cos")
        return [](cplx z) { return std::exp(z.real()); };
    if (name == "exp_cos_minus_one")
        return [](cplx z) { return std::exp(z.real() - 1.0); };
    if (name == "abs_one_minus_zeta")
        return [](cplx z) { return std::abs(1.0 - z); };
    bad("unknown density preset '" + name + "'");
}

std::vector<Atom> parse_atoms(const json& j) {
    std::vector<Atom> atoms;
    if (j.is_null())
        return atoms;
    if (!j.is_array())
        bad("atoms must be an array of [angle, mass] pairs");
    for (const json& a : j) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
            bad("atoms must be [angle, mass] pairs");
        atoms.push_back(Atom{std::polar(1.0, a[0].get<double>()), a[1].get<double>()});
    }
    return atoms;
}

} // namespace

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        bad("cannot open sample file '" + path + "'");
    std::vector<double> samples;
    std::string line;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::size_t index;
        double value;
        if (!(ls >> index >> value))
            bad("sample file line '" + line + "' is not an 'index value' pair");
        if (index != expected)
            bad("sample file indices must run 0,1,2,... (got " + std::to_string(index) + ")");
        samples.push_back(value);
        ++expected;
    }
    if (!is_power_of_two(samples.size()))
        bad("sample file length must be a power of two");
    return samples;
}

BoundaryData build_boundary(const json& spec) {
    if (!spec.is_object())
        bad("boundary spec must be an object");
    std::vector<Atom> atoms = parse_atoms(spec.value("atoms", json()));

    const json density = spec.value("density", json("one"));
    if (density.is_string()) {
        const std::string name = density.get<std::string>();
        if (name == "one")
            return BoundaryData::atoms_only(std::move(atoms)); // log psi == 0 exactly
        return BoundaryData::from_callable(named_density(name), std::move(atoms));
    }
    if (density.is_object()) {
        if (density.contains("file"))
            return BoundaryData::from_samples(
                read_sample_file(density["file"].get<std::string>()), std::move(atoms));
        if (density.contains("samples")) {
            std::vector<double> samples;
            for (const json& v : density["samples"])
                samples.push_back(require_number(v, "density sample"));
            return BoundaryData::from_samples(std::move(samples), std::move(atoms));
        }
    }
    bad("density must be a named preset, {\"file\": path} or {\"samples\": [...]}");
}

HoloFunction build_function(const json& spec, std::size_t herglotz_nodes) {
    if (!spec.is_object() || !spec.contains("tag"))
        bad("function spec must be an object with a 'tag'");
    const std::string tag = spec["tag"].get<std::string>();

    std::optional<std::vector<cvec>> zeros;
    if (spec.contains("zeros"))
        zeros = parse_zeros(spec["zeros"]);

    if (tag == "power_series") {
        const std::size_t n = spec.value("n", 1);
        if (n == 1) {
            cvec coeffs;
            if (spec.contains("series")) {
                const json& s = spec["series"];
                coeffs = generated_series(s.value("name", ""), s.value("degree", 0));
            } else if (spec.contains("coefficients")) {
                for (const json& c : spec["coefficients"])
                    coeffs.push_back(parse_complex(c, "coefficient"));
            } else {
                bad("power_series needs 'coefficients' or 'series'");
            }
            return make_power_series(std::move(coeffs), std::move(zeros));
        }
        std::vector<SeriesTerm> terms;
        if (!spec.contains("terms"))
            bad("power_series with n > 1 needs 'terms'");
        for (const json& t : spec["terms"]) {
            SeriesTerm term;
            for (const json& e : t.at("exponents"))
                term.exponents.push_back(e.get<int>());
            term.coeff = parse_complex(t.at("coeff"), "term coefficient");
            terms.push_back(std::move(term));
        }
        return make_power_series_nd(n, std::move(terms), std::move(zeros));
    }
    if (tag == "herglotz") {
        if (!spec.contains("boundary"))
            bad("herglotz spec needs 'boundary'");
        return make_herglotz(build_boundary(spec["boundary"]), herglotz_nodes);
    }
    if (tag == "product") {
        if (!spec.contains("factors") || !spec["factors"].is_array() || spec["factors"].empty())
            bad("product spec needs a nonempty 'factors' array");
        std::vector<HoloFunction> factors;
        for (const json& f : spec["factors"])
            factors.push_back(build_function(f, herglotz_nodes));
        HoloFunction p = make_product(std::move(factors));
        if (zeros)
            p.zeros = std::move(zeros);
        return p;
    }
    if (tag == "shifted_zero_poly") {
        const std::size_t n = spec.value("n", 1);
        if (!zeros || zeros->empty())
            bad("shifted_zero_poly needs a nonempty 'zeros' list");
        return make_zero_poly(n, std::move(*zeros));
    }
    bad("unknown function tag '" + tag + "'");
}

Weight build_weight(const json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        bad("weight spec must be an object with a 'kind'");
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "constant")
        return Weight::constant();
    if (kind == "power")
        return Weight::power(require_number(spec.at("alpha"), "alpha"));
    if (kind == "log_growth")
        return Weight::log_growth(require_number(spec.at("beta"), "beta"));
    if (kind == "power_growth")
        return Weight::power_growth(require_number(spec.at("beta"), "beta"));
    bad("unknown weight kind '" + kind + "'");
}

std::optional<std::uint64_t> seed_from_environment() {
    const char* env = std::getenv("BLOCHGAUGE_SEED");
    if (env == nullptr || *env == '\0')
        return std::nullopt;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0')
        throw config_error("BLOCHGAUGE_SEED must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

AuditConfig parse_config_json(const json& j) {
    if (!j.is_object())
        bad("config must be a JSON object");
    AuditConfig cfg;
    cfg.echo = j;
    cfg.command = j.value("command", "");
    if (cfg.command != "check" && cfg.command != "lemma" && cfg.command != "thm2" &&
        cfg.command != "little-bloch" && cfg.command != "weights")
        bad("command must be one of check, lemma, thm2, little-bloch, weights");

    cfg.function_spec = j.value("function", json());
    cfg.boundary_spec = j.value("boundary", json());
    cfg.weight_spec = j.value("weight", json({{"kind", "constant"}}));

    if (j.contains("grid")) {
        const json& g = j["grid"];
        cfg.grid_k = g.value("k", cfg.grid_k);
        cfg.grid_j = g.value("j", cfg.grid_j);
        cfg.nodes = g.value("nodes", cfg.nodes);
        cfg.boundary_samples = g.value("boundary_samples", cfg.boundary_samples);
    }
    cfg.workers = j.value("workers", 0u);
    cfg.tolerance = j.value("tolerance", 1e-9);
    cfg.seed = j.value("seed", 0ull);
    cfg.weight_k_max = j.value("k_max", 12);
    cfg.weight_delta = j.value("delta", 0.5);
    if (j.contains("p")) {
        if (j["p"].is_string()) {
            if (j["p"].get<std::string>() != "inf")
                bad("p must be a positive number or \"inf\"");
        } else {
            cfg.hardy_p = require_number(j["p"], "p");
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        cfg.out_dir = o.value("dir", cfg.out_dir);
        cfg.format = o.value("format", cfg.format);
        cfg.basename = o.value("basename", cfg.basename);
    }
    if (cfg.basename.empty())
        cfg.basename = cfg.command;

    // resource guards
    if (cfg.grid_k < 1 || cfg.grid_k > 16)
        bad("grid k must lie in [1, 16]");
    if (cfg.grid_j < 1 || cfg.grid_j > 1024)
        bad("grid j must lie in [1, 1024]");
    if (!is_power_of_two(cfg.nodes) || cfg.nodes < 64 || cfg.nodes > 65536)
        bad("nodes must be a power of two in [64, 65536]");
    if (cfg.boundary_samples < 8 || cfg.boundary_samples > 4096)
        bad("boundary_samples must lie in [8, 4096]");
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both")
        bad("format must be csv, json or both");
    if (!(cfg.tolerance > 0.0))
        bad("tolerance must be positive");
    if (!(cfg.hardy_p > 0.0))
        bad("p must be positive");
    return cfg;
}

AuditConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        bad("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad("config parse error in '" + path + "': " + std::string(e.what()));
    }
    return parse_config_json(j);
}

} // namespace blochgauge
