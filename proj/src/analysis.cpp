#include "blochgauge/analysis.hpp"
#include "blochgauge/parallel.hpp"
#include "blochgauge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace blochgauge {

// ---------------------------------------------------------------------------
// low-discrepancy sampling

namespace {

constexpr std::uint64_t kPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                       23, 29, 31, 37, 41, 43, 47, 53};

double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

double splitmix_unit(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<cvec> sphere_points(std::size_t count, std::size_t n, std::uint64_t seed,
                                std::uint64_t stream) {
    const std::size_t dims = 2 * n;
    if (dims > 16)
        throw numerical_error("sphere sampling supports n <= 8");
    std::vector<double> shift(dims);
    for (std::size_t d = 0; d < dims; ++d)
        shift[d] = splitmix_unit(seed * 0x9e3779b97f4a7c15ull + stream * 0x2545f4914f6cdd1dull + d);

    std::vector<cvec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> g(dims);
        for (std::size_t d = 0; d + 1 < dims; d += 2) {
            double u1 = halton(i + 1, kPrimes[d]) + shift[d];
            double u2 = halton(i + 1, kPrimes[d + 1]) + shift[d + 1];
            u1 -= std::floor(u1);
            u2 -= std::floor(u2);
            u1 = std::max(u1, 1e-17);
            double r = std::sqrt(-2.0 * std::log(u1));
            g[d] = r * std::cos(2.0 * M_PI * u2);
            g[d + 1] = r * std::sin(2.0 * M_PI * u2);
        }
        double norm = 0.0;
        for (double v : g)
            norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-12)
            norm = 1.0;
        cvec p(n);
        for (std::size_t c = 0; c < n; ++c)
            p[c] = cplx(g[2 * c] / norm, g[2 * c + 1] / norm);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<cvec> SampleGrid::directions() const {
    std::vector<cvec> dirs;
    if (n == 1) {
        dirs.reserve(direction_count);
        for (int j = 0; j < direction_count; ++j)
            dirs.push_back(cvec{std::polar(1.0, 2.0 * M_PI * j / direction_count)});
        return dirs;
    }
    return sphere_points(direction_count, n, seed);
}

BallPoint SampleGrid::point(int k, const cvec& direction) const {
    const double r = 1.0 - dz(k);
    cvec c(direction.size());
    for (std::size_t i = 0; i < direction.size(); ++i)
        c[i] = r * direction[i];
    return BallPoint(std::move(c));
}

// ---------------------------------------------------------------------------
// argument-principle oracle

namespace {

// The winding number (1/2pi i) contour-int f'/f dw equals the total change
// of arg f around the contour divided by 2 pi. Tracking the argument is
// exact as soon as every step turns by less than pi, so steps that turn too
// fast are bisected locally; this resolves zeros sitting within ~1e-12 of
// the contour, where a fixed-node quadrature of f'/f would need ~3/delta
// nodes for a zero at relative distance delta.
struct ContourBreakdown {};

double arg_change(const HoloFunction& f, cplx center, double radius, double th1, double th2,
                  cplx f1, cplx f2, int depth) {
    double delta = std::arg(f2 / f1);
    if (std::abs(delta) <= M_PI / 2.0 || depth >= 48)
        return delta;
    double mid = 0.5 * (th1 + th2);
    cplx fm = eval1(f, center + std::polar(radius, mid));
    if (std::abs(fm) < 1e-12)
        throw ContourBreakdown{};
    return arg_change(f, center, radius, th1, mid, f1, fm, depth + 1) +
           arg_change(f, center, radius, mid, th2, fm, f2, depth + 1);
}

std::optional<int> winding_attempt(const HoloFunction& f, cplx center, double radius) {
    constexpr std::size_t nodes = 256;
    try {
        std::vector<cplx> values(nodes);
        for (std::size_t l = 0; l < nodes; ++l) {
            values[l] = eval1(f, center + std::polar(radius, 2.0 * M_PI * static_cast<double>(l) /
                                                                 static_cast<double>(nodes)));
            if (std::abs(values[l]) < 1e-12)
                return std::nullopt;
        }
        double total = 0.0;
        for (std::size_t l = 0; l < nodes; ++l) {
            double th1 = 2.0 * M_PI * static_cast<double>(l) / static_cast<double>(nodes);
            double th2 = 2.0 * M_PI * static_cast<double>(l + 1) / static_cast<double>(nodes);
            total += arg_change(f, center, radius, th1, th2, values[l],
                                values[(l + 1) % nodes], 0);
        }
        double turns = total / (2.0 * M_PI);
        double rounded = std::round(turns);
        if (std::abs(turns - rounded) <= 0.25 && rounded >= 0.0)
            return static_cast<int>(rounded);
        return std::nullopt;
    } catch (const ContourBreakdown&) {
        return std::nullopt;
    }
}

} // namespace

int winding_number(const HoloFunction& f, cplx center, double radius) {
    if (f.n != 1)
        throw numerical_error("argument-principle oracle needs n = 1");
    if (auto w = winding_attempt(f, center, radius))
        return *w;
    if (auto w = winding_attempt(f, center, radius * (1.0 - 1e-3)))
        return *w;
    throw numerical_error("argument-principle contour failed near " + format_complex(center));
}

// ---------------------------------------------------------------------------
// E membership

EStatus e_membership(const HoloFunction& f, const BallPoint& z) {
    const double rho = z.dz / 2.0;
    if (f.zeros) {
        for (const cvec& zero : *f.zeros) {
            double d = 0.0;
            for (std::size_t i = 0; i < zero.size(); ++i)
                d += std::norm(zero[i] - z.coords[i]);
            if (std::sqrt(d) < rho)
                return EStatus{true, true};
        }
        return EStatus{false, true};
    }
    if (f.n == 1)
        return EStatus{winding_number(f, z.coords[0], (1.0 - 1e-6) * rho) > 0, true};
    return EStatus{false, false}; // E-membership assumed false (unverified)
}

bool in_E(const HoloFunction& f, const BallPoint& z) {
    return e_membership(f, z).inside;
}

// ---------------------------------------------------------------------------
// modulus extrema on the boundary sphere of the closed sub-ball

namespace {

// Golden-section maximization of a smooth function over a short bracket.
// The caller supplies a bracket around the best coarse sample; the return
// value never falls below the evaluated points.
double golden_max(const std::function<double(double)>& h, double a, double b) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = h(x1), f2 = h(x2);
    double best = std::max(f1, f2);
    for (int it = 0; it < 72; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = h(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = h(x1);
        }
        best = std::max(best, std::max(f1, f2));
    }
    return best;
}

double circle_extremum(const std::function<double(double)>& h, int coarse, bool maximize) {
    auto signed_h = [&](double th) { return maximize ? h(th) : -h(th); };
    const int l0 = std::max(coarse, 16);
    double best = -std::numeric_limits<double>::infinity();
    int best_l = 0;
    for (int l = 0; l < l0; ++l) {
        double v = signed_h(2.0 * M_PI * l / l0);
        if (v > best) {
            best = v;
            best_l = l;
        }
    }
    const double window = 2.0 * M_PI / l0;
    const double center = 2.0 * M_PI * best_l / l0;
    double refined = golden_max(signed_h, center - window, center + window);
    best = std::max(best, refined);
    return maximize ? best : -best;
}

struct SphereSearch {
    const HoloFunction& f;
    const BallPoint& z;
    double rho;

    double value(const cvec& u) const {
        cvec w(z.coords.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = z.coords[i] + rho * u[i];
        cplx v = eval(f, BallPoint(std::move(w)));
        return std::norm(v);
    }

    // projected gradient of |f|^2 on the sphere |w - z| = rho, as a complex
    // vector identified with R^{2n}
    cvec tangent_gradient(const cvec& u) const {
        cvec w(z.coords.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = z.coords[i] + rho * u[i];
        BallPoint wp(w);
        cplx fv = eval(f, wp);
        cvec gf = gradient(f, wp);
        cvec g(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            g[i] = fv * std::conj(gf[i]);
        double radial = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            radial += std::real(g[i] * std::conj(u[i]));
        for (std::size_t i = 0; i < u.size(); ++i)
            g[i] -= radial * u[i];
        return g;
    }
};

double sphere_extremum(const HoloFunction& f, const BallPoint& z, int samples,
                       bool maximize) {
    SphereSearch search{f, z, z.dz / 2.0};
    const double sign = maximize ? 1.0 : -1.0;
    auto points = sphere_points(static_cast<std::size_t>(std::max(samples, 8)),
                                z.dim(), 0, maximize ? 11 : 13);
    double best = -std::numeric_limits<double>::infinity();
    cvec u;
    for (const cvec& p : points) {
        double v = sign * search.value(p);
        if (v > best) {
            best = v;
            u = p;
        }
    }
    // 20 steps of projected ascent with step halving
    double step = 0.5;
    for (int it = 0; it < 20; ++it) {
        cvec g = search.tangent_gradient(u);
        double gn = euclidean_norm(g);
        if (gn < 1e-18)
            break;
        bool improved = false;
        while (step > 1e-12) {
            cvec cand(u.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                cand[i] = u[i] + sign * step * g[i] / gn;
            double cn = euclidean_norm(cand);
            for (cplx& c : cand)
                c /= cn;
            double v = sign * search.value(cand);
            if (v > best) {
                best = v;
                u = std::move(cand);
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved)
            break;
    }
    return std::sqrt(std::max(sign * best, 0.0));
}

} // namespace

double sup_modulus(const HoloFunction& f, const BallPoint& z, int boundary_samples) {
    const double rho = z.dz / 2.0;
    if (f.n == 1) {
        cplx c = z.coords[0];
        auto h = [&](double th) { return std::norm(eval1(f, c + std::polar(rho, th))); };
        return std::sqrt(std::max(circle_extremum(h, boundary_samples, true), 0.0));
    }
    return sphere_extremum(f, z, boundary_samples, true);
}

double inf_modulus(const HoloFunction& f, const BallPoint& z, int boundary_samples) {
    const double rho = z.dz / 2.0;
    // a zero inside the closed ball forces the infimum to 0
    if (f.zeros) {
        for (const cvec& zero : *f.zeros) {
            double d = 0.0;
            for (std::size_t i = 0; i < zero.size(); ++i)
                d += std::norm(zero[i] - z.coords[i]);
            if (std::sqrt(d) <= rho)
                return 0.0;
        }
    } else if (f.n == 1) {
        if (winding_number(f, z.coords[0], rho * (1.0 + 1e-9)) > 0)
            return 0.0;
    }
    // otherwise |f| is zero-free on the closed ball and attains its minimum
    // on the boundary sphere
    if (f.n == 1) {
        cplx c = z.coords[0];
        auto h = [&](double th) { return std::norm(eval1(f, c + std::polar(rho, th))); };
        return std::sqrt(std::max(circle_extremum(h, boundary_samples, false), 0.0));
    }
    return sphere_extremum(f, z, boundary_samples, false);
}

// ---------------------------------------------------------------------------
// criteria left sides

ConditionValues conditions(const HoloFunction& f, const Weight& w, const BallPoint& z,
                           int boundary_samples) {
    ConditionValues v;
    v.grad_norm = euclidean_norm(gradient(f, z));
    v.center_abs = std::abs(eval(f, z));
    v.e = e_membership(f, z);
    v.sup = sup_modulus(f, z, boundary_samples);
    v.inf = v.e.inside && v.e.verified ? 0.0 : inf_modulus(f, z, boundary_samples);

    if (v.sup < v.center_abs * (1.0 - 1e-12))
        throw numerical_error("sup of |f| over B_z fell below |f(z)| at z = " +
                              format_point(z.coords));
    const double m = std::max(v.sup, v.center_abs);
    const double omega = eval(w, z.dz);
    const double log_term =
        (v.center_abs <= 0.0 || m <= 0.0) ? 0.0
                                          : v.center_abs * std::log(m / v.center_abs);
    const double chi = v.e.inside ? 1.0 : 0.0;
    v.lhs_i = v.grad_norm * z.dz / omega;
    v.lhs_ii = (v.sup - v.inf) / omega;
    v.lhs_iii = (chi * m + log_term) / omega;
    v.lhs_iv = (chi * m + (1.0 - chi) * log_term) / omega;
    return v;
}

double condition_i(const HoloFunction& f, const Weight& w, const BallPoint& z) {
    return euclidean_norm(gradient(f, z)) * z.dz / eval(w, z.dz);
}

double condition_ii(const HoloFunction& f, const Weight& w, const BallPoint& z,
                    int boundary_samples) {
    return conditions(f, w, z, boundary_samples).lhs_ii;
}

double condition_iii(const HoloFunction& f, const Weight& w, const BallPoint& z,
                     int boundary_samples) {
    return conditions(f, w, z, boundary_samples).lhs_iii;
}

double condition_iv(const HoloFunction& f, const Weight& w, const BallPoint& z,
                    int boundary_samples) {
    return conditions(f, w, z, boundary_samples).lhs_iv;
}

// ---------------------------------------------------------------------------
// Schwarz-Pick margin and the sub-ball rescaling

double schwarz_pick_margin(const HoloFunction& g, const BallPoint& z) {
    double a = std::abs(eval(g, z));
    if (a > 1.0 + 1e-9)
        throw numerical_error("not a self-map: |g(z)| = " + std::to_string(a) + " at z = " +
                              format_point(z.coords));
    const double grad_norm = euclidean_norm(gradient(g, z));
    a = std::min(a, 1.0); // shed rounding above the unit bound
    double rhs = 0.0;
    if (a > 1e-300)
        rhs = 2.0 / (1.0 - z.norm * z.norm) * a * std::log(1.0 / a);
    return rhs - grad_norm;
}

HoloFunction rescale_to_subball(const HoloFunction& f, const BallPoint& z,
                                int boundary_samples) {
    const double m = sup_modulus(f, z, boundary_samples);
    if (!(m > 0.0))
        throw numerical_error("f vanishes identically near " + format_point(z.coords));
    const double scale = z.dz / 2.0;
    HoloFunction g;
    g.n = f.n;
    if (f.zeros) {
        std::vector<cvec> zeros;
        for (const cvec& zf : *f.zeros) {
            cvec w(zf.size());
            double norm = 0.0;
            for (std::size_t i = 0; i < zf.size(); ++i) {
                w[i] = (zf[i] - z.coords[i]) / scale;
                norm += std::norm(w[i]);
            }
            if (std::sqrt(norm) < 1.0)
                zeros.push_back(std::move(w));
        }
        g.zeros = std::move(zeros);
    }
    g.rep = RescaledRep{std::make_shared<const HoloFunction>(f), z.coords, scale, m};
    return g;
}

// ---------------------------------------------------------------------------
// Poisson oscillation and the little Bloch scan

namespace {

double poisson_subball_max(const BoundaryData& bd, const CircleGrid& grid, cplx z,
                           int boundary_samples) {
    const double rho = (1.0 - std::abs(z)) / 2.0;
    auto h = [&](double th) { return poisson(bd, grid, z + std::polar(rho, th)); };
    return circle_extremum(h, boundary_samples, true);
}

} // namespace

double poisson_oscillation(const BoundaryData& bd, const Weight& w, cplx z,
                           std::size_t nodes, int boundary_samples) {
    const CircleGrid& grid = shared_grid(nodes);
    const double dz = 1.0 - std::abs(z);
    const double pz = poisson(bd, grid, z);
    const double pmax = poisson_subball_max(bd, grid, z, boundary_samples);
    return std::exp(pz) * (pmax - pz) / eval(w, dz);
}

std::vector<double> little_bloch_scan(const BoundaryData& bd, int levels, int directions,
                                      std::size_t nodes, int boundary_samples,
                                      unsigned workers) {
    const CircleGrid& grid = shared_grid(nodes);
    std::vector<double> q(static_cast<std::size_t>(std::max(levels, 0)), 0.0);
    for (int k = 1; k <= levels; ++k) {
        const double r = 1.0 - SampleGrid::dz(k);
        std::vector<double> per_direction(static_cast<std::size_t>(directions), 0.0);
        parallel_for(per_direction.size(), workers, [&](std::size_t j) {
            cplx z = std::polar(r, 2.0 * M_PI * static_cast<double>(j) / directions);
            const double pz = poisson(bd, grid, z);
            const double pmax = poisson_subball_max(bd, grid, z, boundary_samples);
            per_direction[j] = std::exp(pz) * (pmax - pz);
        });
        double worst = 0.0;
        for (double v : per_direction)
            worst = std::max(worst, v);
        q[static_cast<std::size_t>(k - 1)] = worst;
    }
    return q;
}

// ---------------------------------------------------------------------------
// grid sweep

std::string trend_verdict(const std::vector<double>& row_maxima) {
    const std::size_t k = row_maxima.size();
    bool all_zero = true;
    for (double m : row_maxima)
        if (m > 1e-300)
            all_zero = false;
    if (all_zero)
        return "bounded";
    if (k < 4)
        return "inconclusive";

    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        double a = row_maxima[i], b = row_maxima[i + 1];
        if (a <= 1e-300 && b <= 1e-300)
            ratios.push_back(1.0);
        else if (a <= 1e-300)
            ratios.push_back(std::numeric_limits<double>::infinity());
        else
            ratios.push_back(b / a);
    }
    int consecutive = 0;
    for (double r : ratios) {
        consecutive = r > 1.2 ? consecutive + 1 : 0;
        if (consecutive >= 3)
            return "growing";
    }
    // geometric mean of the tail ratios: robust to single grid-resonance
    // blips while still catching steady slow growth
    const std::size_t look = std::min<std::size_t>(3, ratios.size());
    double tail = 1.0;
    for (std::size_t i = ratios.size() - look; i < ratios.size(); ++i)
        tail *= ratios[i];
    tail = std::pow(tail, 1.0 / static_cast<double>(look));
    return tail <= 1.05 ? "bounded" : "inconclusive";
}

CriteriaReport run_criteria(const HoloFunction& f, const Weight& w, const SampleGrid& grid,
                            int boundary_samples, unsigned workers) {
    CriteriaReport report;
    const auto dirs = grid.directions();
    const int kk = grid.radial_levels;
    const int jj = static_cast<int>(dirs.size());
    report.rows.assign(static_cast<std::size_t>(kk) * jj, CriteriaRow{});
    std::vector<char> verified(report.rows.size(), 1);

    parallel_for(report.rows.size(), workers, [&](std::size_t idx) {
        const int k = 1 + static_cast<int>(idx) / jj;
        const int j = static_cast<int>(idx) % jj;
        const BallPoint z = grid.point(k, dirs[static_cast<std::size_t>(j)]);
        ConditionValues v = conditions(f, w, z, boundary_samples);
        CriteriaRow& row = report.rows[idx];
        row.k = k;
        row.j = j;
        row.dz = SampleGrid::dz(k);
        row.in_e = v.e.inside;
        row.lhs = {v.lhs_i, v.lhs_ii, v.lhs_iii, v.lhs_iv};
        verified[idx] = v.e.verified ? 1 : 0;
    });

    for (char ok : verified)
        if (!ok)
            report.zero_info_verified = false;
    for (auto& rm : report.row_maxima)
        rm.assign(static_cast<std::size_t>(kk), 0.0);
    for (const CriteriaRow& row : report.rows)
        for (int c = 0; c < 4; ++c) {
            report.empirical_constants[c] =
                std::max(report.empirical_constants[c], row.lhs[static_cast<std::size_t>(c)]);
            auto& rm = report.row_maxima[static_cast<std::size_t>(c)][static_cast<std::size_t>(row.k - 1)];
            rm = std::max(rm, row.lhs[static_cast<std::size_t>(c)]);
        }
    bool any_growing = false, any_inconclusive = false;
    for (int c = 0; c < 4; ++c) {
        report.trends[static_cast<std::size_t>(c)] =
            trend_verdict(report.row_maxima[static_cast<std::size_t>(c)]);
        if (report.trends[static_cast<std::size_t>(c)] == "growing")
            any_growing = true;
        if (report.trends[static_cast<std::size_t>(c)] == "inconclusive")
            any_inconclusive = true;
    }
    report.verdict = any_growing ? "growing" : (any_inconclusive ? "inconclusive" : "bounded");
    return report;
}

} // namespace blochgauge
