#include "blochgauge/functions.hpp"
#include "blochgauge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace blochgauge {

namespace {

constexpr std::size_t kMaxDegree1d = 4096;
constexpr int kMaxTotalDegree = 64;

cplx horner(const cvec& c, cplx z) {
    cplx s = 0.0;
    for (std::size_t j = c.size(); j-- > 0;)
        s = s * z + c[j];
    return s;
}

cplx horner_derivative(const cvec& c, cplx z) {
    cplx s = 0.0;
    for (std::size_t j = c.size(); j-- > 1;)
        s = s * z + static_cast<double>(j) * c[j];
    return s;
}

cplx pow_int(cplx z, int e) {
    cplx r = 1.0;
    while (e-- > 0)
        r *= z;
    return r;
}

HoloPtr share(HoloFunction f) {
    return std::make_shared<const HoloFunction>(std::move(f));
}

HoloPtr share_copy(const HoloFunction& f) {
    return std::make_shared<const HoloFunction>(f);
}

} // namespace

// ---------------------------------------------------------------------------
// evaluation

cplx eval(const HoloFunction& f, const BallPoint& z) {
    if (z.dim() != f.n)
        throw numerical_error("dimension mismatch in eval");

    if (const auto* ps = std::get_if<PowerSeriesRep>(&f.rep)) {
        if (f.n == 1)
            return horner(ps->coeffs, z.coords[0]);
        cplx s = 0.0;
        for (const SeriesTerm& t : ps->terms) {
            cplx m = t.coeff;
            for (std::size_t i = 0; i < f.n; ++i)
                m *= pow_int(z.coords[i], t.exponents[i]);
            s += m;
        }
        return s;
    }
    if (const auto* hg = std::get_if<HerglotzRep>(&f.rep))
        return std::exp(herglotz_integral(hg->boundary, shared_grid(hg->nodes), z.coords[0]));
    if (const auto* pr = std::get_if<ProductRep>(&f.rep)) {
        cplx v = 1.0;
        for (const HoloPtr& g : pr->factors)
            v *= eval(*g, z);
        return v;
    }
    if (const auto* sl = std::get_if<SliceRep>(&f.rep)) {
        cvec w(sl->parent->n);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = z.coords[0] * std::conj(sl->direction[i]);
        return eval(*sl->parent, BallPoint(std::move(w)));
    }
    if (const auto* dr = std::get_if<DirectionalRep>(&f.rep)) {
        cplx w = inner(z.coords, dr->direction);
        return eval(*dr->profile, BallPoint::disk(w));
    }
    const auto& rs = std::get<RescaledRep>(f.rep);
    cvec w(f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        w[i] = rs.center[i] + rs.scale * z.coords[i];
    return eval(*rs.parent, BallPoint(std::move(w))) / rs.divisor;
}

cvec gradient(const HoloFunction& f, const BallPoint& z) {
    if (z.dim() != f.n)
        throw numerical_error("dimension mismatch in gradient");

    if (const auto* ps = std::get_if<PowerSeriesRep>(&f.rep)) {
        if (f.n == 1)
            return cvec{horner_derivative(ps->coeffs, z.coords[0])};
        cvec g(f.n, 0.0);
        for (const SeriesTerm& t : ps->terms)
            for (std::size_t i = 0; i < f.n; ++i) {
                if (t.exponents[i] == 0)
                    continue;
                cplx m = t.coeff * static_cast<double>(t.exponents[i]);
                for (std::size_t l = 0; l < f.n; ++l)
                    m *= pow_int(z.coords[l], l == i ? t.exponents[l] - 1 : t.exponents[l]);
                g[i] += m;
            }
        return g;
    }
    if (const auto* hg = std::get_if<HerglotzRep>(&f.rep)) {
        // g' = g * U, exact up to quadrature error
        const CircleGrid& grid = shared_grid(hg->nodes);
        cplx value = std::exp(herglotz_integral(hg->boundary, grid, z.coords[0]));
        cplx u = herglotz_derivative_factor(hg->boundary, grid, z.coords[0]);
        return cvec{value * u};
    }
    if (const auto* pr = std::get_if<ProductRep>(&f.rep)) {
        // Leibniz rule
        const std::size_t m = pr->factors.size();
        std::vector<cplx> values(m);
        for (std::size_t i = 0; i < m; ++i)
            values[i] = eval(*pr->factors[i], z);
        cvec g(f.n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            cplx rest = 1.0;
            for (std::size_t l = 0; l < m; ++l)
                if (l != i)
                    rest *= values[l];
            cvec gi = gradient(*pr->factors[i], z);
            for (std::size_t c = 0; c < f.n; ++c)
                g[c] += rest * gi[c];
        }
        return g;
    }
    if (const auto* sl = std::get_if<SliceRep>(&f.rep)) {
        cvec w(sl->parent->n);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = z.coords[0] * std::conj(sl->direction[i]);
        cvec gp = gradient(*sl->parent, BallPoint(std::move(w)));
        // G'(w) = <grad f(w conj(dir)), dir>
        return cvec{inner(gp, sl->direction)};
    }
    if (const auto* dr = std::get_if<DirectionalRep>(&f.rep)) {
        cplx w = inner(z.coords, dr->direction);
        cplx dp = gradient(*dr->profile, BallPoint::disk(w))[0];
        cvec g(f.n);
        for (std::size_t i = 0; i < f.n; ++i)
            g[i] = dp * std::conj(dr->direction[i]);
        return g;
    }
    const auto& rs = std::get<RescaledRep>(f.rep);
    cvec w(f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        w[i] = rs.center[i] + rs.scale * z.coords[i];
    cvec g = gradient(*rs.parent, BallPoint(std::move(w)));
    for (cplx& c : g)
        c *= rs.scale / rs.divisor;
    return g;
}

cplx eval1(const HoloFunction& f, cplx z) {
    if (f.n != 1)
        throw numerical_error("eval1 needs a one-variable function");
    return eval(f, BallPoint::disk(z));
}

cplx derivative1(const HoloFunction& f, cplx z) {
    if (f.n != 1)
        throw numerical_error("derivative1 needs a one-variable function");
    return gradient(f, BallPoint::disk(z))[0];
}

// ---------------------------------------------------------------------------
// constructors

HoloFunction make_power_series(cvec coeffs, std::optional<std::vector<cvec>> zeros) {
    if (coeffs.empty())
        throw config_error("power series needs at least one coefficient");
    if (coeffs.size() > kMaxDegree1d + 1)
        throw config_error("power series truncation degree exceeds 4096");
    HoloFunction f;
    f.n = 1;
    f.rep = PowerSeriesRep{std::move(coeffs), {}};
    f.zeros = std::move(zeros);
    return f;
}

HoloFunction make_power_series_nd(std::size_t n, std::vector<SeriesTerm> terms,
                                  std::optional<std::vector<cvec>> zeros) {
    if (n == 0)
        throw config_error("dimension must be positive");
    for (const SeriesTerm& t : terms) {
        if (t.exponents.size() != n)
            throw config_error("series term exponent count does not match dimension");
        int total = 0;
        for (int e : t.exponents) {
            if (e < 0)
                throw config_error("series exponents must be nonnegative");
            total += e;
        }
        if (total > kMaxTotalDegree)
            throw config_error("series total degree exceeds 64");
    }
    HoloFunction f;
    f.n = n;
    f.rep = PowerSeriesRep{{}, std::move(terms)};
    f.zeros = std::move(zeros);
    return f;
}

HoloFunction make_constant(std::size_t n, cplx c) {
    std::optional<std::vector<cvec>> zeros;
    if (c != 0.0)
        zeros = std::vector<cvec>{};
    if (n == 1)
        return make_power_series(cvec{c}, std::move(zeros));
    return make_power_series_nd(n, {SeriesTerm{std::vector<int>(n, 0), c}}, std::move(zeros));
}

HoloFunction make_herglotz(BoundaryData bd, std::size_t nodes) {
    HoloFunction f;
    f.n = 1;
    f.rep = HerglotzRep{std::move(bd), nodes};
    f.zeros = std::vector<cvec>{}; // exp of an integral never vanishes
    return f;
}

HoloFunction make_outer(BoundaryData bd, std::size_t nodes) {
    if (!bd.atoms.empty())
        throw config_error("outer function must not carry a singular part");
    return make_herglotz(std::move(bd), nodes);
}

HoloFunction make_singular_inner(std::vector<Atom> atoms) {
    if (atoms.empty())
        throw config_error("singular inner function needs at least one atom");
    return make_herglotz(BoundaryData::atoms_only(std::move(atoms)));
}

HoloFunction make_product(std::vector<HoloFunction> factors) {
    if (factors.empty())
        throw config_error("product needs at least one factor");
    const std::size_t n = factors.front().n;
    ProductRep rep;
    std::optional<std::vector<cvec>> zeros = std::vector<cvec>{};
    for (HoloFunction& g : factors) {
        if (g.n != n)
            throw config_error("product factors must share the dimension");
        if (zeros) {
            if (g.zeros)
                zeros->insert(zeros->end(), g.zeros->begin(), g.zeros->end());
            else
                zeros.reset(); // one unknown factor makes the union unknown
        }
        rep.factors.push_back(share(std::move(g)));
    }
    HoloFunction f;
    f.n = n;
    f.rep = std::move(rep);
    f.zeros = std::move(zeros);
    return f;
}

HoloFunction make_zero_poly(std::size_t n, std::vector<cvec> zeros) {
    if (zeros.empty())
        throw config_error("zero polynomial needs at least one zero");
    std::vector<HoloFunction> factors;
    for (const cvec& p : zeros) {
        if (p.size() != n)
            throw config_error("zero point dimension mismatch");
        if (n == 1) {
            factors.push_back(make_power_series(cvec{-p[0], 1.0}));
        } else {
            // affine factor <z - p, u> with u along p (e_1 for p = 0)
            cvec u(n, 0.0);
            double pn = euclidean_norm(p);
            if (pn > 0.0)
                for (std::size_t i = 0; i < n; ++i)
                    u[i] = p[i] / pn;
            else
                u[0] = 1.0;
            std::vector<SeriesTerm> terms;
            cplx c0 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<int> e(n, 0);
                e[i] = 1;
                terms.push_back(SeriesTerm{std::move(e), std::conj(u[i])});
                c0 -= p[i] * std::conj(u[i]);
            }
            terms.push_back(SeriesTerm{std::vector<int>(n, 0), c0});
            factors.push_back(make_power_series_nd(n, std::move(terms)));
        }
    }
    HoloFunction f = make_product(std::move(factors));
    f.zeros = std::move(zeros); // the declared list is authoritative here
    return f;
}

HoloFunction make_directional(HoloFunction profile, cvec direction) {
    if (profile.n != 1)
        throw config_error("directional pullback needs a one-variable profile");
    if (std::abs(euclidean_norm(direction) - 1.0) > 1e-12)
        throw config_error("pullback direction must be a unit vector");
    HoloFunction f;
    f.n = direction.size();
    if (profile.zeros && profile.zeros->empty())
        f.zeros = std::vector<cvec>{};
    f.rep = DirectionalRep{share(std::move(profile)), std::move(direction)};
    return f;
}

HoloFunction slice(const HoloFunction& f, const cvec& direction) {
    if (direction.size() != f.n)
        throw config_error("slice direction dimension mismatch");
    if (std::abs(euclidean_norm(direction) - 1.0) > 1e-12)
        throw config_error("slice direction must be a unit vector");
    HoloFunction g;
    g.n = 1;
    if (f.zeros) {
        // a declared zero contributes iff it lies on the slice line
        std::vector<cvec> zeros;
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < f.n; ++i)
            if (std::abs(direction[i]) > std::abs(direction[pivot]))
                pivot = i;
        for (const cvec& zf : *f.zeros) {
            cplx w = zf[pivot] / std::conj(direction[pivot]);
            double offline = 0.0;
            for (std::size_t i = 0; i < f.n; ++i)
                offline += std::abs(zf[i] - w * std::conj(direction[i]));
            if (offline <= 1e-12 && std::abs(w) < 1.0)
                zeros.push_back(cvec{w});
        }
        g.zeros = std::move(zeros);
    }
    g.rep = SliceRep{share_copy(f), direction};
    return g;
}

bool zero_free_declared(const HoloFunction& f) {
    return f.zeros && f.zeros->empty();
}

// ---------------------------------------------------------------------------
// boundary norms

HpNorm hp_norm(const BoundaryData& bd, double p, std::size_t nodes) {
    if (!(p > 0.0))
        throw config_error("hp_norm needs p > 0");
    const std::size_t n = bd.sampled() ? bd.samples.size()
                                       : std::max(nodes, static_cast<std::size_t>(64));
    const CircleGrid& grid = shared_grid(n);
    const auto table = detail::log_table(bd, n);

    HpNorm out{0.0, true};
    std::size_t zero_nodes = 0;
    double abs_log = 0.0;
    double value = 0.0;
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double psi;
        if (table->dropped[k]) {
            psi = 0.0;
            ++zero_nodes;
        } else {
            psi = bd.sampled() ? bd.samples[k] : bd.density(grid.nodes()[k]);
            abs_log += std::abs(table->log_psi[k]);
        }
        if (std::isinf(p))
            sup = std::max(sup, psi);
        else
            value += std::pow(psi, p);
    }
    abs_log /= static_cast<double>(n);

    if (std::isinf(p))
        out.value = sup;
    else
        out.value = std::pow(value / static_cast<double>(n), 1.0 / p);
    // "integrable at quadrature resolution": zeros confined to a measure-zero
    // set of nodes and a moderate quadrature value of int |log psi| dm
    out.log_integrable = zero_nodes <= n / 64 && abs_log <= 100.0;
    return out;
}

} // namespace blochgauge
