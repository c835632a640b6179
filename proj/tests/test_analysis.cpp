#include <doctest.h>

#include <cmath>
#include <random>

#include "blochgauge/analysis.hpp"
#include "blochgauge/quadrature.hpp"

using namespace blochgauge;

namespace {

HoloFunction identity_fn() {
    return make_power_series(cvec{0.0, 1.0});
}

HoloFunction log_series(std::size_t degree) {
    // truncation of log(1/(1-z)) = sum z^j / j
    cvec c(degree + 1, 0.0);
    for (std::size_t j = 1; j <= degree; ++j)
        c[j] = 1.0 / static_cast<double>(j);
    return make_power_series(std::move(c));
}

HoloFunction exp_shift() {
    // exp(z - 1), entire and zero-free; series exact to machine precision
    cvec c(32);
    double fact = 1.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j > 0)
            fact *= static_cast<double>(j);
        c[j] = std::exp(-1.0) / fact;
    }
    return make_power_series(std::move(c), std::vector<cvec>{});
}

// random zero-free self-map: exp of a negative Herglotz transform with
// atomic measure, pulled back along a direction for n = 2
HoloFunction random_self_map(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> mass(0.1, 1.5);
    std::uniform_int_distribution<int> count(1, 3);
    std::vector<Atom> atoms;
    int m = count(rng);
    for (int i = 0; i < m; ++i)
        atoms.push_back(Atom{std::polar(1.0, angle(rng)), mass(rng)});
    HoloFunction profile = make_singular_inner(std::move(atoms));
    if (n == 1)
        return profile;
    std::normal_distribution<double> gauss(0.0, 1.0);
    cvec dir(n);
    double norm = 0.0;
    for (cplx& d : dir) {
        d = cplx(gauss(rng), gauss(rng));
        norm += std::norm(d);
    }
    norm = std::sqrt(norm);
    for (cplx& d : dir)
        d /= norm;
    return make_directional(std::move(profile), std::move(dir));
}

} // namespace

TEST_CASE("sphere sampling is deterministic, unit norm, seed sensitive") {
    auto a = sphere_points(32, 2, 0);
    auto b = sphere_points(32, 2, 0);
    auto c = sphere_points(32, 2, 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(euclidean_norm(a[i]) - 1.0) <= 1e-12);
        CHECK(a[i] == b[i]);
    }
    CHECK(a[0] != c[0]);
}

TEST_CASE("sample grid geometry") {
    SampleGrid grid;
    grid.n = 1;
    CHECK(SampleGrid::dz(3) == 0.125); // exact
    auto dirs = grid.directions();
    CHECK(dirs.size() == 64);
    BallPoint z = grid.point(3, dirs[0]);
    CHECK(z.dz == doctest::Approx(0.125).epsilon(1e-15));

    SampleGrid g2;
    g2.n = 2;
    g2.direction_count = 16;
    for (const cvec& d : g2.directions())
        CHECK(std::abs(euclidean_norm(d) - 1.0) <= 1e-12);
}

TEST_CASE("sup and inf of |f| over sub-balls") {
    HoloFunction id = identity_fn();
    CHECK(sup_modulus(id, BallPoint::disk(0.5), 64) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(sup_modulus(id, BallPoint::disk(0.0), 64) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(inf_modulus(id, BallPoint::disk(0.5), 64) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(inf_modulus(id, BallPoint::disk(0.2), 64) == 0.0); // zero at the origin inside

    HoloFunction c = make_constant(1, cplx(0.3, -0.4));
    CHECK(sup_modulus(c, BallPoint::disk(0.7), 64) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(inf_modulus(c, BallPoint::disk(0.7), 64) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("sup over the sphere in two variables") {
    // f(z) = z_1 at the origin: sup over |w| = 0.5 is 0.5
    HoloFunction f = make_power_series_nd(2, {SeriesTerm{{1, 0}, 1.0}});
    BallPoint origin(cvec{0.0, 0.0});
    CHECK(std::abs(sup_modulus(f, origin, 128) - 0.5) <= 1e-5);

    HoloFunction c = make_constant(2, 2.0);
    CHECK(std::abs(sup_modulus(c, BallPoint(cvec{0.4, cplx(0.0, 0.3)}), 64) - 2.0) <= 1e-12);
}

TEST_CASE("argument principle counts polynomial zeros exactly") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> re(-0.7, 0.7);
    for (int rep = 0; rep < 12; ++rep) {
        int degree = 1 + rep % 8;
        std::vector<cvec> roots;
        cvec coeffs{1.0};
        for (int d = 0; d < degree; ++d) {
            cplx root(re(rng) * 0.9, re(rng) * 0.9);
            while (std::abs(root) > 0.65)
                root *= 0.5;
            roots.push_back(cvec{root});
            // multiply by (z - root)
            cvec next(coeffs.size() + 1, 0.0);
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] += coeffs[i];
                next[i] -= coeffs[i] * root;
            }
            coeffs = std::move(next);
        }
        HoloFunction p = make_power_series(coeffs);
        CHECK(winding_number(p, 0.0, 0.9) == degree);
    }
}

TEST_CASE("argument principle fails loudly on the zero function") {
    HoloFunction zero = make_power_series(cvec{0.0});
    CHECK_THROWS_AS(winding_number(zero, 0.0, 0.5), numerical_error);
}

TEST_CASE("E membership for the identity function") {
    HoloFunction id = identity_fn(); // zero set {0}, not declared: oracle path
    CHECK(in_E(id, BallPoint::disk(0.2)));
    CHECK_FALSE(in_E(id, BallPoint::disk(0.5)));
    // closed form: E = {|z| < 1/3}
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> radial(0.0, 0.9), angle(0.0, 2.0 * M_PI);
    for (int i = 0; i < 100; ++i) {
        double r = radial(rng);
        if (std::abs(r - 1.0 / 3.0) < 1e-6)
            continue;
        cplx z = std::polar(r, angle(rng));
        CHECK(in_E(id, BallPoint::disk(z)) == (r < 1.0 / 3.0));
    }
    // near the boundary of E, outside the contour quantization band
    CHECK(in_E(id, BallPoint::disk(1.0 / 3.0 - 1e-6)));
    CHECK_FALSE(in_E(id, BallPoint::disk(1.0 / 3.0 + 1e-8)));
}

TEST_CASE("E membership: zero-free and unverified cases") {
    HoloFunction inner_fn = make_singular_inner({Atom{1.0, 1.0}});
    for (double r : {0.1, 0.5, 0.9})
        CHECK_FALSE(in_E(inner_fn, BallPoint::disk(r)));

    HoloFunction one = make_constant(1, 1.0);
    CHECK_FALSE(in_E(one, BallPoint::disk(0.4)));

    // declared zeros in two variables
    HoloFunction zp = make_zero_poly(2, {cvec{0.2, 0.0}});
    EStatus near_z = e_membership(zp, BallPoint(cvec{0.25, 0.0}));
    CHECK(near_z.inside);
    CHECK(near_z.verified);
    EStatus far_z = e_membership(zp, BallPoint(cvec{0.8, 0.0}));
    CHECK_FALSE(far_z.inside);
    CHECK(far_z.verified);

    // no zero information in n = 2: assumed off E, unverified
    HoloFunction blind = make_power_series_nd(2, {SeriesTerm{{1, 1}, 1.0}});
    EStatus st = e_membership(blind, BallPoint(cvec{0.3, 0.3}));
    CHECK_FALSE(st.inside);
    CHECK_FALSE(st.verified);
}

TEST_CASE("condition (i)") {
    Weight bloch = Weight::constant();
    CHECK(condition_i(identity_fn(), bloch, BallPoint::disk(0.9)) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK(condition_i(make_constant(1, 5.0), bloch, BallPoint::disk(0.3)) == 0.0);
    HoloFunction ls = log_series(4096);
    for (double r : {0.5, 0.75, 0.9})
        CHECK(condition_i(ls, bloch, BallPoint::disk(r)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("condition (ii)") {
    Weight bloch = Weight::constant();
    CHECK(condition_ii(make_constant(1, 3.0), bloch, BallPoint::disk(0.5), 64) <= 1e-12);
    CHECK(condition_ii(identity_fn(), bloch, BallPoint::disk(0.5), 64) ==
          doctest::Approx(0.5).epsilon(1e-11));
    CHECK(condition_ii(identity_fn(), Weight::power(1.0), BallPoint::disk(0.5), 64) ==
          doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("conditions (iii) and (iv)") {
    Weight bloch = Weight::constant();
    ConditionValues cv = conditions(make_constant(1, 2.0), bloch, BallPoint::disk(0.6), 64);
    CHECK(cv.lhs_iii <= 1e-12);
    CHECK(cv.lhs_iv <= 1e-12);

    // f(z) = z at z = 0.2 lies in E: M = 0.6, |f| = 0.2
    ConditionValues ce = conditions(identity_fn(), bloch, BallPoint::disk(0.2), 64);
    CHECK(ce.e.inside);
    CHECK(ce.lhs_iii == doctest::Approx(0.6 + 0.2 * std::log(3.0)).epsilon(1e-10));
    CHECK(ce.lhs_iv == doctest::Approx(0.6).epsilon(1e-10));

    // single atom, z = 1/3: |F| = e^{-2}, M = e^{-1}, log term = e^{-2}
    HoloFunction inner_fn = make_singular_inner({Atom{1.0, 1.0}});
    ConditionValues ci = conditions(inner_fn, bloch, BallPoint::disk(1.0 / 3.0), 64);
    CHECK_FALSE(ci.e.inside);
    CHECK(ci.center_abs == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(ci.sup == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(ci.lhs_iii == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    CHECK(ci.lhs_iv == ci.lhs_iii); // chi_E = 0 masks nothing off E
}

TEST_CASE("condition ordering: iii >= iv >= 0, equal off E") {
    Weight w = Weight::power(0.5);
    HoloFunction ls = log_series(512);
    for (double r : {0.5, 0.75, 0.875})
        for (int j = 0; j < 8; ++j) {
            ConditionValues v =
                conditions(ls, w, BallPoint::disk(std::polar(r, 2.0 * M_PI * j / 8.0)), 48);
            CHECK(v.lhs_iv >= 0.0);
            CHECK(v.lhs_iii >= v.lhs_iv);
            if (!v.e.inside)
                CHECK(v.lhs_iii == v.lhs_iv);
        }
}

TEST_CASE("schwarz-pick margin") {
    SUBCASE("constants") {
        HoloFunction g = make_constant(1, 0.5);
        double m0 = schwarz_pick_margin(g, BallPoint::disk(0.0));
        CHECK(m0 == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        double mr = schwarz_pick_margin(g, BallPoint::disk(0.5));
        CHECK(mr == doctest::Approx(std::log(2.0) / 0.75).epsilon(1e-12));
    }
    SUBCASE("extremal equality for the single-atom inner function at 0") {
        for (double sigma : {0.3, 1.0, 2.0}) {
            HoloFunction g = make_singular_inner({Atom{1.0, sigma}});
            double margin = schwarz_pick_margin(g, BallPoint::disk(0.0));
            double rhs = 2.0 * sigma * std::exp(-sigma);
            CHECK(std::abs(margin) / rhs <= 1e-10);
        }
    }
    SUBCASE("exp(z-1) at the origin") {
        double m = schwarz_pick_margin(exp_shift(), BallPoint::disk(0.0));
        CHECK(m == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    }
    SUBCASE("self-map precondition") {
        HoloFunction big = make_power_series(cvec{0.0, 2.0}, std::vector<cvec>{});
        CHECK_THROWS_AS(schwarz_pick_margin(big, BallPoint::disk(0.9)), numerical_error);
    }
    SUBCASE("random zero-free self-maps keep nonnegative margins") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> radial(0.0, 0.95), angle(0.0, 2.0 * M_PI);
        for (int rep = 0; rep < 6; ++rep) {
            std::size_t n = 1 + rep % 2;
            HoloFunction g = random_self_map(rng, n);
            for (int i = 0; i < 500; ++i) {
                cvec z(n);
                double r = radial(rng);
                if (n == 1) {
                    z[0] = std::polar(r, angle(rng));
                } else {
                    auto dir = sphere_points(1, n, rng());
                    for (std::size_t c = 0; c < n; ++c)
                        z[c] = r * dir[0][c];
                }
                CHECK(schwarz_pick_margin(g, BallPoint(z)) >= -1e-9);
            }
        }
    }
}

TEST_CASE("rescaling to the sub-ball") {
    SUBCASE("identity at the origin rescales to itself") {
        HoloFunction id = identity_fn();
        HoloFunction g = rescale_to_subball(id, BallPoint::disk(0.0), 64);
        for (cplx w : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.8, 0.1)})
            CHECK(std::abs(eval1(g, w) - w) <= 1e-12);
    }
    SUBCASE("constants rescale to unimodular constants") {
        HoloFunction c = make_constant(1, cplx(0.0, -2.0));
        HoloFunction g = rescale_to_subball(c, BallPoint::disk(0.4), 64);
        CHECK(std::abs(std::abs(eval1(g, cplx(0.2, 0.2))) - 1.0) <= 1e-12);
    }
    SUBCASE("zero functions are rejected") {
        HoloFunction z = make_constant(1, 0.0);
        CHECK_THROWS_AS(rescale_to_subball(z, BallPoint::disk(0.3), 64), numerical_error);
    }
    SUBCASE("chain rule identity") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (int rep = 0; rep < 10; ++rep) {
            cvec c(6);
            for (cplx& x : c)
                x = cplx(coef(rng), coef(rng));
            HoloFunction f = make_power_series(c);
            BallPoint z = BallPoint::disk(
                std::polar(0.1 + 0.8 * std::abs(coef(rng)), coef(rng) * M_PI));
            HoloFunction g = rescale_to_subball(f, z, 64);
            double lhs = euclidean_norm(gradient(g, BallPoint::disk(0.0))) * 2.0 *
                         sup_modulus(f, z, 64) / z.dz;
            double rhs = euclidean_norm(gradient(f, z));
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
        }
    }
    SUBCASE("zeros transform into the rescaled ball") {
        HoloFunction zp = make_zero_poly(1, {cvec{cplx(0.55, 0.0)}, cvec{cplx(-0.9, 0.0)}});
        HoloFunction g = rescale_to_subball(zp, BallPoint::disk(0.5), 64);
        REQUIRE(g.zeros.has_value());
        REQUIRE(g.zeros->size() == 1); // only the zero inside B_z survives
        CHECK(std::abs((*g.zeros)[0][0] - cplx(0.2, 0.0)) <= 1e-12);
        CHECK(std::abs(eval1(g, cplx(0.2, 0.0))) <= 1e-12);
    }
}

TEST_CASE("poisson oscillation quantity") {
    Weight bloch = Weight::constant();
    SUBCASE("vanishing measure") {
        BoundaryData nu0 = BoundaryData::atoms_only({});
        for (cplx z : {cplx(0.0), cplx(0.5, 0.25), cplx(-0.8, 0.0)})
            CHECK(poisson_oscillation(nu0, bloch, z, 1024, 64) == 0.0);
    }
    SUBCASE("constant density") {
        BoundaryData c = BoundaryData::from_callable([](cplx) { return 2.0; });
        for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.4)})
            CHECK(std::abs(poisson_oscillation(c, bloch, z, 1024, 64)) <= 1e-10);
    }
    SUBCASE("single atom at z = -1/2, against a brute-force scan") {
        BoundaryData bd = BoundaryData::atoms_only({Atom{1.0, 1.0}});
        cplx z(-0.5, 0.0);
        double q = poisson_oscillation(bd, bloch, z, 1024, 64);
        CHECK(q > 0.0);
        // oracle: dense scan of the kernel formula over the sub-ball boundary
        auto pnu = [](cplx w) { return -(1.0 - std::norm(w)) / std::norm(1.0 - w); };
        double pz = pnu(z);
        CHECK(pz == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
        double pmax = -1e300;
        for (int l = 0; l < 200000; ++l)
            pmax = std::max(pmax, pnu(z + std::polar(0.25, 2.0 * M_PI * l / 200000.0)));
        CHECK(q == doctest::Approx(std::exp(pz) * (pmax - pz)).epsilon(1e-8));
    }
    SUBCASE("single-atom grid supremum, frozen from the first verified run") {
        BoundaryData bd = BoundaryData::atoms_only({Atom{1.0, 1.0}});
        double sup = 0.0;
        for (int k = 1; k <= 10; ++k)
            for (int j = 0; j < 64; ++j) {
                cplx z = std::polar(1.0 - SampleGrid::dz(k), 2.0 * M_PI * j / 64.0);
                sup = std::max(sup, poisson_oscillation(bd, bloch, z, 1024, 64));
            }
        CHECK(sup == doctest::Approx(0.20107895954956564).epsilon(1e-12));
    }
    SUBCASE("matches condition (iii) for zero-free herglotz functions") {
        // two routes to |F| log(M/|F|): modulus search on eval versus the
        // harmonic scan of P nu
        std::vector<Atom> atoms{Atom{1.0, 0.8}};
        BoundaryData bd = BoundaryData::atoms_only(atoms);
        HoloFunction f = make_singular_inner(atoms);
        for (cplx z : {cplx(0.4, 0.0), cplx(0.0, 0.55), cplx(-0.62, 0.31)}) {
            double via_modulus = condition_iii(f, bloch, BallPoint::disk(z), 96);
            double via_poisson = poisson_oscillation(bd, bloch, z, 1024, 96);
            CHECK(via_modulus == doctest::Approx(via_poisson).epsilon(1e-7));
        }
    }
}

TEST_CASE("little bloch scan") {
    SUBCASE("zero measure gives exact zeros") {
        auto q = little_bloch_scan(BoundaryData::atoms_only({}), 6);
        REQUIRE(q.size() == 6);
        for (double v : q)
            CHECK(v == 0.0);
    }
    SUBCASE("analytic outer data decays") {
        BoundaryData bd =
            BoundaryData::from_callable([](cplx z) { return std::exp(z.real()); });
        auto q = little_bloch_scan(bd, 6);
        REQUIRE(q.size() == 6);
        for (std::size_t k = 1; k < q.size(); ++k)
            CHECK(q[k] < q[k - 1]);
        CHECK(q[5] <= 0.1 * q[0]);
        // P nu = Re z here, so Q_k = e^{r_k} d_z/2 exactly
        for (std::size_t k = 0; k < q.size(); ++k) {
            double d = SampleGrid::dz(static_cast<int>(k + 1));
            CHECK(q[k] == doctest::Approx(std::exp(1.0 - d) * d / 2.0).epsilon(1e-6));
        }
    }
    SUBCASE("atomic inner data does not decay") {
        BoundaryData bd = BoundaryData::atoms_only({Atom{1.0, 1.0}});
        auto q = little_bloch_scan(bd, 8);
        double tail = 0.0;
        for (std::size_t k = 4; k < q.size(); ++k)
            tail = std::max(tail, q[k]);
        CHECK(tail >= 0.5 * q[0]);
    }
}

TEST_CASE("criteria sweep and trends") {
    SUBCASE("trend verdicts") {
        CHECK(trend_verdict({1.0, 2.0, 4.0, 8.0, 16.0}) == "growing");
        CHECK(trend_verdict({1.0, 0.5, 0.25, 0.125, 0.0625}) == "bounded");
        CHECK(trend_verdict({0.0, 0.0, 0.0, 0.0}) == "bounded");
        CHECK(trend_verdict({1.0, 1.3, 1.35, 1.37, 1.38, 1.382}) == "bounded");
        CHECK(trend_verdict({1.0, 3.0, 1.0, 3.0, 1.0, 3.0}) == "inconclusive");
        CHECK(trend_verdict({1.0, 2.0}) == "inconclusive"); // too short to call
    }
    SUBCASE("bounded identity, growing geometric series") {
        SampleGrid grid;
        grid.radial_levels = 8;
        grid.direction_count = 16;
        Weight bloch = Weight::constant();

        CriteriaReport r1 = run_criteria(identity_fn(), bloch, grid, 48, 2);
        CHECK(r1.verdict == "bounded");
        CHECK(r1.zero_info_verified);
        for (double c : r1.empirical_constants)
            CHECK(c <= 2.0);

        cvec geo(2048, 1.0); // truncation of 1/(1-z)
        CriteriaReport r2 = run_criteria(make_power_series(geo), bloch, grid, 48, 2);
        CHECK(r2.verdict == "growing");
    }
    SUBCASE("forward chain constants on the grid") {
        SampleGrid grid;
        grid.radial_levels = 6;
        grid.direction_count = 16;
        Weight bloch = Weight::constant();
        for (const HoloFunction& f :
             {identity_fn(), log_series(2048), make_singular_inner({Atom{1.0, 1.0}})}) {
            CriteriaReport r = run_criteria(f, bloch, grid, 48, 2);
            double cmod = moderateness_constant(bloch, 10);
            CHECK(r.empirical_constants[1] <= 3.0 * cmod * r.empirical_constants[0]);
            CHECK(r.empirical_constants[2] <= r.empirical_constants[1] + 1e-9);
            for (const CriteriaRow& row : r.rows)
                CHECK(row.lhs[3] <= row.lhs[2] + 1e-12);
        }
    }
    SUBCASE("reverse inequality through the rescaled lemma") {
        SampleGrid grid;
        grid.radial_levels = 6;
        grid.direction_count = 16;
        HoloFunction f = make_singular_inner({Atom{1.0, 1.0}});
        auto dirs = grid.directions();
        for (int k = 1; k <= grid.radial_levels; ++k)
            for (const cvec& d : dirs) {
                BallPoint z = grid.point(k, d);
                double m = sup_modulus(f, z, 48);
                double fa = std::abs(eval(f, z));
                double lhs = z.dz / 2.0 * euclidean_norm(gradient(f, z));
                double rhs = 2.0 * fa * std::log(m / fa) + 1e-9 * m;
                CHECK(lhs <= rhs);
            }
    }
    SUBCASE("unverified zero information is flagged") {
        SampleGrid grid;
        grid.n = 2;
        grid.radial_levels = 4;
        grid.direction_count = 8;
        HoloFunction blind =
            make_power_series_nd(2, {SeriesTerm{{1, 1}, 1.0}, SeriesTerm{{0, 0}, 0.2}});
        CriteriaReport r = run_criteria(blind, Weight::constant(), grid, 32, 2);
        CHECK_FALSE(r.zero_info_verified);
    }
    SUBCASE("worker count does not change the report") {
        SampleGrid grid;
        grid.radial_levels = 5;
        grid.direction_count = 8;
        CriteriaReport a = run_criteria(identity_fn(), Weight::constant(), grid, 32, 1);
        CriteriaReport b = run_criteria(identity_fn(), Weight::constant(), grid, 32, 4);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i)
            for (int c = 0; c < 4; ++c)
                CHECK(a.rows[i].lhs[static_cast<std::size_t>(c)] ==
                      b.rows[i].lhs[static_cast<std::size_t>(c)]);
    }
}
