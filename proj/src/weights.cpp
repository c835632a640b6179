#include "blochgauge/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace blochgauge {

Weight Weight::power(double alpha) {
    Weight w;
    w.kind = WeightKind::power;
    w.param = alpha;
    return w;
}

Weight Weight::constant() {
    Weight w;
    w.kind = WeightKind::constant;
    return w;
}

Weight Weight::log_growth(double beta) {
    Weight w;
    w.kind = WeightKind::log_growth;
    w.param = beta;
    return w;
}

Weight Weight::power_growth(double beta) {
    Weight w;
    w.kind = WeightKind::power_growth;
    w.param = beta;
    return w;
}

Weight Weight::tabulated(std::function<double(double)> fn) {
    Weight w;
    w.kind = WeightKind::tabulated;
    w.table = std::move(fn);
    return w;
}

double eval(const Weight& w, double t) {
    if (!(t > 0.0) || t > 1.0)
        throw numerical_error("weight argument outside (0,1]: t = " + std::to_string(t));
    double v = 0.0;
    switch (w.kind) {
    case WeightKind::power:
        v = std::pow(t, w.param);
        break;
    case WeightKind::constant:
        v = 1.0;
        break;
    case WeightKind::log_growth:
        v = std::pow(std::log(std::exp(1.0) / t), w.param);
        break;
    case WeightKind::power_growth:
        v = std::pow(t, -w.param);
        break;
    case WeightKind::tabulated:
        v = w.table(t);
        break;
    }
    if (!(v > 0.0) || !std::isfinite(v))
        throw numerical_error("weight is not positive finite at t = " + std::to_string(t));
    return v;
}

double moderateness_constant(const Weight& w, int k_max) {
    if (k_max < 2)
        throw numerical_error("moderateness_constant needs k_max >= 2");
    // 8 subdivisions per octave, matching the 1/2 <= a/b <= 2 structure.
    std::vector<double> grid;
    for (int j = 0; j <= k_max; ++j)
        for (int i = 0; i <= 8; ++i) {
            double t = std::ldexp(1.0 + i / 8.0, -j);
            if (t > 0.0 && t <= 1.0)
                grid.push_back(t);
        }
    double sup = 1.0;
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (std::size_t q = p; q < grid.size(); ++q) {
            double a = grid[p], b = grid[q];
            double ratio = a / b;
            if (ratio < 0.5 || ratio > 2.0)
                continue;
            double r = eval(w, a) / eval(w, b);
            sup = std::max(sup, std::max(r, 1.0 / r));
        }
    return sup;
}

namespace {

// The substitution t = delta e^{-u} turns int_0^delta w(t)/t dt into
// int_0^inf w(delta e^{-u}) du.
bool integral_converges(const Weight& w) {
    switch (w.kind) {
    case WeightKind::power:
        return w.param > 0.0;
    case WeightKind::constant:
        return false; // int dt/t diverges logarithmically
    case WeightKind::log_growth:
        return w.param < -1.0;
    case WeightKind::power_growth:
        return w.param < 0.0;
    case WeightKind::tabulated:
        return true; // decided by the tail check below
    }
    return false;
}

} // namespace

double fast_majorant_ratio(const Weight& w, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw numerical_error("fast_majorant_ratio needs delta in (0,1)");
    if (!integral_converges(w))
        return std::numeric_limits<double>::infinity();

    const double cutoff = 40.0;
    const std::size_t nodes = 4096;
    const double h = cutoff / static_cast<double>(nodes - 1);

    std::vector<double> f(nodes);
    for (std::size_t i = 0; i < nodes; ++i)
        f[i] = eval(w, delta * std::exp(-h * static_cast<double>(i)));

    if (w.kind == WeightKind::tabulated) {
        // conservative tail check: estimate the decay rate from the last two
        // nodes and refuse unless the extrapolated tail is negligible
        double rate = std::log(f[nodes - 2] / f[nodes - 1]) / h;
        double partial = 0.0;
        for (double v : f)
            partial += h * v;
        if (!(rate > 1e-12) || f[nodes - 1] / rate > 1e-4 * partial)
            return std::numeric_limits<double>::infinity();
    }

    double sum = 0.5 * (f[0] + f[nodes - 1]);
    for (std::size_t i = 1; i + 1 < nodes; ++i)
        sum += f[i];
    double integral = h * sum;

    // Euler-Maclaurin end correction removes the h^2 term; end slopes from
    // 4th-order one-sided stencils.
    double d0 = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    double dn = (25.0 * f[nodes - 1] - 48.0 * f[nodes - 2] + 36.0 * f[nodes - 3] -
                 16.0 * f[nodes - 4] + 3.0 * f[nodes - 5]) /
                (12.0 * h);
    integral -= h * h / 12.0 * (dn - d0);

    return integral / eval(w, delta);
}

WeightClass classify(const Weight& w) {
    switch (w.kind) {
    case WeightKind::power:
        if (w.param > 0.0)
            return WeightClass::lipschitz_type;
        if (w.param == 0.0)
            return WeightClass::bloch;
        return WeightClass::growth;
    case WeightKind::constant:
        return WeightClass::bloch;
    case WeightKind::log_growth:
        return w.param > 0.0 ? WeightClass::negative_smoothness : WeightClass::unclassified;
    case WeightKind::power_growth:
        if (w.param > 0.0)
            return WeightClass::growth;
        if (w.param == 0.0)
            return WeightClass::bloch;
        return WeightClass::lipschitz_type;
    case WeightKind::tabulated:
        return WeightClass::unclassified;
    }
    return WeightClass::unclassified;
}

const char* to_string(WeightClass c) {
    switch (c) {
    case WeightClass::lipschitz_type:
        return "lipschitz_type";
    case WeightClass::bloch:
        return "bloch";
    case WeightClass::negative_smoothness:
        return "negative_smoothness";
    case WeightClass::growth:
        return "growth";
    case WeightClass::unclassified:
        return "unclassified";
    }
    return "unclassified";
}

} // namespace blochgauge
