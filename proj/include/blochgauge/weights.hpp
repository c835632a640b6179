#pragma once

#include <functional>

#include "blochgauge/common.hpp"

namespace blochgauge {

enum class WeightKind { power, constant, log_growth, power_growth, tabulated };

enum class WeightClass { lipschitz_type, bloch, negative_smoothness, growth, unclassified };

/// A weight omega: (0,1] -> (0,inf). Built-in parametric families:
///   power(alpha)        t^alpha
///   constant            1
///   log_growth(beta)    (log(e/t))^beta, beta of either sign
///   power_growth(beta)  t^{-beta}
/// plus a tabulated escape hatch. Moderateness is surfaced as a measured
/// diagnostic, not a type-level guarantee.
struct Weight {
    WeightKind kind = WeightKind::constant;
    double param = 0.0;
    std::function<double(double)> table;

    static Weight power(double alpha);
    static Weight constant();
    static Weight log_growth(double beta);
    static Weight power_growth(double beta);
    static Weight tabulated(std::function<double(double)> fn);
};

double eval(const Weight& w, double t);

// Empirical sup of max(w(a)/w(b), w(b)/w(a)) over all pairs of the dyadic
// grid {2^-j (1 + i/8) : j <= k_max, 0 <= i <= 8} in (0,1] with
// 1/2 <= a/b <= 2. A lower bound for the true moderateness constant,
// nondecreasing in k_max.
double moderateness_constant(const Weight& w, int k_max);

// (int_0^delta w(t)/t dt) / w(delta), computed with the substitution
// t = delta e^{-u} and an end-corrected trapezoid rule on [0, 40] with 4096
// nodes. Returns +infinity when the integral diverges.
double fast_majorant_ratio(const Weight& w, double delta);

WeightClass classify(const Weight& w);
const char* to_string(WeightClass c);

} // namespace blochgauge
