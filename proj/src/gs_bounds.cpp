#include "raag/gs_bounds.hpp"

#include "raag/errors.hpp"

namespace raag {

namespace {

Rational rational_pow(const Rational& base, long long k) {
    Rational out = 1;
    for (long long i = 0; i < k; ++i) out *= base;
    return out;
}

// C(b, k) for small k.
BigInt binomial(const BigInt& b, int k) {
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= b - i;
        den *= i + 1;
    }
    return num / den;
}

// Layer dimensions matched against prod_{l>=1} (1 + t^l)^{b_l} = 1/(1 - 2t):
// the coefficient of t^l on the right is 2^l, and the factor at l contributes
// b_l t^l on top of the already accumulated series, so b_l peels off greedily.
std::vector<BigInt> exact_layers(long long r) {
    const int top = static_cast<int>(r);
    std::vector<BigInt> series(top, 0);
    series[0] = 1;
    std::vector<BigInt> layers;
    for (int l = 1; l < top; ++l) {
        BigInt b = (BigInt(1) << l) - series[l];
        require_verified(b >= 0, "series coefficient overshoots the target");
        layers.push_back(b);
        std::vector<BigInt> next(top, 0);
        for (int i = 0; i < top; ++i) {
            if (series[i] == 0) continue;
            for (int k = 0; i + l * k < top; ++k) {
                next[i + l * k] += series[i] * binomial(b, k);
            }
        }
        series = std::move(next);
    }
    return layers;
}

} // namespace

long long default_r(long long n) {
    require_pre(n >= 1, "need n >= 1");
    const BigInt target = BigInt(9) * n * n;
    long long r = 0;
    BigInt p = 1;
    while (p < target) {
        p <<= 1;
        ++r;
    }
    return r;
}

Rational gs_value(const GSParams& p) {
    require_pre(p.n >= 1, "need n >= 1");
    require_pre(p.r >= 1, "need r >= 1");
    require_pre(Rational(1, 2) < p.tau && p.tau < 1, "tau must lie in (1/2, 1)");
    return 1 - 2 * p.tau + Rational(p.n) * rational_pow(p.tau, p.r);
}

bool gs_inequality_holds(const GSParams& p) { return gs_value(p) < 0; }

JZProfile jz_profile(long long r, JZMode mode) {
    require_pre(r >= 1, "need r >= 1");
    JZProfile out;
    out.mode = mode;
    if (mode == JZMode::bound) {
        for (long long l = 1; l < r; ++l) {
            out.layers.push_back(BigInt(1) << static_cast<unsigned>(l));
        }
    } else {
        out.layers = exact_layers(r);
    }
    return out;
}

BigCount order_f_mod_dr(long long r, JZMode mode) {
    JZProfile profile = jz_profile(r, mode);
    BigInt total = 0;
    for (const BigInt& b : profile.layers) total += b;
    BigCount order = BigCount::power_of_two(total);
    // The layer bound b_l <= 2^l caps the order by 2^(2^r - 1).
    require_verified(order <= BigCount::power_of_two((BigInt(1) << static_cast<unsigned>(r)) - 1),
                     "order exceeds its envelope");
    return order;
}

BigCount gamma_bound(long long n, JZMode mode) {
    require_pre(n >= 1, "need n >= 1");
    const long long r = default_r(n);
    BigCount g = order_f_mod_dr(r, mode).pow(n);
    const BigInt cubic = BigInt(18) * n * n * n;
    require_verified(g <= BigCount::power_of_two(cubic - n),
                     "gamma exceeds the cubic-exponent envelope");
    return g;
}

BigCount delta_bound(long long n, JZMode mode) {
    BigCount d = gamma_bound(n, mode).plus(n);
    const BigInt cubic = BigInt(18) * n * n * n;
    require_verified(d < BigCount::power_of_two(cubic),
                     "delta exceeds the cubic-exponent envelope");
    return d;
}

TauSearch optimize_tau(long long n, int resolution, int r_cap) {
    require_pre(n >= 1, "need n >= 1");
    require_pre(resolution >= 2, "need resolution >= 2");
    require_pre(r_cap >= 1, "need a positive r cap");

    std::vector<Rational> grid;
    for (int k = 1; k < resolution; ++k) {
        grid.emplace_back(resolution + k, 2 * resolution);
    }
    grid.emplace_back(2, 3);  // the default point always competes

    TauSearch best;
    for (const Rational& tau : grid) {
        const Rational margin = 2 * tau - 1;
        Rational pw = 1;
        for (long long r = 1; r <= r_cap; ++r) {
            pw *= tau;
            if (Rational(n) * pw >= margin) continue;
            BigInt exponent = BigInt(n) * ((BigInt(1) << static_cast<unsigned>(r)) - 2);
            const bool better =
                !best.feasible || exponent < best.exponent ||
                (exponent == best.exponent &&
                 (r < best.r || (r == best.r && tau < best.tau)));
            if (better) {
                best.feasible = true;
                best.tau = tau;
                best.r = r;
                best.exponent = std::move(exponent);
            }
            break;  // larger r only grows the exponent for this tau
        }
    }
    if (best.feasible) {
        require_verified(gs_inequality_holds({n, best.tau, best.r}),
                         "optimizer returned an infeasible point");
    }
    return best;
}

} // namespace raag
