#ifndef RAAG_GS_BOUNDS_HPP
#define RAAG_GS_BOUNDS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "raag/big_count.hpp"

namespace raag {

using Rational = boost::multiprecision::cpp_rational;

// Parameters of the Golod-Shafarevich test for the rank-2 free group over
// the field of two elements: generator count n of the ambient group, weight
// tau in (1/2, 1), and filtration depth r.
struct GSParams {
    long long n = 1;
    Rational tau = Rational(2, 3);
    long long r = 1;
};

// Smallest r with 2^r >= 9 n^2, i.e. the least integer above 2 log2(3n).
// Computed purely in integer arithmetic.
long long default_r(long long n);

// 1 - 2 tau + n tau^r, the quantity whose negativity makes every quotient of
// the rank-2 free group by n relators of filtration depth >= r infinite.
Rational gs_value(const GSParams& p);
bool gs_inequality_holds(const GSParams& p);

// Dimensions b_1 .. b_{r-1} of the mod-2 filtration layers of the rank-2
// free group.  Bound mode uses b_l = 2^l (each layer is spanned by the 2^l
// products of generator differences); exact mode matches coefficients in
// prod_{l>=1} (1 + t^l)^{b_l} = 1/(1 - 2t), a strictly finer count.
enum class JZMode { bound, exact };

struct JZProfile {
    JZMode mode = JZMode::bound;
    std::vector<BigInt> layers;  // layers[i] = b_{i+1}, i = 0 .. r-2
};

JZProfile jz_profile(long long r, JZMode mode);

// |F / D_r F| = 2^(b_1 + ... + b_{r-1}); bound mode gives 2^(2^r - 2),
// which stays under the envelope 2^(2^r - 1).
BigCount order_f_mod_dr(long long r, JZMode mode);

// gamma(n) = |F / D_r F|^n at r = default_r(n); always <= 2^(18 n^3 - n).
BigCount gamma_bound(long long n, JZMode mode);

// delta(n) = n + gamma(n); always < 2^(18 n^3).
BigCount delta_bound(long long n, JZMode mode);

// Grid search over tau in (1/2, 1) at denominator 2 * resolution, plus the
// default 2/3, for the feasible pair minimizing the bound-mode exponent
// n (2^r - 2) subject to n tau^r < 2 tau - 1 with r <= r_cap.  When nothing
// under the cap is feasible the result says so explicitly.
struct TauSearch {
    bool feasible = false;
    Rational tau;
    long long r = 0;
    BigInt exponent;
};

TauSearch optimize_tau(long long n, int resolution, int r_cap);

} // namespace raag

#endif
