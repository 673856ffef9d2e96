#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "pst/chain.hpp"

namespace pst {

/// Sturm sequence P_0(E), ..., P_N(E) of leading principal minors of
/// (E*I - H), evaluated at one probe energy. The number of sign changes
/// along the sequence equals the number of eigenvalues strictly above E.
struct SturmSequence {
    std::vector<double> values;  // size n+1, values[j] = P_j(E)
    int sign_changes = 0;
};

/// P_0 = 1, P_1 = E - lambda_1,
/// P_j = (E - lambda_j) P_{j-1} - omega_{j-1}^2 P_{j-2}.
/// A zero member inherits the sign of its predecessor when counting
/// changes (consecutive members cannot both vanish), which makes the
/// count strict: eigenvalues equal to E are not counted.
inline SturmSequence sturm_eval(const ChainSpec& spec, double e) {
    spec.validate();
    const std::size_t n = spec.size();
    SturmSequence seq;
    seq.values.resize(n + 1);
    seq.values[0] = 1.0;
    seq.values[1] = e - spec.lambda[0];
    for (std::size_t j = 2; j <= n; ++j) {
        const double w = spec.omega[j - 2];
        seq.values[j] = (e - spec.lambda[j - 1]) * seq.values[j - 1] -
                        w * w * seq.values[j - 2];
    }
    int prev = 1;  // sign of P_0
    for (std::size_t j = 1; j <= n; ++j) {
        const double v = seq.values[j];
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : prev);
        if (s != prev) ++seq.sign_changes;
        prev = s;
    }
    return seq;
}

/// Count of eigenvalues strictly greater than x, via the pivots of the
/// LDL^T factorization of (H - x*I). Equivalent to the Sturm sign-change
/// count but immune to overflow of the raw minors.
inline int sturm_count_above(const ChainSpec& spec, double x) {
    const std::size_t n = spec.size();
    double wmax2 = 1.0;
    for (double w : spec.omega) wmax2 = std::max(wmax2, w * w);
    const double pivmin = std::numeric_limits<double>::min() * wmax2;

    double d = spec.lambda[0] - x;
    int count = d > 0.0 ? 1 : 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(d) < pivmin) d = -pivmin;  // zero pivot counts as "not above"
        const double w = spec.omega[j - 1];
        d = (spec.lambda[j] - x) - (w * w) / d;
        if (d > 0.0) ++count;
    }
    return count;
}

}  // namespace pst
