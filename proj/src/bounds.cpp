#include "budq/bounds.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "budq/errors.hpp"

namespace budq {

namespace {

// If count == q^k returns k, else -1.
int exact_log(long long count, int q) {
    long long acc = 1;
    int k = 0;
    while (acc < count) {
        if (acc > count / q) return -1; // next multiply overshoots
        acc *= q;
        ++k;
    }
    return acc == count ? k : -1;
}

constexpr double kMargin = 0x1p-40;

// Rounds v up to an integer, snapping values within the margin.
long long certified_ceil(double v) {
    double nearest = std::round(v);
    if (std::abs(v - nearest) <= kMargin) return static_cast<long long>(nearest);
    return static_cast<long long>(std::ceil(v));
}

} // namespace

BridgeBoundResult bridge_lower_bound(long long count, int q_size, int chi) {
    if (count < 1) throw InputError("bridge_lower_bound: count must be >= 1");
    if (q_size < 2) throw InputError("bridge_lower_bound: quandle size must be >= 2");
    BridgeBoundResult r;
    r.coloring_count = count;
    r.target_size = q_size;
    r.euler_characteristic = chi;
    int k = exact_log(count, q_size);
    if (k >= 0) {
        r.exact = true;
        r.bound_exact = static_cast<double>(3ll * k - chi);
        r.bound_integer = 3ll * k - chi;
    } else {
        r.exact = false;
        r.bound_exact = 3.0 * std::log(static_cast<double>(count)) /
                            std::log(static_cast<double>(q_size)) -
                        chi;
        r.bound_integer = certified_ceil(r.bound_exact);
    }
    return r;
}

BridgeBoundResult classical_bridge_lower_bound(long long count, int q_size) {
    if (count < 1) throw InputError("classical_bridge_lower_bound: count must be >= 1");
    if (q_size < 2) throw InputError("classical_bridge_lower_bound: quandle size must be >= 2");
    BridgeBoundResult r;
    r.coloring_count = count;
    r.target_size = q_size;
    r.euler_characteristic = 0;
    int k = exact_log(count, q_size);
    if (k >= 0) {
        r.exact = true;
        r.bound_exact = static_cast<double>(k);
        r.bound_integer = k;
    } else {
        r.exact = false;
        r.bound_exact = std::log(static_cast<double>(count)) / std::log(static_cast<double>(q_size));
        r.bound_integer = certified_ceil(r.bound_exact);
    }
    return r;
}

long long connected_sum_bridge_formula(long long b_s, int d, int m) {
    if (d < 2 || d % 2 != 0)
        throw InputError("connected_sum_bridge_formula: d must be an even integer >= 2");
    if (m < 0) throw InputError("connected_sum_bridge_formula: m must be >= 0");
    return b_s + static_cast<long long>(m + 1) * (d - 1) * (d - 2);
}

nlohmann::json bridge_bound_to_json(const BridgeBoundResult& r) {
    return {{"coloring_count", r.coloring_count},
            {"target_size", r.target_size},
            {"euler_characteristic", r.euler_characteristic},
            {"bound_exact", r.bound_exact},
            {"exact", r.exact},
            {"bound_integer", r.bound_integer}};
}

} // namespace budq
