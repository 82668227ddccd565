#pragma once

#include <nlohmann/json_fwd.hpp>

namespace budq {

struct BridgeBoundResult {
    long long coloring_count = 0;
    int target_size = 0;
    int euler_characteristic = 0;
    double bound_exact = 0.0;   // 3·log_{#Q}(#Col) − χ
    bool exact = false;         // true when count is an integer power of #Q
    long long bound_integer = 0; // ceiling of bound_exact (equal when integral)
};

// Prop.-style lower bound for the bridge number of a surface link with
// Euler characteristic chi. Exact integer arithmetic when count = q_size^k;
// otherwise double precision with a ±2⁻⁴⁰ integrality margin.
BridgeBoundResult bridge_lower_bound(long long count, int q_size, int chi);

// log_{q_size}(count), same exactness rules; lower bound for classical links.
BridgeBoundResult classical_bridge_lower_bound(long long count, int q_size);

// b(S # Σ_d) = b(S) + (m+1)(d−1)(d−2); requires even d.
long long connected_sum_bridge_formula(long long b_s, int d, int m);

nlohmann::json bridge_bound_to_json(const BridgeBoundResult& r);

} // namespace budq
