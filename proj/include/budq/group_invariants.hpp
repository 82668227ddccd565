#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include "budq/presentation.hpp"

namespace budq {

// Dense integer matrix with arbitrary-precision entries, rows of equal length.
using IntMatrix = std::vector<std::vector<mpz_class>>;

// Diagonal invariants d₁ | d₂ | … of the Smith normal form, nonnegative,
// zeros last; length = min(rows, cols).
std::vector<mpz_class> smith_normal_form(IntMatrix m);

struct Abelianization {
    int free_rank = 0;
    std::vector<mpz_class> torsion; // invariant factors > 1, divisibility-sorted

    friend bool operator==(const Abelianization& a, const Abelianization& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

// H₁ of the presented group via the exponent-sum matrix.
Abelianization abelianization(const GroupPresentation& g);

// Finite group given by its multiplication table; axioms validated on
// construction (throws InputError otherwise).
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    int size() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
    int identity() const { return identity_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    int identity_ = 0;
};

nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);

// Exact count of homomorphisms by backtracking over generator images with
// relator early-exit. Throws CapExceeded if |H|^{generators} > 10⁸.
long long count_group_homs(const GroupPresentation& g, const FiniteGroup& h);

FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup dihedral_group(int n); // order 2n, n >= 1
FiniteGroup quaternion_group();    // Q8
FiniteGroup symmetric_group_3();

// All groups of order ≤ max_order up to isomorphism (max_order ≤ 8), as
// (name, group) pairs in a deterministic order.
std::vector<std::pair<std::string, FiniteGroup>> small_group_battery(int max_order);

} // namespace budq
