#pragma once

#include <map>
#include <string>
#include <vector>

#include "budq/diagram.hpp"
#include "budq/presentation.hpp"
#include "budq/quandle.hpp"

namespace budq {

struct Coloring {
    std::map<std::string, int> primary_assignment;            // generator -> element
    std::map<std::string, Permutation> operator_assignment;   // generator -> inner group element
};

struct ColoringOptions {
    std::size_t operator_cap = kDefaultOperatorCap; // bound on inner_group_elements
    int jobs = 1;                                   // worker threads for the first branch
};

// Number of colorings of p in Q. A primary letter g^{±1} acts as
// inner_map(Q, c(g))^{±1}; an operator letter as c(g)^{±1}. A primary
// relation lhs = base^w requires c(lhs) = π(w)(c(base)); an operator relation
// w ≡ 1 requires π(w) to fix pointwise the orbit closure of the primary
// images under all letter permutations of the coloring. Operator generators
// range over the inner automorphism group of Q.
long long count_colorings(const AugmentedPresentation& p, const FiniteQuandle& q,
                          const ColoringOptions& opts = {});

// Up to limit colorings, sorted lexicographically by (primary assignment in
// declaration order, operator assignment in declaration order).
std::vector<Coloring> list_colorings(const AugmentedPresentation& p, const FiniteQuandle& q,
                                     std::size_t limit, const ColoringOptions& opts = {});

struct VerificationReport {
    struct Item {
        std::string relation; // human-readable relation text
        bool pass = true;
        std::string detail;   // violated element / mismatch when !pass
    };
    std::vector<Item> items;
    bool ok() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

VerificationReport verify_coloring(const AugmentedPresentation& p, const FiniteQuandle& q,
                                   const Coloring& c);

// Independent oracle for dihedral targets on classical diagrams: solves
// c(under_out) ≡ 2·c(over) − c(under_in) (mod p) per crossing. Gaussian
// elimination for prime p, integer Smith normal form for composite p.
long long fox_count(const ClassicalDiagram& d, int p);

} // namespace budq
