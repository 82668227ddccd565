#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace budq {

// A bijection on {0, .., n-1}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> mapping);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(map_.size()); }
    int operator()(int x) const { return map_[static_cast<std::size_t>(x)]; }

    Permutation inverse() const;

    // (f.then(g))(x) == g(f(x)): apply this first, then g.
    Permutation then(const Permutation& g) const;

    // f^k for any integer k (negative powers use the inverse).
    Permutation pow(long long k) const;

    bool is_identity() const;
    const std::vector<int>& mapping() const { return map_; }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

private:
    std::vector<int> map_;
};

struct AxiomCheck {
    bool pass = true;
    std::vector<int> witness; // first violating tuple when !pass
};

struct QuandleValidation {
    AxiomCheck idempotence;        // x^x = x
    AxiomCheck right_invertibility; // each column is a bijection; witness = {column}
    AxiomCheck distributivity;      // (x^y)^z = (x^z)^(y^z); witness = {x,y,z}
    bool kei = false;               // x^{yy} = x for all x,y

    bool ok() const {
        return idempotence.pass && right_invertibility.pass && distributivity.pass;
    }
    std::string summary() const;
};

// Finite quandle as an n x n operation table, table[x][y] = x^y.
// Elements are dense 0-based indices; labels are cosmetic only.
class FiniteQuandle {
public:
    explicit FiniteQuandle(std::vector<std::vector<int>> table,
                           std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(table_.size()); }
    int op(int x, int y) const { return table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
    int op_inv(int x, int y) const; // x^{ȳ}, the unique z with z^y = x

    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const FiniteQuandle& a, const FiniteQuandle& b) {
        return a.table_ == b.table_;
    }

private:
    std::vector<std::vector<int>> table_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> inv_; // inv_[x][y] = x^{ȳ}
};

// Validates a raw table against the three quandle axioms; reports the first
// violating tuple per axiom and whether the table is a kei.
// Throws InputError if the table is ragged or has out-of-range entries.
QuandleValidation validate_quandle(const std::vector<std::vector<int>>& table);

// Dihedral quandle R_n on Z/n with x^y = 2y - x.
FiniteQuandle make_dihedral(int n);

// Conjugation quandle x^y = y^{-1} x y of a finite group given by its
// multiplication table. The table is validated as a group first.
FiniteQuandle make_conjugation(const std::vector<std::vector<int>>& group_table);

// The inner map f_y : x -> x^y.
Permutation inner_map(const FiniteQuandle& q, int y);

// Least n >= 1 with f_y^n = identity for every y (lcm of inner-map orders).
long long quandle_type(const FiniteQuandle& q);

// Smallest subset containing seeds and closed under every generator
// permutation and its inverse. Returned sorted.
std::vector<int> subquandle_orbit(const FiniteQuandle& q,
                                  const std::vector<int>& seeds,
                                  const std::vector<Permutation>& gens);

inline constexpr std::size_t kDefaultOperatorCap = 10080;

// All distinct permutations in the group generated by gens, by BFS over
// products. Throws CapExceeded if the group has more than cap elements.
// Result is sorted for determinism.
std::vector<Permutation> inner_group_elements(const FiniteQuandle& q,
                                              const std::vector<Permutation>& gens,
                                              std::size_t cap = kDefaultOperatorCap);

// All inner maps f_0..f_{n-1} of q.
std::vector<Permutation> all_inner_maps(const FiniteQuandle& q);

// JSON {"size": n, "table": [[..],..], "labels": [..]}
nlohmann::json quandle_to_json(const FiniteQuandle& q);
FiniteQuandle quandle_from_json(const nlohmann::json& j);

} // namespace budq
