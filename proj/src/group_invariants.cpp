#include "budq/group_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "budq/errors.hpp"

namespace budq {

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Finds the position of the nonzero entry with minimal |value| in the
// submatrix starting at (t, t); returns false if that submatrix is zero.
bool min_pivot(const IntMatrix& m, std::size_t t, std::size_t* pi, std::size_t* pj) {
    bool found = false;
    mpz_class best;
    for (std::size_t i = t; i < m.size(); ++i)
        for (std::size_t j = t; j < m[i].size(); ++j) {
            if (m[i][j] == 0) continue;
            mpz_class a = abs(m[i][j]);
            if (!found || a < best) {
                found = true;
                best = a;
                *pi = i;
                *pj = j;
            }
        }
    return found;
}

} // namespace

std::vector<mpz_class> smith_normal_form(IntMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw InputError("smith_normal_form: ragged matrix");
    const std::size_t n = std::min(rows, cols);
    std::vector<mpz_class> diag(n, 0);

    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi, pj;
        if (!min_pivot(m, t, &pi, &pj)) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q = m[i][t] / m[t][t]; // truncated division
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) { // remainder smaller than pivot: swap up
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (std::size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and restart the reduction.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        clean = false;
                        break;
                    }
        }
        diag[t] = abs(m[t][t]);
    }
    return diag;
}

Abelianization abelianization(const GroupPresentation& g) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.generators.size(); ++i) index[g.generators[i]] = i;
    IntMatrix m(g.relators.size(), std::vector<mpz_class>(g.generators.size(), 0));
    for (std::size_t r = 0; r < g.relators.size(); ++r)
        for (const auto& l : g.relators[r]) m[r][index.at(l.gen)] += l.exp;

    std::vector<mpz_class> d = smith_normal_form(std::move(m));
    Abelianization a;
    int rank = 0;
    for (const auto& v : d) {
        if (v == 0) continue;
        ++rank;
        if (v > 1) a.torsion.push_back(v);
    }
    a.free_rank = static_cast<int>(g.generators.size()) - rank;
    std::sort(a.torsion.begin(), a.torsion.end());
    return a;
}

// ---------------------------------------------------------------------------
// Finite groups

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw InputError("group must have at least one element");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw InputError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw InputError("group table entry out of range");
    }
    identity_ = -1;
    for (int c = 0; c < n && identity_ < 0; ++c) {
        bool ok = true;
        for (int x = 0; x < n; ++x)
            if (mul(x, c) != x || mul(c, x) != x) { ok = false; break; }
        if (ok) identity_ = c;
    }
    if (identity_ < 0) throw InputError("group has no identity element");
    inv_.assign(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (mul(x, y) == identity_ && mul(y, x) == identity_) { inv_[static_cast<std::size_t>(x)] = y; break; }
        if (inv_[static_cast<std::size_t>(x)] < 0) throw InputError("group element has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InputError("group table is not associative");
}

nlohmann::json group_to_json(const FiniteGroup& g) {
    nlohmann::json j;
    j["size"] = g.size();
    j["table"] = g.table();
    j["identity"] = g.identity();
    return j;
}

FiniteGroup group_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("table"))
        throw InputError("group JSON must contain \"size\" and \"table\"");
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.at("size").get<int>() != static_cast<int>(table.size()))
        throw InputError("group JSON: size field does not match table");
    FiniteGroup g(std::move(table));
    if (j.contains("identity") && j.at("identity").get<int>() != g.identity())
        throw InputError("group JSON: identity field does not match table");
    return g;
}

long long count_group_homs(const GroupPresentation& g, const FiniteGroup& h) {
    const std::size_t ngen = g.generators.size();
    double tuples = std::pow(static_cast<double>(h.size()), static_cast<double>(ngen));
    if (tuples > 1e8) throw CapExceeded("count_group_homs: more than 10^8 candidate tuples");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ngen; ++i) index[g.generators[i]] = i;

    // Schedule each relator at the last generator it mentions.
    std::vector<std::vector<const Word*>> ready(ngen + 1);
    for (const auto& r : g.relators) {
        std::size_t last = 0;
        for (const auto& l : r) last = std::max(last, index.at(l.gen) + 1);
        ready[last].push_back(&r);
    }

    std::vector<int> img(ngen, 0);
    auto holds = [&](const Word& w) {
        int acc = h.identity();
        for (const auto& l : w) {
            int v = img[index.at(l.gen)];
            acc = h.mul(acc, l.exp > 0 ? v : h.inv(v));
        }
        return acc == h.identity();
    };
    long long count = 0;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        for (const Word* r : ready[k])
            if (!holds(*r)) return;
        if (k == ngen) {
            ++count;
            return;
        }
        for (int v = 0; v < h.size(); ++v) {
            img[k] = v;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return count;
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw InputError("cyclic_group: n must be >= 1");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.size() * b.size();
    auto enc = [&b](int x, int y) { return x * b.size() + y; };
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x1 = 0; x1 < a.size(); ++x1)
        for (int y1 = 0; y1 < b.size(); ++y1)
            for (int x2 = 0; x2 < a.size(); ++x2)
                for (int y2 = 0; y2 < b.size(); ++y2)
                    t[static_cast<std::size_t>(enc(x1, y1))][static_cast<std::size_t>(enc(x2, y2))] =
                        enc(a.mul(x1, x2), b.mul(y1, y2));
    return FiniteGroup(std::move(t));
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) throw InputError("dihedral_group: n must be >= 1");
    // Elements r^i s^j, encoded i + n*j; s r s = r^{-1}.
    const int sz = 2 * n;
    auto enc = [n](int i, int j) { return ((i % n + n) % n) + n * j; };
    std::vector<std::vector<int>> t(static_cast<std::size_t>(sz), std::vector<int>(static_cast<std::size_t>(sz)));
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    // (r^i1 s^j1)(r^i2 s^j2) = r^{i1 + (-1)^{j1} i2} s^{j1+j2}
                    int i = j1 == 0 ? i1 + i2 : i1 - i2;
                    t[static_cast<std::size_t>(enc(i1, j1))][static_cast<std::size_t>(enc(i2, j2))] =
                        enc(i, (j1 + j2) % 2);
                }
    return FiniteGroup(std::move(t));
}

FiniteGroup quaternion_group() {
    // {1, -1, i, -i, j, -j, k, -k} as 0..7; sign bit is the low bit.
    auto enc = [](int unit, int neg) { return unit * 2 + neg; };
    // unit products with result sign: i*j=k, j*k=i, k*i=j.
    static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int usgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int u1 = 0; u1 < 4; ++u1)
        for (int n1 = 0; n1 < 2; ++n1)
            for (int u2 = 0; u2 < 4; ++u2)
                for (int n2 = 0; n2 < 2; ++n2)
                    t[static_cast<std::size_t>(enc(u1, n1))][static_cast<std::size_t>(enc(u2, n2))] =
                        enc(umul[u1][u2], (n1 + n2 + usgn[u1][u2]) % 2);
    return FiniteGroup(std::move(t));
}

FiniteGroup symmetric_group_3() { return dihedral_group(3); }

std::vector<std::pair<std::string, FiniteGroup>> small_group_battery(int max_order) {
    if (max_order > 8) throw InputError("small_group_battery: only orders <= 8 are tabulated");
    std::vector<std::pair<std::string, FiniteGroup>> out;
    auto add = [&out, max_order](int order, const std::string& name, FiniteGroup g) {
        if (order <= max_order) out.emplace_back(name, std::move(g));
    };
    add(1, "Z1", cyclic_group(1));
    add(2, "Z2", cyclic_group(2));
    add(3, "Z3", cyclic_group(3));
    add(4, "Z4", cyclic_group(4));
    add(4, "Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2)));
    add(5, "Z5", cyclic_group(5));
    add(6, "Z6", cyclic_group(6));
    add(6, "S3", symmetric_group_3());
    add(7, "Z7", cyclic_group(7));
    add(8, "Z8", cyclic_group(8));
    add(8, "Z4xZ2", direct_product(cyclic_group(4), cyclic_group(2)));
    add(8, "Z2xZ2xZ2", direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
    add(8, "D4", dihedral_group(4));
    add(8, "Q8", quaternion_group());
    return out;
}

} // namespace budq
