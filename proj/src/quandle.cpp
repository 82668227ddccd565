#include "budq/quandle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "budq/errors.hpp"

namespace budq {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
        if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
            throw InputError("permutation mapping is not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> m(map_.size());
    for (int x = 0; x < size(); ++x) m[static_cast<std::size_t>(map_[static_cast<std::size_t>(x)])] = x;
    return Permutation(std::move(m));
}

Permutation Permutation::then(const Permutation& g) const {
    std::vector<int> m(map_.size());
    for (int x = 0; x < size(); ++x) m[static_cast<std::size_t>(x)] = g(map_[static_cast<std::size_t>(x)]);
    return Permutation(std::move(m));
}

Permutation Permutation::pow(long long k) const {
    Permutation base = k >= 0 ? *this : inverse();
    if (k < 0) k = -k;
    Permutation acc = identity(size());
    while (k > 0) {
        if (k & 1) acc = acc.then(base);
        base = base.then(base);
        k >>= 1;
    }
    return acc;
}

bool Permutation::is_identity() const {
    for (int x = 0; x < size(); ++x)
        if (map_[static_cast<std::size_t>(x)] != x) return false;
    return true;
}

namespace {

void check_shape(const std::vector<std::vector<int>>& table) {
    const std::size_t n = table.size();
    for (const auto& row : table) {
        if (row.size() != n) throw InputError("malformed table: not square");
        for (int v : row)
            if (v < 0 || v >= static_cast<int>(n))
                throw InputError("malformed table: entry out of range");
    }
}

} // namespace

QuandleValidation validate_quandle(const std::vector<std::vector<int>>& table) {
    check_shape(table);
    const int n = static_cast<int>(table.size());
    QuandleValidation r;

    for (int x = 0; x < n && r.idempotence.pass; ++x) {
        if (table[x][x] != x) r.idempotence = {false, {x}};
    }
    for (int y = 0; y < n && r.right_invertibility.pass; ++y) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int x = 0; x < n; ++x) {
            int v = table[x][y];
            if (seen[static_cast<std::size_t>(v)]) {
                r.right_invertibility = {false, {y}};
                break;
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    for (int x = 0; x < n && r.distributivity.pass; ++x)
        for (int y = 0; y < n && r.distributivity.pass; ++y)
            for (int z = 0; z < n; ++z)
                if (table[table[x][y]][z] != table[table[x][z]][table[y][z]]) {
                    r.distributivity = {false, {x, y, z}};
                    break;
                }

    r.kei = r.right_invertibility.pass;
    if (r.kei)
        for (int x = 0; x < n && r.kei; ++x)
            for (int y = 0; y < n; ++y)
                if (table[table[x][y]][y] != x) {
                    r.kei = false;
                    break;
                }
    return r;
}

std::string QuandleValidation::summary() const {
    std::ostringstream os;
    auto line = [&os](const char* name, const AxiomCheck& c) {
        os << name << ": " << (c.pass ? "PASS" : "FAIL at (");
        if (!c.pass) {
            for (std::size_t i = 0; i < c.witness.size(); ++i)
                os << (i ? "," : "") << c.witness[i];
            os << ")";
        }
        os << "\n";
    };
    line("idempotence", idempotence);
    line("right-invertibility", right_invertibility);
    line("distributivity", distributivity);
    os << "kei: " << (kei ? "true" : "false");
    return os.str();
}

FiniteQuandle::FiniteQuandle(std::vector<std::vector<int>> table,
                             std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
    if (table_.empty()) throw InputError("quandle must have at least one element");
    QuandleValidation v = validate_quandle(table_);
    if (!v.ok()) throw InputError("not a quandle:\n" + v.summary());
    if (!labels_.empty() && labels_.size() != table_.size())
        throw InputError("labels length does not match quandle size");

    const int n = size();
    inv_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) inv_[static_cast<std::size_t>(table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])][static_cast<std::size_t>(y)] = x;
}

int FiniteQuandle::op_inv(int x, int y) const {
    return inv_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

FiniteQuandle make_dihedral(int n) {
    if (n < 1) throw InputError("dihedral quandle requires n >= 1");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = ((2 * y - x) % n + n) % n;
    return FiniteQuandle(std::move(t));
}

FiniteQuandle make_conjugation(const std::vector<std::vector<int>>& g) {
    check_shape(g);
    const int n = static_cast<int>(g.size());
    if (n == 0) throw InputError("invalid group: empty table");

    // identity
    int e = -1;
    for (int c = 0; c < n; ++c) {
        bool ok = true;
        for (int x = 0; x < n; ++x)
            if (g[x][c] != x || g[c][x] != x) { ok = false; break; }
        if (ok) { e = c; break; }
    }
    if (e < 0) throw InputError("invalid group: no identity element");

    // inverses
    std::vector<int> inv(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (g[x][y] == e && g[y][x] == e) { inv[static_cast<std::size_t>(x)] = y; break; }
        if (inv[static_cast<std::size_t>(x)] < 0) throw InputError("invalid group: missing inverse");
    }

    // associativity
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g[g[a][b]][c] != g[a][g[b][c]])
                    throw InputError("invalid group: not associative");

    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = g[g[inv[static_cast<std::size_t>(y)]][x]][y];
    return FiniteQuandle(std::move(t));
}

Permutation inner_map(const FiniteQuandle& q, int y) {
    if (y < 0 || y >= q.size()) throw InputError("inner_map: element out of range");
    std::vector<int> m(static_cast<std::size_t>(q.size()));
    for (int x = 0; x < q.size(); ++x) m[static_cast<std::size_t>(x)] = q.op(x, y);
    return Permutation(std::move(m));
}

std::vector<Permutation> all_inner_maps(const FiniteQuandle& q) {
    std::vector<Permutation> v;
    v.reserve(static_cast<std::size_t>(q.size()));
    for (int y = 0; y < q.size(); ++y) v.push_back(inner_map(q, y));
    return v;
}

long long quandle_type(const FiniteQuandle& q) {
    long long type = 1;
    for (int y = 0; y < q.size(); ++y) {
        Permutation f = inner_map(q, y);
        Permutation p = f;
        long long ord = 1;
        while (!p.is_identity()) {
            p = p.then(f);
            ++ord;
        }
        type = std::lcm(type, ord);
    }
    return type;
}

std::vector<int> subquandle_orbit(const FiniteQuandle& q,
                                  const std::vector<int>& seeds,
                                  const std::vector<Permutation>& gens) {
    if (seeds.empty()) throw InputError("subquandle_orbit: seeds must be nonempty");
    std::vector<bool> in(static_cast<std::size_t>(q.size()), false);
    std::vector<int> stack;
    for (int s : seeds) {
        if (s < 0 || s >= q.size()) throw InputError("subquandle_orbit: seed out of range");
        if (!in[static_cast<std::size_t>(s)]) { in[static_cast<std::size_t>(s)] = true; stack.push_back(s); }
    }
    std::vector<Permutation> both;
    for (const auto& g : gens) {
        both.push_back(g);
        both.push_back(g.inverse());
    }
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& g : both) {
            int y = g(x);
            if (!in[static_cast<std::size_t>(y)]) { in[static_cast<std::size_t>(y)] = true; stack.push_back(y); }
        }
    }
    std::vector<int> out;
    for (int x = 0; x < q.size(); ++x)
        if (in[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
}

std::vector<Permutation> inner_group_elements(const FiniteQuandle& q,
                                              const std::vector<Permutation>& gens,
                                              std::size_t cap) {
    for (const auto& g : gens)
        if (g.size() != q.size()) throw InputError("inner_group_elements: generator size mismatch");

    std::set<Permutation> seen;
    std::vector<Permutation> frontier;
    Permutation id = Permutation::identity(q.size());
    seen.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Permutation pg = p.then(g);
                if (seen.insert(pg).second) {
                    if (seen.size() > cap)
                        throw CapExceeded("operator group exceeds cap of " + std::to_string(cap));
                    next.push_back(std::move(pg));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

nlohmann::json quandle_to_json(const FiniteQuandle& q) {
    nlohmann::json j;
    j["size"] = q.size();
    j["table"] = q.table();
    j["labels"] = q.labels();
    return j;
}

FiniteQuandle quandle_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("table"))
        throw InputError("quandle JSON must contain \"size\" and \"table\"");
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.at("size").get<int>() != static_cast<int>(table.size()))
        throw InputError("quandle JSON: size field does not match table");
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null())
        labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteQuandle(std::move(table), std::move(labels));
}

} // namespace budq
