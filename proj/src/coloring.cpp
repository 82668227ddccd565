#include "budq/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

#include "budq/errors.hpp"
#include "budq/group_invariants.hpp"

namespace budq {

namespace {

struct CompiledLetter {
    bool primary = true;
    int idx = 0; // into primary or operator generator list
    int exp = 1;
};

struct CompiledPrimaryRel {
    int lhs = 0, base = 0;
    std::vector<CompiledLetter> word;
};

struct CompiledOperatorRel {
    std::vector<CompiledLetter> word;
};

struct Slot {
    bool branch = true;
    int gen = 0;       // primary generator index assigned here
    int rel = -1;      // deriving relation (when !branch)
    bool forward = true; // derive lhs from base (else base from lhs)
    std::vector<int> checks; // primary relations fully determined after this slot
};

struct Compiled {
    std::vector<std::string> prim_names, op_names;
    std::vector<CompiledPrimaryRel> prels;
    std::vector<CompiledOperatorRel> orels;
    std::vector<Slot> slots;
};

Compiled compile(const AugmentedPresentation& p) {
    validate_presentation(p);
    Compiled c;
    std::map<std::string, std::pair<bool, int>> index; // name -> (primary, idx)
    for (const auto& g : p.generators) {
        if (g.kind == GenKind::Primary) {
            index[g.name] = {true, static_cast<int>(c.prim_names.size())};
            c.prim_names.push_back(g.name);
        } else {
            index[g.name] = {false, static_cast<int>(c.op_names.size())};
            c.op_names.push_back(g.name);
        }
    }
    auto compile_word = [&index](const Word& w) {
        std::vector<CompiledLetter> out;
        for (const auto& l : w) {
            auto [prim, idx] = index.at(l.gen);
            out.push_back({prim, idx, l.exp});
        }
        return out;
    };
    for (const auto& r : p.primary_relations)
        c.prels.push_back({index.at(r.lhs).second, index.at(r.base).second, compile_word(r.word)});
    for (const auto& r : p.operator_relations) c.orels.push_back({compile_word(r.word)});

    // Greedy elimination ordering: derive a generator from a relation as soon
    // as the relation's other primary generators are assigned; otherwise
    // branch on the first unassigned generator.
    const int n = static_cast<int>(c.prim_names.size());
    std::vector<bool> assigned(static_cast<std::size_t>(n), false);
    std::vector<bool> used(c.prels.size(), false);
    auto word_ready = [&](const CompiledPrimaryRel& r) {
        return std::all_of(r.word.begin(), r.word.end(), [&](const CompiledLetter& l) {
            return !l.primary || assigned[static_cast<std::size_t>(l.idx)];
        });
    };
    int remaining = n;
    while (remaining > 0) {
        Slot s;
        bool derived = false;
        for (std::size_t ri = 0; ri < c.prels.size() && !derived; ++ri) {
            if (used[ri]) continue;
            const auto& r = c.prels[ri];
            if (!word_ready(r)) continue;
            bool lhs_a = assigned[static_cast<std::size_t>(r.lhs)];
            bool base_a = assigned[static_cast<std::size_t>(r.base)];
            if (base_a && !lhs_a) {
                s = {false, r.lhs, static_cast<int>(ri), true, {}};
                derived = true;
            } else if (lhs_a && !base_a) {
                s = {false, r.base, static_cast<int>(ri), false, {}};
                derived = true;
            }
            if (derived) used[ri] = true;
        }
        if (!derived) {
            int g = 0;
            while (assigned[static_cast<std::size_t>(g)]) ++g;
            s = {true, g, -1, true, {}};
        }
        assigned[static_cast<std::size_t>(s.gen)] = true;
        --remaining;
        c.slots.push_back(s);
        // Attach consistency checks for relations that just became total.
        for (std::size_t ri = 0; ri < c.prels.size(); ++ri) {
            if (used[ri]) continue;
            const auto& r = c.prels[ri];
            if (assigned[static_cast<std::size_t>(r.lhs)] && assigned[static_cast<std::size_t>(r.base)] && word_ready(r)) {
                c.slots.back().checks.push_back(static_cast<int>(ri));
                used[ri] = true;
            }
        }
    }
    return c;
}

struct Evaluator {
    const FiniteQuandle& q;
    std::vector<Permutation> inner;              // f_y per element
    const std::vector<Permutation>* op_domain;   // inner group elements

    Permutation word_perm(const std::vector<CompiledLetter>& w, const std::vector<int>& prim,
                          const std::vector<int>& ops) const {
        Permutation acc = Permutation::identity(q.size());
        for (const auto& l : w) {
            const Permutation& base =
                l.primary ? inner[static_cast<std::size_t>(prim[static_cast<std::size_t>(l.idx)])]
                          : (*op_domain)[static_cast<std::size_t>(ops[static_cast<std::size_t>(l.idx)])];
            acc = l.exp > 0 ? acc.then(base) : acc.then(base.inverse());
        }
        return acc;
    }

    bool primary_ok(const CompiledPrimaryRel& r, const std::vector<int>& prim,
                    const std::vector<int>& ops) const {
        Permutation pi = word_perm(r.word, prim, ops);
        return prim[static_cast<std::size_t>(r.lhs)] == pi(prim[static_cast<std::size_t>(r.base)]);
    }

    std::vector<int> orbit_closure(const std::vector<int>& prim, const std::vector<int>& ops) const {
        if (prim.empty()) return {};
        std::vector<Permutation> gens;
        for (int v : prim) gens.push_back(inner[static_cast<std::size_t>(v)]);
        for (int v : ops) gens.push_back((*op_domain)[static_cast<std::size_t>(v)]);
        return subquandle_orbit(q, prim, gens);
    }

    // Returns -1 when the relation holds, else a violated orbit element.
    int operator_violation(const CompiledOperatorRel& r, const std::vector<int>& prim,
                           const std::vector<int>& ops, const std::vector<int>& orbit) const {
        Permutation pi = word_perm(r.word, prim, ops);
        for (int x : orbit)
            if (pi(x) != x) return x;
        return -1;
    }
};

// Depth-first search over primary slots with a fixed operator assignment.
// `emit` is called once per full solution; returning false stops the search.
template <typename Emit>
void search_slots(const Compiled& c, const Evaluator& ev, std::vector<int>& prim,
                  const std::vector<int>& ops, std::size_t depth, int fixed_first, Emit&& emit) {
    if (depth == c.slots.size()) {
        std::vector<int> orbit = ev.orbit_closure(prim, ops);
        for (const auto& r : c.orels)
            if (ev.operator_violation(r, prim, ops, orbit) >= 0) return;
        emit();
        return;
    }
    const Slot& s = c.slots[depth];
    auto try_value = [&](int v) {
        prim[static_cast<std::size_t>(s.gen)] = v;
        for (int ri : s.checks)
            if (!ev.primary_ok(c.prels[static_cast<std::size_t>(ri)], prim, ops)) {
                prim[static_cast<std::size_t>(s.gen)] = -1;
                return;
            }
        search_slots(c, ev, prim, ops, depth + 1, fixed_first, emit);
        prim[static_cast<std::size_t>(s.gen)] = -1;
    };
    if (s.branch) {
        if (depth == 0 && fixed_first >= 0) {
            try_value(fixed_first);
        } else {
            for (int v = 0; v < ev.q.size(); ++v) try_value(v);
        }
    } else {
        const auto& r = c.prels[static_cast<std::size_t>(s.rel)];
        Permutation pi = ev.word_perm(r.word, prim, ops);
        int v = s.forward ? pi(prim[static_cast<std::size_t>(r.base)])
                          : pi.inverse()(prim[static_cast<std::size_t>(r.lhs)]);
        try_value(v);
    }
}

// Iterates over all operator assignments (indices into the operator domain).
template <typename Body>
void for_each_operator_assignment(std::size_t nops, std::size_t domain, Body&& body) {
    std::vector<int> ops(nops, 0);
    if (nops == 0) {
        body(ops);
        return;
    }
    while (true) {
        body(ops);
        std::size_t k = 0;
        while (k < nops) {
            if (static_cast<std::size_t>(++ops[k]) < domain) break;
            ops[k++] = 0;
        }
        if (k == nops) break;
    }
}

struct Prepared {
    const FiniteQuandle* q = nullptr;
    Compiled c;
    std::vector<Permutation> op_domain;

    Evaluator evaluator() const { return Evaluator{*q, all_inner_maps(*q), &op_domain}; }
};

Prepared prepare(const AugmentedPresentation& p, const FiniteQuandle& q,
                 const ColoringOptions& opts) {
    Prepared out;
    out.q = &q;
    out.c = compile(p);
    if (!out.c.op_names.empty())
        out.op_domain = inner_group_elements(q, all_inner_maps(q), opts.operator_cap);
    return out;
}

long long count_fixed_first(const Prepared& pr, int fixed_first) {
    Evaluator ev = pr.evaluator();
    long long total = 0;
    for_each_operator_assignment(pr.c.op_names.size(), pr.op_domain.size(),
                                 [&](const std::vector<int>& ops) {
                                     std::vector<int> prim(pr.c.prim_names.size(), -1);
                                     search_slots(pr.c, ev, prim, ops, 0, fixed_first,
                                                  [&total] { ++total; });
                                 });
    return total;
}

} // namespace

long long count_colorings(const AugmentedPresentation& p, const FiniteQuandle& q,
                          const ColoringOptions& opts) {
    if (opts.jobs < 1) throw InputError("count_colorings: jobs must be >= 1");
    Prepared pr = prepare(p, q, opts);
    if (opts.jobs == 1 || pr.c.prim_names.empty()) return count_fixed_first(pr, -1);

    // Partition the first branching generator's values across workers.
    std::vector<long long> partial(static_cast<std::size_t>(q.size()), 0);
    std::vector<std::thread> workers;
    int jobs = std::min(opts.jobs, q.size());
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&pr, &partial, w, jobs, n = q.size()] {
            for (int v = w; v < n; v += jobs) partial[static_cast<std::size_t>(v)] = count_fixed_first(pr, v);
        });
    for (auto& t : workers) t.join();
    return std::accumulate(partial.begin(), partial.end(), 0ll);
}

std::vector<Coloring> list_colorings(const AugmentedPresentation& p, const FiniteQuandle& q,
                                     std::size_t limit, const ColoringOptions& opts) {
    Prepared pr = prepare(p, q, opts);
    Evaluator ev = pr.evaluator();
    std::vector<std::pair<std::vector<int>, std::vector<int>>> found;
    for_each_operator_assignment(pr.c.op_names.size(), pr.op_domain.size(),
                                 [&](const std::vector<int>& ops) {
                                     std::vector<int> prim(pr.c.prim_names.size(), -1);
                                     search_slots(pr.c, ev, prim, ops, 0, -1,
                                                  [&] { found.emplace_back(prim, ops); });
                                 });
    std::sort(found.begin(), found.end());
    if (found.size() > limit) found.resize(limit);
    std::vector<Coloring> out;
    for (const auto& [prim, ops] : found) {
        Coloring c;
        for (std::size_t i = 0; i < pr.c.prim_names.size(); ++i)
            c.primary_assignment[pr.c.prim_names[i]] = prim[i];
        for (std::size_t i = 0; i < pr.c.op_names.size(); ++i)
            c.operator_assignment.emplace(pr.c.op_names[i], pr.op_domain[static_cast<std::size_t>(ops[i])]);
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::string word_text(const Word& w) {
    if (w.empty()) return "∅";
    std::ostringstream os;
    for (const auto& l : w) os << (l.exp > 0 ? "" : "~") << l.gen << " ";
    std::string s = os.str();
    s.pop_back();
    return s;
}

} // namespace

VerificationReport verify_coloring(const AugmentedPresentation& p, const FiniteQuandle& q,
                                   const Coloring& col) {
    validate_presentation(p);
    VerificationReport rep;
    std::vector<Permutation> inner = all_inner_maps(q);

    auto lookup_prim = [&](const std::string& g) {
        auto it = col.primary_assignment.find(g);
        if (it == col.primary_assignment.end())
            throw InputError("verify_coloring: no assignment for primary generator '" + g + "'");
        if (it->second < 0 || it->second >= q.size())
            throw InputError("verify_coloring: assignment for '" + g + "' out of range");
        return it->second;
    };
    auto letter_perm = [&](const Letter& l) {
        const GeneratorId* g = p.find_generator(l.gen);
        Permutation base;
        if (g->kind == GenKind::Primary) {
            base = inner[static_cast<std::size_t>(lookup_prim(l.gen))];
        } else {
            auto it = col.operator_assignment.find(l.gen);
            if (it == col.operator_assignment.end())
                throw InputError("verify_coloring: no assignment for operator generator '" + l.gen + "'");
            base = it->second;
        }
        return l.exp > 0 ? base : base.inverse();
    };
    auto word_perm = [&](const Word& w) {
        Permutation acc = Permutation::identity(q.size());
        for (const auto& l : w) acc = acc.then(letter_perm(l));
        return acc;
    };

    for (const auto& r : p.primary_relations) {
        int lhs = lookup_prim(r.lhs);
        int got = word_perm(r.word)(lookup_prim(r.base));
        VerificationReport::Item item;
        item.relation = r.lhs + " = " + r.base + "^(" + word_text(r.word) + ")";
        item.pass = lhs == got;
        if (!item.pass)
            item.detail = "expected " + std::to_string(lhs) + ", word sends base to " + std::to_string(got);
        rep.items.push_back(std::move(item));
    }

    std::vector<int> seeds;
    std::vector<Permutation> gens;
    for (const auto& g : p.generators) {
        if (g.kind == GenKind::Primary) {
            int v = lookup_prim(g.name);
            seeds.push_back(v);
            gens.push_back(inner[static_cast<std::size_t>(v)]);
        } else {
            auto it = col.operator_assignment.find(g.name);
            if (it == col.operator_assignment.end())
                throw InputError("verify_coloring: no assignment for operator generator '" + g.name + "'");
            gens.push_back(it->second);
        }
    }
    std::vector<int> orbit = seeds.empty() ? std::vector<int>{} : subquandle_orbit(q, seeds, gens);
    for (const auto& r : p.operator_relations) {
        Permutation pi = word_perm(r.word);
        VerificationReport::Item item;
        item.relation = word_text(r.word) + " ≡ 1";
        int bad = -1;
        for (int x : orbit)
            if (pi(x) != x) { bad = x; break; }
        item.pass = bad < 0;
        if (!item.pass)
            item.detail = "moves orbit element " + std::to_string(bad) + " to " + std::to_string(pi(bad));
        rep.items.push_back(std::move(item));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Fox coloring oracle

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

long long fox_count(const ClassicalDiagram& d, int p) {
    if (!is_classical(d)) throw InputError("fox_count: classical diagram required");
    if (p < 2) throw InputError("fox_count: modulus must be >= 2");
    DiagramReport rep = validate_diagram(d);
    if (!rep.ok()) throw InputError("fox_count: invalid diagram:\n" + rep.summary());

    std::map<std::string, int> idx;
    for (const auto& a : d.arcs) idx[a.id] = static_cast<int>(idx.size());
    const int n = static_cast<int>(idx.size());

    if (is_prime(p)) {
        // Row reduce the crossing system over the field Z/p.
        std::vector<std::vector<int>> m;
        for (const auto& x : d.crossings) {
            std::vector<int> row(static_cast<std::size_t>(n), 0);
            auto bump = [&row, p](int j, int v) {
                std::size_t k = static_cast<std::size_t>(j);
                row[k] = ((row[k] + v) % p + p) % p;
            };
            bump(idx.at(x.under_out), 1);
            bump(idx.at(x.under_in), 1);
            bump(idx.at(x.over.id), -2);
            m.push_back(std::move(row));
        }
        int rank = 0;
        for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
            int piv = -1;
            for (int i = rank; i < static_cast<int>(m.size()); ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(piv)]);
            // Normalize pivot to 1 via modular inverse (Fermat).
            int pv = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
            long long inv = 1, b = pv, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = inv * b % p;
                b = b * b % p;
                e >>= 1;
            }
            for (auto& v : m[static_cast<std::size_t>(rank)]) v = static_cast<int>(v * inv % p);
            for (int i = 0; i < static_cast<int>(m.size()); ++i) {
                if (i == rank) continue;
                int f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
                if (f == 0) continue;
                for (int j = 0; j < n; ++j) {
                    auto& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    v = ((v - f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) % p + p) % p;
                }
            }
            ++rank;
        }
        return ipow(p, n - rank);
    }

    // Composite modulus: integer Smith normal form.
    IntMatrix m;
    for (const auto& x : d.crossings) {
        std::vector<mpz_class> row(static_cast<std::size_t>(n), 0);
        row[static_cast<std::size_t>(idx.at(x.under_out))] += 1;
        row[static_cast<std::size_t>(idx.at(x.under_in))] += 1;
        row[static_cast<std::size_t>(idx.at(x.over.id))] -= 2;
        m.push_back(std::move(row));
    }
    std::vector<mpz_class> diag = smith_normal_form(std::move(m));
    long long count = ipow(p, n - static_cast<int>(diag.size()));
    for (const auto& di : diag) {
        mpz_class g = gcd(di, mpz_class(p));
        count *= g.get_si();
    }
    return count;
}

} // namespace budq
