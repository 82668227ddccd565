// Acceptance suite: one criterion per invocation (argv[1] in 1..11), printing
// one PASS/FAIL line per sub-check. Exit 0 iff every sub-check passed.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "budq/bounds.hpp"
#include "budq/coloring.hpp"
#include "budq/diagram.hpp"
#include "budq/errors.hpp"
#include "budq/group_invariants.hpp"
#include "budq/presentation.hpp"
#include "budq/quandle.hpp"

using namespace budq;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "PASS: " : "FAIL: ") << what;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

template <typename T>
void check_eq(const T& got, const T& want, const std::string& what) {
    std::ostringstream d;
    d << "got " << got << ", want " << want;
    report(got == want, what, d.str());
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

AugmentedPresentation torus(int p, int q) {
    return extract_presentation(family_torus_link(p, q));
}

std::string ab_str(const Abelianization& a) {
    std::ostringstream os;
    os << "Z^" << a.free_rank;
    for (const auto& t : a.torsion) os << " + Z_" << t.get_str();
    return os.str();
}

// ---------------------------------------------------------------------------

// Spherical 2-knot regression: spun trefoil joined with the degree-2 curve,
// i.e. attach the order-2 relation, colored into R_3.
void criterion1() {
    AugmentedPresentation s2 =
        attach_order_relation(twist_spin(torus(2, 3), 0), "a1", 2);
    check_eq(count_colorings(s2, make_dihedral(3)), 9LL,
             "spun trefoil with order-2 relation has 9 colorings in R_3");
}

// Algebraic curves admit only constant colorings: count = #Q.
void criterion2() {
    std::vector<std::pair<std::string, FiniteQuandle>> targets;
    for (int n : {3, 5, 7})
        targets.emplace_back("R_" + std::to_string(n), make_dihedral(n));
    targets.emplace_back("conj(S3)", make_conjugation(symmetric_group_3().table()));
    for (int d = 1; d <= 6; ++d) {
        AugmentedPresentation p = extract_presentation(family_algebraic_curve(d));
        for (const auto& [name, q] : targets)
            check_eq(count_colorings(p, q), static_cast<long long>(q.size()),
                     "curve d=" + std::to_string(d) + " into " + name);
    }
}

// Dihedral counts of (2,q) torus links.
void criterion3() {
    for (int q : {3, 5, 7})
        check_eq(count_colorings(torus(2, q), make_dihedral(q)),
                 static_cast<long long>(q) * q,
                 "t(2," + std::to_string(q) + ") into R_" + std::to_string(q) +
                     " counts q^2");
    std::vector<std::pair<int, int>> pairs = {{5, 3}, {7, 3}, {7, 5}, {9, 3}};
    for (auto [q, qp] : pairs)
        check_eq(count_colorings(torus(2, qp), make_dihedral(q)),
                 static_cast<long long>(q) * std::gcd(q, qp),
                 "t(2," + std::to_string(qp) + ") into R_" + std::to_string(q) +
                     " counts q*gcd(q,q')");
}

// Connected sums: l summands of t(2,q) give q^{l+1}; count(k1#k2)*q =
// count(k1)*count(k2).
void criterion4() {
    for (int q : {3, 5}) {
        FiniteQuandle rq = make_dihedral(q);
        AugmentedPresentation k = torus(2, q);
        AugmentedPresentation cur = k;
        for (int l = 1; l <= 3; ++l) {
            check_eq(count_colorings(cur, rq), ipow(q, l + 1),
                     "sum of " + std::to_string(l) + " copies of t(2," +
                         std::to_string(q) + ") into R_" + std::to_string(q));
            cur = connected_sum(cur, "a1", k, "a1");
        }
        std::vector<AugmentedPresentation> ks = {torus(2, 3), torus(2, 5)};
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::size_t j = i; j < ks.size(); ++j) {
                long long lhs =
                    count_colorings(connected_sum(ks[i], "a1", ks[j], "a1"), rq) * q;
                long long rhs = count_colorings(ks[i], rq) * count_colorings(ks[j], rq);
                check_eq(lhs, rhs,
                         "sum identity (" + std::to_string(i) + "," + std::to_string(j) +
                             ") over R_" + std::to_string(q));
            }
    }
}

// Bridge-number lower bounds on exact powers.
void criterion5() {
    for (int q : {3, 5})
        for (int l : {1, 2, 3}) {
            long long c = ipow(q, l + 1);
            std::string tag = " (q=" + std::to_string(q) + ", l=" + std::to_string(l) + ")";
            check_eq(bridge_lower_bound(c, q, 2).bound_integer, 3LL * l + 1,
                     "sphere bound 3l+1" + tag);
            check_eq(bridge_lower_bound(c, q, 1).bound_integer, 3LL * l + 2,
                     "chi=1 bound 3l+2" + tag);
            check_eq(bridge_lower_bound(c, q, 0).bound_integer, 3LL * l + 3,
                     "chi=0 bound 3l+3" + tag);
            check_eq(classical_bridge_lower_bound(c, q).bound_integer,
                     static_cast<long long>(l) + 1, "classical bound l+1" + tag);
        }
}

// Group abelianizations: curve exteriors are Z_d, classical knot groups have
// H1 = Z.
void criterion6() {
    for (int d = 2; d <= 6; ++d) {
        Abelianization a = abelianization(
            group_presentation(extract_presentation(family_algebraic_curve(d))));
        Abelianization want{0, {mpz_class(d)}};
        report(a == want, "curve d=" + std::to_string(d) + " abelianization is Z_" +
                              std::to_string(d),
               "got " + ab_str(a));
    }
    std::vector<std::pair<int, int>> knots = {{2, 3}, {2, 5}, {2, 7}, {3, 4}};
    for (auto [p, q] : knots) {
        Abelianization a = abelianization(group_presentation(torus(p, q)));
        report(a.free_rank == 1 && a.torsion.empty(),
               "t(" + std::to_string(p) + "," + std::to_string(q) +
                   ") knot group abelianization is Z",
               "got " + ab_str(a));
    }
}

// Kei parity of connected sums with curves: even degree preserves the count,
// odd degree collapses to the constants.
void criterion7() {
    AugmentedPresentation s = twist_spin(torus(2, 3), 0); // spun trefoil
    for (int n : {3, 5, 7, 9}) {
        FiniteQuandle k = make_dihedral(n);
        long long base = count_colorings(s, k);
        for (int kk : {1, 2, 3}) {
            int d = 2 * kk;
            AugmentedPresentation cd =
                simplify(extract_presentation(family_algebraic_curve(d)));
            AugmentedPresentation joined =
                connected_sum(s, "a1", cd, cd.generators[0].name);
            check_eq(count_colorings(joined, k), base,
                     "S # C_" + std::to_string(d) + " into R_" + std::to_string(n) +
                         " keeps the count");
        }
        for (int kk : {1, 2}) {
            int d = 2 * kk - 1;
            AugmentedPresentation cd =
                simplify(extract_presentation(family_algebraic_curve(d)));
            AugmentedPresentation joined =
                connected_sum(s, "a1", cd, cd.generators[0].name);
            check_eq(count_colorings(joined, k), static_cast<long long>(n),
                     "S # C_" + std::to_string(d) + " into R_" + std::to_string(n) +
                         " collapses to the constants");
        }
    }
}

// Twist-spin parity, plus the (2,3,5), d=30 triple comparison. The triple's
// group presentations carry the relators g^n (n = 2, 3, 5 respectively) and
// g^30, so their abelianizations are Z_2, Z_3, Z_5: the coincidence checks
// below are expected to fail and are reported honestly.
void criterion8() {
    for (int tq : {3, 5}) {
        AugmentedPresentation k = torus(2, tq);
        for (int q : {3, 5, 7, 9}) {
            FiniteQuandle rq = make_dihedral(q);
            long long base = count_colorings(k, rq);
            for (int n = 0; n <= 5; ++n) {
                long long got = count_colorings(twist_spin(k, n), rq);
                long long want = (n % 2 == 0) ? base : q;
                check_eq(got, want,
                         "twist-spin n=" + std::to_string(n) + " of t(2," +
                             std::to_string(tq) + ") into R_" + std::to_string(q));
            }
        }
    }

    // Triple: S_i = (n-twist-spin of a torus knot) # C_30, (p,q,r) = (2,3,5).
    AugmentedPresentation c30 =
        simplify(extract_presentation(family_algebraic_curve(30)));
    auto make = [&](int n, int tp, int tq) {
        AugmentedPresentation t = twist_spin(torus(tp, tq), n);
        AugmentedPresentation s =
            connected_sum(t, t.generators[0].name, c30, c30.generators[0].name);
        return simplify(propagate_order_relations(s));
    };
    std::vector<AugmentedPresentation> triple = {
        make(2, 3, 5), make(3, 5, 2), make(5, 2, 3)};
    std::vector<GroupPresentation> groups;
    std::vector<Abelianization> abs;
    for (const auto& s : triple) {
        groups.push_back(group_presentation(s));
        abs.push_back(abelianization(groups.back()));
    }
    report(abs[0] == abs[1] && abs[1] == abs[2],
           "triple (2,3,5), d=30: abelianizations coincide",
           ab_str(abs[0]) + " vs " + ab_str(abs[1]) + " vs " + ab_str(abs[2]));
    for (const auto& [name, h] : small_group_battery(8)) {
        std::vector<long long> counts;
        std::string guard;
        for (const auto& g : groups) {
            try {
                counts.push_back(count_group_homs(g, h));
            } catch (const CapExceeded& e) {
                guard = e.what();
                break;
            }
        }
        if (!guard.empty()) {
            report(false, "triple hom-counts into " + name,
                   "enumeration guard: " + guard);
            continue;
        }
        std::ostringstream d;
        d << counts[0] << " vs " << counts[1] << " vs " << counts[2];
        report(counts[0] == counts[1] && counts[1] == counts[2],
               "triple hom-counts into " + name + " coincide", d.str());
    }
}

// Oracle equivalence: backtracking quandle count equals the linear-algebra
// Fox count on >= 20 classical diagrams for p in {2,3,5,7,9}.
void criterion9() {
    std::vector<ClassicalDiagram> diags;
    std::vector<std::pair<int, int>> params = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5},
                                               {2, 6}, {3, 1}, {3, 2}, {3, 3}, {3, 4},
                                               {4, 2}, {4, 3}, {5, 2}};
    for (auto [p, q] : params) diags.push_back(family_torus_link(p, q));

    std::vector<std::pair<int, int>> bases = {{2, 3}, {2, 5}, {3, 2}};
    for (auto [p, q] : bases) {
        ClassicalDiagram base = family_torus_link(p, q);
        ReidemeisterMove r1;
        r1.kind = ReidemeisterMove::Kind::R1;
        r1.arc = base.arcs[0].id;
        r1.sign = -1;
        diags.push_back(apply_reidemeister(base, r1));

        ReidemeisterMove r2;
        r2.kind = ReidemeisterMove::Kind::R2;
        r2.arc = base.arcs[0].id;
        r2.over = base.arcs[1].id;
        r2.sign = 1;
        ClassicalDiagram d2 = apply_reidemeister(base, r2);
        diags.push_back(d2);

        ReidemeisterMove r1b;
        r1b.kind = ReidemeisterMove::Kind::R1;
        r1b.arc = d2.arcs.back().id;
        r1b.sign = 1;
        diags.push_back(apply_reidemeister(d2, r1b));
    }
    report(diags.size() >= 20, "at least 20 classical diagrams in the battery",
           std::to_string(diags.size()) + " diagrams");

    for (std::size_t i = 0; i < diags.size(); ++i) {
        AugmentedPresentation pres = extract_presentation(diags[i]);
        bool all = true;
        std::string detail;
        for (int p : {2, 3, 5, 7, 9}) {
            long long a = count_colorings(pres, make_dihedral(p));
            long long b = fox_count(diags[i], p);
            if (a != b) {
                all = false;
                detail = "p=" + std::to_string(p) + ": backtracking " +
                         std::to_string(a) + " vs fox " + std::to_string(b);
                break;
            }
        }
        report(all, "diagram " + std::to_string(i + 1) + " matches the Fox oracle",
               detail);
    }
}

// --- randomized Reidemeister driver for criterion 10 ------------------------

bool try_apply(ClassicalDiagram& d, const ReidemeisterMove& m) {
    try {
        d = apply_reidemeister(d, m);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

std::vector<ReidemeisterMove> remove_sites(const ClassicalDiagram& d) {
    std::vector<ReidemeisterMove> sites;
    for (const auto& c : d.crossings) {
        if (c.over.type == OverType::Arc &&
            (c.over.id == c.under_in || c.over.id == c.under_out)) {
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R1;
            m.dir = ReidemeisterMove::Dir::Remove;
            m.c1 = c.id;
            sites.push_back(m);
        }
    }
    for (const auto& c1 : d.crossings)
        for (const auto& c2 : d.crossings) {
            if (c1.id == c2.id || c1.over.type != OverType::Arc ||
                c2.over.type != OverType::Arc || c1.over.id != c2.over.id ||
                c1.sign != -c2.sign || c1.under_out != c2.under_in)
                continue;
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R2;
            m.dir = ReidemeisterMove::Dir::Remove;
            m.c1 = c1.id;
            m.c2 = c2.id;
            sites.push_back(m);
        }
    return sites;
}

std::vector<ReidemeisterMove> r3_sites(const ClassicalDiagram& d) {
    std::vector<ReidemeisterMove> sites;
    for (const auto& cmb : d.crossings)
        for (const auto& ctb : d.crossings)
            for (const auto& ctm : d.crossings) {
                if (cmb.id == ctb.id || cmb.id == ctm.id || ctb.id == ctm.id) continue;
                if (cmb.over.type != OverType::Arc || ctb.over.type != OverType::Arc ||
                    ctm.over.type != OverType::Arc)
                    continue;
                if (cmb.under_out != ctb.under_in || ctm.over.id != ctb.over.id) continue;
                const std::string& mid = cmb.over.id;
                bool ok = (mid == ctm.under_in && ctm.sign == -ctb.sign) ||
                          (mid == ctm.under_out && ctm.sign == ctb.sign);
                if (!ok) continue;
                ReidemeisterMove m;
                m.kind = ReidemeisterMove::Kind::R3;
                m.c1 = cmb.id;
                m.c2 = ctb.id;
                m.c3 = ctm.id;
                sites.push_back(m);
            }
    return sites;
}

// Applies one randomized move; returns a short tag for the log.
std::string random_move(ClassicalDiagram& d, std::mt19937& rng) {
    auto pick_arc = [&](const ClassicalDiagram& dia) {
        std::uniform_int_distribution<std::size_t> u(0, dia.arcs.size() - 1);
        return dia.arcs[u(rng)].id;
    };
    for (int attempt = 0; attempt < 64; ++attempt) {
        int roll = static_cast<int>(rng() % 6);
        bool crowded = d.crossings.size() > 16;
        if (crowded && roll < 3) roll = 5; // bias toward removal
        if (roll == 5) {
            auto sites = remove_sites(d);
            if (!sites.empty()) {
                std::uniform_int_distribution<std::size_t> u(0, sites.size() - 1);
                ReidemeisterMove m = sites[u(rng)];
                if (try_apply(d, m))
                    return m.kind == ReidemeisterMove::Kind::R1 ? "R1-" : "R2-";
            }
            continue;
        }
        if (roll == 4) {
            auto sites = r3_sites(d);
            if (!sites.empty()) {
                std::uniform_int_distribution<std::size_t> u(0, sites.size() - 1);
                if (try_apply(d, sites[u(rng)])) return "R3";
            }
            continue;
        }
        if (roll % 2 == 0) {
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R1;
            m.arc = pick_arc(d);
            m.sign = (rng() % 2 == 0) ? 1 : -1;
            if (try_apply(d, m)) return "R1+";
        } else {
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R2;
            m.arc = pick_arc(d);
            m.over = pick_arc(d);
            m.sign = (rng() % 2 == 0) ? 1 : -1;
            if (m.arc != m.over && try_apply(d, m)) return "R2+";
        }
    }
    throw Error("no applicable randomized move found");
}

// Coloring counts into the full battery are invariant under 50 randomized
// moves per base diagram.
void criterion10() {
    std::vector<std::pair<std::string, FiniteQuandle>> battery;
    for (int n : {3, 5, 7, 9})
        battery.emplace_back("R_" + std::to_string(n), make_dihedral(n));
    battery.emplace_back("conj(S3)", make_conjugation(symmetric_group_3().table()));

    std::mt19937 rng(20240817);
    std::vector<std::pair<int, int>> bases = {{2, 3}, {2, 5}, {3, 2}};
    for (auto [p, q] : bases) {
        std::string base_name = "t(" + std::to_string(p) + "," + std::to_string(q) + ")";
        ClassicalDiagram d = family_torus_link(p, q);
        std::vector<long long> baseline;
        for (const auto& [name, quandle] : battery) {
            (void)name;
            baseline.push_back(count_colorings(extract_presentation(d), quandle));
        }
        bool all_ok = true;
        std::string detail;
        int r3_applied = 0;
        for (int step = 0; step < 50 && all_ok; ++step) {
            std::string tag = random_move(d, rng);
            if (tag == "R3") ++r3_applied;
            AugmentedPresentation pres = extract_presentation(d);
            for (std::size_t i = 0; i < battery.size(); ++i) {
                long long got = count_colorings(pres, battery[i].second);
                if (got != baseline[i]) {
                    all_ok = false;
                    detail = "step " + std::to_string(step + 1) + " (" + tag +
                             ") changed the " + battery[i].first + " count: " +
                             std::to_string(got) + " vs " + std::to_string(baseline[i]);
                    break;
                }
            }
        }
        report(all_ok, base_name + ": counts invariant under 50 randomized moves",
               detail);
        report(r3_applied > 0, base_name + ": the randomized walk exercised R3",
               "no R3 site was ever applied");
    }
}

// Axiom suite: quandle validation, dihedral types, and rewrite safety.
void criterion11() {
    std::vector<std::pair<std::string, FiniteQuandle>> quandles;
    for (int n = 1; n <= 9; ++n)
        quandles.emplace_back("R_" + std::to_string(n), make_dihedral(n));
    quandles.emplace_back("conj(S3)", make_conjugation(symmetric_group_3().table()));
    quandles.emplace_back("conj(Z4)", make_conjugation(cyclic_group(4).table()));
    quandles.emplace_back("conj(D4)", make_conjugation(dihedral_group(4).table()));
    quandles.emplace_back("conj(Q8)", make_conjugation(quaternion_group().table()));
    for (const auto& [name, q] : quandles) {
        QuandleValidation v = validate_quandle(q.table());
        report(v.ok(), name + " satisfies the quandle axioms", v.summary());
    }
    for (int n = 1; n <= 9; ++n) {
        long long want = (n >= 3) ? 2 : 1;
        check_eq(static_cast<long long>(quandle_type(make_dihedral(n))), want,
                 "Type(R_" + std::to_string(n) + ")");
    }

    // Rewrite safety: simplify and propagate never change coloring counts.
    std::vector<std::pair<std::string, AugmentedPresentation>> presentations;
    for (int d : {1, 2, 3, 4})
        presentations.emplace_back("curve d=" + std::to_string(d),
                                   extract_presentation(family_algebraic_curve(d)));
    presentations.emplace_back("projective plane",
                               extract_presentation(family_unknotted_projective_plane()));
    presentations.emplace_back("unknotted torus",
                               extract_presentation(family_unknotted_torus()));
    presentations.emplace_back("t(2,3)", torus(2, 3));
    presentations.emplace_back("t(2,5)", torus(2, 5));
    presentations.emplace_back("2-twist-spin of t(2,3)", twist_spin(torus(2, 3), 2));
    presentations.emplace_back("3-twist-spin of t(2,5)", twist_spin(torus(2, 5), 3));
    presentations.emplace_back("t(2,3) # t(2,3)",
                               connected_sum(torus(2, 3), "a1", torus(2, 3), "a1"));
    {
        // Operator generators from a dotted component passing under an arc.
        BandedUnlinkDiagram d;
        d.arcs.push_back({"y", ArcKind::Unlink});
        d.arcs.push_back({"a1", ArcKind::Dotted});
        d.arcs.push_back({"a2", ArcKind::Dotted});
        d.unlink_components.push_back({"u", {"y"}});
        d.dotted_components.push_back({"dc", {"a1", "a2"}});
        d.crossings.push_back({"c1", "a1", "a2", {OverType::Arc, "y"}, 1});
        d.crossings.push_back({"c2", "a2", "a1", {OverType::Arc, "y"}, -1});
        presentations.emplace_back("dotted underpasses", extract_presentation(d));
    }
    for (const auto& [name, p] : presentations) {
        bool ok = true;
        std::string detail;
        for (int n : {3, 5, 9}) {
            FiniteQuandle q = make_dihedral(n);
            long long base = count_colorings(p, q);
            long long s = count_colorings(simplify(p), q);
            long long pr = count_colorings(propagate_order_relations(p), q);
            if (s != base || pr != base) {
                ok = false;
                detail = "R_" + std::to_string(n) + ": base " + std::to_string(base) +
                         ", simplify " + std::to_string(s) + ", propagate " +
                         std::to_string(pr);
                break;
            }
        }
        report(ok, "rewrites preserve counts on " + name, detail);
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<void (*)()> criteria = {criterion1, criterion2, criterion3, criterion4,
                                        criterion5, criterion6, criterion7, criterion8,
                                        criterion9, criterion10, criterion11};
    try {
        if (argc > 1) {
            int n = std::atoi(argv[1]);
            if (n < 1 || n > static_cast<int>(criteria.size())) {
                std::cerr << "usage: acceptance [1.." << criteria.size() << "]\n";
                return 2;
            }
            criteria[static_cast<std::size_t>(n - 1)]();
        } else {
            for (std::size_t i = 0; i < criteria.size(); ++i) {
                std::cout << "--- criterion " << (i + 1) << " ---\n";
                criteria[i]();
            }
        }
    } catch (const std::exception& e) {
        std::cout << "FAIL: unexpected exception [" << e.what() << "]\n";
        ++g_failures;
    }
    if (g_failures) {
        std::cout << g_failures << " sub-check(s) failed\n";
        return 1;
    }
    std::cout << "all sub-checks passed\n";
    return 0;
}
