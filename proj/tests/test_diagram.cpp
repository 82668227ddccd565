#include "doctest.h"

#include <numeric>

#include <nlohmann/json.hpp>

#include "budq/coloring.hpp"
#include "budq/diagram.hpp"
#include "budq/errors.hpp"
#include "budq/presentation.hpp"
#include "budq/quandle.hpp"

using namespace budq;

namespace {

// One strand B sliding under a middle strand M and a top strand T: a valid
// R3 site (combinatorial only; planarity is out of scope by design).
ClassicalDiagram r3_site_diagram() {
    ClassicalDiagram d;
    d.name = "r3-site";
    for (const char* id : {"b1", "b2", "b3", "m1", "m2", "t1"})
        d.arcs.push_back({id, ArcKind::Unlink});
    d.unlink_components.push_back({"B", {"b1", "b2", "b3"}});
    d.unlink_components.push_back({"M", {"m1", "m2"}});
    d.unlink_components.push_back({"T", {"t1"}});
    d.crossings.push_back({"cMB", "b1", "b2", {OverType::Arc, "m1"}, 1});
    d.crossings.push_back({"cTB", "b2", "b3", {OverType::Arc, "t1"}, 1});
    d.crossings.push_back({"cTM", "m1", "m2", {OverType::Arc, "t1"}, -1});
    d.crossings.push_back({"cB", "b3", "b1", {OverType::Arc, "t1"}, -1});
    d.crossings.push_back({"cM", "m2", "m1", {OverType::Arc, "b1"}, 1});
    return d;
}

long long count(const ClassicalDiagram& d, int n) {
    return count_colorings(extract_presentation(d), make_dihedral(n));
}

} // namespace

TEST_CASE("torus link family shape") {
    ClassicalDiagram t23 = family_torus_link(2, 3);
    CHECK(validate_diagram(t23).ok());
    CHECK(t23.crossings.size() == 3);
    CHECK(t23.arcs.size() == 3);
    CHECK(t23.unlink_components.size() == 1);

    ClassicalDiagram hopf = family_torus_link(2, 2);
    CHECK(hopf.crossings.size() == 2);
    CHECK(hopf.unlink_components.size() == 2);

    ClassicalDiagram t35 = family_torus_link(3, 5);
    CHECK(validate_diagram(t35).ok());
    CHECK(t35.crossings.size() == 10); // q(p-1)
    CHECK(t35.unlink_components.size() == 1);

    CHECK(family_torus_link(4, 2).unlink_components.size() == 2); // gcd(4,2)
    CHECK(family_torus_link(2, 1).crossings.size() == 1);
    CHECK_THROWS_AS(family_torus_link(1, 3), InputError);
    CHECK_THROWS_AS(family_torus_link(2, 0), InputError);
}

TEST_CASE("surface families validate and carry the right Euler characteristics") {
    BandedUnlinkDiagram c3 = family_algebraic_curve(3);
    CHECK(validate_diagram(c3).ok());
    CHECK(c3.surface_meta.euler_characteristic == 0); // 3d - d^2 at d=3
    CHECK(c3.bands.size() == 6);                       // d(d-1)
    CHECK(c3.framed_components.size() == 1);
    CHECK(family_algebraic_curve(4).surface_meta.euler_characteristic == -4);

    BandedUnlinkDiagram rp2 = family_unknotted_projective_plane();
    CHECK(validate_diagram(rp2).ok());
    CHECK(rp2.surface_meta.euler_characteristic == 1);
    CHECK_FALSE(rp2.surface_meta.orientable);

    BandedUnlinkDiagram torus = family_unknotted_torus();
    CHECK(validate_diagram(torus).ok());
    CHECK(torus.surface_meta.euler_characteristic == 0);
    CHECK(is_classical(family_torus_link(2, 3)));
    CHECK_FALSE(is_classical(rp2));
}

TEST_CASE("validate_diagram catches structural failures") {
    ClassicalDiagram d = family_torus_link(2, 3);

    SUBCASE("duplicate arc in a cycle") {
        d.unlink_components[0].arcs.push_back(d.unlink_components[0].arcs[0]);
        CHECK_FALSE(validate_diagram(d).ok());
    }
    SUBCASE("arc in no component") {
        d.arcs.push_back({"stray", ArcKind::Unlink});
        CHECK_FALSE(validate_diagram(d).ok());
    }
    SUBCASE("crossing pair not consecutive") {
        std::swap(d.unlink_components[0].arcs[0], d.unlink_components[0].arcs[1]);
        CHECK_FALSE(validate_diagram(d).ok());
    }
    SUBCASE("dangling over reference") {
        d.crossings[0].over.id = "nope";
        CHECK_FALSE(validate_diagram(d).ok());
    }
    SUBCASE("bad sign") {
        d.crossings[0].sign = 2;
        CHECK_FALSE(validate_diagram(d).ok());
    }
    SUBCASE("band attached to a dotted arc") {
        BandedUnlinkDiagram b = family_unknotted_torus();
        b.arcs.push_back({"y1", ArcKind::Dotted});
        b.dotted_components.push_back({"dc1", {"y1"}});
        b.bands[0].attach_to = "y1";
        CHECK_FALSE(validate_diagram(b).ok());
    }
    SUBCASE("kind mismatch between arc and component list") {
        d.arcs[0].kind = ArcKind::Dotted;
        CHECK_FALSE(validate_diagram(d).ok());
    }
}

TEST_CASE("diagram JSON round trip and error reporting") {
    BandedUnlinkDiagram d = family_algebraic_curve(2);
    std::string s = serialize_diagram(d);
    BandedUnlinkDiagram back = parse_diagram(s);
    CHECK(serialize_diagram(back) == s);

    CHECK_THROWS_WITH_AS(parse_diagram("{\"arcs\": [{\"id\": 3}]"),
                         doctest::Contains("byte"), InputError);
    CHECK_THROWS_WITH_AS(parse_diagram("{\"arcs\": [{\"id\": \"a\"}]}"),
                         doctest::Contains("arcs[0]"), InputError);
    CHECK_THROWS_WITH_AS(parse_diagram("{\"arcs\": [{\"id\": \"a\", \"kind\": \"weird\"}]}"),
                         doctest::Contains("kind"), InputError);
    // Schema-valid but combinatorially inconsistent.
    CHECK_THROWS_WITH_AS(
        parse_diagram("{\"arcs\": [{\"id\": \"a\", \"kind\": \"unlink\"}], "
                      "\"unlink_components\": []}"),
        doctest::Contains("no component"), InputError);
}

TEST_CASE("R1 moves preserve structure and coloring counts") {
    ClassicalDiagram tre = family_torus_link(2, 3);
    ReidemeisterMove ins;
    ins.kind = ReidemeisterMove::Kind::R1;
    ins.dir = ReidemeisterMove::Dir::Insert;
    ins.arc = tre.arcs[0].id;
    ins.sign = -1;
    ClassicalDiagram kinked = apply_reidemeister(tre, ins);
    CHECK(kinked.crossings.size() == 4);
    CHECK(validate_diagram(kinked).ok());
    for (int n : {2, 3, 5, 9}) CHECK(count(kinked, n) == count(tre, n));

    // Remove it again.
    ReidemeisterMove rem;
    rem.kind = ReidemeisterMove::Kind::R1;
    rem.dir = ReidemeisterMove::Dir::Remove;
    rem.c1 = "r1_" + ins.arc;
    ClassicalDiagram back = apply_reidemeister(kinked, rem);
    CHECK(back.crossings.size() == 3);
    for (int n : {3, 5}) CHECK(count(back, n) == count(tre, n));

    // Kink on a bare unknot loop.
    ClassicalDiagram unknot;
    unknot.arcs.push_back({"u", ArcKind::Unlink});
    unknot.unlink_components.push_back({"c", {"u"}});
    ins.arc = "u";
    ClassicalDiagram k = apply_reidemeister(unknot, ins);
    CHECK(k.crossings.size() == 1);
    CHECK(count(k, 5) == 5);
    rem.c1 = "r1_u";
    CHECK(apply_reidemeister(k, rem).crossings.empty());

    // Removing a non-kink crossing is rejected.
    rem.c1 = tre.crossings[0].id;
    CHECK_THROWS_AS(apply_reidemeister(tre, rem), InputError);
}

TEST_CASE("R2 moves preserve structure and coloring counts") {
    ClassicalDiagram tre = family_torus_link(2, 3);
    ReidemeisterMove ins;
    ins.kind = ReidemeisterMove::Kind::R2;
    ins.dir = ReidemeisterMove::Dir::Insert;
    ins.arc = tre.arcs[0].id;
    ins.over = tre.arcs[1].id;
    ins.sign = 1;
    ClassicalDiagram poked = apply_reidemeister(tre, ins);
    CHECK(poked.crossings.size() == 5);
    CHECK(validate_diagram(poked).ok());
    for (int n : {3, 5, 9}) CHECK(count(poked, n) == count(tre, n));

    ReidemeisterMove rem;
    rem.kind = ReidemeisterMove::Kind::R2;
    rem.dir = ReidemeisterMove::Dir::Remove;
    rem.c1 = "r2a_" + ins.arc;
    rem.c2 = "r2b_" + ins.arc;
    ClassicalDiagram back = apply_reidemeister(poked, rem);
    CHECK(back.crossings.size() == 3);
    for (int n : {3, 5}) CHECK(count(back, n) == count(tre, n));

    CHECK_THROWS_AS([&] { // same-arc R2 is unsupported
        ReidemeisterMove m = ins;
        m.over = m.arc;
        return apply_reidemeister(tre, m);
    }(), InputError);
}

TEST_CASE("R3 slide preserves coloring counts") {
    ClassicalDiagram d = r3_site_diagram();
    REQUIRE(validate_diagram(d).ok());
    ReidemeisterMove m;
    m.kind = ReidemeisterMove::Kind::R3;
    m.c1 = "cMB";
    m.c2 = "cTB";
    m.c3 = "cTM";
    ClassicalDiagram slid = apply_reidemeister(d, m);
    CHECK(validate_diagram(slid).ok());
    CHECK(slid.crossings.size() == d.crossings.size());
    for (int n : {2, 3, 5, 7, 9}) CHECK(count(slid, n) == count(d, n));
    for (int n : {3, 5, 9}) CHECK(fox_count(slid, n) == fox_count(d, n));

    // A site with mismatched top arcs is rejected.
    ReidemeisterMove bad = m;
    bad.c3 = "cM";
    CHECK_THROWS_AS(apply_reidemeister(d, bad), InputError);
}
