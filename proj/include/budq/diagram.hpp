#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace budq {

// Banded unlink diagram data model. "unlink" arcs carry primary generators,
// "dotted" arcs carry operator generators. Bands and framed components carry
// no arcs of their own; they record the words read along their underpasses.

enum class ArcKind { Unlink, Dotted };

struct Arc {
    std::string id;
    ArcKind kind = ArcKind::Unlink;
};

struct Component {
    std::string id;
    std::vector<std::string> arcs; // cyclic order
};

enum class OverType { Arc, Band, Framed };

struct OverRef {
    OverType type = OverType::Arc;
    std::string id;
};

struct Crossing {
    std::string id;
    std::string under_in;
    std::string under_out;
    OverRef over;
    int sign = 1; // +1: under_out = under_in^{over}; -1: under_out = under_in^{over⁻¹}
};

struct Underpass {
    std::string over; // arc id passing over
    int sign = 1;
};

struct Band {
    std::string id;
    std::string attach_from;
    std::string attach_to;
    std::vector<Underpass> underpasses; // word read along the band
};

struct FramedComponent {
    std::string id;
    int framing = 0;
    std::vector<Underpass> underpasses; // cyclic word, read once positively
};

struct SurfaceMeta {
    int euler_characteristic = 0;
    bool orientable = true;
};

struct BandedUnlinkDiagram {
    std::string name;
    std::vector<Arc> arcs;
    std::vector<Component> unlink_components;
    std::vector<Component> dotted_components;
    std::vector<Crossing> crossings;
    std::vector<Band> bands;
    std::vector<FramedComponent> framed_components;
    SurfaceMeta surface_meta;
};

// A classical link diagram is the degenerate case: no dotted components,
// bands, or framed components.
using ClassicalDiagram = BandedUnlinkDiagram;

bool is_classical(const BandedUnlinkDiagram& d);

struct DiagramReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    std::string summary() const;
};

// Combinatorial consistency only; topological disk-bounding is not checked.
DiagramReport validate_diagram(const BandedUnlinkDiagram& d);

// Throws InputError on malformed JSON (with byte offset), schema violations
// (with field path), or validation failures (with the full report).
BandedUnlinkDiagram parse_diagram(const std::string& bytes);

// Canonical JSON: sorted keys, arrays in declaration order.
std::string serialize_diagram(const BandedUnlinkDiagram& d);

nlohmann::json diagram_to_json(const BandedUnlinkDiagram& d);
BandedUnlinkDiagram diagram_from_json(const nlohmann::json& j);

// Closed-braid diagram of the closure of (σ₁σ₂…σ_{p−1})^q:
// q(p−1) positive crossings, gcd(p,q) components.
ClassicalDiagram family_torus_link(int p, int q);

// Degree-d algebraic curve: d unlink components, d(d−1) bands with empty
// words, one +1-framed component reading x₁x₂⋯x_d; χ = 3d − d².
BandedUnlinkDiagram family_algebraic_curve(int d);

// Unknotted projective plane: extraction yields [x | x² ≡ 1]; χ = 1.
BandedUnlinkDiagram family_unknotted_projective_plane();

// Unknotted torus: extraction yields [x | ∅]; χ = 0.
BandedUnlinkDiagram family_unknotted_torus();

struct ReidemeisterMove {
    enum class Kind { R1, R2, R3 };
    enum class Dir { Insert, Remove };

    Kind kind = Kind::R1;
    Dir dir = Dir::Insert; // ignored for R3 (self-inverse site swap)

    // Insert sites
    std::string arc;  // R1/R2: arc to split
    std::string over; // R2: strand the arc passes under
    int sign = 1;

    // Remove / R3 sites (crossing ids).
    // R3: c1 = crossing where the sliding strand goes under the middle arc,
    //     c2 = adjacent crossing where it goes under the top arc,
    //     c3 = the crossing of middle under top.
    std::string c1, c2, c3;
};

// Applies the move; throws InputError if the site is inapplicable.
// New arc ids derive deterministically from the split arc's id.
ClassicalDiagram apply_reidemeister(const ClassicalDiagram& d, const ReidemeisterMove& move);

} // namespace budq
