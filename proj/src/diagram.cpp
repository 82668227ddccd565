#include "budq/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "budq/errors.hpp"

namespace budq {

bool is_classical(const BandedUnlinkDiagram& d) {
    return d.dotted_components.empty() && d.bands.empty() && d.framed_components.empty();
}

std::string DiagramReport::summary() const {
    if (failures.empty()) return "PASS";
    std::ostringstream os;
    for (const auto& f : failures) os << f << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Validation

DiagramReport validate_diagram(const BandedUnlinkDiagram& d) {
    DiagramReport r;
    auto fail = [&r](const std::string& msg) { r.failures.push_back(msg); };

    std::map<std::string, ArcKind> arc_kind;
    for (const auto& a : d.arcs) {
        if (a.id.empty()) fail("arc with empty id");
        if (!arc_kind.emplace(a.id, a.kind).second) fail("duplicate arc id '" + a.id + "'");
    }

    // Each arc in exactly one component cycle, kind matching the list.
    std::map<std::string, int> arc_uses;
    auto scan_components = [&](const std::vector<Component>& comps, ArcKind want,
                               const char* label) {
        for (const auto& c : comps) {
            if (c.arcs.empty()) fail(std::string(label) + " component '" + c.id + "' has empty cycle");
            std::set<std::string> in_cycle;
            for (const auto& aid : c.arcs) {
                auto it = arc_kind.find(aid);
                if (it == arc_kind.end()) {
                    fail("component '" + c.id + "' references missing arc '" + aid + "'");
                    continue;
                }
                if (it->second != want)
                    fail("kind mismatch: arc '" + aid + "' in " + label + " component '" + c.id + "'");
                if (!in_cycle.insert(aid).second)
                    fail("duplicate arc '" + aid + "' in component '" + c.id + "'");
                arc_uses[aid]++;
            }
        }
    };
    scan_components(d.unlink_components, ArcKind::Unlink, "unlink");
    scan_components(d.dotted_components, ArcKind::Dotted, "dotted");
    for (const auto& [aid, kind] : arc_kind) {
        (void)kind;
        int n = arc_uses.count(aid) ? arc_uses[aid] : 0;
        if (n == 0) fail("arc '" + aid + "' belongs to no component");
        if (n > 1) fail("arc '" + aid + "' appears in multiple components");
    }

    std::set<std::string> band_ids, framed_ids;
    for (const auto& b : d.bands)
        if (!band_ids.insert(b.id).second) fail("duplicate band id '" + b.id + "'");
    for (const auto& f : d.framed_components)
        if (!framed_ids.insert(f.id).second) fail("duplicate framed component id '" + f.id + "'");

    // Crossing under pairs must match component cycles one-to-one.
    std::map<std::pair<std::string, std::string>, int> pair_count;
    for (const auto& x : d.crossings) {
        auto in = arc_kind.find(x.under_in);
        auto out = arc_kind.find(x.under_out);
        if (in == arc_kind.end()) fail("crossing '" + x.id + "': missing under_in arc '" + x.under_in + "'");
        if (out == arc_kind.end()) fail("crossing '" + x.id + "': missing under_out arc '" + x.under_out + "'");
        if (in != arc_kind.end() && out != arc_kind.end() && in->second != out->second)
            fail("crossing '" + x.id + "': under arcs of different kinds");
        if (x.sign != 1 && x.sign != -1) fail("crossing '" + x.id + "': sign must be +1 or -1");
        switch (x.over.type) {
            case OverType::Arc:
                if (!arc_kind.count(x.over.id))
                    fail("crossing '" + x.id + "': missing over arc '" + x.over.id + "'");
                break;
            case OverType::Band:
                if (!band_ids.count(x.over.id))
                    fail("crossing '" + x.id + "': missing over band '" + x.over.id + "'");
                break;
            case OverType::Framed:
                if (!framed_ids.count(x.over.id))
                    fail("crossing '" + x.id + "': missing over framed component '" + x.over.id + "'");
                break;
        }
        pair_count[{x.under_in, x.under_out}]++;
    }

    auto check_cycles = [&](const std::vector<Component>& comps) {
        for (const auto& c : comps) {
            const auto& as = c.arcs;
            if (as.empty()) continue;
            if (as.size() == 1) {
                // Closed loop (no undercrossings) or a single self-undercrossing.
                auto it = pair_count.find({as[0], as[0]});
                if (it != pair_count.end() && it->second > 1)
                    fail("arc '" + as[0] + "': multiple crossings for the same under pair");
                continue;
            }
            for (std::size_t i = 0; i < as.size(); ++i) {
                const auto& a = as[i];
                const auto& b = as[(i + 1) % as.size()];
                auto it = pair_count.find({a, b});
                int n = it == pair_count.end() ? 0 : it->second;
                if (n != 1)
                    fail("component '" + c.id + "': consecutive arcs ('" + a + "','" + b +
                         "') matched by " + std::to_string(n) + " crossings, expected 1");
            }
        }
    };
    check_cycles(d.unlink_components);
    check_cycles(d.dotted_components);

    // Every crossing pair must be consumed by some cycle adjacency.
    {
        std::set<std::pair<std::string, std::string>> adjacent;
        auto collect = [&adjacent](const std::vector<Component>& comps) {
            for (const auto& c : comps)
                for (std::size_t i = 0; i < c.arcs.size(); ++i)
                    adjacent.insert({c.arcs[i], c.arcs[(i + 1) % c.arcs.size()]});
        };
        collect(d.unlink_components);
        collect(d.dotted_components);
        for (const auto& [pr, n] : pair_count) {
            (void)n;
            if (!adjacent.count(pr))
                fail("crossing under pair ('" + pr.first + "','" + pr.second +
                     "') is not consecutive in any component cycle");
        }
    }

    for (const auto& b : d.bands) {
        for (const auto* aid : {&b.attach_from, &b.attach_to}) {
            auto it = arc_kind.find(*aid);
            if (it == arc_kind.end())
                fail("band '" + b.id + "': missing attach arc '" + *aid + "'");
            else if (it->second != ArcKind::Unlink)
                fail("band '" + b.id + "': attached to non-unlink arc '" + *aid + "'");
        }
        for (const auto& u : b.underpasses) {
            if (!arc_kind.count(u.over))
                fail("band '" + b.id + "': underpass references missing arc '" + u.over + "'");
            if (u.sign != 1 && u.sign != -1) fail("band '" + b.id + "': underpass sign must be +1 or -1");
        }
    }
    for (const auto& f : d.framed_components)
        for (const auto& u : f.underpasses) {
            if (!arc_kind.count(u.over))
                fail("framed component '" + f.id + "': underpass references missing arc '" + u.over + "'");
            if (u.sign != 1 && u.sign != -1)
                fail("framed component '" + f.id + "': underpass sign must be +1 or -1");
        }

    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json underpasses_to_json(const std::vector<Underpass>& ups) {
    json a = json::array();
    for (const auto& u : ups) a.push_back({{"over", u.over}, {"sign", u.sign}});
    return a;
}

json components_to_json(const std::vector<Component>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"id", c.id}, {"arcs", c.arcs}});
    return a;
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw InputError("diagram JSON: expected object at " + path);
    auto it = j.find(key);
    if (it == j.end()) throw InputError("diagram JSON: missing field " + path + "." + key);
    return *it;
}

std::string need_string(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_string()) throw InputError("diagram JSON: " + path + "." + key + " must be a string");
    return v.get<std::string>();
}

int need_int(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer()) throw InputError("diagram JSON: " + path + "." + key + " must be an integer");
    return v.get<int>();
}

json opt_list(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return json::array();
    if (!it->is_array()) throw InputError(std::string("diagram JSON: ") + key + " must be an array");
    return *it;
}

std::vector<Underpass> parse_underpasses(const json& arr, const std::string& path) {
    std::vector<Underpass> out;
    int i = 0;
    for (const auto& u : arr) {
        std::string p = path + ".underpasses[" + std::to_string(i++) + "]";
        out.push_back({need_string(u, "over", p), need_int(u, "sign", p)});
    }
    return out;
}

std::vector<Component> parse_components(const json& arr, const std::string& path) {
    std::vector<Component> out;
    int i = 0;
    for (const auto& c : arr) {
        std::string p = path + "[" + std::to_string(i++) + "]";
        Component comp;
        comp.id = need_string(c, "id", p);
        const json& as = need(c, "arcs", p);
        if (!as.is_array()) throw InputError("diagram JSON: " + p + ".arcs must be an array");
        for (const auto& a : as) comp.arcs.push_back(a.get<std::string>());
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace

nlohmann::json diagram_to_json(const BandedUnlinkDiagram& d) {
    json j;
    j["name"] = d.name;
    json arcs = json::array();
    for (const auto& a : d.arcs)
        arcs.push_back({{"id", a.id}, {"kind", a.kind == ArcKind::Unlink ? "unlink" : "dotted"}});
    j["arcs"] = arcs;
    j["unlink_components"] = components_to_json(d.unlink_components);
    j["dotted_components"] = components_to_json(d.dotted_components);
    json xs = json::array();
    for (const auto& x : d.crossings) {
        const char* t = x.over.type == OverType::Arc    ? "arc"
                        : x.over.type == OverType::Band ? "band"
                                                        : "framed";
        xs.push_back({{"id", x.id},
                      {"under_in", x.under_in},
                      {"under_out", x.under_out},
                      {"over", {{"type", t}, {"id", x.over.id}}},
                      {"sign", x.sign}});
    }
    j["crossings"] = xs;
    json bs = json::array();
    for (const auto& b : d.bands)
        bs.push_back({{"id", b.id},
                      {"attach_from", b.attach_from},
                      {"attach_to", b.attach_to},
                      {"underpasses", underpasses_to_json(b.underpasses)}});
    j["bands"] = bs;
    json fs = json::array();
    for (const auto& f : d.framed_components)
        fs.push_back({{"id", f.id}, {"framing", f.framing}, {"underpasses", underpasses_to_json(f.underpasses)}});
    j["framed_components"] = fs;
    j["surface_meta"] = {{"euler_characteristic", d.surface_meta.euler_characteristic},
                         {"orientable", d.surface_meta.orientable}};
    return j;
}

BandedUnlinkDiagram diagram_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("diagram JSON: top level must be an object");
    BandedUnlinkDiagram d;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw InputError("diagram JSON: name must be a string");
        d.name = j.at("name").get<std::string>();
    }
    int i = 0;
    for (const auto& a : opt_list(j, "arcs")) {
        std::string p = "arcs[" + std::to_string(i++) + "]";
        std::string kind = need_string(a, "kind", p);
        if (kind != "unlink" && kind != "dotted")
            throw InputError("diagram JSON: " + p + ".kind must be \"unlink\" or \"dotted\"");
        d.arcs.push_back({need_string(a, "id", p), kind == "unlink" ? ArcKind::Unlink : ArcKind::Dotted});
    }
    d.unlink_components = parse_components(opt_list(j, "unlink_components"), "unlink_components");
    d.dotted_components = parse_components(opt_list(j, "dotted_components"), "dotted_components");
    i = 0;
    for (const auto& x : opt_list(j, "crossings")) {
        std::string p = "crossings[" + std::to_string(i++) + "]";
        Crossing c;
        c.id = need_string(x, "id", p);
        c.under_in = need_string(x, "under_in", p);
        c.under_out = need_string(x, "under_out", p);
        const json& ov = need(x, "over", p);
        std::string t = need_string(ov, "type", p + ".over");
        if (t == "arc") c.over.type = OverType::Arc;
        else if (t == "band") c.over.type = OverType::Band;
        else if (t == "framed") c.over.type = OverType::Framed;
        else throw InputError("diagram JSON: " + p + ".over.type must be arc|band|framed");
        c.over.id = need_string(ov, "id", p + ".over");
        c.sign = need_int(x, "sign", p);
        d.crossings.push_back(std::move(c));
    }
    i = 0;
    for (const auto& b : opt_list(j, "bands")) {
        std::string p = "bands[" + std::to_string(i++) + "]";
        d.bands.push_back({need_string(b, "id", p), need_string(b, "attach_from", p),
                           need_string(b, "attach_to", p),
                           parse_underpasses(opt_list(b, "underpasses"), p)});
    }
    i = 0;
    for (const auto& f : opt_list(j, "framed_components")) {
        std::string p = "framed_components[" + std::to_string(i++) + "]";
        d.framed_components.push_back({need_string(f, "id", p), need_int(f, "framing", p),
                                       parse_underpasses(opt_list(f, "underpasses"), p)});
    }
    if (j.contains("surface_meta")) {
        const json& m = j.at("surface_meta");
        d.surface_meta.euler_characteristic = need_int(m, "euler_characteristic", "surface_meta");
        const json& o = need(m, "orientable", "surface_meta");
        if (!o.is_boolean()) throw InputError("diagram JSON: surface_meta.orientable must be a boolean");
        d.surface_meta.orientable = o.get<bool>();
    }
    return d;
}

BandedUnlinkDiagram parse_diagram(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw InputError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    BandedUnlinkDiagram d = diagram_from_json(j);
    DiagramReport r = validate_diagram(d);
    if (!r.ok()) throw InputError("diagram validation failed:\n" + r.summary());
    return d;
}

std::string serialize_diagram(const BandedUnlinkDiagram& d) {
    return diagram_to_json(d).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Families

ClassicalDiagram family_torus_link(int p, int q) {
    if (p < 2) throw InputError("family_torus_link: p must be >= 2");
    if (q < 1) throw InputError("family_torus_link: q must be >= 1");

    // Simulate the braid (σ₁σ₂…σ_{p−1})^q on integer arc labels, then close up.
    struct RawCrossing {
        int under_in, under_out, over;
    };
    std::vector<int> pos(static_cast<std::size_t>(p));
    std::iota(pos.begin(), pos.end(), 0);
    int next = p;
    std::vector<RawCrossing> raw;
    for (int rep = 0; rep < q; ++rep)
        for (int s = 0; s + 1 < p; ++s) {
            int over = pos[static_cast<std::size_t>(s)];
            int under = pos[static_cast<std::size_t>(s + 1)];
            int na = next++;
            raw.push_back({under, na, over});
            pos[static_cast<std::size_t>(s)] = na;
            pos[static_cast<std::size_t>(s + 1)] = over;
        }

    // Closure: identify the final strand at position i with initial arc i.
    std::vector<int> parent(static_cast<std::size_t>(next));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };
    for (int i = 0; i < p; ++i) unite(pos[static_cast<std::size_t>(i)], i);

    // Successor along each component: under_in -> under_out.
    std::map<int, std::pair<int, std::size_t>> succ; // class -> (next class, raw crossing index)
    for (std::size_t k = 0; k < raw.size(); ++k)
        succ[find(raw[k].under_in)] = {find(raw[k].under_out), k};

    // Walk cycles in order of smallest class representative; rename arcs on the fly.
    std::map<int, std::string> arc_name;
    ClassicalDiagram d;
    d.name = "t(" + std::to_string(p) + "," + std::to_string(q) + ")";
    int arc_counter = 0, comp_counter = 0;
    for (int start = 0; start < next; ++start) {
        if (find(start) != start || arc_name.count(start)) continue;
        Component comp;
        comp.id = "c" + std::to_string(++comp_counter);
        int cur = start;
        do {
            std::string nm = "a" + std::to_string(++arc_counter);
            arc_name[cur] = nm;
            comp.arcs.push_back(nm);
            d.arcs.push_back({nm, ArcKind::Unlink});
            auto it = succ.find(cur);
            if (it == succ.end()) break; // closed loop with no undercrossings
            cur = it->second.first;
        } while (cur != start);
        d.unlink_components.push_back(std::move(comp));
    }
    int x_counter = 0;
    for (const auto& rc : raw) {
        Crossing c;
        c.id = "x" + std::to_string(++x_counter);
        c.under_in = arc_name.at(find(rc.under_in));
        c.under_out = arc_name.at(find(rc.under_out));
        c.over = {OverType::Arc, arc_name.at(find(rc.over))};
        c.sign = 1;
        d.crossings.push_back(std::move(c));
    }
    d.surface_meta = {0, true};

    DiagramReport r = validate_diagram(d);
    if (!r.ok()) throw Error("internal: torus link construction invalid:\n" + r.summary());
    return d;
}

BandedUnlinkDiagram family_algebraic_curve(int deg) {
    if (deg < 1) throw InputError("family_algebraic_curve: d must be >= 1");
    BandedUnlinkDiagram d;
    d.name = "C_" + std::to_string(deg);
    for (int i = 1; i <= deg; ++i) {
        std::string x = "x" + std::to_string(i);
        d.arcs.push_back({x, ArcKind::Unlink});
        d.unlink_components.push_back({"u" + std::to_string(i), {x}});
    }
    // Seifert-surface bands of t_{d,d}: d bands between each consecutive pair
    // of disks, none passing under anything.
    for (int i = 1; i < deg; ++i)
        for (int k = 1; k <= deg; ++k)
            d.bands.push_back({"b" + std::to_string(i) + "_" + std::to_string(k),
                               "x" + std::to_string(i), "x" + std::to_string(i + 1), {}});
    FramedComponent h;
    h.id = "h1";
    h.framing = 1;
    for (int i = 1; i <= deg; ++i) h.underpasses.push_back({"x" + std::to_string(i), 1});
    d.framed_components.push_back(std::move(h));
    d.surface_meta = {3 * deg - deg * deg, true};
    return d;
}

BandedUnlinkDiagram family_unknotted_projective_plane() {
    BandedUnlinkDiagram d;
    d.name = "P";
    d.arcs.push_back({"x1", ArcKind::Unlink});
    d.unlink_components.push_back({"u1", {"x1"}});
    d.bands.push_back({"b1", "x1", "x1", {}});
    // The half-twisted band's exterior 2-handle runs along the strand twice,
    // contributing the involutory relation x^2 ≡ 1.
    d.framed_components.push_back({"h1", 0, {{"x1", 1}, {"x1", 1}}});
    d.surface_meta = {1, false};
    return d;
}

BandedUnlinkDiagram family_unknotted_torus() {
    BandedUnlinkDiagram d;
    d.name = "T";
    d.arcs.push_back({"x1", ArcKind::Unlink});
    d.unlink_components.push_back({"u1", {"x1"}});
    d.bands.push_back({"b1", "x1", "x1", {}});
    d.bands.push_back({"b2", "x1", "x1", {}});
    d.surface_meta = {0, true};
    return d;
}

// ---------------------------------------------------------------------------
// Reidemeister moves

namespace {

Component* component_of_arc(BandedUnlinkDiagram& d, const std::string& arc) {
    for (auto& c : d.unlink_components)
        if (std::find(c.arcs.begin(), c.arcs.end(), arc) != c.arcs.end()) return &c;
    return nullptr;
}

bool arc_exists(const BandedUnlinkDiagram& d, const std::string& arc) {
    for (const auto& a : d.arcs)
        if (a.id == arc) return true;
    return false;
}

std::string fresh_arc_id(const BandedUnlinkDiagram& d, std::string base) {
    while (arc_exists(d, base)) base += "'";
    return base;
}

std::string fresh_crossing_id(const BandedUnlinkDiagram& d, std::string base) {
    auto exists = [&d](const std::string& id) {
        for (const auto& x : d.crossings)
            if (x.id == id) return true;
        return false;
    };
    while (exists(base)) base += "'";
    return base;
}

Crossing* find_crossing(BandedUnlinkDiagram& d, const std::string& id) {
    for (auto& x : d.crossings)
        if (x.id == id) return &x;
    return nullptr;
}

void rename_arc_refs(BandedUnlinkDiagram& d, const std::string& from, const std::string& to) {
    for (auto& x : d.crossings) {
        if (x.under_in == from) x.under_in = to;
        if (x.under_out == from) x.under_out = to;
        if (x.over.type == OverType::Arc && x.over.id == from) x.over.id = to;
    }
}

void rename_over_refs(BandedUnlinkDiagram& d, const std::string& from, const std::string& to) {
    for (auto& x : d.crossings)
        if (x.over.type == OverType::Arc && x.over.id == from) x.over.id = to;
}

bool has_undercrossing(const BandedUnlinkDiagram& d, const std::string& arc) {
    for (const auto& x : d.crossings)
        if (x.under_in == arc || x.under_out == arc) return true;
    return false;
}

void erase_arc(BandedUnlinkDiagram& d, const std::string& arc) {
    d.arcs.erase(std::remove_if(d.arcs.begin(), d.arcs.end(),
                                [&arc](const Arc& a) { return a.id == arc; }),
                 d.arcs.end());
}

// Splits `arc` in its cycle into n fresh arcs (n = 2 or 3); updates the
// crossing ending at the arc to end at the first piece and the crossing
// starting at it to start at the last piece; over references move to the
// first piece (whose color equals the original arc's).
std::vector<std::string> split_arc(BandedUnlinkDiagram& d, const std::string& arc, int n) {
    Component* comp = component_of_arc(d, arc);
    std::vector<std::string> pieces;
    for (int i = 1; i <= n; ++i)
        pieces.push_back(fresh_arc_id(d, arc + "." + std::to_string(i)));
    for (const auto& p : pieces) d.arcs.push_back({p, ArcKind::Unlink});
    auto it = std::find(comp->arcs.begin(), comp->arcs.end(), arc);
    it = comp->arcs.erase(it);
    comp->arcs.insert(it, pieces.begin(), pieces.end());
    for (auto& x : d.crossings) {
        if (x.under_out == arc) x.under_out = pieces.front();
        if (x.under_in == arc) x.under_in = pieces.back();
    }
    rename_over_refs(d, arc, pieces.front());
    erase_arc(d, arc);
    return pieces;
}

void r1_insert(BandedUnlinkDiagram& d, const ReidemeisterMove& m) {
    if (!arc_exists(d, m.arc)) throw InputError("R1 insert: no arc '" + m.arc + "'");
    Component* comp = component_of_arc(d, m.arc);
    if (!comp) throw InputError("R1 insert: arc '" + m.arc + "' has no component");
    std::string cid = fresh_crossing_id(d, "r1_" + m.arc);
    if (comp->arcs.size() == 1 && !has_undercrossing(d, m.arc)) {
        // Kink on a bare loop: the circle cut once is still a single arc.
        d.crossings.push_back({cid, m.arc, m.arc, {OverType::Arc, m.arc}, m.sign});
        return;
    }
    auto pieces = split_arc(d, m.arc, 2);
    d.crossings.push_back({cid, pieces[0], pieces[1], {OverType::Arc, pieces[1]}, m.sign});
}

void r1_remove(BandedUnlinkDiagram& d, const ReidemeisterMove& m) {
    Crossing* x = find_crossing(d, m.c1);
    if (!x) throw InputError("R1 remove: no crossing '" + m.c1 + "'");
    if (x->over.type != OverType::Arc || (x->over.id != x->under_in && x->over.id != x->under_out))
        throw InputError("R1 remove: crossing '" + m.c1 + "' is not a kink");
    std::string a1 = x->under_in, a2 = x->under_out, id = x->id;
    d.crossings.erase(std::remove_if(d.crossings.begin(), d.crossings.end(),
                                     [&id](const Crossing& c) { return c.id == id; }),
                      d.crossings.end());
    if (a1 == a2) return;
    Component* comp = component_of_arc(d, a2);
    comp->arcs.erase(std::find(comp->arcs.begin(), comp->arcs.end(), a2));
    rename_arc_refs(d, a2, a1);
    erase_arc(d, a2);
}

void r2_insert(BandedUnlinkDiagram& d, const ReidemeisterMove& m) {
    if (!arc_exists(d, m.arc)) throw InputError("R2 insert: no arc '" + m.arc + "'");
    if (!arc_exists(d, m.over)) throw InputError("R2 insert: no arc '" + m.over + "'");
    if (m.arc == m.over) throw InputError("R2 insert: arc cannot pass under itself");
    Component* comp = component_of_arc(d, m.arc);
    std::string ca = fresh_crossing_id(d, "r2a_" + m.arc);
    std::string cb = fresh_crossing_id(d, "r2b_" + m.arc);
    if (comp->arcs.size() == 1 && !has_undercrossing(d, m.arc)) {
        auto pieces = split_arc(d, m.arc, 2);
        d.crossings.push_back({ca, pieces[0], pieces[1], {OverType::Arc, m.over}, m.sign});
        d.crossings.push_back({cb, pieces[1], pieces[0], {OverType::Arc, m.over}, -m.sign});
        return;
    }
    auto pieces = split_arc(d, m.arc, 3);
    d.crossings.push_back({ca, pieces[0], pieces[1], {OverType::Arc, m.over}, m.sign});
    d.crossings.push_back({cb, pieces[1], pieces[2], {OverType::Arc, m.over}, -m.sign});
}

void r2_remove(BandedUnlinkDiagram& d, const ReidemeisterMove& m) {
    Crossing* x1 = find_crossing(d, m.c1);
    Crossing* x2 = find_crossing(d, m.c2);
    if (!x1 || !x2 || x1 == x2) throw InputError("R2 remove: bad crossing pair");
    if (x1->over.type != OverType::Arc || x2->over.type != OverType::Arc ||
        x1->over.id != x2->over.id || x1->sign != -x2->sign ||
        x1->under_out != x2->under_in)
        throw InputError("R2 remove: crossings do not form a cancelling pair");
    std::string X = x1->under_in, Y = x1->under_out, Z = x2->under_out;
    if (Y == X || Y == Z) throw InputError("R2 remove: degenerate site");
    for (const auto& c : d.crossings)
        if (c.over.type == OverType::Arc && c.over.id == Y)
            throw InputError("R2 remove: middle arc '" + Y + "' is an over arc elsewhere");
    std::string id1 = x1->id, id2 = x2->id;
    d.crossings.erase(std::remove_if(d.crossings.begin(), d.crossings.end(),
                                     [&](const Crossing& c) { return c.id == id1 || c.id == id2; }),
                      d.crossings.end());
    Component* comp = component_of_arc(d, Y);
    comp->arcs.erase(std::find(comp->arcs.begin(), comp->arcs.end(), Y));
    erase_arc(d, Y);
    if (X != Z) {
        comp->arcs.erase(std::find(comp->arcs.begin(), comp->arcs.end(), Z));
        rename_arc_refs(d, Z, X);
        erase_arc(d, Z);
    }
}

// Slide the strand B across the crossing of M under T. The site is accepted
// when the composite inner maps on B agree before and after by the third
// quandle axiom, so coloring counts are preserved for every target.
void r3_slide(BandedUnlinkDiagram& d, const ReidemeisterMove& m) {
    Crossing* cmb = find_crossing(d, m.c1);
    Crossing* ctb = find_crossing(d, m.c2);
    Crossing* ctm = find_crossing(d, m.c3);
    if (!cmb || !ctb || !ctm || cmb == ctb || cmb == ctm || ctb == ctm)
        throw InputError("R3: three distinct crossings required");
    if (cmb->over.type != OverType::Arc || ctb->over.type != OverType::Arc ||
        ctm->over.type != OverType::Arc)
        throw InputError("R3: all over strands must be arcs");
    if (cmb->under_out != ctb->under_in)
        throw InputError("R3: first two crossings are not consecutive on the sliding strand");
    const std::string t = ctb->over.id;
    if (ctm->over.id != t) throw InputError("R3: top arc mismatch");
    const std::string mid = cmb->over.id;
    std::string mid2;
    if (mid == ctm->under_in) {
        if (ctm->sign != -ctb->sign) throw InputError("R3: incompatible signs at site");
        mid2 = ctm->under_out;
    } else if (mid == ctm->under_out) {
        if (ctm->sign != ctb->sign) throw InputError("R3: incompatible signs at site");
        mid2 = ctm->under_in;
    } else {
        throw InputError("R3: middle arc does not meet the top crossing");
    }
    int s_mb = cmb->sign, s_tb = ctb->sign;
    cmb->over.id = t;
    cmb->sign = s_tb;
    ctb->over.id = mid2;
    ctb->sign = s_mb;
}

} // namespace

ClassicalDiagram apply_reidemeister(const ClassicalDiagram& din, const ReidemeisterMove& m) {
    if (!is_classical(din)) throw InputError("apply_reidemeister: classical diagram required");
    ClassicalDiagram d = din;
    switch (m.kind) {
        case ReidemeisterMove::Kind::R1:
            m.dir == ReidemeisterMove::Dir::Insert ? r1_insert(d, m) : r1_remove(d, m);
            break;
        case ReidemeisterMove::Kind::R2:
            m.dir == ReidemeisterMove::Dir::Insert ? r2_insert(d, m) : r2_remove(d, m);
            break;
        case ReidemeisterMove::Kind::R3:
            r3_slide(d, m);
            break;
    }
    DiagramReport r = validate_diagram(d);
    if (!r.ok()) throw InputError("reidemeister move produced an invalid diagram:\n" + r.summary());
    return d;
}

} // namespace budq
