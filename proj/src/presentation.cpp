#include "budq/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "budq/errors.hpp"

namespace budq {

const GeneratorId* AugmentedPresentation::find_generator(const std::string& name) const {
    for (const auto& g : generators)
        if (g.name == name) return &g;
    return nullptr;
}

bool AugmentedPresentation::is_primary_presentation() const {
    return std::none_of(generators.begin(), generators.end(),
                        [](const GeneratorId& g) { return g.kind == GenKind::Operator; });
}

void validate_presentation(const AugmentedPresentation& p) {
    std::set<std::string> names;
    for (const auto& g : p.generators)
        if (!names.insert(g.name).second)
            throw InputError("presentation: duplicate generator '" + g.name + "'");
    auto check_word = [&p](const Word& w, const std::string& where) {
        for (const auto& l : w) {
            if (!p.find_generator(l.gen))
                throw InputError("presentation: " + where + " references unknown generator '" + l.gen + "'");
            if (l.exp != 1 && l.exp != -1)
                throw InputError("presentation: " + where + " has exponent " + std::to_string(l.exp) +
                                 ", expected +1 or -1");
        }
    };
    for (const auto& r : p.primary_relations) {
        for (const auto* n : {&r.lhs, &r.base}) {
            const GeneratorId* g = p.find_generator(*n);
            if (!g) throw InputError("presentation: primary relation references unknown generator '" + *n + "'");
            if (g->kind != GenKind::Primary)
                throw InputError("presentation: primary relation endpoint '" + *n + "' is not primary");
        }
        check_word(r.word, "primary relation");
    }
    for (const auto& r : p.operator_relations) check_word(r.word, "operator relation");
}

// ---------------------------------------------------------------------------
// Extraction

AugmentedPresentation extract_presentation(const BandedUnlinkDiagram& d) {
    DiagramReport rep = validate_diagram(d);
    if (!rep.ok()) throw InputError("extract_presentation: invalid diagram:\n" + rep.summary());

    AugmentedPresentation p;
    std::map<std::string, ArcKind> kind;
    for (const auto& a : d.arcs) {
        kind[a.id] = a.kind;
        p.generators.push_back({a.id, a.kind == ArcKind::Unlink ? GenKind::Primary : GenKind::Operator});
    }

    for (const auto& x : d.crossings) {
        bool dotted_under = kind.at(x.under_in) == ArcKind::Dotted;
        bool over_is_arc = x.over.type == OverType::Arc;
        if (!dotted_under) {
            PrimaryRelation r;
            r.lhs = x.under_out;
            r.base = x.under_in;
            if (over_is_arc) r.word.push_back({x.over.id, x.sign});
            p.primary_relations.push_back(std::move(r));
        } else {
            OperatorRelation r;
            r.word.push_back({x.under_out, -1});
            if (over_is_arc) r.word.push_back({x.over.id, -x.sign});
            r.word.push_back({x.under_in, 1});
            if (over_is_arc) r.word.push_back({x.over.id, x.sign});
            p.operator_relations.push_back(std::move(r));
        }
    }
    for (const auto& b : d.bands) {
        PrimaryRelation r;
        r.lhs = b.attach_to;
        r.base = b.attach_from;
        for (const auto& u : b.underpasses) r.word.push_back({u.over, u.sign});
        p.primary_relations.push_back(std::move(r));
    }
    for (const auto& f : d.framed_components) {
        OperatorRelation r;
        for (const auto& u : f.underpasses) r.word.push_back({u.over, u.sign});
        p.operator_relations.push_back(std::move(r));
    }
    p.provenance.push_back("extracted from diagram '" + d.name + "'");
    return p;
}

GroupPresentation group_presentation(const AugmentedPresentation& p) {
    validate_presentation(p);
    GroupPresentation g;
    for (const auto& gen : p.generators) g.generators.push_back(gen.name);
    for (const auto& r : p.primary_relations) {
        Word rel;
        rel.push_back({r.lhs, -1});
        for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) rel.push_back({it->gen, -it->exp});
        rel.push_back({r.base, 1});
        for (const auto& l : r.word) rel.push_back(l);
        g.relators.push_back(std::move(rel));
    }
    for (const auto& r : p.operator_relations) g.relators.push_back(r.word);
    return g;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

void rename_everywhere(AugmentedPresentation& p, const std::string& from, const std::string& to) {
    for (auto& g : p.generators)
        if (g.name == from) g.name = to;
    for (auto& r : p.primary_relations) {
        if (r.lhs == from) r.lhs = to;
        if (r.base == from) r.base = to;
        for (auto& l : r.word)
            if (l.gen == from) l.gen = to;
    }
    for (auto& r : p.operator_relations)
        for (auto& l : r.word)
            if (l.gen == from) l.gen = to;
}

const GeneratorId& require_primary(const AugmentedPresentation& p, const std::string& g,
                                   const char* op) {
    const GeneratorId* gen = p.find_generator(g);
    if (!gen) throw InputError(std::string(op) + ": unknown generator '" + g + "'");
    if (gen->kind != GenKind::Primary)
        throw InputError(std::string(op) + ": generator '" + g + "' is not primary");
    return *gen;
}

} // namespace

AugmentedPresentation connected_sum(const AugmentedPresentation& p1, const std::string& g1,
                                    const AugmentedPresentation& p2, const std::string& g2) {
    validate_presentation(p1);
    validate_presentation(p2);
    require_primary(p1, g1, "connected_sum");
    require_primary(p2, g2, "connected_sum");

    std::set<std::string> p1_names, taken;
    for (const auto& g : p1.generators) {
        p1_names.insert(g.name);
        taken.insert(g.name);
    }
    for (const auto& g : p2.generators) taken.insert(g.name);

    AugmentedPresentation q2 = p2;
    for (const auto& g : p2.generators) {
        if (g.name == g2 || !p1_names.count(g.name)) continue;
        std::string nm = g.name;
        while (taken.count(nm)) nm += "'";
        rename_everywhere(q2, g.name, nm);
        taken.insert(nm);
    }
    rename_everywhere(q2, g2, g1); // identify the summing generators

    AugmentedPresentation out = p1;
    for (const auto& g : q2.generators)
        if (g.name != g1) out.generators.push_back(g);
    out.primary_relations.insert(out.primary_relations.end(), q2.primary_relations.begin(),
                                 q2.primary_relations.end());
    out.operator_relations.insert(out.operator_relations.end(), q2.operator_relations.begin(),
                                  q2.operator_relations.end());
    out.provenance.push_back("connected_sum(" + g1 + ", " + g2 + ")");
    return out;
}

AugmentedPresentation twist_spin(const AugmentedPresentation& p, int n) {
    validate_presentation(p);
    if (n < 0) throw InputError("twist_spin: n must be >= 0");
    if (!p.is_primary_presentation())
        throw InputError("twist_spin: presentation has operator generators (unsupported)");
    AugmentedPresentation out = p;
    if (n > 0)
        for (const auto& g : p.generators) {
            OperatorRelation r;
            for (int i = 0; i < n; ++i) r.word.push_back({g.name, 1});
            out.operator_relations.push_back(std::move(r));
        }
    out.provenance.push_back("twist_spin(" + std::to_string(n) + ")");
    return out;
}

AugmentedPresentation attach_order_relation(const AugmentedPresentation& p,
                                            const std::string& g, int d) {
    validate_presentation(p);
    require_primary(p, g, "attach_order_relation");
    if (d < 1) throw InputError("attach_order_relation: d must be >= 1");
    AugmentedPresentation out = p;
    OperatorRelation r;
    for (int i = 0; i < d; ++i) r.word.push_back({g, 1});
    out.operator_relations.push_back(std::move(r));
    out.provenance.push_back("attach_order_relation(" + g + ", " + std::to_string(d) + ")");
    return out;
}

namespace {

// A pure power g^d: nonempty, every letter is {g, +1}.
bool pure_power(const Word& w, std::string* gen, int* d) {
    if (w.empty()) return false;
    for (const auto& l : w)
        if (l.exp != 1 || l.gen != w.front().gen) return false;
    *gen = w.front().gen;
    *d = static_cast<int>(w.size());
    return true;
}

} // namespace

AugmentedPresentation propagate_order_relations(const AugmentedPresentation& p) {
    validate_presentation(p);
    AugmentedPresentation out = p;
    std::set<std::pair<std::string, int>> have;
    std::string g;
    int d;
    for (const auto& r : out.operator_relations)
        if (pure_power(r.word, &g, &d)) have.insert({g, d});

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : out.primary_relations) {
            for (auto [a, b] : {std::pair{r.lhs, r.base}, std::pair{r.base, r.lhs}}) {
                std::vector<std::pair<std::string, int>> add;
                for (const auto& [gen, ord] : have)
                    if (gen == a && !have.count({b, ord})) add.push_back({b, ord});
                for (const auto& [gen, ord] : add) {
                    (void)gen;
                    have.insert({b, ord});
                    OperatorRelation nr;
                    for (int i = 0; i < ord; ++i) nr.word.push_back({b, 1});
                    out.operator_relations.push_back(std::move(nr));
                    changed = true;
                }
            }
        }
    }
    out.provenance.push_back("propagate_order_relations");
    return out;
}

namespace {

void free_reduce(Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    w = std::move(out);
}

} // namespace

AugmentedPresentation simplify(const AugmentedPresentation& p) {
    validate_presentation(p);
    AugmentedPresentation out = p;
    bool changed = true;
    while (changed) {
        changed = false;

        for (auto& r : out.primary_relations) {
            Word w = r.word;
            free_reduce(w);
            if (w != r.word) { r.word = std::move(w); changed = true; }
        }
        for (auto& r : out.operator_relations) {
            Word w = r.word;
            free_reduce(w);
            if (w != r.word) { r.word = std::move(w); changed = true; }
        }

        // Vacuous relations: g = g^∅ and ∅ ≡ 1.
        {
            auto& prs = out.primary_relations;
            std::size_t n = prs.size();
            prs.erase(std::remove_if(prs.begin(), prs.end(),
                                     [](const PrimaryRelation& r) {
                                         return r.word.empty() && r.lhs == r.base;
                                     }),
                      prs.end());
            auto& ors = out.operator_relations;
            std::size_t m = ors.size();
            ors.erase(std::remove_if(ors.begin(), ors.end(),
                                     [](const OperatorRelation& r) { return r.word.empty(); }),
                      ors.end());
            if (prs.size() != n || ors.size() != m) changed = true;
        }

        // Duplicates, preserving first occurrences.
        {
            auto dedupe = [&changed](auto& rels) {
                auto copy = rels;
                rels.clear();
                for (auto& r : copy)
                    if (std::find(rels.begin(), rels.end(), r) == rels.end())
                        rels.push_back(std::move(r));
                if (rels.size() != copy.size()) changed = true;
            };
            dedupe(out.primary_relations);
            dedupe(out.operator_relations);
        }

        // Identification elimination: g = h^∅ removes g, substituting h.
        for (std::size_t i = 0; i < out.primary_relations.size(); ++i) {
            const auto& r = out.primary_relations[i];
            if (!r.word.empty() || r.lhs == r.base) continue;
            std::string from = r.lhs, to = r.base;
            out.primary_relations.erase(out.primary_relations.begin() +
                                        static_cast<std::ptrdiff_t>(i));
            out.generators.erase(std::find_if(out.generators.begin(), out.generators.end(),
                                              [&from](const GeneratorId& g) { return g.name == from; }));
            rename_everywhere(out, from, to);
            changed = true;
            break;
        }

        // g^{mn} ≡ 1 is implied by g^n ≡ 1.
        {
            std::map<std::string, std::set<int>> powers;
            std::string g;
            int d;
            for (const auto& r : out.operator_relations)
                if (pure_power(r.word, &g, &d)) powers[g].insert(d);
            auto& ors = out.operator_relations;
            std::size_t m = ors.size();
            ors.erase(std::remove_if(ors.begin(), ors.end(),
                                     [&](const OperatorRelation& r) {
                                         std::string gg;
                                         int dd;
                                         if (!pure_power(r.word, &gg, &dd)) return false;
                                         for (int e : powers[gg])
                                             if (e < dd && dd % e == 0) return true;
                                         return false;
                                     }),
                      ors.end());
            if (ors.size() != m) changed = true;
        }
    }
    out.provenance.push_back("simplify");
    return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json word_to_json(const Word& w) {
    json a = json::array();
    for (const auto& l : w) a.push_back({{"gen", l.gen}, {"exp", l.exp}});
    return a;
}

Word word_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw InputError("presentation JSON: " + path + " must be an array");
    Word w;
    int i = 0;
    for (const auto& l : j) {
        std::string p = path + "[" + std::to_string(i++) + "]";
        if (!l.is_object() || !l.contains("gen") || !l.contains("exp"))
            throw InputError("presentation JSON: " + p + " must have \"gen\" and \"exp\"");
        if (!l.at("gen").is_string() || !l.at("exp").is_number_integer())
            throw InputError("presentation JSON: " + p + " has wrong field types");
        w.push_back({l.at("gen").get<std::string>(), l.at("exp").get<int>()});
    }
    return w;
}

} // namespace

nlohmann::json presentation_to_json(const AugmentedPresentation& p) {
    json j;
    json gens = json::array();
    for (const auto& g : p.generators)
        gens.push_back({{"name", g.name}, {"kind", g.kind == GenKind::Primary ? "primary" : "operator"}});
    j["generators"] = gens;
    json prs = json::array();
    for (const auto& r : p.primary_relations)
        prs.push_back({{"lhs", r.lhs}, {"base", r.base}, {"word", word_to_json(r.word)}});
    j["primary_relations"] = prs;
    json ors = json::array();
    for (const auto& r : p.operator_relations) ors.push_back({{"word", word_to_json(r.word)}});
    j["operator_relations"] = ors;
    return j;
}

AugmentedPresentation presentation_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("presentation JSON: top level must be an object");
    AugmentedPresentation p;
    auto list = [&j](const char* key) -> json {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return json::array();
        if (!it->is_array()) throw InputError(std::string("presentation JSON: ") + key + " must be an array");
        return *it;
    };
    int i = 0;
    for (const auto& g : list("generators")) {
        std::string path = "generators[" + std::to_string(i++) + "]";
        if (!g.is_object() || !g.contains("name") || !g.contains("kind"))
            throw InputError("presentation JSON: " + path + " must have \"name\" and \"kind\"");
        std::string kind = g.at("kind").get<std::string>();
        if (kind != "primary" && kind != "operator")
            throw InputError("presentation JSON: " + path + ".kind must be primary|operator");
        p.generators.push_back({g.at("name").get<std::string>(),
                                kind == "primary" ? GenKind::Primary : GenKind::Operator});
    }
    i = 0;
    for (const auto& r : list("primary_relations")) {
        std::string path = "primary_relations[" + std::to_string(i++) + "]";
        if (!r.is_object() || !r.contains("lhs") || !r.contains("base") || !r.contains("word"))
            throw InputError("presentation JSON: " + path + " must have \"lhs\", \"base\", \"word\"");
        p.primary_relations.push_back({r.at("lhs").get<std::string>(), r.at("base").get<std::string>(),
                                       word_from_json(r.at("word"), path + ".word")});
    }
    i = 0;
    for (const auto& r : list("operator_relations")) {
        std::string path = "operator_relations[" + std::to_string(i++) + "]";
        if (!r.is_object() || !r.contains("word"))
            throw InputError("presentation JSON: " + path + " must have \"word\"");
        p.operator_relations.push_back({word_from_json(r.at("word"), path + ".word")});
    }
    validate_presentation(p);
    return p;
}

AugmentedPresentation parse_presentation(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw InputError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return presentation_from_json(j);
}

std::string serialize_presentation(const AugmentedPresentation& p) {
    return presentation_to_json(p).dump(2) + "\n";
}

nlohmann::json group_presentation_to_json(const GroupPresentation& g) {
    json j;
    j["generators"] = g.generators;
    json rels = json::array();
    for (const auto& r : g.relators) rels.push_back(word_to_json(r));
    j["relators"] = rels;
    return j;
}

GroupPresentation group_presentation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
        throw InputError("group presentation JSON must have \"generators\" and \"relators\"");
    GroupPresentation g;
    g.generators = j.at("generators").get<std::vector<std::string>>();
    int i = 0;
    for (const auto& r : j.at("relators"))
        g.relators.push_back(word_from_json(r, "relators[" + std::to_string(i++) + "]"));
    std::set<std::string> names(g.generators.begin(), g.generators.end());
    if (names.size() != g.generators.size())
        throw InputError("group presentation JSON: duplicate generator names");
    for (const auto& r : g.relators)
        for (const auto& l : r)
            if (!names.count(l.gen))
                throw InputError("group presentation JSON: relator references unknown generator '" + l.gen + "'");
    return g;
}

std::string presentation_digest(const AugmentedPresentation& p) {
    std::string bytes = serialize_presentation(p);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return os.str();
}

} // namespace budq
