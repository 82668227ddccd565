#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "budq/diagram.hpp"

namespace budq {

enum class GenKind { Primary, Operator };

struct GeneratorId {
    std::string name;
    GenKind kind = GenKind::Primary;

    friend bool operator==(const GeneratorId& a, const GeneratorId& b) {
        return a.name == b.name && a.kind == b.kind;
    }
};

struct Letter {
    std::string gen;
    int exp = 1; // +1 or -1

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.gen == b.gen && a.exp == b.exp;
    }
};

using Word = std::vector<Letter>;

// lhs = base^word
struct PrimaryRelation {
    std::string lhs;
    std::string base;
    Word word;

    friend bool operator==(const PrimaryRelation& a, const PrimaryRelation& b) {
        return a.lhs == b.lhs && a.base == b.base && a.word == b.word;
    }
};

// word ≡ 1 in the operator group.
struct OperatorRelation {
    Word word;

    friend bool operator==(const OperatorRelation& a, const OperatorRelation& b) {
        return a.word == b.word;
    }
};

struct AugmentedPresentation {
    std::vector<GeneratorId> generators;
    std::vector<PrimaryRelation> primary_relations;
    std::vector<OperatorRelation> operator_relations;
    std::vector<std::string> provenance; // constructor log, not serialized

    const GeneratorId* find_generator(const std::string& name) const;
    bool is_primary_presentation() const; // no operator generators
};

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
};

// Throws InputError on duplicate names, dangling references, bad exponents,
// or non-primary lhs/base in a primary relation.
void validate_presentation(const AugmentedPresentation& p);

// Wirtinger-type extraction: one primary generator per unlink arc, one
// operator generator per dotted arc; relations from crossings, bands, and
// framed components.
AugmentedPresentation extract_presentation(const BandedUnlinkDiagram& d);

// lhs = base^w  ↦  relator lhs⁻¹·w⁻¹·base·w; operator words pass through.
GroupPresentation group_presentation(const AugmentedPresentation& p);

// Disjoint union with g2 identified to g1; p2's other generators renamed
// deterministically (suffix ' until fresh) on collision.
AugmentedPresentation connected_sum(const AugmentedPresentation& p1, const std::string& g1,
                                    const AugmentedPresentation& p2, const std::string& g2);

// Adds gᵢⁿ ≡ 1 for every primary generator; n = 0 adds nothing.
// Requires a primary presentation (no operator generators).
AugmentedPresentation twist_spin(const AugmentedPresentation& p, int n);

// Adds the single operator relation g^d ≡ 1.
AugmentedPresentation attach_order_relation(const AugmentedPresentation& p,
                                            const std::string& g, int d);

// Closes the set of order relations g^d ≡ 1 under primary relations linking
// generators (either direction), to a fixed point.
AugmentedPresentation propagate_order_relations(const AugmentedPresentation& p);

// Safe rewrites only, to a fixed point: free reduction, duplicate removal,
// elimination of identifications g = h^∅, removal of g^{mn} ≡ 1 in the
// presence of g^n ≡ 1, and removal of vacuous relations.
AugmentedPresentation simplify(const AugmentedPresentation& p);

nlohmann::json presentation_to_json(const AugmentedPresentation& p);
AugmentedPresentation presentation_from_json(const nlohmann::json& j);
AugmentedPresentation parse_presentation(const std::string& bytes);
std::string serialize_presentation(const AugmentedPresentation& p);

nlohmann::json group_presentation_to_json(const GroupPresentation& g);
GroupPresentation group_presentation_from_json(const nlohmann::json& j);

// FNV-1a 64-bit of the canonical serialization, as 16 lowercase hex digits.
std::string presentation_digest(const AugmentedPresentation& p);

} // namespace budq
