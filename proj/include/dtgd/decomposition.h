#pragma once

#include "dtgd/analysis.h"
#include "dtgd/model.h"
#include "dtgd/recognizers.h"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace dtgd {

/// Outcome of the head-ground test. When it fails, violatedProperty names the
/// first broken property (1: not datalog, 2: non-harmless head variable,
/// 3: head predicate reused in a subset body, 4: head predicate reused in a
/// head outside the subset).
struct HeadGroundCheck {
    bool headGround = false;
    int violatedProperty = 0;
    std::string witness;
};

/// Checks whether the rules named by subsetIds form a head-ground set inside
/// the full ontology. Throws NotASubsetError for unknown ids.
HeadGroundCheck isHeadGround(const std::set<std::string>& subsetIds, const Ontology& ontology);

std::string auxPredicateName(const std::string& ruleId);

/// The safe-atoms rule: safe body part implies a fresh auxiliary atom over
/// the bridge variables. A bridge variable occurring n > 1 times in the
/// original head fills n slots. Absent when the rule has no safe atoms.
std::optional<Tgd> hgRule(std::size_t rule, const Analysis& analysis);

/// The companion rule: the auxiliary atom plus the problematic body part
/// imply the original head. Bridge variables with several head occurrences
/// are split into fresh _1.._n names consistently on both sides. A rule
/// without safe atoms passes through unchanged.
Tgd mainRule(std::size_t rule, const Analysis& analysis);

Ontology hgRules(const Ontology& ontology);
Ontology mainRules(const Ontology& ontology);

/// A head-ground component plus a class-C component, jointly equivalent to
/// the source ontology over its schema.
struct DyadicPair {
    Ontology headGround;
    Ontology component;
    std::map<std::string, Predicate> auxRegistry; // rule id -> auxiliary predicate
};

/// Both ontologies of the pair, rule ids prefixed "hg." / "c.", renamed apart.
Ontology combined(const DyadicPair& pair);

/// Validates the pair against its defining properties for the given class.
Verdict isDyadicPair(const DyadicPair& pair, const ClassName& className);

/// Builds the canonical pair: (∅, Σ) when the ontology is already in the
/// class, otherwise the hg/main rewriting. Throws NotInDyadicClassError when
/// the ontology is outside DyadicOf(class).
DyadicPair decompose(const Ontology& ontology, const ClassName& className);

} // namespace dtgd
