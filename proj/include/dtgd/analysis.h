#pragma once

#include "dtgd/model.h"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dtgd {

/// For every position, the set of existential variables that may reach it
/// during the chase (its invaders). A position is affected when the set is
/// nonempty.
class AffectedMap {
public:
    const std::set<Term>& invaders(const Position& pos) const;
    bool affected(const Position& pos) const { return !invaders(pos).empty(); }
    std::vector<Position> affectedPositions() const;
    const std::map<Position, std::set<Term>>& all() const { return map_; }

private:
    friend class Analysis;
    std::map<Position, std::set<Term>> map_;
};

/// Classification of a body variable: harmless variables never see nulls,
/// harmful ones may, dangerous ones may and are exported to the head.
struct VariableClass {
    enum Kind { Harmless, Harmful, Dangerous };

    Kind kind = Harmless;
    std::set<Term> invaders;   // empty iff harmless

    bool harmless() const { return kind == Harmless; }
    bool dangerous() const { return kind == Dangerous; }
};

/// Body partition of one rule: the problematic atoms carry (or connect to)
/// dangerous variables; the safe atoms are the rest. They share only
/// harmless variables.
struct AtomSplit {
    std::string ruleId;
    std::vector<Atom> problematic;
    std::vector<Atom> safe;
};

/// Marked (rule id, variable) pairs for the stickiness test.
using MarkedSet = std::set<std::pair<std::string, Term>>;

struct DependencyGraphs {
    struct LabelArc {
        Position from;
        Position to;
        bool existential = false;

        bool operator==(const LabelArc& o) const {
            return from == o.from && to == o.to && existential == o.existential;
        }
        bool operator<(const LabelArc& o) const {
            if (!(from == o.from)) return from < o.from;
            if (!(to == o.to)) return to < o.to;
            return existential < o.existential;
        }
    };

    std::vector<Position> positions;                 // label-graph nodes
    std::vector<LabelArc> arcs;                      // label-graph arcs
    std::vector<Term> existentialVars;               // existential-graph nodes
    std::vector<std::pair<Term, Term>> existentialArcs;
};

/// Static analysis of a renamed-apart ontology: affected positions, variable
/// classes, the problematic/safe split, and bridge variables. All results are
/// computed eagerly and immutable afterwards.
class Analysis {
public:
    explicit Analysis(const Ontology& ontology);

    const Ontology& ontology() const { return ontology_; }
    const AffectedMap& affected() const { return affected_; }

    const VariableClass& classOf(std::size_t rule, const Term& var) const;
    const std::map<Term, VariableClass>& classes(std::size_t rule) const;
    bool harmless(std::size_t rule, const Term& var) const;

    const AtomSplit& split(std::size_t rule) const;
    /// Variables shared by the two body parts plus the harmless frontier
    /// variables of the safe part, ordered by first body occurrence.
    const std::vector<Term>& bridge(std::size_t rule) const;

private:
    void computeAffected();
    void classifyVariables();
    void splitAtoms();
    void computeBridges();

    Ontology ontology_;
    AffectedMap affected_;
    std::vector<std::map<Term, VariableClass>> classes_;
    std::vector<AtomSplit> splits_;
    std::vector<std::vector<Term>> bridges_;
};

/// Least fixpoint of the marking rules: variables dropped by a head are
/// marked, and marks flow backwards through shared positions.
MarkedSet markedVariables(const Ontology& ontology);

/// Label graph and existential graph used by the acyclicity tests.
DependencyGraphs dependencyGraphs(const Ontology& ontology);

} // namespace dtgd
