#include "dtgd/analysis.h"

#include <algorithm>
#include <stdexcept>

namespace dtgd {

namespace {

/// Positions at which a variable occurs in an atom list (with duplicates
/// collapsed).
std::vector<Position> occurrences(const std::vector<Atom>& atoms, const Term& var) {
    std::vector<Position> out;
    for (const auto& a : atoms) {
        for (std::size_t i = 0; i < a.args().size(); ++i) {
            if (a.args()[i] == var) {
                Position pos{a.predicate(), i + 1};
                if (std::find(out.begin(), out.end(), pos) == out.end()) out.push_back(pos);
            }
        }
    }
    return out;
}

std::set<Term> intersection(const std::vector<std::set<Term>>& sets) {
    if (sets.empty()) return {};
    std::set<Term> out = sets.front();
    for (std::size_t i = 1; i < sets.size() && !out.empty(); ++i) {
        std::set<Term> next;
        std::set_intersection(out.begin(), out.end(), sets[i].begin(), sets[i].end(),
                              std::inserter(next, next.begin()));
        out = std::move(next);
    }
    return out;
}

} // namespace

const std::set<Term>& AffectedMap::invaders(const Position& pos) const {
    static const std::set<Term> kEmpty;
    auto it = map_.find(pos);
    return it == map_.end() ? kEmpty : it->second;
}

std::vector<Position> AffectedMap::affectedPositions() const {
    std::vector<Position> out;
    for (const auto& [pos, invaders] : map_) {
        if (!invaders.empty()) out.push_back(pos);
    }
    return out;
}

Analysis::Analysis(const Ontology& ontology) : ontology_(ontology) {
    if (!ontology_.variableDisjoint())
        throw std::invalid_argument("analysis requires a renamed-apart ontology");
    computeAffected();
    classifyVariables();
    splitAtoms();
    computeBridges();
}

void Analysis::computeAffected() {
    for (const auto& pos : positionsOf(ontology_)) affected_.map_[pos];

    // Existential head occurrences seed the map.
    for (const auto& rule : ontology_.rules()) {
        for (const auto& z : rule.existentialVars()) {
            for (const auto& pos : occurrences(rule.head(), z)) affected_.map_[pos].insert(z);
        }
    }

    // A frontier variable sitting on invaded positions only carries the
    // invader onward to its head positions.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : ontology_.rules()) {
            for (const auto& x : rule.frontier()) {
                std::vector<std::set<Term>> sets;
                for (const auto& pos : occurrences(rule.body(), x))
                    sets.push_back(affected_.map_[pos]);
                std::set<Term> carried = intersection(sets);
                if (carried.empty()) continue;
                for (const auto& pos : occurrences(rule.head(), x)) {
                    for (const auto& z : carried) {
                        if (affected_.map_[pos].insert(z).second) changed = true;
                    }
                }
            }
        }
    }
}

void Analysis::classifyVariables() {
    classes_.resize(ontology_.size());
    for (std::size_t r = 0; r < ontology_.size(); ++r) {
        const Tgd& rule = ontology_.rule(r);
        for (const auto& x : rule.universalVars()) {
            std::vector<std::set<Term>> sets;
            for (const auto& pos : occurrences(rule.body(), x))
                sets.push_back(affected_.map_[pos]);
            std::set<Term> invaders = intersection(sets);
            VariableClass cls;
            if (invaders.empty()) {
                cls.kind = VariableClass::Harmless;
            } else {
                cls.kind = rule.isFrontier(x) ? VariableClass::Dangerous : VariableClass::Harmful;
                cls.invaders = std::move(invaders);
            }
            classes_[r].emplace(x, std::move(cls));
        }
    }
}

void Analysis::splitAtoms() {
    splits_.resize(ontology_.size());
    for (std::size_t r = 0; r < ontology_.size(); ++r) {
        const Tgd& rule = ontology_.rule(r);
        const auto& body = rule.body();
        std::size_t n = body.size();

        auto harmfulShared = [&](const Atom& a, const Atom& b) {
            for (const auto& v : a.variables()) {
                if (classes_[r].at(v).harmless()) continue;
                const auto& args = b.args();
                if (std::find(args.begin(), args.end(), v) != args.end()) return true;
            }
            return false;
        };

        std::vector<bool> problematic(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& v : body[i].variables()) {
                if (classes_[r].at(v).dangerous()) { problematic[i] = true; break; }
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (problematic[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (i != j && problematic[j] && harmfulShared(body[i], body[j])) {
                        problematic[i] = true;
                        changed = true;
                        break;
                    }
                }
            }
        }

        AtomSplit split;
        split.ruleId = rule.id();
        for (std::size_t i = 0; i < n; ++i) {
            (problematic[i] ? split.problematic : split.safe).push_back(body[i]);
        }
        splits_[r] = std::move(split);
    }
}

void Analysis::computeBridges() {
    bridges_.resize(ontology_.size());
    for (std::size_t r = 0; r < ontology_.size(); ++r) {
        const Tgd& rule = ontology_.rule(r);
        const AtomSplit& split = splits_[r];

        std::set<Term> safeVars, problematicVars;
        for (const auto& a : split.safe)
            for (const auto& v : a.variables()) safeVars.insert(v);
        for (const auto& a : split.problematic)
            for (const auto& v : a.variables()) problematicVars.insert(v);

        std::vector<Term> bridge;
        for (const auto& v : rule.universalVars()) { // first body occurrence order
            if (!safeVars.count(v)) continue;
            bool shared = problematicVars.count(v) > 0;
            bool harmlessFrontier = rule.isFrontier(v) && classes_[r].at(v).harmless();
            if (shared || harmlessFrontier) bridge.push_back(v);
        }
        bridges_[r] = std::move(bridge);
    }
}

const VariableClass& Analysis::classOf(std::size_t rule, const Term& var) const {
    return classes_.at(rule).at(var);
}

const std::map<Term, VariableClass>& Analysis::classes(std::size_t rule) const {
    return classes_.at(rule);
}

bool Analysis::harmless(std::size_t rule, const Term& var) const {
    return classOf(rule, var).harmless();
}

const AtomSplit& Analysis::split(std::size_t rule) const { return splits_.at(rule); }

const std::vector<Term>& Analysis::bridge(std::size_t rule) const { return bridges_.at(rule); }

MarkedSet markedVariables(const Ontology& ontology) {
    MarkedSet marked;
    std::set<Position> markedBodyPositions;

    auto markBodyPositions = [&](const Tgd& rule, const Term& var) {
        for (const auto& pos : occurrences(rule.body(), var)) markedBodyPositions.insert(pos);
    };

    // Variables that a head drops.
    for (const auto& rule : ontology.rules()) {
        for (const auto& x : rule.universalVars()) {
            if (!rule.isFrontier(x)) {
                marked.emplace(rule.id(), x);
                markBodyPositions(rule, x);
            }
        }
    }

    // Marks travel backwards: a head occurrence at a marked body position
    // marks the variable in its own rule.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : ontology.rules()) {
            for (const auto& a : rule.head()) {
                for (std::size_t i = 0; i < a.args().size(); ++i) {
                    const Term& t = a.args()[i];
                    if (!t.isVariable()) continue;
                    if (!markedBodyPositions.count(Position{a.predicate(), i + 1})) continue;
                    if (marked.emplace(rule.id(), t).second) {
                        markBodyPositions(rule, t);
                        changed = true;
                    }
                }
            }
        }
    }
    return marked;
}

DependencyGraphs dependencyGraphs(const Ontology& ontology) {
    DependencyGraphs graphs;
    graphs.positions = positionsOf(ontology);

    std::set<DependencyGraphs::LabelArc> arcs;
    for (const auto& rule : ontology.rules()) {
        // Existential head positions of this rule.
        std::vector<Position> exPositions;
        for (const auto& z : rule.existentialVars()) {
            for (const auto& pos : occurrences(rule.head(), z)) {
                if (std::find(exPositions.begin(), exPositions.end(), pos) == exPositions.end())
                    exPositions.push_back(pos);
            }
        }
        for (const auto& x : rule.universalVars()) {
            std::vector<Position> bodyPos = occurrences(rule.body(), x);
            for (const auto& from : bodyPos) {
                for (const auto& to : occurrences(rule.head(), x))
                    arcs.insert({from, to, false});
                for (const auto& to : exPositions)
                    arcs.insert({from, to, true});
            }
        }
    }
    graphs.arcs.assign(arcs.begin(), arcs.end());

    Analysis analysis(ontology);
    std::vector<Term> exVars = ontology.existentialVars();
    graphs.existentialVars = exVars;
    std::set<std::pair<Term, Term>> exArcs;
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        const Tgd& rule = ontology.rule(r);
        if (rule.existentialVars().empty()) continue;
        for (const auto& u : rule.frontier()) {
            const VariableClass& cls = analysis.classOf(r, u);
            if (cls.harmless()) continue;
            for (const auto& source : cls.invaders) {
                for (const auto& target : rule.existentialVars())
                    exArcs.emplace(source, target);
            }
        }
    }
    graphs.existentialArcs.assign(exArcs.begin(), exArcs.end());
    return graphs;
}

} // namespace dtgd
