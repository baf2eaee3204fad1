#include "dtgd/decomposition.h"

#include "dtgd/errors.h"

#include <algorithm>
#include <map>

namespace dtgd {

namespace {

std::size_t headOccurrences(const Tgd& rule, const Term& var) {
    std::size_t n = 0;
    for (const auto& a : rule.head()) {
        for (const auto& t : a.args())
            if (t == var) ++n;
    }
    return n;
}

/// Fresh variable name base_i that clashes with no variable of the rule.
Term splitName(const Tgd& rule, const Term& var, std::size_t index) {
    std::set<std::string> taken;
    for (const auto* vars : {&rule.universalVars(), &rule.existentialVars()}) {
        for (const auto& v : *vars) taken.insert(v.name());
    }
    std::string sep = "_";
    std::string candidate = var.name() + sep + std::to_string(index);
    while (taken.count(candidate)) {
        sep += "_";
        candidate = var.name() + sep + std::to_string(index);
    }
    return Term::variable(candidate, var.scope());
}

} // namespace

HeadGroundCheck isHeadGround(const std::set<std::string>& subsetIds, const Ontology& ontology) {
    for (const auto& id : subsetIds) {
        if (!ontology.findRule(id)) throw NotASubsetError(id);
    }
    Ontology renamed = renameApart(ontology);
    Analysis analysis(renamed);

    // Property 1: the subset consists of datalog rules.
    for (const auto& id : subsetIds) {
        const Tgd& rule = renamed.rule(*renamed.findRule(id));
        if (!rule.isDatalog())
            return {false, 1,
                    "rule " + id + " is not a datalog rule" +
                        (rule.existentialVars().empty()
                             ? ""
                             : " (existential variable " +
                                   to_string(rule.existentialVars().front()) + ")")};
    }

    // Property 2: head atoms of the subset carry only harmless variables.
    for (const auto& id : subsetIds) {
        std::size_t r = *renamed.findRule(id);
        const Tgd& rule = renamed.rule(r);
        for (const auto& a : rule.head()) {
            for (const auto& t : a.args()) {
                if (!t.isVariable()) continue;
                bool bad = rule.isExistential(t) || !analysis.harmless(r, t);
                if (bad)
                    return {false, 2,
                            "rule " + id + ": head atom " + to_string(a) + " carries " +
                                to_string(t) + ", which is not harmless"};
            }
        }
    }

    // Property 3: subset head predicates never occur in subset bodies.
    std::set<std::string> subsetHeads, subsetBodies, restHeads;
    for (const auto& rule : renamed.rules()) {
        auto heads = rule.headPredicates();
        if (subsetIds.count(rule.id())) {
            subsetHeads.insert(heads.begin(), heads.end());
            auto bodies = rule.bodyPredicates();
            subsetBodies.insert(bodies.begin(), bodies.end());
        } else {
            restHeads.insert(heads.begin(), heads.end());
        }
    }
    for (const auto& p : subsetHeads) {
        if (subsetBodies.count(p))
            return {false, 3, "predicate " + p + " occurs in a subset head and a subset body"};
    }

    // Property 4: subset head predicates never occur in heads outside it.
    for (const auto& p : subsetHeads) {
        if (restHeads.count(p))
            return {false, 4, "predicate " + p + " occurs in a head outside the subset"};
    }
    return {true, 0, ""};
}

std::string auxPredicateName(const std::string& ruleId) { return "__aux_" + ruleId; }

std::optional<Tgd> hgRule(std::size_t rule, const Analysis& analysis) {
    const AtomSplit& split = analysis.split(rule);
    if (split.safe.empty()) return std::nullopt;
    const Tgd& source = analysis.ontology().rule(rule);

    std::vector<Term> slots;
    for (const auto& v : analysis.bridge(rule)) {
        std::size_t n = std::max<std::size_t>(1, headOccurrences(source, v));
        for (std::size_t i = 0; i < n; ++i) slots.push_back(v);
    }
    Atom aux(auxPredicateName(source.id()), std::move(slots));
    return Tgd(source.id(), split.safe, {std::move(aux)});
}

Tgd mainRule(std::size_t rule, const Analysis& analysis) {
    const AtomSplit& split = analysis.split(rule);
    const Tgd& source = analysis.ontology().rule(rule);
    if (split.safe.empty()) return source;

    // Bridge variables with several head occurrences become _1.._n copies.
    std::map<Term, std::vector<Term>> splits;
    for (const auto& v : analysis.bridge(rule)) {
        std::size_t n = headOccurrences(source, v);
        if (n <= 1) continue;
        std::vector<Term> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back(splitName(source, v, i));
        splits.emplace(v, std::move(names));
    }

    std::vector<Term> auxArgs;
    for (const auto& v : analysis.bridge(rule)) {
        auto it = splits.find(v);
        if (it == splits.end()) {
            auxArgs.push_back(v);
        } else {
            auxArgs.insert(auxArgs.end(), it->second.begin(), it->second.end());
        }
    }

    std::map<Term, std::size_t> used; // head occurrences consumed so far
    std::vector<Atom> head;
    for (const auto& a : source.head()) {
        std::vector<Term> args;
        for (const auto& t : a.args()) {
            auto it = t.isVariable() ? splits.find(t) : splits.end();
            if (it == splits.end()) {
                args.push_back(t);
            } else {
                args.push_back(it->second[used[t]++]);
            }
        }
        head.emplace_back(a.predicate(), std::move(args));
    }

    std::vector<Atom> body;
    body.emplace_back(auxPredicateName(source.id()), std::move(auxArgs));
    for (const auto& a : split.problematic) {
        std::vector<Term> args;
        for (const auto& t : a.args()) {
            auto it = t.isVariable() ? splits.find(t) : splits.end();
            args.push_back(it == splits.end() ? t : it->second.front());
        }
        body.emplace_back(a.predicate(), std::move(args));
    }
    return Tgd(source.id(), std::move(body), std::move(head));
}

Ontology hgRules(const Ontology& ontology) {
    Ontology renamed = renameApart(ontology);
    Analysis analysis(renamed);
    std::vector<Tgd> rules;
    for (std::size_t r = 0; r < renamed.size(); ++r) {
        if (auto hg = hgRule(r, analysis)) rules.push_back(std::move(*hg));
    }
    return Ontology(std::move(rules));
}

Ontology mainRules(const Ontology& ontology) {
    Ontology renamed = renameApart(ontology);
    Analysis analysis(renamed);
    std::vector<Tgd> rules;
    for (std::size_t r = 0; r < renamed.size(); ++r) rules.push_back(mainRule(r, analysis));
    return Ontology(std::move(rules));
}

Ontology combined(const DyadicPair& pair) {
    return unionOntologies(pair.headGround, pair.component, "hg.", "c.");
}

Verdict isDyadicPair(const DyadicPair& pair, const ClassName& className) {
    Ontology whole = combined(pair);
    std::set<std::string> hgIds;
    for (const auto& rule : pair.headGround.rules()) hgIds.insert("hg." + rule.id());
    HeadGroundCheck check = isHeadGround(hgIds, whole);
    if (!check.headGround)
        return {false, "head-ground component violates property " +
                           std::to_string(check.violatedProperty) + ": " + check.witness};
    Verdict component = recognize(renameApart(pair.component), ClassName::plain(className.base));
    if (!component.member)
        return {false, "component is not in " + to_string(className.base) + ": " +
                           component.witness};
    return {true, ""};
}

DyadicPair decompose(const Ontology& ontology, const ClassName& className) {
    ClassName base = ClassName::plain(className.base);
    Ontology renamed = renameApart(ontology);
    Verdict dyadic = recognize(renamed, ClassName::dyadicOf(base.base));
    if (!dyadic.member) throw NotInDyadicClassError(to_string(base));

    DyadicPair pair;
    if (recognize(renamed, base).member) {
        pair.component = ontology;
        return pair;
    }
    pair.headGround = hgRules(renamed);
    pair.component = mainRules(renamed);
    for (const auto& rule : pair.headGround.rules()) {
        const Atom& aux = rule.head().front();
        pair.auxRegistry.emplace(rule.id(), Predicate{aux.predicate(), aux.arity()});
    }
    return pair;
}

} // namespace dtgd
