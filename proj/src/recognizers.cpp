#include "dtgd/recognizers.h"

#include "dtgd/analysis.h"
#include "dtgd/decomposition.h"
#include "dtgd/errors.h"

#include <algorithm>
#include <map>
#include <set>

namespace dtgd {

namespace {

std::string varList(const std::vector<Term>& vars) {
    std::string out = "{";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(vars[i]);
    }
    return out + "}";
}

Verdict ok() { return {true, ""}; }
Verdict fail(std::string witness) { return {false, std::move(witness)}; }

Verdict checkDatalog(const Ontology& ontology) {
    for (const auto& rule : ontology.rules()) {
        if (!rule.existentialVars().empty())
            return fail("rule " + rule.id() + ": existential variable " +
                        to_string(rule.existentialVars().front()));
        if (rule.head().size() != 1)
            return fail("rule " + rule.id() + ": more than one head atom");
    }
    return ok();
}

Verdict checkInclusionDependencies(const Ontology& ontology) {
    for (const auto& rule : ontology.rules()) {
        if (rule.body().size() != 1)
            return fail("rule " + rule.id() + ": more than one body atom");
        if (rule.head().size() != 1)
            return fail("rule " + rule.id() + ": more than one head atom");
        for (const auto* part : {&rule.body(), &rule.head()}) {
            const Atom& a = part->front();
            std::set<Term> seen;
            for (const auto& t : a.args()) {
                if (t.isVariable() && !seen.insert(t).second)
                    return fail("rule " + rule.id() + ": variable " + to_string(t) +
                                " repeated in " + to_string(a));
            }
        }
    }
    return ok();
}

Verdict checkAfInds(const Ontology& ontology) {
    Verdict id = checkInclusionDependencies(ontology);
    if (!id.member) return id;
    for (const auto& rule : ontology.rules()) {
        if (!rule.existentialVars().empty())
            return fail("rule " + rule.id() + ": existential variable " +
                        to_string(rule.existentialVars().front()));
    }
    std::set<std::string> heads = ontology.headPredicates();
    for (const auto& p : ontology.bodyPredicates()) {
        if (heads.count(p))
            return fail("predicate " + p + " occurs in a head and in a body");
    }
    return ok();
}

Verdict checkLinear(const Ontology& ontology) {
    for (const auto& rule : ontology.rules()) {
        if (rule.body().size() > 1)
            return fail("rule " + rule.id() + ": more than one body atom");
    }
    return ok();
}

Verdict checkJoinless(const Ontology& ontology) {
    for (const auto& rule : ontology.rules()) {
        std::map<Term, std::size_t> count;
        for (const auto& a : rule.body()) {
            for (const auto& t : a.args()) {
                if (t.isVariable() && ++count[t] > 1)
                    return fail("rule " + rule.id() + ": variable " + to_string(t) +
                                " occurs twice in the body");
            }
        }
    }
    return ok();
}

Verdict checkGuarded(const Ontology& ontology) {
    for (const auto& rule : ontology.rules()) {
        bool guarded = false;
        for (const auto& a : rule.body()) {
            std::vector<Term> vars = a.variables();
            if (std::all_of(rule.universalVars().begin(), rule.universalVars().end(),
                            [&](const Term& v) {
                                return std::find(vars.begin(), vars.end(), v) != vars.end();
                            })) {
                guarded = true;
                break;
            }
        }
        if (!guarded)
            return fail("rule " + rule.id() + ": no body atom contains " +
                        varList(rule.universalVars()));
    }
    return ok();
}

Verdict checkWeaklyGuarded(const Ontology& ontology, const Analysis& analysis) {
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        const Tgd& rule = ontology.rule(r);
        std::vector<Term> harmful;
        for (const auto& v : rule.universalVars()) {
            if (!analysis.harmless(r, v)) harmful.push_back(v);
        }
        if (harmful.empty()) continue;
        bool guarded = false;
        for (const auto& a : rule.body()) {
            std::vector<Term> vars = a.variables();
            if (std::all_of(harmful.begin(), harmful.end(), [&](const Term& v) {
                    return std::find(vars.begin(), vars.end(), v) != vars.end();
                })) {
                guarded = true;
                break;
            }
        }
        if (!guarded)
            return fail("rule " + rule.id() + ": no body atom contains the harmful variables " +
                        varList(harmful));
    }
    return ok();
}

Verdict checkSticky(const Ontology& ontology) {
    MarkedSet marked = markedVariables(ontology);
    for (const auto& rule : ontology.rules()) {
        std::map<Term, std::size_t> count;
        for (const auto& a : rule.body()) {
            for (const auto& t : a.args())
                if (t.isVariable()) ++count[t];
        }
        for (const auto& [v, n] : count) {
            if (n > 1 && marked.count({rule.id(), v}))
                return fail("rule " + rule.id() + ": marked variable " + to_string(v) +
                            " occurs " + std::to_string(n) + " times in the body");
        }
    }
    return ok();
}

/// Strongly connected components by iterative Tarjan; returns a component id
/// per node.
std::vector<std::size_t> sccIds(std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<std::size_t> ids(n, 0), low(n, 0), comp(n, n);
    std::vector<bool> onStack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 1, comps = 0;

    struct Frame { std::size_t node; std::size_t edge; };
    for (std::size_t start = 0; start < n; ++start) {
        if (ids[start] != 0) continue;
        std::vector<Frame> frames{{start, 0}};
        ids[start] = low[start] = counter++;
        stack.push_back(start);
        onStack[start] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.node].size()) {
                std::size_t next = adj[f.node][f.edge++];
                if (ids[next] == 0) {
                    ids[next] = low[next] = counter++;
                    stack.push_back(next);
                    onStack[next] = true;
                    frames.push_back({next, 0});
                } else if (onStack[next]) {
                    low[f.node] = std::min(low[f.node], ids[next]);
                }
            } else {
                if (low[f.node] == ids[f.node]) {
                    while (true) {
                        std::size_t v = stack.back();
                        stack.pop_back();
                        onStack[v] = false;
                        comp[v] = comps;
                        if (v == f.node) break;
                    }
                    ++comps;
                }
                std::size_t done = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[done]);
            }
        }
    }
    return comp;
}

Verdict checkWeaklyAcyclic(const DependencyGraphs& graphs) {
    std::map<Position, std::size_t> nodeId;
    for (const auto& pos : graphs.positions) nodeId.emplace(pos, nodeId.size());
    std::vector<std::vector<std::size_t>> adj(nodeId.size());
    for (const auto& arc : graphs.arcs)
        adj[nodeId.at(arc.from)].push_back(nodeId.at(arc.to));
    std::vector<std::size_t> comp = sccIds(nodeId.size(), adj);
    for (const auto& arc : graphs.arcs) {
        if (arc.existential && comp[nodeId.at(arc.from)] == comp[nodeId.at(arc.to)])
            return fail("cycle through existential arc " + to_string(arc.from) + " -> " +
                        to_string(arc.to));
    }
    return ok();
}

Verdict checkJointlyAcyclic(const DependencyGraphs& graphs) {
    std::map<Term, std::size_t> nodeId;
    for (const auto& v : graphs.existentialVars) nodeId.emplace(v, nodeId.size());
    std::vector<std::vector<std::size_t>> adj(nodeId.size());
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [from, to] : graphs.existentialArcs) {
        std::size_t f = nodeId.at(from), t = nodeId.at(to);
        if (f == t)
            return fail("existential graph self-loop at " + to_string(from));
        edges.emplace(f, t);
        adj[f].push_back(t);
    }
    std::vector<std::size_t> comp = sccIds(nodeId.size(), adj);
    for (const auto& [from, to] : graphs.existentialArcs) {
        if (comp[nodeId.at(from)] == comp[nodeId.at(to)])
            return fail("existential graph cycle through " + to_string(from) + " -> " +
                        to_string(to));
    }
    return ok();
}

Verdict checkShy(const Ontology& ontology, const Analysis& analysis) {
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        const Tgd& rule = ontology.rule(r);
        for (const auto& v : rule.universalVars()) {
            std::size_t atomCount = 0;
            for (const auto& a : rule.body()) {
                const auto& args = a.args();
                if (std::find(args.begin(), args.end(), v) != args.end()) ++atomCount;
            }
            if (atomCount > 1 && !analysis.harmless(r, v))
                return fail("rule " + rule.id() + ": variable " + to_string(v) +
                            " occurs in " + std::to_string(atomCount) +
                            " body atoms but is not harmless");
        }
        const auto& body = rule.body();
        for (std::size_t i = 0; i < body.size(); ++i) {
            for (std::size_t j = i + 1; j < body.size(); ++j) {
                for (const auto& z : body[i].variables()) {
                    const VariableClass& zc = analysis.classOf(r, z);
                    if (!zc.dangerous()) continue;
                    for (const auto& w : body[j].variables()) {
                        if (w == z) continue;
                        const VariableClass& wc = analysis.classOf(r, w);
                        if (!wc.dangerous()) continue;
                        std::vector<Term> common;
                        std::set_intersection(zc.invaders.begin(), zc.invaders.end(),
                                              wc.invaders.begin(), wc.invaders.end(),
                                              std::back_inserter(common));
                        if (!common.empty())
                            return fail("rule " + rule.id() + ": dangerous variables " +
                                        to_string(z) + " and " + to_string(w) +
                                        " in different atoms share invader " +
                                        to_string(common.front()));
                    }
                }
            }
        }
    }
    return ok();
}

Verdict checkWard(const Ontology& ontology, const Analysis& analysis) {
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        const Tgd& rule = ontology.rule(r);
        std::vector<Term> dangerous;
        for (const auto& v : rule.universalVars()) {
            if (analysis.classOf(r, v).dangerous()) dangerous.push_back(v);
        }
        if (dangerous.empty()) continue;
        bool warded = false;
        for (const auto& ward : rule.body()) {
            std::vector<Term> wardVars = ward.variables();
            bool coversDangerous =
                std::all_of(dangerous.begin(), dangerous.end(), [&](const Term& v) {
                    return std::find(wardVars.begin(), wardVars.end(), v) != wardVars.end();
                });
            if (!coversDangerous) continue;
            bool sharesOnlyHarmless = true;
            for (const auto& v : wardVars) {
                if (analysis.harmless(r, v)) continue;
                for (const auto& other : rule.body()) {
                    if (other == ward) continue;
                    const auto& args = other.args();
                    if (std::find(args.begin(), args.end(), v) != args.end()) {
                        sharesOnlyHarmless = false;
                        break;
                    }
                }
                if (!sharesOnlyHarmless) break;
            }
            if (sharesOnlyHarmless) { warded = true; break; }
        }
        if (!warded)
            return fail("rule " + rule.id() + ": no ward covers " + varList(dangerous));
    }
    return ok();
}

Verdict recognizePlain(const Ontology& ontology, RuleClass cls, const Analysis& analysis) {
    switch (cls) {
        case RuleClass::Datalog: return checkDatalog(ontology);
        case RuleClass::AfInds: return checkAfInds(ontology);
        case RuleClass::InclusionDependencies: return checkInclusionDependencies(ontology);
        case RuleClass::Linear: return checkLinear(ontology);
        case RuleClass::Joinless: return checkJoinless(ontology);
        case RuleClass::Guarded: return checkGuarded(ontology);
        case RuleClass::WeaklyGuarded: return checkWeaklyGuarded(ontology, analysis);
        case RuleClass::Sticky: return checkSticky(ontology);
        case RuleClass::WeaklyAcyclic: return checkWeaklyAcyclic(dependencyGraphs(ontology));
        case RuleClass::JointlyAcyclic: return checkJointlyAcyclic(dependencyGraphs(ontology));
        case RuleClass::Shy: return checkShy(ontology, analysis);
        case RuleClass::Ward: return checkWard(ontology, analysis);
    }
    throw UnsupportedClassError("<unknown>");
}

} // namespace

std::string to_string(RuleClass c) {
    switch (c) {
        case RuleClass::Datalog: return "Datalog";
        case RuleClass::AfInds: return "AfInds";
        case RuleClass::InclusionDependencies: return "InclusionDependencies";
        case RuleClass::Linear: return "Linear";
        case RuleClass::Joinless: return "Joinless";
        case RuleClass::Guarded: return "Guarded";
        case RuleClass::WeaklyGuarded: return "WeaklyGuarded";
        case RuleClass::Sticky: return "Sticky";
        case RuleClass::WeaklyAcyclic: return "WeaklyAcyclic";
        case RuleClass::JointlyAcyclic: return "JointlyAcyclic";
        case RuleClass::Shy: return "Shy";
        case RuleClass::Ward: return "Ward";
    }
    return "<unknown>";
}

std::string to_string(const ClassName& c) {
    return c.dyadic ? "DyadicOf(" + to_string(c.base) + ")" : to_string(c.base);
}

ClassName parseClassName(std::string_view name) {
    bool dyadic = false;
    std::string_view inner = name;
    constexpr std::string_view prefix = "DyadicOf(";
    if (inner.size() > prefix.size() + 1 && inner.substr(0, prefix.size()) == prefix &&
        inner.back() == ')') {
        dyadic = true;
        inner = inner.substr(prefix.size(), inner.size() - prefix.size() - 1);
    }
    for (RuleClass c : kAllRuleClasses) {
        if (to_string(c) == inner) return {c, dyadic};
    }
    throw UnsupportedClassError(std::string(name));
}

Verdict recognize(const Ontology& ontology, const ClassName& className) {
    Analysis analysis(ontology);
    Verdict direct = recognizePlain(ontology, className.base, analysis);
    if (!className.dyadic || direct.member) return direct;

    Ontology main = mainRules(ontology);
    Analysis mainAnalysis(main);
    Verdict viaMain = recognizePlain(main, className.base, mainAnalysis);
    if (viaMain.member) return viaMain;
    return fail("not in " + to_string(className.base) + " (" + direct.witness +
                "); main rewriting not in " + to_string(className.base) + " (" +
                viaMain.witness + ")");
}

const Verdict* ClassReport::find(const ClassName& name) const {
    for (const auto& [cls, verdict] : entries) {
        if (cls == name) return &verdict;
    }
    return nullptr;
}

ClassReport classifyAll(const Ontology& ontology) {
    ClassReport report;
    for (RuleClass c : kAllRuleClasses)
        report.entries.emplace_back(ClassName::plain(c), recognize(ontology, ClassName::plain(c)));
    for (RuleClass c : kAllRuleClasses)
        report.entries.emplace_back(ClassName::dyadicOf(c),
                                    recognize(ontology, ClassName::dyadicOf(c)));
    return report;
}

} // namespace dtgd
