#include "support.h"

#include "dtgd/errors.h"
#include "dtgd/recognizers.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dtgd::test {

// --- fixtures ---------------------------------------------------------------

std::string fixturePath(const std::string& name) {
    return std::string(DTGD_FIXTURES) + "/" + name;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Program parseFixture(const std::string& name) { return parseProgram(readFile(fixturePath(name))); }

Program parseText(const std::string& text) { return parseProgram(text); }

std::string scratchPath(const std::string& name) {
    std::string dir = "/tmp/dtgd_tests_" + std::to_string(getpid());
    std::filesystem::create_directories(dir);
    return dir + "/" + name;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// --- generators -------------------------------------------------------------

namespace {

Term var(std::size_t i) { return Term::variable("V" + std::to_string(i + 1)); }
Term freshVar(const std::string& base, std::size_t i) {
    return Term::variable(base + std::to_string(i + 1));
}
Term constant(std::size_t i) { return Term::constant(std::string(1, char('a' + i % 6))); }

/// Keeps predicate arities consistent inside one generated ontology.
class PredicatePool {
public:
    PredicatePool(Rng& rng, const std::string& prefix, std::size_t count, std::size_t maxArity,
                  bool allowZeroArity = false)
        : rng_(rng) {
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t lo = allowZeroArity ? 0 : 1;
            preds_.push_back(
                Predicate{prefix + std::to_string(i + 1), rng.between(lo, maxArity)});
        }
    }

    const Predicate& pick() { return preds_[rng_.below(preds_.size())]; }
    const std::vector<Predicate>& all() const { return preds_; }

private:
    Rng& rng_;
    std::vector<Predicate> preds_;
};

} // namespace

Ontology randomOntology(Rng& rng, const GenOptions& options) {
    PredicatePool pool(rng, "p", options.predicateCount, options.maxArity);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, options.maxRules);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        std::size_t varCount = rng.between(1, 4);
        std::vector<Atom> body;
        std::size_t bodyCount = rng.between(1, options.maxBodyAtoms);
        for (std::size_t i = 0; i < bodyCount; ++i) {
            const Predicate& p = pool.pick();
            std::vector<Term> args;
            for (std::size_t k = 0; k < p.arity; ++k) {
                if (rng.chance(options.constantChance)) args.push_back(constant(rng.below(3)));
                else args.push_back(var(rng.below(varCount)));
            }
            body.emplace_back(p.name, std::move(args));
        }
        std::set<Term> bodyVars;
        for (const auto& a : body)
            for (const auto& t : a.args())
                if (t.isVariable()) bodyVars.insert(t);
        std::vector<Term> bodyVarList(bodyVars.begin(), bodyVars.end());

        std::vector<Atom> head;
        std::size_t headCount = rng.between(1, options.maxHeadAtoms);
        std::size_t exCounter = 0;
        for (std::size_t i = 0; i < headCount; ++i) {
            const Predicate& p = pool.pick();
            std::vector<Term> args;
            for (std::size_t k = 0; k < p.arity; ++k) {
                if (!bodyVarList.empty() && !rng.chance(options.existentialChance)) {
                    args.push_back(rng.pick(bodyVarList));
                } else if (rng.chance(options.existentialChance)) {
                    args.push_back(freshVar("Z", exCounter++));
                } else if (!bodyVarList.empty()) {
                    args.push_back(rng.pick(bodyVarList));
                } else {
                    args.push_back(constant(rng.below(3)));
                }
            }
            head.emplace_back(p.name, std::move(args));
        }
        rules.emplace_back("g" + std::to_string(r + 1), std::move(body), std::move(head));
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomDatalog(Rng& rng, std::size_t maxRules, std::size_t maxArity) {
    PredicatePool pool(rng, "p", 4, maxArity, /*allowZeroArity=*/true);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, maxRules);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        std::size_t varCount = rng.between(1, 4);
        std::vector<Atom> body;
        std::size_t bodyCount = rng.between(1, 3);
        for (std::size_t i = 0; i < bodyCount; ++i) {
            const Predicate& p = pool.pick();
            std::vector<Term> args;
            for (std::size_t k = 0; k < p.arity; ++k) {
                if (rng.chance(0.1)) args.push_back(constant(rng.below(3)));
                else args.push_back(var(rng.below(varCount)));
            }
            body.emplace_back(p.name, std::move(args));
        }
        std::set<Term> bodyVars;
        for (const auto& a : body)
            for (const auto& t : a.args())
                if (t.isVariable()) bodyVars.insert(t);
        std::vector<Term> bodyVarList(bodyVars.begin(), bodyVars.end());

        const Predicate& hp = pool.pick();
        std::vector<Term> args;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (bodyVarList.empty() || rng.chance(0.1)) args.push_back(constant(rng.below(3)));
            else args.push_back(rng.pick(bodyVarList));
        }
        rules.emplace_back("g" + std::to_string(r + 1), std::move(body),
                           std::vector<Atom>{Atom(hp.name, std::move(args))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomAfInds(Rng& rng, std::size_t maxRules, std::size_t maxArity) {
    PredicatePool bodies(rng, "s", 3, maxArity);
    PredicatePool heads(rng, "t", 3, maxArity);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, maxRules);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        const Predicate& bp = bodies.pick();
        std::vector<Term> bodyArgs;
        for (std::size_t k = 0; k < bp.arity; ++k) bodyArgs.push_back(var(k));

        const Predicate& hp = heads.pick();
        // Head takes an injective selection of body variables; constants fill
        // the rest.
        std::vector<Term> available = bodyArgs;
        std::vector<Term> headArgs;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (!available.empty() && !rng.chance(0.2)) {
                std::size_t i = rng.below(available.size());
                headArgs.push_back(available[i]);
                available.erase(available.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                headArgs.push_back(constant(rng.below(3)));
            }
        }
        rules.emplace_back("g" + std::to_string(r + 1),
                           std::vector<Atom>{Atom(bp.name, std::move(bodyArgs))},
                           std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomInclusionDependencies(Rng& rng) {
    PredicatePool pool(rng, "p", 4, 3);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, 5);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        const Predicate& bp = pool.pick();
        std::vector<Term> bodyArgs;
        for (std::size_t k = 0; k < bp.arity; ++k) bodyArgs.push_back(var(k));

        const Predicate& hp = pool.pick();
        std::vector<Term> available = bodyArgs;
        std::vector<Term> headArgs;
        std::size_t exCounter = 0;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (!available.empty() && rng.chance(0.7)) {
                std::size_t i = rng.below(available.size());
                headArgs.push_back(available[i]);
                available.erase(available.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                headArgs.push_back(freshVar("Z", exCounter++));
            }
        }
        rules.emplace_back("g" + std::to_string(r + 1),
                           std::vector<Atom>{Atom(bp.name, std::move(bodyArgs))},
                           std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomLinear(Rng& rng) {
    PredicatePool pool(rng, "p", 4, 3);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, 5);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        const Predicate& bp = pool.pick();
        std::size_t varCount = rng.between(1, std::max<std::size_t>(1, bp.arity));
        std::vector<Term> bodyArgs;
        for (std::size_t k = 0; k < bp.arity; ++k) bodyArgs.push_back(var(rng.below(varCount)));
        std::vector<Atom> body{Atom(bp.name, std::move(bodyArgs))};
        std::set<Term> bodyVars;
        for (const auto& t : body[0].args())
            if (t.isVariable()) bodyVars.insert(t);
        std::vector<Term> bodyVarList(bodyVars.begin(), bodyVars.end());

        const Predicate& hp = pool.pick();
        std::vector<Term> headArgs;
        std::size_t exCounter = 0;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (!bodyVarList.empty() && rng.chance(0.6)) headArgs.push_back(rng.pick(bodyVarList));
            else headArgs.push_back(freshVar("Z", exCounter++));
        }
        rules.emplace_back("g" + std::to_string(r + 1), std::move(body),
                           std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomJoinless(Rng& rng) {
    PredicatePool pool(rng, "p", 4, 3);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, 5);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        std::vector<Atom> body;
        std::size_t bodyCount = rng.between(1, 3);
        std::size_t slot = 0;
        for (std::size_t i = 0; i < bodyCount; ++i) {
            const Predicate& p = pool.pick();
            std::vector<Term> args;
            for (std::size_t k = 0; k < p.arity; ++k) args.push_back(var(slot++));
            body.emplace_back(p.name, std::move(args));
        }
        std::vector<Term> bodyVarList;
        for (const auto& a : body)
            for (const auto& t : a.args()) bodyVarList.push_back(t);

        const Predicate& hp = pool.pick();
        std::vector<Term> headArgs;
        std::size_t exCounter = 0;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (!bodyVarList.empty() && rng.chance(0.6)) headArgs.push_back(rng.pick(bodyVarList));
            else headArgs.push_back(freshVar("Z", exCounter++));
        }
        rules.emplace_back("g" + std::to_string(r + 1), std::move(body),
                           std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Ontology randomGuarded(Rng& rng) {
    PredicatePool pool(rng, "p", 4, 3);
    std::vector<Tgd> rules;
    std::size_t ruleCount = rng.between(1, 5);
    for (std::size_t r = 0; r < ruleCount; ++r) {
        std::size_t varCount = rng.between(1, 3);
        std::vector<Term> uvars;
        for (std::size_t i = 0; i < varCount; ++i) uvars.push_back(var(i));

        std::vector<Atom> body;
        // The guard carries every universal variable.
        std::vector<Term> guardArgs = uvars;
        while (guardArgs.size() < varCount) guardArgs.push_back(rng.pick(uvars));
        body.emplace_back("guard" + std::to_string(varCount), guardArgs);
        std::size_t extra = rng.below(2);
        for (std::size_t i = 0; i < extra; ++i) {
            const Predicate& p = pool.pick();
            std::vector<Term> args;
            for (std::size_t k = 0; k < p.arity; ++k) args.push_back(rng.pick(uvars));
            body.emplace_back(p.name, std::move(args));
        }

        const Predicate& hp = pool.pick();
        std::vector<Term> headArgs;
        std::size_t exCounter = 0;
        for (std::size_t k = 0; k < hp.arity; ++k) {
            if (rng.chance(0.6)) headArgs.push_back(rng.pick(uvars));
            else headArgs.push_back(freshVar("Z", exCounter++));
        }
        rules.emplace_back("g" + std::to_string(r + 1), std::move(body),
                           std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
    }
    return renameApart(Ontology(std::move(rules)));
}

Database randomDatabase(Rng& rng, const Ontology& schemaSource, std::size_t maxFacts,
                        std::size_t constantPool) {
    Database db;
    std::vector<Predicate> preds;
    for (const auto& [name, arity] : schemaSource.schema()) {
        if (name.rfind("__", 0) == 0) continue;
        preds.push_back(Predicate{name, arity});
    }
    if (preds.empty()) return db;
    std::size_t facts = rng.between(1, maxFacts);
    for (std::size_t i = 0; i < facts; ++i) {
        const Predicate& p = rng.pick(preds);
        std::vector<Term> args;
        for (std::size_t k = 0; k < p.arity; ++k) args.push_back(constant(rng.below(constantPool)));
        db.insert(Atom(p.name, std::move(args)));
    }
    return db;
}

ConjunctiveQuery randomQuery(Rng& rng, const std::map<std::string, std::size_t>& schema,
                             std::size_t maxAtoms, std::size_t maxVars) {
    std::vector<Predicate> preds;
    for (const auto& [name, arity] : schema) {
        if (name.rfind("__", 0) == 0) continue;
        preds.push_back(Predicate{name, arity});
    }
    std::vector<Atom> body;
    std::size_t atomCount = rng.between(1, maxAtoms);
    for (std::size_t i = 0; i < atomCount; ++i) {
        const Predicate& p = rng.pick(preds);
        std::vector<Term> args;
        for (std::size_t k = 0; k < p.arity; ++k) {
            if (rng.chance(0.15)) args.push_back(constant(rng.below(4)));
            else args.push_back(freshVar("Q", rng.below(maxVars)));
        }
        body.emplace_back(p.name, std::move(args));
    }
    std::vector<Term> bodyVars;
    for (const auto& a : body) {
        for (const auto& t : a.args()) {
            if (t.isVariable() && std::find(bodyVars.begin(), bodyVars.end(), t) == bodyVars.end())
                bodyVars.push_back(t);
        }
    }
    std::vector<Term> outputs;
    for (const auto& v : bodyVars) {
        if (rng.chance(0.5)) outputs.push_back(v);
    }
    return ConjunctiveQuery(std::move(outputs), std::move(body));
}

Program randomProgram(Rng& rng) {
    static const std::vector<std::string> oddConstants = {
        "a", "b", "longer_name", "007", "42", "has space", "UPPER", "", "quo\"te", "back\\slash"};

    GenOptions options;
    options.maxRules = 4;
    Ontology ontology = randomOntology(rng, options);

    Database db;
    std::vector<Predicate> preds;
    for (const auto& [name, arity] : ontology.schema()) preds.push_back(Predicate{name, arity});
    std::size_t facts = rng.below(5);
    for (std::size_t i = 0; i < facts && !preds.empty(); ++i) {
        const Predicate& p = rng.pick(preds);
        std::vector<Term> args;
        for (std::size_t k = 0; k < p.arity; ++k)
            args.push_back(Term::constant(rng.pick(oddConstants)));
        db.insert(Atom(p.name, std::move(args)));
    }

    std::vector<ConjunctiveQuery> queries;
    std::size_t queryCount = rng.below(3);
    for (std::size_t i = 0; i < queryCount; ++i)
        queries.push_back(randomQuery(rng, ontology.schema()));

    return Program{std::move(db), std::move(ontology), std::move(queries)};
}

DyadicPair randomWeaklyAcyclicPair(Rng& rng) {
    for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
        PredicatePool base(rng, "p", 3, 2);
        std::size_t hgCount = rng.between(1, 2);

        std::vector<Tgd> hgRules;
        for (std::size_t i = 0; i < hgCount; ++i) {
            std::size_t varCount = rng.between(1, 3);
            std::vector<Atom> body;
            std::size_t bodyCount = rng.between(1, 2);
            for (std::size_t k = 0; k < bodyCount; ++k) {
                const Predicate& p = base.pick();
                std::vector<Term> args;
                for (std::size_t s = 0; s < p.arity; ++s) args.push_back(var(rng.below(varCount)));
                body.emplace_back(p.name, std::move(args));
            }
            std::set<Term> bodyVars;
            for (const auto& a : body)
                for (const auto& t : a.args())
                    if (t.isVariable()) bodyVars.insert(t);
            std::vector<Term> available(bodyVars.begin(), bodyVars.end());
            std::vector<Term> headArgs;
            std::size_t width = rng.between(1, std::min<std::size_t>(2, available.size()));
            for (std::size_t s = 0; s < width; ++s) {
                std::size_t j = rng.below(available.size());
                headArgs.push_back(available[j]);
                available.erase(available.begin() + static_cast<std::ptrdiff_t>(j));
            }
            hgRules.emplace_back(
                "h" + std::to_string(i + 1), std::move(body),
                std::vector<Atom>{Atom("aux" + std::to_string(i + 1), std::move(headArgs))});
        }
        Ontology hg = renameApart(Ontology(std::move(hgRules)));

        std::vector<Predicate> cBodyPreds;
        for (const auto& p : base.all()) cBodyPreds.push_back(p);
        for (const auto& r : hg.rules())
            cBodyPreds.push_back(Predicate{r.head().front().predicate(), r.head().front().arity()});

        std::vector<Tgd> cRules;
        std::size_t cCount = rng.between(1, 3);
        for (std::size_t i = 0; i < cCount; ++i) {
            std::size_t varCount = rng.between(1, 3);
            std::vector<Atom> body;
            std::size_t bodyCount = rng.between(1, 2);
            for (std::size_t k = 0; k < bodyCount; ++k) {
                const Predicate& p = rng.pick(cBodyPreds);
                std::vector<Term> args;
                for (std::size_t s = 0; s < p.arity; ++s) args.push_back(var(rng.below(varCount)));
                body.emplace_back(p.name, std::move(args));
            }
            std::set<Term> bodyVars;
            for (const auto& a : body)
                for (const auto& t : a.args())
                    if (t.isVariable()) bodyVars.insert(t);
            std::vector<Term> bodyVarList(bodyVars.begin(), bodyVars.end());

            const Predicate& hp = base.pick();
            std::vector<Term> headArgs;
            bool usedExistential = false;
            for (std::size_t s = 0; s < hp.arity; ++s) {
                if (!usedExistential && rng.chance(0.35)) {
                    headArgs.push_back(Term::variable("Znew"));
                    usedExistential = true;
                } else if (!bodyVarList.empty()) {
                    headArgs.push_back(rng.pick(bodyVarList));
                } else {
                    headArgs.push_back(constant(rng.below(3)));
                }
            }
            cRules.emplace_back("c" + std::to_string(i + 1), std::move(body),
                                std::vector<Atom>{Atom(hp.name, std::move(headArgs))});
        }
        Ontology component = renameApart(Ontology(std::move(cRules)));

        DyadicPair pair{hg, component, {}};
        if (!recognize(component, ClassName::plain(RuleClass::WeaklyAcyclic)).member) continue;
        if (!isDyadicPair(pair, ClassName::plain(RuleClass::WeaklyAcyclic)).member) continue;
        return pair;
    }
    throw std::runtime_error("could not generate a weakly acyclic dyadic pair");
}

// --- independent oracles ----------------------------------------------------

namespace {

using Assignment = std::map<Term, Term>;

std::optional<Atom> applyAssignment(const Atom& atom, const Assignment& assignment) {
    std::vector<Term> args;
    args.reserve(atom.args().size());
    for (const auto& t : atom.args()) {
        if (t.isVariable()) {
            auto it = assignment.find(t);
            if (it == assignment.end()) return std::nullopt;
            args.push_back(it->second);
        } else {
            args.push_back(t);
        }
    }
    return Atom(atom.predicate(), std::move(args));
}

std::vector<Term> collectQueryVars(const std::vector<Atom>& atoms) {
    std::vector<Term> vars;
    for (const auto& a : atoms) {
        for (const auto& t : a.args()) {
            if (t.isVariable() && std::find(vars.begin(), vars.end(), t) == vars.end())
                vars.push_back(t);
        }
    }
    return vars;
}

/// Enumerates every total assignment of vars into domain and calls fn.
void forEachAssignment(const std::vector<Term>& vars, const std::vector<Term>& domain,
                       const std::function<void(const Assignment&)>& fn) {
    Assignment assignment;
    std::function<void(std::size_t)> step = [&](std::size_t i) {
        if (i == vars.size()) { fn(assignment); return; }
        for (const auto& value : domain) {
            assignment.insert_or_assign(vars[i], value);
            step(i + 1);
        }
        assignment.erase(vars[i]);
    };
    step(0);
}

bool holdsIn(const std::vector<Atom>& atoms, const Assignment& assignment,
             const Instance& instance) {
    for (const auto& a : atoms) {
        auto image = applyAssignment(a, assignment);
        if (!image || !instance.contains(*image)) return false;
    }
    return true;
}

} // namespace

AnswerSet enumerationAnswers(const ConjunctiveQuery& query, const Instance& instance) {
    std::vector<Term> domain;
    {
        std::set<Term> seen;
        for (const auto& a : instance.atoms()) {
            for (const auto& t : a.args()) {
                if (seen.insert(t).second) domain.push_back(t);
            }
        }
    }
    AnswerSet answers;
    std::vector<Term> vars = collectQueryVars(query.body());
    forEachAssignment(vars, domain, [&](const Assignment& assignment) {
        if (!holdsIn(query.body(), assignment, instance)) return;
        Tuple tuple;
        for (const auto& v : query.outputs()) {
            const Term& value = assignment.at(v);
            if (!value.isConstant()) return;
            tuple.push_back(value);
        }
        answers.insert(std::move(tuple));
    });
    return answers;
}

Instance semiNaiveClosure(const Ontology& datalog, const Database& database) {
    for (const auto& r : datalog.rules()) {
        if (!r.isDatalog()) throw std::invalid_argument("semiNaiveClosure expects datalog rules");
    }
    Instance facts = database;
    std::size_t frontierStart = 0;
    while (true) {
        std::size_t frontierEnd = facts.size();
        std::vector<Atom> fresh;
        for (const auto& rule : datalog.rules()) {
            // Join body atoms left to right over the current facts; keep only
            // matches that touch the frontier.
            std::function<void(std::size_t, Assignment&, bool)> join =
                [&](std::size_t i, Assignment& assignment, bool touchedFrontier) {
                    if (i == rule.body().size()) {
                        if (!touchedFrontier && frontierStart > 0) return;
                        auto image = applyAssignment(rule.head().front(), assignment);
                        if (image && !facts.contains(*image)) fresh.push_back(*image);
                        return;
                    }
                    const Atom& pattern = rule.body()[i];
                    for (std::size_t idx : facts.withPredicate(pattern.predicate())) {
                        if (idx >= frontierEnd) continue;
                        const Atom& fact = facts.atoms()[idx];
                        Assignment extended = assignment;
                        bool okMatch = true;
                        for (std::size_t k = 0; k < pattern.args().size(); ++k) {
                            const Term& p = pattern.args()[k];
                            const Term& f = fact.args()[k];
                            if (p.isVariable()) {
                                auto it = extended.find(p);
                                if (it == extended.end()) extended.insert_or_assign(p, f);
                                else if (!(it->second == f)) { okMatch = false; break; }
                            } else if (!(p == f)) {
                                okMatch = false;
                                break;
                            }
                        }
                        if (okMatch) join(i + 1, extended, touchedFrontier || idx >= frontierStart);
                    }
                };
            Assignment empty;
            join(0, empty, false);
        }
        if (fresh.empty()) break;
        frontierStart = facts.size();
        for (const auto& a : fresh) facts.insert(a);
        if (facts.size() == frontierStart) break;
    }
    return facts;
}

AnswerSet bruteForceCertainAnswers(const ConjunctiveQuery& query, const Database& database,
                                   const Ontology& ontology, const std::vector<Term>& domain) {
    // Herbrand base over the schema and the supplied domain.
    std::map<std::string, std::size_t> schema = ontology.schema();
    for (const auto& a : database.atoms()) schema.emplace(a.predicate(), a.arity());
    for (const auto& a : query.body()) schema.emplace(a.predicate(), a.arity());

    std::vector<Atom> herbrand;
    for (const auto& [name, arity] : schema) {
        std::vector<std::vector<Term>> tuples{{}};
        for (std::size_t k = 0; k < arity; ++k) {
            std::vector<std::vector<Term>> next;
            for (const auto& prefix : tuples) {
                for (const auto& d : domain) {
                    auto t = prefix;
                    t.push_back(d);
                    next.push_back(std::move(t));
                }
            }
            tuples = std::move(next);
        }
        for (auto& t : tuples) herbrand.emplace_back(name, std::move(t));
    }

    std::vector<Atom> freeAtoms;
    for (const auto& a : herbrand) {
        if (!database.contains(a)) freeAtoms.push_back(a);
    }
    if (freeAtoms.size() > 24)
        throw std::runtime_error("brute-force model space too large: " +
                                 std::to_string(freeAtoms.size()) + " free atoms");

    auto satisfies = [&](const Instance& model) {
        for (const auto& rule : ontology.rules()) {
            bool okRule = true;
            forEachAssignment(rule.universalVars(), domain, [&](const Assignment& assignment) {
                if (!okRule) return;
                if (!holdsIn(rule.body(), assignment, model)) return;
                bool satisfied = false;
                forEachAssignment(rule.existentialVars(), domain,
                                  [&](const Assignment& exAssignment) {
                                      if (satisfied) return;
                                      Assignment whole = assignment;
                                      for (const auto& [k, v] : exAssignment) whole.insert_or_assign(k, v);
                                      if (holdsIn(rule.head(), whole, model)) satisfied = true;
                                  });
                if (!satisfied) okRule = false;
            });
            if (!okRule) return false;
        }
        return true;
    };

    bool first = true;
    AnswerSet certain;
    for (std::uint64_t mask = 0; mask < (1ULL << freeAtoms.size()); ++mask) {
        Instance model = database;
        for (std::size_t i = 0; i < freeAtoms.size(); ++i) {
            if (mask & (1ULL << i)) model.insert(freeAtoms[i]);
        }
        if (!satisfies(model)) continue;
        AnswerSet answers = enumerationAnswers(query, model);
        if (first) {
            certain = std::move(answers);
            first = false;
        } else {
            AnswerSet intersected;
            std::set_intersection(certain.begin(), certain.end(), answers.begin(), answers.end(),
                                  std::inserter(intersected, intersected.begin()));
            certain = std::move(intersected);
        }
        if (certain.empty()) break; // intersection can only shrink
    }
    if (first) throw std::runtime_error("no model found in the bounded space");
    return certain;
}

// --- structural isomorphism -------------------------------------------------

namespace {

class VarBijection {
public:
    bool match(const Term& a, const Term& b) {
        auto fw = forward_.find(a);
        auto bw = backward_.find(b);
        if (fw == forward_.end() && bw == backward_.end()) {
            forward_.emplace(a, b);
            backward_.emplace(b, a);
            return true;
        }
        return fw != forward_.end() && bw != backward_.end() && fw->second == b && bw->second == a;
    }

private:
    std::map<Term, Term> forward_;
    std::map<Term, Term> backward_;
};

bool isoAtomLists(const std::vector<Atom>& a, const std::vector<Atom>& b, VarBijection& vars) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].predicate() != b[i].predicate() || a[i].arity() != b[i].arity()) return false;
        for (std::size_t k = 0; k < a[i].args().size(); ++k) {
            const Term& x = a[i].args()[k];
            const Term& y = b[i].args()[k];
            if (x.isVariable() != y.isVariable()) return false;
            if (x.isVariable()) {
                if (!vars.match(x, y)) return false;
            } else if (!(x == y)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

bool isoRules(const Tgd& a, const Tgd& b) {
    VarBijection vars;
    return isoAtomLists(a.body(), b.body(), vars) && isoAtomLists(a.head(), b.head(), vars);
}

bool isoOntologies(const Ontology& a, const Ontology& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!isoRules(a.rule(i), b.rule(i))) return false;
    }
    return true;
}

bool isoQueries(const ConjunctiveQuery& a, const ConjunctiveQuery& b) {
    if (a.outputs().size() != b.outputs().size()) return false;
    VarBijection vars;
    if (!isoAtomLists(a.body(), b.body(), vars)) return false;
    for (std::size_t i = 0; i < a.outputs().size(); ++i) {
        if (!vars.match(a.outputs()[i], b.outputs()[i])) return false;
    }
    return true;
}

bool isoPrograms(const Program& a, const Program& b) {
    if (!(a.database == b.database)) return false;
    if (!isoOntologies(a.ontology, b.ontology)) return false;
    if (a.queries.size() != b.queries.size()) return false;
    for (std::size_t i = 0; i < a.queries.size(); ++i) {
        if (!isoQueries(a.queries[i], b.queries[i])) return false;
    }
    return true;
}

// --- CLI --------------------------------------------------------------------

CliResult runCli(const std::vector<std::string>& args) {
    std::string command = std::string(DTGD_CLI_PATH);
    for (const auto& a : args) command += " '" + a + "'";
    command += " 2>&1";

    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    char buffer[4096];
    while (std::size_t n = fread(buffer, 1, sizeof(buffer), pipe)) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exitCode = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace dtgd::test
