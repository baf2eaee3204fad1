#include "dtgd/dyadic.h"

#include "dtgd/errors.h"

#include <algorithm>

namespace dtgd {

namespace {

const std::array<RuleClass, 4> kTerminatingClasses = {
    RuleClass::Datalog, RuleClass::AfInds, RuleClass::WeaklyAcyclic, RuleClass::JointlyAcyclic};

// Joint acyclicity bounds the chase that reuses nulls per frontier image, not
// the one implemented here, which keys nulls on the whole trigger; a jointly
// acyclic rule like R(x,y) -> R(y,z) diverges under it. Unlimited runs are
// therefore gated on the certificates that are sound for this chase.
const std::array<RuleClass, 3> kSoundCertificates = {RuleClass::Datalog, RuleClass::AfInds,
                                                     RuleClass::WeaklyAcyclic};

/// Builds the body query of a head-ground rule: the distinct head-atom
/// variables, in argument order, become the outputs.
ConjunctiveQuery bodyQuery(const Tgd& rule) {
    const Atom& head = rule.head().front();
    std::vector<Term> outputs;
    for (const auto& t : head.args()) {
        if (t.isVariable() && std::find(outputs.begin(), outputs.end(), t) == outputs.end())
            outputs.push_back(t);
    }
    return ConjunctiveQuery(std::move(outputs), rule.body());
}

Atom headFact(const Tgd& rule, const ConjunctiveQuery& query, const Tuple& tuple) {
    const Atom& head = rule.head().front();
    std::vector<Term> args;
    args.reserve(head.args().size());
    for (const auto& t : head.args()) {
        if (t.isConstant()) {
            args.push_back(t);
        } else {
            auto it = std::find(query.outputs().begin(), query.outputs().end(), t);
            args.push_back(tuple[static_cast<std::size_t>(it - query.outputs().begin())]);
        }
    }
    return Atom(head.predicate(), std::move(args));
}

/// All length-k tuples over the given constants, in lexicographic order.
std::vector<Tuple> allTuples(const std::vector<Term>& constants, std::size_t k) {
    std::vector<Tuple> out{Tuple{}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Tuple> next;
        next.reserve(out.size() * constants.size());
        for (const auto& prefix : out) {
            for (const auto& c : constants) {
                Tuple t = prefix;
                t.push_back(c);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

void requireExact(const CertainAnswers& result, const CertainAnswerReasoner& reasoner) {
    if (!result.exact)
        throw ReasonerInexactError(reasoner.name() +
                                   " returned an approximate answer during completion");
}

} // namespace

CertainAnswers TerminatingChaseReasoner::certainAnswers(const ConjunctiveQuery& query,
                                                        const Database& database,
                                                        const Ontology& ontology) {
    Ontology renamed = renameApart(ontology);
    bool certified = std::any_of(kSoundCertificates.begin(), kSoundCertificates.end(),
                                 [&](RuleClass c) {
                                     return recognize(renamed, ClassName::plain(c)).member;
                                 });
    if (!certified)
        throw UnsupportedClassError("ontology carries no termination certificate");

    ChaseBudget budget = ChaseBudget::unlimited();
    budget.maxAtoms = safetyAtomBound_;
    ChaseResult result = runChase(database, renamed, budget);
    if (!result.completed())
        throw Error("chase exceeded the safety bound despite a termination certificate");
    return {evaluateQuery(query, result.instance()), true};
}

bool TerminatingChaseReasoner::supports(const ClassName& className) const {
    if (className.dyadic) return false;
    return std::find(kTerminatingClasses.begin(), kTerminatingClasses.end(), className.base) !=
           kTerminatingClasses.end();
}

CertainAnswers BoundedChaseReasoner::certainAnswers(const ConjunctiveQuery& query,
                                                    const Database& database,
                                                    const Ontology& ontology) {
    ChaseResult result = runChase(database, renameApart(ontology), budget_);
    return {evaluateQuery(query, result.instance()), result.completed()};
}

CompletedDatabase completeDatabase(const Database& database, const DyadicPair& pair,
                                   CertainAnswerReasoner& reasoner, CompletionStrategy strategy) {
    CompletedDatabase out;
    out.dPlus = database;

    // Candidate constants for the enumeration strategy: the growing database
    // plus the constants mentioned by the pair itself.
    std::set<Term> ruleConstants = pair.headGround.constants();
    for (const auto& c : pair.component.constants()) ruleConstants.insert(c);

    while (true) {
        ++out.passes;
        std::vector<Atom> derived;
        for (const auto& rule : pair.headGround.rules()) {
            ConjunctiveQuery query = bodyQuery(rule);
            if (strategy == CompletionStrategy::AnswerSets) {
                CertainAnswers result =
                    reasoner.certainAnswers(query, out.dPlus, pair.component);
                requireExact(result, reasoner);
                for (const auto& tuple : result.answers)
                    derived.push_back(headFact(rule, query, tuple));
            } else {
                std::set<Term> pool = ruleConstants;
                auto dbConstants = out.dPlus.constants();
                pool.insert(dbConstants.begin(), dbConstants.end());
                std::vector<Term> constants(pool.begin(), pool.end());
                for (const auto& tuple : allTuples(constants, query.outputs().size())) {
                    ConjunctiveQuery bcq = substituteOutputs(query, tuple);
                    CertainAnswers result =
                        reasoner.certainAnswers(bcq, out.dPlus, pair.component);
                    requireExact(result, reasoner);
                    if (!result.answers.empty())
                        derived.push_back(headFact(rule, query, tuple));
                }
            }
        }

        bool grew = false;
        for (const auto& a : derived) {
            if (!out.dPlus.contains(a)) { grew = true; break; }
        }
        if (!grew) break;
        for (const auto& a : derived) {
            if (out.dPlus.insert(a)) out.added.push_back(a);
        }
    }
    return out;
}

bool dpCertEval(const ConjunctiveQuery& query, const Database& database, const DyadicPair& pair,
                const Tuple& tuple, CertainAnswerReasoner& reasoner) {
    ConjunctiveQuery bcq = substituteOutputs(query, tuple);
    CompletedDatabase completed = completeDatabase(database, pair, reasoner);
    CertainAnswers result = reasoner.certainAnswers(bcq, completed.dPlus, pair.component);
    return !result.answers.empty();
}

CertainAnswers dpCertainAnswers(const ConjunctiveQuery& query, const Database& database,
                                const DyadicPair& pair, CertainAnswerReasoner& reasoner) {
    CompletedDatabase completed = completeDatabase(database, pair, reasoner);
    return reasoner.certainAnswers(query, completed.dPlus, pair.component);
}

namespace {

void rejectReservedPredicates(const ConjunctiveQuery& query) {
    for (const auto& a : query.body()) {
        if (a.predicate().rfind("__", 0) == 0) throw ReservedPredicateError(a.predicate());
    }
}

} // namespace

bool certEvalDyadic(const ConjunctiveQuery& query, const Database& database,
                    const Ontology& ontology, const Tuple& tuple, const ClassName& className,
                    CertainAnswerReasoner& reasoner) {
    rejectReservedPredicates(query);
    DyadicPair pair = decompose(ontology, className);
    return dpCertEval(query, database, pair, tuple, reasoner);
}

CertainAnswers certainAnswersDyadic(const ConjunctiveQuery& query, const Database& database,
                                    const Ontology& ontology, const ClassName& className,
                                    CertainAnswerReasoner& reasoner) {
    rejectReservedPredicates(query);
    DyadicPair pair = decompose(ontology, className);
    return dpCertainAnswers(query, database, pair, reasoner);
}

} // namespace dtgd
