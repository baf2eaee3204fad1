#pragma once

#include "dtgd/chase.h"
#include "dtgd/decomposition.h"
#include "dtgd/evaluation.h"
#include "dtgd/model.h"
#include "dtgd/recognizers.h"

#include <memory>
#include <string>
#include <vector>

namespace dtgd {

/// A certain-answer backend for the component ontology. Implementations
/// promise: when the exact flag is true, the answers equal the certain
/// answers.
class CertainAnswerReasoner {
public:
    virtual ~CertainAnswerReasoner() = default;

    virtual CertainAnswers certainAnswers(const ConjunctiveQuery& query,
                                          const Database& database,
                                          const Ontology& ontology) = 0;
    virtual bool supports(const ClassName& className) const = 0;
    virtual std::string name() const = 0;
};

/// Exact reasoner for chase-terminating classes (Datalog, AfInds,
/// WeaklyAcyclic, JointlyAcyclic). At run time it demands a certificate that
/// is sound for the trigger-keyed chase (Datalog, AfInds, or WeaklyAcyclic;
/// joint acyclicity alone does not bound that chase) and then runs without a
/// level bound, keeping a large atom guard that turns a certificate defect
/// into a loud failure instead of a hang.
class TerminatingChaseReasoner final : public CertainAnswerReasoner {
public:
    explicit TerminatingChaseReasoner(std::size_t safetyAtomBound = 10000000)
        : safetyAtomBound_(safetyAtomBound) {}

    CertainAnswers certainAnswers(const ConjunctiveQuery& query, const Database& database,
                                  const Ontology& ontology) override;
    bool supports(const ClassName& className) const override;
    std::string name() const override { return "terminating-chase"; }

private:
    std::size_t safetyAtomBound_;
};

/// Budget-bound chase reasoner for any class. Answers are exact only when
/// the chase completed; otherwise they are a sound under-approximation.
class BoundedChaseReasoner final : public CertainAnswerReasoner {
public:
    explicit BoundedChaseReasoner(ChaseBudget budget = {}) : budget_(budget) {}

    CertainAnswers certainAnswers(const ConjunctiveQuery& query, const Database& database,
                                  const Ontology& ontology) override;
    bool supports(const ClassName&) const override { return true; }
    std::string name() const override { return "bounded-chase"; }

private:
    ChaseBudget budget_;
};

/// How the completion derives the head facts of one rule: from the full
/// answer set of its body query, or by testing every candidate tuple over
/// the known constants one membership call at a time. Both produce the same
/// set; the enumeration exists for cross-checking.
enum class CompletionStrategy { AnswerSets, EnumerateCandidates };

struct CompletedDatabase {
    Database dPlus;
    std::vector<Atom> added;  // the head-ground consequences, insertion order
    std::size_t passes = 0;   // completion sweeps until the fixpoint
};

/// Saturates the database with the ground consequences of the head-ground
/// component, asking the reasoner for certain answers over the component
/// ontology until nothing new appears. Throws ReasonerInexactError when any
/// reasoner call cannot guarantee exactness.
CompletedDatabase completeDatabase(const Database& database, const DyadicPair& pair,
                                   CertainAnswerReasoner& reasoner,
                                   CompletionStrategy strategy = CompletionStrategy::AnswerSets);

/// Tuple membership in the certain answers over a dyadic pair: completes the
/// database, then asks the reasoner about the substituted Boolean query.
bool dpCertEval(const ConjunctiveQuery& query, const Database& database, const DyadicPair& pair,
                const Tuple& tuple, CertainAnswerReasoner& reasoner);

/// Full certain-answer set over a dyadic pair.
CertainAnswers dpCertainAnswers(const ConjunctiveQuery& query, const Database& database,
                                const DyadicPair& pair, CertainAnswerReasoner& reasoner);

/// End-to-end pipeline over an ontology in DyadicOf(class): decompose, then
/// answer through the pair. Queries over reserved predicates are rejected.
bool certEvalDyadic(const ConjunctiveQuery& query, const Database& database,
                    const Ontology& ontology, const Tuple& tuple, const ClassName& className,
                    CertainAnswerReasoner& reasoner);

CertainAnswers certainAnswersDyadic(const ConjunctiveQuery& query, const Database& database,
                                    const Ontology& ontology, const ClassName& className,
                                    CertainAnswerReasoner& reasoner);

} // namespace dtgd
