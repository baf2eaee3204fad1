#pragma once

#include "dtgd/chase.h"
#include "dtgd/model.h"

#include <set>
#include <vector>

namespace dtgd {

using Tuple = std::vector<Term>;
using AnswerSet = std::set<Tuple>;

/// Evaluates a conjunctive query over an instance: all constant tuples that
/// some homomorphism assigns to the output variables. Existential query
/// variables may land on nulls; tuples touching a null are dropped. Matching
/// backtracks with a most-constrained-atom-first order; the result does not
/// depend on it.
AnswerSet evaluateQuery(const ConjunctiveQuery& query, const Instance& instance);

struct CertainAnswers {
    AnswerSet answers;
    bool exact = false;
};

/// Certain answers through the chase. Exact when the chase completed; under
/// a blown budget the set is a sound under-approximation.
CertainAnswers certainAnswersViaChase(const ConjunctiveQuery& query, const Database& database,
                                      const Ontology& ontology, const ChaseBudget& budget = {});

/// The Boolean query obtained by substituting the tuple for the output
/// variables. Throws ArityMismatchError on a length mismatch.
ConjunctiveQuery substituteOutputs(const ConjunctiveQuery& query, const Tuple& tuple);

} // namespace dtgd
