#include "dtgd/evaluation.h"

#include "dtgd/errors.h"
#include "matching.h"

#include <algorithm>
#include <stdexcept>

namespace dtgd {

namespace {

std::size_t candidateCount(const Atom& pattern, const Instance& instance,
                           detail::Binding& binding) {
    std::size_t mark = binding.size();
    std::size_t count = 0;
    for (auto idx : instance.withPredicate(pattern.predicate())) {
        if (detail::unify(pattern, instance.atoms()[idx], binding)) {
            binding.popTo(mark);
            ++count;
        }
    }
    return count;
}

} // namespace

AnswerSet evaluateQuery(const ConjunctiveQuery& query, const Instance& instance) {
    AnswerSet answers;
    const auto& body = query.body();
    std::vector<bool> done(body.size(), false);
    detail::Binding binding;

    auto collect = [&]() {
        Tuple tuple;
        tuple.reserve(query.outputs().size());
        for (const auto& v : query.outputs()) {
            Term value = detail::apply(binding, v);
            if (!value.isConstant()) return; // nulls are not answers
            tuple.push_back(std::move(value));
        }
        answers.insert(std::move(tuple));
    };

    std::function<void(std::size_t)> step = [&](std::size_t remaining) {
        if (remaining == 0) { collect(); return; }
        // Most constrained first: fewest matching facts under current bindings.
        std::size_t best = body.size();
        std::size_t bestCount = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (done[i]) continue;
            std::size_t count = candidateCount(body[i], instance, binding);
            if (best == body.size() || count < bestCount) { best = i; bestCount = count; }
        }
        if (bestCount == 0) return;
        done[best] = true;
        std::size_t mark = binding.size();
        for (auto idx : instance.withPredicate(body[best].predicate())) {
            if (!detail::unify(body[best], instance.atoms()[idx], binding)) continue;
            step(remaining - 1);
            binding.popTo(mark);
        }
        done[best] = false;
    };

    step(body.size());
    return answers;
}

CertainAnswers certainAnswersViaChase(const ConjunctiveQuery& query, const Database& database,
                                      const Ontology& ontology, const ChaseBudget& budget) {
    ChaseResult result = runChase(database, ontology, budget);
    return {evaluateQuery(query, result.instance()), result.completed()};
}

ConjunctiveQuery substituteOutputs(const ConjunctiveQuery& query, const Tuple& tuple) {
    if (tuple.size() != query.outputs().size())
        throw ArityMismatchError("query outputs", tuple.size(), query.outputs().size());
    for (const auto& t : tuple) {
        if (!t.isConstant())
            throw std::invalid_argument("tuple entries must be constants");
    }
    detail::Binding binding;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (!binding.lookup(query.outputs()[i])) binding.push(query.outputs()[i], tuple[i]);
        else if (*binding.lookup(query.outputs()[i]) != tuple[i])
            return ConjunctiveQuery({}, {Atom("__unsatisfiable", {})});
    }
    std::vector<Atom> body;
    body.reserve(query.body().size());
    for (const auto& a : query.body()) body.push_back(detail::apply(binding, a));
    return ConjunctiveQuery({}, std::move(body));
}

} // namespace dtgd
