#pragma once

#include "dtgd/model.h"

#include <optional>
#include <vector>

namespace dtgd {

/// Work limits for a chase run. An absent bound means unlimited; callers
/// should only lift both bounds when the ontology carries a termination
/// certificate.
struct ChaseBudget {
    std::optional<std::size_t> maxAtoms = 100000;
    std::optional<std::size_t> maxLevel = 64;

    static ChaseBudget unlimited() { return {std::nullopt, std::nullopt}; }
};

enum class ChaseStatus { Completed, BudgetExhausted };

/// The instance produced by a chase run, with the derivation level of every
/// atom (database atoms sit at level 0) and the termination status.
class ChaseResult {
public:
    ChaseResult(Instance instance, std::vector<std::size_t> levels, ChaseStatus status)
        : instance_(std::move(instance)), levels_(std::move(levels)), status_(status) {}

    const Instance& instance() const { return instance_; }
    const std::vector<std::size_t>& levels() const { return levels_; }
    std::size_t level(const Atom& atom) const;
    std::size_t maxLevel() const;
    ChaseStatus status() const { return status_; }
    bool completed() const { return status_ == ChaseStatus::Completed; }

private:
    Instance instance_;
    std::vector<std::size_t> levels_;
    ChaseStatus status_;
};

/// Runs the oblivious chase: every trigger fires at most once and the nulls
/// it introduces are determined by the rule, the existential variable, and
/// the images of the universal variables, so the result does not depend on
/// processing order. Processing is still fixed (level-synchronous sweeps,
/// rules in declaration order, homomorphisms in lexicographic order of the
/// matched atoms) for reproducible atom ordering.
///
/// The database must be null-free and the ontology renamed apart.
ChaseResult runChase(const Database& database, const Ontology& ontology,
                     const ChaseBudget& budget = {});

/// The null-free part of the chase over the database's own constants.
std::vector<Atom> chaseBottom(const ChaseResult& result, const Database& database);

} // namespace dtgd
