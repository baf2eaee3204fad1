#include "dtgd/chase.h"

#include "matching.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace dtgd {

namespace {

struct TriggerKey {
    std::size_t rule;
    std::vector<Term> images; // universal variables, body order

    bool operator==(const TriggerKey& other) const {
        return rule == other.rule && images == other.images;
    }
};

struct TriggerKeyHash {
    std::size_t operator()(const TriggerKey& key) const {
        std::size_t seed = key.rule;
        for (const auto& t : key.images)
            seed ^= t.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        return seed;
    }
};

} // namespace

std::size_t ChaseResult::level(const Atom& atom) const {
    auto idx = instance_.indexOf(atom);
    if (!idx) throw std::out_of_range("atom not in chase result: " + to_string(atom));
    return levels_[*idx];
}

std::size_t ChaseResult::maxLevel() const {
    std::size_t m = 0;
    for (auto l : levels_) m = std::max(m, l);
    return m;
}

ChaseResult runChase(const Database& database, const Ontology& ontology,
                     const ChaseBudget& budget) {
    Instance instance;
    std::vector<std::size_t> levels;
    for (const auto& a : database.atoms()) {
        if (a.hasNull()) throw std::invalid_argument("database contains a null");
        if (instance.insert(a)) levels.push_back(0);
    }

    std::unordered_set<TriggerKey, TriggerKeyHash> fired;
    bool blocked = false;

    while (true) {
        blocked = false;
        bool progress = false;
        std::size_t snapshot = instance.size();

        // Pending atoms of this sweep; inserted after enumeration so the
        // snapshot stays stable.
        std::vector<std::pair<Atom, std::size_t>> pending;
        Instance pendingSet;

        for (std::size_t r = 0; r < ontology.size(); ++r) {
            const Tgd& rule = ontology.rule(r);
            detail::Binding binding;
            detail::forEachMatch(
                rule.body(), instance, snapshot, binding,
                [&](const detail::Binding& b, const std::vector<std::size_t>& matchedIdx) {
                    TriggerKey key{r, {}};
                    key.images.reserve(rule.universalVars().size());
                    for (const auto& v : rule.universalVars())
                        key.images.push_back(detail::apply(b, v));
                    if (fired.count(key)) return true;

                    std::size_t level = 1;
                    for (auto idx : matchedIdx) level = std::max(level, levels[idx] + 1);

                    // Existential variables take nulls determined by the trigger.
                    detail::Binding extended = b;
                    for (const auto& z : rule.existentialVars()) {
                        std::vector<std::pair<std::string, Term>> nullBinding;
                        for (std::size_t i = 0; i < rule.universalVars().size(); ++i) {
                            nullBinding.emplace_back(rule.universalVars()[i].name(),
                                                     key.images[i]);
                        }
                        extended.push(z, makeNull(rule.id(), z.name(), std::move(nullBinding)));
                    }

                    std::vector<Atom> toAdd;
                    for (const auto& headAtom : rule.head()) {
                        Atom image = detail::apply(extended, headAtom);
                        if (!instance.contains(image) && !pendingSet.contains(image))
                            toAdd.push_back(std::move(image));
                    }
                    if (toAdd.empty()) {
                        fired.insert(std::move(key));
                        return true;
                    }
                    if (budget.maxLevel && level > *budget.maxLevel) {
                        blocked = true;
                        return true;
                    }
                    if (budget.maxAtoms &&
                        instance.size() + pending.size() + toAdd.size() > *budget.maxAtoms) {
                        blocked = true;
                        return true;
                    }
                    fired.insert(std::move(key));
                    for (auto& a : toAdd) {
                        pendingSet.insert(a);
                        pending.emplace_back(std::move(a), level);
                    }
                    progress = true;
                    return true;
                });
        }

        for (auto& [atom, level] : pending) {
            if (instance.insert(atom)) levels.push_back(level);
        }
        if (!progress) {
            return ChaseResult(std::move(instance), std::move(levels),
                               blocked ? ChaseStatus::BudgetExhausted : ChaseStatus::Completed);
        }
    }
}

std::vector<Atom> chaseBottom(const ChaseResult& result, const Database& database) {
    std::set<Term> domain = database.constants();
    std::vector<Atom> out;
    for (const auto& a : result.instance().atoms()) {
        if (a.hasNull()) continue;
        bool inDomain = std::all_of(a.args().begin(), a.args().end(),
                                    [&](const Term& t) { return domain.count(t) > 0; });
        if (inDomain) out.push_back(a);
    }
    return out;
}

} // namespace dtgd
