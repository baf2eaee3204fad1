#pragma once

#include "dtgd/model.h"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace dtgd::detail {

/// A small variable binding kept as a stack so backtracking is a pop.
class Binding {
public:
    const Term* lookup(const Term& var) const {
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
            if (it->first == var) return &it->second;
        }
        return nullptr;
    }

    void push(const Term& var, const Term& value) { entries_.emplace_back(var, value); }
    void popTo(std::size_t size) {
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(size), entries_.end());
    }
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::pair<Term, Term>>& entries() const { return entries_; }

private:
    std::vector<std::pair<Term, Term>> entries_;
};

/// Unifies a pattern atom with a concrete atom. Constants must match
/// themselves; variables extend the binding. Returns false and restores the
/// binding on failure.
inline bool unify(const Atom& pattern, const Atom& fact, Binding& binding) {
    if (pattern.predicate() != fact.predicate() || pattern.arity() != fact.arity())
        return false;
    std::size_t mark = binding.size();
    for (std::size_t i = 0; i < pattern.args().size(); ++i) {
        const Term& p = pattern.args()[i];
        const Term& f = fact.args()[i];
        if (p.isVariable()) {
            if (const Term* bound = binding.lookup(p)) {
                if (*bound != f) { binding.popTo(mark); return false; }
            } else {
                binding.push(p, f);
            }
        } else if (p != f) {
            binding.popTo(mark);
            return false;
        }
    }
    return true;
}

inline Term apply(const Binding& binding, const Term& term) {
    if (!term.isVariable()) return term;
    const Term* bound = binding.lookup(term);
    return bound ? *bound : term;
}

inline Atom apply(const Binding& binding, const Atom& atom) {
    std::vector<Term> args;
    args.reserve(atom.args().size());
    for (const auto& t : atom.args()) args.push_back(apply(binding, t));
    return Atom(atom.predicate(), std::move(args));
}

/// Enumerates every homomorphism from the pattern conjunction into the first
/// `limit` atoms of the instance. Pattern atoms are matched left to right and
/// candidates tried in insertion order, so homomorphisms appear in
/// lexicographic order of the matched atom indices. The callback gets the
/// binding and the matched indices; returning false stops the enumeration.
inline bool forEachMatch(
    const std::vector<Atom>& pattern, const Instance& instance, std::size_t limit,
    Binding& binding,
    const std::function<bool(const Binding&, const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> matched(pattern.size(), 0);

    std::function<bool(std::size_t)> step = [&](std::size_t i) -> bool {
        if (i == pattern.size()) return fn(binding, matched);
        std::size_t mark = binding.size();
        const auto& bucket = instance.withPredicate(pattern[i].predicate());
        for (std::size_t k = 0; k < bucket.size(); ++k) {
            std::size_t idx = bucket[k];
            if (idx >= limit) break;
            if (!unify(pattern[i], instance.atoms()[idx], binding)) continue;
            matched[i] = idx;
            if (!step(i + 1)) return false;
            binding.popTo(mark);
        }
        return true;
    };
    return step(0);
}

} // namespace dtgd::detail
