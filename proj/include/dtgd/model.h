#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dtgd {

enum class TermKind { Constant, Variable, Null };

struct NullId;
using NullIdPtr = std::shared_ptr<const NullId>;

/// A term is a constant, a variable, or a labelled null. Values are immutable
/// and cheap to copy; nulls share their identity record.
///
/// Variables carry a rule-scope tag: two variables are the same only if both
/// name and tag agree, which lets renaming rules apart work without rewriting
/// names.
class Term {
public:
    static Term constant(std::string name);
    static Term variable(std::string name, int scope = 0);
    static Term null(NullIdPtr id);

    TermKind kind() const { return kind_; }
    bool isConstant() const { return kind_ == TermKind::Constant; }
    bool isVariable() const { return kind_ == TermKind::Variable; }
    bool isNull() const { return kind_ == TermKind::Null; }

    /// Constant or variable name. Empty for nulls.
    const std::string& name() const { return name_; }
    /// Rule-scope tag; meaningful for variables only.
    int scope() const { return scope_; }
    const NullId& nullId() const { return *null_; }

    Term withScope(int scope) const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }
    bool operator<(const Term& other) const;
    std::size_t hash() const;

private:
    Term(TermKind kind, std::string name, int scope, NullIdPtr id)
        : kind_(kind), name_(std::move(name)), scope_(scope), null_(std::move(id)) {}

    TermKind kind_;
    std::string name_;
    int scope_ = 0;
    NullIdPtr null_;
};

/// Identity of a labelled null: the rule, the existential variable, and the
/// images of the rule's universal variables at the trigger that created it.
/// Two nulls are equal exactly when all three parts agree, so re-deriving the
/// same trigger yields the same null.
struct NullId {
    std::string ruleId;
    std::string exVar;
    std::vector<std::pair<std::string, Term>> binding; // universal vars, body order

    NullId(std::string ruleId, std::string exVar,
           std::vector<std::pair<std::string, Term>> binding);

    bool operator==(const NullId& other) const;
    bool operator<(const NullId& other) const;
    std::size_t hash() const { return hash_; }

private:
    std::size_t hash_;
};

Term makeNull(std::string ruleId, std::string exVar,
              std::vector<std::pair<std::string, Term>> binding);

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Predicate symbol: a name with a fixed arity.
struct Predicate {
    std::string name;
    std::size_t arity = 0;

    bool operator==(const Predicate& o) const { return name == o.name && arity == o.arity; }
    bool operator<(const Predicate& o) const {
        return name != o.name ? name < o.name : arity < o.arity;
    }
};

/// Argument slot of a predicate; index is 1-based.
struct Position {
    std::string predicate;
    std::size_t index = 1;

    bool operator==(const Position& o) const {
        return predicate == o.predicate && index == o.index;
    }
    bool operator<(const Position& o) const {
        return predicate != o.predicate ? predicate < o.predicate : index < o.index;
    }
};

std::string to_string(const Position& pos);

class Atom {
public:
    Atom(std::string predicate, std::vector<Term> args);

    const std::string& predicate() const { return predicate_; }
    std::size_t arity() const { return args_.size(); }
    const std::vector<Term>& args() const { return args_; }

    bool ground() const;  // constants only
    bool hasNull() const;
    std::vector<Term> variables() const; // first-occurrence order

    bool operator==(const Atom& other) const;
    bool operator!=(const Atom& other) const { return !(*this == other); }
    bool operator<(const Atom& other) const;
    std::size_t hash() const { return hash_; }

private:
    std::string predicate_;
    std::vector<Term> args_;
    std::size_t hash_;
};

struct AtomHash {
    std::size_t operator()(const Atom& a) const { return a.hash(); }
};

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);

/// An existential rule: nonempty body and head, no nulls. Existential
/// variables are the head variables absent from the body. Atom lists are
/// deduplicated but keep their insertion order.
class Tgd {
public:
    Tgd(std::string id, std::vector<Atom> body, std::vector<Atom> head);

    const std::string& id() const { return id_; }
    const std::vector<Atom>& body() const { return body_; }
    const std::vector<Atom>& head() const { return head_; }

    /// Body variables in first-occurrence order.
    const std::vector<Term>& universalVars() const { return uvars_; }
    /// Head-only variables in head-occurrence order.
    const std::vector<Term>& existentialVars() const { return exvars_; }
    /// Variables shared by body and head, in body order.
    const std::vector<Term>& frontier() const { return frontier_; }

    bool isUniversal(const Term& v) const;
    bool isExistential(const Term& v) const;
    bool isFrontier(const Term& v) const;

    bool isDatalog() const { return exvars_.empty() && head_.size() == 1; }

    std::set<std::string> bodyPredicates() const;
    std::set<std::string> headPredicates() const;

    Tgd withScope(int scope) const;   // retags every variable
    Tgd withId(std::string id) const;

private:
    std::string id_;
    std::vector<Atom> body_;
    std::vector<Atom> head_;
    std::vector<Term> uvars_;
    std::vector<Term> exvars_;
    std::vector<Term> frontier_;
};

/// An ordered rule set with a derived schema. Construction checks that rule
/// ids are unique and every predicate keeps one arity.
class Ontology {
public:
    Ontology() = default;
    explicit Ontology(std::vector<Tgd> rules);

    const std::vector<Tgd>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }
    const Tgd& rule(std::size_t i) const { return rules_.at(i); }
    std::optional<std::size_t> findRule(const std::string& id) const;

    /// Predicates occurring in some rule, with their arities.
    const std::map<std::string, std::size_t>& schema() const { return schema_; }
    std::size_t maxArity() const;

    std::set<std::string> bodyPredicates() const;
    std::set<std::string> headPredicates() const;
    std::vector<Term> existentialVars() const; // rule order
    std::set<Term> constants() const;

    /// True when no variable identity is shared between two rules.
    bool variableDisjoint() const;

private:
    std::vector<Tgd> rules_;
    std::map<std::string, std::size_t> schema_;
};

/// Tags every rule's variables with a distinct scope so that no variable is
/// shared across rules. Already-disjoint ontologies are returned unchanged;
/// the operation is idempotent.
Ontology renameApart(const Ontology& ontology);

/// One Position per (predicate, index) pair of the schema, sorted.
std::vector<Position> positionsOf(const Ontology& ontology);

/// Concatenates two ontologies, prefixing rule ids to keep them unique, and
/// renames the result apart.
Ontology unionOntologies(const Ontology& a, const Ontology& b,
                         const std::string& prefixA, const std::string& prefixB);

/// A conjunctive query: ordered output variables over a nonempty, null-free
/// body. Existential variables are the body variables not in the output.
class ConjunctiveQuery {
public:
    ConjunctiveQuery(std::vector<Term> outputs, std::vector<Atom> body);

    const std::vector<Term>& outputs() const { return outputs_; }
    const std::vector<Atom>& body() const { return body_; }
    const std::vector<Term>& existentialVars() const { return exvars_; }
    bool boolean() const { return outputs_.empty(); }

private:
    std::vector<Term> outputs_;
    std::vector<Atom> body_;
    std::vector<Term> exvars_;
};

/// A deduplicated atom set with insertion order and per-predicate indexing.
/// Doubles as the database type (facts only, enforced by the parser).
class Instance {
public:
    Instance() = default;
    explicit Instance(const std::vector<Atom>& atoms);

    bool insert(const Atom& atom);            // false when already present
    bool contains(const Atom& atom) const;
    std::optional<std::size_t> indexOf(const Atom& atom) const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    /// Indices of atoms with the given predicate, in insertion order.
    const std::vector<std::size_t>& withPredicate(const std::string& predicate) const;

    std::set<Term> constants() const;

    bool operator==(const Instance& other) const;

private:
    std::vector<Atom> atoms_;
    std::unordered_map<Atom, std::size_t, AtomHash> index_;
    std::unordered_map<std::string, std::vector<std::size_t>> byPredicate_;
};

using Database = Instance;

} // namespace dtgd
