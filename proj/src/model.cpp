#include "dtgd/model.h"

#include "dtgd/errors.h"

#include <algorithm>
#include <stdexcept>

namespace dtgd {

namespace {

std::size_t hashCombine(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

// ---------------------------------------------------------------------------
// Term

Term Term::constant(std::string name) {
    return Term(TermKind::Constant, std::move(name), 0, nullptr);
}

Term Term::variable(std::string name, int scope) {
    return Term(TermKind::Variable, std::move(name), scope, nullptr);
}

Term Term::null(NullIdPtr id) {
    if (!id) throw std::invalid_argument("null term requires an identity");
    return Term(TermKind::Null, "", 0, std::move(id));
}

Term Term::withScope(int scope) const {
    if (!isVariable()) return *this;
    return variable(name_, scope);
}

bool Term::operator==(const Term& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case TermKind::Constant: return name_ == other.name_;
        case TermKind::Variable: return name_ == other.name_ && scope_ == other.scope_;
        case TermKind::Null:
            return null_ == other.null_ || *null_ == *other.null_;
    }
    return false;
}

bool Term::operator<(const Term& other) const {
    if (kind_ != other.kind_) return kind_ < other.kind_;
    switch (kind_) {
        case TermKind::Constant: return name_ < other.name_;
        case TermKind::Variable:
            return name_ != other.name_ ? name_ < other.name_ : scope_ < other.scope_;
        case TermKind::Null:
            if (null_ == other.null_) return false;
            return *null_ < *other.null_;
    }
    return false;
}

std::size_t Term::hash() const {
    std::size_t seed = static_cast<std::size_t>(kind_) + 1;
    switch (kind_) {
        case TermKind::Constant:
            return hashCombine(seed, std::hash<std::string>{}(name_));
        case TermKind::Variable:
            return hashCombine(hashCombine(seed, std::hash<std::string>{}(name_)),
                               std::hash<int>{}(scope_));
        case TermKind::Null:
            return hashCombine(seed, null_->hash());
    }
    return seed;
}

// ---------------------------------------------------------------------------
// NullId

NullId::NullId(std::string ruleId, std::string exVar,
               std::vector<std::pair<std::string, Term>> binding)
    : ruleId(std::move(ruleId)), exVar(std::move(exVar)), binding(std::move(binding)) {
    std::size_t seed = std::hash<std::string>{}(this->ruleId);
    seed = hashCombine(seed, std::hash<std::string>{}(this->exVar));
    for (const auto& [name, term] : this->binding) {
        seed = hashCombine(seed, std::hash<std::string>{}(name));
        seed = hashCombine(seed, term.hash());
    }
    hash_ = seed;
}

bool NullId::operator==(const NullId& other) const {
    return hash_ == other.hash_ && ruleId == other.ruleId && exVar == other.exVar &&
           binding == other.binding;
}

bool NullId::operator<(const NullId& other) const {
    if (ruleId != other.ruleId) return ruleId < other.ruleId;
    if (exVar != other.exVar) return exVar < other.exVar;
    if (binding.size() != other.binding.size()) return binding.size() < other.binding.size();
    for (std::size_t i = 0; i < binding.size(); ++i) {
        if (binding[i].first != other.binding[i].first)
            return binding[i].first < other.binding[i].first;
        if (binding[i].second != other.binding[i].second)
            return binding[i].second < other.binding[i].second;
    }
    return false;
}

Term makeNull(std::string ruleId, std::string exVar,
              std::vector<std::pair<std::string, Term>> binding) {
    return Term::null(std::make_shared<const NullId>(std::move(ruleId), std::move(exVar),
                                                     std::move(binding)));
}

// ---------------------------------------------------------------------------
// Atom

Atom::Atom(std::string predicate, std::vector<Term> args)
    : predicate_(std::move(predicate)), args_(std::move(args)) {
    std::size_t seed = std::hash<std::string>{}(predicate_);
    for (const auto& t : args_) seed = hashCombine(seed, t.hash());
    hash_ = seed;
}

bool Atom::ground() const {
    return std::all_of(args_.begin(), args_.end(),
                       [](const Term& t) { return t.isConstant(); });
}

bool Atom::hasNull() const {
    return std::any_of(args_.begin(), args_.end(),
                       [](const Term& t) { return t.isNull(); });
}

std::vector<Term> Atom::variables() const {
    std::vector<Term> vars;
    for (const auto& t : args_) {
        if (t.isVariable() && std::find(vars.begin(), vars.end(), t) == vars.end())
            vars.push_back(t);
    }
    return vars;
}

bool Atom::operator==(const Atom& other) const {
    return hash_ == other.hash_ && predicate_ == other.predicate_ && args_ == other.args_;
}

bool Atom::operator<(const Atom& other) const {
    if (predicate_ != other.predicate_) return predicate_ < other.predicate_;
    if (args_.size() != other.args_.size()) return args_.size() < other.args_.size();
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (args_[i] != other.args_[i]) return args_[i] < other.args_[i];
    }
    return false;
}

// ---------------------------------------------------------------------------
// printing

std::string to_string(const Position& pos) {
    return pos.predicate + "[" + std::to_string(pos.index) + "]";
}

std::string to_string(const Term& term) {
    switch (term.kind()) {
        case TermKind::Constant:
            return term.name();
        case TermKind::Variable:
            return term.scope() == 0 ? term.name()
                                     : term.name() + std::to_string(term.scope());
        case TermKind::Null: {
            const NullId& id = term.nullId();
            std::string out = "_:" + id.ruleId + "_" + id.exVar;
            for (const auto& [name, value] : id.binding) out += "_" + to_string(value);
            return out;
        }
    }
    return {};
}

std::string to_string(const Atom& atom) {
    std::string out = atom.predicate() + "(";
    for (std::size_t i = 0; i < atom.args().size(); ++i) {
        if (i > 0) out += ",";
        out += to_string(atom.args()[i]);
    }
    out += ")";
    return out;
}

// ---------------------------------------------------------------------------
// Tgd

namespace {

std::vector<Atom> dedup(std::vector<Atom> atoms) {
    std::vector<Atom> out;
    for (auto& a : atoms) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    }
    return out;
}

void collectVars(const std::vector<Atom>& atoms, std::vector<Term>& out) {
    for (const auto& a : atoms) {
        for (const auto& t : a.args()) {
            if (t.isVariable() && std::find(out.begin(), out.end(), t) == out.end())
                out.push_back(t);
        }
    }
}

} // namespace

Tgd::Tgd(std::string id, std::vector<Atom> body, std::vector<Atom> head)
    : id_(std::move(id)), body_(dedup(std::move(body))), head_(dedup(std::move(head))) {
    if (body_.empty()) throw std::invalid_argument("rule '" + id_ + "': empty body");
    if (head_.empty()) throw std::invalid_argument("rule '" + id_ + "': empty head");
    for (const auto& a : body_)
        if (a.hasNull()) throw std::invalid_argument("rule '" + id_ + "': null in body");
    for (const auto& a : head_)
        if (a.hasNull()) throw std::invalid_argument("rule '" + id_ + "': null in head");

    collectVars(body_, uvars_);
    std::vector<Term> headVars;
    collectVars(head_, headVars);
    for (const auto& v : headVars) {
        if (std::find(uvars_.begin(), uvars_.end(), v) == uvars_.end()) exvars_.push_back(v);
    }
    for (const auto& v : uvars_) {
        if (std::find(headVars.begin(), headVars.end(), v) != headVars.end())
            frontier_.push_back(v);
    }
}

bool Tgd::isUniversal(const Term& v) const {
    return std::find(uvars_.begin(), uvars_.end(), v) != uvars_.end();
}

bool Tgd::isExistential(const Term& v) const {
    return std::find(exvars_.begin(), exvars_.end(), v) != exvars_.end();
}

bool Tgd::isFrontier(const Term& v) const {
    return std::find(frontier_.begin(), frontier_.end(), v) != frontier_.end();
}

std::set<std::string> Tgd::bodyPredicates() const {
    std::set<std::string> out;
    for (const auto& a : body_) out.insert(a.predicate());
    return out;
}

std::set<std::string> Tgd::headPredicates() const {
    std::set<std::string> out;
    for (const auto& a : head_) out.insert(a.predicate());
    return out;
}

namespace {

Atom retagAtom(const Atom& a, int scope) {
    std::vector<Term> args;
    args.reserve(a.args().size());
    for (const auto& t : a.args()) args.push_back(t.withScope(scope));
    return Atom(a.predicate(), std::move(args));
}

} // namespace

Tgd Tgd::withScope(int scope) const {
    std::vector<Atom> body, head;
    for (const auto& a : body_) body.push_back(retagAtom(a, scope));
    for (const auto& a : head_) head.push_back(retagAtom(a, scope));
    return Tgd(id_, std::move(body), std::move(head));
}

Tgd Tgd::withId(std::string id) const {
    return Tgd(std::move(id), body_, head_);
}

// ---------------------------------------------------------------------------
// Ontology

Ontology::Ontology(std::vector<Tgd> rules) : rules_(std::move(rules)) {
    std::set<std::string> ids;
    for (const auto& r : rules_) {
        if (!ids.insert(r.id()).second)
            throw std::invalid_argument("duplicate rule id '" + r.id() + "'");
        for (const auto* atoms : {&r.body(), &r.head()}) {
            for (const auto& a : *atoms) {
                auto [it, inserted] = schema_.emplace(a.predicate(), a.arity());
                if (!inserted && it->second != a.arity())
                    throw ArityMismatchError(a.predicate(), a.arity(), it->second);
            }
        }
    }
}

std::optional<std::size_t> Ontology::findRule(const std::string& id) const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].id() == id) return i;
    }
    return std::nullopt;
}

std::size_t Ontology::maxArity() const {
    std::size_t m = 0;
    for (const auto& [name, arity] : schema_) m = std::max(m, arity);
    return m;
}

std::set<std::string> Ontology::bodyPredicates() const {
    std::set<std::string> out;
    for (const auto& r : rules_) {
        auto p = r.bodyPredicates();
        out.insert(p.begin(), p.end());
    }
    return out;
}

std::set<std::string> Ontology::headPredicates() const {
    std::set<std::string> out;
    for (const auto& r : rules_) {
        auto p = r.headPredicates();
        out.insert(p.begin(), p.end());
    }
    return out;
}

std::vector<Term> Ontology::existentialVars() const {
    std::vector<Term> out;
    for (const auto& r : rules_) {
        out.insert(out.end(), r.existentialVars().begin(), r.existentialVars().end());
    }
    return out;
}

std::set<Term> Ontology::constants() const {
    std::set<Term> out;
    for (const auto& r : rules_) {
        for (const auto* atoms : {&r.body(), &r.head()}) {
            for (const auto& a : *atoms) {
                for (const auto& t : a.args())
                    if (t.isConstant()) out.insert(t);
            }
        }
    }
    return out;
}

bool Ontology::variableDisjoint() const {
    std::set<Term> seen;
    for (const auto& r : rules_) {
        std::set<Term> ruleVars(r.universalVars().begin(), r.universalVars().end());
        ruleVars.insert(r.existentialVars().begin(), r.existentialVars().end());
        for (const auto& v : ruleVars) {
            if (!seen.insert(v).second) return false;
        }
    }
    return true;
}

Ontology renameApart(const Ontology& ontology) {
    if (ontology.variableDisjoint()) return ontology;
    std::vector<Tgd> rules;
    rules.reserve(ontology.size());
    for (std::size_t i = 0; i < ontology.size(); ++i) {
        rules.push_back(ontology.rule(i).withScope(static_cast<int>(i) + 1));
    }
    return Ontology(std::move(rules));
}

std::vector<Position> positionsOf(const Ontology& ontology) {
    std::vector<Position> out;
    for (const auto& [name, arity] : ontology.schema()) {
        for (std::size_t i = 1; i <= arity; ++i) out.push_back(Position{name, i});
    }
    return out;
}

Ontology unionOntologies(const Ontology& a, const Ontology& b,
                         const std::string& prefixA, const std::string& prefixB) {
    std::vector<Tgd> rules;
    rules.reserve(a.size() + b.size());
    for (const auto& r : a.rules()) rules.push_back(r.withId(prefixA + r.id()));
    for (const auto& r : b.rules()) rules.push_back(r.withId(prefixB + r.id()));
    return renameApart(Ontology(std::move(rules)));
}

// ---------------------------------------------------------------------------
// ConjunctiveQuery

ConjunctiveQuery::ConjunctiveQuery(std::vector<Term> outputs, std::vector<Atom> body)
    : outputs_(std::move(outputs)), body_(dedup(std::move(body))) {
    if (body_.empty()) throw std::invalid_argument("query: empty body");
    for (const auto& a : body_)
        if (a.hasNull()) throw std::invalid_argument("query: null in body");

    std::vector<Term> bodyVars;
    collectVars(body_, bodyVars);
    for (const auto& v : outputs_) {
        if (!v.isVariable())
            throw std::invalid_argument("query: output terms must be variables");
        if (std::find(bodyVars.begin(), bodyVars.end(), v) == bodyVars.end())
            throw std::invalid_argument("query: output variable " + to_string(v) +
                                        " does not occur in the body");
    }
    for (const auto& v : bodyVars) {
        if (std::find(outputs_.begin(), outputs_.end(), v) == outputs_.end())
            exvars_.push_back(v);
    }
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(const std::vector<Atom>& atoms) {
    for (const auto& a : atoms) insert(a);
}

bool Instance::insert(const Atom& atom) {
    if (index_.count(atom)) return false;
    index_.emplace(atom, atoms_.size());
    byPredicate_[atom.predicate()].push_back(atoms_.size());
    atoms_.push_back(atom);
    return true;
}

bool Instance::contains(const Atom& atom) const { return index_.count(atom) > 0; }

std::optional<std::size_t> Instance::indexOf(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::size_t>& Instance::withPredicate(const std::string& predicate) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = byPredicate_.find(predicate);
    return it == byPredicate_.end() ? kEmpty : it->second;
}

std::set<Term> Instance::constants() const {
    std::set<Term> out;
    for (const auto& a : atoms_) {
        for (const auto& t : a.args())
            if (t.isConstant()) out.insert(t);
    }
    return out;
}

bool Instance::operator==(const Instance& other) const {
    if (size() != other.size()) return false;
    for (const auto& a : atoms_)
        if (!other.contains(a)) return false;
    return true;
}

} // namespace dtgd
