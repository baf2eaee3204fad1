#pragma once

#include "dtgd/model.h"

#include <string>
#include <vector>

namespace dtgd {

/// A parsed input file: facts, rules, and queries. Predicate arities are
/// consistent across all three parts.
struct Program {
    Database database;
    Ontology ontology;
    std::vector<ConjunctiveQuery> queries;
};

struct ParseOptions {
    /// Permit predicates with the reserved "__" prefix (engine output only).
    bool allowReservedPredicates = false;
};

/// Parses program text.
///
/// Identifiers starting lowercase or with a digit, and quoted strings, are
/// constants; identifiers starting uppercase are variables. `B1, ..., Bn ->
/// H1, ..., Hm .` is a rule whose head-only variables are existential;
/// `P(a,b).` is a fact; `?- X, Y : P(X,Y), Q(Y).` is a query with output
/// variables before the colon and `?- : ...` a Boolean query. `%` starts a
/// line comment. Rules receive ids r1, r2, ... in file order.
///
/// Throws SyntaxError, ArityMismatchError, or NullInInputError.
Program parseProgram(const std::string& text, const ParseOptions& options = {});

std::string serializeProgram(const Program& program);
std::string serializeOntology(const Ontology& ontology);
std::string serializeDatabase(const Database& database);
std::string serializeQuery(const ConjunctiveQuery& query);

} // namespace dtgd
