#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtgd {

/// Base for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text. Carries the 1-based source location.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line), col(col) {}

    std::size_t line;
    std::size_t col;
};

/// A predicate used with two different arities, or a tuple of the wrong length.
class ArityMismatchError : public Error {
public:
    ArityMismatchError(std::string predicate, std::size_t seen, std::size_t expected)
        : Error("arity mismatch for '" + predicate + "': seen " + std::to_string(seen) +
                ", expected " + std::to_string(expected)),
          predicate(std::move(predicate)), seen(seen), expected(expected) {}

    std::string predicate;
    std::size_t seen;
    std::size_t expected;
};

/// The null token `_:` is reserved for engine output and rejected on input.
class NullInInputError : public SyntaxError {
public:
    NullInInputError(std::size_t line, std::size_t col)
        : SyntaxError("null token '_:' is not allowed in input", line, col) {}
};

/// A rule set handed to a subset check contains rules foreign to the ontology.
class NotASubsetError : public Error {
public:
    explicit NotASubsetError(const std::string& ruleId)
        : Error("rule '" + ruleId + "' is not part of the ontology") {}
};

/// Unknown class name.
class UnsupportedClassError : public Error {
public:
    explicit UnsupportedClassError(const std::string& name)
        : Error("unsupported class '" + name + "'") {}
};

/// The ontology fails the dyadic membership test required by the pipeline.
class NotInDyadicClassError : public Error {
public:
    explicit NotInDyadicClassError(const std::string& className)
        : Error("ontology is not in DyadicOf(" + className + ")") {}
};

/// Database completion demands exact certain-answer calls.
class ReasonerInexactError : public Error {
public:
    explicit ReasonerInexactError(const std::string& detail)
        : Error("reasoner cannot guarantee exact answers: " + detail) {}
};

/// Queries may not mention reserved internal predicates.
class ReservedPredicateError : public Error {
public:
    explicit ReservedPredicateError(const std::string& predicate)
        : Error("predicate '" + predicate + "' uses the reserved '__' prefix") {}
};

} // namespace dtgd
