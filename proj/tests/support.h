#pragma once

#include "dtgd/chase.h"
#include "dtgd/decomposition.h"
#include "dtgd/dyadic.h"
#include "dtgd/evaluation.h"
#include "dtgd/model.h"
#include "dtgd/parser.h"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dtgd::test {

// --- fixtures ---------------------------------------------------------------

std::string fixturePath(const std::string& name);
std::string readFile(const std::string& path);
Program parseFixture(const std::string& name);
Program parseText(const std::string& text);

/// Scratch path outside the source tree for files tests create themselves.
std::string scratchPath(const std::string& name);
void writeFile(const std::string& path, const std::string& content);

// --- randomness -------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::size_t below(std::size_t n) {
        return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
    }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p; }

    template <class T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 eng_;
};

// --- generators -------------------------------------------------------------

struct GenOptions {
    std::size_t maxRules = 4;
    std::size_t maxBodyAtoms = 3;
    std::size_t maxHeadAtoms = 2;
    std::size_t maxArity = 3;
    std::size_t predicateCount = 4;
    double existentialChance = 0.4;
    double constantChance = 0.1;
};

Ontology randomOntology(Rng& rng, const GenOptions& options = {});
Ontology randomDatalog(Rng& rng, std::size_t maxRules = 8, std::size_t maxArity = 3);
Ontology randomAfInds(Rng& rng, std::size_t maxRules = 6, std::size_t maxArity = 3);
Ontology randomInclusionDependencies(Rng& rng);
Ontology randomLinear(Rng& rng);
Ontology randomJoinless(Rng& rng);
Ontology randomGuarded(Rng& rng);

Database randomDatabase(Rng& rng, const Ontology& schemaSource, std::size_t maxFacts,
                        std::size_t constantPool = 4);
ConjunctiveQuery randomQuery(Rng& rng, const std::map<std::string, std::size_t>& schema,
                             std::size_t maxAtoms = 3, std::size_t maxVars = 4);
Program randomProgram(Rng& rng);

/// A valid dyadic pair whose component is weakly acyclic. Retries generation
/// until the pair passes validation.
DyadicPair randomWeaklyAcyclicPair(Rng& rng);

// --- independent oracles ----------------------------------------------------

/// Query evaluation by exhaustive substitution of every variable assignment
/// over the instance domain. Quadratic and proud of it.
AnswerSet enumerationAnswers(const ConjunctiveQuery& query, const Instance& instance);

/// Forward closure of a datalog program by semi-naive delta iteration, with
/// its own matching code.
Instance semiNaiveClosure(const Ontology& datalog, const Database& database);

/// Certain answers by enumerating every model over the given domain that is
/// contained in the Herbrand base and contains the database. The domain must
/// be big enough to embed a model the chase would build; the free part of the
/// Herbrand base is capped at 24 atoms.
AnswerSet bruteForceCertainAnswers(const ConjunctiveQuery& query, const Database& database,
                                   const Ontology& ontology, const std::vector<Term>& domain);

// --- structural isomorphism -------------------------------------------------

bool isoRules(const Tgd& a, const Tgd& b);
bool isoOntologies(const Ontology& a, const Ontology& b);
bool isoQueries(const ConjunctiveQuery& a, const ConjunctiveQuery& b);
bool isoPrograms(const Program& a, const Program& b);

// --- CLI --------------------------------------------------------------------

struct CliResult {
    int exitCode = -1;
    std::string output; // stdout and stderr combined
};

CliResult runCli(const std::vector<std::string>& args);

} // namespace dtgd::test
