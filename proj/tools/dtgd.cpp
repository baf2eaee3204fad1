#include "dtgd/analysis.h"
#include "dtgd/chase.h"
#include "dtgd/decomposition.h"
#include "dtgd/dyadic.h"
#include "dtgd/errors.h"
#include "dtgd/evaluation.h"
#include "dtgd/parser.h"
#include "dtgd/recognizers.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dtgd::Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dtgd::Error("cannot write '" + path + "'");
    out << content;
}

std::string inputHash(const std::string& content) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json jsonHeader(const std::string& fileContent) {
    json out;
    out["tool_version"] = kToolVersion;
    out["input_hash"] = inputHash(fileContent);
    return out;
}

struct BudgetFlags {
    std::size_t maxAtoms = 100000;
    std::size_t maxLevel = 64;
    bool force = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-atoms", maxAtoms, "Chase atom bound, 0 for unlimited");
        cmd->add_option("--max-level", maxLevel, "Chase level bound, 0 for unlimited");
        cmd->add_flag("--force", force, "Allow an unlimited chase without a certificate");
    }

    dtgd::ChaseBudget budget(const dtgd::Ontology& ontology) const {
        dtgd::ChaseBudget out;
        out.maxAtoms = maxAtoms == 0 ? std::nullopt : std::optional<std::size_t>(maxAtoms);
        out.maxLevel = maxLevel == 0 ? std::nullopt : std::optional<std::size_t>(maxLevel);
        if ((!out.maxAtoms || !out.maxLevel) && !force && !hasCertificate(ontology))
            throw dtgd::Error(
                "unlimited chase requires a termination certificate or --force");
        return out;
    }

    static bool hasCertificate(const dtgd::Ontology& ontology) {
        dtgd::Ontology renamed = dtgd::renameApart(ontology);
        for (dtgd::RuleClass c : {dtgd::RuleClass::Datalog, dtgd::RuleClass::AfInds,
                                  dtgd::RuleClass::WeaklyAcyclic}) {
            if (dtgd::recognize(renamed, dtgd::ClassName::plain(c)).member) return true;
        }
        return false;
    }
};

std::string atomList(const std::vector<dtgd::Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) out += ", ";
        out += dtgd::to_string(atoms[i]);
    }
    return out;
}

json analysisJson(const dtgd::Analysis& analysis) {
    json out;
    json affected = json::object();
    for (const auto& [pos, invaders] : analysis.affected().all()) {
        if (invaders.empty()) continue;
        json names = json::array();
        for (const auto& z : invaders) names.push_back(dtgd::to_string(z));
        affected[dtgd::to_string(pos)] = names;
    }
    out["affected"] = affected;

    json rules = json::object();
    const dtgd::Ontology& ontology = analysis.ontology();
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        json entry;
        json classes = json::object();
        for (const auto& [var, cls] : analysis.classes(r)) {
            const char* kind = cls.kind == dtgd::VariableClass::Harmless ? "harmless"
                               : cls.kind == dtgd::VariableClass::Harmful ? "harmful"
                                                                          : "dangerous";
            classes[dtgd::to_string(var)] = kind;
        }
        entry["variables"] = classes;
        json problematic = json::array(), safe = json::array(), bridge = json::array();
        for (const auto& a : analysis.split(r).problematic)
            problematic.push_back(dtgd::to_string(a));
        for (const auto& a : analysis.split(r).safe) safe.push_back(dtgd::to_string(a));
        for (const auto& v : analysis.bridge(r)) bridge.push_back(dtgd::to_string(v));
        entry["problematic_atoms"] = problematic;
        entry["safe_atoms"] = safe;
        entry["bridge"] = bridge;
        rules[ontology.rule(r).id()] = entry;
    }
    out["rules"] = rules;
    return out;
}

void printAnalysis(const dtgd::Analysis& analysis) {
    std::cout << "affected positions:\n";
    for (const auto& [pos, invaders] : analysis.affected().all()) {
        if (invaders.empty()) continue;
        std::cout << "  " << dtgd::to_string(pos) << ":";
        for (const auto& z : invaders) std::cout << " " << dtgd::to_string(z);
        std::cout << "\n";
    }
    const dtgd::Ontology& ontology = analysis.ontology();
    for (std::size_t r = 0; r < ontology.size(); ++r) {
        std::cout << "rule " << ontology.rule(r).id() << ":\n";
        auto line = [&](dtgd::VariableClass::Kind kind) {
            std::string out;
            for (const auto& [var, cls] : analysis.classes(r)) {
                if (cls.kind != kind) continue;
                if (!out.empty()) out += ", ";
                out += dtgd::to_string(var);
            }
            return out;
        };
        if (auto s = line(dtgd::VariableClass::Dangerous); !s.empty())
            std::cout << "  dangerous: " << s << "\n";
        if (auto s = line(dtgd::VariableClass::Harmful); !s.empty())
            std::cout << "  harmful: " << s << "\n";
        if (auto s = line(dtgd::VariableClass::Harmless); !s.empty())
            std::cout << "  harmless: " << s << "\n";
        std::cout << "  problematic atoms: " << atomList(analysis.split(r).problematic) << "\n";
        std::cout << "  safe atoms: " << atomList(analysis.split(r).safe) << "\n";
        std::string bridge;
        for (const auto& v : analysis.bridge(r)) {
            if (!bridge.empty()) bridge += ", ";
            bridge += dtgd::to_string(v);
        }
        std::cout << "  bridge: " << bridge << "\n";
    }
}

int runClassify(const std::string& path, bool asJson, bool explain) {
    std::string content = readFile(path);
    dtgd::Program program = dtgd::parseProgram(content);
    dtgd::Ontology ontology = dtgd::renameApart(program.ontology);
    dtgd::ClassReport report = dtgd::classifyAll(ontology);

    if (asJson) {
        json out = jsonHeader(content);
        json classes = json::object();
        for (const auto& [name, verdict] : report.entries) {
            json entry;
            entry["member"] = verdict.member;
            if (!verdict.member) entry["witness"] = verdict.witness;
            classes[dtgd::to_string(name)] = entry;
        }
        out["classes"] = classes;
        if (explain) out["analysis"] = analysisJson(dtgd::Analysis(ontology));
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& [name, verdict] : report.entries) {
            std::cout << dtgd::to_string(name) << ": " << (verdict.member ? "yes" : "no");
            if (!verdict.member) std::cout << "  (" << verdict.witness << ")";
            std::cout << "\n";
        }
        if (explain) printAnalysis(dtgd::Analysis(ontology));
    }
    return 0;
}

int runDecompose(const std::string& path, const std::string& className, std::string outHg,
                 std::string outMain, std::string outManifest) {
    std::string content = readFile(path);
    dtgd::Program program = dtgd::parseProgram(content);
    dtgd::ClassName cls = dtgd::parseClassName(className);
    dtgd::DyadicPair pair = dtgd::decompose(program.ontology, cls);

    std::string stem = path;
    if (auto dot = stem.rfind(".dtgd"); dot != std::string::npos) stem = stem.substr(0, dot);
    if (outHg.empty()) outHg = stem + ".hg.dtgd";
    if (outMain.empty()) outMain = stem + ".main.dtgd";
    if (outManifest.empty()) outManifest = stem + ".aux.json";

    writeFile(outHg, dtgd::serializeOntology(pair.headGround));
    writeFile(outMain, dtgd::serializeOntology(pair.component));

    json manifest = jsonHeader(content);
    manifest["class"] = dtgd::to_string(cls);
    json aux = json::object();
    for (const auto& [ruleId, pred] : pair.auxRegistry) {
        json entry;
        entry["name"] = pred.name;
        entry["arity"] = pred.arity;
        aux[ruleId] = entry;
    }
    manifest["aux"] = aux;
    writeFile(outManifest, manifest.dump(2) + "\n");

    std::cout << "head-ground component: " << outHg << " (" << pair.headGround.size()
              << " rules)\n";
    std::cout << "class component: " << outMain << " (" << pair.component.size() << " rules)\n";
    std::cout << "aux manifest: " << outManifest << "\n";
    return 0;
}

int runChaseCmd(const std::string& path, const BudgetFlags& flags, bool asJson) {
    std::string content = readFile(path);
    dtgd::Program program = dtgd::parseProgram(content);
    dtgd::Ontology ontology = dtgd::renameApart(program.ontology);
    dtgd::ChaseResult result =
        dtgd::runChase(program.database, ontology, flags.budget(ontology));

    const char* status =
        result.completed() ? "Completed" : "BudgetExhausted";
    if (asJson) {
        json out = jsonHeader(content);
        out["status"] = status;
        json atoms = json::array();
        json levels = json::array();
        for (std::size_t i = 0; i < result.instance().size(); ++i) {
            atoms.push_back(dtgd::to_string(result.instance().atoms()[i]));
            levels.push_back(result.levels()[i]);
        }
        out["atoms"] = atoms;
        out["levels"] = levels;
        std::cout << out.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < result.instance().size(); ++i) {
            std::cout << dtgd::to_string(result.instance().atoms()[i]) << "  % level "
                      << result.levels()[i] << "\n";
        }
        std::cout << "% status: " << status << "\n";
    }
    return 0;
}

dtgd::ConjunctiveQuery resolveQuery(const dtgd::Program& program, const std::string& spec) {
    bool numeric = !spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
        std::size_t index = std::stoul(spec);
        if (index >= program.queries.size())
            throw dtgd::Error("query index " + spec + " out of range (file has " +
                              std::to_string(program.queries.size()) + " queries)");
        return program.queries[index];
    }
    dtgd::Program inline_ = dtgd::parseProgram(spec);
    if (inline_.queries.size() != 1 || !inline_.ontology.empty() || !inline_.database.empty())
        throw dtgd::Error("--query expects an index or a single inline query");
    return inline_.queries[0];
}

dtgd::Tuple parseTuple(const std::string& csv) {
    dtgd::Tuple tuple;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) tuple.push_back(dtgd::Term::constant(token));
    return tuple;
}

std::unique_ptr<dtgd::CertainAnswerReasoner> makeReasoner(const std::string& oracle,
                                                          const dtgd::ChaseBudget& budget) {
    if (oracle == "chase") return std::make_unique<dtgd::TerminatingChaseReasoner>();
    if (oracle == "bounded") return std::make_unique<dtgd::BoundedChaseReasoner>(budget);
    throw dtgd::Error("unknown oracle '" + oracle + "' (expected chase or bounded)");
}

int runAnswer(const std::string& path, const std::string& querySpec,
              const std::string& className, const std::string& oracle,
              const std::string& checkCsv, const BudgetFlags& flags, bool asJson) {
    std::string content = readFile(path);
    dtgd::Program program = dtgd::parseProgram(content);
    dtgd::ConjunctiveQuery query = resolveQuery(program, querySpec);
    for (const auto& a : query.body()) {
        if (a.predicate().rfind("__", 0) == 0)
            throw dtgd::ReservedPredicateError(a.predicate());
    }

    dtgd::ClassName cls = dtgd::parseClassName(className);
    dtgd::ChaseBudget budget{flags.maxAtoms == 0 ? std::nullopt
                                                 : std::optional<std::size_t>(flags.maxAtoms),
                             flags.maxLevel == 0 ? std::nullopt
                                                 : std::optional<std::size_t>(flags.maxLevel)};
    auto reasoner = makeReasoner(oracle, budget);
    dtgd::DyadicPair pair = dtgd::decompose(program.ontology, cls);

    json out = jsonHeader(content);
    if (!checkCsv.empty() || query.boolean()) {
        dtgd::Tuple tuple = parseTuple(checkCsv);
        dtgd::ConjunctiveQuery bcq = dtgd::substituteOutputs(query, tuple);
        dtgd::CertainAnswers result =
            dtgd::dpCertainAnswers(bcq, program.database, pair, *reasoner);
        bool member = !result.answers.empty();
        if (asJson) {
            out["member"] = member;
            out["exact"] = result.exact;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << (member ? "true" : "false") << "\n";
            if (!result.exact) std::cerr << "note: approximate (chase budget exhausted)\n";
        }
    } else {
        dtgd::CertainAnswers result =
            dtgd::dpCertainAnswers(query, program.database, pair, *reasoner);
        if (asJson) {
            json answers = json::array();
            for (const auto& tuple : result.answers) {
                json row = json::array();
                for (const auto& t : tuple) row.push_back(t.name());
                answers.push_back(row);
            }
            out["answers"] = answers;
            out["exact"] = result.exact;
            std::cout << out.dump(2) << "\n";
        } else {
            for (const auto& tuple : result.answers) {
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    if (i > 0) std::cout << ",";
                    std::cout << tuple[i].name();
                }
                std::cout << "\n";
            }
            if (!result.exact) std::cerr << "note: approximate (chase budget exhausted)\n";
        }
    }
    return 0;
}

int runComplete(const std::string& path, const std::string& className,
                const std::string& oracle, const std::string& outPath,
                const BudgetFlags& flags) {
    std::string content = readFile(path);
    dtgd::Program program = dtgd::parseProgram(content);
    dtgd::ClassName cls = dtgd::parseClassName(className);
    dtgd::ChaseBudget budget{flags.maxAtoms == 0 ? std::nullopt
                                                 : std::optional<std::size_t>(flags.maxAtoms),
                             flags.maxLevel == 0 ? std::nullopt
                                                 : std::optional<std::size_t>(flags.maxLevel)};
    auto reasoner = makeReasoner(oracle, budget);
    dtgd::DyadicPair pair = dtgd::decompose(program.ontology, cls);
    dtgd::CompletedDatabase completed =
        dtgd::completeDatabase(program.database, pair, *reasoner);
    std::string text = dtgd::serializeDatabase(completed.dPlus);
    if (outPath.empty()) {
        std::cout << text;
    } else {
        writeFile(outPath, text);
        std::cout << "wrote " << completed.dPlus.size() << " facts ("
                  << completed.added.size() << " derived) to " << outPath << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Existential-rule toolkit: classify, decompose, chase, answer, complete"};
    app.require_subcommand(1);

    std::string path, className = "Datalog", querySpec, oracle = "chase", checkCsv, outPath;
    std::string outHg, outMain, outManifest;
    bool asJson = false;
    BudgetFlags flags;

    CLI::App* classify = app.add_subcommand("classify", "Run every class recognizer");
    classify->add_option("file", path, "Input .dtgd file")->required();
    classify->add_flag("--json", asJson, "JSON output");
    bool explain = false;
    classify->add_flag("--explain", explain, "Also report the static analysis");

    CLI::App* decompose = app.add_subcommand("decompose", "Write the head-ground/class pair");
    decompose->add_option("file", path, "Input .dtgd file")->required();
    decompose->add_option("--class", className, "Target class")->required();
    decompose->add_option("--out-hg", outHg, "Head-ground output path");
    decompose->add_option("--out-main", outMain, "Class-component output path");
    decompose->add_option("--manifest", outManifest, "Aux-registry manifest path");

    CLI::App* chase = app.add_subcommand("chase", "Run the chase and print the instance");
    chase->add_option("file", path, "Input .dtgd file")->required();
    chase->add_flag("--json", asJson, "JSON output");
    flags.attach(chase);

    CLI::App* answer = app.add_subcommand("answer", "Certain answers via the dyadic pipeline");
    answer->add_option("file", path, "Input .dtgd file")->required();
    answer->add_option("--query", querySpec, "Query index in the file, or inline text")
        ->required();
    answer->add_option("--class", className, "Class for the decomposition")->required();
    answer->add_option("--oracle", oracle, "chase (exact) or bounded");
    answer->add_option("--check", checkCsv, "Comma-separated constant tuple to test");
    answer->add_flag("--json", asJson, "JSON output");
    flags.attach(answer);

    CLI::App* complete = app.add_subcommand("complete", "Emit the completed database");
    complete->add_option("file", path, "Input .dtgd file")->required();
    complete->add_option("--class", className, "Class for the decomposition")->required();
    complete->add_option("--oracle", oracle, "chase (exact) or bounded");
    complete->add_option("--out", outPath, "Output path (default stdout)");
    flags.attach(complete);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (classify->parsed()) return runClassify(path, asJson, explain);
        if (decompose->parsed()) return runDecompose(path, className, outHg, outMain, outManifest);
        if (chase->parsed()) return runChaseCmd(path, flags, asJson);
        if (answer->parsed())
            return runAnswer(path, querySpec, className, oracle, checkCsv, flags, asJson);
        if (complete->parsed()) return runComplete(path, className, oracle, outPath, flags);
    } catch (const dtgd::NotInDyadicClassError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dtgd::ReasonerInexactError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
