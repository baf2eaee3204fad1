#include "dtgd/parser.h"

#include "dtgd/errors.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace dtgd {

namespace {

enum class TokenType { Ident, Int, Quoted, LParen, RParen, Comma, Dot, Arrow, QueryStart, Colon, End };

struct Token {
    TokenType type;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    Lexer(const std::string& text, bool allowReserved)
        : text_(text), allowReserved_(allowReserved) {}

    Token next() {
        skipLayout();
        std::size_t line = line_, col = col_;
        if (pos_ >= text_.size()) return {TokenType::End, "", line, col};

        char c = text_[pos_];
        if (c == '(') { advance(); return {TokenType::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {TokenType::RParen, ")", line, col}; }
        if (c == ',') { advance(); return {TokenType::Comma, ",", line, col}; }
        if (c == '.') { advance(); return {TokenType::Dot, ".", line, col}; }
        if (c == ':') { advance(); return {TokenType::Colon, ":", line, col}; }
        if (c == '-') {
            if (peek(1) == '>') { advance(); advance(); return {TokenType::Arrow, "->", line, col}; }
            throw SyntaxError("unexpected '-'", line, col);
        }
        if (c == '?') {
            if (peek(1) == '-') { advance(); advance(); return {TokenType::QueryStart, "?-", line, col}; }
            throw SyntaxError("unexpected '?'", line, col);
        }
        if (c == '"') return quoted(line, col);
        if (c == '_') {
            if (peek(1) == ':') throw NullInInputError(line, col);
            if (!allowReserved_)
                throw SyntaxError("identifiers may not start with '_'", line, col);
            return identifier(line, col);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier(line, col);
        if (std::isdigit(static_cast<unsigned char>(c))) return integer(line, col);
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (pos_ >= text_.size()) return;
        if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    void skipLayout() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token identifier(std::size_t line, std::size_t col) {
        std::string out;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out += c;
                advance();
            } else {
                break;
            }
        }
        return {TokenType::Ident, out, line, col};
    }

    Token integer(std::size_t line, std::size_t col) {
        std::string out;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            out += text_[pos_];
            advance();
        }
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            throw SyntaxError("malformed integer constant", line, col);
        return {TokenType::Int, out, line, col};
    }

    Token quoted(std::size_t line, std::size_t col) {
        advance(); // opening quote
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) throw SyntaxError("unterminated string", line, col);
            char c = text_[pos_];
            if (c == '"') { advance(); break; }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) throw SyntaxError("unterminated string", line, col);
                out += text_[pos_];
                advance();
            } else {
                out += c;
                advance();
            }
        }
        return {TokenType::Quoted, out, line, col};
    }

    const std::string& text_;
    bool allowReserved_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const ParseOptions& options)
        : lexer_(text, options.allowReservedPredicates), options_(options) {
        bump();
    }

    Program run() {
        std::vector<Atom> facts;
        std::vector<Tgd> rules;
        std::vector<ConjunctiveQuery> queries;
        std::size_t ruleCount = 0;

        while (current_.type != TokenType::End) {
            if (current_.type == TokenType::QueryStart) {
                queries.push_back(query());
            } else {
                Token start = current_;
                std::vector<Atom> first = atomList();
                if (current_.type == TokenType::Arrow) {
                    bump();
                    std::vector<Atom> head = atomList();
                    expect(TokenType::Dot, "'.'");
                    rules.emplace_back("r" + std::to_string(++ruleCount), std::move(first),
                                       std::move(head));
                } else if (current_.type == TokenType::Dot) {
                    if (first.size() != 1)
                        throw SyntaxError("expected '->' after atom list", current_.line,
                                          current_.col);
                    if (!first[0].ground())
                        throw SyntaxError("fact contains a variable", start.line, start.col);
                    bump();
                    facts.push_back(std::move(first[0]));
                } else {
                    throw SyntaxError("expected '->' or '.'", current_.line, current_.col);
                }
            }
        }

        Program program;
        program.database = Database(facts);
        program.ontology = Ontology(std::move(rules));
        program.queries = std::move(queries);
        return program;
    }

private:
    void bump() { current_ = lexer_.next(); }

    void expect(TokenType type, const std::string& what) {
        if (current_.type != type)
            throw SyntaxError("expected " + what, current_.line, current_.col);
        bump();
    }

    std::vector<Atom> atomList() {
        std::vector<Atom> atoms;
        atoms.push_back(atom());
        while (current_.type == TokenType::Comma) {
            bump();
            atoms.push_back(atom());
        }
        return atoms;
    }

    Atom atom() {
        if (current_.type != TokenType::Ident)
            throw SyntaxError("expected a predicate name", current_.line, current_.col);
        Token predTok = current_;
        bump();
        if (predTok.text.rfind("__", 0) == 0 && !options_.allowReservedPredicates)
            throw SyntaxError("predicate '" + predTok.text + "' uses the reserved '__' prefix",
                              predTok.line, predTok.col);
        expect(TokenType::LParen, "'('");
        std::vector<Term> args;
        if (current_.type != TokenType::RParen) {
            args.push_back(term());
            while (current_.type == TokenType::Comma) {
                bump();
                args.push_back(term());
            }
        }
        expect(TokenType::RParen, "')'");
        registerArity(predTok, args.size());
        return Atom(predTok.text, std::move(args));
    }

    Term term() {
        Token tok = current_;
        switch (tok.type) {
            case TokenType::Quoted:
                bump();
                return Term::constant(tok.text);
            case TokenType::Int:
                bump();
                return Term::constant(tok.text);
            case TokenType::Ident: {
                bump();
                char first = tok.text[0];
                if (std::isupper(static_cast<unsigned char>(first)))
                    return Term::variable(tok.text);
                return Term::constant(tok.text);
            }
            default:
                throw SyntaxError("expected a term", tok.line, tok.col);
        }
    }

    ConjunctiveQuery query() {
        bump(); // ?-
        std::vector<Term> outputs;
        if (current_.type != TokenType::Colon) {
            outputs.push_back(outputVariable());
            while (current_.type == TokenType::Comma) {
                bump();
                outputs.push_back(outputVariable());
            }
        }
        Token colonTok = current_;
        expect(TokenType::Colon, "':'");
        std::vector<Atom> body = atomList();
        expect(TokenType::Dot, "'.'");

        std::set<Term> bodyVars;
        for (const auto& a : body)
            for (const auto& t : a.args())
                if (t.isVariable()) bodyVars.insert(t);
        for (const auto& v : outputs) {
            if (!bodyVars.count(v))
                throw SyntaxError("output variable " + v.name() + " does not occur in the query body",
                                  colonTok.line, colonTok.col);
        }
        return ConjunctiveQuery(std::move(outputs), std::move(body));
    }

    Term outputVariable() {
        if (current_.type != TokenType::Ident ||
            !std::isupper(static_cast<unsigned char>(current_.text[0])))
            throw SyntaxError("expected an output variable", current_.line, current_.col);
        Token tok = current_;
        bump();
        return Term::variable(tok.text);
    }

    void registerArity(const Token& predTok, std::size_t arity) {
        auto [it, inserted] = arities_.emplace(predTok.text, arity);
        if (!inserted && it->second != arity)
            throw ArityMismatchError(predTok.text, arity, it->second);
    }

    Lexer lexer_;
    ParseOptions options_;
    Token current_;
    std::map<std::string, std::size_t> arities_;
};

// ---------------------------------------------------------------------------
// serialization

bool bareSafe(const std::string& name) {
    if (name.empty()) return false;
    char first = name[0];
    if (std::isdigit(static_cast<unsigned char>(first))) {
        return std::all_of(name.begin(), name.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }
    if (!std::islower(static_cast<unsigned char>(first))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string printConstant(const std::string& name) {
    if (bareSafe(name)) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"";
    return out;
}

using PrintNames = std::map<Term, std::string>;

/// Print names for the variables of one rule (or query). A tag is appended
/// only when the bare name collides across scopes; remaining clashes inside
/// the rule are separated with underscores.
PrintNames printNamesFor(const std::vector<Term>& vars, const std::set<std::string>& collisions) {
    PrintNames names;
    std::set<std::string> used;
    for (const auto& v : vars) {
        std::string printed = v.name();
        if (v.scope() != 0 && collisions.count(v.name()))
            printed = v.name() + std::to_string(v.scope());
        std::string sep = "_";
        while (used.count(printed)) {
            printed = v.name() + sep + std::to_string(v.scope());
            sep += "_";
        }
        used.insert(printed);
        names.emplace(v, printed);
    }
    return names;
}

std::set<std::string> collisionNames(const Ontology& ontology) {
    std::map<std::string, std::set<int>> scopes;
    for (const auto& r : ontology.rules()) {
        for (const auto* vars : {&r.universalVars(), &r.existentialVars()}) {
            for (const auto& v : *vars) scopes[v.name()].insert(v.scope());
        }
    }
    std::set<std::string> out;
    for (const auto& [name, tags] : scopes) {
        if (tags.size() > 1) out.insert(name);
    }
    return out;
}

std::string printAtom(const Atom& atom, const PrintNames& names) {
    std::string out = atom.predicate() + "(";
    for (std::size_t i = 0; i < atom.args().size(); ++i) {
        if (i > 0) out += ", ";
        const Term& t = atom.args()[i];
        if (t.isConstant()) {
            out += printConstant(t.name());
        } else {
            auto it = names.find(t);
            out += it != names.end() ? it->second : to_string(t);
        }
    }
    out += ")";
    return out;
}

std::string printAtomList(const std::vector<Atom>& atoms, const PrintNames& names) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) out += ", ";
        out += printAtom(atoms[i], names);
    }
    return out;
}

std::string printRule(const Tgd& rule, const std::set<std::string>& collisions) {
    std::vector<Term> vars = rule.universalVars();
    vars.insert(vars.end(), rule.existentialVars().begin(), rule.existentialVars().end());
    PrintNames names = printNamesFor(vars, collisions);
    return printAtomList(rule.body(), names) + " -> " + printAtomList(rule.head(), names) + ".";
}

} // namespace

Program parseProgram(const std::string& text, const ParseOptions& options) {
    return Parser(text, options).run();
}

std::string serializeDatabase(const Database& database) {
    std::string out;
    PrintNames none;
    for (const auto& a : database.atoms()) out += printAtom(a, none) + ".\n";
    return out;
}

std::string serializeOntology(const Ontology& ontology) {
    std::string out;
    std::set<std::string> collisions = collisionNames(ontology);
    for (const auto& r : ontology.rules()) out += printRule(r, collisions) + "\n";
    return out;
}

std::string serializeQuery(const ConjunctiveQuery& query) {
    std::vector<Term> vars;
    for (const auto& v : query.outputs()) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    for (const auto& a : query.body()) {
        for (const auto& t : a.args()) {
            if (t.isVariable() && std::find(vars.begin(), vars.end(), t) == vars.end())
                vars.push_back(t);
        }
    }
    PrintNames names = printNamesFor(vars, {});
    std::string out = "?- ";
    for (std::size_t i = 0; i < query.outputs().size(); ++i) {
        if (i > 0) out += ", ";
        out += names.at(query.outputs()[i]);
    }
    if (!query.outputs().empty()) out += " ";
    out += ": " + printAtomList(query.body(), names) + ".";
    return out;
}

std::string serializeProgram(const Program& program) {
    std::string out = serializeDatabase(program.database);
    out += serializeOntology(program.ontology);
    for (const auto& q : program.queries) out += serializeQuery(q) + "\n";
    return out;
}

} // namespace dtgd
