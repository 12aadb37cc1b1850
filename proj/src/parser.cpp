#include "hybridmknf/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hmknf {

namespace {

enum class Tok { Ident, Quoted, Dollar, Number, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::string where(const SourcePos& pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

[[noreturn]] void syntaxError(const SourcePos& pos, const std::string& message) {
    throw Error(ErrorKind::SyntaxError, where(pos) + ": " + message);
}

std::vector<Token> lex(const std::string& text) {
    static const char* symbols[] = {"***", ":-", "[=", "==", "->", ":", "(", ")", ",", ".",
                                    "&",   "|",  "~",  "{",  "}"};
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto isWord = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        if (ch == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        SourcePos pos{line, column};
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || std::isdigit(static_cast<unsigned char>(ch)) ||
            ch == '$') {
            std::size_t j = i + 1;
            while (j < text.size() && isWord(text[j])) ++j;
            Tok kind = ch == '$' ? Tok::Dollar : std::isdigit(static_cast<unsigned char>(ch)) ? Tok::Number : Tok::Ident;
            out.push_back({kind, text.substr(i, j - i), pos});
            advance(j - i);
            continue;
        }
        if (ch == '\'') {
            std::size_t j = text.find('\'', i + 1);
            if (j == std::string::npos) syntaxError(pos, "unterminated quoted constant");
            out.push_back({Tok::Quoted, text.substr(i + 1, j - i - 1), pos});
            advance(j + 1 - i);
            continue;
        }
        bool matched = false;
        for (const char* sym : symbols) {
            std::string s(sym);
            if (text.compare(i, s.size(), s) == 0) {
                out.push_back({Tok::Symbol, s, pos});
                advance(s.size());
                matched = true;
                break;
            }
        }
        if (!matched) syntaxError(pos, std::string("unexpected character '") + ch + "'");
    }
    out.push_back({Tok::End, "", {line, column}});
    return out;
}

bool isVariableName(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    KbDocument document() {
        KbDocument doc;
        enum class Section { None, Ontology, Program } section = Section::None;
        while (peek().kind != Tok::End) {
            if (isSymbol("***")) {
                next();
                const Token& name = expectKind(Tok::Ident, "section name O or P");
                if (name.text == "O") section = Section::Ontology;
                else if (name.text == "P") section = Section::Program;
                else syntaxError(name.pos, "unknown section '" + name.text + "'");
                expect("***");
                continue;
            }
            if (isKeyword("sort")) {
                SourcePos pos = next().pos;
                do doc.sorts.push_back({expectKind(Tok::Ident, "sort name").text, pos});
                while (accept(","));
                expect(".");
                continue;
            }
            if (isKeyword("const")) {
                DocConstants decl;
                decl.pos = next().pos;
                do decl.names.push_back(constant("constant name"));
                while (accept(","));
                expect(":");
                decl.sort = expectKind(Tok::Ident, "sort name").text;
                expect(".");
                doc.constants.push_back(std::move(decl));
                continue;
            }
            if (isKeyword("pred")) {
                DocPredicate decl;
                decl.pos = next().pos;
                decl.name = expectKind(Tok::Ident, "predicate name").text;
                if (accept("(")) {
                    do decl.argSorts.push_back(expectKind(Tok::Ident, "sort name").text);
                    while (accept(","));
                    expect(")");
                }
                expect(".");
                doc.predicates.push_back(std::move(decl));
                continue;
            }
            if (section == Section::Ontology) doc.axioms.push_back(axiom());
            else if (section == Section::Program) doc.rules.push_back(rule());
            else syntaxError(peek().pos, "expected a declaration or a section header");
        }
        return doc;
    }

    DocRule rule() {
        DocRule r;
        r.pos = peek().pos;
        r.head = literal();
        if (accept(":-") && !isSymbol(".")) {
            do r.body.push_back(literal());
            while (accept(","));
        }
        expect(".");
        return r;
    }

    bool atEnd() const { return peek().kind == Tok::End; }
    bool isSymbol(const std::string& s, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Symbol && t.text == s;
    }
    bool isKeyword(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool accept(const std::string& sym) {
        if (!isSymbol(sym)) return false;
        ++pos_;
        return true;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) syntaxError(peek().pos, "expected '" + sym + "', found '" + peek().text + "'");
    }
    const Token& expectKind(Tok kind, const std::string& what) {
        if (peek().kind != kind) syntaxError(peek().pos, "expected " + what + ", found '" + peek().text + "'");
        return next();
    }
    bool isConstantToken(std::size_t ahead = 0) const {
        Tok k = peek(ahead).kind;
        return k == Tok::Ident || k == Tok::Quoted || k == Tok::Dollar || k == Tok::Number;
    }
    std::string constant(const std::string& what) {
        if (!isConstantToken()) syntaxError(peek().pos, "expected " + what + ", found '" + peek().text + "'");
        return next().text;
    }

    DocAtom atom() {
        DocAtom a;
        a.pos = peek().pos;
        a.pred = expectKind(Tok::Ident, "predicate name").text;
        if (accept("(")) {
            do {
                if (!isConstantToken()) syntaxError(peek().pos, "expected a term, found '" + peek().text + "'");
                const Token& t = next();
                a.args.push_back({t.kind == Tok::Ident && isVariableName(t.text), t.text});
            } while (accept(","));
            expect(")");
        }
        return a;
    }

    DocLiteral literal() {
        bool negated = false;
        while (isKeyword("not")) {
            next();
            negated = !negated;
        }
        return {atom(), negated};
    }

private:
    DocAxiom axiom() {
        DocAxiom ax;
        ax.pos = peek().pos;
        if (isSymbol("(") && isConstantToken(1) && isSymbol(",", 2)) {
            next();
            ax.kind = OntologyAxiom::Kind::RoleAssertion;
            ax.individual = constant("individual");
            expect(",");
            ax.second = constant("individual");
            expect(")");
            expect(":");
            ax.role = expectKind(Tok::Ident, "role name").text;
        } else if (isConstantToken() && isSymbol(":", 1)) {
            ax.kind = OntologyAxiom::Kind::ConceptAssertion;
            ax.individual = next().text;
            next();
            ax.lhs = conceptExpr();
        } else {
            ax.lhs = conceptExpr();
            if (accept("[=")) ax.kind = OntologyAxiom::Kind::Subsumption;
            else if (accept("==")) ax.kind = OntologyAxiom::Kind::Equivalence;
            else syntaxError(peek().pos, "expected '[=' or '==', found '" + peek().text + "'");
            ax.rhs = conceptExpr();
        }
        expect(".");
        return ax;
    }

    DocConcept conceptExpr() {
        DocConcept first = unary();
        if (!isSymbol("&")) return first;
        DocConcept out;
        out.kind = Concept::Kind::And;
        out.pos = first.pos;
        out.kids.push_back(std::move(first));
        while (accept("&")) out.kids.push_back(unary());
        return out;
    }

    DocConcept unary() {
        DocConcept c;
        c.pos = peek().pos;
        if (accept("~")) {
            c.kind = Concept::Kind::Neg;
            c.kids.push_back(unary());
        } else if (accept("(")) {
            c = conceptExpr();
            expect(")");
        } else if (isKeyword("top")) {
            next();
            c.kind = Concept::Kind::Top;
        } else if (isKeyword("bot")) {
            next();
            c.kind = Concept::Kind::Bottom;
        } else if (isKeyword("exists")) {
            next();
            c.name = expectKind(Tok::Ident, "role name").text;
            expect(".");
            if (accept("{")) {
                c.kind = Concept::Kind::ExistsValue;
                c.value = constant("nominal");
                expect("}");
            } else {
                c.kind = Concept::Kind::Exists;
                c.kids.push_back(unary());
            }
        } else {
            c.kind = Concept::Kind::Atomic;
            c.name = expectKind(Tok::Ident, "concept").text;
        }
        return c;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string joined(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string printConcept(const DocConcept& c) {
    using K = Concept::Kind;
    auto simple = [](const DocConcept& k) { return k.kind != K::And; };
    switch (c.kind) {
        case K::Atomic: return c.name;
        case K::Top: return "top";
        case K::Bottom: return "bot";
        case K::Neg: {
            const auto& k = c.kids[0];
            return "~" + (simple(k) ? printConcept(k) : "(" + printConcept(k) + ")");
        }
        case K::And: {
            std::vector<std::string> parts;
            for (const auto& k : c.kids) parts.push_back(simple(k) ? printConcept(k) : "(" + printConcept(k) + ")");
            return joined(parts, " & ");
        }
        case K::Exists: {
            const auto& k = c.kids[0];
            return "exists " + c.name + "." + (simple(k) ? printConcept(k) : "(" + printConcept(k) + ")");
        }
        case K::ExistsValue: return "exists " + c.name + ".{" + Signature::quoteConstant(c.value) + "}";
    }
    return "";
}

std::string printAtom(const DocAtom& a) {
    if (a.args.empty()) return a.pred;
    std::vector<std::string> args;
    for (const auto& t : a.args) args.push_back(t.variable ? t.text : Signature::quoteConstant(t.text));
    return a.pred + "(" + joined(args, ", ") + ")";
}

std::string printLiteral(const DocLiteral& l) { return (l.negated ? "not " : "") + printAtom(l.atom); }

std::string at(const SourcePos& pos) { return pos.line ? " at " + where(pos) : std::string(); }

[[noreturn]] void undeclared(const std::string& what, const std::string& name, const SourcePos& pos) {
    throw Error(ErrorKind::UndeclaredSymbol, "undeclared " + what + " '" + name + "'" + at(pos));
}

ConstId resolveConstant(const Signature& sig, const std::string& name, const SourcePos& pos) {
    auto id = sig.findConstant(name);
    if (!id) undeclared("constant", name, pos);
    return *id;
}

PredId resolvePredicate(const Signature& sig, const std::string& name, std::size_t arity, const std::string& what,
                        const SourcePos& pos) {
    auto id = sig.findPredicate(name);
    if (!id) undeclared(what, name, pos);
    if (sig.predicate(*id).argSorts.size() != arity)
        throw Error(ErrorKind::SortMismatch, what + " '" + name + "' has arity " +
                                                 std::to_string(sig.predicate(*id).argSorts.size()) + at(pos));
    return *id;
}

ConceptPtr resolveConcept(const DocConcept& c, const Signature& sig) {
    using K = Concept::Kind;
    switch (c.kind) {
        case K::Atomic: {
            auto id = sig.findPredicate(c.name);
            if (!id) undeclared("concept", c.name, c.pos);
            if (sig.predicate(*id).argSorts.size() > 1)
                throw Error(ErrorKind::SortMismatch, "'" + c.name + "' is not a concept" + at(c.pos));
            return Concept::atomic(*id);
        }
        case K::Top: return Concept::topC();
        case K::Bottom: return Concept::bottomC();
        case K::Neg: return Concept::negC(resolveConcept(c.kids[0], sig));
        case K::And: {
            std::vector<ConceptPtr> kids;
            for (const auto& k : c.kids) kids.push_back(resolveConcept(k, sig));
            return Concept::andC(std::move(kids));
        }
        case K::Exists:
            return Concept::exists(resolvePredicate(sig, c.name, 2, "role", c.pos), resolveConcept(c.kids[0], sig));
        case K::ExistsValue:
            return Concept::existsValue(resolvePredicate(sig, c.name, 2, "role", c.pos),
                                        resolveConstant(sig, c.value, c.pos));
    }
    throw Error(ErrorKind::SyntaxError, "unknown concept form");
}

OntologyAxiom resolveAxiom(const DocAxiom& ax, const Signature& sig) {
    using K = OntologyAxiom::Kind;
    switch (ax.kind) {
        case K::Subsumption: return OntologyAxiom::subsumption(resolveConcept(ax.lhs, sig), resolveConcept(ax.rhs, sig));
        case K::Equivalence: return OntologyAxiom::equivalence(resolveConcept(ax.lhs, sig), resolveConcept(ax.rhs, sig));
        case K::ConceptAssertion:
            return OntologyAxiom::conceptAssertion(resolveConstant(sig, ax.individual, ax.pos),
                                                   resolveConcept(ax.lhs, sig));
        case K::RoleAssertion: {
            PredId role = resolvePredicate(sig, ax.role, 2, "role", ax.pos);
            ConstId a = resolveConstant(sig, ax.individual, ax.pos);
            ConstId b = resolveConstant(sig, ax.second, ax.pos);
            sig.atom(role, {a, b});  // sort check
            return OntologyAxiom::roleAssertion(a, b, role);
        }
    }
    throw Error(ErrorKind::SyntaxError, "unknown axiom form");
}

LiteralTemplate resolveLiteral(const DocLiteral& l, const Signature& sig) {
    LiteralTemplate out;
    out.negated = l.negated;
    out.atom.pred = resolvePredicate(sig, l.atom.pred, l.atom.args.size(), "predicate", l.atom.pos);
    for (const auto& t : l.atom.args) {
        Term term;
        term.isVariable = t.variable;
        if (t.variable) term.variable = t.text;
        else term.constant = resolveConstant(sig, t.text, l.atom.pos);
        out.atom.args.push_back(std::move(term));
    }
    return out;
}

class QueryParser {
public:
    QueryParser(Parser& p, const Signature& sig) : p_(p), sig_(sig) {}

    Formula implication() {
        Formula lhs = disjunction();
        if (p_.accept("->")) return implies(lhs, implication());
        return lhs;
    }

private:
    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (p_.accept("|")) parts.push_back(conjunction());
        return parts.size() == 1 ? parts[0] : disj(std::move(parts));
    }
    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (p_.accept("&")) parts.push_back(unary());
        return parts.size() == 1 ? parts[0] : conj(std::move(parts));
    }
    Formula unary() {
        if (p_.accept("~")) return neg(unary());
        if (p_.isKeyword("K")) {
            p_.next();
            return know(unary());
        }
        if (p_.isKeyword("not")) {
            p_.next();
            return notD(unary());
        }
        if (p_.isKeyword("top")) {
            p_.next();
            return top();
        }
        if (p_.isKeyword("bot")) {
            p_.next();
            return bot();
        }
        if (p_.accept("(")) {
            Formula f = implication();
            p_.expect(")");
            return f;
        }
        return atomF(groundAtom(p_.atom(), sig_));
    }

public:
    static AtomId groundAtom(const DocAtom& a, const Signature& sig) {
        PredId pred = resolvePredicate(sig, a.pred, a.args.size(), "predicate", a.pos);
        std::vector<ConstId> args;
        for (const auto& t : a.args) args.push_back(resolveConstant(sig, t.text, a.pos));
        return sig.atom(pred, args);
    }

private:
    Parser& p_;
    const Signature& sig_;
};

}  // namespace

KbDocument parseDocument(const std::string& text) { return Parser(lex(text)).document(); }

std::string printDocument(const KbDocument& doc) {
    std::ostringstream out;
    for (const auto& s : doc.sorts) out << "sort " << s.name << ".\n";
    for (const auto& c : doc.constants) {
        std::vector<std::string> names;
        for (const auto& n : c.names) names.push_back(Signature::quoteConstant(n));
        out << "const " << joined(names, ", ") << " : " << c.sort << ".\n";
    }
    for (const auto& p : doc.predicates) {
        out << "pred " << p.name;
        if (!p.argSorts.empty()) out << "(" << joined(p.argSorts, ", ") << ")";
        out << ".\n";
    }
    out << "\n*** O ***\n";
    for (const auto& ax : doc.axioms) {
        using K = OntologyAxiom::Kind;
        switch (ax.kind) {
            case K::Subsumption: out << printConcept(ax.lhs) << " [= " << printConcept(ax.rhs); break;
            case K::Equivalence: out << printConcept(ax.lhs) << " == " << printConcept(ax.rhs); break;
            case K::ConceptAssertion:
                out << Signature::quoteConstant(ax.individual) << " : " << printConcept(ax.lhs);
                break;
            case K::RoleAssertion:
                out << "(" << Signature::quoteConstant(ax.individual) << ", " << Signature::quoteConstant(ax.second)
                    << ") : " << ax.role;
                break;
        }
        out << ".\n";
    }
    out << "\n*** P ***\n";
    for (const auto& r : doc.rules) {
        out << printLiteral(r.head);
        std::vector<std::string> body;
        for (const auto& l : r.body) body.push_back(printLiteral(l));
        if (!body.empty()) out << " :- " << joined(body, ", ");
        out << ".\n";
    }
    return out.str();
}

KbDocument readDocument(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parseDocument(buffer.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

SignaturePtr buildSignature(const std::vector<KbDocument>& docs) {
    Signature::Builder builder;
    for (const auto& doc : docs)
        for (const auto& s : doc.sorts) builder.addSort(s.name);
    for (const auto& doc : docs)
        for (const auto& c : doc.constants) {
            auto sort = builder.findSort(c.sort);
            if (!sort) undeclared("sort", c.sort, c.pos);
            for (const auto& name : c.names) builder.addConstant(name, *sort);
        }
    for (const auto& doc : docs)
        for (const auto& p : doc.predicates) {
            std::vector<SortId> sorts;
            for (const auto& s : p.argSorts) {
                auto sort = builder.findSort(s);
                if (!sort) undeclared("sort", s, p.pos);
                sorts.push_back(*sort);
            }
            builder.addPredicate(p.name, sorts);
        }
    return builder.build();
}

HybridKb toKb(const KbDocument& doc, const SignaturePtr& sig) {
    HybridKb kb{sig, {}, {}};
    for (const auto& ax : doc.axioms) kb.ontology.push_back(resolveAxiom(ax, *sig));
    std::vector<RuleTemplate> templates;
    for (const auto& r : doc.rules) {
        RuleTemplate t;
        t.head = resolveLiteral(r.head, *sig);
        for (const auto& l : r.body) t.body.push_back(resolveLiteral(l, *sig));
        templates.push_back(std::move(t));
    }
    kb.program = ground(templates, *sig);
    return kb;
}

DynamicHybridKb toDynamicKb(const std::vector<KbDocument>& docs) {
    auto sig = buildSignature(docs);
    DynamicHybridKb dkb{sig, {}};
    for (const auto& doc : docs) dkb.kbs.push_back(toKb(doc, sig));
    return dkb;
}

Formula parseQuery(const std::string& text, const Signature& sig) {
    Parser parser(lex(text));
    bool isRule = false;
    for (std::size_t k = 0; parser.peek(k).kind != Tok::End; ++k)
        if (parser.isSymbol(":-", k)) isRule = true;
    Formula out;
    if (isRule) {
        DocRule r = parser.rule();
        std::vector<Literal> body;
        for (const auto& l : r.body) body.push_back({QueryParser::groundAtom(l.atom, sig), l.negated});
        out = pi(makeRule({QueryParser::groundAtom(r.head.atom, sig), r.head.negated}, std::move(body)));
    } else {
        out = QueryParser(parser, sig).implication();
        parser.accept(".");
    }
    if (!parser.atEnd()) syntaxError(parser.peek().pos, "unexpected '" + parser.peek().text + "' after query");
    return out;
}

}  // namespace hmknf
