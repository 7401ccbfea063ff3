#include <bmr/parser.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <vector>

namespace bmr {

ParseError::ParseError(DiagnosticKind kind, SourceSpan span, const std::string& message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message)
    , kind_(kind)
    , span_(span)
    , detail_(message) {}

namespace {

constexpr std::array kKeywords{
    std::string_view{"SubClassOf"}, std::string_view{"SubRoleOf"}, std::string_view{"Disjoint"},
    std::string_view{"Top"},        std::string_view{"Bot"},       std::string_view{"not"},
    std::string_view{"and"},        std::string_view{"or"},        std::string_view{"some"},
    std::string_view{"only"},       std::string_view{"self"},      std::string_view{"inv"},
    std::string_view{"U"},          std::string_view{"o"},         std::string_view{"individual"},
    std::string_view{"concept"},    std::string_view{"role"},
};

constexpr std::size_t kMaxDepth = 1000;

enum class Tok { Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Dot, Eq, Neq, Geq, Leq, End };

struct Token {
    Tok              type;
    std::string_view text;
    SourceSpan       span;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "name";
        case Tok::Number: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Eq: return "'='";
        case Tok::Neq: return "'!='";
        case Tok::Geq: return "'>='";
        case Tok::Leq: return "'<='";
        case Tok::End: return "end of input";
    }
    return "?";
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view in) {
    std::vector<Token> out;
    SourceSpan         pos;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (in[pos.offset] == '\n') {
                ++pos.line;
                pos.column = 1;
            }
            else {
                ++pos.column;
            }
            ++pos.offset;
        }
    };
    while (pos.offset < in.size()) {
        char c = in[pos.offset];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (pos.offset < in.size() && in[pos.offset] != '\n')
                advance(1);
            continue;
        }
        SourceSpan  start = pos;
        std::size_t len   = 1;
        Tok         t;
        if (ident_start(c)) {
            while (pos.offset + len < in.size() && ident_char(in[pos.offset + len]))
                ++len;
            t = Tok::Ident;
        }
        else if (digit(c)) {
            while (pos.offset + len < in.size() && digit(in[pos.offset + len]))
                ++len;
            t = Tok::Number;
        }
        else {
            char next = pos.offset + 1 < in.size() ? in[pos.offset + 1] : '\0';
            switch (c) {
                case '(': t = Tok::LParen; break;
                case ')': t = Tok::RParen; break;
                case '{': t = Tok::LBrace; break;
                case '}': t = Tok::RBrace; break;
                case ',': t = Tok::Comma; break;
                case '.': t = Tok::Dot; break;
                case '=': t = Tok::Eq; break;
                case '!':
                case '>':
                case '<':
                    if (next != '=')
                        throw ParseError(DiagnosticKind::Lexical, start,
                                         std::string("unexpected character '") + c + "'");
                    t   = c == '!' ? Tok::Neq : c == '>' ? Tok::Geq : Tok::Leq;
                    len = 2;
                    break;
                default: {
                    std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                            ? std::string(1, c)
                                            : "\\x" + std::to_string(static_cast<unsigned char>(c));
                    throw ParseError(DiagnosticKind::Lexical, start, "unexpected character '" + shown + "'");
                }
            }
        }
        out.push_back({t, in.substr(pos.offset, len), start});
        advance(len);
    }
    out.push_back({Tok::End, {}, pos});
    return out;
}

enum class Sort { Individual, Concept, Role };

class Parser {
public:
    Parser(std::string_view text, const Vocabulary* fixed) : toks_(lex(text)), fixed_(fixed) {}

    KnowledgeBase parse_all() {
        std::vector<Axiom> axioms;
        while (toks_[pos_].type != Tok::End) {
            stmt_end_ = find_stmt_end(pos_);
            if (auto ax = statement())
                axioms.push_back(std::move(*ax));
            expect(Tok::Dot, "'.' after statement");
        }
        return KnowledgeBase(std::move(vocab_), std::move(axioms));
    }

    Axiom parse_single() {
        stmt_end_ = find_stmt_end(pos_);
        if (peek().type == Tok::End)
            fail(peek(), "expected axiom");
        auto ax = statement();
        if (!ax)
            fail(toks_[0], "expected axiom, found declaration");
        if (peek().type == Tok::Dot)
            ++pos_;
        stmt_end_ = toks_.size() - 1;
        if (peek().type != Tok::End)
            fail(peek(), std::string("unexpected ") + describe(peek().type) + " after axiom");
        return std::move(*ax);
    }

private:
    // ---- token helpers -------------------------------------------------
    const Token& peek(std::size_t k = 0) const {
        std::size_t i = std::min(pos_ + k, stmt_end_);
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    // Tokens past the current statement read as end-of-statement ('.' or End).
    bool at_stmt_end() const { return pos_ >= stmt_end_; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        bool mentions_end = msg.find("end of input") != std::string::npos;
        throw ParseError(DiagnosticKind::Syntax, t.span,
                         msg + (t.type == Tok::End && !mentions_end ? " at end of input" : ""));
    }

    const Token& expect(Tok t, const char* what) {
        const Token& cur = pos_ < toks_.size() ? toks_[pos_] : toks_.back();
        if (cur.type != t || (t != Tok::Dot && t != Tok::End && at_stmt_end()))
            fail(cur, std::string("expected ") + what + ", found " + describe(cur.type));
        ++pos_;
        return cur;
    }

    bool is_kw(const Token& t, std::string_view kw) const { return t.type == Tok::Ident && t.text == kw; }

    std::size_t find_stmt_end(std::size_t from) const {
        std::size_t i = from;
        while (toks_[i].type != Tok::Dot && toks_[i].type != Tok::End)
            ++i;
        return i;
    }

    // ---- names ----------------------------------------------------------
    std::string name(Sort sort) {
        const Token& t = peek();
        if (at_stmt_end() || t.type != Tok::Ident)
            fail(t, std::string("expected ") + sort_name(sort) + " name, found " + describe(t.type));
        if (is_keyword(t.text))
            fail(t, "expected " + std::string(sort_name(sort)) + " name, found keyword '" + std::string(t.text) + "'");
        ++pos_;
        std::string n(t.text);
        if (fixed_) {
            bool ok = sort == Sort::Individual ? fixed_->has_individual(n)
                    : sort == Sort::Concept    ? fixed_->has_concept(n)
                                               : fixed_->has_role(n);
            if (!ok) {
                if (fixed_->has_name(n))
                    throw ParseError(DiagnosticKind::SortClash, t.span,
                                     "'" + n + "' is not a " + sort_name(sort) + " of the knowledge base");
                throw ParseError(DiagnosticKind::UnknownName, t.span,
                                 "unknown " + std::string(sort_name(sort)) + " '" + n + "'");
            }
            return n;
        }
        try {
            switch (sort) {
                case Sort::Individual: vocab_.add_individual(n); break;
                case Sort::Concept: vocab_.add_concept(n); break;
                case Sort::Role: vocab_.add_role(n); break;
            }
        }
        catch (const SortClashError& e) {
            throw ParseError(DiagnosticKind::SortClash, t.span, e.what());
        }
        return n;
    }

    static const char* sort_name(Sort s) {
        switch (s) {
            case Sort::Individual: return "individual";
            case Sort::Concept: return "concept";
            case Sort::Role: return "role";
        }
        return "?";
    }

    std::uint32_t number() {
        const Token& t = peek();
        if (at_stmt_end() || t.type != Tok::Number)
            fail(t, std::string("expected number, found ") + describe(t.type));
        std::uint32_t v  = 0;
        auto [ptr, ec]   = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
            fail(t, "cardinality out of range");
        ++pos_;
        return v;
    }

    // ---- statements -----------------------------------------------------
    std::optional<Axiom> statement() {
        const Token& first = peek();
        if (is_kw(first, "individual") || is_kw(first, "concept") || is_kw(first, "role")) {
            if (fixed_)
                fail(first, "declarations are not allowed here");
            Sort s = first.text == "individual" ? Sort::Individual : first.text == "concept" ? Sort::Concept : Sort::Role;
            ++pos_;
            name(s);
            while (!at_stmt_end() && peek().type == Tok::Comma) {
                ++pos_;
                name(s);
            }
            return std::nullopt;
        }
        if (is_kw(first, "Disjoint")) {
            ++pos_;
            expect(Tok::LParen, "'('");
            Role a = role();
            expect(Tok::Comma, "','");
            Role b = role();
            expect(Tok::RParen, "')'");
            return RoleDisjointness{std::move(a), std::move(b)};
        }
        bool has_subrole = false, has_subclass = false;
        for (std::size_t i = pos_; i < stmt_end_; ++i) {
            has_subrole  = has_subrole || is_kw(toks_[i], "SubRoleOf");
            has_subclass = has_subclass || is_kw(toks_[i], "SubClassOf");
        }
        if (has_subrole) {
            std::vector<Role> chain{role()};
            while (is_kw(peek(), "o") && !at_stmt_end()) {
                ++pos_;
                chain.push_back(role());
            }
            if (!is_kw(peek(), "SubRoleOf") || at_stmt_end())
                fail(peek(), std::string("expected 'o' or 'SubRoleOf', found ") + describe(peek().type));
            ++pos_;
            Role sup = role();
            return RoleInclusion{std::move(chain), std::move(sup)};
        }
        if (has_subclass) {
            Concept sub = parse_concept(0);
            if (!is_kw(peek(), "SubClassOf") || at_stmt_end())
                fail(peek(), std::string("expected 'SubClassOf', found ") + describe(peek().type));
            ++pos_;
            Concept sup = parse_concept(0);
            return ConceptInclusion{std::move(sub), std::move(sup)};
        }
        if (stmt_end_ - pos_ == 3 && first.type == Tok::Ident && (peek(1).type == Tok::Eq || peek(1).type == Tok::Neq)) {
            bool        eq = peek(1).type == Tok::Eq;
            std::string a  = name(Sort::Individual);
            ++pos_;
            std::string b = name(Sort::Individual);
            if (eq)
                return IndividualEquality{std::move(a), std::move(b)};
            return IndividualInequality{std::move(a), std::move(b)};
        }
        return assertion();
    }

    // `prefix(args)` where the trailing parenthesised group holds one
    // individual (concept assertion) or two (role assertion).
    Axiom assertion() {
        if (stmt_end_ == pos_ || toks_[stmt_end_ - 1].type != Tok::RParen)
            fail(peek(), std::string("expected axiom, found ") + describe(peek().type));
        std::size_t close = stmt_end_ - 1;
        std::size_t open  = close;
        int         depth = 0;
        for (std::size_t i = close + 1; i-- > pos_;) {
            if (toks_[i].type == Tok::RParen)
                ++depth;
            else if (toks_[i].type == Tok::LParen && --depth == 0) {
                open = i;
                break;
            }
        }
        if (open == close || open == pos_)
            fail(toks_[open == close ? pos_ : open], "expected concept or role before argument list");
        bool binary = open + 4 == close && toks_[open + 2].type == Tok::Comma;

        std::size_t saved_end = stmt_end_;
        stmt_end_             = open;
        if (binary) {
            Role r = role();
            if (!at_stmt_end())
                fail(peek(), std::string("unexpected ") + describe(peek().type) + " in role assertion");
            stmt_end_ = saved_end;
            ++pos_; // '('
            std::string a = name(Sort::Individual);
            expect(Tok::Comma, "','");
            std::string b = name(Sort::Individual);
            expect(Tok::RParen, "')'");
            return RoleAssertion{std::move(r), std::move(a), std::move(b)};
        }
        Concept c = parse_concept(0);
        if (!at_stmt_end())
            fail(peek(), std::string("unexpected ") + describe(peek().type) + " in concept assertion");
        stmt_end_ = saved_end;
        ++pos_; // '('
        std::string a = name(Sort::Individual);
        expect(Tok::RParen, "')'");
        return ConceptAssertion{std::move(c), std::move(a)};
    }

    // ---- expressions ----------------------------------------------------
    Role role() {
        const Token& t = peek();
        if (!at_stmt_end() && is_kw(t, "U")) {
            ++pos_;
            return Role::universal();
        }
        if (!at_stmt_end() && is_kw(t, "inv")) {
            ++pos_;
            expect(Tok::LParen, "'('");
            std::string n = name(Sort::Role);
            expect(Tok::RParen, "')'");
            return Role::inverse(std::move(n));
        }
        return Role::atomic(name(Sort::Role));
    }

    struct DepthGuard {
        std::size_t& d;
        DepthGuard(std::size_t& depth, const Parser& p, const Token& t) : d(depth) {
            if (++d > kMaxDepth)
                p.fail(t, "expression nested too deeply");
        }
        ~DepthGuard() { --d; }
    };

    // level 0: or-expression, 1: and-expression, 2: prefix/primary.
    Concept parse_concept(int level) {
        DepthGuard guard(depth_, *this, peek());
        if (level == 0) {
            Concept acc = parse_concept(1);
            while (!at_stmt_end() && is_kw(peek(), "or")) {
                ++pos_;
                acc = Concept::disjunction(acc, parse_concept(1));
            }
            return acc;
        }
        if (level == 1) {
            Concept acc = parse_concept(2);
            while (!at_stmt_end() && is_kw(peek(), "and")) {
                ++pos_;
                acc = Concept::conjunction(acc, parse_concept(2));
            }
            return acc;
        }
        const Token& t = peek();
        if (at_stmt_end())
            fail(t, "expected concept");
        if (t.type == Tok::Geq || t.type == Tok::Leq) {
            ++pos_;
            std::uint32_t n = number();
            Role          r = role();
            Concept       c = parse_concept(2);
            return t.type == Tok::Geq ? Concept::at_least(n, std::move(r), std::move(c))
                                      : Concept::at_most(n, std::move(r), std::move(c));
        }
        if (t.type == Tok::LParen) {
            ++pos_;
            Concept c = parse_concept(0);
            expect(Tok::RParen, "')'");
            return c;
        }
        if (t.type == Tok::LBrace) {
            ++pos_;
            std::vector<std::string> inds{name(Sort::Individual)};
            while (!at_stmt_end() && peek().type == Tok::Comma) {
                ++pos_;
                inds.push_back(name(Sort::Individual));
            }
            expect(Tok::RBrace, "'}'");
            return Concept::nominal(std::move(inds));
        }
        if (t.type != Tok::Ident)
            fail(t, std::string("expected concept, found ") + describe(t.type));
        if (is_kw(t, "Top")) {
            ++pos_;
            return Concept::top();
        }
        if (is_kw(t, "Bot")) {
            ++pos_;
            return Concept::bot();
        }
        if (is_kw(t, "not")) {
            ++pos_;
            return Concept::negation(parse_concept(2));
        }
        if (is_kw(t, "some") || is_kw(t, "only")) {
            bool some = t.text == "some";
            ++pos_;
            Role    r = role();
            Concept c = parse_concept(2);
            return some ? Concept::exists(std::move(r), std::move(c)) : Concept::forall(std::move(r), std::move(c));
        }
        if (is_kw(t, "self")) {
            ++pos_;
            return Concept::self(role());
        }
        return Concept::name(name(Sort::Concept));
    }

    std::vector<Token> toks_;
    std::size_t        pos_      = 0;
    std::size_t        stmt_end_ = 0;
    std::size_t        depth_    = 0;
    Vocabulary         vocab_;
    const Vocabulary*  fixed_;
};

} // namespace

bool is_keyword(std::string_view word) noexcept {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

KnowledgeBase parse_kb(std::string_view text) { return Parser(text, nullptr).parse_all(); }

Axiom parse_axiom(std::string_view text, const Vocabulary& vocab) { return Parser(text, &vocab).parse_single(); }

} // namespace bmr
