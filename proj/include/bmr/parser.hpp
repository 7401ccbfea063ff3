#pragma once
// Text syntax for knowledge bases (`.kb` files).
//
//   kb      := (stmt ".")*                     '#' starts a line comment
//   stmt    := concept "SubClassOf" concept
//            | role ("o" role)* "SubRoleOf" role
//            | "Disjoint" "(" role "," role ")"
//            | concept "(" ind ")"  |  role "(" ind "," ind ")"
//            | ind "=" ind  |  ind "!=" ind
//            | ("individual" | "concept" | "role") name ("," name)*
//   role    := name | "inv" "(" name ")" | "U"
//   concept := concept "or" concept | concept "and" concept | "not" concept
//            | "some" role concept | "only" role concept | "self" role
//            | ">=" nat role concept | "<=" nat role concept
//            | "Top" | "Bot" | name | "{" ind ("," ind)* "}" | "(" concept ")"
//
// Precedence: prefix operators bind tightest, then "and", then "or"; both
// binary operators associate to the left.

#include <bmr/error.hpp>
#include <bmr/kb.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace bmr {

struct SourceSpan {
    std::size_t line   = 1; // 1-based
    std::size_t column = 1; // 1-based, in bytes
    std::size_t offset = 0; // byte offset into the input
};

enum class DiagnosticKind { Lexical, Syntax, SortClash, UnknownName };

class ParseError : public Error {
public:
    ParseError(DiagnosticKind kind, SourceSpan span, const std::string& message);

    [[nodiscard]] DiagnosticKind kind() const noexcept { return kind_; }
    [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }
    // The message without the "line:col" prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    DiagnosticKind kind_;
    SourceSpan     span_;
    std::string    detail_;
};

// Throws ParseError on any malformed input; never crashes on arbitrary bytes.
[[nodiscard]] KnowledgeBase parse_kb(std::string_view text);

// Parses one axiom (trailing '.' optional) whose names must all belong to
// `vocab` with matching sorts; unknown names raise DiagnosticKind::UnknownName.
[[nodiscard]] Axiom parse_axiom(std::string_view text, const Vocabulary& vocab);

// Deterministic; parse_kb(print_kb(kb)) == kb.
[[nodiscard]] std::string print_kb(const KnowledgeBase& kb);
[[nodiscard]] std::string print_axiom(const Axiom& ax);
[[nodiscard]] std::string print_concept(const Concept& c);
[[nodiscard]] std::string print_role(const Role& r);

// True for words reserved by the syntax (never valid as names).
[[nodiscard]] bool is_keyword(std::string_view word) noexcept;

} // namespace bmr
