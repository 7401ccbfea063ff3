#include <doctest.h>

#include "support/generators.hpp"

#include <bmr/parser.hpp>

#include <random>

using namespace bmr;

TEST_CASE("single concept assertion") {
    auto kb = parse_kb("A(a).");
    REQUIRE(kb.abox().size() == 1);
    CHECK(std::get<ConceptAssertion>(kb.abox()[0]) == ConceptAssertion{Concept::name("A"), "a"});
}

TEST_CASE("example knowledge base text") {
    auto kb = parse_kb("Top SubClassOf some r B. Top SubClassOf <= 1 inv(r) Top. Disjoint(s, r). A(a). A(b). s(a,b).");
    CHECK(kb.abox().size() == 3);
    CHECK(kb.tbox().size() == 2);
    CHECK(kb.rbox().size() == 1);
    CHECK(std::get<ConceptInclusion>(kb.tbox()[1]).sup ==
          Concept::at_most(1, Role::inverse("r"), Concept::top()));
    CHECK(std::get<RoleAssertion>(kb.abox()[2]) == RoleAssertion{Role::atomic("s"), "a", "b"});
}

TEST_CASE("truncated input reports end of input") {
    try {
        (void)parse_kb("C SubClassOf");
        FAIL("no error");
    }
    catch (const ParseError& e) {
        CHECK(e.kind() == DiagnosticKind::Syntax);
        CHECK(e.span().line == 1);
        CHECK(e.span().column == 13);
        CHECK(std::string(e.detail()).find("end of input") != std::string::npos);
    }
}

TEST_CASE("precedence: not over and over or") {
    auto kb = parse_kb("A or B and not C SubClassOf D.");
    auto c  = std::get<ConceptInclusion>(kb.tbox()[0]).sub;
    CHECK(c == Concept::disjunction(Concept::name("A"),
                                    Concept::conjunction(Concept::name("B"), Concept::negation(Concept::name("C")))));
    auto q = std::get<ConceptInclusion>(parse_kb("some r A and B SubClassOf Bot.").tbox()[0]).sub;
    CHECK(q == Concept::conjunction(Concept::exists(Role::atomic("r"), Concept::name("A")), Concept::name("B")));
}

TEST_CASE("all statement forms") {
    auto kb = parse_kb(R"(# comment
        individual z. concept Z. role q.
        {a, b} and self r SubClassOf only inv(s) (>= 2 r A).
        r o inv(s) o r SubRoleOf t.
        U SubRoleOf t.
        a = b. a != b.
        (not A)(c).
        inv(r)(a, c).
    )");
    CHECK(kb.vocabulary().has_individual("z"));
    CHECK(kb.vocabulary().has_concept("Z"));
    CHECK(kb.vocabulary().has_role("q"));
    CHECK(kb.rbox().size() == 2);
    CHECK(std::get<RoleInclusion>(kb.rbox()[0]).chain.size() == 3);
    CHECK(std::get<RoleInclusion>(kb.rbox()[1]).chain[0].is_universal());
    CHECK(std::get<RoleAssertion>(kb.abox().back()).role == Role::inverse("r"));
}

TEST_CASE("diagnostics carry positions") {
    auto expect_error = [](const char* text, DiagnosticKind kind, std::size_t line) {
        try {
            (void)parse_kb(text);
            FAIL("no error for " << text);
        }
        catch (const ParseError& e) {
            CHECK(e.kind() == kind);
            CHECK(e.span().line == line);
        }
    };
    expect_error("A(a).\nA(b, c).", DiagnosticKind::SortClash, 2);
    expect_error("A(a) $", DiagnosticKind::Lexical, 1);
    expect_error("A(a)", DiagnosticKind::Syntax, 1);
    expect_error("A SubClassOf >= x r B.", DiagnosticKind::Syntax, 1);
    expect_error("\n\nTop SubClassOf (A.", DiagnosticKind::Syntax, 3);
}

TEST_CASE("axiom parsing against a fixed vocabulary") {
    auto kb = parse_kb("A(a). r(a, a).");
    CHECK(std::holds_alternative<ConceptInclusion>(parse_axiom("Top SubClassOf some r A", kb.vocabulary())));
    CHECK(std::holds_alternative<ConceptInclusion>(parse_axiom("A SubClassOf A.", kb.vocabulary())));
    try {
        (void)parse_axiom("Top SubClassOf B", kb.vocabulary());
        FAIL("unknown name accepted");
    }
    catch (const ParseError& e) {
        CHECK(e.kind() == DiagnosticKind::UnknownName);
    }
}

TEST_CASE("printing") {
    CHECK(print_kb(KnowledgeBase{}) == "");
    auto kb = parse_kb("not(A and some r B)(a).");
    CHECK(print_kb(kb) == "(not (A and some r B))(a).\n");
    CHECK(parse_kb(print_kb(kb)) == kb);
    CHECK(is_keyword("SubClassOf"));
    CHECK_FALSE(is_keyword("A"));
}

TEST_CASE("printing round-trips random knowledge bases") {
    testing::Rng     rng(7);
    testing::KbShape shape{3, 3, 2, 6, 3, true};
    for (int k = 0; k < 2000; ++k) {
        auto kb   = testing::random_kb(rng, shape);
        auto text = print_kb(kb);
        INFO(text);
        auto back = parse_kb(text);
        CHECK(back == kb);
        CHECK(print_kb(back) == text);
    }
}

TEST_CASE("random bytes never crash the parser") {
    std::mt19937                    rng(11);
    const std::string               alphabet = "AaBr(){},.=!<>o 0123456789#\nTopBotnotandorsomeonlyselfinvUSubClassOf";
    std::uniform_int_distribution<> len(0, 40), ch(0, static_cast<int>(alphabet.size()) - 1), raw(0, 255);
    for (int k = 0; k < 5000; ++k) {
        std::string s;
        int         n = len(rng);
        for (int i = 0; i < n; ++i)
            s += k % 5 == 0 ? static_cast<char>(raw(rng)) : alphabet[static_cast<std::size_t>(ch(rng))];
        try {
            auto kb = parse_kb(s);
            CHECK(parse_kb(print_kb(kb)) == kb);
        }
        catch (const ParseError& e) {
            CHECK(e.span().offset <= s.size());
        }
    }
}
