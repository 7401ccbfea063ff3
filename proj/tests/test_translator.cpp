#include <doctest.h>

#include "support/generators.hpp"

#include <bmr/benchmarks.hpp>
#include <bmr/oracle.hpp>
#include <bmr/parser.hpp>
#include <bmr/translator.hpp>

using namespace bmr;
using asp::atom;

namespace {

const asp::Term X = asp::Term::variable("X");
const asp::Term Y = asp::Term::variable("Y");

Concept c(const std::string& text) {
    return std::get<ConceptInclusion>(parse_kb("Top SubClassOf " + text + ".").tbox()[0]).sup;
}

std::string emitted(const asp::Program& p) { return asp::emit_text(p); }

bool contains_line(const std::string& text, const std::string& line) {
    return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

} // namespace

TEST_CASE("role macro") {
    CHECK(ar(Role::atomic("r"), X, Y) == atom("r_r", {"X", "Y"}));
    CHECK(ar(Role::inverse("s"), X, Y) == atom("r_s", {"Y", "X"}));
    CHECK_THROWS_AS((void)ar(Role::universal(), X, Y), UnsupportedConstruct);
}

TEST_CASE("mangling is reversible for positive predicates") {
    CHECK(PredicateMangling::positive_concept("c_A") == "A");
    CHECK_FALSE(PredicateMangling::positive_concept("nc_A").has_value());
    CHECK(PredicateMangling::positive_role("r_r") == "r");
    CHECK_FALSE(PredicateMangling::positive_role("c_r").has_value());
}

TEST_CASE("concept rows") {
    auto neg = trans_concept(c("not A"), "X", "Y");
    CHECK(neg.positive == std::vector<asp::Atom>{atom("c_A", {"X"})});
    CHECK(neg.negative.empty());

    auto name = trans_concept(c("A"), "X", "Y");
    CHECK(name.negative == std::vector<asp::Atom>{atom("c_A", {"X"})});

    auto self = trans_concept(c("self r"), "X", "Y");
    CHECK(self.negative == std::vector<asp::Atom>{atom("r_r", {"X", "X"})});
    auto notself = trans_concept(c("not self r"), "X", "Y");
    CHECK(notself.positive == std::vector<asp::Atom>{atom("r_r", {"X", "X"})});

    auto nom = trans_concept(c("{a}"), "X", "Y");
    CHECK(nom.negative == std::vector<asp::Atom>{atom("o_a", {"X"})});
    CHECK(nom.side_facts == std::set<asp::Atom>{atom("o_a", {"a"})});

    auto all = trans_concept(c("only r A"), "X", "Y");
    CHECK(all.positive == std::vector<asp::Atom>{atom("r_r", {"X", "Y"})});
    CHECK(all.negative == std::vector<asp::Atom>{atom("c_A", {"Y"})});
    auto allneg = trans_concept(c("only inv(r) not A"), "X", "Y");
    CHECK(allneg.positive == std::vector<asp::Atom>{atom("r_r", {"Y", "X"}), atom("c_A", {"Y"})});

    auto least = trans_concept(c(">= 2 r A"), "X", "Y");
    REQUIRE(least.counts.size() == 1);
    CHECK(least.counts[0].element == atom("r_r", {"X", "Y"}));
    CHECK(least.counts[0].op == asp::Comparison::Lt);
    CHECK(least.counts[0].bound == 2);
    auto most = trans_concept(c("<= 1 r not A"), "X", "Y");
    REQUIRE(most.counts.size() == 1);
    CHECK(most.counts[0].op == asp::Comparison::Gt);
    CHECK(most.counts[0].conditions == std::vector<asp::SignedAtom>{{atom("c_A", {"Y"}), true}});

    CHECK_THROWS_AS((void)trans_concept(c("A and B"), "X", "Y"), std::invalid_argument);
}

TEST_CASE("generator program") {
    Vocabulary v;
    v.add_individual("a");
    v.add_concept("A");
    auto p = pi_gen(KnowledgeBase(v, {}));
    CHECK(p.rules.size() == 2);
    CHECK(p.facts == std::set<asp::Atom>{atom("top", {"a"})});
    auto sets = asp::solve(p);
    CHECK(std::set<asp::AnswerSet>(sets.begin(), sets.end()) ==
          std::set<asp::AnswerSet>{{atom("top", {"a"}), atom("c_A", {"a"})}, {atom("top", {"a"}), atom("nc_A", {"a"})}});

    Vocabulary w;
    w.add_individual("a");
    w.add_individual("b");
    w.add_role("r");
    auto q = pi_gen(KnowledgeBase(w, {}));
    CHECK(q.rules.size() == 2);
    CHECK(q.facts.size() == 2);
    CHECK(asp::solve(q).size() == 16);
}

TEST_CASE("checking programs") {
    auto t = emitted(pi_chk_tbox(parse_kb("A(a). Top SubClassOf A. Top SubClassOf A or not B. Top SubClassOf >= 1 r B.")));
    CHECK(contains_line(t, ":- top(X), not c_A(X)."));
    CHECK((contains_line(t, ":- top(X), c_B(X), not c_A(X).") || contains_line(t, ":- top(X), not c_A(X), c_B(X).")));
    CHECK(contains_line(t, ":- top(X), #count{ Y : r_r(X,Y), c_B(Y) } < 1."));

    auto r = emitted(pi_chk_rbox(parse_kb("A(a). Disjoint(s, r). s SubRoleOf r. inv(s) SubRoleOf r.")));
    CHECK(contains_line(r, ":- r_s(X,Y), r_r(X,Y)."));
    CHECK(contains_line(r, ":- r_s(X,Y), not r_r(X,Y)."));
    CHECK(contains_line(r, ":- r_s(Y,X), not r_r(X,Y)."));
    auto chain = emitted(pi_chk_rbox(parse_kb("A(a). s o t SubRoleOf r.")));
    CHECK(contains_line(chain, ":- r_s(X,Y), r_t(Y,Z), not r_r(X,Z)."));

    auto a = pi_chk_abox(parse_kb("A(a). (not B)(a). s(a, b)."));
    CHECK(a.facts == std::set<asp::Atom>{atom("c_A", {"a"}), atom("nc_B", {"a"}), atom("r_s", {"a", "b"})});
    CHECK(contains_line(emitted(a), ":- c_A(X), nc_A(X)."));
    CHECK(contains_line(emitted(a), ":- r_s(X,Y), nr_s(X,Y)."));
}

TEST_CASE("translate contracts") {
    CHECK_THROWS_AS((void)translate(parse_kb("A(a). A SubClassOf B.")), std::invalid_argument);
    try {
        (void)translate(normalize(parse_kb("A(a). Top SubClassOf some U A.")));
        FAIL("universal role accepted");
    }
    catch (const UnsupportedConstruct& e) {
        CHECK(std::string(e.what()).find("oracle") != std::string::npos);
    }
    for (const auto& r : translate(normalize(example_kb())).rules)
        CHECK(asp::is_safe(r));
}

TEST_CASE("clashing ABox and direct contradictions have no answer sets") {
    CHECK(asp::solve(translate(normalize(parse_kb("A(a). (not A)(a).")))).empty());
    CHECK(asp::solve(translate(normalize(parse_kb("A(a). Top SubClassOf not A.")))).empty());
    CHECK(asp::solve(translate(normalize(pigeonhole_kb(3)))).empty());
    CHECK(asp::solve(translate(normalize(parse_kb("A(a). a = b.")))).empty());
    CHECK(asp::solve(translate(normalize(parse_kb("A(a). a != b.")))).size() == 2);
}

TEST_CASE("projection") {
    FreshNameTable fresh;
    Vocabulary     v;
    v.add_individual("a");
    v.add_concept("A");
    v.add_concept("B");
    auto out = project_answer_set({atom("top", {"a"}), atom("c_A", {"a"}), atom("nc_B", {"a"})}, fresh, v);
    CHECK(out.concepts == std::set<ConceptFact>{{"A", "a"}});
    CHECK(out.roles.empty());
}

TEST_CASE("projected answer sets match the oracle on random knowledge bases") {
    testing::Rng     rng(37);
    testing::KbShape shape{2, 2, 1, 3, 2, false};
    for (int k = 0; k < 300; ++k) {
        auto kb = testing::random_kb(rng, shape);
        INFO(print_kb(kb));
        auto nkb = normalize(kb);
        auto sets = asp::solve(translate(nkb));
        std::set<ABoxRepresentation> projected;
        for (const auto& s : sets) {
            auto m = project_answer_set(s, nkb.fresh, nkb.source_vocabulary);
            CHECK(is_bounded_model(interpretation_of_abox(kb.vocabulary(), m), kb));
            projected.insert(m);
        }
        auto direct = enumerate_bounded_models_bruteforce(kb);
        CHECK(projected == std::set<ABoxRepresentation>(direct.begin(), direct.end()));
    }
}
