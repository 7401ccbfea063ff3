#include <doctest.h>

#include "support/generators.hpp"

#include <bmr/benchmarks.hpp>
#include <bmr/oracle.hpp>
#include <bmr/parser.hpp>

using namespace bmr;

namespace {

// The seven-fact model of the example knowledge base.
BoundedInterpretation example_model() {
    BoundedInterpretation i(example_kb().vocabulary());
    i.add_concept_member("A", "a");
    i.add_concept_member("A", "b");
    i.add_concept_member("B", "a");
    i.add_concept_member("B", "b");
    i.add_role_pair("s", "a", "b");
    i.add_role_pair("r", "a", "a");
    i.add_role_pair("r", "b", "b");
    return i;
}

Concept concept_text(const std::string& text) {
    return std::get<ConceptInclusion>(parse_kb("Top SubClassOf " + text + ".").tbox()[0]).sup;
}

using Pairs = std::set<IndividualPair>;
using Names = std::set<std::string>;

} // namespace

TEST_CASE("role extensions") {
    auto i = example_model();
    CHECK(extend_role(i, Role::inverse("s")) == Pairs{{"b", "a"}});
    CHECK(extend_role(i, Role::universal()) == Pairs{{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}});
    CHECK(extend_role(i, Role::atomic("r")) == Pairs{{"a", "a"}, {"b", "b"}});
}

TEST_CASE("concept extensions on the example model") {
    auto i = example_model();
    CHECK(extend_concept(i, concept_text("some r B")) == Names{"a", "b"});
    CHECK(extend_concept(i, concept_text("<= 1 inv(r) Top")) == Names{"a", "b"});
    CHECK(extend_concept(i, concept_text("self r")) == Names{"a", "b"});
    CHECK(extend_concept(i, concept_text("self s")).empty());
    CHECK(extend_concept(i, concept_text("some s Top")) == Names{"a"});
    CHECK(extend_concept(i, concept_text("only s Bot")) == Names{"b"});
    CHECK(extend_concept(i, concept_text("{b} or not A")) == Names{"b"});
    CHECK(extend_concept(i, concept_text(">= 2 U A")) == Names{"a", "b"});
    CHECK(extend_concept(i, concept_text(">= 3 U A")).empty());
    CHECK(extend_concept(i, Concept::bot()).empty());
}

TEST_CASE("axiom satisfaction on the example model") {
    auto i  = example_model();
    auto kb = example_kb();
    CHECK(satisfies_axiom(i, RoleDisjointness{Role::atomic("s"), Role::atomic("r")}));
    CHECK(satisfies_axiom(i, IndividualEquality{"a", "a"}));
    CHECK_FALSE(satisfies_axiom(i, IndividualEquality{"a", "b"}));
    CHECK(satisfies_axiom(i, IndividualInequality{"a", "b"}));
    CHECK(satisfies_axiom(i, ConceptInclusion{Concept::top(), Concept::name("B")}));
    CHECK(satisfies_axiom(i, RoleInclusion{{Role::atomic("r"), Role::atomic("s")}, Role::atomic("s")}));
    CHECK_FALSE(satisfies_axiom(i, RoleInclusion{{Role::atomic("s"), Role::inverse("s")}, Role::atomic("s")}));
    CHECK(is_bounded_model(i, kb));
}

TEST_CASE("non-models of the example") {
    auto kb = example_kb();
    CHECK_FALSE(is_bounded_model(BoundedInterpretation(kb.vocabulary()), kb));
    BoundedInterpretation i(kb.vocabulary());
    i.add_concept_member("A", "a");
    i.add_concept_member("A", "b");
    i.add_concept_member("B", "a");
    i.add_concept_member("B", "b");
    i.add_role_pair("s", "a", "b");
    i.add_role_pair("r", "a", "a");
    CHECK_FALSE(is_bounded_model(i, kb));
}

TEST_CASE("vocabulary mismatch") {
    Vocabulary v;
    v.add_individual("a");
    BoundedInterpretation i(v);
    CHECK_THROWS_AS((void)is_bounded_model(i, parse_kb("A(a).")), VocabularyError);
}

TEST_CASE("brute-force enumeration") {
    auto one = enumerate_bounded_models_bruteforce(parse_kb("A(a)."));
    REQUIRE(one.size() == 1);
    CHECK(one[0].concepts == std::set<ConceptFact>{{"A", "a"}});
    CHECK(enumerate_bounded_models_bruteforce(parse_kb("A(a). Top SubClassOf not A.")).empty());

    auto kb = example_kb();
    auto all = enumerate_bounded_models_bruteforce(kb);
    CHECK(all.size() == 2);
    CHECK(std::find(all.begin(), all.end(), abox_of_interpretation(example_model())) != all.end());

    BruteforceModels it(kb);
    while (it.next()) {
    }
    CHECK(it.candidates_checked() == (std::uint64_t{1} << interpretation_bits(kb.vocabulary())));
    CHECK(interpretation_bits(kb.vocabulary()) == 2 * 2 + 2 * 4);

    CHECK_THROWS_AS(BruteforceModels(pigeonhole_kb(4)), CapExceeded);
    CHECK_NOTHROW(BruteforceModels(parse_kb("A(a)."), 1));
    CHECK_THROWS_AS(BruteforceModels(parse_kb("A(a). B(a)."), 1), CapExceeded);
}

TEST_CASE("brute-force entailment on the example") {
    auto kb = example_kb();
    for (const char* text : {"Top SubClassOf some r some r B", "Top SubClassOf B", "Top SubClassOf self r"})
        CHECK(entails_bm_bruteforce(kb, parse_axiom(text, kb.vocabulary())));
    CHECK_FALSE(entails_bm_bruteforce(kb, parse_axiom("Top SubClassOf not A", kb.vocabulary())));
    CHECK_FALSE(entails_bm_bruteforce(kb, parse_axiom("s(b, a)", kb.vocabulary())));
}

TEST_CASE("compiled plan agrees with direct evaluation") {
    testing::Rng     rng(3);
    testing::KbShape shape{3, 3, 2, 6, 3, true};
    for (int k = 0; k < 500; ++k) {
        auto kb = testing::random_kb(rng, shape);
        auto m  = testing::random_model(rng, kb.vocabulary());
        auto i  = interpretation_of_abox(kb.vocabulary(), m);
        CompiledAxioms plan(kb.vocabulary(), kb.axioms());
        plan.load(m);
        auto axioms = kb.axioms();
        bool all    = true;
        for (std::size_t a = 0; a < axioms.size(); ++a) {
            bool direct = satisfies_axiom(i, axioms[a]);
            all         = all && direct;
            CHECK(plan.satisfied(a) == direct);
        }
        CHECK(plan.all_satisfied() == all);
        CHECK(is_bounded_model(i, kb) == all);

        auto c = testing::random_concept(rng, shape, 3);
        CHECK(plan.concept_extension(c) == extend_concept(i, c));
        auto r = testing::random_role(rng, shape);
        CHECK(plan.role_extension(r) == extend_role(i, r));
    }
}

TEST_CASE("semantic identities") {
    testing::Rng     rng(5);
    testing::KbShape shape{3, 3, 2, 0, 3, true};
    Vocabulary       v = testing::random_kb(rng, shape).vocabulary();
    for (int k = 0; k < 500; ++k) {
        auto i     = interpretation_of_abox(v, testing::random_model(rng, v));
        auto c     = testing::random_concept(rng, shape, 3);
        auto r     = testing::random_role(rng, shape);
        auto ext   = extend_concept(i, c);
        auto neg   = extend_concept(i, Concept::negation(c));
        Names all(v.individuals().begin(), v.individuals().end());
        Names uni = ext;
        uni.insert(neg.begin(), neg.end());
        CHECK(uni == all);
        for (const auto& x : ext)
            CHECK(neg.count(x) == 0);

        std::uint32_t n     = 1 + static_cast<std::uint32_t>(k % 3);
        auto          least = extend_concept(i, Concept::at_least(n, r, c));
        auto          most  = extend_concept(i, Concept::at_most(n - 1, r, c));
        for (const auto& x : least)
            CHECK(most.count(x) == 0);
        CHECK(extend_role(i, r.inverted().inverted()) == extend_role(i, r));
    }
}
