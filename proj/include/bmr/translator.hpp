#pragma once
// Compilation of normalized knowledge bases into guess-and-check answer-set
// programs, and projection of answer sets back to fact sets.

#include <bmr/asp.hpp>
#include <bmr/kb.hpp>
#include <bmr/normalizer.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bmr {

// Predicate names used by the compiled program. The prefixes keep the
// sorts apart, so the mapping is injective.
struct PredicateMangling {
    static std::string concept_pos(const std::string& name) { return "c_" + name; }
    static std::string concept_neg(const std::string& name) { return "nc_" + name; }
    static std::string role_pos(const std::string& name) { return "r_" + name; }
    static std::string role_neg(const std::string& name) { return "nr_" + name; }
    static std::string top() { return "top"; }
    static std::string nominal(const std::string& individual) { return "o_" + individual; }

    // Inverse of concept_pos / role_pos; empty for any other predicate.
    static std::optional<std::string> positive_concept(const std::string& predicate);
    static std::optional<std::string> positive_role(const std::string& predicate);
};

// r(x, y) for an atomic role, s(y, x) for inv(s). Throws UnsupportedConstruct
// for the universal role.
[[nodiscard]] asp::Atom ar(const Role& r, const asp::Term& x, const asp::Term& y);

// Body elements standing for "the disjunct is false at X".
struct ConceptTranslation {
    std::vector<asp::Atom>            positive;
    std::vector<asp::Atom>            negative;
    std::vector<asp::CountExpression> counts;
    std::set<asp::Atom>               side_facts;
};

// `x` names the constrained element; `y` is the variable reserved for this
// disjunct's role successor. Throws std::invalid_argument for shapes outside
// the normal form.
[[nodiscard]] ConceptTranslation trans_concept(const Concept& c, const std::string& x, const std::string& y);

// Guess pairs for every concept and role name, plus top(a) per individual.
[[nodiscard]] asp::Program pi_gen(const KnowledgeBase& kb);
[[nodiscard]] asp::Program pi_chk_tbox(const KnowledgeBase& kb);
[[nodiscard]] asp::Program pi_chk_rbox(const KnowledgeBase& kb);
[[nodiscard]] asp::Program pi_chk_abox(const KnowledgeBase& kb);

// The full program for a normalized knowledge base. Throws
// std::invalid_argument if kb is not normalized and UnsupportedConstruct if
// it uses the universal role.
[[nodiscard]] asp::Program translate(const KnowledgeBase& kb);
[[nodiscard]] asp::Program translate(const NormalizedKB& nkb);

// Positive concept and role atoms as facts, restricted to the source names.
[[nodiscard]] ABoxRepresentation project_answer_set(const asp::AnswerSet& i, const FreshNameTable& fresh,
                                                    const Vocabulary& source_vocab);

} // namespace bmr
