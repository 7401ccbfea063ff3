#pragma once
// Negation normal form and the structural transformation into normalized
// knowledge bases (GCIs of the shape Top SubClassOf C1 or ... or Cn, literal
// ABox, role chains of length at most two).

#include <bmr/kb.hpp>

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bmr {

// Negation only in front of concept names, single nominals and Self
// restrictions. Exists becomes AtLeast 1, AtMost 0 becomes Forall,
// multi-individual nominals become disjunctions, and Top/Bot are simplified
// away wherever they are an operand.
[[nodiscard]] Concept nnf(const Concept& c);

// not A -> A, A -> not A; any other concept -> nnf(not C).
[[nodiscard]] Concept dotted_neg(const Concept& c);

[[nodiscard]] bool pos(const Concept& c);

class FreshNameTable {
public:
    // `reserved` names are never handed out.
    explicit FreshNameTable(Vocabulary reserved = {});

    // The fresh concept name for `c`, allocated on first request.
    const std::string& concept_for(const Concept& c);
    // The fresh role standing for the composition first o second.
    const std::string& chain_role_for(const Role& first, const Role& second);
    // Auxiliary names that exist only to make the ABox nonempty.
    const std::string& guard_concept();
    const std::string& guard_individual();

    [[nodiscard]] const std::vector<std::pair<Concept, std::string>>& concepts() const noexcept { return by_concept_; }
    [[nodiscard]] const std::vector<std::pair<std::pair<Role, Role>, std::string>>& chain_roles() const noexcept {
        return by_chain_;
    }
    [[nodiscard]] bool has_guard_concept() const noexcept { return !guard_concept_.empty(); }
    [[nodiscard]] bool has_guard_individual() const noexcept { return !guard_individual_.empty(); }

    [[nodiscard]] bool is_fresh_concept(const std::string& name) const;
    [[nodiscard]] bool is_fresh_role(const std::string& name) const;
    [[nodiscard]] bool is_fresh_individual(const std::string& name) const;
    [[nodiscard]] bool empty() const noexcept;

private:
    std::string allocate(const char* prefix);

    Vocabulary                                                 reserved_;
    std::size_t                                                counter_ = 0;
    std::vector<std::pair<Concept, std::string>>               by_concept_;
    std::unordered_map<Concept, std::size_t, ConceptHash>      concept_index_;
    std::vector<std::pair<std::pair<Role, Role>, std::string>> by_chain_;
    std::map<std::pair<Role, Role>, std::size_t>               chain_index_;
    std::string                                                guard_concept_, guard_individual_;
};

// Q_C for pos(C), otherwise not Q_C.
[[nodiscard]] Concept alpha(const Concept& c, FreshNameTable& fresh);

// The normalized axioms produced for one input axiom, deduplicated, in
// production order. Empty for tautologies.
[[nodiscard]] std::vector<Axiom> omega_axiom(const Axiom& ax, FreshNameTable& fresh);

struct NormalizedKB {
    KnowledgeBase  kb;
    FreshNameTable fresh;
    Vocabulary     source_vocabulary;
};

[[nodiscard]] NormalizedKB normalize(const KnowledgeBase& kb);

// Top SubClassOf Bot: the normalized stand-in for an unsatisfiable axiom.
[[nodiscard]] bool is_false_marker(const Axiom& ax) noexcept;
[[nodiscard]] bool is_normalized_disjunct(const Concept& c) noexcept;
[[nodiscard]] bool is_normalized_axiom(const Axiom& ax) noexcept;
[[nodiscard]] bool is_normalized(const KnowledgeBase& kb) noexcept;

// Flattens a disjunction into its operands (Bot alone gives an empty list).
[[nodiscard]] std::vector<Concept> disjuncts_of(const Concept& c);

// Drops every fact that mentions a fresh name.
[[nodiscard]] ABoxRepresentation project_model(const ABoxRepresentation& rep, const FreshNameTable& fresh,
                                               const Vocabulary& source_vocab);

} // namespace bmr
