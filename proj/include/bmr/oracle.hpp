#pragma once
// Direct evaluation of concept, role and axiom semantics over bounded
// interpretations, and the exhaustive bounded-model enumerator used as
// ground truth by the test suites.

#include <bmr/kb.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bmr {

[[nodiscard]] std::set<IndividualPair> extend_role(const BoundedInterpretation& i, const Role& r);
[[nodiscard]] std::set<std::string> extend_concept(const BoundedInterpretation& i, const Concept& c);
[[nodiscard]] bool satisfies_axiom(const BoundedInterpretation& i, const Axiom& ax);
// Throws VocabularyError if kb mentions names outside i's vocabulary.
[[nodiscard]] bool is_bounded_model(const BoundedInterpretation& i, const KnowledgeBase& kb);

// A set of axioms compiled against a fixed vocabulary. Extensions are bit
// rows over the individuals; every subexpression is evaluated at most once
// per interpretation state.
class CompiledAxioms {
public:
    CompiledAxioms(const Vocabulary& vocab, const std::vector<Axiom>& axioms);
    ~CompiledAxioms();
    CompiledAxioms(CompiledAxioms&&) noexcept;
    CompiledAxioms& operator=(CompiledAxioms&&) noexcept;

    [[nodiscard]] const Vocabulary& vocabulary() const noexcept;
    [[nodiscard]] std::size_t axiom_count() const noexcept;

    // Interpretation state, addressed by vocabulary indices.
    void clear();
    void load(const BoundedInterpretation& i);
    void load(const ABoxRepresentation& rep);
    void set_concept(std::size_t concept_idx, std::size_t individual, bool value);
    void set_role(std::size_t role, std::size_t subject, std::size_t object, bool value);

    [[nodiscard]] bool satisfied(std::size_t axiom);
    [[nodiscard]] bool all_satisfied();

    // Extensions of arbitrary expressions against the current state.
    [[nodiscard]] std::set<std::string> concept_extension(const Concept& c);
    [[nodiscard]] std::set<IndividualPair> role_extension(const Role& r);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Number of free bits of a bounded interpretation over `vocab`:
// |N_C|*|N_I| + |N_R|*|N_I|^2 (saturating).
[[nodiscard]] std::uint64_t interpretation_bits(const Vocabulary& vocab) noexcept;

inline constexpr std::uint64_t kDefaultBruteforceCap = 24;

// Lazily yields every bounded model of `kb`, in the order of a binary
// counter whose lowest bit is the first concept on the first individual
// (concepts by individuals, then roles by subject and object).
class BruteforceModels {
public:
    // Throws CapExceeded when interpretation_bits exceeds `cap`.
    explicit BruteforceModels(const KnowledgeBase& kb, std::uint64_t cap = kDefaultBruteforceCap);

    std::optional<ABoxRepresentation> next();
    [[nodiscard]] std::uint64_t candidates_checked() const noexcept { return counter_; }

private:
    Vocabulary     vocab_;
    CompiledAxioms plan_;
    std::uint64_t  bits_;
    std::uint64_t  counter_ = 0;
};

[[nodiscard]] std::vector<ABoxRepresentation> enumerate_bounded_models_bruteforce(
    const KnowledgeBase& kb, std::uint64_t cap = kDefaultBruteforceCap);

[[nodiscard]] bool entails_bm_bruteforce(const KnowledgeBase& kb, const Axiom& ax,
                                         std::uint64_t cap = kDefaultBruteforceCap);

} // namespace bmr
