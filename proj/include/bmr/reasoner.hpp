#pragma once
// Bounded-model reasoning tasks on top of normalize -> translate -> solve,
// with every reported model checked against the original knowledge base.

#include <bmr/asp.hpp>
#include <bmr/kb.hpp>
#include <bmr/normalizer.hpp>
#include <bmr/oracle.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bmr {

struct ReasonerOptions {
    enum class Backend : std::uint8_t { Pipeline, Oracle };
    Backend                  backend = Backend::Pipeline;
    // Check every model against the input with the oracle.
    bool                     verify = true;
    asp::SolveOptions::Engine engine = asp::SolveOptions::Engine::Auto;
    std::uint64_t            bruteforce_cap = kDefaultBruteforceCap;
};

struct ReasoningStats {
    std::string   engine;
    std::size_t   ground_rules = 0;
    std::size_t   variables    = 0;
    std::uint64_t decisions    = 0;
    std::uint64_t conflicts    = 0;
    std::size_t   models       = 0;
    double        seconds      = 0.0;
};

struct ReasoningResult {
    enum class Task : std::uint8_t { Sat, Entailment, Extraction, Enumeration };
    Task                              task    = Task::Sat;
    bool                              verdict = false;
    // A model for satisfiable / extraction, a countermodel for failed entailment.
    std::optional<ABoxRepresentation> witness;
    std::vector<ABoxRepresentation>   models;
    ReasoningStats                    stats;
};

// Raised when a model produced by the pipeline fails the oracle check.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// Distinct bounded models of `kb` in a fixed order, produced on demand.
// Throws UnsupportedConstruct (universal role) for the pipeline backend and
// CapExceeded for the oracle backend on oversized vocabularies.
class ModelEnumerator {
public:
    explicit ModelEnumerator(const KnowledgeBase& kb, ReasonerOptions options = {});
    ~ModelEnumerator();
    ModelEnumerator(ModelEnumerator&&) noexcept;
    ModelEnumerator& operator=(ModelEnumerator&&) noexcept;

    std::optional<ABoxRepresentation> next();
    [[nodiscard]] ReasoningStats stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

[[nodiscard]] ReasoningResult check_sat_bm(const KnowledgeBase& kb, ReasonerOptions options = {});
[[nodiscard]] std::optional<ABoxRepresentation> extract_model(const KnowledgeBase& kb, ReasonerOptions options = {});
[[nodiscard]] std::vector<ABoxRepresentation> enumerate_models(const KnowledgeBase& kb,
                                                               std::optional<std::size_t> limit = std::nullopt,
                                                               ReasonerOptions options = {});
// Verdict true iff `ax` holds in every bounded model; otherwise the first
// countermodel is the witness. Names in `ax` must belong to kb's vocabulary.
[[nodiscard]] ReasoningResult entails_bm(const KnowledgeBase& kb, const Axiom& ax, ReasonerOptions options = {});

// kb plus Top SubClassOf {a1, ..., an} and a_i != a_j for i < j. Throws
// std::invalid_argument when kb has no individuals.
[[nodiscard]] KnowledgeBase axiomatize_bm(const KnowledgeBase& kb);

// Clauses as nonzero integers, -k standing for the negation of variable k.
// Variable k becomes the concept p<k>; the single individual is `a`.
using Clause = std::vector<int>;
[[nodiscard]] KnowledgeBase reduce_3sat(const std::vector<Clause>& clauses);

} // namespace bmr
