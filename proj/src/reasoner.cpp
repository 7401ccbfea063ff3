#include <bmr/parser.hpp>
#include <bmr/reasoner.hpp>
#include <bmr/translator.hpp>

#include <chrono>
#include <cstdlib>
#include <stdexcept>

namespace bmr {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

} // namespace

struct ModelEnumerator::Impl {
    Impl(const KnowledgeBase& kb, ReasonerOptions opts)
        : options(opts), started(Clock::now()), check(kb.vocabulary(), kb.axioms()) {
        if (options.backend == ReasonerOptions::Backend::Oracle) {
            oracle.emplace(kb, options.bruteforce_cap);
            stats.engine = "oracle";
        }
        else {
            normalized = std::make_unique<NormalizedKB>(normalize(kb));
            asp::SolveOptions so;
            so.engine = options.engine;
            solver.emplace(translate(*normalized), so);
        }
        stats.seconds = since(started);
    }

    std::optional<ABoxRepresentation> next() {
        auto t0  = Clock::now();
        auto out = advance();
        stats.seconds += since(t0);
        return out;
    }

    std::optional<ABoxRepresentation> advance() {
        if (oracle) {
            auto m = oracle->next();
            if (m)
                ++stats.models;
            return m;
        }
        while (auto as = solver->next()) {
            auto m = project_answer_set(*as, normalized->fresh, normalized->source_vocabulary);
            if (!seen.insert(m).second)
                continue;
            if (options.verify)
                verify(m);
            ++stats.models;
            return m;
        }
        return std::nullopt;
    }

    void verify(const ABoxRepresentation& m) {
        check.load(m);
        if (!check.all_satisfied())
            throw VerificationFailure("pipeline produced a fact set that is not a bounded model");
    }

    ReasoningStats snapshot() const {
        ReasoningStats s = stats;
        if (solver) {
            const auto& ss = solver->stats();
            s.engine       = ss.engine;
            s.ground_rules = ss.ground_rules;
            s.variables    = ss.variables;
            s.decisions    = ss.decisions;
            s.conflicts    = ss.conflicts;
        }
        else if (oracle) {
            s.decisions = oracle->candidates_checked();
        }
        return s;
    }

    ReasonerOptions                options;
    Clock::time_point              started;
    CompiledAxioms                 check;
    std::unique_ptr<NormalizedKB>  normalized;
    std::optional<asp::Solver>     solver;
    std::optional<BruteforceModels> oracle;
    std::set<ABoxRepresentation>   seen;
    ReasoningStats                 stats;
};

ModelEnumerator::ModelEnumerator(const KnowledgeBase& kb, ReasonerOptions options)
    : impl_(std::make_unique<Impl>(kb, options)) {}
ModelEnumerator::~ModelEnumerator()                                     = default;
ModelEnumerator::ModelEnumerator(ModelEnumerator&&) noexcept            = default;
ModelEnumerator& ModelEnumerator::operator=(ModelEnumerator&&) noexcept = default;

std::optional<ABoxRepresentation> ModelEnumerator::next() { return impl_->next(); }
ReasoningStats ModelEnumerator::stats() const { return impl_->snapshot(); }

ReasoningResult check_sat_bm(const KnowledgeBase& kb, ReasonerOptions options) {
    options.verify = true;
    ModelEnumerator e(kb, options);
    ReasoningResult r;
    r.task    = ReasoningResult::Task::Sat;
    r.witness = e.next();
    r.verdict = r.witness.has_value();
    r.stats   = e.stats();
    return r;
}

std::optional<ABoxRepresentation> extract_model(const KnowledgeBase& kb, ReasonerOptions options) {
    options.verify = true;
    ModelEnumerator e(kb, options);
    return e.next();
}

std::vector<ABoxRepresentation> enumerate_models(const KnowledgeBase& kb, std::optional<std::size_t> limit,
                                                 ReasonerOptions options) {
    ModelEnumerator                 e(kb, options);
    std::vector<ABoxRepresentation> out;
    while (!limit || out.size() < *limit) {
        auto m = e.next();
        if (!m)
            break;
        out.push_back(std::move(*m));
    }
    return out;
}

ReasoningResult entails_bm(const KnowledgeBase& kb, const Axiom& ax, ReasonerOptions options) {
    Vocabulary names;
    collect_names(ax, names);
    if (!names.subset_of(kb.vocabulary()))
        throw VocabularyError("axiom `" + print_axiom(ax) + "` uses names outside the knowledge base");
    CompiledAxioms  target(kb.vocabulary(), {ax});
    ModelEnumerator e(kb, options);
    ReasoningResult r;
    r.task    = ReasoningResult::Task::Entailment;
    r.verdict = true;
    while (auto m = e.next()) {
        target.load(*m);
        if (!target.all_satisfied()) {
            r.verdict = false;
            r.witness = std::move(*m);
            break;
        }
    }
    r.stats = e.stats();
    return r;
}

KnowledgeBase axiomatize_bm(const KnowledgeBase& kb) {
    const auto& inds = kb.vocabulary().individuals();
    if (inds.empty())
        throw std::invalid_argument("axiomatization needs at least one individual");
    std::vector<Axiom> axioms = kb.axioms();
    axioms.push_back(ConceptInclusion{Concept::top(), Concept::nominal(inds)});
    for (std::size_t i = 0; i < inds.size(); ++i)
        for (std::size_t j = i + 1; j < inds.size(); ++j)
            axioms.push_back(IndividualInequality{inds[i], inds[j]});
    return KnowledgeBase(kb.vocabulary(), std::move(axioms));
}

KnowledgeBase reduce_3sat(const std::vector<Clause>& clauses) {
    Vocabulary vocab;
    vocab.add_individual("a");
    std::vector<Concept> conj;
    for (const auto& clause : clauses) {
        std::vector<Concept> lits;
        for (int l : clause) {
            if (l == 0)
                throw std::invalid_argument("clause literal 0");
            std::string name = "p" + std::to_string(std::abs(l));
            vocab.add_concept(name);
            Concept c = Concept::name(name);
            lits.push_back(l > 0 ? c : Concept::negation(c));
        }
        conj.push_back(Concept::disjunction_of(lits));
    }
    std::vector<Axiom> axioms{ConceptAssertion{Concept::top(), "a"}};
    if (!conj.empty())
        axioms.push_back(ConceptInclusion{Concept::top(), Concept::conjunction_of(conj)});
    return KnowledgeBase(std::move(vocab), std::move(axioms));
}

} // namespace bmr
