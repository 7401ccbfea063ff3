#include <bmr/benchmarks.hpp>

#include <stdexcept>

namespace bmr {

KnowledgeBase pigeonhole_kb(std::uint32_t n) {
    if (n == 0)
        throw std::invalid_argument("pigeonhole_kb needs n >= 1");
    auto a    = [](std::uint32_t i) { return "a" + std::to_string(i); };
    auto A    = [](std::uint32_t i) { return Concept::name("A" + std::to_string(i)); };
    Role r    = Role::atomic("r");
    std::vector<Axiom> axioms{ConceptAssertion{A(1), a(1)}};
    for (std::uint32_t i = 1; i <= n; ++i)
        axioms.push_back(ConceptAssertion{Concept::top(), a(i)});
    for (std::uint32_t i = 1; i <= n; ++i)
        axioms.push_back(ConceptInclusion{A(i), Concept::exists(r, A(i + 1))});
    for (std::uint32_t i = 1; i <= n + 1; ++i)
        for (std::uint32_t j = i + 1; j <= n + 1; ++j)
            axioms.push_back(ConceptInclusion{Concept::conjunction(A(i), A(j)), Concept::bot()});
    return KnowledgeBase(std::move(axioms));
}

std::string sudoku_cell(std::uint32_t row, std::uint32_t col) {
    return "c" + std::to_string(row) + "_" + std::to_string(col);
}

KnowledgeBase sudoku_kb(std::uint32_t box, const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>& givens) {
    if (box == 0)
        throw std::invalid_argument("sudoku_kb needs box >= 1");
    const std::uint32_t side = box * box;
    auto v    = [](std::uint32_t k) { return Concept::name("v" + std::to_string(k)); };
    Role sees = Role::atomic("sees");

    Vocabulary vocab;
    for (std::uint32_t r = 1; r <= side; ++r)
        for (std::uint32_t c = 1; c <= side; ++c)
            vocab.add_individual(sudoku_cell(r, c));
    for (std::uint32_t k = 1; k <= side; ++k)
        vocab.add_concept("v" + std::to_string(k));
    vocab.add_role("sees");

    std::vector<Axiom> axioms;
    for (std::uint32_t r1 = 1; r1 <= side; ++r1)
        for (std::uint32_t c1 = 1; c1 <= side; ++c1)
            for (std::uint32_t r2 = 1; r2 <= side; ++r2)
                for (std::uint32_t c2 = 1; c2 <= side; ++c2) {
                    if (r1 == r2 && c1 == c2)
                        continue;
                    bool same_box = (r1 - 1) / box == (r2 - 1) / box && (c1 - 1) / box == (c2 - 1) / box;
                    if (r1 == r2 || c1 == c2 || same_box)
                        axioms.push_back(RoleAssertion{sees, sudoku_cell(r1, c1), sudoku_cell(r2, c2)});
                }
    for (const auto& [cell, value] : givens) {
        if (cell.first < 1 || cell.first > side || cell.second < 1 || cell.second > side || value < 1 || value > side)
            throw std::invalid_argument("sudoku given out of range");
        axioms.push_back(ConceptAssertion{v(value), sudoku_cell(cell.first, cell.second)});
    }

    std::vector<Concept> values;
    for (std::uint32_t k = 1; k <= side; ++k)
        values.push_back(v(k));
    axioms.push_back(ConceptInclusion{Concept::top(), Concept::disjunction_of(values)});
    for (std::uint32_t i = 1; i <= side; ++i)
        for (std::uint32_t j = i + 1; j <= side; ++j)
            axioms.push_back(ConceptInclusion{Concept::conjunction(v(i), v(j)), Concept::bot()});
    for (std::uint32_t k = 1; k <= side; ++k)
        axioms.push_back(ConceptInclusion{v(k), Concept::forall(sees, Concept::negation(v(k)))});
    const std::uint32_t peers = 2 * (side - 1) + (box - 1) * (box - 1);
    axioms.push_back(ConceptInclusion{Concept::top(), Concept::at_most(peers, sees, Concept::top())});
    return KnowledgeBase(std::move(vocab), std::move(axioms));
}

KnowledgeBase example_kb() {
    Role r = Role::atomic("r"), s = Role::atomic("s");
    return KnowledgeBase({
        ConceptAssertion{Concept::name("A"), "a"},
        ConceptAssertion{Concept::name("A"), "b"},
        RoleAssertion{s, "a", "b"},
        ConceptInclusion{Concept::top(), Concept::exists(r, Concept::name("B"))},
        ConceptInclusion{Concept::top(), Concept::at_most(1, r.inverted(), Concept::top())},
        RoleDisjointness{s, r},
    });
}

} // namespace bmr
