#pragma once
// Knowledge bases used by the acceptance suite, the sample data and the
// gen_bench tool.

#include <bmr/kb.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace bmr {

// A1(a1), Top(a1..an), A_i SubClassOf some r A_{i+1} for i <= n, and
// pairwise disjoint A_1..A_{n+1}: an r-chain of n+1 distinct elements over
// only n individuals, hence no bounded model. Requires n >= 1.
[[nodiscard]] KnowledgeBase pigeonhole_kb(std::uint32_t n);

// Sudoku of side box*box. Cells are individuals c<row>_<col> (1-based), the
// values are concepts v1..v<side>, and the role `sees` links every pair of
// distinct cells sharing a row, column or box. Every cell takes exactly one
// value that none of its peers takes; an at-most restriction pins `sees` to
// the asserted pairs. `givens` maps (row, col) to a value.
[[nodiscard]] KnowledgeBase sudoku_kb(std::uint32_t box,
                                      const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>& givens = {});
[[nodiscard]] std::string sudoku_cell(std::uint32_t row, std::uint32_t col);

// A(a), A(b), s(a, b); Top SubClassOf some r B; Top SubClassOf <= 1 inv(r) Top;
// Disjoint(s, r).
[[nodiscard]] KnowledgeBase example_kb();

} // namespace bmr
