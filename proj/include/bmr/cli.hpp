#pragma once
// Command-line front end. Exit codes: 0 success (satisfiable, entailed,
// models found), 1 negative answer, 2 usage, input or internal error.

#include <bmr/kb.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bmr::cli {

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One fact per line (`A(a).`, `r(a, b).`), concepts before roles.
[[nodiscard]] std::string format_facts(const ABoxRepresentation& model);
// {"concepts":{name:[individuals]},"roles":{name:[[subject,object]]}} over
// every name of `vocab`.
[[nodiscard]] std::string format_json(const ABoxRepresentation& model, const Vocabulary& vocab);

} // namespace bmr::cli
