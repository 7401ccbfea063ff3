#pragma once
// Disjunctive logic programs with default negation and #count aggregates:
// grounding, reducts, answer-set checking, two enumeration engines and
// text emission in the common gringo dialect.

#include <bmr/error.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bmr::asp {

struct Term {
    enum class Kind : std::uint8_t { Constant, Variable };
    Kind        kind = Kind::Constant;
    std::string name;

    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    [[nodiscard]] bool is_variable() const noexcept { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    [[nodiscard]] std::size_t arity() const noexcept { return args.size(); }
    [[nodiscard]] bool is_ground() const noexcept;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Shorthand for building atoms: atom("p", {"X", "a"}) treats names starting
// with an uppercase letter as variables.
[[nodiscard]] Atom atom(std::string predicate, std::vector<std::string> args = {});

struct SignedAtom {
    Atom atom;
    bool negated = false;
    friend bool operator==(const SignedAtom&, const SignedAtom&) = default;
    friend auto operator<=>(const SignedAtom&, const SignedAtom&) = default;
};

enum class Comparison : std::uint8_t { Le, Lt, Eq, Gt, Ge };

[[nodiscard]] const char* to_string(Comparison op) noexcept;
[[nodiscard]] bool compare(std::size_t lhs, Comparison op, std::size_t rhs) noexcept;

// #count{ l : conditions } op bound. Counts the distinct ground instances of
// `element` that are true together with their conditions. Variables of the
// element not bound by the enclosing rule are local to the aggregate; every
// local variable must occur in `element`.
struct CountExpression {
    Atom                    element;
    std::vector<SignedAtom> conditions;
    Comparison              op    = Comparison::Ge;
    std::uint32_t           bound = 0;
    friend bool operator==(const CountExpression&, const CountExpression&) = default;
    friend auto operator<=>(const CountExpression&, const CountExpression&) = default;
};

struct Rule {
    std::vector<Atom>            head; // disjunction; empty for constraints
    std::vector<Atom>            positive;
    std::vector<Atom>            negative;
    std::vector<CountExpression> counts;

    [[nodiscard]] bool is_constraint() const noexcept { return head.empty(); }
    [[nodiscard]] bool is_fact() const noexcept {
        return head.size() == 1 && positive.empty() && negative.empty() && counts.empty();
    }
    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Program {
    std::vector<Rule> rules;
    std::set<Atom>    facts; // ground

    void add(Rule r) { rules.push_back(std::move(r)); }
    void add_fact(Atom a);
    void append(const Program& other);
    friend bool operator==(const Program&, const Program&) = default;
};

using AnswerSet = std::set<Atom>;

// Variables that the enclosing rule must bind (all rule variables except the
// aggregate-local ones).
[[nodiscard]] std::set<std::string> global_variables(const Rule& r);
[[nodiscard]] std::set<std::string> local_variables(const CountExpression& c, const std::set<std::string>& global);
// Throws UnsafeRuleError naming the offending variable.
void check_safety(const Rule& r);
[[nodiscard]] bool is_safe(const Rule& r) noexcept;

// Grounding over the constants of the program. Only instances whose
// positive body can be derived are produced; aggregates keep their local
// variables. Output order follows the rule order, then the constant order.
[[nodiscard]] Program ground(const Program& p);

// Number of distinct true instances of the aggregate element.
[[nodiscard]] std::size_t count_value(const CountExpression& c, const AnswerSet& i);
[[nodiscard]] bool holds(const CountExpression& c, const AnswerSet& i);
[[nodiscard]] bool body_holds(const Rule& r, const AnswerSet& i);
[[nodiscard]] bool satisfies(const AnswerSet& i, const Rule& r);

// Rules whose negative body misses `i` and whose aggregates hold in `i`,
// stripped to head :- positive body.
[[nodiscard]] Program gl_reduct(const Program& ground_program, const AnswerSet& i);
[[nodiscard]] bool is_answer_set(const Program& p, const AnswerSet& i);
// As is_answer_set, for a program that is already ground.
[[nodiscard]] bool is_answer_set_ground(const Program& ground_program, const AnswerSet& i);

struct SolveOptions {
    std::optional<std::size_t> limit;
    std::size_t                naive_atom_cap = 20;
    enum class Engine : std::uint8_t { Auto, Naive, Propagate } engine = Engine::Auto;
};

struct SolveStats {
    std::string   engine;
    std::size_t   ground_rules = 0;
    std::size_t   variables    = 0;
    std::uint64_t decisions    = 0;
    std::uint64_t conflicts    = 0;
    std::size_t   models       = 0;
};

// Lazy answer-set enumeration. Throws SolverContractError at construction if
// the program fits neither engine.
class Solver {
public:
    explicit Solver(const Program& p, SolveOptions options = {});
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    std::optional<AnswerSet> next();
    [[nodiscard]] const SolveStats& stats() const noexcept;

    class Engine;

private:
    std::unique_ptr<Engine> engine_;
    SolveOptions            options_;
    SolveStats              stats_;
};

[[nodiscard]] std::vector<AnswerSet> solve(const Program& p, SolveOptions options = {});

// True if the program has the guess-and-check shape the propagating engine
// accepts.
[[nodiscard]] bool is_guess_and_check(const Program& p);

[[nodiscard]] std::string emit_term(const Term& t);
[[nodiscard]] std::string emit_atom(const Atom& a);
[[nodiscard]] std::string emit_rule(const Rule& r);
// One statement per line: facts (sorted) first, then rules in order.
[[nodiscard]] std::string emit_text(const Program& p);

} // namespace bmr::asp
