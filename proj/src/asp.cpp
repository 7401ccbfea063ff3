#include <bmr/asp.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace bmr::asp {

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Atom atom(std::string predicate, std::vector<std::string> args) {
    Atom a{std::move(predicate), {}};
    for (auto& s : args) {
        bool var = !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
        a.args.push_back(var ? Term::variable(std::move(s)) : Term::constant(std::move(s)));
    }
    return a;
}

void Program::add_fact(Atom a) {
    if (!a.is_ground())
        throw UnsafeRuleError("fact " + emit_atom(a) + " is not ground");
    facts.insert(std::move(a));
}

void Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    facts.insert(other.facts.begin(), other.facts.end());
}

const char* to_string(Comparison op) noexcept {
    switch (op) {
        case Comparison::Le: return "<=";
        case Comparison::Lt: return "<";
        case Comparison::Eq: return "=";
        case Comparison::Gt: return ">";
        case Comparison::Ge: return ">=";
    }
    return "?";
}

bool compare(std::size_t lhs, Comparison op, std::size_t rhs) noexcept {
    switch (op) {
        case Comparison::Le: return lhs <= rhs;
        case Comparison::Lt: return lhs < rhs;
        case Comparison::Eq: return lhs == rhs;
        case Comparison::Gt: return lhs > rhs;
        case Comparison::Ge: return lhs >= rhs;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Variables and safety

namespace {

void vars_of(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args)
        if (t.is_variable())
            out.insert(t.name);
}

void vars_in_order(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args)
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end())
            out.push_back(t.name);
}

std::set<std::string> positive_vars(const Rule& r) {
    std::set<std::string> out;
    for (const auto& a : r.positive)
        vars_of(a, out);
    return out;
}

} // namespace

std::set<std::string> global_variables(const Rule& r) {
    std::set<std::string> out = positive_vars(r);
    for (const auto& a : r.head)
        vars_of(a, out);
    for (const auto& a : r.negative)
        vars_of(a, out);
    return out;
}

std::set<std::string> local_variables(const CountExpression& c, const std::set<std::string>& global) {
    std::set<std::string> all;
    vars_of(c.element, all);
    for (const auto& s : c.conditions)
        vars_of(s.atom, all);
    std::set<std::string> out;
    for (const auto& v : all)
        if (!global.count(v))
            out.insert(v);
    return out;
}

void check_safety(const Rule& r) {
    if (r.head.empty() && r.positive.empty() && r.negative.empty() && r.counts.empty())
        throw UnsafeRuleError("rule with empty head and empty body");
    std::set<std::string> bound = positive_vars(r);
    auto require = [&](const Atom& a, const char* where) {
        for (const auto& t : a.args)
            if (t.is_variable() && !bound.count(t.name))
                throw UnsafeRuleError("variable " + t.name + " in " + where + " atom " + emit_atom(a) +
                                      " does not occur in the positive body of: " + emit_rule(r));
    };
    for (const auto& a : r.head)
        require(a, "head");
    for (const auto& a : r.negative)
        require(a, "negative body");
    for (const auto& c : r.counts) {
        std::set<std::string> in_element;
        vars_of(c.element, in_element);
        for (const auto& v : local_variables(c, bound))
            if (!in_element.count(v))
                throw UnsafeRuleError("aggregate variable " + v + " does not occur in the counted atom of: " +
                                      emit_rule(r));
    }
}

bool is_safe(const Rule& r) noexcept {
    try {
        check_safety(r);
        return true;
    }
    catch (const UnsafeRuleError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Matches `pattern` against ground `fact`, extending `binding`.
bool match(const Atom& pattern, const Atom& fact, std::map<std::string, std::string>& binding) {
    if (pattern.predicate != fact.predicate || pattern.args.size() != fact.args.size())
        return false;
    for (std::size_t k = 0; k < pattern.args.size(); ++k) {
        const Term& p = pattern.args[k];
        const Term& f = fact.args[k];
        if (!p.is_variable()) {
            if (p.name != f.name)
                return false;
            continue;
        }
        auto [it, inserted] = binding.emplace(p.name, f.name);
        if (!inserted && it->second != f.name)
            return false;
    }
    return true;
}

Atom substitute(const Atom& a, const std::map<std::string, std::string>& binding) {
    Atom out = a;
    for (auto& t : out.args)
        if (t.is_variable())
            if (auto it = binding.find(t.name); it != binding.end())
                t = Term::constant(it->second);
    return out;
}

} // namespace

std::size_t count_value(const CountExpression& c, const AnswerSet& i) {
    std::size_t count = 0;
    Atom        probe{c.element.predicate, {}};
    for (auto it = i.lower_bound(probe); it != i.end() && it->predicate == c.element.predicate; ++it) {
        std::map<std::string, std::string> binding;
        if (!match(c.element, *it, binding))
            continue;
        bool ok = std::all_of(c.conditions.begin(), c.conditions.end(), [&](const SignedAtom& s) {
            return i.count(substitute(s.atom, binding)) != static_cast<std::size_t>(s.negated ? 1 : 0);
        });
        if (ok)
            ++count;
    }
    return count;
}

bool holds(const CountExpression& c, const AnswerSet& i) { return compare(count_value(c, i), c.op, c.bound); }

bool body_holds(const Rule& r, const AnswerSet& i) {
    for (const auto& a : r.positive)
        if (!i.count(a))
            return false;
    for (const auto& a : r.negative)
        if (i.count(a))
            return false;
    for (const auto& c : r.counts)
        if (!holds(c, i))
            return false;
    return true;
}

bool satisfies(const AnswerSet& i, const Rule& r) {
    if (!body_holds(r, i))
        return true;
    return std::any_of(r.head.begin(), r.head.end(), [&](const Atom& h) { return i.count(h) > 0; });
}

Program gl_reduct(const Program& g, const AnswerSet& i) {
    Program out;
    out.facts = g.facts;
    for (const auto& r : g.rules) {
        if (std::any_of(r.negative.begin(), r.negative.end(), [&](const Atom& a) { return i.count(a) > 0; }))
            continue;
        if (!std::all_of(r.counts.begin(), r.counts.end(), [&](const CountExpression& c) { return holds(c, i); }))
            continue;
        out.rules.push_back(Rule{r.head, r.positive, {}, {}});
    }
    return out;
}

namespace {

// Least model of the definite part (constraints ignored).
AnswerSet least_model(const Program& reduct) {
    AnswerSet model = reduct.facts;
    bool      changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : reduct.rules) {
            if (r.head.size() != 1 || model.count(r.head[0]))
                continue;
            if (std::all_of(r.positive.begin(), r.positive.end(), [&](const Atom& a) { return model.count(a) > 0; })) {
                model.insert(r.head[0]);
                changed = true;
            }
        }
    }
    return model;
}

// Is there a model of the reduct strictly inside `i`? Small DPLL over the
// atoms of i; atoms outside i are false.
bool smaller_model_exists(const Program& reduct, const AnswerSet& i) {
    std::vector<Atom> atoms(i.begin(), i.end());
    auto index = [&](const Atom& a) -> int {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
        return it != atoms.end() && *it == a ? static_cast<int>(it - atoms.begin()) : -1;
    };
    // Clauses as literal lists: +k+1 means atom k true, -(k+1) false.
    std::vector<std::vector<int>> clauses;
    for (const auto& f : reduct.facts) {
        int k = index(f);
        if (k < 0)
            return false; // i misses a fact: no subset of i is a model either
        clauses.push_back({k + 1});
    }
    for (const auto& r : reduct.rules) {
        if (r.head.empty())
            continue;
        std::vector<int> clause;
        bool             vacuous = false;
        for (const auto& b : r.positive) {
            int k = index(b);
            if (k < 0) {
                vacuous = true;
                break;
            }
            clause.push_back(-(k + 1));
        }
        if (vacuous)
            continue;
        for (const auto& h : r.head)
            if (int k = index(h); k >= 0)
                clause.push_back(k + 1);
        clauses.push_back(std::move(clause));
    }
    std::vector<int> strict;
    for (std::size_t k = 0; k < atoms.size(); ++k)
        strict.push_back(-static_cast<int>(k + 1));
    clauses.push_back(std::move(strict));

    std::vector<int> value(atoms.size(), -1);
    std::function<bool()> search = [&]() -> bool {
        // Unit propagation to fixpoint, remembering what to undo.
        std::vector<std::size_t> assigned;
        auto undo = [&]() {
            for (auto k : assigned)
                value[k] = -1;
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& cl : clauses) {
                int  unassigned = 0, last = 0;
                bool sat        = false;
                for (int lit : cl) {
                    int v = value[static_cast<std::size_t>(std::abs(lit) - 1)];
                    if (v < 0) {
                        ++unassigned;
                        last = lit;
                    }
                    else if ((v == 1) == (lit > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat)
                    continue;
                if (unassigned == 0) {
                    undo();
                    return false;
                }
                if (unassigned == 1) {
                    auto k   = static_cast<std::size_t>(std::abs(last) - 1);
                    value[k] = last > 0 ? 1 : 0;
                    assigned.push_back(k);
                    changed = true;
                }
            }
        }
        auto open = std::find(value.begin(), value.end(), -1);
        if (open == value.end())
            return true;
        auto k = static_cast<std::size_t>(open - value.begin());
        for (int v : {0, 1}) {
            value[k] = v;
            if (search())
                return true;
        }
        value[k] = -1;
        undo();
        return false;
    };
    return search();
}

} // namespace

bool is_answer_set(const Program& p, const AnswerSet& i) { return is_answer_set_ground(ground(p), i); }

bool is_answer_set_ground(const Program& g, const AnswerSet& i) {
    for (const auto& a : i)
        if (!a.is_ground())
            return false;
    for (const auto& f : g.facts)
        if (!i.count(f))
            return false;
    for (const auto& r : g.rules)
        if (!satisfies(i, r))
            return false;
    Program reduct = gl_reduct(g, i);
    bool    normal = std::all_of(reduct.rules.begin(), reduct.rules.end(), [](const Rule& r) { return r.head.size() <= 1; });
    if (normal)
        return least_model(reduct) == i;
    return !smaller_model_exists(reduct, i);
}

// ---------------------------------------------------------------------------
// Emission

std::string emit_term(const Term& t) {
    if (t.is_variable())
        return t.name;
    const std::string& s = t.name;
    bool plain = !s.empty() && std::islower(static_cast<unsigned char>(s[0])) &&
                 std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    bool number = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (plain || number)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

std::string emit_atom(const Atom& a) {
    std::string out = a.predicate;
    if (a.args.empty())
        return out;
    out += '(';
    for (std::size_t k = 0; k < a.args.size(); ++k)
        out += (k ? "," : "") + emit_term(a.args[k]);
    return out + ')';
}

std::string emit_rule(const Rule& r) {
    std::string out;
    for (std::size_t k = 0; k < r.head.size(); ++k)
        out += (k ? "; " : "") + emit_atom(r.head[k]);
    std::vector<std::string> body;
    for (const auto& a : r.positive)
        body.push_back(emit_atom(a));
    for (const auto& a : r.negative)
        body.push_back("not " + emit_atom(a));
    std::set<std::string> global = global_variables(r);
    for (const auto& c : r.counts) {
        std::vector<std::string> locals;
        vars_in_order(c.element, locals);
        locals.erase(std::remove_if(locals.begin(), locals.end(), [&](const std::string& v) { return global.count(v) > 0; }),
                     locals.end());
        std::string tuple;
        for (std::size_t k = 0; k < locals.size(); ++k)
            tuple += (k ? "," : "") + locals[k];
        std::string agg = "#count{ " + (tuple.empty() ? std::string("0") : tuple) + " : " + emit_atom(c.element);
        for (const auto& s : c.conditions)
            agg += ", " + std::string(s.negated ? "not " : "") + emit_atom(s.atom);
        agg += " } " + std::string(to_string(c.op)) + " " + std::to_string(c.bound);
        body.push_back(std::move(agg));
    }
    if (body.empty())
        return out + ".";
    out += out.empty() ? ":- " : " :- ";
    for (std::size_t k = 0; k < body.size(); ++k)
        out += (k ? ", " : "") + body[k];
    return out + ".";
}

std::string emit_text(const Program& p) {
    std::string out;
    for (const auto& f : p.facts)
        out += emit_atom(f) + ".\n";
    for (const auto& r : p.rules)
        out += emit_rule(r) + "\n";
    return out;
}

} // namespace bmr::asp
