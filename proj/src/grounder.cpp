#include <bmr/asp.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace bmr::asp {

namespace {

using Binding = std::map<std::string, std::string>;

Atom instantiate(const Atom& a, const Binding& b) {
    Atom out = a;
    for (auto& t : out.args)
        if (t.is_variable())
            if (auto it = b.find(t.name); it != b.end())
                t = Term::constant(it->second);
    return out;
}

bool unify(const Atom& pattern, const Atom& fact, Binding& b) {
    if (pattern.args.size() != fact.args.size())
        return false;
    for (std::size_t k = 0; k < pattern.args.size(); ++k) {
        const Term& p = pattern.args[k];
        if (!p.is_variable()) {
            if (p.name != fact.args[k].name)
                return false;
            continue;
        }
        auto [it, inserted] = b.emplace(p.name, fact.args[k].name);
        if (!inserted && it->second != fact.args[k].name)
            return false;
    }
    return true;
}

std::size_t bound_args(const Atom& a, const Binding& b) {
    std::size_t n = 0;
    for (const auto& t : a.args)
        n += !t.is_variable() || b.count(t.name);
    return n;
}

// Calls `emit` for every binding that makes all of `body` members of `base`.
void join(const std::vector<Atom>& body, const std::set<Atom>& base, Binding& b, std::vector<bool>& used,
          std::size_t done, const std::function<void(const Binding&)>& emit) {
    if (done == body.size()) {
        emit(b);
        return;
    }
    // Most-bound atom first; ties keep body order.
    std::size_t pick = body.size();
    std::size_t best = 0;
    for (std::size_t k = 0; k < body.size(); ++k) {
        if (used[k])
            continue;
        std::size_t score = bound_args(body[k], b) * 2 + (body[k].args.empty() ? 1 : 0);
        if (pick == body.size() || score > best) {
            pick = k;
            best = score;
        }
    }
    used[pick] = true;
    Atom pattern = instantiate(body[pick], b);
    if (pattern.is_ground()) {
        if (base.count(pattern))
            join(body, base, b, used, done + 1, emit);
    }
    else {
        Atom probe{pattern.predicate, {}};
        if (!pattern.args.empty() && !pattern.args[0].is_variable())
            probe.args.push_back(pattern.args[0]);
        for (auto it = base.lower_bound(probe); it != base.end() && it->predicate == pattern.predicate; ++it) {
            if (probe.args.size() == 1 && (it->args.empty() || it->args[0].name != probe.args[0].name))
                break;
            Binding saved = b;
            if (unify(pattern, *it, b))
                join(body, base, b, used, done + 1, emit);
            b = std::move(saved);
        }
    }
    used[pick] = false;
}

void for_each_instance(const Rule& r, const std::set<Atom>& base, const std::function<void(const Binding&)>& emit) {
    Binding           b;
    std::vector<bool> used(r.positive.size(), false);
    join(r.positive, base, b, used, 0, emit);
}

CountExpression instantiate(const CountExpression& c, const Binding& b) {
    CountExpression out = c;
    out.element         = instantiate(c.element, b);
    for (auto& s : out.conditions)
        s.atom = instantiate(s.atom, b);
    return out;
}

} // namespace

Program ground(const Program& p) {
    for (const auto& r : p.rules)
        check_safety(r);

    std::set<Atom> possible = p.facts;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : p.rules) {
            if (r.is_constraint())
                continue;
            std::vector<Atom> fresh;
            for_each_instance(r, possible, [&](const Binding& b) {
                for (const auto& h : r.head) {
                    Atom g = instantiate(h, b);
                    if (!possible.count(g))
                        fresh.push_back(std::move(g));
                }
            });
            for (auto& a : fresh)
                changed |= possible.insert(std::move(a)).second;
        }
    }

    Program        out;
    out.facts = p.facts;
    std::set<Rule> seen;
    for (const auto& r : p.rules) {
        std::vector<Rule> instances;
        for_each_instance(r, possible, [&](const Binding& b) {
            Rule g;
            for (const auto& a : r.head)
                g.head.push_back(instantiate(a, b));
            for (const auto& a : r.positive)
                g.positive.push_back(instantiate(a, b));
            for (const auto& a : r.negative)
                g.negative.push_back(instantiate(a, b));
            for (const auto& c : r.counts)
                g.counts.push_back(instantiate(c, b));
            instances.push_back(std::move(g));
        });
        std::sort(instances.begin(), instances.end());
        for (auto& g : instances)
            if (seen.insert(g).second)
                out.rules.push_back(std::move(g));
    }
    return out;
}

} // namespace bmr::asp
