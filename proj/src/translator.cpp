#include <bmr/parser.hpp>
#include <bmr/translator.hpp>

#include <stdexcept>

namespace bmr {

using asp::Atom;
using asp::Comparison;
using asp::CountExpression;
using asp::Program;
using asp::Rule;
using asp::Term;

namespace {

Term var(const std::string& n) { return Term::variable(n); }
Term cst(const std::string& n) { return Term::constant(n); }

Atom unary(const std::string& pred, Term t) { return Atom{pred, {std::move(t)}}; }
Atom binary(const std::string& pred, Term a, Term b) { return Atom{pred, {std::move(a), std::move(b)}}; }

std::optional<std::string> strip_prefix(const std::string& s, const std::string& prefix) {
    if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0)
        return s.substr(prefix.size());
    return std::nullopt;
}

// Literal filler A / not A as (name, negated).
std::pair<std::string, bool> literal_parts(const Concept& c) {
    if (c.is(ConceptKind::Name))
        return {c.name(), false};
    if (c.is(ConceptKind::Not) && c.operand().is(ConceptKind::Name))
        return {c.operand().name(), true};
    throw std::invalid_argument("restriction filler is not a literal: " + print_concept(c));
}

// Runs `f`, rewording an UnsupportedConstruct so that it names `ax`.
template <class F>
void for_axiom(const Axiom& ax, F&& f) {
    try {
        f();
    }
    catch (const UnsupportedConstruct&) {
        throw UnsupportedConstruct("the universal role is not supported by the translation (axiom `" +
                                   print_axiom(ax) + "`); use the oracle solver instead");
    }
}

} // namespace

std::optional<std::string> PredicateMangling::positive_concept(const std::string& predicate) {
    return strip_prefix(predicate, "c_");
}

std::optional<std::string> PredicateMangling::positive_role(const std::string& predicate) {
    return strip_prefix(predicate, "r_");
}

Atom ar(const Role& r, const Term& x, const Term& y) {
    switch (r.kind()) {
        case RoleKind::Atomic: return binary(PredicateMangling::role_pos(r.name()), x, y);
        case RoleKind::Inverse: return binary(PredicateMangling::role_pos(r.name()), y, x);
        case RoleKind::Universal: break;
    }
    throw UnsupportedConstruct("the universal role is not supported by the translation");
}

ConceptTranslation trans_concept(const Concept& c, const std::string& x, const std::string& y) {
    ConceptTranslation out;
    const Term         X = var(x), Y = var(y);
    auto counted = [&](Comparison op) {
        auto [name, negated] = literal_parts(c.operand());
        CountExpression ce;
        ce.element = ar(c.role(), X, Y);
        ce.conditions.push_back({unary(PredicateMangling::concept_pos(name), Y), negated});
        ce.op    = op;
        ce.bound = c.cardinality();
        out.counts.push_back(std::move(ce));
    };
    switch (c.kind()) {
        case ConceptKind::Name: out.negative.push_back(unary(PredicateMangling::concept_pos(c.name()), X)); break;
        case ConceptKind::Not: {
            const Concept& o = c.operand();
            if (o.is(ConceptKind::Name))
                out.positive.push_back(unary(PredicateMangling::concept_pos(o.name()), X));
            else if (o.is(ConceptKind::Self))
                out.positive.push_back(ar(o.role(), X, X));
            else
                throw std::invalid_argument("not a normalized disjunct: " + print_concept(c));
            break;
        }
        case ConceptKind::Nominal: {
            if (c.individuals().size() != 1)
                throw std::invalid_argument("not a normalized disjunct: " + print_concept(c));
            const std::string& a = c.individuals().front();
            out.negative.push_back(unary(PredicateMangling::nominal(a), X));
            out.side_facts.insert(unary(PredicateMangling::nominal(a), cst(a)));
            break;
        }
        case ConceptKind::Self: out.negative.push_back(ar(c.role(), X, X)); break;
        case ConceptKind::Forall: {
            auto [name, negated] = literal_parts(c.operand());
            out.positive.push_back(ar(c.role(), X, Y));
            if (negated)
                out.positive.push_back(unary(PredicateMangling::concept_pos(name), Y));
            else
                out.negative.push_back(unary(PredicateMangling::concept_pos(name), Y));
            break;
        }
        case ConceptKind::AtLeast: counted(Comparison::Lt); break;
        case ConceptKind::AtMost: counted(Comparison::Gt); break;
        default: throw std::invalid_argument("not a normalized disjunct: " + print_concept(c));
    }
    return out;
}

Program pi_gen(const KnowledgeBase& kb) {
    Program     p;
    const auto& v   = kb.vocabulary();
    const auto  top = PredicateMangling::top();
    for (const auto& a : v.concepts()) {
        auto pos = PredicateMangling::concept_pos(a), neg = PredicateMangling::concept_neg(a);
        p.add(Rule{{unary(pos, var("X"))}, {unary(top, var("X"))}, {unary(neg, var("X"))}, {}});
        p.add(Rule{{unary(neg, var("X"))}, {unary(top, var("X"))}, {unary(pos, var("X"))}, {}});
    }
    for (const auto& r : v.roles()) {
        auto pos = PredicateMangling::role_pos(r), neg = PredicateMangling::role_neg(r);
        std::vector<Atom> guard{unary(top, var("X")), unary(top, var("Y"))};
        p.add(Rule{{binary(pos, var("X"), var("Y"))}, guard, {binary(neg, var("X"), var("Y"))}, {}});
        p.add(Rule{{binary(neg, var("X"), var("Y"))}, guard, {binary(pos, var("X"), var("Y"))}, {}});
    }
    for (const auto& i : v.individuals())
        p.add_fact(unary(top, cst(i)));
    return p;
}

Program pi_chk_tbox(const KnowledgeBase& kb) {
    Program p;
    for (const auto& ax : kb.tbox()) {
        const auto* gci = std::get_if<ConceptInclusion>(&ax);
        if (!gci)
            continue;
        for_axiom(ax, [&] {
            if (!is_normalized_axiom(ax))
                throw std::invalid_argument("not a normalized axiom: " + print_axiom(ax));
            Rule r;
            r.positive.push_back(unary(PredicateMangling::top(), var("X")));
            std::size_t k = 0;
            for (const auto& d : disjuncts_of(gci->sup)) {
                auto t = trans_concept(d, "X", k == 0 ? "Y" : "Y" + std::to_string(k));
                ++k;
                r.positive.insert(r.positive.end(), t.positive.begin(), t.positive.end());
                r.negative.insert(r.negative.end(), t.negative.begin(), t.negative.end());
                r.counts.insert(r.counts.end(), t.counts.begin(), t.counts.end());
                for (const auto& f : t.side_facts)
                    p.add_fact(f);
            }
            asp::check_safety(r);
            p.add(std::move(r));
        });
    }
    return p;
}

Program pi_chk_rbox(const KnowledgeBase& kb) {
    Program p;
    const Term X = var("X"), Y = var("Y"), Z = var("Z");
    for (const auto& ax : kb.rbox()) {
        for_axiom(ax, [&] {
            Rule r;
            if (const auto* ria = std::get_if<RoleInclusion>(&ax)) {
                if (ria->chain.size() == 1) {
                    r.positive.push_back(ar(ria->chain[0], X, Y));
                    r.negative.push_back(ar(ria->sup, X, Y));
                }
                else if (ria->chain.size() == 2) {
                    r.positive.push_back(ar(ria->chain[0], X, Y));
                    r.positive.push_back(ar(ria->chain[1], Y, Z));
                    r.negative.push_back(ar(ria->sup, X, Z));
                }
                else {
                    throw std::invalid_argument("role chain longer than two: " + print_axiom(ax));
                }
            }
            else if (const auto* dis = std::get_if<RoleDisjointness>(&ax)) {
                r.positive.push_back(ar(dis->first, X, Y));
                r.positive.push_back(ar(dis->second, X, Y));
            }
            else {
                return;
            }
            asp::check_safety(r);
            p.add(std::move(r));
        });
    }
    return p;
}

Program pi_chk_abox(const KnowledgeBase& kb) {
    Program p;
    for (const auto& ax : kb.abox()) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
            auto [name, negated] = literal_parts(ca->expr);
            p.add_fact(unary(negated ? PredicateMangling::concept_neg(name) : PredicateMangling::concept_pos(name),
                             cst(ca->individual)));
        }
        else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
            if (ra->role.kind() != RoleKind::Atomic)
                throw std::invalid_argument("not a normalized axiom: " + print_axiom(ax));
            p.add_fact(binary(PredicateMangling::role_pos(ra->role.name()), cst(ra->subject), cst(ra->object)));
        }
        else {
            throw std::invalid_argument("not a normalized axiom: " + print_axiom(ax));
        }
    }
    const auto& v = kb.vocabulary();
    for (const auto& a : v.concepts())
        p.add(Rule{{},
                   {unary(PredicateMangling::concept_pos(a), var("X")), unary(PredicateMangling::concept_neg(a), var("X"))},
                   {},
                   {}});
    for (const auto& r : v.roles())
        p.add(Rule{{},
                   {binary(PredicateMangling::role_pos(r), var("X"), var("Y")),
                    binary(PredicateMangling::role_neg(r), var("X"), var("Y"))},
                   {},
                   {}});
    return p;
}

Program translate(const KnowledgeBase& kb) {
    if (!is_normalized(kb))
        throw std::invalid_argument("translate expects a normalized knowledge base");
    Program p = pi_gen(kb);
    p.append(pi_chk_tbox(kb));
    p.append(pi_chk_rbox(kb));
    p.append(pi_chk_abox(kb));
    return p;
}

Program translate(const NormalizedKB& nkb) { return translate(nkb.kb); }

ABoxRepresentation project_answer_set(const asp::AnswerSet& i, const FreshNameTable& fresh,
                                      const Vocabulary& source_vocab) {
    ABoxRepresentation rep;
    for (const auto& a : i) {
        if (a.args.size() == 1) {
            if (auto n = PredicateMangling::positive_concept(a.predicate))
                rep.concepts.insert({*n, a.args[0].name});
        }
        else if (a.args.size() == 2) {
            if (auto n = PredicateMangling::positive_role(a.predicate))
                rep.roles.insert({*n, a.args[0].name, a.args[1].name});
        }
    }
    return project_model(rep, fresh, source_vocab);
}

} // namespace bmr
