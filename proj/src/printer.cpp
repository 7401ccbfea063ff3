#include <bmr/parser.hpp>

#include <sstream>

namespace bmr {

namespace {

// Binding strength: 0 = or, 1 = and, 2 = prefix operators and atoms.
void print(std::ostream& out, const Concept& c, int level) {
    switch (c.kind()) {
        case ConceptKind::Top: out << "Top"; return;
        case ConceptKind::Bot: out << "Bot"; return;
        case ConceptKind::Name: out << c.name(); return;
        case ConceptKind::Nominal: {
            out << '{';
            const auto& inds = c.individuals();
            for (std::size_t i = 0; i < inds.size(); ++i)
                out << (i ? ", " : "") << inds[i];
            out << '}';
            return;
        }
        case ConceptKind::Or:
        case ConceptKind::And: {
            int  own   = c.is(ConceptKind::Or) ? 0 : 1;
            bool paren = level > own;
            if (paren)
                out << '(';
            print(out, c.left(), own);
            out << (own == 0 ? " or " : " and ");
            print(out, c.right(), own + 1);
            if (paren)
                out << ')';
            return;
        }
        case ConceptKind::Not:
            out << "not ";
            print(out, c.operand(), 2);
            return;
        case ConceptKind::Self: out << "self " << print_role(c.role()); return;
        case ConceptKind::Forall:
        case ConceptKind::Exists:
            out << (c.is(ConceptKind::Forall) ? "only " : "some ") << print_role(c.role()) << ' ';
            print(out, c.operand(), 2);
            return;
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost:
            out << (c.is(ConceptKind::AtLeast) ? ">= " : "<= ") << c.cardinality() << ' ' << print_role(c.role()) << ' ';
            print(out, c.operand(), 2);
            return;
    }
}

} // namespace

std::string print_role(const Role& r) {
    switch (r.kind()) {
        case RoleKind::Atomic: return r.name();
        case RoleKind::Inverse: return "inv(" + r.name() + ")";
        case RoleKind::Universal: return "U";
    }
    return {};
}

std::string print_concept(const Concept& c) {
    std::ostringstream out;
    print(out, c, 0);
    return out.str();
}

std::string print_axiom(const Axiom& ax) {
    std::ostringstream out;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, ConceptInclusion>) {
                out << print_concept(a.sub) << " SubClassOf " << print_concept(a.sup);
            }
            else if constexpr (std::is_same_v<T, RoleInclusion>) {
                for (std::size_t i = 0; i < a.chain.size(); ++i)
                    out << (i ? " o " : "") << print_role(a.chain[i]);
                out << " SubRoleOf " << print_role(a.sup);
            }
            else if constexpr (std::is_same_v<T, RoleDisjointness>) {
                out << "Disjoint(" << print_role(a.first) << ", " << print_role(a.second) << ')';
            }
            else if constexpr (std::is_same_v<T, ConceptAssertion>) {
                if (a.expr.is(ConceptKind::Name))
                    out << a.expr.name();
                else
                    out << '(' << print_concept(a.expr) << ')';
                out << '(' << a.individual << ')';
            }
            else if constexpr (std::is_same_v<T, RoleAssertion>) {
                out << print_role(a.role) << '(' << a.subject << ", " << a.object << ')';
            }
            else if constexpr (std::is_same_v<T, IndividualEquality>) {
                out << a.first << " = " << a.second;
            }
            else {
                out << a.first << " != " << a.second;
            }
        },
        ax);
    return out.str();
}

std::string print_kb(const KnowledgeBase& kb) {
    std::ostringstream out;
    // Names that occur in no axiom only survive a round trip as declarations.
    Vocabulary used = vocabulary_of(kb);
    auto declare = [&](const char* keyword, const std::vector<std::string>& names, auto&& has) {
        for (const auto& n : names)
            if (!has(used, n))
                out << keyword << ' ' << n << ".\n";
    };
    const auto& v = kb.vocabulary();
    declare("individual", v.individuals(), [](const Vocabulary& u, const std::string& n) { return u.has_individual(n); });
    declare("concept", v.concepts(), [](const Vocabulary& u, const std::string& n) { return u.has_concept(n); });
    declare("role", v.roles(), [](const Vocabulary& u, const std::string& n) { return u.has_role(n); });
    for (const auto& ax : kb.axioms())
        out << print_axiom(ax) << ".\n";
    return out.str();
}

} // namespace bmr
