#include <bmr/normalizer.hpp>

#include <algorithm>
#include <set>

namespace bmr {

namespace {

Concept mk_and(const Concept& a, const Concept& b) {
    if (a.is(ConceptKind::Bot) || b.is(ConceptKind::Bot))
        return Concept::bot();
    if (a.is(ConceptKind::Top))
        return b;
    if (b.is(ConceptKind::Top))
        return a;
    return Concept::conjunction(a, b);
}

Concept mk_or(const Concept& a, const Concept& b) {
    if (a.is(ConceptKind::Top) || b.is(ConceptKind::Top))
        return Concept::top();
    if (a.is(ConceptKind::Bot))
        return b;
    if (b.is(ConceptKind::Bot))
        return a;
    return Concept::disjunction(a, b);
}

Concept mk_forall(const Role& r, const Concept& f) {
    return f.is(ConceptKind::Top) ? Concept::top() : Concept::forall(r, f);
}

Concept mk_at_least(std::uint32_t n, const Role& r, const Concept& f) {
    if (n == 0)
        return Concept::top();
    return f.is(ConceptKind::Bot) ? Concept::bot() : Concept::at_least(n, r, f);
}

Concept nnf_neg(const Concept& c);

Concept nnf_pos(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
        case ConceptKind::Name:
        case ConceptKind::Self: return c;
        case ConceptKind::Not: return nnf_neg(c.operand());
        case ConceptKind::And: return mk_and(nnf_pos(c.left()), nnf_pos(c.right()));
        case ConceptKind::Or: return mk_or(nnf_pos(c.left()), nnf_pos(c.right()));
        case ConceptKind::Nominal: {
            const auto& inds = c.individuals();
            if (inds.size() == 1)
                return c;
            Concept out = Concept::nominal({inds[0]});
            for (std::size_t i = 1; i < inds.size(); ++i)
                out = mk_or(out, Concept::nominal({inds[i]}));
            return out;
        }
        case ConceptKind::Forall: return mk_forall(c.role(), nnf_pos(c.operand()));
        case ConceptKind::Exists: return mk_at_least(1, c.role(), nnf_pos(c.operand()));
        case ConceptKind::AtLeast: return mk_at_least(c.cardinality(), c.role(), nnf_pos(c.operand()));
        case ConceptKind::AtMost: {
            if (c.cardinality() == 0)
                return mk_forall(c.role(), nnf_neg(c.operand()));
            Concept f = nnf_pos(c.operand());
            return f.is(ConceptKind::Bot) ? Concept::top() : Concept::at_most(c.cardinality(), c.role(), f);
        }
    }
    return c;
}

// nnf of (not c).
Concept nnf_neg(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top: return Concept::bot();
        case ConceptKind::Bot: return Concept::top();
        case ConceptKind::Name:
        case ConceptKind::Self: return Concept::negation(c);
        case ConceptKind::Not: return nnf_pos(c.operand());
        case ConceptKind::And: return mk_or(nnf_neg(c.left()), nnf_neg(c.right()));
        case ConceptKind::Or: return mk_and(nnf_neg(c.left()), nnf_neg(c.right()));
        case ConceptKind::Nominal: {
            const auto& inds = c.individuals();
            Concept     out  = Concept::negation(Concept::nominal({inds[0]}));
            for (std::size_t i = 1; i < inds.size(); ++i)
                out = mk_and(out, Concept::negation(Concept::nominal({inds[i]})));
            return out;
        }
        case ConceptKind::Forall: return mk_at_least(1, c.role(), nnf_neg(c.operand()));
        case ConceptKind::Exists: return mk_forall(c.role(), nnf_neg(c.operand()));
        case ConceptKind::AtLeast: {
            // not >=n r.C  ==  <=(n-1) r.C
            Concept shifted = Concept::at_most(c.cardinality() - 1, c.role(), c.operand());
            return nnf_pos(shifted);
        }
        case ConceptKind::AtMost: return mk_at_least(c.cardinality() + 1, c.role(), nnf_pos(c.operand()));
    }
    return c;
}

void flatten(const Concept& c, ConceptKind op, std::vector<Concept>& out) {
    if (c.is(op)) {
        flatten(c.left(), op, out);
        flatten(c.right(), op, out);
    }
    else {
        out.push_back(c);
    }
}

bool is_negated_nominal(const Concept& c) {
    return c.is(ConceptKind::Not) && c.operand().is(ConceptKind::Nominal) && c.operand().individuals().size() == 1;
}

// Some C and not C both occur, so the disjunction holds everywhere.
bool has_complementary_pair(const std::vector<Concept>& ds) {
    for (const auto& d : ds)
        if (d.is(ConceptKind::Not) && std::find(ds.begin(), ds.end(), d.operand()) != ds.end())
            return true;
    return false;
}

Axiom false_marker() { return ConceptInclusion{Concept::top(), Concept::bot()}; }

class Omega {
public:
    Omega(FreshNameTable& fresh, std::vector<Axiom>& out, std::set<Axiom>& seen)
        : fresh_(fresh), out_(out), seen_(seen) {}

    void axiom(const Axiom& ax) {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, ConceptInclusion>) {
                    gci({nnf_neg(a.sub), nnf_pos(a.sup)});
                }
                else if constexpr (std::is_same_v<T, ConceptAssertion>) {
                    assertion(nnf_pos(a.expr), a.individual);
                }
                else if constexpr (std::is_same_v<T, RoleAssertion>) {
                    if (a.role.is_inverse())
                        emit(RoleAssertion{Role::atomic(a.role.name()), a.object, a.subject});
                    else if (!a.role.is_universal())
                        emit(a);
                }
                else if constexpr (std::is_same_v<T, RoleInclusion>) {
                    chain(a.chain, a.sup);
                }
                else if constexpr (std::is_same_v<T, RoleDisjointness>) {
                    emit(a);
                }
                else if constexpr (std::is_same_v<T, IndividualEquality>) {
                    if (a.first != a.second)
                        emit(false_marker());
                }
                else {
                    if (a.first == a.second)
                        emit(false_marker());
                }
            },
            ax);
    }

private:
    void emit(Axiom ax) {
        if (seen_.insert(ax).second)
            out_.push_back(std::move(ax));
    }

    void assertion(const Concept& d, const std::string& s) {
        if (d.is(ConceptKind::Top))
            return;
        if (d.is(ConceptKind::Bot)) {
            emit(false_marker());
            return;
        }
        if (d.is_literal()) {
            emit(ConceptAssertion{d, s});
            return;
        }
        Concept a = alpha(d, fresh_);
        emit(ConceptAssertion{a, s});
        gci({dotted_neg(a), d});
    }

    // Top SubClassOf the disjunction of `parts` (each already in nnf).
    void gci(const std::vector<Concept>& parts) {
        std::vector<Concept> ds;
        for (const auto& p : parts)
            flatten(p, ConceptKind::Or, ds);
        std::vector<Concept> uniq;
        for (const auto& d : ds) {
            if (d.is(ConceptKind::Top))
                return;
            if (d.is(ConceptKind::Bot) || std::find(uniq.begin(), uniq.end(), d) != uniq.end())
                continue;
            uniq.push_back(d);
        }
        if (uniq.empty()) {
            emit(false_marker());
            return;
        }
        if (has_complementary_pair(uniq))
            return;
        for (std::size_t k = 0; k < uniq.size(); ++k) {
            if (!is_negated_nominal(uniq[k]))
                continue;
            std::string s = uniq[k].operand().individuals()[0];
            uniq.erase(uniq.begin() + static_cast<std::ptrdiff_t>(k));
            if (uniq.empty())
                emit(false_marker());
            else
                assertion(Concept::disjunction_of(uniq), s);
            return;
        }

        std::vector<std::vector<Concept>> pending;
        std::vector<Concept>              kept;
        for (const auto& d : uniq) {
            switch (d.kind()) {
                case ConceptKind::And: {
                    Concept a = alpha(d, fresh_);
                    kept.push_back(a);
                    std::vector<Concept> conjuncts;
                    flatten(d, ConceptKind::And, conjuncts);
                    for (const auto& c : conjuncts)
                        pending.push_back({dotted_neg(a), c});
                    break;
                }
                case ConceptKind::Forall:
                case ConceptKind::AtLeast:
                    if (d.operand().is_literal()) {
                        kept.push_back(d);
                    }
                    else {
                        Concept a = alpha(d.operand(), fresh_);
                        kept.push_back(d.is(ConceptKind::Forall) ? Concept::forall(d.role(), a)
                                                                 : Concept::at_least(d.cardinality(), d.role(), a));
                        pending.push_back({dotted_neg(a), d.operand()});
                    }
                    break;
                case ConceptKind::AtMost:
                    if (d.operand().is_literal()) {
                        kept.push_back(d);
                    }
                    else {
                        Concept e = dotted_neg(d.operand());
                        Concept a = alpha(e, fresh_);
                        kept.push_back(Concept::at_most(d.cardinality(), d.role(), dotted_neg(a)));
                        pending.push_back({dotted_neg(a), e});
                    }
                    break;
                default: kept.push_back(d); break;
            }
        }
        if (!has_complementary_pair(kept))
            emit(ConceptInclusion{Concept::top(), Concept::disjunction_of(kept)});
        for (const auto& p : pending)
            gci(p);
    }

    void chain(std::vector<Role> roles, const Role& sup) {
        while (roles.size() > 2) {
            Role link = Role::atomic(fresh_.chain_role_for(roles[0], roles[1]));
            emit(RoleInclusion{{roles[0], roles[1]}, link});
            roles.erase(roles.begin());
            roles[0] = link;
        }
        emit(RoleInclusion{std::move(roles), sup});
    }

    FreshNameTable&     fresh_;
    std::vector<Axiom>& out_;
    std::set<Axiom>&    seen_;
};

} // namespace

Concept nnf(const Concept& c) { return nnf_pos(c); }

Concept dotted_neg(const Concept& c) {
    if (c.is(ConceptKind::Name))
        return Concept::negation(c);
    if (c.is(ConceptKind::Not) && c.operand().is(ConceptKind::Name))
        return c.operand();
    return nnf_neg(c);
}

bool pos(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot: return false;
        case ConceptKind::Name:
        case ConceptKind::Nominal:
        case ConceptKind::Self:
        case ConceptKind::Exists:
        case ConceptKind::AtLeast: return true;
        case ConceptKind::Not: {
            const Concept& o = c.operand();
            if (o.is(ConceptKind::Name) || o.is(ConceptKind::Nominal) || o.is(ConceptKind::Self))
                return false;
            return pos(nnf_neg(o));
        }
        case ConceptKind::And:
        case ConceptKind::Or: return pos(c.left()) || pos(c.right());
        case ConceptKind::Forall: return pos(c.operand());
        case ConceptKind::AtMost: return c.cardinality() == 0 ? pos(dotted_neg(c.operand())) : true;
    }
    return false;
}

// ---------------------------------------------------------------------------

FreshNameTable::FreshNameTable(Vocabulary reserved) : reserved_(std::move(reserved)) {}

std::string FreshNameTable::allocate(const char* prefix) {
    for (;;) {
        std::string name = prefix + std::to_string(counter_++);
        if (!reserved_.has_name(name))
            return name;
    }
}

const std::string& FreshNameTable::concept_for(const Concept& c) {
    if (auto it = concept_index_.find(c); it != concept_index_.end())
        return by_concept_[it->second].second;
    concept_index_.emplace(c, by_concept_.size());
    by_concept_.emplace_back(c, allocate("q_"));
    return by_concept_.back().second;
}

const std::string& FreshNameTable::chain_role_for(const Role& first, const Role& second) {
    auto key = std::make_pair(first, second);
    if (auto it = chain_index_.find(key); it != chain_index_.end())
        return by_chain_[it->second].second;
    chain_index_.emplace(key, by_chain_.size());
    by_chain_.emplace_back(key, allocate("chain_"));
    return by_chain_.back().second;
}

const std::string& FreshNameTable::guard_concept() {
    if (guard_concept_.empty())
        guard_concept_ = allocate("guard_");
    return guard_concept_;
}

const std::string& FreshNameTable::guard_individual() {
    if (guard_individual_.empty())
        guard_individual_ = allocate("elem_");
    return guard_individual_;
}

bool FreshNameTable::is_fresh_concept(const std::string& name) const {
    if (name == guard_concept_ && !name.empty())
        return true;
    return std::any_of(by_concept_.begin(), by_concept_.end(), [&](const auto& e) { return e.second == name; });
}

bool FreshNameTable::is_fresh_role(const std::string& name) const {
    return std::any_of(by_chain_.begin(), by_chain_.end(), [&](const auto& e) { return e.second == name; });
}

bool FreshNameTable::is_fresh_individual(const std::string& name) const {
    return !name.empty() && name == guard_individual_;
}

bool FreshNameTable::empty() const noexcept {
    return by_concept_.empty() && by_chain_.empty() && guard_concept_.empty() && guard_individual_.empty();
}

Concept alpha(const Concept& c, FreshNameTable& fresh) {
    Concept q = Concept::name(fresh.concept_for(c));
    return pos(c) ? q : Concept::negation(q);
}

std::vector<Axiom> omega_axiom(const Axiom& ax, FreshNameTable& fresh) {
    std::vector<Axiom> out;
    std::set<Axiom>    seen;
    Omega(fresh, out, seen).axiom(ax);
    return out;
}

NormalizedKB normalize(const KnowledgeBase& kb) {
    const Vocabulary&  source = kb.vocabulary();
    FreshNameTable     fresh(source);
    std::vector<Axiom> out;
    std::set<Axiom>    seen;
    Omega              omega(fresh, out, seen);
    for (const auto& ax : kb.axioms())
        omega.axiom(ax);

    if (std::none_of(out.begin(), out.end(), [](const Axiom& a) { return is_abox_axiom(a); })) {
        std::string ind = source.individuals().empty() ? fresh.guard_individual() : source.individuals().front();
        Concept     g   = Concept::name(fresh.guard_concept());
        out.push_back(ConceptAssertion{g, ind});
        out.push_back(ConceptInclusion{Concept::top(), g});
    }

    Vocabulary vocab = source;
    for (const auto& [c, name] : fresh.concepts())
        vocab.add_concept(name);
    for (const auto& [key, name] : fresh.chain_roles())
        vocab.add_role(name);
    if (fresh.has_guard_concept())
        vocab.add_concept(fresh.guard_concept());
    if (fresh.has_guard_individual())
        vocab.add_individual(fresh.guard_individual());
    return NormalizedKB{KnowledgeBase(std::move(vocab), std::move(out)), std::move(fresh), source};
}

std::vector<Concept> disjuncts_of(const Concept& c) {
    std::vector<Concept> out;
    if (!c.is(ConceptKind::Bot))
        flatten(c, ConceptKind::Or, out);
    return out;
}

bool is_false_marker(const Axiom& ax) noexcept {
    const auto* gci = std::get_if<ConceptInclusion>(&ax);
    return gci && gci->sub.is(ConceptKind::Top) && gci->sup.is(ConceptKind::Bot);
}

bool is_normalized_disjunct(const Concept& c) noexcept {
    switch (c.kind()) {
        case ConceptKind::Name:
        case ConceptKind::Self: return true;
        case ConceptKind::Not: return c.operand().is(ConceptKind::Name) || c.operand().is(ConceptKind::Self);
        case ConceptKind::Nominal: return c.individuals().size() == 1;
        case ConceptKind::Forall: return c.operand().is_literal();
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: return c.cardinality() >= 1 && c.operand().is_literal();
        default: return false;
    }
}

bool is_normalized_axiom(const Axiom& ax) noexcept {
    return std::visit(
        [](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, ConceptInclusion>) {
                if (!a.sub.is(ConceptKind::Top))
                    return false;
                auto ds = disjuncts_of(a.sup);
                return std::all_of(ds.begin(), ds.end(), [](const Concept& d) { return is_normalized_disjunct(d); });
            }
            else if constexpr (std::is_same_v<T, ConceptAssertion>) {
                return a.expr.is_literal();
            }
            else if constexpr (std::is_same_v<T, RoleAssertion>) {
                return a.role.kind() == RoleKind::Atomic;
            }
            else if constexpr (std::is_same_v<T, RoleInclusion>) {
                return a.chain.size() <= 2;
            }
            else if constexpr (std::is_same_v<T, RoleDisjointness>) {
                return true;
            }
            else {
                return false;
            }
        },
        ax);
}

bool is_normalized(const KnowledgeBase& kb) noexcept {
    if (kb.abox().empty())
        return false;
    auto all = kb.axioms();
    return std::all_of(all.begin(), all.end(), [](const Axiom& a) { return is_normalized_axiom(a); });
}

ABoxRepresentation project_model(const ABoxRepresentation& rep, const FreshNameTable& fresh,
                                 const Vocabulary& source_vocab) {
    ABoxRepresentation out;
    auto keep_ind = [&](const std::string& i) { return source_vocab.has_individual(i) && !fresh.is_fresh_individual(i); };
    for (const auto& f : rep.concepts)
        if (source_vocab.has_concept(f.name) && !fresh.is_fresh_concept(f.name) && keep_ind(f.individual))
            out.concepts.insert(f);
    for (const auto& f : rep.roles)
        if (source_vocab.has_role(f.role) && !fresh.is_fresh_role(f.role) && keep_ind(f.subject) && keep_ind(f.object))
            out.roles.insert(f);
    return out;
}

} // namespace bmr
