#include <bmr/kb.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bmr {

// ---------------------------------------------------------------------------
// Role

Role Role::atomic(std::string name) {
    if (name.empty())
        throw std::invalid_argument("role name must be non-empty");
    return Role(RoleKind::Atomic, std::move(name));
}

Role Role::inverse(std::string name) {
    if (name.empty())
        throw std::invalid_argument("role name must be non-empty");
    return Role(RoleKind::Inverse, std::move(name));
}

Role Role::inverted() const {
    switch (kind_) {
        case RoleKind::Atomic: return Role(RoleKind::Inverse, name_);
        case RoleKind::Inverse: return Role(RoleKind::Atomic, name_);
        case RoleKind::Universal: break;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// Concept

struct Concept::Node {
    ConceptKind              kind;
    std::string              name;
    std::vector<std::string> individuals;
    std::vector<Concept>     kids;
    std::optional<Role>      role;
    std::uint32_t            card = 0;
    std::size_t              hash = 0;
};

namespace {

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_role(const Role& r) {
    std::size_t h = std::hash<std::string>{}(r.name());
    hash_combine(h, static_cast<std::size_t>(r.kind()));
    return h;
}

} // namespace

namespace {
std::shared_ptr<Concept::Node> make_node(ConceptKind k) {
    auto n  = std::make_shared<Concept::Node>();
    n->kind = k;
    return n;
}
} // namespace

// Computes the structural hash once the node is fully populated.
static void seal(Concept::Node& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x51ed27u;
    hash_combine(h, std::hash<std::string>{}(n.name));
    for (const auto& i : n.individuals)
        hash_combine(h, std::hash<std::string>{}(i));
    for (const auto& k : n.kids)
        hash_combine(h, k.hash());
    if (n.role)
        hash_combine(h, hash_role(*n.role));
    hash_combine(h, n.card);
    n.hash = h;
}

Concept Concept::top() {
    static const Concept t = [] {
        auto n = make_node(ConceptKind::Top);
        seal(*n);
        return Concept(n);
    }();
    return t;
}

Concept Concept::bot() {
    static const Concept b = [] {
        auto n = make_node(ConceptKind::Bot);
        seal(*n);
        return Concept(n);
    }();
    return b;
}

Concept Concept::name(std::string nm) {
    if (nm.empty())
        throw std::invalid_argument("concept name must be non-empty");
    auto n  = make_node(ConceptKind::Name);
    n->name = std::move(nm);
    seal(*n);
    return Concept(n);
}

Concept Concept::negation(Concept c) {
    auto n = make_node(ConceptKind::Not);
    n->kids.push_back(std::move(c));
    seal(*n);
    return Concept(n);
}

Concept Concept::conjunction(Concept l, Concept r) {
    auto n = make_node(ConceptKind::And);
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    seal(*n);
    return Concept(n);
}

Concept Concept::disjunction(Concept l, Concept r) {
    auto n = make_node(ConceptKind::Or);
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    seal(*n);
    return Concept(n);
}

Concept Concept::nominal(std::vector<std::string> individuals) {
    if (individuals.empty())
        throw std::invalid_argument("nominal needs at least one individual");
    for (const auto& i : individuals)
        if (i.empty())
            throw std::invalid_argument("individual name must be non-empty");
    auto n         = make_node(ConceptKind::Nominal);
    n->individuals = std::move(individuals);
    seal(*n);
    return Concept(n);
}

namespace {
Concept::Node& restriction(std::shared_ptr<Concept::Node>& n, Role r, std::uint32_t card) {
    n->role = std::move(r);
    n->card = card;
    return *n;
}
} // namespace

Concept Concept::forall(Role r, Concept c) {
    auto n = make_node(ConceptKind::Forall);
    restriction(n, std::move(r), 0).kids.push_back(std::move(c));
    seal(*n);
    return Concept(n);
}

Concept Concept::exists(Role r, Concept c) {
    auto n = make_node(ConceptKind::Exists);
    restriction(n, std::move(r), 0).kids.push_back(std::move(c));
    seal(*n);
    return Concept(n);
}

Concept Concept::self(Role r) {
    auto n = make_node(ConceptKind::Self);
    restriction(n, std::move(r), 0);
    seal(*n);
    return Concept(n);
}

Concept Concept::at_least(std::uint32_t k, Role r, Concept c) {
    if (k == 0)
        return top();
    auto n = make_node(ConceptKind::AtLeast);
    restriction(n, std::move(r), k).kids.push_back(std::move(c));
    seal(*n);
    return Concept(n);
}

Concept Concept::at_most(std::uint32_t k, Role r, Concept c) {
    auto n = make_node(ConceptKind::AtMost);
    restriction(n, std::move(r), k).kids.push_back(std::move(c));
    seal(*n);
    return Concept(n);
}

Concept Concept::conjunction_of(const std::vector<Concept>& cs) {
    if (cs.empty())
        return top();
    Concept acc = cs.front();
    for (std::size_t i = 1; i < cs.size(); ++i)
        acc = conjunction(acc, cs[i]);
    return acc;
}

Concept Concept::disjunction_of(const std::vector<Concept>& cs) {
    if (cs.empty())
        return bot();
    Concept acc = cs.front();
    for (std::size_t i = 1; i < cs.size(); ++i)
        acc = disjunction(acc, cs[i]);
    return acc;
}

ConceptKind Concept::kind() const noexcept { return node_->kind; }

const std::string& Concept::name() const {
    if (node_->kind != ConceptKind::Name)
        throw std::logic_error("Concept::name on non-name concept");
    return node_->name;
}

const std::vector<std::string>& Concept::individuals() const {
    if (node_->kind != ConceptKind::Nominal)
        throw std::logic_error("Concept::individuals on non-nominal");
    return node_->individuals;
}

const Concept& Concept::operand() const {
    switch (node_->kind) {
        case ConceptKind::Not:
        case ConceptKind::Forall:
        case ConceptKind::Exists:
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: return node_->kids.front();
        default: throw std::logic_error("Concept::operand on concept without operand");
    }
}

const Concept& Concept::left() const {
    if (node_->kind != ConceptKind::And && node_->kind != ConceptKind::Or)
        throw std::logic_error("Concept::left on non-binary concept");
    return node_->kids[0];
}

const Concept& Concept::right() const {
    if (node_->kind != ConceptKind::And && node_->kind != ConceptKind::Or)
        throw std::logic_error("Concept::right on non-binary concept");
    return node_->kids[1];
}

const Role& Concept::role() const {
    if (!node_->role)
        throw std::logic_error("Concept::role on concept without role");
    return *node_->role;
}

std::uint32_t Concept::cardinality() const { return node_->card; }

std::size_t Concept::hash() const noexcept { return node_->hash; }

bool Concept::is_literal() const noexcept {
    return node_->kind == ConceptKind::Name ||
           (node_->kind == ConceptKind::Not && node_->kids[0].kind() == ConceptKind::Name);
}

bool operator==(const Concept& a, const Concept& b) noexcept {
    if (a.node_ == b.node_)
        return true;
    if (a.node_->hash != b.node_->hash)
        return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) noexcept {
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0)
        return c;
    if (auto c = x.name <=> y.name; c != 0)
        return c;
    if (auto c = x.individuals <=> y.individuals; c != 0)
        return c;
    if (auto c = x.card <=> y.card; c != 0)
        return c;
    if (auto c = x.role <=> y.role; c != 0)
        return c;
    return std::lexicographical_compare_three_way(x.kids.begin(), x.kids.end(), y.kids.begin(), y.kids.end());
}

// ---------------------------------------------------------------------------
// Axiom classification

bool is_abox_axiom(const Axiom& ax) noexcept {
    return std::holds_alternative<ConceptAssertion>(ax) || std::holds_alternative<RoleAssertion>(ax) ||
           std::holds_alternative<IndividualEquality>(ax) || std::holds_alternative<IndividualInequality>(ax);
}

bool is_tbox_axiom(const Axiom& ax) noexcept { return std::holds_alternative<ConceptInclusion>(ax); }

bool is_rbox_axiom(const Axiom& ax) noexcept {
    return std::holds_alternative<RoleInclusion>(ax) || std::holds_alternative<RoleDisjointness>(ax);
}

// ---------------------------------------------------------------------------
// Vocabulary

std::optional<std::size_t> Vocabulary::index_of(const Index& idx, std::string_view n) {
    auto it = idx.find(std::string(n));
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

const char* Vocabulary::sort_of(std::string_view n) const {
    if (has_individual(n))
        return "individual";
    if (has_concept(n))
        return "concept";
    if (has_role(n))
        return "role";
    return nullptr;
}

bool Vocabulary::add(std::vector<std::string>& names, Index& idx, std::string_view name, const char* sort) {
    if (name.empty())
        throw std::invalid_argument("names must be non-empty");
    if (index_of(idx, name))
        return false;
    if (const char* other = sort_of(name))
        throw SortClashError("name '" + std::string(name) + "' used as " + sort + " but already declared as " + other);
    idx.emplace(std::string(name), names.size());
    names.emplace_back(name);
    return true;
}

bool Vocabulary::add_individual(std::string_view name) { return add(individuals_, ind_index_, name, "individual"); }
bool Vocabulary::add_concept(std::string_view name) { return add(concepts_, con_index_, name, "concept"); }
bool Vocabulary::add_role(std::string_view name) { return add(roles_, role_index_, name, "role"); }

void Vocabulary::merge(const Vocabulary& other) {
    for (const auto& n : other.individuals_)
        add_individual(n);
    for (const auto& n : other.concepts_)
        add_concept(n);
    for (const auto& n : other.roles_)
        add_role(n);
}

bool Vocabulary::subset_of(const Vocabulary& other) const {
    auto all = [](const std::vector<std::string>& names, auto&& pred) {
        return std::all_of(names.begin(), names.end(), pred);
    };
    return all(individuals_, [&](const std::string& n) { return other.has_individual(n); }) &&
           all(concepts_, [&](const std::string& n) { return other.has_concept(n); }) &&
           all(roles_, [&](const std::string& n) { return other.has_role(n); });
}

bool Vocabulary::same_names(const Vocabulary& other) const {
    return individuals_.size() == other.individuals_.size() && concepts_.size() == other.concepts_.size() &&
           roles_.size() == other.roles_.size() && subset_of(other);
}

// ---------------------------------------------------------------------------
// Name collection

void collect_names(const Role& r, Vocabulary& vocab) {
    if (!r.is_universal())
        vocab.add_role(r.name());
}

void collect_names(const Concept& c, Vocabulary& vocab) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot: return;
        case ConceptKind::Name: vocab.add_concept(c.name()); return;
        case ConceptKind::Not: collect_names(c.operand(), vocab); return;
        case ConceptKind::And:
        case ConceptKind::Or:
            collect_names(c.left(), vocab);
            collect_names(c.right(), vocab);
            return;
        case ConceptKind::Nominal:
            for (const auto& i : c.individuals())
                vocab.add_individual(i);
            return;
        case ConceptKind::Self: collect_names(c.role(), vocab); return;
        case ConceptKind::Forall:
        case ConceptKind::Exists:
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost:
            collect_names(c.role(), vocab);
            collect_names(c.operand(), vocab);
            return;
    }
}

void collect_names(const Axiom& ax, Vocabulary& vocab) {
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, ConceptInclusion>) {
                collect_names(a.sub, vocab);
                collect_names(a.sup, vocab);
            }
            else if constexpr (std::is_same_v<T, RoleInclusion>) {
                for (const auto& r : a.chain)
                    collect_names(r, vocab);
                collect_names(a.sup, vocab);
            }
            else if constexpr (std::is_same_v<T, RoleDisjointness>) {
                collect_names(a.first, vocab);
                collect_names(a.second, vocab);
            }
            else if constexpr (std::is_same_v<T, ConceptAssertion>) {
                collect_names(a.expr, vocab);
                vocab.add_individual(a.individual);
            }
            else if constexpr (std::is_same_v<T, RoleAssertion>) {
                collect_names(a.role, vocab);
                vocab.add_individual(a.subject);
                vocab.add_individual(a.object);
            }
            else {
                vocab.add_individual(a.first);
                vocab.add_individual(a.second);
            }
        },
        ax);
}

// ---------------------------------------------------------------------------
// KnowledgeBase

KnowledgeBase::KnowledgeBase(std::vector<Axiom> axioms) : KnowledgeBase(Vocabulary{}, std::move(axioms)) {}

KnowledgeBase::KnowledgeBase(Vocabulary declared, std::vector<Axiom> axioms) : vocab_(std::move(declared)) {
    for (auto& ax : axioms) {
        if (std::holds_alternative<RoleInclusion>(ax) && std::get<RoleInclusion>(ax).chain.empty())
            throw std::invalid_argument("role inclusion needs a nonempty chain");
        if (is_abox_axiom(ax))
            abox_.push_back(std::move(ax));
        else if (is_tbox_axiom(ax))
            tbox_.push_back(std::move(ax));
        else
            rbox_.push_back(std::move(ax));
    }
    for (const auto* part : {&abox_, &tbox_, &rbox_})
        for (const auto& ax : *part)
            collect_names(ax, vocab_);
}

std::vector<Axiom> KnowledgeBase::axioms() const {
    std::vector<Axiom> out;
    out.reserve(size());
    out.insert(out.end(), abox_.begin(), abox_.end());
    out.insert(out.end(), tbox_.begin(), tbox_.end());
    out.insert(out.end(), rbox_.begin(), rbox_.end());
    return out;
}

Vocabulary vocabulary_of(const KnowledgeBase& kb) {
    Vocabulary v;
    for (const auto* part : {&kb.abox(), &kb.tbox(), &kb.rbox()})
        for (const auto& ax : *part)
            collect_names(ax, v);
    return v;
}

// ---------------------------------------------------------------------------
// BoundedInterpretation

void BoundedInterpretation::add_concept_member(const std::string& concept_name, const std::string& individual) {
    if (!vocab_.has_concept(concept_name))
        throw VocabularyError("unknown concept name '" + concept_name + "'");
    if (!vocab_.has_individual(individual))
        throw VocabularyError("unknown individual '" + individual + "'");
    concept_ext_[concept_name].insert(individual);
}

void BoundedInterpretation::add_role_pair(const std::string& role, const std::string& subject,
                                          const std::string& object) {
    if (!vocab_.has_role(role))
        throw VocabularyError("unknown role name '" + role + "'");
    for (const auto* i : {&subject, &object})
        if (!vocab_.has_individual(*i))
            throw VocabularyError("unknown individual '" + *i + "'");
    role_ext_[role].emplace(subject, object);
}

const std::set<std::string>& BoundedInterpretation::concept_extension(const std::string& concept_name) const {
    static const std::set<std::string> empty;
    if (!vocab_.has_concept(concept_name))
        throw VocabularyError("unknown concept name '" + concept_name + "'");
    auto it = concept_ext_.find(concept_name);
    return it == concept_ext_.end() ? empty : it->second;
}

const std::set<IndividualPair>& BoundedInterpretation::role_extension(const std::string& role) const {
    static const std::set<IndividualPair> empty;
    if (!vocab_.has_role(role))
        throw VocabularyError("unknown role name '" + role + "'");
    auto it = role_ext_.find(role);
    return it == role_ext_.end() ? empty : it->second;
}

bool operator==(const BoundedInterpretation& a, const BoundedInterpretation& b) {
    if (!a.vocab_.same_names(b.vocab_))
        return false;
    auto nonempty = [](const auto& m) {
        std::remove_cvref_t<decltype(m)> out;
        for (const auto& [k, v] : m)
            if (!v.empty())
                out.emplace(k, v);
        return out;
    };
    return nonempty(a.concept_ext_) == nonempty(b.concept_ext_) && nonempty(a.role_ext_) == nonempty(b.role_ext_);
}

BoundedInterpretation interpretation_of_abox(const Vocabulary& vocab, const ABoxRepresentation& rep) {
    BoundedInterpretation i(vocab);
    for (const auto& f : rep.concepts)
        i.add_concept_member(f.name, f.individual);
    for (const auto& f : rep.roles)
        i.add_role_pair(f.role, f.subject, f.object);
    return i;
}

ABoxRepresentation abox_of_interpretation(const BoundedInterpretation& i) {
    ABoxRepresentation rep;
    for (const auto& c : i.vocabulary().concepts())
        for (const auto& a : i.concept_extension(c))
            rep.concepts.insert({c, a});
    for (const auto& r : i.vocabulary().roles())
        for (const auto& [a, b] : i.role_extension(r))
            rep.roles.insert({r, a, b});
    return rep;
}

} // namespace bmr
