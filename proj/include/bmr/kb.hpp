#pragma once
// Knowledge bases, vocabularies and bounded interpretations.
//
// Concepts are immutable expression trees shared by reference; copying a
// Concept is cheap. Individuals double as domain elements, so every
// BoundedInterpretation has exactly the vocabulary's individuals as its
// domain and interprets each name as itself.

#include <bmr/error.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace bmr {

// ---------------------------------------------------------------------------
// Roles

enum class RoleKind : std::uint8_t { Atomic, Inverse, Universal };

class Role {
public:
    static Role atomic(std::string name);
    static Role inverse(std::string name);
    static Role universal() { return Role(RoleKind::Universal, {}); }

    [[nodiscard]] RoleKind kind() const noexcept { return kind_; }
    // Underlying role name; empty for the universal role.
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool is_universal() const noexcept { return kind_ == RoleKind::Universal; }
    [[nodiscard]] bool is_inverse() const noexcept { return kind_ == RoleKind::Inverse; }
    // r <-> inv(r); U is its own inverse.
    [[nodiscard]] Role inverted() const;

    friend bool operator==(const Role&, const Role&) = default;
    friend auto operator<=>(const Role&, const Role&) = default;

private:
    Role(RoleKind k, std::string n) : kind_(k), name_(std::move(n)) {}
    RoleKind    kind_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Concepts

enum class ConceptKind : std::uint8_t {
    Top, Bot, Name, Not, And, Or, Nominal, Forall, Exists, Self, AtLeast, AtMost
};

class Concept {
public:
    static Concept top();
    static Concept bot();
    static Concept name(std::string n);
    static Concept negation(Concept c);
    static Concept conjunction(Concept l, Concept r);
    static Concept disjunction(Concept l, Concept r);
    // Throws std::invalid_argument on an empty list.
    static Concept nominal(std::vector<std::string> individuals);
    static Concept forall(Role r, Concept c);
    static Concept exists(Role r, Concept c);
    static Concept self(Role r);
    // >=0 r.C is rewritten to Top.
    static Concept at_least(std::uint32_t n, Role r, Concept c);
    static Concept at_most(std::uint32_t n, Role r, Concept c);

    // Left-folded n-ary helpers; empty input yields Top / Bot respectively.
    static Concept conjunction_of(const std::vector<Concept>& cs);
    static Concept disjunction_of(const std::vector<Concept>& cs);

    [[nodiscard]] ConceptKind kind() const noexcept;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const std::vector<std::string>& individuals() const;
    // Negated concept, or the filler of a restriction.
    [[nodiscard]] const Concept& operand() const;
    [[nodiscard]] const Concept& left() const;
    [[nodiscard]] const Concept& right() const;
    [[nodiscard]] const Role& role() const;
    [[nodiscard]] std::uint32_t cardinality() const;
    [[nodiscard]] std::size_t hash() const noexcept;

    // A or not A for a concept name A.
    [[nodiscard]] bool is_literal() const noexcept;
    [[nodiscard]] bool is(ConceptKind k) const noexcept { return kind() == k; }

    friend bool operator==(const Concept& a, const Concept& b) noexcept;
    friend std::strong_ordering operator<=>(const Concept& a, const Concept& b) noexcept;

    struct Node; // implementation detail

private:
    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct ConceptHash {
    std::size_t operator()(const Concept& c) const noexcept { return c.hash(); }
};

// ---------------------------------------------------------------------------
// Axioms

struct ConceptInclusion {
    Concept sub;
    Concept sup;
    friend bool operator==(const ConceptInclusion&, const ConceptInclusion&) = default;
    friend auto operator<=>(const ConceptInclusion&, const ConceptInclusion&) = default;
};

struct RoleInclusion {
    std::vector<Role> chain; // nonempty
    Role              sup;
    friend bool operator==(const RoleInclusion&, const RoleInclusion&) = default;
    friend auto operator<=>(const RoleInclusion&, const RoleInclusion&) = default;
};

struct RoleDisjointness {
    Role first;
    Role second;
    friend bool operator==(const RoleDisjointness&, const RoleDisjointness&) = default;
    friend auto operator<=>(const RoleDisjointness&, const RoleDisjointness&) = default;
};

struct ConceptAssertion {
    Concept     expr;
    std::string individual;
    friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
    friend auto operator<=>(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
    Role        role;
    std::string subject;
    std::string object;
    friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
    friend auto operator<=>(const RoleAssertion&, const RoleAssertion&) = default;
};

struct IndividualEquality {
    std::string first;
    std::string second;
    friend bool operator==(const IndividualEquality&, const IndividualEquality&) = default;
    friend auto operator<=>(const IndividualEquality&, const IndividualEquality&) = default;
};

struct IndividualInequality {
    std::string first;
    std::string second;
    friend bool operator==(const IndividualInequality&, const IndividualInequality&) = default;
    friend auto operator<=>(const IndividualInequality&, const IndividualInequality&) = default;
};

using Axiom = std::variant<ConceptInclusion, RoleInclusion, RoleDisjointness, ConceptAssertion,
                           RoleAssertion, IndividualEquality, IndividualInequality>;

[[nodiscard]] bool is_abox_axiom(const Axiom& ax) noexcept;
[[nodiscard]] bool is_tbox_axiom(const Axiom& ax) noexcept;
[[nodiscard]] bool is_rbox_axiom(const Axiom& ax) noexcept;

// ---------------------------------------------------------------------------
// Vocabulary

// Three pairwise-disjoint name sorts, each kept in insertion order.
class Vocabulary {
public:
    // Each returns true if the name was new. Throws SortClashError if the
    // name already belongs to another sort, std::invalid_argument if empty.
    bool add_individual(std::string_view name);
    bool add_concept(std::string_view name);
    bool add_role(std::string_view name);

    [[nodiscard]] const std::vector<std::string>& individuals() const noexcept { return individuals_; }
    [[nodiscard]] const std::vector<std::string>& concepts() const noexcept { return concepts_; }
    [[nodiscard]] const std::vector<std::string>& roles() const noexcept { return roles_; }

    [[nodiscard]] bool has_individual(std::string_view n) const { return index_of(ind_index_, n).has_value(); }
    [[nodiscard]] bool has_concept(std::string_view n) const { return index_of(con_index_, n).has_value(); }
    [[nodiscard]] bool has_role(std::string_view n) const { return index_of(role_index_, n).has_value(); }
    [[nodiscard]] bool has_name(std::string_view n) const {
        return has_individual(n) || has_concept(n) || has_role(n);
    }

    [[nodiscard]] std::optional<std::size_t> individual_index(std::string_view n) const { return index_of(ind_index_, n); }
    [[nodiscard]] std::optional<std::size_t> concept_index(std::string_view n) const { return index_of(con_index_, n); }
    [[nodiscard]] std::optional<std::size_t> role_index(std::string_view n) const { return index_of(role_index_, n); }

    [[nodiscard]] bool empty() const noexcept {
        return individuals_.empty() && concepts_.empty() && roles_.empty();
    }

    // Adds every name of `other`, keeping this vocabulary's order first.
    void merge(const Vocabulary& other);

    // Same names per sort, ignoring order.
    [[nodiscard]] bool same_names(const Vocabulary& other) const;
    // Every name of this vocabulary also occurs in `other` (same sort).
    [[nodiscard]] bool subset_of(const Vocabulary& other) const;

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.individuals_ == b.individuals_ && a.concepts_ == b.concepts_ && a.roles_ == b.roles_;
    }

private:
    using Index = std::unordered_map<std::string, std::size_t>;
    static std::optional<std::size_t> index_of(const Index& idx, std::string_view n);
    bool add(std::vector<std::string>& names, Index& idx, std::string_view name, const char* sort);
    [[nodiscard]] const char* sort_of(std::string_view n) const;

    std::vector<std::string> individuals_, concepts_, roles_;
    Index                    ind_index_, con_index_, role_index_;
};

// ---------------------------------------------------------------------------
// Knowledge base

class KnowledgeBase {
public:
    KnowledgeBase() = default;
    // Vocabulary inferred from the axioms (first use order).
    explicit KnowledgeBase(std::vector<Axiom> axioms);
    // `declared` comes first; names occurring in the axioms are appended.
    KnowledgeBase(Vocabulary declared, std::vector<Axiom> axioms);

    [[nodiscard]] const Vocabulary& vocabulary() const noexcept { return vocab_; }
    [[nodiscard]] const std::vector<Axiom>& abox() const noexcept { return abox_; }
    [[nodiscard]] const std::vector<Axiom>& tbox() const noexcept { return tbox_; }
    [[nodiscard]] const std::vector<Axiom>& rbox() const noexcept { return rbox_; }
    // ABox, then TBox, then RBox.
    [[nodiscard]] std::vector<Axiom> axioms() const;
    [[nodiscard]] std::size_t size() const noexcept { return abox_.size() + tbox_.size() + rbox_.size(); }

    // Structural equality: identical axiom lists and the same names per
    // sort (vocabulary order is not compared).
    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
        return a.abox_ == b.abox_ && a.tbox_ == b.tbox_ && a.rbox_ == b.rbox_ &&
               a.vocab_.same_names(b.vocab_);
    }

private:
    Vocabulary         vocab_;
    std::vector<Axiom> abox_, tbox_, rbox_;
};

// Adds every name occurring in `ax` to `vocab`, in traversal order.
void collect_names(const Axiom& ax, Vocabulary& vocab);
void collect_names(const Concept& c, Vocabulary& vocab);
void collect_names(const Role& r, Vocabulary& vocab);

// Exactly the names occurring in the axioms (ABox, TBox, RBox traversal
// order). Declared-but-unused names are not included.
[[nodiscard]] Vocabulary vocabulary_of(const KnowledgeBase& kb);

// ---------------------------------------------------------------------------
// Bounded interpretations and their fact-set image

struct ConceptFact {
    std::string name;
    std::string individual;
    friend bool operator==(const ConceptFact&, const ConceptFact&) = default;
    friend auto operator<=>(const ConceptFact&, const ConceptFact&) = default;
};

struct RoleFact {
    std::string role;
    std::string subject;
    std::string object;
    friend bool operator==(const RoleFact&, const RoleFact&) = default;
    friend auto operator<=>(const RoleFact&, const RoleFact&) = default;
};

struct ABoxRepresentation {
    std::set<ConceptFact> concepts;
    std::set<RoleFact>    roles;

    [[nodiscard]] std::size_t size() const noexcept { return concepts.size() + roles.size(); }
    [[nodiscard]] bool empty() const noexcept { return concepts.empty() && roles.empty(); }
    friend bool operator==(const ABoxRepresentation&, const ABoxRepresentation&) = default;
    friend auto operator<=>(const ABoxRepresentation&, const ABoxRepresentation&) = default;
};

using IndividualPair = std::pair<std::string, std::string>;

class BoundedInterpretation {
public:
    explicit BoundedInterpretation(Vocabulary vocab) : vocab_(std::move(vocab)) {}

    // Both throw VocabularyError on names outside the vocabulary.
    void add_concept_member(const std::string& concept_name, const std::string& individual);
    void add_role_pair(const std::string& role, const std::string& subject, const std::string& object);

    [[nodiscard]] const Vocabulary& vocabulary() const noexcept { return vocab_; }
    [[nodiscard]] const std::set<std::string>& concept_extension(const std::string& concept_name) const;
    [[nodiscard]] const std::set<IndividualPair>& role_extension(const std::string& role) const;

    friend bool operator==(const BoundedInterpretation& a, const BoundedInterpretation& b);

private:
    Vocabulary                                    vocab_;
    std::map<std::string, std::set<std::string>>    concept_ext_;
    std::map<std::string, std::set<IndividualPair>> role_ext_;
};

// Throws VocabularyError for facts over unknown names.
[[nodiscard]] BoundedInterpretation interpretation_of_abox(const Vocabulary& vocab, const ABoxRepresentation& rep);
[[nodiscard]] ABoxRepresentation abox_of_interpretation(const BoundedInterpretation& i);

} // namespace bmr

template <>
struct std::hash<bmr::Concept> {
    std::size_t operator()(const bmr::Concept& c) const noexcept { return c.hash(); }
};
