#include <bmr/oracle.hpp>

#include <bit>
#include <limits>
#include <map>
#include <unordered_map>

namespace bmr {

namespace {

using Word = std::uint64_t;

enum class AxKind : std::uint8_t { Gci, Ria, Disjoint, ConceptFact, RoleFact, Static };

struct ConceptNode {
    ConceptKind       kind = ConceptKind::Top;
    std::uint32_t     a = 0, b = 0; // child nodes
    std::uint32_t     role = 0;     // role node
    std::uint32_t     card = 0;
    std::size_t       name = 0;     // concept index
    std::vector<Word> mask;         // nominal members
    std::vector<Word> value;
    std::uint64_t     epoch = 0;
};

struct RoleNode {
    RoleKind          kind = RoleKind::Atomic;
    std::size_t       name = 0;
    std::vector<Word> rows; // inverse / universal only
    std::uint64_t     epoch = 0;
};

struct CompiledAxiom {
    AxKind                     kind = AxKind::Static;
    std::uint32_t              c1 = 0, c2 = 0;
    std::vector<std::uint32_t> roles; // RIA: chain then super; Disjoint: both; RoleFact: one
    std::size_t                x = 0, y = 0;
    bool                       value = false; // AxKind::Static
};

bool test_bit(const Word* row, std::size_t i) { return (row[i / 64] >> (i % 64)) & 1U; }
void put_bit(Word* row, std::size_t i, bool v) {
    if (v)
        row[i / 64] |= Word{1} << (i % 64);
    else
        row[i / 64] &= ~(Word{1} << (i % 64));
}

} // namespace

struct CompiledAxioms::Impl {
    Vocabulary    vocab;
    std::size_t   n = 0, words = 0;
    Word          last_mask = 0;
    std::uint64_t epoch = 1;

    std::vector<Word> concept_bits; // concept-major, `words` per concept
    std::vector<Word> role_bits;    // role-major, n rows of `words` each

    std::vector<ConceptNode> cnodes;
    std::vector<RoleNode>    rnodes;
    std::unordered_map<Concept, std::uint32_t, ConceptHash> concept_ids;
    std::map<Role, std::uint32_t> role_ids;
    std::vector<CompiledAxiom>    axioms;
    std::vector<Word>             scratch_a, scratch_b;

    explicit Impl(const Vocabulary& v) : vocab(v) {
        n         = vocab.individuals().size();
        words     = (n + 63) / 64;
        last_mask = n % 64 == 0 ? ~Word{0} : (Word{1} << (n % 64)) - 1;
        concept_bits.assign(vocab.concepts().size() * words, 0);
        role_bits.assign(vocab.roles().size() * n * words, 0);
    }

    std::size_t individual(const std::string& name) const {
        auto idx = vocab.individual_index(name);
        if (!idx)
            throw VocabularyError("unknown individual '" + name + "'");
        return *idx;
    }

    void fill_ones(Word* out) const {
        for (std::size_t w = 0; w < words; ++w)
            out[w] = ~Word{0};
        if (words)
            out[words - 1] &= last_mask;
    }

    std::uint32_t compile_role(const Role& r) {
        if (auto it = role_ids.find(r); it != role_ids.end())
            return it->second;
        RoleNode node;
        node.kind = r.kind();
        if (!r.is_universal()) {
            auto idx = vocab.role_index(r.name());
            if (!idx)
                throw VocabularyError("unknown role '" + r.name() + "'");
            node.name = *idx;
        }
        if (r.kind() != RoleKind::Atomic)
            node.rows.assign(n * words, 0);
        if (r.is_universal())
            for (std::size_t x = 0; x < n; ++x)
                fill_ones(node.rows.data() + x * words);
        auto id = static_cast<std::uint32_t>(rnodes.size());
        rnodes.push_back(std::move(node));
        role_ids.emplace(r, id);
        return id;
    }

    std::uint32_t compile_concept(const Concept& c) {
        if (auto it = concept_ids.find(c); it != concept_ids.end())
            return it->second;
        ConceptNode node;
        node.kind = c.kind();
        switch (c.kind()) {
            case ConceptKind::Top:
            case ConceptKind::Bot: break;
            case ConceptKind::Name: {
                auto idx = vocab.concept_index(c.name());
                if (!idx)
                    throw VocabularyError("unknown concept '" + c.name() + "'");
                node.name = *idx;
                break;
            }
            case ConceptKind::Not: node.a = compile_concept(c.operand()); break;
            case ConceptKind::And:
            case ConceptKind::Or:
                node.a = compile_concept(c.left());
                node.b = compile_concept(c.right());
                break;
            case ConceptKind::Nominal:
                node.mask.assign(words, 0);
                for (const auto& ind : c.individuals())
                    put_bit(node.mask.data(), individual(ind), true);
                break;
            case ConceptKind::Self: node.role = compile_role(c.role()); break;
            case ConceptKind::Forall:
            case ConceptKind::Exists:
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost:
                node.role = compile_role(c.role());
                node.a    = compile_concept(c.operand());
                if (c.is(ConceptKind::AtLeast) || c.is(ConceptKind::AtMost))
                    node.card = c.cardinality();
                break;
        }
        node.value.assign(words, 0);
        auto id = static_cast<std::uint32_t>(cnodes.size());
        cnodes.push_back(std::move(node));
        concept_ids.emplace(c, id);
        return id;
    }

    void compile_axiom(const Axiom& ax) {
        CompiledAxiom out;
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, ConceptInclusion>) {
                    out.kind = AxKind::Gci;
                    out.c1   = compile_concept(a.sub);
                    out.c2   = compile_concept(a.sup);
                }
                else if constexpr (std::is_same_v<T, RoleInclusion>) {
                    out.kind = AxKind::Ria;
                    for (const auto& r : a.chain)
                        out.roles.push_back(compile_role(r));
                    out.roles.push_back(compile_role(a.sup));
                }
                else if constexpr (std::is_same_v<T, RoleDisjointness>) {
                    out.kind  = AxKind::Disjoint;
                    out.roles = {compile_role(a.first), compile_role(a.second)};
                }
                else if constexpr (std::is_same_v<T, ConceptAssertion>) {
                    out.kind = AxKind::ConceptFact;
                    out.c1   = compile_concept(a.expr);
                    out.x    = individual(a.individual);
                }
                else if constexpr (std::is_same_v<T, RoleAssertion>) {
                    out.kind  = AxKind::RoleFact;
                    out.roles = {compile_role(a.role)};
                    out.x     = individual(a.subject);
                    out.y     = individual(a.object);
                }
                else if constexpr (std::is_same_v<T, IndividualEquality>) {
                    out.value = individual(a.first) == individual(a.second);
                }
                else {
                    out.value = individual(a.first) != individual(a.second);
                }
            },
            ax);
        axioms.push_back(std::move(out));
    }

    // Successor rows of a role: n rows, `words` words each.
    const Word* eval_role(std::uint32_t id) {
        RoleNode& node = rnodes[id];
        switch (node.kind) {
            case RoleKind::Atomic: return role_bits.data() + node.name * n * words;
            case RoleKind::Universal: return node.rows.data();
            case RoleKind::Inverse: break;
        }
        if (node.epoch != epoch) {
            const Word* base = role_bits.data() + node.name * n * words;
            std::fill(node.rows.begin(), node.rows.end(), 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (test_bit(base + x * words, y))
                        put_bit(node.rows.data() + y * words, x, true);
            node.epoch = epoch;
        }
        return node.rows.data();
    }

    const Word* eval_concept(std::uint32_t id) {
        if (cnodes[id].epoch == epoch)
            return cnodes[id].value.data();
        // Children first; they may reallocate nothing (nodes are fixed), but
        // keep no references across the recursive calls regardless.
        const ConceptKind kind = cnodes[id].kind;
        const Word*       a    = nullptr;
        const Word*       b    = nullptr;
        const Word*       rows = nullptr;
        switch (kind) {
            case ConceptKind::Not: a = eval_concept(cnodes[id].a); break;
            case ConceptKind::And:
            case ConceptKind::Or:
                a = eval_concept(cnodes[id].a);
                b = eval_concept(cnodes[id].b);
                break;
            case ConceptKind::Self: rows = eval_role(cnodes[id].role); break;
            case ConceptKind::Forall:
            case ConceptKind::Exists:
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost:
                a    = eval_concept(cnodes[id].a);
                rows = eval_role(cnodes[id].role);
                break;
            default: break;
        }
        ConceptNode& node = cnodes[id];
        Word*        out  = node.value.data();
        switch (kind) {
            case ConceptKind::Top: fill_ones(out); break;
            case ConceptKind::Bot: std::fill(out, out + words, 0); break;
            case ConceptKind::Name: std::copy_n(concept_bits.data() + node.name * words, words, out); break;
            case ConceptKind::Nominal: std::copy_n(node.mask.data(), words, out); break;
            case ConceptKind::Not:
                for (std::size_t w = 0; w < words; ++w)
                    out[w] = ~a[w];
                if (words)
                    out[words - 1] &= last_mask;
                break;
            case ConceptKind::And:
                for (std::size_t w = 0; w < words; ++w)
                    out[w] = a[w] & b[w];
                break;
            case ConceptKind::Or:
                for (std::size_t w = 0; w < words; ++w)
                    out[w] = a[w] | b[w];
                break;
            case ConceptKind::Self:
                for (std::size_t x = 0; x < n; ++x)
                    put_bit(out, x, test_bit(rows + x * words, x));
                break;
            case ConceptKind::Forall:
            case ConceptKind::Exists:
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost:
                for (std::size_t x = 0; x < n; ++x) {
                    const Word* row = rows + x * words;
                    bool        in  = false;
                    if (kind == ConceptKind::Forall) {
                        in = true;
                        for (std::size_t w = 0; w < words && in; ++w)
                            in = (row[w] & ~a[w]) == 0;
                    }
                    else if (kind == ConceptKind::Exists) {
                        for (std::size_t w = 0; w < words && !in; ++w)
                            in = (row[w] & a[w]) != 0;
                    }
                    else {
                        std::size_t count = 0;
                        for (std::size_t w = 0; w < words; ++w)
                            count += static_cast<std::size_t>(std::popcount(row[w] & a[w]));
                        in = kind == ConceptKind::AtLeast ? count >= node.card : count <= node.card;
                    }
                    put_bit(out, x, in);
                }
                break;
        }
        node.epoch = epoch;
        return out;
    }

    bool check(std::size_t i) {
        const CompiledAxiom& ax = axioms[i];
        switch (ax.kind) {
            case AxKind::Static: return ax.value;
            case AxKind::Gci: {
                const Word* sub = eval_concept(ax.c1);
                const Word* sup = eval_concept(ax.c2);
                for (std::size_t w = 0; w < words; ++w)
                    if (sub[w] & ~sup[w])
                        return false;
                return true;
            }
            case AxKind::ConceptFact: return test_bit(eval_concept(ax.c1), ax.x);
            case AxKind::RoleFact: return test_bit(eval_role(ax.roles[0]) + ax.x * words, ax.y);
            case AxKind::Disjoint: {
                const Word* r = eval_role(ax.roles[0]);
                const Word* s = eval_role(ax.roles[1]);
                for (std::size_t w = 0; w < n * words; ++w)
                    if (r[w] & s[w])
                        return false;
                return true;
            }
            case AxKind::Ria: break;
        }
        // Left fold of relational composition over the chain.
        const std::size_t len = ax.roles.size() - 1;
        const Word*       first = eval_role(ax.roles[0]);
        scratch_a.assign(first, first + n * words);
        for (std::size_t k = 1; k < len; ++k) {
            const Word* next = eval_role(ax.roles[k]);
            scratch_b.assign(n * words, 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (test_bit(scratch_a.data() + x * words, y))
                        for (std::size_t w = 0; w < words; ++w)
                            scratch_b[x * words + w] |= next[y * words + w];
            scratch_a.swap(scratch_b);
        }
        const Word* sup = eval_role(ax.roles[len]);
        for (std::size_t w = 0; w < n * words; ++w)
            if (scratch_a[w] & ~sup[w])
                return false;
        return true;
    }
};

CompiledAxioms::CompiledAxioms(const Vocabulary& vocab, const std::vector<Axiom>& axioms)
    : impl_(std::make_unique<Impl>(vocab)) {
    for (const auto& ax : axioms)
        impl_->compile_axiom(ax);
}

CompiledAxioms::~CompiledAxioms()                                    = default;
CompiledAxioms::CompiledAxioms(CompiledAxioms&&) noexcept            = default;
CompiledAxioms& CompiledAxioms::operator=(CompiledAxioms&&) noexcept = default;

const Vocabulary& CompiledAxioms::vocabulary() const noexcept { return impl_->vocab; }
std::size_t CompiledAxioms::axiom_count() const noexcept { return impl_->axioms.size(); }

void CompiledAxioms::clear() {
    std::fill(impl_->concept_bits.begin(), impl_->concept_bits.end(), 0);
    std::fill(impl_->role_bits.begin(), impl_->role_bits.end(), 0);
    ++impl_->epoch;
}

void CompiledAxioms::set_concept(std::size_t concept_idx, std::size_t individual, bool value) {
    put_bit(impl_->concept_bits.data() + concept_idx * impl_->words, individual, value);
    ++impl_->epoch;
}

void CompiledAxioms::set_role(std::size_t role, std::size_t subject, std::size_t object, bool value) {
    auto& m = *impl_;
    put_bit(m.role_bits.data() + (role * m.n + subject) * m.words, object, value);
    ++m.epoch;
}

void CompiledAxioms::load(const ABoxRepresentation& rep) {
    auto& m = *impl_;
    clear();
    for (const auto& f : rep.concepts) {
        auto c = m.vocab.concept_index(f.name);
        if (!c)
            throw VocabularyError("unknown concept '" + f.name + "'");
        set_concept(*c, m.individual(f.individual), true);
    }
    for (const auto& f : rep.roles) {
        auto r = m.vocab.role_index(f.role);
        if (!r)
            throw VocabularyError("unknown role '" + f.role + "'");
        set_role(*r, m.individual(f.subject), m.individual(f.object), true);
    }
}

void CompiledAxioms::load(const BoundedInterpretation& i) { load(abox_of_interpretation(i)); }

bool CompiledAxioms::satisfied(std::size_t axiom) { return impl_->check(axiom); }

bool CompiledAxioms::all_satisfied() {
    for (std::size_t i = 0; i < impl_->axioms.size(); ++i)
        if (!impl_->check(i))
            return false;
    return true;
}

std::set<std::string> CompiledAxioms::concept_extension(const Concept& c) {
    auto&       m   = *impl_;
    const Word* ext = m.eval_concept(m.compile_concept(c));
    std::set<std::string> out;
    for (std::size_t x = 0; x < m.n; ++x)
        if (test_bit(ext, x))
            out.insert(m.vocab.individuals()[x]);
    return out;
}

std::set<IndividualPair> CompiledAxioms::role_extension(const Role& r) {
    auto&       m    = *impl_;
    const Word* rows = m.eval_role(m.compile_role(r));
    const auto& inds = m.vocab.individuals();
    std::set<IndividualPair> out;
    for (std::size_t x = 0; x < m.n; ++x)
        for (std::size_t y = 0; y < m.n; ++y)
            if (test_bit(rows + x * m.words, y))
                out.emplace(inds[x], inds[y]);
    return out;
}

std::set<IndividualPair> extend_role(const BoundedInterpretation& i, const Role& r) {
    CompiledAxioms plan(i.vocabulary(), {});
    plan.load(i);
    return plan.role_extension(r);
}

std::set<std::string> extend_concept(const BoundedInterpretation& i, const Concept& c) {
    CompiledAxioms plan(i.vocabulary(), {});
    plan.load(i);
    return plan.concept_extension(c);
}

bool satisfies_axiom(const BoundedInterpretation& i, const Axiom& ax) {
    CompiledAxioms plan(i.vocabulary(), {ax});
    plan.load(i);
    return plan.satisfied(0);
}

bool is_bounded_model(const BoundedInterpretation& i, const KnowledgeBase& kb) {
    CompiledAxioms plan(i.vocabulary(), kb.axioms());
    plan.load(i);
    return plan.all_satisfied();
}

std::uint64_t interpretation_bits(const Vocabulary& vocab) noexcept {
    using U = unsigned __int128;
    U n     = vocab.individuals().size();
    U bits  = vocab.concepts().size() * n + vocab.roles().size() * n * n;
    return bits > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                            : static_cast<std::uint64_t>(bits);
}

BruteforceModels::BruteforceModels(const KnowledgeBase& kb, std::uint64_t cap)
    : vocab_(kb.vocabulary())
    , plan_(kb.vocabulary(), kb.axioms())
    , bits_(interpretation_bits(kb.vocabulary())) {
    if (bits_ > cap || bits_ >= 63)
        throw CapExceeded("brute-force enumeration needs 2^" + std::to_string(bits_) +
                          " candidates, above the cap of 2^" + std::to_string(cap));
}

std::optional<ABoxRepresentation> BruteforceModels::next() {
    const std::size_t n  = vocab_.individuals().size();
    const std::size_t nc = vocab_.concepts().size();
    const std::size_t nr = vocab_.roles().size();
    const std::uint64_t total = std::uint64_t{1} << bits_;
    while (counter_ < total) {
        std::uint64_t word = counter_++;
        std::size_t   bit  = 0;
        plan_.clear();
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t x = 0; x < n; ++x, ++bit)
                if ((word >> bit) & 1U)
                    plan_.set_concept(c, x, true);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y, ++bit)
                    if ((word >> bit) & 1U)
                        plan_.set_role(r, x, y, true);
        if (!plan_.all_satisfied())
            continue;
        ABoxRepresentation rep;
        const auto&        inds = vocab_.individuals();
        bit                     = 0;
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t x = 0; x < n; ++x, ++bit)
                if ((word >> bit) & 1U)
                    rep.concepts.insert({vocab_.concepts()[c], inds[x]});
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y, ++bit)
                    if ((word >> bit) & 1U)
                        rep.roles.insert({vocab_.roles()[r], inds[x], inds[y]});
        return rep;
    }
    return std::nullopt;
}

std::vector<ABoxRepresentation> enumerate_bounded_models_bruteforce(const KnowledgeBase& kb, std::uint64_t cap) {
    BruteforceModels                gen(kb, cap);
    std::vector<ABoxRepresentation> out;
    while (auto m = gen.next())
        out.push_back(std::move(*m));
    return out;
}

bool entails_bm_bruteforce(const KnowledgeBase& kb, const Axiom& ax, std::uint64_t cap) {
    BruteforceModels gen(kb, cap);
    CompiledAxioms   query(kb.vocabulary(), {ax});
    while (auto m = gen.next()) {
        query.load(*m);
        if (!query.satisfied(0))
            return false;
    }
    return true;
}

} // namespace bmr
