#include <bmr/asp.hpp>

#include <algorithm>
#include <map>

namespace bmr::asp {

class Solver::Engine {
public:
    virtual ~Engine()                                   = default;
    virtual std::optional<AnswerSet> next(SolveStats& stats) = 0;
};

namespace {

// ---------------------------------------------------------------------------
// Naive engine: every subset of the derivable non-fact atoms, in binary
// counter order, checked against the answer-set definition.

class NaiveEngine final : public Solver::Engine {
public:
    NaiveEngine(Program ground_program, std::vector<Atom> open)
        : g_(std::move(ground_program)), open_(std::move(open)) {}

    std::optional<AnswerSet> next(SolveStats& stats) override {
        const std::uint64_t total = std::uint64_t{1} << open_.size();
        while (mask_ < total) {
            std::uint64_t m = mask_++;
            ++stats.decisions;
            AnswerSet candidate = g_.facts;
            for (std::size_t k = 0; k < open_.size(); ++k)
                if ((m >> k) & 1U)
                    candidate.insert(open_[k]);
            if (is_answer_set_ground(g_, candidate))
                return candidate;
        }
        return std::nullopt;
    }

private:
    Program           g_;
    std::vector<Atom> open_;
    std::uint64_t     mask_ = 0;
};

// ---------------------------------------------------------------------------
// Guess-and-check shape

struct GuessPair {
    std::size_t first, second; // rule indices
};

// Pairs of rules  p(t) :- not q(t), G.  and  q(t) :- not p(t), G.  where G
// only mentions predicates that head no rule. Empty result with ok=false if
// some non-constraint rule fits no pair.
bool find_guess_pairs(const Program& p, std::vector<GuessPair>& pairs) {
    std::set<std::string>              heads;
    std::map<std::string, std::size_t> rule_of_head;
    for (std::size_t k = 0; k < p.rules.size(); ++k) {
        const Rule& r = p.rules[k];
        for (const auto& h : r.head) {
            heads.insert(h.predicate);
            if (!rule_of_head.emplace(h.predicate, k).second)
                return false; // a guess predicate heads exactly one rule
        }
    }
    std::set<std::size_t> paired;
    for (std::size_t k = 0; k < p.rules.size(); ++k) {
        const Rule& r = p.rules[k];
        if (r.is_constraint())
            continue;
        if (r.head.size() != 1 || r.negative.size() != 1 || !r.counts.empty())
            return false;
        const Atom& h = r.head[0];
        const Atom& n = r.negative[0];
        if (n.predicate == h.predicate || n.args != h.args)
            return false;
        for (const auto& b : r.positive)
            if (heads.count(b.predicate))
                return false;
        auto it = rule_of_head.find(n.predicate);
        if (it == rule_of_head.end())
            return false;
        const Rule& o = p.rules[it->second];
        if (o.head.size() != 1 || o.negative.size() != 1 || o.negative[0].predicate != h.predicate ||
            o.head[0].args != h.args || o.negative[0].args != h.args || o.positive != r.positive || !o.counts.empty())
            return false;
        if (k < it->second) {
            pairs.push_back({k, it->second});
            paired.insert(k);
            paired.insert(it->second);
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Propagating engine

struct Lit {
    std::uint32_t var;
    bool          value; // the element holds iff var == value
    friend bool operator==(const Lit&, const Lit&) = default;
    friend auto operator<=>(const Lit&, const Lit&) = default;
};

struct CountConstraintPart {
    std::size_t                   base = 0; // elements true regardless of the guess
    std::vector<std::vector<Lit>> elems;    // conjunctions, each possibly true
    Comparison                    op    = Comparison::Ge;
    std::uint32_t                 bound = 0;
};

struct Constraint {
    std::vector<Lit>                 lits;
    std::vector<CountConstraintPart> counts;
};

enum class Tri : std::int8_t { False = 0, True = 1, Unknown = -1 };

class PropagateEngine final : public Solver::Engine {
public:
    PropagateEngine(const Program& g, const std::vector<std::pair<std::string, std::string>>& pair_preds,
                    SolveStats& stats) {
        facts_ = g.facts;
        std::map<std::string, std::string> partner;
        for (const auto& [a, b] : pair_preds) {
            partner[a] = b;
            partner[b] = a;
        }
        // Ground guess instances, canonicalised to the first predicate of each pair.
        std::set<std::string> firsts;
        for (const auto& [a, b] : pair_preds)
            firsts.insert(a);
        std::set<Atom> instances;
        for (const auto& r : g.rules) {
            if (r.is_constraint())
                continue;
            Atom h = r.head[0];
            if (!firsts.count(h.predicate))
                h.predicate = partner.at(h.predicate);
            instances.insert(h);
        }
        for (const auto& a : instances) {
            Atom b      = a;
            b.predicate = partner.at(a.predicate);
            bool fa = facts_.count(a) > 0, fb = facts_.count(b) > 0;
            if (fa || fb) {
                status_[a] = {fa ? Fixed::True : Fixed::False, 0, true};
                status_[b] = {fb ? Fixed::True : Fixed::False, 0, true};
                continue;
            }
            auto v     = static_cast<std::uint32_t>(pos_atoms_.size());
            status_[a] = {Fixed::Var, v, true};
            status_[b] = {Fixed::Var, v, false};
            pos_atoms_.push_back(a);
            neg_atoms_.push_back(b);
        }
        value_.assign(pos_atoms_.size(), -1);
        occurs_.resize(pos_atoms_.size());
        stats.variables = pos_atoms_.size();

        for (const auto& r : g.rules)
            if (r.is_constraint())
                add_constraint(r);
    }

    std::optional<AnswerSet> next(SolveStats& stats) override {
        if (exhausted_)
            return std::nullopt;
        if (!started_) {
            started_ = true;
            if (unsat_ || !propagate_all(stats)) {
                exhausted_ = true;
                return std::nullopt;
            }
        }
        else if (!backtrack(stats)) {
            return std::nullopt;
        }
        for (;;) {
            while (cursor_ < value_.size() && value_[cursor_] >= 0)
                ++cursor_;
            if (cursor_ == value_.size()) {
                if (complete_ok())
                    return model();
                ++stats.conflicts;
                if (!backtrack(stats))
                    return std::nullopt;
                continue;
            }
            ++stats.decisions;
            levels_.push_back({trail_.size(), static_cast<std::uint32_t>(cursor_), false});
            assign(static_cast<std::uint32_t>(cursor_), false);
            if (!propagate(stats) && !backtrack(stats))
                return std::nullopt;
        }
    }

private:
    enum class Fixed : std::uint8_t { False, True, Var };
    struct Status {
        Fixed         fixed = Fixed::False;
        std::uint32_t var   = 0;
        bool          polarity = true; // atom true iff var == polarity
    };
    struct Level {
        std::size_t   trail_start;
        std::uint32_t var;
        bool          flipped;
    };

    Status status_of(const Atom& a) const {
        if (auto it = status_.find(a); it != status_.end())
            return it->second;
        return {facts_.count(a) ? Fixed::True : Fixed::False, 0, true};
    }

    // Adds `a` (or its negation) to a conjunction; false if it can never hold.
    bool add_lit(std::vector<Lit>& conj, const Atom& a, bool negated) const {
        Status s = status_of(a);
        if (s.fixed != Fixed::Var) {
            bool truth = s.fixed == Fixed::True;
            return truth != negated;
        }
        Lit l{s.var, negated ? !s.polarity : s.polarity};
        if (std::find(conj.begin(), conj.end(), Lit{l.var, !l.value}) != conj.end())
            return false;
        if (std::find(conj.begin(), conj.end(), l) == conj.end())
            conj.push_back(l);
        return true;
    }

    void add_constraint(const Rule& r) {
        Constraint c;
        for (const auto& a : r.positive)
            if (!add_lit(c.lits, a, false))
                return;
        for (const auto& a : r.negative)
            if (!add_lit(c.lits, a, true))
                return;
        for (const auto& ce : r.counts) {
            CountConstraintPart part{0, {}, ce.op, ce.bound};
            std::set<Atom> seen;
            auto consider = [&](const Atom& cand) {
                std::map<std::string, std::string> b;
                if (cand.predicate != ce.element.predicate || cand.args.size() != ce.element.args.size())
                    return;
                for (std::size_t k = 0; k < cand.args.size(); ++k) {
                    const Term& p = ce.element.args[k];
                    if (!p.is_variable()) {
                        if (p.name != cand.args[k].name)
                            return;
                        continue;
                    }
                    auto [it, ins] = b.emplace(p.name, cand.args[k].name);
                    if (!ins && it->second != cand.args[k].name)
                        return;
                }
                if (!seen.insert(cand).second)
                    return;
                std::vector<Lit> conj;
                if (!add_lit(conj, cand, false))
                    return;
                for (const auto& s : ce.conditions) {
                    Atom ga = s.atom;
                    for (auto& t : ga.args)
                        if (t.is_variable())
                            t = Term::constant(b.at(t.name));
                    if (!add_lit(conj, ga, s.negated))
                        return;
                }
                if (conj.empty())
                    ++part.base;
                else
                    part.elems.push_back(std::move(conj));
            };
            Atom probe{ce.element.predicate, {}};
            for (auto it = facts_.lower_bound(probe); it != facts_.end() && it->predicate == probe.predicate; ++it)
                consider(*it);
            for (auto it = status_.lower_bound(probe); it != status_.end() && it->first.predicate == probe.predicate; ++it)
                consider(it->first);
            c.counts.push_back(std::move(part));
        }
        auto id = static_cast<std::uint32_t>(constraints_.size());
        std::set<std::uint32_t> vars;
        for (const auto& l : c.lits)
            vars.insert(l.var);
        for (const auto& part : c.counts)
            for (const auto& e : part.elems)
                for (const auto& l : e)
                    vars.insert(l.var);
        for (auto v : vars)
            occurs_[v].push_back(id);
        if (vars.empty()) {
            // Fully decided already: either irrelevant or always violated.
            if (status(c) == Tri::True)
                unsat_ = true;
            return;
        }
        constraints_.push_back(std::move(c));
    }

    Tri lit_value(const Lit& l) const {
        int v = value_[l.var];
        if (v < 0)
            return Tri::Unknown;
        return (v == 1) == l.value ? Tri::True : Tri::False;
    }

    Tri conj_value(const std::vector<Lit>& conj) const {
        Tri out = Tri::True;
        for (const auto& l : conj) {
            Tri t = lit_value(l);
            if (t == Tri::False)
                return Tri::False;
            if (t == Tri::Unknown)
                out = Tri::Unknown;
        }
        return out;
    }

    static void count_range(const CountConstraintPart& part, const PropagateEngine& self, std::size_t& lo,
                            std::size_t& hi) {
        lo = hi = part.base;
        for (const auto& e : part.elems) {
            Tri t = self.conj_value(e);
            if (t == Tri::True)
                ++lo;
            if (t != Tri::False)
                ++hi;
        }
    }

    static Tri count_value3(const CountConstraintPart& part, std::size_t lo, std::size_t hi) {
        bool any_true = false, any_false = false;
        // compare() is monotone in N for every operator except '=', so the
        // endpoints decide; for '=' check whether the bound lies in range.
        if (part.op == Comparison::Eq) {
            any_true  = lo <= part.bound && part.bound <= hi;
            any_false = !(lo == hi && lo == part.bound);
        }
        else {
            for (std::size_t n : {lo, hi}) {
                if (compare(n, part.op, part.bound))
                    any_true = true;
                else
                    any_false = true;
            }
        }
        if (any_true && !any_false)
            return Tri::True;
        if (!any_true)
            return Tri::False;
        return Tri::Unknown;
    }

    // Truth value of the constraint body.
    Tri status(const Constraint& c) const {
        Tri out = Tri::True;
        for (const auto& l : c.lits) {
            Tri t = lit_value(l);
            if (t == Tri::False)
                return Tri::False;
            if (t == Tri::Unknown)
                out = Tri::Unknown;
        }
        for (const auto& part : c.counts) {
            std::size_t lo, hi;
            count_range(part, *this, lo, hi);
            Tri t = count_value3(part, lo, hi);
            if (t == Tri::False)
                return Tri::False;
            if (t == Tri::Unknown)
                out = Tri::Unknown;
        }
        return out;
    }

    void assign(std::uint32_t var, bool v) {
        value_[var] = v ? 1 : 0;
        trail_.push_back(var);
    }

    // Forces `l` true unless already so; false on contradiction.
    bool force(const Lit& l) {
        Tri t = lit_value(l);
        if (t == Tri::True)
            return true;
        if (t == Tri::False)
            return false;
        assign(l.var, l.value);
        return true;
    }

    // Examines one constraint; false on conflict.
    bool examine(const Constraint& c) {
        std::size_t      unknown = 0;
        const Lit*       open_lit   = nullptr;
        const CountConstraintPart* open_count = nullptr;
        std::size_t      open_lo = 0, open_hi = 0;
        for (const auto& l : c.lits) {
            Tri t = lit_value(l);
            if (t == Tri::False)
                return true;
            if (t == Tri::Unknown) {
                ++unknown;
                open_lit = &l;
            }
        }
        for (const auto& part : c.counts) {
            std::size_t lo, hi;
            count_range(part, *this, lo, hi);
            Tri t = count_value3(part, lo, hi);
            if (t == Tri::False)
                return true;
            if (t == Tri::Unknown) {
                ++unknown;
                open_count = &part;
                open_lo    = lo;
                open_hi    = hi;
            }
        }
        if (unknown == 0)
            return false;
        if (unknown > 1)
            return true;
        if (open_count == nullptr)
            return force(Lit{open_lit->var, !open_lit->value});

        // The aggregate must end up false.
        const auto& part = *open_count;
        bool want_many = part.op == Comparison::Lt || part.op == Comparison::Le;
        bool want_few  = part.op == Comparison::Gt || part.op == Comparison::Ge;
        if (want_many) {
            // need N >= t
            std::size_t t = part.op == Comparison::Lt ? part.bound : part.bound + 1;
            if (open_hi == t)
                for (const auto& e : part.elems)
                    if (conj_value(e) == Tri::Unknown)
                        for (const auto& l : e)
                            if (!force(l))
                                return false;
        }
        else if (want_few) {
            // need N <= t
            if (part.op == Comparison::Ge && part.bound == 0)
                return false;
            std::size_t t = part.op == Comparison::Gt ? part.bound : part.bound - 1;
            if (open_lo == t)
                for (const auto& e : part.elems) {
                    if (conj_value(e) != Tri::Unknown)
                        continue;
                    const Lit*  last = nullptr;
                    std::size_t open = 0;
                    for (const auto& l : e)
                        if (lit_value(l) == Tri::Unknown) {
                            ++open;
                            last = &l;
                        }
                    if (open == 1 && !force(Lit{last->var, !last->value}))
                        return false;
                }
        }
        return true;
    }

    bool propagate(SolveStats& stats) {
        while (qhead_ < trail_.size()) {
            std::uint32_t v = trail_[qhead_++];
            for (auto cid : occurs_[v])
                if (!examine(constraints_[cid])) {
                    ++stats.conflicts;
                    qhead_ = trail_.size();
                    return false;
                }
        }
        return true;
    }

    bool propagate_all(SolveStats& stats) {
        for (const auto& c : constraints_)
            if (!examine(c)) {
                ++stats.conflicts;
                return false;
            }
        return propagate(stats);
    }

    void undo_to(std::size_t size) {
        while (trail_.size() > size) {
            value_[trail_.back()] = -1;
            if (trail_.back() < cursor_)
                cursor_ = trail_.back();
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, trail_.size());
    }

    bool backtrack(SolveStats& stats) {
        while (!levels_.empty()) {
            Level lv = levels_.back();
            levels_.pop_back();
            undo_to(lv.trail_start);
            if (lv.flipped)
                continue;
            levels_.push_back({lv.trail_start, lv.var, true});
            assign(lv.var, true);
            if (propagate(stats))
                return true;
        }
        exhausted_ = true;
        return false;
    }

    bool complete_ok() const {
        return std::all_of(constraints_.begin(), constraints_.end(),
                           [&](const Constraint& c) { return status(c) == Tri::False; });
    }

    AnswerSet model() const {
        AnswerSet out = facts_;
        for (std::size_t v = 0; v < value_.size(); ++v)
            out.insert(value_[v] == 1 ? pos_atoms_[v] : neg_atoms_[v]);
        return out;
    }

    std::set<Atom>              facts_;
    std::map<Atom, Status>      status_;
    std::vector<Atom>           pos_atoms_, neg_atoms_;
    std::vector<Constraint>     constraints_;
    std::vector<std::vector<std::uint32_t>> occurs_;
    std::vector<int>            value_;
    std::vector<std::uint32_t>  trail_;
    std::vector<Level>          levels_;
    std::size_t                 qhead_  = 0;
    std::size_t                 cursor_ = 0;
    bool                        started_ = false, exhausted_ = false, unsat_ = false;
};

} // namespace

bool is_guess_and_check(const Program& p) {
    std::vector<GuessPair> pairs;
    if (!find_guess_pairs(p, pairs))
        return false;
    for (const auto& r : p.rules)
        if (!is_safe(r))
            return false;
    return true;
}

Solver::Solver(const Program& p, SolveOptions options) : options_(options) {
    Program g = ground(p);
    stats_.ground_rules = g.rules.size();

    std::vector<GuessPair> pairs;
    bool shaped = find_guess_pairs(p, pairs);
    auto use_propagate = [&] {
        std::vector<std::pair<std::string, std::string>> preds;
        for (const auto& gp : pairs)
            preds.emplace_back(p.rules[gp.first].head[0].predicate, p.rules[gp.second].head[0].predicate);
        stats_.engine = "propagate";
        engine_       = std::make_unique<PropagateEngine>(g, preds, stats_);
    };
    auto use_naive = [&] {
        std::set<Atom> open;
        for (const auto& r : g.rules)
            for (const auto& h : r.head)
                if (!g.facts.count(h))
                    open.insert(h);
        if (open.size() > options_.naive_atom_cap)
            throw SolverContractError("program has " + std::to_string(open.size()) +
                                      " derivable atoms, above the naive engine cap of " +
                                      std::to_string(options_.naive_atom_cap) +
                                      ", and is not of guess-and-check shape");
        stats_.engine    = "naive";
        stats_.variables = open.size();
        engine_          = std::make_unique<NaiveEngine>(std::move(g), std::vector<Atom>(open.begin(), open.end()));
    };

    switch (options_.engine) {
        case SolveOptions::Engine::Propagate:
            if (!shaped)
                throw SolverContractError("program is not of guess-and-check shape");
            use_propagate();
            break;
        case SolveOptions::Engine::Naive: use_naive(); break;
        case SolveOptions::Engine::Auto:
            if (shaped)
                use_propagate();
            else
                use_naive();
            break;
    }
}

Solver::~Solver()                            = default;
Solver::Solver(Solver&&) noexcept            = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::optional<AnswerSet> Solver::next() {
    if (options_.limit && stats_.models >= *options_.limit)
        return std::nullopt;
    auto out = engine_->next(stats_);
    if (out)
        ++stats_.models;
    return out;
}

const SolveStats& Solver::stats() const noexcept { return stats_; }

std::vector<AnswerSet> solve(const Program& p, SolveOptions options) {
    Solver                 s(p, options);
    std::vector<AnswerSet> out;
    while (auto a = s.next())
        out.push_back(std::move(*a));
    return out;
}

} // namespace bmr::asp
