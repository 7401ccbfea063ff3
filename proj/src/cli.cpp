#include <bmr/cli.hpp>
#include <bmr/parser.hpp>
#include <bmr/reasoner.hpp>
#include <bmr/translator.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bmr::cli {

namespace {

enum class Format { Facts, JsonLines };
enum class SolverChoice { Internal, EmitOnly, Oracle };

struct Config {
    std::string                input;
    std::optional<std::size_t> limit;
    Format                     format   = Format::Facts;
    bool                       no_verify = false;
    SolverChoice               solver   = SolverChoice::Internal;
    bool                       stats    = false;
    std::string                axiom;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open `" + path + "`");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::uint64_t bruteforce_cap() {
    const char* env = std::getenv("BMR_BRUTEFORCE_CAP");
    if (!env || !*env)
        return kDefaultBruteforceCap;
    char*              end = nullptr;
    unsigned long long v   = std::strtoull(env, &end, 10);
    if (*end != '\0')
        throw Error(std::string("BMR_BRUTEFORCE_CAP is not a number: ") + env);
    return v;
}

ReasonerOptions reasoner_options(const Config& c) {
    ReasonerOptions o;
    o.verify         = !c.no_verify;
    o.bruteforce_cap = bruteforce_cap();
    if (c.solver == SolverChoice::Oracle)
        o.backend = ReasonerOptions::Backend::Oracle;
    return o;
}

void print_stats(std::ostream& err, const ReasoningStats& s) {
    err << "engine: " << s.engine << "\n"
        << "ground rules: " << s.ground_rules << "\n"
        << "variables: " << s.variables << "\n"
        << "decisions: " << s.decisions << "\n"
        << "conflicts: " << s.conflicts << "\n"
        << "models: " << s.models << "\n"
        << "seconds: " << s.seconds << "\n";
}

void print_model(std::ostream& out, const Config& c, const ABoxRepresentation& m, const Vocabulary& vocab) {
    if (c.format == Format::JsonLines)
        out << format_json(m, vocab) << "\n";
    else
        out << format_facts(m) << "---\n";
    out.flush();
}

int emit_program(std::ostream& out, const KnowledgeBase& kb) {
    out << asp::emit_text(translate(normalize(kb)));
    return 0;
}

int cmd_check_sat(const Config& c, std::ostream& out, std::ostream& err) {
    auto kb = parse_kb(read_input(c.input));
    if (c.solver == SolverChoice::EmitOnly)
        return emit_program(out, kb);
    auto r = check_sat_bm(kb, reasoner_options(c));
    if (c.stats)
        print_stats(err, r.stats);
    if (!r.verdict) {
        out << "UNSATISFIABLE\n";
        return 1;
    }
    out << "SATISFIABLE\n";
    print_model(out, c, *r.witness, kb.vocabulary());
    return 0;
}

int cmd_models(const Config& c, std::ostream& out, std::ostream& err) {
    auto kb = parse_kb(read_input(c.input));
    if (c.solver == SolverChoice::EmitOnly)
        return emit_program(out, kb);
    ModelEnumerator e(kb, reasoner_options(c));
    std::size_t     n = 0;
    while (!c.limit || n < *c.limit) {
        auto m = e.next();
        if (!m)
            break;
        print_model(out, c, *m, kb.vocabulary());
        ++n;
    }
    if (c.stats)
        print_stats(err, e.stats());
    return n > 0 ? 0 : 1;
}

int cmd_entails(const Config& c, std::ostream& out, std::ostream& err) {
    auto kb = parse_kb(read_input(c.input));
    std::optional<Axiom> ax;
    try {
        ax = parse_axiom(c.axiom, kb.vocabulary());
    }
    catch (const ParseError& e) {
        throw Error("in --axiom: " + std::string(e.what()));
    }
    if (c.solver == SolverChoice::EmitOnly)
        return emit_program(out, kb);
    auto r = entails_bm(kb, *ax, reasoner_options(c));
    if (c.stats)
        print_stats(err, r.stats);
    if (r.verdict) {
        out << "ENTAILED\n";
        return 0;
    }
    out << "NOT ENTAILED\n";
    print_model(out, c, *r.witness, kb.vocabulary());
    return 1;
}

} // namespace

std::string format_facts(const ABoxRepresentation& model) {
    std::string s;
    for (const auto& f : model.concepts)
        s += f.name + "(" + f.individual + ").\n";
    for (const auto& f : model.roles)
        s += f.role + "(" + f.subject + ", " + f.object + ").\n";
    return s;
}

std::string format_json(const ABoxRepresentation& model, const Vocabulary& vocab) {
    nlohmann::ordered_json concepts = nlohmann::ordered_json::object();
    nlohmann::ordered_json roles    = nlohmann::ordered_json::object();
    std::vector<std::string> cnames = vocab.concepts(), rnames = vocab.roles();
    std::sort(cnames.begin(), cnames.end());
    std::sort(rnames.begin(), rnames.end());
    for (const auto& n : cnames)
        concepts[n] = nlohmann::ordered_json::array();
    for (const auto& n : rnames)
        roles[n] = nlohmann::ordered_json::array();
    for (const auto& f : model.concepts)
        concepts[f.name].push_back(f.individual);
    for (const auto& f : model.roles)
        roles[f.role].push_back({f.subject, f.object});
    nlohmann::ordered_json j;
    j["concepts"] = std::move(concepts);
    j["roles"]    = std::move(roles);
    return j.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config   c;
    CLI::App app{"Bounded-model reasoning for description logic knowledge bases", "bmr"};
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"facts", Format::Facts}, {"json-lines", Format::JsonLines}};
    const std::map<std::string, SolverChoice> solvers{
        {"internal", SolverChoice::Internal}, {"emit-only", SolverChoice::EmitOnly}, {"oracle", SolverChoice::Oracle}};

    auto add_input = [&](CLI::App* s) { s->add_option("file", c.input, "Knowledge base file, or - for stdin")->required(); };
    auto add_model_opts = [&](CLI::App* s) {
        s->add_option("--format", c.format, "Model output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        s->add_flag("--no-verify", c.no_verify, "Skip the oracle check of each model");
        s->add_option("--solver", c.solver, "internal, emit-only or oracle")
            ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
        s->add_flag("--stats", c.stats, "Print search statistics to stderr");
    };

    auto* sat = app.add_subcommand("check-sat", "Decide bounded-model satisfiability");
    add_input(sat);
    add_model_opts(sat);
    auto* models = app.add_subcommand("models", "Enumerate bounded models");
    add_input(models);
    add_model_opts(models);
    models->add_option("--limit", c.limit, "Stop after N models")->check(CLI::PositiveNumber);
    auto* ent = app.add_subcommand("entails", "Decide bounded-model entailment of an axiom");
    add_input(ent);
    add_model_opts(ent);
    ent->add_option("--axiom", c.axiom, "Axiom in knowledge base syntax")->required();
    auto* tr = app.add_subcommand("translate", "Print the compiled answer-set program");
    add_input(tr);
    auto* nf = app.add_subcommand("normalize", "Print the normalized knowledge base");
    add_input(nf);
    auto* ax = app.add_subcommand("axiomatize", "Print the knowledge base with its domain-closure axioms");
    add_input(ax);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sat->parsed())
            return cmd_check_sat(c, out, err);
        if (models->parsed())
            return cmd_models(c, out, err);
        if (ent->parsed())
            return cmd_entails(c, out, err);
        auto kb = parse_kb(read_input(c.input));
        if (tr->parsed())
            return emit_program(out, kb);
        if (nf->parsed()) {
            auto nkb = normalize(kb);
            for (const auto& [c, name] : nkb.fresh.concepts())
                out << "# " << name << " stands for " << print_concept(c) << "\n";
            for (const auto& [chain, name] : nkb.fresh.chain_roles())
                out << "# " << name << " stands for " << print_role(chain.first) << " o " << print_role(chain.second)
                    << "\n";
            out << print_kb(nkb.kb);
            return 0;
        }
        out << print_kb(axiomatize_bm(kb));
        return 0;
    }
    catch (const ParseError& e) {
        err << c.input << ":" << e.span().line << ":" << e.span().column << ": error: " << e.detail() << "\n";
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace bmr::cli
