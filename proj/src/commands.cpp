#include "vass/commands.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vass/coverability.hpp"
#include "vass/decide.hpp"
#include "vass/oracle.hpp"
#include "vass/textio.hpp"

namespace vass {

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

struct BudgetFlags {
    uint64_t max_nodes = 200000;
    uint64_t max_counter_sum = 10000;
    uint64_t abstraction_cap = 64;
    uint64_t abstraction_nodes = 500000;
    uint64_t monoid_cap = 20000;
    uint64_t state_cap = 2000000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-nodes", max_nodes, "forward search node cap");
        cmd->add_option("--max-counter-sum", max_counter_sum,
                        "forward search counter-sum cap");
        cmd->add_option("--abstraction-cap", abstraction_cap,
                        "largest abstraction threshold tried");
        cmd->add_option("--abstraction-nodes", abstraction_nodes,
                        "abstraction exploration node cap");
        cmd->add_option("--monoid-cap", monoid_cap, "transition monoid size cap");
        cmd->add_option("--state-cap", state_cap, "construction state cap");
    }

    DecisionBudget decision() const {
        DecisionBudget b;
        b.search.max_nodes = max_nodes;
        b.search.max_counter_sum = Nat(max_counter_sum);
        b.pipeline.abstraction_cap = Nat(abstraction_cap);
        b.pipeline.abstraction_nodes = abstraction_nodes;
        b.pipeline.monoid_cap = monoid_cap;
        b.pipeline.state_cap = state_cap;
        return b;
    }
};

struct ClassSpec {
    VassClass cls = VassClass::Det;
    size_t k = 1;
};

ClassSpec parse_class(const std::string& s) {
    if (s == "det")
        return {VassClass::Det, 1};
    if (s == "hvass")
        return {VassClass::DetHvass, 1};
    if (s.rfind("kdet:", 0) == 0)
        return {VassClass::KDet, static_cast<size_t>(std::stoul(s.substr(5)))};
    if (s.rfind("kamb:", 0) == 0)
        return {VassClass::KAmbiguous, static_cast<size_t>(std::stoul(s.substr(5)))};
    throw CLI::ValidationError("--class", "expected det|hvass|kdet:K|kamb:K");
}

json budget_json(const BudgetReport& b) {
    json j;
    j["nodes_expanded"] = b.nodes_expanded;
    j["frontier_size"] = b.frontier_size;
    j["cutoff_reason"] = b.cutoff_reason.empty() ? json(nullptr) : json(b.cutoff_reason);
    return j;
}

const char* answer_str(Answer a) {
    switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    default: return "unknown";
    }
}

int emit_verdict(std::ostream& out, bool as_json, Answer answer,
                 const std::optional<std::string>& counterexample,
                 const BudgetReport& budget) {
    if (as_json) {
        json j;
        j["verdict"] = answer_str(answer);
        j["counterexample"] = counterexample ? json(*counterexample) : json(nullptr);
        j["budget"] = budget_json(budget);
        out << j.dump() << "\n";
    } else {
        out << "verdict: " << answer_str(answer) << "\n";
        if (counterexample)
            out << "counterexample: " << *counterexample << "\n";
        if (!budget.cutoff_reason.empty())
            out << "cutoff: " << budget.cutoff_reason << "\n";
    }
    switch (answer) {
    case Answer::Yes: return kExitYes;
    case Answer::No: return kExitNo;
    default: return kExitUnknown;
    }
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write: " + path);
    f << text;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"VASS language toolkit"};
    app.require_subcommand(1);

    std::string file_a, file_b, word_text, class_text = "det", format = "human";
    std::string out_path, out1, out2, monoid_path;
    bool transition_monoid_flag = false, adaptive = false;
    uint64_t k = 1, threshold = 1, oracle_len = 5;
    BudgetFlags budget;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "human or json")
            ->check(CLI::IsMember({"human", "json"}));
    };

    CLI::App* c_empty = app.add_subcommand("empty", "decide language emptiness");
    c_empty->add_option("file", file_a, "model file")->required();
    add_format(c_empty);
    budget.attach(c_empty);

    CLI::App* c_member = app.add_subcommand("member", "decide word membership");
    c_member->add_option("file", file_a)->required();
    c_member->add_option("word", word_text, "space-separated symbols; empty for eps");
    add_format(c_member);

    CLI::App* c_runs = app.add_subcommand("runs", "count accepting runs over a word");
    c_runs->add_option("file", file_a)->required();
    c_runs->add_option("word", word_text);
    add_format(c_runs);

    CLI::App* c_include = app.add_subcommand("include", "language inclusion L(A) in L(B)");
    c_include->add_option("file_a", file_a)->required();
    c_include->add_option("file_b", file_b)->required();
    c_include->add_option("--class", class_text, "det|hvass|kdet:K|kamb:K");
    add_format(c_include);
    budget.attach(c_include);

    CLI::App* c_equiv = app.add_subcommand("equiv", "language equivalence");
    c_equiv->add_option("file_a", file_a)->required();
    c_equiv->add_option("file_b", file_b)->required();
    c_equiv->add_option("--class", class_text, "det|hvass|kdet:K|kamb:K");
    add_format(c_equiv);
    budget.attach(c_equiv);

    CLI::App* c_complement = app.add_subcommand("complement", "complement construction");
    c_complement->add_option("file", file_a)->required();
    c_complement->add_option("--class", class_text, "det|hvass|kdet:K|kamb:K");
    c_complement->add_option("-o,--output", out_path, "write the model here");
    budget.attach(c_complement);

    CLI::App* c_decorate = app.add_subcommand("decorate", "monoid decoration");
    c_decorate->add_option("file", file_a)->required();
    c_decorate->add_option("--monoid", monoid_path, "monoid file");
    c_decorate->add_flag("--transition-monoid", transition_monoid_flag,
                         "use the transition monoid of the control automaton");
    c_decorate->add_option("-o,--output", out_path);

    CLI::App* c_abstract = app.add_subcommand("abstract", "threshold abstraction");
    c_abstract->add_option("file", file_a)->required();
    c_abstract->add_option("--threshold", threshold, "fixed threshold M");
    c_abstract->add_flag("--adaptive", adaptive, "search the least sufficient threshold");
    c_abstract->add_option("--k", k, "ambiguity bound for --adaptive");
    c_abstract->add_option("-o,--output", out_path);
    budget.attach(c_abstract);

    CLI::App* c_ambiguity = app.add_subcommand("ambiguity", "exact k-ambiguity check");
    c_ambiguity->add_option("file", file_a)->required();
    c_ambiguity->add_option("--k", k, "ambiguity bound")->required();
    add_format(c_ambiguity);

    CLI::App* c_genhard = app.add_subcommand("gen-hard",
                                             "equality-hardness pair from a singleton seed");
    c_genhard->add_option("file", file_a, "singleton-VASS seed")->required();
    c_genhard->add_option("--out1", out1, "output for V1")->required();
    c_genhard->add_option("--out2", out2, "output for V2")->required();

    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force ground truth");
    c_oracle->require_subcommand(1);
    CLI::App* o_lang = c_oracle->add_subcommand("language", "bounded language");
    o_lang->add_option("file", file_a)->required();
    o_lang->add_option("--oracle-len", oracle_len, "word length bound");
    CLI::App* o_incl = c_oracle->add_subcommand("inclusion", "bounded inclusion");
    o_incl->add_option("file_a", file_a)->required();
    o_incl->add_option("file_b", file_b)->required();
    o_incl->add_option("--oracle-len", oracle_len);
    add_format(o_incl);
    CLI::App* o_equiv = c_oracle->add_subcommand("equivalence", "bounded equivalence");
    o_equiv->add_option("file_a", file_a)->required();
    o_equiv->add_option("file_b", file_b)->required();
    o_equiv->add_option("--oracle-len", oracle_len);
    add_format(o_equiv);
    CLI::App* o_amb = c_oracle->add_subcommand("ambiguity", "bounded ambiguity");
    o_amb->add_option("file", file_a)->required();
    o_amb->add_option("--oracle-len", oracle_len);
    CLI::App* o_max = c_oracle->add_subcommand("maximal-runs", "maximal run count");
    o_max->add_option("file", file_a)->required();
    o_max->add_option("--oracle-len", oracle_len);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitYes;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const bool as_json = format == "json";
    try {
        if (*c_empty) {
            Vass v = parse_model_file(file_a);
            Verdict r = nonempty(v, budget.decision().search);
            // the question is emptiness, so the verdict flips
            Answer a = r.answer == Answer::Yes  ? Answer::No
                       : r.answer == Answer::No ? Answer::Yes
                                                : Answer::Unknown;
            std::optional<std::string> cx;
            if (r.witness_word)
                cx = word_to_string(v, *r.witness_word);
            return emit_verdict(out, as_json, a, cx, r.budget);
        }
        if (*c_member) {
            Vass v = parse_model_file(file_a);
            Word w = parse_word(v, word_text);
            bool yes = accepts(v, w);
            return emit_verdict(out, as_json, yes ? Answer::Yes : Answer::No,
                                std::nullopt, {});
        }
        if (*c_runs) {
            Vass v = parse_model_file(file_a);
            Word w = parse_word(v, word_text);
            size_t n = count_accepting_runs(v, w);
            if (as_json) {
                json j;
                j["count"] = n;
                out << j.dump() << "\n";
            } else {
                out << n << "\n";
            }
            return kExitYes;
        }
        if (*c_include || *c_equiv) {
            Vass a = parse_model_file(file_a);
            Vass b = parse_model_file(file_b);
            ClassSpec cs = parse_class(class_text);
            Verdict r = *c_include
                            ? include_in(a, b, cs.cls, cs.k, budget.decision())
                            : equivalent(a, b, cs.cls, cs.k, budget.decision());
            std::optional<std::string> cx;
            if (r.witness_word)
                cx = word_to_string(a, *r.witness_word);
            return emit_verdict(out, as_json, r.answer, cx, r.budget);
        }
        if (*c_complement) {
            Vass v = parse_model_file(file_a);
            ClassSpec cs = parse_class(class_text);
            std::optional<Vass> result;
            switch (cs.cls) {
            case VassClass::Det: result = complement_det(v); break;
            case VassClass::DetHvass: result = complement_det_hvass(v); break;
            case VassClass::KDet: result = complement_kdet(v, cs.k); break;
            case VassClass::KAmbiguous: {
                ComplementOutcome c = complement_kambiguous(v, cs.k,
                                                            budget.decision().pipeline);
                if (!c.vass) {
                    err << "unknown: " << c.unknown_reason << "\n";
                    return kExitUnknown;
                }
                result = std::move(c.vass);
                break;
            }
            }
            write_output(print_model(*result), out_path, out);
            return kExitYes;
        }
        if (*c_decorate) {
            Vass v = parse_model_file(file_a);
            FiniteMonoid m;
            Hom h;
            if (transition_monoid_flag) {
                TransitionMonoid tm = transition_monoid(control_automaton(v));
                m = tm.monoid;
                h = tm.hom;
            } else if (!monoid_path.empty()) {
                MonoidFile mf = parse_monoid_file(monoid_path);
                m = mf.monoid;
                h = bind_hom(mf, v.alphabet);
            } else {
                err << "error: need --monoid FILE or --transition-monoid\n";
                return kExitUsage;
            }
            write_output(print_model(decorate_vass(v, m, h)), out_path, out);
            return kExitYes;
        }
        if (*c_abstract) {
            Vass v = parse_model_file(file_a);
            if (adaptive) {
                BaControlOutcome r = ba_control(v, k, Nat(budget.abstraction_cap),
                                                budget.abstraction_nodes);
                if (!r.vass) {
                    err << "unknown: " << r.unknown_reason << "\n";
                    return kExitUnknown;
                }
                out << "# threshold " << r.threshold.to_string() << "\n";
                write_output(print_model(*r.vass), out_path, out);
                return kExitYes;
            }
            auto mat = MAbstraction(v, Nat(threshold)).materialize(budget.abstraction_nodes);
            if (!mat) {
                err << "unknown: abstraction node cap exceeded\n";
                return kExitUnknown;
            }
            write_output(print_model(mat->automaton), out_path, out);
            return kExitYes;
        }
        if (*c_ambiguity) {
            Vass v = parse_model_file(file_a);
            AmbiguityCheck r = check_k_ambiguous(v, k);
            std::optional<std::string> cx;
            if (r.witness)
                cx = word_to_string(v, *r.witness);
            return emit_verdict(out, as_json, r.k_ambiguous ? Answer::Yes : Answer::No,
                                cx, {});
        }
        if (*c_genhard) {
            Vass v = parse_model_file(file_a);
            auto [v1, v2] = hardness_pair(v);
            write_output(print_model(v1), out1, out);
            write_output(print_model(v2), out2, out);
            return kExitYes;
        }
        if (*c_oracle) {
            if (*o_lang) {
                Vass v = parse_model_file(file_a);
                for (const Word& w : bounded_language(v, oracle_len))
                    out << word_to_string(v, w) << "\n";
                return kExitYes;
            }
            if (*o_incl || *o_equiv) {
                Vass a = parse_model_file(file_a);
                Vass b = parse_model_file(file_b);
                auto cx = *o_incl ? bounded_inclusion(a, b, oracle_len)
                                  : bounded_equivalence(a, b, oracle_len);
                return emit_verdict(out, as_json, cx ? Answer::No : Answer::Yes,
                                    cx ? std::optional(word_to_string(a, *cx))
                                       : std::nullopt,
                                    {});
            }
            Vass v = parse_model_file(file_a);
            size_t n = *o_amb ? bounded_ambiguity(v, oracle_len)
                              : max_maximal_runs(v, oracle_len);
            out << n << "\n";
            return kExitYes;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no command\n";
    return kExitUsage;
}

} // namespace vass
