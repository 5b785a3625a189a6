// rht: minimal Sullivan models, the elliptic/hyperbolic dichotomy and
// rank bounds in the dual-homotopy exact sequence of an evaluation fibration.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rht/dichotomy.hpp"
#include "rht/les.hpp"
#include "rht/minimal_model.hpp"
#include "rht/spaces.hpp"

using json = nlohmann::json;
using namespace rht;

namespace {

// exit codes (also listed in the README and --help)
constexpr int kOk = 0;
constexpr int kUnreadableInput = 2;
constexpr int kMalformed = 3;
constexpr int kValidation = 4;
constexpr int kBudget = 5;
constexpr int kInfeasible = 6;
constexpr int kPrecondition = 7;

struct CommonOptions {
    std::string preset;
    std::string input_file;
    int max_degree = 10;
    int cat = -1;  // -1 = default rule
    long long cap = 2'000'000;
    std::string format = "table";
};

struct LoadedSpace {
    std::string label;
    FiniteDGA algebra;
    bool is_four_manifold = false;
    std::optional<int> b2;
};

LoadedSpace load_space(const CommonOptions& opt) {
    if (!opt.input_file.empty()) {
        std::ifstream in(opt.input_file);
        if (!in)
            throw std::ios_base::failure("cannot read input file: " + opt.input_file);
        FiniteDGA a = FiniteDGA::parse_document(in);
        ValidationReport r = validate_dga(a);
        if (!r.ok)
            throw ValidationError("input algebra fails validation [" +
                                  r.first_failure->check + "]: " + r.first_failure->witness);
        LoadedSpace s{opt.input_file, std::move(a), false, std::nullopt};
        s.b2 = cohomology_dimension(s.algebra, 2);
        return s;
    }
    if (opt.preset.empty())
        throw ParseError("one of --preset or --input is required");
    Preset p = resolve_preset(opt.preset);
    return LoadedSpace{p.name, std::move(p.algebra), p.is_four_manifold, p.b2};
}

CatBound resolve_cat(const CommonOptions& opt, const LoadedSpace& space, int formal_dim) {
    if (opt.cat >= 1)
        return CatBound::user(opt.cat);
    if (space.is_four_manifold)
        return CatBound::four_manifold_default();
    return CatBound::half_dimension(formal_dim);
}

json certification_json(const MinimalModel& m) {
    json out;
    out["certified"] = m.certification().certified;
    json degs = json::array();
    for (const auto& e : m.certification().entries)
        degs.push_back({{"degree", e.degree},
                        {"model_dim", e.model_dim},
                        {"target_dim", e.target_dim},
                        {"rank", e.rank},
                        {"iso", e.iso}});
    out["degrees"] = degs;
    return out;
}

void print_certification(const MinimalModel& m, std::ostream& os) {
    os << "certification: " << (m.certification().certified ? "pass" : "FAIL")
       << " (H^k(phi) isomorphism re-checked for k <= " << m.truncation() << ")\n";
}

json ranks_json(const RankSequence& r) {
    json out;
    out["truncation"] = r.truncation;
    out["formal_dimension"] = r.formal_dimension;
    json table = json::object();
    for (int k = 0; k <= r.truncation; ++k)
        if (r.ranks[k] != 0)
            table[std::to_string(k)] = r.ranks[k];
    out["ranks"] = table;
    return out;
}

int cmd_model(const CommonOptions& opt) {
    LoadedSpace space = load_space(opt);
    MinimalModel m =
        build_minimal_model(space.algebra, opt.max_degree, BuildOptions{opt.cap, true});
    if (opt.format == "json") {
        json out;
        out["command"] = "model";
        out["input"] = space.label;
        out["certification"] = certification_json(m);
        out["ranks"] = ranks_json(pi_ranks(m));
        out["document"] = m.export_document();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== minimal model: " << space.label << " (max degree " << opt.max_degree
                  << ") ==\n";
        print_certification(m, std::cout);
        std::cout << m.export_document();
    }
    return kOk;
}

int cmd_ranks(const CommonOptions& opt) {
    LoadedSpace space = load_space(opt);
    MinimalModel m =
        build_minimal_model(space.algebra, opt.max_degree, BuildOptions{opt.cap, true});
    RankSequence r = pi_ranks(m);
    if (opt.format == "json") {
        json out;
        out["command"] = "ranks";
        out["input"] = space.label;
        out["certification"] = certification_json(m);
        out["ranks"] = ranks_json(r);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== dual homotopy ranks: " << space.label << " (max degree "
                  << opt.max_degree << ") ==\n";
        print_certification(m, std::cout);
        std::cout << "degree  dim Pi^k\n";
        for (int k = 2; k <= r.truncation; ++k)
            if (r.ranks[k] != 0)
                std::cout << k << "       " << r.ranks[k] << "\n";
        if (m.algebra().generator_count() == 0)
            std::cout << "(no generators: the rational homotopy vanishes)\n";
    }
    return kOk;
}

int cmd_classify(const CommonOptions& opt) {
    LoadedSpace space = load_space(opt);
    MinimalModel m =
        build_minimal_model(space.algebra, opt.max_degree, BuildOptions{opt.cap, true});
    RankSequence r = pi_ranks(m);
    BettiData betti = betti_data(space.algebra);
    CatBound cat = resolve_cat(opt, space, r.formal_dimension);
    DichotomyVerdict v = classify(r, betti, cat);
    GrowthReport growth = opt.max_degree >= 6 ? growth_report(r) : GrowthReport{};
    if (opt.format == "json") {
        json out;
        out["command"] = "classify";
        out["input"] = space.label;
        out["certification"] = certification_json(m);
        out["verdict"] = verdict_str(v.verdict);
        out["cat"] = {{"value", v.cat}, {"source", cat.source_str()}};
        out["euler"] = v.euler;
        out["even_total"] = v.even_total;
        out["odd_total"] = v.odd_total;
        if (v.witness)
            out["witness"] = {{"kind", v.witness->kind},
                              {"degree", v.witness->degree},
                              {"lhs", v.witness->lhs},
                              {"rhs", v.witness->rhs},
                              {"text", v.witness->text}};
        if (!v.stabilization_note.empty())
            out["stabilization"] = v.stabilization_note;
        if (!v.binding_constraint.empty())
            out["binding_constraint"] = v.binding_constraint;
        if (opt.max_degree >= 6) {
            json g;
            g["cumulative"] = growth.cumulative;
            g["flag"] = growth.flag;
            json ratios = json::array();
            for (const auto& [k, q] : growth.window_ratios)
                ratios.push_back({{"degree", k}, {"ratio", to_string(q)}});
            g["window_ratios"] = ratios;
            out["growth"] = g;
        }
        out["ranks"] = ranks_json(r);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== dichotomy: " << space.label << " (max degree " << opt.max_degree
                  << ") ==\n";
        print_certification(m, std::cout);
        std::cout << "cat bound: " << v.cat << " (" << cat.source_str() << ")\n";
        std::cout << "euler characteristic: " << v.euler << "\n";
        std::cout << "cumulative ranks: even = " << v.even_total << ", odd = " << v.odd_total
                  << "\n";
        std::cout << "verdict: " << verdict_str(v.verdict) << "\n";
        if (v.witness)
            std::cout << "witness: " << v.witness->text << "\n";
        if (!v.stabilization_note.empty())
            std::cout << "evidence: " << v.stabilization_note << "\n";
        if (!v.binding_constraint.empty())
            std::cout << "binding constraint: " << v.binding_constraint << "\n";
        if (opt.max_degree >= 6) {
            std::cout << "growth: flag = " << growth.flag << "; cumulative sums:";
            for (int k = 2; k <= r.truncation; ++k)
                std::cout << " " << growth.cumulative[k];
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_les(const CommonOptions& opt) {
    if (opt.input_file.empty())
        throw ParseError("les requires --input <instance file>");
    std::ifstream in(opt.input_file);
    if (!in)
        throw std::ios_base::failure("cannot read input file: " + opt.input_file);
    LESInstance inst = LESInstance::parse_document(in);
    LESSolution sol = solve_les(inst);
    auto interval_str = [](const IntervalBound& iv) {
        std::ostringstream os;
        os << "[" << iv.lo << ", ";
        if (iv.hi)
            os << *iv.hi << "]";
        else
            os << "inf)";
        return os.str();
    };
    if (opt.format == "json") {
        json out;
        out["command"] = "les";
        out["max_degree"] = sol.max_degree;
        out["unbounded_entries"] = sol.any_unbounded;
        for (const char* row : {"B", "E", "F"}) {
            json r = json::array();
            const auto& entries = row[0] == 'B' ? sol.B : row[0] == 'E' ? sol.E : sol.F;
            for (int k = 1; k <= sol.max_degree; ++k) {
                json e;
                e["degree"] = k;
                e["lo"] = entries[k].interval.lo;
                if (entries[k].interval.hi)
                    e["hi"] = *entries[k].interval.hi;
                r.push_back(e);
            }
            out[row] = r;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== exact-sequence rank intervals (degrees 1.." << sol.max_degree
                  << ") ==\n";
        for (const char* row : {"B", "E", "F"}) {
            const auto& entries = row[0] == 'B' ? sol.B : row[0] == 'E' ? sol.E : sol.F;
            std::cout << row << ":";
            for (int k = 1; k <= sol.max_degree; ++k)
                std::cout << " " << interval_str(entries[k].interval);
            std::cout << "\n";
        }
        if (sol.any_unbounded)
            std::cout << "note: entries with no finite upper bound are reported as such, "
                         "never clamped\n";
        std::cout << "every finite endpoint carries a certified witness assignment\n";
    }
    return kOk;
}

json bounds_json(const BoundReport& b) {
    json out;
    out["cat"] = b.cat;
    out["total_shaved"] = b.total_shaved;
    out["k0"] = b.k0;
    out["exhausted_within_window"] = b.exhausted_within_window;
    json allow = json::object();
    for (int j = 1; j <= b.max_degree; ++j)
        if (b.allowance[j] != 0)
            allow[std::to_string(j)] = b.allowance[j];
    out["allowance"] = allow;
    json bounds = json::object();
    for (int k = 1; k <= b.max_degree - 1; ++k)
        bounds[std::to_string(k)] = b.bounds[k];
    out["bounds"] = bounds;
    return out;
}

void print_bounds(const BoundReport& b, std::ostream& os) {
    os << "budget: total evaluation image " << b.total_shaved << " of cat = " << b.cat
       << " spent; exhaustion degree k0 = ";
    if (b.exhausted_within_window)
        os << b.k0;
    else
        os << "(beyond window)";
    os << "\n";
    os << "worst-case allowance (odd degrees only):";
    bool any = false;
    for (int j = 1; j <= b.max_degree; ++j)
        if (b.allowance[j] != 0) {
            os << " " << j << ":" << b.allowance[j];
            any = true;
        }
    if (!any)
        os << " none";
    os << "\n";
    os << "k    bound on dim Pi^k(fiber)\n";
    for (int k = 1; k <= b.max_degree - 1; ++k)
        if (b.bounds[k] != 0)
            os << k << "    " << b.bounds[k] << "\n";
    os << "indexing note: exactness yields the shifted form bound(k) = dim Pi^{k+1}(X) - "
          "allowance(k+1); the unshifted reading compares dim Pi^k(X) to dim Pi^k(fiber) "
          "directly\n";
}

int cmd_isotropy(const CommonOptions& opt, int budget_override) {
    LoadedSpace space = load_space(opt);
    MinimalModel m =
        build_minimal_model(space.algebra, opt.max_degree, BuildOptions{opt.cap, true});
    RankSequence r = pi_ranks(m);
    CatBound cat = resolve_cat(opt, space, r.formal_dimension);
    GottliebBudget budget = budget_override >= 0 ? GottliebBudget{budget_override, cat}
                                                 : GottliebBudget::from_cat(cat);
    BoundReport b = isotropy_lower_bounds(r, budget);
    if (opt.format == "json") {
        json out;
        out["command"] = "isotropy";
        out["input"] = space.label;
        out["certification"] = certification_json(m);
        out["ranks"] = ranks_json(r);
        out["budget_total"] = budget.total;
        out["report"] = bounds_json(b);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== isotropy rank bounds: " << space.label << " (max degree "
                  << opt.max_degree << ", budget " << budget.total << ") ==\n";
        print_certification(m, std::cout);
        print_bounds(b, std::cout);
    }
    return kOk;
}

int cmd_blowup(const CommonOptions& opt) {
    LoadedSpace space = load_space(opt);
    MinimalModel m =
        build_minimal_model(space.algebra, opt.max_degree, BuildOptions{opt.cap, true});
    RankSequence r = pi_ranks(m);
    CatBound cat = resolve_cat(opt, space, r.formal_dimension);
    int b2 = space.b2.value_or(cohomology_dimension(space.algebra, 2));
    BlowupReport rep = blowup_scenario(r, b2, cat);
    if (opt.format == "json") {
        json out;
        out["command"] = "blowup";
        out["input"] = space.label;
        out["certification"] = certification_json(m);
        out["b2"] = rep.b2;
        out["structure_group_ranks"] = rep.structure_group_ranks;
        out["degree2_note"] = rep.degree2_note;
        out["bounds"] = bounds_json(rep.bounds);
        out["cumulative_bounds"] = rep.cumulative_bounds;
        out["unbounded_cumulative_growth"] = rep.unbounded_cumulative_growth;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "== blow-up scenario: " << space.label << " (b2 = " << rep.b2
                  << ", max degree " << opt.max_degree << ") ==\n";
        print_certification(m, std::cout);
        std::cout << "structure group ranks (degrees 1.." << opt.max_degree << "):";
        for (int k = 1; k <= opt.max_degree; ++k)
            std::cout << " " << rep.structure_group_ranks[k];
        std::cout << "\n" << rep.degree2_note << "\n";
        print_bounds(rep.bounds, std::cout);
        std::cout << "cumulative fiber bounds (from degree 2):";
        for (int k = 2; k <= opt.max_degree - 1; ++k)
            std::cout << " " << rep.cumulative_bounds[k];
        std::cout << "\n";
        std::cout << "cumulative growth persists past k0: "
                  << (rep.unbounded_cumulative_growth ? "yes" : "no") << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rht: truncated minimal Sullivan models from cohomology data, the rational "
        "elliptic/hyperbolic dichotomy, and rank bounds in the dual-homotopy exact "
        "sequence of an evaluation fibration.\n"
        "Exit codes: 0 ok, 1 usage, 2 unreadable input, 3 malformed presentation, "
        "4 validation failure, 5 resource budget exceeded, 6 infeasible instance, "
        "7 precondition violation."};
    app.require_subcommand(1);

    CommonOptions opt;
    int budget_override = -1;
    auto add_common = [&](CLI::App* sub, bool needs_space) {
        if (needs_space) {
            sub->add_option("--preset", opt.preset,
                            "named space (S2..S6, CP2..CP4, S2xS2, 2CP2..5CP2, point) or an "
                            "intersection-form literal like diag(1,1,1) or [[0,1],[1,0]]");
            sub->add_option("--input", opt.input_file, "algebra presentation file");
            sub->add_option("--max-degree", opt.max_degree, "truncation degree (>= 2)")
                ->check(CLI::Range(2, 64));
            sub->add_option("--cap", opt.cap,
                            "per-degree monomial-basis size cap (abort loudly beyond it)");
        } else {
            sub->add_option("--input", opt.input_file, "instance file");
        }
        sub->add_option("--format", opt.format, "table | json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    auto* model = app.add_subcommand("model", "build and print the truncated minimal model");
    add_common(model, true);
    auto* ranks = app.add_subcommand("ranks", "dual rational homotopy rank table");
    add_common(ranks, true);
    auto* classify_cmd = app.add_subcommand("classify", "elliptic/hyperbolic verdict");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--cat", opt.cat, "LS-category upper bound override");
    auto* les = app.add_subcommand("les", "solve an exact-sequence rank instance");
    add_common(les, false);
    auto* isotropy = app.add_subcommand("isotropy", "fiber rank lower bounds under a budget");
    add_common(isotropy, true);
    isotropy->add_option("--cat", opt.cat, "LS-category upper bound override");
    isotropy->add_option("--budget", budget_override,
                         "override the total evaluation-image budget (default: cat)");
    auto* blowup = app.add_subcommand("blowup", "rank skeleton of the blow-up argument");
    add_common(blowup, true);
    blowup->add_option("--cat", opt.cat, "LS-category upper bound override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (model->parsed())
            return cmd_model(opt);
        if (ranks->parsed())
            return cmd_ranks(opt);
        if (classify_cmd->parsed())
            return cmd_classify(opt);
        if (les->parsed())
            return cmd_les(opt);
        if (isotropy->parsed())
            return cmd_isotropy(opt, budget_override);
        if (blowup->parsed())
            return cmd_blowup(opt);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnreadableInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\npartial model: " << e.partial << "\n";
        return kBudget;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kOk;
}
