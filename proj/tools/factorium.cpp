// factorium: a workbench for finite algebras -- congruences, direct
// decompositions, central elements, kernel formulas, identity checking and
// back-and-forth games.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ua/ef_game.hpp"
#include "ua/factorization.hpp"
#include "ua/fol_builders.hpp"
#include "ua/formula.hpp"
#include "ua/gallery.hpp"
#include "ua/io.hpp"
#include "ua/malcev.hpp"
#include "ua/preservation.hpp"

using namespace ua;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Env parse_env(const std::string& text) {
    Env env;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw error("bad --env entry: " + item);
        env.bind(item.substr(0, eq), std::stoi(item.substr(eq + 1)));
    }
    return env;
}

json congruence_json(const Congruence& c) {
    json j;
    j["rep"] = c.rep_array();
    j["blocks"] = c.blocks();
    return j;
}

void emit(bool as_json, const json& j, const std::string& text) {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

std::string blocks_text(const Congruence& c, const Algebra& a) {
    std::string s;
    for (const auto& blk : c.blocks()) {
        s += "{";
        for (size_t i = 0; i < blk.size(); ++i) {
            if (i) s += " ";
            s += a.element_name(blk[i]);
        }
        s += "} ";
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factorium: finite universal-algebra workbench"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json,!--text", as_json, "emit JSON instead of text");

    // ---- gallery build ----
    auto* gallery = app.add_subcommand("gallery", "built-in example algebras");
    auto* gbuild = gallery->add_subcommand("build", "construct a gallery algebra");
    std::string family = "L";
    int gn = 5, gm = 2;
    bool gjoin = false;
    std::string out_path;
    gbuild->add_option("--family", family, "L | D | Lvee | product | subalgebra-L");
    gbuild->add_option("--n", gn, "size parameter");
    gbuild->add_option("--m", gm, "second factor size (product)");
    gbuild->add_flag("--join", gjoin, "expand by the total-order join");
    gbuild->add_option("--out", out_path, "write to a file instead of stdout");

    // ---- congruences ----
    auto* congs = app.add_subcommand("congruences", "list the congruence lattice");
    std::string algebra_path;
    int size_guard = 14;
    congs->add_option("--algebra", algebra_path, "algebra file")->required();
    congs->add_option("--guard", size_guard, "size guard");

    // ---- decompose ----
    auto* dec = app.add_subcommand("decompose", "direct-product decompositions");
    std::string dec_path;
    dec->add_option("--algebra", dec_path, "algebra file")->required();

    // ---- central ----
    auto* central = app.add_subcommand("central", "central elements and witnesses");
    std::string central_path;
    central->add_option("--algebra", central_path, "algebra file")->required();

    // ---- bfc ----
    auto* bfc = app.add_subcommand("bfc", "factor congruences form a distributive sublattice?");
    std::string bfc_path;
    bfc->add_option("--algebra", bfc_path, "algebra file")->required();

    // ---- dfc-check ----
    auto* dfc = app.add_subcommand("dfc-check",
                                   "pair-to-central-element bijection on one algebra");
    std::string dfc_path;
    dfc->add_option("--algebra", dfc_path, "algebra file")->required();

    // ---- sigma-check ----
    auto* sigma = app.add_subcommand("sigma-check", "evaluate the axiom suite for (e, f)");
    std::string sigma_path, sigma_formula;
    std::vector<int> sigma_e, sigma_f;
    sigma->add_option("--algebra", sigma_path, "algebra file")->required();
    sigma->add_option("--formula", sigma_formula, "kernel formula file")->required();
    sigma->add_option("--e", sigma_e, "e tuple (element indices)")->required();
    sigma->add_option("--f", sigma_f, "f tuple (element indices)")->required();

    // ---- ef-game ----
    auto* ef = app.add_subcommand("ef-game", "solve the back-and-forth game");
    std::string ef_a, ef_b;
    int ef_rounds = 1;
    long long ef_budget = 200'000'000;
    ef->add_option("--a", ef_a, "first algebra file")->required();
    ef->add_option("--b", ef_b, "second algebra file")->required();
    ef->add_option("--rounds", ef_rounds, "number of rounds")->required();
    ef->add_option("--budget", ef_budget, "node budget");

    // ---- eval ----
    auto* ev = app.add_subcommand("eval", "evaluate a term or formula");
    std::string ev_algebra, ev_term, ev_formula, ev_env;
    long long ev_budget = 1'000'000'000;
    ev->add_option("--algebra", ev_algebra, "algebra file")->required();
    ev->add_option("--term", ev_term, "term text");
    ev->add_option("--formula", ev_formula, "formula text or @file");
    ev->add_option("--env", ev_env, "assignment, e.g. x=3,y=1");
    ev->add_option("--budget", ev_budget, "evaluation budget");

    // ---- malcev-check ----
    auto* mc = app.add_subcommand("malcev-check", "check the term-family identities");
    std::string mc_algebra, mc_family;
    mc->add_option("--algebra", mc_algebra, "algebra file")->required();
    mc->add_option("--family", mc_family, "family file")->required();

    // ---- u-chain ----
    auto* uc = app.add_subcommand("u-chain", "find or validate connecting chains");
    std::vector<std::string> uc_algebras;
    std::string uc_chain, uc_join;
    int uc_depth = 2;
    bool uc_find = false;
    uc->add_option("--algebra", uc_algebras, "algebra file (repeatable)")->required();
    uc->add_option("--chain", uc_chain, "chain file to validate");
    uc->add_option("--depth", uc_depth, "search depth");
    uc->add_flag("--find", uc_find, "search instead of validating");
    uc->add_option("--phi", uc_join,
                   "emit the kernel formula for this join symbol instead of the chain");

    // ---- counterexample ----
    auto* ce = app.add_subcommand("counterexample", "doubled chain vs product pipeline");
    int ce_n = 5;
    long long ce_budget = 200'000'000;
    ce->add_option("--n", ce_n, "chain length parameter (4..6 by default budget)");
    ce->add_option("--budget", ce_budget, "solver node budget");

    // ---- figures ----
    auto* figs = app.add_subcommand("figures", "subalgebra/congruence/transport checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gbuild->parsed()) {
            GallerySpec spec;
            if (family == "L") spec.family = GallerySpec::Family::L;
            else if (family == "Lvee") spec.family = GallerySpec::Family::Lvee;
            else if (family == "D") spec.family = GallerySpec::Family::D;
            else if (family == "product") spec.family = GallerySpec::Family::Product;
            else if (family == "subalgebra-L") spec.family = GallerySpec::Family::SubalgebraL;
            else throw error("unknown family: " + family);
            spec.n = gn;
            spec.m = gm;
            spec.with_join = gjoin;
            Algebra a = gallery_build(spec);
            std::string text = print_algebra(a);
            if (out_path.empty()) std::cout << text << "\n";
            else std::ofstream(out_path) << text << "\n";
            return kExitOk;
        }

        if (congs->parsed()) {
            Algebra a = load_algebra(algebra_path);
            CongruenceOptions opt;
            opt.size_guard = size_guard;
            auto con = all_congruences(a, opt);
            json j;
            j["count"] = con.size();
            std::string text = "congruences: " + std::to_string(con.size()) + "\n";
            for (const auto& c : con) {
                j["congruences"].push_back(congruence_json(c));
                text += "  " + blocks_text(c, a) + "\n";
            }
            emit(as_json, j, text);
            return kExitOk;
        }

        if (dec->parsed()) {
            Algebra a = load_algebra(dec_path);
            auto reports = decompose(a);
            bool di = is_directly_indecomposable(a);
            json j;
            j["directly_indecomposable"] = di;
            std::string text = std::string("directly indecomposable: ") + (di ? "yes" : "no") +
                               "\n";
            for (const auto& r : reports) {
                json jr;
                jr["theta"] = congruence_json(r.pair.theta);
                jr["theta_star"] = congruence_json(r.pair.theta_star);
                jr["left_size"] = r.left.algebra.size();
                jr["right_size"] = r.right.algebra.size();
                jr["reconstruction"] = [&] {
                    std::vector<int> v;
                    for (auto [x, y] : r.reconstruction.pairs()) v.push_back(y);
                    return v;
                }();
                jr["reconstruction_ok"] = r.reconstruction_ok;
                j["decompositions"].push_back(jr);
                text += "  factors " + std::to_string(r.left.algebra.size()) + " x " +
                        std::to_string(r.right.algebra.size()) +
                        (r.reconstruction_ok ? " (reconstruction ok)" : " (BROKEN)") + "\n";
            }
            emit(as_json, j, text);
            for (const auto& r : reports)
                if (!r.reconstruction_ok) return kExitCheckFailed;
            return kExitOk;
        }

        if (central->parsed()) {
            Algebra a = load_algebra(central_path);
            auto z = ZeroOneSpec::constants01();
            auto rep = central_elements(a, z);
            json j;
            std::string text = "central elements:\n";
            for (const auto& v : rep.distinct) {
                j["central"].push_back(v);
                text += "  (";
                for (size_t i = 0; i < v.size(); ++i)
                    text += (i ? "," : "") + a.element_name(v[i]);
                text += ")\n";
            }
            json pairs = json::array();
            for (const auto& cp : complementary_pairs(a, z)) {
                json jp;
                jp["e"] = cp.e;
                jp["f"] = cp.f;
                jp["theta"] = congruence_json(cp.witness.theta);
                jp["theta_star"] = congruence_json(cp.witness.theta_star);
                pairs.push_back(jp);
            }
            j["complementary_pairs"] = pairs;
            text += "complementary pairs: " + std::to_string(pairs.size()) + "\n";
            emit(as_json, j, text);
            return kExitOk;
        }

        if (bfc->parsed()) {
            Algebra a = load_algebra(bfc_path);
            auto rep = check_bfc(a);
            json j;
            j["holds"] = rep.holds;
            j["factor_congruences"] = rep.factor_congruence_count;
            j["failure"] = rep.failure;
            emit(as_json, j,
                 std::string("boolean factor congruences: ") + (rep.holds ? "holds" : "FAILS") +
                     " (" + std::to_string(rep.factor_congruence_count) +
                     " factor congruences)" + (rep.failure.empty() ? "" : " " + rep.failure) +
                     "\n");
            return rep.holds ? kExitOk : kExitCheckFailed;
        }

        if (dfc->parsed()) {
            Algebra a = load_algebra(dfc_path);
            auto rep = check_determining_property(a, ZeroOneSpec::constants01());
            json j;
            j["passes"] = rep.passes();
            j["pairs"] = rep.pair_count;
            j["central"] = rep.central_count;
            j["failure"] = rep.failure;
            emit(as_json, j,
                 std::string("determining property (this algebra): ") +
                     (rep.passes() ? "passes" : "FAILS") + " (" + std::to_string(rep.pair_count) +
                     " pairs / " + std::to_string(rep.central_count) + " central)" +
                     (rep.failure.empty() ? "" : " " + rep.failure) + "\n");
            return rep.passes() ? kExitOk : kExitCheckFailed;
        }

        if (sigma->parsed()) {
            Algebra a = load_algebra(sigma_path);
            FormulaPtr phi = parse_formula(slurp(sigma_formula));
            auto suite = sigma_suite(a.signature(), phi, ZeroOneSpec::constants01());
            auto evars = e_var_names(static_cast<int>(sigma_e.size()));
            auto fvars = f_var_names(static_cast<int>(sigma_f.size()));
            json j;
            std::string text;
            bool all = true;
            for (const auto& nf : suite) {
                Env env;
                for (size_t i = 0; i < sigma_e.size(); ++i) env.bind(evars[i], sigma_e[i]);
                for (size_t i = 0; i < sigma_f.size(); ++i) env.bind(fvars[i], sigma_f[i]);
                bool ok = eval_formula(a, nf.formula, env);
                all &= ok;
                j[nf.name] = ok;
                text += nf.name + ": " + (ok ? "sat" : "UNSAT") + "\n";
            }
            emit(as_json, j, text);
            return all ? kExitOk : kExitCheckFailed;
        }

        if (ef->parsed()) {
            Algebra a = load_algebra(ef_a);
            Algebra b = load_algebra(ef_b);
            EfOptions opt;
            opt.budget = ef_budget;
            EfSolver solver(a, b, opt);
            Player w = solver.solve(ef_rounds);
            json j;
            j["winner"] = player_name(w);
            j["rounds"] = ef_rounds;
            j["positions"] = solver.positions_visited();
            emit(as_json, j,
                 std::string("winner: ") + player_name(w) + " (" +
                     std::to_string(solver.positions_visited()) + " positions)\n");
            return kExitOk;
        }

        if (ev->parsed()) {
            Algebra a = load_algebra(ev_algebra);
            Env env = ev_env.empty() ? Env{} : parse_env(ev_env);
            if (!ev_term.empty()) {
                int v = eval_term(a, parse_term(ev_term), env);
                json j;
                j["value"] = v;
                j["name"] = a.element_name(v);
                emit(as_json, j, a.element_name(v) + "\n");
                return kExitOk;
            }
            if (!ev_formula.empty()) {
                // Accept a file path or inline formula text.
                std::string text = ev_formula;
                if (std::ifstream probe(text); probe.good()) text = slurp(text);
                else if (text.size() > 1 && text[0] == '@') text = slurp(text.substr(1));
                EvalOptions opt;
                opt.budget = ev_budget;
                bool v = eval_formula(a, parse_formula(text), env, opt);
                json j;
                j["value"] = v;
                emit(as_json, j, std::string(v ? "true" : "false") + "\n");
                return v ? kExitOk : kExitCheckFailed;
            }
            std::cerr << "eval: need --term or --formula\n";
            return kExitUsage;
        }

        if (mc->parsed()) {
            Algebra a = load_algebra(mc_algebra);
            MalcevFamily fam = parse_malcev_family(slurp(mc_family));
            auto rep = check_malcev_identities(a, fam);
            json j;
            j["all_pass"] = rep.all_pass;
            j["note"] = rep.note;
            std::string text;
            for (const auto& c : rep.checks) {
                json jc;
                jc["name"] = c.name;
                jc["pass"] = c.pass;
                if (!c.pass) {
                    for (const auto& [var, val] : c.counterexample)
                        jc["counterexample"][var] = val;
                }
                j["checks"].push_back(jc);
                if (!c.pass) {
                    text += "FAIL " + c.name + " at";
                    for (const auto& [var, val] : c.counterexample)
                        text += " " + var + "=" + std::to_string(val);
                    text += "\n";
                }
            }
            text += rep.all_pass ? "all identities hold\n"
                                 : "some identities fail (see above)\n";
            text += rep.note + "\n";
            emit(as_json, j, text);
            return rep.all_pass ? kExitOk : kExitCheckFailed;
        }

        if (uc->parsed()) {
            std::vector<Algebra> algebras;
            for (const auto& p : uc_algebras) algebras.push_back(load_algebra(p));
            if (uc_find) {
                auto found = find_u_chain(algebras, ZeroOneSpec::constants01(), uc_depth);
                if (!found) {
                    emit(as_json, json{{"found", false}}, "no chain found\n");
                    return kExitCheckFailed;
                }
                if (!uc_join.empty()) {
                    FormulaPtr phi = build_semilattice_phi(*found, uc_join);
                    emit(as_json, json{{"phi", phi->to_string()}}, phi->to_string() + "\n");
                    return kExitOk;
                }
                emit(as_json, json::parse(print_u_chain(*found)), print_u_chain(*found) + "\n");
                return kExitOk;
            }
            if (uc_chain.empty()) {
                std::cerr << "u-chain: need --chain FILE or --find\n";
                return kExitUsage;
            }
            UChain chain = parse_u_chain(slurp(uc_chain));
            auto rep = validate_u_chain(algebras, chain);
            if (rep.valid && !uc_join.empty()) {
                FormulaPtr phi = build_semilattice_phi(chain, uc_join);
                emit(as_json, json{{"phi", phi->to_string()}}, phi->to_string() + "\n");
                return kExitOk;
            }
            json j;
            j["valid"] = rep.valid;
            j["violations"] = rep.violations;
            std::string text = rep.valid ? "chain is valid on all supplied algebras\n"
                                         : "chain INVALID\n";
            for (const auto& v : rep.violations) text += "  " + v + "\n";
            emit(as_json, j, text);
            return rep.valid ? kExitOk : kExitCheckFailed;
        }

        if (ce->parsed()) {
            PipelineOptions opt;
            opt.ef.budget = ce_budget;
            auto rep = counterexample_pipeline(ce_n, opt);
            json j;
            j["n"] = rep.n;
            j["rounds"] = rep.rounds;
            j["game_winner"] = player_name(rep.game_winner);
            j["fixed_strategy_wins"] = rep.fixed_strategy_wins;
            j["d_prime_cardinality"] = rep.d_indecomposable.prime_cardinality;
            if (rep.d_indecomposable.by_factor_pairs)
                j["d_by_factor_pairs"] = *rep.d_indecomposable.by_factor_pairs;
            j["d_indecomposable"] = rep.d_indecomposable.indecomposable;
            j["product_decomposable"] = rep.product_decomposable;
            j["solver_positions"] = rep.solver_positions;
            j["pass"] = rep.pass;
            std::string text =
                "n=" + std::to_string(rep.n) + ", rounds=" + std::to_string(rep.rounds) +
                "\n  game winner: " + player_name(rep.game_winner) +
                "\n  fixed strategy wins: " + (rep.fixed_strategy_wins ? "yes" : "no") +
                "\n  doubled chain indecomposable: " +
                (rep.d_indecomposable.indecomposable ? "yes" : "no") +
                "\n  product decomposable: " + (rep.product_decomposable ? "yes" : "no") +
                "\n  overall: " + (rep.pass ? "PASS" : "FAIL") + "\n";
            emit(as_json, j, text);
            return rep.pass ? kExitOk : kExitCheckFailed;
        }

        if (figs->parsed()) {
            auto rep = figure_checks();
            json j;
            j["subuniverse_closed"] = rep.subuniverse_closed;
            j["swap_is_isomorphism"] = rep.swap_is_isomorphism;
            j["theta_below_ker_pi1"] = rep.theta_below_ker_pi1;
            j["theta_strictly_below"] = rep.theta_strictly_below;
            j["theta_blocks"] = rep.theta_blocks;
            j["transport"] = {rep.transport_small, rep.transport_sub, rep.transport_big};
            j["phi_positive"] = rep.phi_positive;
            j["phi_existential"] = rep.phi_existential;
            j["pass"] = rep.pass;
            std::string text =
                std::string("subuniverse closed: ") + (rep.subuniverse_closed ? "yes" : "no") +
                "\nswap map is an isomorphism: " + (rep.swap_is_isomorphism ? "yes" : "no") +
                "\ngenerated congruence strictly below ker pi1: " +
                (rep.theta_strictly_below ? "yes" : "no") + "\ntransport chain: " +
                (rep.transport_small ? "true" : "false") + ", " +
                (rep.transport_sub ? "true" : "false") + ", " +
                (rep.transport_big ? "true" : "false") + "\noverall: " +
                (rep.pass ? "PASS" : "FAIL") + "\n";
            emit(as_json, j, text);
            return rep.pass ? kExitOk : kExitCheckFailed;
        }

        std::cerr << "no subcommand executed\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
