#include "ua/fol_builders.hpp"

#include <algorithm>

namespace ua {

FormulaPtr build_semilattice_phi(const UChain& chain, const std::string& join_op) {
    if (!chain.validated)
        throw error("build_semilattice_phi: chain has not passed validation");

    auto join = [&](TermPtr a, TermPtr b) {
        return Term::app(join_op, {std::move(a), std::move(b)});
    };
    auto u = Term::leaf("u");
    auto znames = z_var_names(chain.l);

    Signature no_sig;  // substitution below only renames variables
    std::vector<FormulaPtr> antecedent;
    for (const auto& ui : chain.terms) {
        std::map<std::string, TermPtr> at_zero;
        for (int q = 0; q < chain.l; ++q) at_zero[znames[q]] = chain.zeroone.zeros[q];
        TermPtr lhs = join(substitute(ui, no_sig, at_zero), u);
        TermPtr rhs = join(ui, u);
        antecedent.push_back(Formula::eq(lhs, rhs));
    }
    FormulaPtr body = Formula::implies(
        Formula::conj(std::move(antecedent)),
        Formula::eq(join(Term::leaf("x"), u), join(Term::leaf("y"), u)));
    return Formula::forall("u", body);
}

namespace {

FormulaPtr implication(std::vector<FormulaPtr> antecedent, FormulaPtr conclusion) {
    if (antecedent.empty()) return conclusion;  // the antecedent vanishes
    return Formula::implies(Formula::conj(std::move(antecedent)), std::move(conclusion));
}

}  // namespace

Phi12 build_phi12(const MalcevFamily& fam, const Signature& sig) {
    fam.validate(sig);
    int N = fam.N, n = fam.n, k = fam.k();

    auto words = words_up_to(N, N);
    std::map<int, std::vector<Word>> by_len;
    for (const auto& w : words) by_len[static_cast<int>(w.size())].push_back(w);

    Phi12 out;
    for (int m = 1; m <= N; ++m) {
        std::vector<FormulaPtr> layer;
        for (const auto& alpha : by_len[m]) {
            std::vector<FormulaPtr> antecedent;
            for (const auto& gamma : words) {
                if (gamma.empty()) continue;
                if (static_cast<int>(alpha.size() + gamma.size()) > N) continue;
                Word ag = alpha;
                ag.insert(ag.end(), gamma.begin(), gamma.end());
                antecedent.push_back(Formula::eq(fam.L.at(ag), fam.R.at(ag)));
            }
            layer.push_back(implication(std::move(antecedent),
                                        Formula::eq(fam.L.at(alpha), fam.R.at(alpha))));
        }
        out.psi.push_back(Formula::conj(std::move(layer)));
    }

    std::vector<FormulaPtr> even_layers, odd_layers;
    for (int m = 1; m <= k; ++m) {
        even_layers.push_back(out.psi[2 * m - 1]);  // Psi_{2m}
        odd_layers.push_back(out.psi[2 * m - 2]);   // Psi_{2m-1}
    }

    FormulaPtr phi1 = Formula::conj(std::move(even_layers));
    FormulaPtr phi2 = Formula::conj(std::move(odd_layers));
    for (int i = n; i >= 1; --i) {
        std::string xi = "x" + std::to_string(i), yi = "y" + std::to_string(i);
        phi1 = Formula::exists(yi, Formula::forall(xi, phi1));
        phi2 = Formula::exists(xi, Formula::forall(yi, phi2));
    }
    out.phi1 = phi1;
    out.phi2 = phi2;
    out.phi = Formula::conj({phi1, phi2});
    return out;
}

namespace {

FormulaPtr build_layers(const std::map<Word, FormulaPtr>& taus, int N, int m, bool even) {
    if (N < 2 || N % 2 != 0) throw error("build_EO: N must be a positive even integer");
    auto words = words_up_to(N, N);
    std::vector<FormulaPtr> layers;
    for (const auto& alpha : words) {
        int len = static_cast<int>(alpha.size());
        if (len < m || len > N) continue;
        if ((len % 2 == 0) != even) continue;
        std::vector<FormulaPtr> antecedent;
        for (const auto& gamma : words) {
            if (gamma.empty()) continue;
            if (static_cast<int>(alpha.size() + gamma.size()) > N) continue;
            Word ag = alpha;
            ag.insert(ag.end(), gamma.begin(), gamma.end());
            auto it = taus.find(ag);
            if (it == taus.end()) throw error("build_EO: missing tau for word " + word_str(ag));
            antecedent.push_back(it->second);
        }
        auto it = taus.find(alpha);
        if (it == taus.end()) throw error("build_EO: missing tau for word " + word_str(alpha));
        layers.push_back(implication(std::move(antecedent), it->second));
    }
    return Formula::conj(std::move(layers));  // empty range gives true
}

}  // namespace

FormulaPtr build_E(const std::map<Word, FormulaPtr>& taus, int N, int m) {
    return build_layers(taus, N, m, true);
}

FormulaPtr build_O(const std::map<Word, FormulaPtr>& taus, int N, int m) {
    return build_layers(taus, N, m, false);
}

FormulaPtr build_EO(const std::map<Word, FormulaPtr>& taus, int N, int n) {
    FormulaPtr e2 = build_E(taus, N, 2);
    FormulaPtr o1 = build_O(taus, N, 1);
    for (int i = n; i >= 1; --i) {
        std::string xi = "x" + std::to_string(i), yi = "y" + std::to_string(i);
        e2 = Formula::exists(yi, Formula::forall(xi, e2));
        o1 = Formula::exists(xi, Formula::forall(yi, o1));
    }
    return Formula::conj({e2, o1});
}

std::vector<std::string> e_var_names(int l) {
    std::vector<std::string> out;
    for (int i = 1; i <= l; ++i) out.push_back("e" + std::to_string(i));
    return out;
}

std::vector<std::string> f_var_names(int l) {
    std::vector<std::string> out;
    for (int i = 1; i <= l; ++i) out.push_back("f" + std::to_string(i));
    return out;
}

std::vector<std::string> w_var_names(int l) {
    std::vector<std::string> out;
    if (l == 1) {
        out.push_back("w");
    } else {
        for (int i = 1; i <= l; ++i) out.push_back("w" + std::to_string(i));
    }
    return out;
}

std::vector<NamedFormula> sigma_suite(const Signature& sig, const FormulaPtr& phi,
                                      const ZeroOneSpec& z) {
    z.validate(sig);
    int l = z.length();
    auto znames = z_var_names(l);
    auto wnames = w_var_names(l);

    auto fv = free_vars(phi, sig);
    std::set<std::string> expected{"x", "y"};
    for (const auto& zn : znames) expected.insert(zn);
    bool has_w = false;
    {
        std::set<std::string> with_w = expected;
        for (const auto& wn : wnames) with_w.insert(wn);
        if (fv == expected) {
            has_w = false;
        } else if (fv == with_w) {
            has_w = true;
        } else {
            std::string got;
            for (const auto& v : fv) got += v + " ";
            throw error("sigma_suite: phi must have free variables x, y and the z tuple "
                        "(optionally a w tuple); got: " + got);
        }
    }

    auto evars = e_var_names(l);
    auto fvars = f_var_names(l);
    auto e_terms = [&]() {
        std::vector<TermPtr> ts;
        for (const auto& v : evars) ts.push_back(Term::leaf(v));
        return ts;
    }();
    auto f_terms = [&]() {
        std::vector<TermPtr> ts;
        for (const auto& v : fvars) ts.push_back(Term::leaf(v));
        return ts;
    }();

    // phi(a, b, center) with the w tuple (when present) set to the
    // complement of `center`.
    auto phi_at = [&](TermPtr a, TermPtr b, const std::vector<TermPtr>& center,
                      const std::vector<TermPtr>& complement) {
        std::map<std::string, TermPtr> sub;
        sub["x"] = std::move(a);
        sub["y"] = std::move(b);
        for (int i = 0; i < l; ++i) sub[znames[i]] = center[i];
        if (has_w)
            for (int i = 0; i < l; ++i) sub[wnames[i]] = complement[i];
        return substitute(phi, sig, sub);
    };

    auto var = [](const std::string& n) { return Term::leaf(n); };

    // `first` and `second` are the e/f tuples in unprimed order; the primed
    // variants call this with the tuples swapped.
    auto make = [&](const std::vector<TermPtr>& ce, const std::vector<TermPtr>& cf,
                    const std::string& suffix) {
        std::vector<NamedFormula> out;
        auto phi_e = [&](TermPtr a, TermPtr b) { return phi_at(a, b, ce, cf); };
        auto phi_f = [&](TermPtr a, TermPtr b) { return phi_at(a, b, cf, ce); };

        {
            std::vector<FormulaPtr> parts;
            for (int i = 0; i < l; ++i) parts.push_back(phi_e(z.zeros[i], ce[i]));
            for (int i = 0; i < l; ++i) parts.push_back(phi_e(z.ones[i], cf[i]));
            out.push_back({"CAN" + suffix, Formula::conj(std::move(parts))});
        }
        if (suffix.empty()) {
            out.push_back({"PROD",
                           Formula::forall(
                               "x", Formula::forall(
                                        "y", Formula::exists(
                                                 "z", Formula::conj({phi_e(var("x"), var("z")),
                                                                     phi_f(var("z"), var("y"))}))))});
            out.push_back({"INT",
                           Formula::forall(
                               "x", Formula::forall(
                                        "y", Formula::implies(
                                                 Formula::conj({phi_e(var("x"), var("y")),
                                                                phi_f(var("x"), var("y"))}),
                                                 Formula::eq(var("x"), var("y")))))});
        }
        out.push_back({"REF" + suffix, Formula::forall("x", phi_e(var("x"), var("x")))});
        out.push_back(
            {"SYM" + suffix,
             Formula::forall(
                 "x", Formula::forall(
                          "y", Formula::forall(
                                   "z", Formula::implies(
                                            Formula::conj({phi_e(var("x"), var("y")),
                                                           phi_e(var("y"), var("z")),
                                                           phi_f(var("z"), var("x"))}),
                                            Formula::eq(var("z"), var("x"))))))});
        out.push_back(
            {"TRANS" + suffix,
             Formula::forall(
                 "x",
                 Formula::forall(
                     "y",
                     Formula::forall(
                         "z", Formula::forall(
                                  "u", Formula::implies(
                                           Formula::conj({phi_e(var("x"), var("y")),
                                                          phi_e(var("y"), var("z")),
                                                          phi_e(var("x"), var("u")),
                                                          phi_f(var("u"), var("z"))}),
                                           Formula::eq(var("u"), var("z")))))))});
        return out;
    };

    std::vector<NamedFormula> suite = make(e_terms, f_terms, "");
    auto primed = make(f_terms, e_terms, "'");
    suite.insert(suite.end(), primed.begin(), primed.end());

    // Preservation of phi(.,.,e) by every basic operation.
    auto pres = [&](const std::vector<TermPtr>& ce, const std::vector<TermPtr>& cf,
                    const std::string& suffix) {
        auto phi_e = [&](TermPtr a, TermPtr b) { return phi_at(a, b, ce, cf); };
        auto phi_f = [&](TermPtr a, TermPtr b) { return phi_at(a, b, cf, ce); };
        for (int op = 0; op < sig.op_count(); ++op) {
            const auto& sym = sig.op(op);
            std::vector<TermPtr> us, vs;
            for (int j = 1; j <= sym.arity; ++j) {
                us.push_back(var("u" + std::to_string(j)));
                vs.push_back(var("v" + std::to_string(j)));
            }
            TermPtr fu = sym.arity == 0 ? Term::leaf(sym.name) : Term::app(sym.name, us);
            TermPtr fv = sym.arity == 0 ? Term::leaf(sym.name) : Term::app(sym.name, vs);

            std::vector<FormulaPtr> antecedent;
            for (int j = 0; j < sym.arity; ++j) antecedent.push_back(phi_e(us[j], vs[j]));
            antecedent.push_back(phi_e(fu, var("z")));
            antecedent.push_back(phi_f(var("z"), fv));
            FormulaPtr body = Formula::implies(Formula::conj(std::move(antecedent)),
                                               Formula::eq(var("z"), fv));
            body = Formula::forall("z", body);
            for (int j = sym.arity; j >= 1; --j) {
                body = Formula::forall("v" + std::to_string(j), body);
                body = Formula::forall("u" + std::to_string(j), body);
            }
            suite.push_back({"PRES_" + sym.name + suffix, body});
        }
    };
    pres(e_terms, f_terms, "");
    pres(f_terms, e_terms, "'");
    return suite;
}

}  // namespace ua
