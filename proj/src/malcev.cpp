#include "ua/malcev.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"

namespace ua {

std::string word_str(const Word& w) {
    if (w.empty()) return "eps";
    std::string s;
    for (int c : w) s += std::to_string(c);
    return s;
}

std::vector<Word> words_up_to(int alphabet, int max_len) {
    std::vector<Word> out{{}};
    std::vector<Word> level{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (int c = 1; c <= alphabet; ++c) {
                Word w2 = w;
                w2.push_back(c);
                next.push_back(w2);
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

void MalcevFamily::validate(const Signature& sig) const {
    if (N < 2 || N % 2 != 0) throw error("family: N must be a positive even integer");
    if (n < 0) throw error("family: n must be non-negative");
    if (l < 1 || zeroone.length() != l) throw error("family: zero/one tuples must have length l");
    zeroone.validate(sig);
    if (static_cast<int>(s.size()) != n || static_cast<int>(t.size()) != n)
        throw error("family: expected n terms in s and t");

    auto slots = slot_var_names(n, l);
    auto check_vars = [&](const TermPtr& term, int allowed, const std::string& what) {
        std::set<std::string> ok(slots.begin(), slots.begin() + allowed);
        for (const auto& v : free_vars(term, sig))
            if (!ok.count(v))
                throw error("family: " + what + " uses variable '" + v +
                            "' outside its allowed prefix");
    };
    for (int i = 1; i <= n; ++i) {
        int allowed = 2 + l + 2 * (i - 1);  // x, y, z..., x_1..y_{i-1}
        check_vars(s[i - 1], allowed, "s" + std::to_string(i));
        check_vars(t[i - 1], allowed, "t" + std::to_string(i));
    }

    int total = 2 + l + 2 * n;
    for (const auto& w : words_up_to(N, N)) {
        auto li = L.find(w);
        auto ri = R.find(w);
        if (li == L.end() || ri == R.end())
            throw error("family: missing L/R term for word " + word_str(w));
        check_vars(li->second, total, "L_" + word_str(w));
        check_vars(ri->second, total, "R_" + word_str(w));
    }
    const TermPtr& le = L.at({});
    const TermPtr& re = R.at({});
    if (!le->is_leaf() || le->head() != "x") throw error("family: L_eps must be the variable x");
    if (!re->is_leaf() || re->head() != "y") throw error("family: R_eps must be the variable y");
}

namespace {

using nlohmann::json;

Word parse_word_key(const std::string& key, int N) {
    Word w;
    for (char c : key) {
        if (c < '1' || c > '9') throw parse_error("family: bad word key '" + key + "'");
        int d = c - '0';
        if (d > N) throw parse_error("family: letter " + std::to_string(d) + " exceeds N");
        w.push_back(d);
    }
    return w;
}

std::vector<TermPtr> parse_term_list(const json& arr) {
    std::vector<TermPtr> out;
    for (const auto& s : arr) out.push_back(parse_term(s.get<std::string>()));
    return out;
}

json term_list_json(const std::vector<TermPtr>& terms) {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back(t->to_string());
    return arr;
}

}  // namespace

MalcevFamily parse_malcev_family(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("family: syntax error: ") + e.what());
    }
    MalcevFamily fam;
    fam.N = j.at("N").get<int>();
    if (fam.N > 9) throw parse_error("family: file format supports N <= 9 (single-digit words)");
    fam.n = j.at("n").get<int>();
    fam.l = j.at("l").get<int>();
    fam.zeroone = ZeroOneSpec{parse_term_list(j.at("zeros")), parse_term_list(j.at("ones"))};
    fam.s = parse_term_list(j.at("s"));
    fam.t = parse_term_list(j.at("t"));
    for (const auto& [key, val] : j.at("L").items())
        fam.L[parse_word_key(key, fam.N)] = parse_term(val.get<std::string>());
    for (const auto& [key, val] : j.at("R").items())
        fam.R[parse_word_key(key, fam.N)] = parse_term(val.get<std::string>());
    return fam;
}

std::string print_malcev_family(const MalcevFamily& fam) {
    json j;
    j["N"] = fam.N;
    j["n"] = fam.n;
    j["l"] = fam.l;
    j["zeros"] = term_list_json(fam.zeroone.zeros);
    j["ones"] = term_list_json(fam.zeroone.ones);
    j["s"] = term_list_json(fam.s);
    j["t"] = term_list_json(fam.t);
    json L = json::object(), R = json::object();
    for (const auto& [w, t] : fam.L) L[w.empty() ? "" : word_str(w)] = t->to_string();
    for (const auto& [w, t] : fam.R) R[w.empty() ? "" : word_str(w)] = t->to_string();
    j["L"] = L;
    j["R"] = R;
    return j.dump(2);
}

const char* transform_name(TransformKind k) {
    switch (k) {
        case TransformKind::Sigma: return "sigma";
        case TransformKind::SigmaStar: return "sigma*";
        case TransformKind::Rho: return "rho";
        case TransformKind::RhoStar: return "rho*";
    }
    return "?";
}

TermTuple slot_tuple(int n, int l) {
    TermTuple tup;
    for (const auto& v : slot_var_names(n, l)) tup.push_back(Term::leaf(v));
    return tup;
}

TermTuple transform(TransformKind kind, const MalcevFamily& fam, const TermTuple& tup) {
    int n = fam.n, l = fam.l;
    if (static_cast<int>(tup.size()) != 2 + l + 2 * n)
        throw error("transform: tuple length mismatch");

    bool star = kind == TransformKind::SigmaStar || kind == TransformKind::RhoStar;
    bool sigma_like = kind == TransformKind::Sigma || kind == TransformKind::SigmaStar;
    auto names = slot_var_names(n, l);

    TermTuple out(tup.size());
    out[0] = tup[0];
    out[1] = kind == TransformKind::Sigma ? tup[0] : tup[1];
    for (int i = 0; i < l; ++i)
        out[2 + i] = star ? fam.zeroone.ones[i] : fam.zeroone.zeros[i];

    // Dummy signature: substitution only needs to know which leaves are
    // variables, and the slot names never collide with symbols here.
    Signature empty_sig;
    for (int j = 1; j <= n; ++j) {
        int xi = 2 + l + 2 * (j - 1);
        int yi = xi + 1;
        std::map<std::string, TermPtr> prefix;
        for (int i = 0; i < xi; ++i) prefix[names[i]] = out[i];
        const TermPtr& level = star ? fam.t[j - 1] : fam.s[j - 1];
        TermPtr filled = substitute(level, empty_sig, prefix);
        if (sigma_like) {
            out[xi] = filled;
            out[yi] = tup[yi];
        } else {
            out[xi] = tup[xi];
            out[yi] = filled;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Identity checking.

namespace {

struct Assignments {
    const Algebra& a;
    std::vector<std::string> vars;

    template <typename F>
    bool for_each(F&& fn) const {  // fn(Env&, vals) -> bool; false stops early
        std::vector<int> vals(vars.size(), 0);
        while (true) {
            Env e;
            for (size_t i = 0; i < vars.size(); ++i) e.push(vars[i], vals[i]);
            if (!fn(e, vals)) return false;
            int i = static_cast<int>(vals.size()) - 1;
            while (i >= 0 && ++vals[i] == a.size()) vals[i--] = 0;
            if (i < 0) return true;
        }
    }
};

long long pow_saturated(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1LL << 62) / std::max(base, 1LL)) return 1LL << 62;
        r *= base;
    }
    return r;
}

}  // namespace

IdentityReport check_malcev_identities(const Algebra& a, const MalcevFamily& fam,
                                       const MalcevCheckOptions& opt) {
    fam.validate(a.signature());
    int n = fam.n, l = fam.l, N = fam.N, k = fam.k();
    auto names = slot_var_names(n, l);
    TermTuple base = slot_tuple(n, l);

    std::map<TransformKind, TermTuple> tf;
    for (auto kind : {TransformKind::Sigma, TransformKind::SigmaStar, TransformKind::Rho,
                      TransformKind::RhoStar})
        tf[kind] = transform(kind, fam, base);

    auto subst_tuple = [&](const TermPtr& term, const TermTuple& tup) {
        std::map<std::string, TermPtr> m;
        for (size_t i = 0; i < names.size(); ++i) m[names[i]] = tup[i];
        return substitute(term, a.signature(), m);
    };

    struct Pending {
        std::string name;
        TermPtr lhs, rhs;
    };
    std::vector<Pending> ids;

    auto word_term = [&](const std::map<Word, TermPtr>& side, const Word& w) {
        return side.at(w);
    };
    auto at = [&](const std::map<Word, TermPtr>& side, const Word& w, TransformKind kind) {
        return subst_tuple(word_term(side, w), tf.at(kind));
    };
    auto extend = [](Word w, int c) {
        w.push_back(c);
        return w;
    };

    for (const auto& alpha : words_up_to(N, N)) {
        int len = static_cast<int>(alpha.size());
        std::string an = word_str(alpha);
        if (len == N) {
            ids.push_back({"len-N rho L_" + an + "=R_" + an,
                           at(fam.L, alpha, TransformKind::Rho),
                           at(fam.R, alpha, TransformKind::Rho)});
            ids.push_back({"len-N rho* L_" + an + "=R_" + an,
                           at(fam.L, alpha, TransformKind::RhoStar),
                           at(fam.R, alpha, TransformKind::RhoStar)});
        } else if (len == 0) {
            ids.push_back({"eps x=L_eps", Term::leaf("x"), fam.L.at({})});
            ids.push_back({"eps R_eps=y", fam.R.at({}), Term::leaf("y")});
            ids.push_back({"eps rho L_eps=L_1", at(fam.L, {}, TransformKind::Rho),
                           at(fam.L, {1}, TransformKind::Rho)});
            for (int j = 1; j <= N - 1; ++j)
                ids.push_back({"eps rho R_" + std::to_string(j) + "=L_" + std::to_string(j + 1),
                               at(fam.R, {j}, TransformKind::Rho),
                               at(fam.L, {j + 1}, TransformKind::Rho)});
            ids.push_back({"eps rho R_" + std::to_string(N) + "=R_eps",
                           at(fam.R, {N}, TransformKind::Rho),
                           at(fam.R, {}, TransformKind::Rho)});
        } else {
            bool even = len % 2 == 0;
            TransformKind plain = even ? TransformKind::Rho : TransformKind::Sigma;
            TransformKind starred = even ? TransformKind::RhoStar : TransformKind::SigmaStar;
            const char* pn = transform_name(plain);
            const char* sn = transform_name(starred);

            ids.push_back({std::string(pn) + " L_" + an + "=L_" + an + "1",
                           at(fam.L, alpha, plain), at(fam.L, extend(alpha, 1), plain)});
            for (int j = 1; j <= k - 1; ++j)
                ids.push_back({std::string(pn) + " R_" + an + std::to_string(j) + "=L_" + an +
                                   std::to_string(j + 1),
                               at(fam.R, extend(alpha, j), plain),
                               at(fam.L, extend(alpha, j + 1), plain)});
            ids.push_back({std::string(pn) + " R_" + an + std::to_string(k) + "=R_" + an,
                           at(fam.R, extend(alpha, k), plain), at(fam.R, alpha, plain)});

            ids.push_back({std::string(sn) + " L_" + an + "=L_" + an + std::to_string(k + 1),
                           at(fam.L, alpha, starred), at(fam.L, extend(alpha, k + 1), starred)});
            for (int j = k + 1; j <= N - 1; ++j)
                ids.push_back({std::string(sn) + " R_" + an + std::to_string(j) + "=L_" + an +
                                   std::to_string(j + 1),
                               at(fam.R, extend(alpha, j), starred),
                               at(fam.L, extend(alpha, j + 1), starred)});
            ids.push_back({std::string(sn) + " R_" + an + std::to_string(N) + "=R_" + an,
                           at(fam.R, extend(alpha, N), starred), at(fam.R, alpha, starred)});
        }
    }

    long long rows = pow_saturated(a.size(), static_cast<int>(names.size()));
    if (rows > opt.budget / std::max<long long>(1, static_cast<long long>(ids.size())))
        throw budget_error("identity check budget exceeded: " + std::to_string(ids.size()) +
                           " identities x " + std::to_string(rows) + " assignments");

    IdentityReport report;
    Assignments assign{a, names};
    for (auto& id : ids) {
        IdentityCheck check{id.name, id.lhs, id.rhs, true, {}};
        assign.for_each([&](Env& env, const std::vector<int>& vals) {
            if (eval_term(a, id.lhs, env) != eval_term(a, id.rhs, env)) {
                check.pass = false;
                for (size_t i = 0; i < names.size(); ++i)
                    check.counterexample.emplace_back(names[i], vals[i]);
                return false;
            }
            return true;
        });
        report.all_pass = report.all_pass && check.pass;
        report.checks.push_back(std::move(check));
    }
    report.note = "identities checked on algebra '" + a.name() +
                  "' only; a pass certifies nothing beyond the listed algebras";
    return report;
}

// ---------------------------------------------------------------------------
// Generated-congruence identities for the four slot transformers.

namespace {

std::vector<int> eval_tuple(const Algebra& a, const TermTuple& tup, const Env& env) {
    std::vector<int> vals;
    vals.reserve(tup.size());
    for (const auto& t : tup) vals.push_back(eval_term(a, t, env));
    return vals;
}

}  // namespace

GenerationIdentityReport check_generation_identities(const Algebra& a, const MalcevFamily& fam,
                            std::span<const int> tuple) {
    fam.validate(a.signature());
    int n = fam.n, l = fam.l;
    if (static_cast<int>(tuple.size()) != 2 + l + 2 * n)
        throw error("check_generation_identities: tuple length mismatch");
    auto names = slot_var_names(n, l);

    Env env;
    for (size_t i = 0; i < names.size(); ++i) env.push(names[i], tuple[i]);

    int c = tuple[0], d = tuple[1];
    std::vector<int> e(tuple.begin() + 2, tuple.begin() + 2 + l);
    std::vector<int> av, bv;
    for (int j = 0; j < n; ++j) {
        av.push_back(tuple[2 + l + 2 * j]);
        bv.push_back(tuple[3 + l + 2 * j]);
    }
    auto z0 = fam.zeroone.zero_values(a);
    auto z1 = fam.zeroone.one_values(a);

    // Level terms evaluated at the original tuple, as displayed.
    std::vector<int> sval(n), tval(n);
    for (int j = 0; j < n; ++j) {
        sval[j] = eval_term(a, fam.s[j], env);
        tval[j] = eval_term(a, fam.t[j], env);
    }

    TermTuple base = slot_tuple(n, l);
    auto transformed_vals = [&](TransformKind kind) {
        return eval_tuple(a, transform(kind, fam, base), env);
    };

    auto cg = [&](const std::vector<std::pair<int, int>>& pairs) {
        return generated_congruence(a, pairs);
    };
    std::vector<std::pair<int, int>> e0_pairs, e1_pairs;
    for (int i = 0; i < l; ++i) {
        e0_pairs.emplace_back(e[i], z0[i]);
        e1_pairs.emplace_back(e[i], z1[i]);
    }

    GenerationIdentityReport report;
    auto run_line = [&](const std::string& name, const std::vector<Congruence>& lhs_parts,
                        TransformKind kind) {
        auto tv = transformed_vals(kind);
        std::vector<std::pair<int, int>> rhs_pairs;
        for (size_t i = 0; i < tv.size(); ++i) rhs_pairs.emplace_back(tuple[i], tv[i]);
        Congruence rhs = cg(rhs_pairs);

        Relation comp = Relation::of(lhs_parts[0]);
        for (size_t i = 1; i < lhs_parts.size(); ++i)
            comp = comp.compose(Relation::of(lhs_parts[i]));
        Congruence joined = lhs_parts[0];
        for (size_t i = 1; i < lhs_parts.size(); ++i) joined = join(joined, lhs_parts[i]);

        GenerationIdentityLine line{name, comp == Relation::of(rhs), joined == rhs};
        report.all_composition_equal &= line.composition_equal;
        report.all_join_equal &= line.join_equal;
        report.lines.push_back(std::move(line));
    };

    auto translate_joins = [&](const std::vector<int>& left, const std::vector<int>& vals) {
        std::vector<std::pair<int, int>> pairs;
        for (int j = 0; j < n; ++j) pairs.emplace_back(left[j], vals[j]);
        return cg(pairs);
    };

    run_line("sigma", {cg({{c, d}}), cg(e0_pairs), translate_joins(av, sval)},
             TransformKind::Sigma);
    run_line("sigma*", {cg(e1_pairs), translate_joins(av, tval)}, TransformKind::SigmaStar);
    run_line("rho", {cg(e0_pairs), translate_joins(bv, sval)}, TransformKind::Rho);
    run_line("rho*", {cg(e1_pairs), translate_joins(bv, tval)}, TransformKind::RhoStar);
    return report;
}

// ---------------------------------------------------------------------------
// Sandwich transport checks.

namespace {

// Structurally distinct terms over `vars`, all depths <= depth; no semantic
// deduplication (the transport test set is meant to be syntactic).
std::vector<TermPtr> structural_terms(const Signature& sig, const std::vector<std::string>& vars,
                                      int depth, size_t cap) {
    std::vector<TermPtr> all;
    for (const auto& v : vars) all.push_back(Term::leaf(v));
    for (int op = 0; op < sig.op_count(); ++op)
        if (sig.op(op).arity == 0) all.push_back(Term::leaf(sig.op(op).name));

    size_t level_start = 0;
    for (int d = 1; d <= depth; ++d) {
        size_t level_end = all.size();
        for (int op = 0; op < sig.op_count() && all.size() < cap; ++op) {
            int arity = sig.op(op).arity;
            if (arity == 0) continue;
            std::vector<size_t> idx(arity, 0);
            while (all.size() < cap) {
                bool has_new = false;
                for (int i = 0; i < arity; ++i) has_new |= idx[i] >= level_start;
                if (has_new || d == 1) {
                    std::vector<TermPtr> args(arity);
                    for (int i = 0; i < arity; ++i) args[i] = all[idx[i]];
                    all.push_back(Term::app(sig.op(op).name, std::move(args)));
                }
                int i = arity - 1;
                while (i >= 0 && ++idx[i] == level_end) idx[i--] = 0;
                if (i < 0) break;
            }
        }
        level_start = level_end;
    }
    return all;
}

}  // namespace

TransportReport check_sandwich_transport(const Algebra& a, const MalcevFamily& fam,
                                  const Congruence& theta, const Congruence& theta_star,
                                  int c, int d, std::span<const int> e,
                                  std::optional<std::vector<int>> a_elems,
                                  std::optional<std::vector<int>> b_elems,
                                  const TransportOptions& opt) {
    fam.validate(a.signature());
    TransportReport report;
    int n = fam.n, l = fam.l;
    if (static_cast<int>(e.size()) != l) throw error("check_sandwich_transport: e tuple length mismatch");

    if (!meet(theta, theta_star).is_delta() || !rel_product(theta, theta_star, 1).is_universal()) {
        report.precondition_failure =
            "theta and theta* are not a complementary pair (meet nontrivial or composition not total)";
        return report;
    }
    auto z0 = fam.zeroone.zero_values(a);
    auto z1 = fam.zeroone.one_values(a);
    for (int i = 0; i < l; ++i)
        if (!theta.related(z0[i], e[i]) || !theta_star.related(e[i], z1[i])) {
            report.precondition_failure = "0 theta e theta* 1 fails at coordinate " +
                                          std::to_string(i + 1);
            return report;
        }
    if (!theta.related(c, d)) {
        report.precondition_failure = "c theta d fails";
        return report;
    }

    // Solve (or verify) the sandwich witnesses level by level; the level
    // terms read the joint prefix of a's and b's.
    auto names = slot_var_names(n, l);
    Env env;
    env.push("x", c);
    env.push("y", d);
    auto znames = z_var_names(l);
    for (int i = 0; i < l; ++i) env.push(znames[i], e[i]);

    std::vector<int> av, bv;
    for (int j = 1; j <= n; ++j) {
        int sv = eval_term(a, fam.s[j - 1], env);
        int tv = eval_term(a, fam.t[j - 1], env);
        auto solve = [&](const std::optional<std::vector<int>>& given,
                         const char* what) -> std::optional<int> {
            if (given) {
                int w = given->at(j - 1);
                if (!theta.related(sv, w) || !theta_star.related(w, tv)) {
                    report.precondition_failure = std::string("supplied ") + what +
                                                  std::to_string(j) + " violates its sandwich";
                    return std::nullopt;
                }
                return w;
            }
            for (int w = 0; w < a.size(); ++w)
                if (theta.related(sv, w) && theta_star.related(w, tv)) return w;
            report.precondition_failure = std::string("sandwich unsolvable for ") + what +
                                          std::to_string(j) + " (signals a bad input pair)";
            return std::nullopt;
        };
        auto aj = solve(a_elems, "a");
        if (!aj) return report;
        auto bj = solve(b_elems, "b");
        if (!bj) return report;
        av.push_back(*aj);
        bv.push_back(*bj);
        env.push("x" + std::to_string(j), *aj);
        env.push("y" + std::to_string(j), *bj);
    }
    report.preconditions_ok = true;
    report.a_elems = av;
    report.b_elems = bv;

    TermTuple base = slot_tuple(n, l);
    std::map<TransformKind, std::vector<int>> tv;
    for (auto kind : {TransformKind::Sigma, TransformKind::SigmaStar, TransformKind::Rho,
                      TransformKind::RhoStar})
        tv[kind] = eval_tuple(a, transform(kind, fam, base), env);

    auto env_of = [&](const std::vector<int>& vals) {
        Env e2;
        for (size_t i = 0; i < names.size(); ++i) e2.push(names[i], vals[i]);
        return e2;
    };
    std::vector<int> orig;
    orig.push_back(c);
    orig.push_back(d);
    for (int i = 0; i < l; ++i) orig.push_back(e[i]);
    for (int j = 0; j < n; ++j) {
        orig.push_back(av[j]);
        orig.push_back(bv[j]);
    }
    Env env_orig = env_of(orig);
    Env env_sigma = env_of(tv[TransformKind::Sigma]);
    Env env_sigma_star = env_of(tv[TransformKind::SigmaStar]);
    Env env_rho = env_of(tv[TransformKind::Rho]);
    Env env_rho_star = env_of(tv[TransformKind::RhoStar]);

    std::vector<TermPtr> tests;
    if (opt.use_family_terms) {
        for (const auto& [w, term] : fam.L) tests.push_back(term);
        for (const auto& [w, term] : fam.R) tests.push_back(term);
    }
    for (auto& term : structural_terms(a.signature(), names, opt.term_depth, opt.max_terms))
        tests.push_back(std::move(term));

    for (const auto& term : tests) {
        int vo = eval_term(a, term, env_orig);
        int vs = eval_term(a, term, env_sigma);
        int vss = eval_term(a, term, env_sigma_star);
        int vr = eval_term(a, term, env_rho);
        int vrs = eval_term(a, term, env_rho_star);
        if (!theta.related(vs, vo))
            report.failures.push_back("sigma-transport theta fails: " + term->to_string());
        if (!theta_star.related(vo, vss))
            report.failures.push_back("sigma*-transport theta* fails: " + term->to_string());
        if (!theta.related(vr, vo))
            report.failures.push_back("rho-transport theta fails: " + term->to_string());
        if (!theta_star.related(vo, vrs))
            report.failures.push_back("rho*-transport theta* fails: " + term->to_string());
        ++report.terms_tested;
        if (report.failures.size() > 50) break;
    }
    return report;
}

// ---------------------------------------------------------------------------
// u-chains.

UChain parse_u_chain(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("u-chain: syntax error: ") + e.what());
    }
    UChain chain;
    chain.l = j.value("l", 1);
    chain.zeroone = ZeroOneSpec{parse_term_list(j.at("zeros")), parse_term_list(j.at("ones"))};
    chain.terms = parse_term_list(j.at("terms"));
    return chain;
}

std::string print_u_chain(const UChain& chain) {
    json j;
    j["l"] = chain.l;
    j["zeros"] = term_list_json(chain.zeroone.zeros);
    j["ones"] = term_list_json(chain.zeroone.ones);
    j["terms"] = term_list_json(chain.terms);
    j["validated"] = chain.validated;
    return j.dump(2);
}

UChainReport validate_u_chain(std::span<const Algebra> algebras, UChain& chain) {
    UChainReport report;
    chain.validated = false;
    if (chain.terms.empty()) {
        report.violations.push_back("chain is empty");
        return report;
    }
    if (chain.terms.size() % 2 == 0) {
        report.violations.push_back("chain length must be odd");
        return report;
    }
    if (chain.zeroone.length() != chain.l) {
        report.violations.push_back("zero/one tuples do not match l");
        return report;
    }

    auto znames = z_var_names(chain.l);
    int k = chain.k();
    for (const auto& alg : algebras) {
        chain.zeroone.validate(alg.signature());
        auto z0 = chain.zeroone.zero_values(alg);
        auto z1 = chain.zeroone.one_values(alg);
        auto value = [&](int i, bool at_one, int x, int y) {
            Env env;
            env.push("x", x);
            env.push("y", y);
            for (int q = 0; q < chain.l; ++q) env.push(znames[q], at_one ? z1[q] : z0[q]);
            return eval_term(alg, chain.terms[i], env);
        };
        auto blame = [&](const std::string& ident, int x, int y) {
            report.violations.push_back(ident + " on '" + alg.name() + "' at x=" +
                                        std::to_string(x) + ", y=" + std::to_string(y));
        };
        for (int x = 0; x < alg.size(); ++x)
            for (int y = 0; y < alg.size(); ++y) {
                if (value(0, false, x, y) != x) blame("u1(x,y,0)=x", x, y);
                for (int i = 1; i < k; ++i) {
                    bool odd = i % 2 == 1;
                    if (value(i - 1, odd, x, y) != value(i, odd, x, y))
                        blame("u" + std::to_string(i) + "/u" + std::to_string(i + 1) +
                                  (odd ? " at 1" : " at 0"),
                              x, y);
                }
                if (value(k - 1, true, x, y) != y) blame("uk(x,y,1)=y", x, y);
                if (report.violations.size() > 50) return report;
            }
    }
    report.valid = report.violations.empty();
    chain.validated = report.valid;
    return report;
}

// ---------------------------------------------------------------------------
// Term enumeration with semantic deduplication, and the chain search.

namespace {

struct EvalTable {
    std::vector<const Algebra*> algebras;
    std::vector<std::string> vars;
    // Per algebra: list of assignments (row-major); the fingerprint of a term
    // is its value on every assignment of every algebra, concatenated.
    std::vector<std::vector<std::vector<int>>> assignments;

    explicit EvalTable(std::span<const Algebra> algs, std::vector<std::string> vars_)
        : vars(std::move(vars_)) {
        for (const auto& a : algs) {
            algebras.push_back(&a);
            std::vector<std::vector<int>> rows;
            std::vector<int> vals(vars.size(), 0);
            while (true) {
                rows.push_back(vals);
                int i = static_cast<int>(vals.size()) - 1;
                while (i >= 0 && ++vals[i] == a.size()) vals[i--] = 0;
                if (i < 0) break;
            }
            assignments.push_back(std::move(rows));
        }
    }

    std::vector<int> fingerprint(const TermPtr& t) const {
        std::vector<int> out;
        for (size_t ai = 0; ai < algebras.size(); ++ai) {
            for (const auto& row : assignments[ai]) {
                Env env;
                for (size_t i = 0; i < vars.size(); ++i) env.push(vars[i], row[i]);
                out.push_back(eval_term(*algebras[ai], t, env));
            }
        }
        return out;
    }

    // Fingerprint of op(children...) computed from the children's
    // fingerprints, avoiding re-walking the term trees.
    std::vector<int> combine(int op, const std::vector<const std::vector<int>*>& child_fp) const {
        std::vector<int> out;
        size_t offset = 0;
        std::vector<int> args(child_fp.size());
        for (size_t ai = 0; ai < algebras.size(); ++ai) {
            size_t rows = assignments[ai].size();
            for (size_t r = 0; r < rows; ++r) {
                for (size_t c = 0; c < child_fp.size(); ++c) args[c] = (*child_fp[c])[offset + r];
                out.push_back(algebras[ai]->apply(op, args));
            }
            offset += rows;
        }
        return out;
    }
};

}  // namespace

std::vector<TermPtr> enumerate_terms(std::span<const Algebra> algebras,
                                     const std::vector<std::string>& vars, int depth,
                                     size_t max_terms) {
    if (algebras.empty()) throw error("enumerate_terms: need at least one algebra");
    const Signature& sig = algebras[0].signature();
    for (const auto& a : algebras)
        if (!(a.signature() == sig)) throw error("enumerate_terms: signature mismatch");

    EvalTable table(algebras, vars);
    std::vector<TermPtr> terms;
    std::vector<std::vector<int>> fps;
    std::map<std::vector<int>, size_t> seen;

    auto add = [&](TermPtr t, std::vector<int> fp) {
        if (seen.emplace(fp, terms.size()).second) {
            terms.push_back(std::move(t));
            fps.push_back(std::move(fp));
        }
    };

    for (const auto& v : vars) {
        TermPtr t = Term::leaf(v);
        add(t, table.fingerprint(t));
    }
    for (int op = 0; op < sig.op_count(); ++op)
        if (sig.op(op).arity == 0) {
            TermPtr t = Term::leaf(sig.op(op).name);
            add(t, table.fingerprint(t));
        }

    size_t level_start = 0;
    for (int d = 1; d <= depth && terms.size() < max_terms; ++d) {
        size_t level_end = terms.size();
        for (int op = 0; op < sig.op_count() && terms.size() < max_terms; ++op) {
            int arity = sig.op(op).arity;
            if (arity == 0) continue;
            std::vector<size_t> idx(arity, 0);
            while (terms.size() < max_terms) {
                bool has_new = d == 1;
                for (int i = 0; i < arity && !has_new; ++i) has_new |= idx[i] >= level_start;
                if (has_new) {
                    std::vector<const std::vector<int>*> child_fp(arity);
                    std::vector<TermPtr> args(arity);
                    for (int i = 0; i < arity; ++i) {
                        child_fp[i] = &fps[idx[i]];
                        args[i] = terms[idx[i]];
                    }
                    add(Term::app(sig.op(op).name, std::move(args)),
                        table.combine(op, child_fp));
                }
                int i = arity - 1;
                while (i >= 0 && ++idx[i] == level_end) idx[i--] = 0;
                if (i < 0) break;
            }
        }
        level_start = level_end;
    }
    return terms;
}

std::optional<UChain> find_u_chain(std::span<const Algebra> algebras, const ZeroOneSpec& z,
                                   int max_depth, const UChainSearchOptions& opt) {
    if (algebras.empty()) throw error("find_u_chain: need at least one algebra");
    int l = z.length();
    std::vector<std::string> vars = {"x", "y"};
    for (const auto& zn : z_var_names(l)) vars.push_back(zn);

    auto terms = enumerate_terms(algebras, vars, max_depth, opt.max_terms);

    // Endpoint vectors at z := zeros and z := ones, over all (x, y).
    auto endpoint = [&](const TermPtr& t, bool at_one) {
        std::vector<int> out;
        auto znames = z_var_names(l);
        for (const auto& alg : algebras) {
            auto zv = at_one ? z.one_values(alg) : z.zero_values(alg);
            for (int x = 0; x < alg.size(); ++x)
                for (int y = 0; y < alg.size(); ++y) {
                    Env env;
                    env.push("x", x);
                    env.push("y", y);
                    for (int q = 0; q < l; ++q) env.push(znames[q], zv[q]);
                    out.push_back(eval_term(alg, t, env));
                }
        }
        return out;
    };

    size_t m = terms.size();
    std::vector<std::vector<int>> vec0(m), vec1(m);
    for (size_t i = 0; i < m; ++i) {
        vec0[i] = endpoint(terms[i], false);
        vec1[i] = endpoint(terms[i], true);
    }
    std::vector<int> xvec = endpoint(Term::leaf("x"), false);
    std::vector<int> yvec = endpoint(Term::leaf("y"), true);

    std::map<std::vector<int>, std::vector<size_t>> by0, by1;
    for (size_t i = 0; i < m; ++i) {
        by0[vec0[i]].push_back(i);
        by1[vec1[i]].push_back(i);
    }

    // BFS over (term, parity); step i odd links u_i to u_{i+1} at ones,
    // even at zeros.  State parity true means the current term sits at an
    // odd position.
    struct State {
        size_t term;
        bool odd;
    };
    auto key = [m](size_t t, bool odd) { return t * 2 + (odd ? 1 : 0); };
    std::vector<int> parent(2 * m, -2);  // -2 unseen, -1 root
    std::deque<State> queue;
    for (size_t i = 0; i < m; ++i)
        if (vec0[i] == xvec) {
            parent[key(i, true)] = -1;
            queue.push_back({i, true});
        }

    std::optional<size_t> accept;
    while (!queue.empty() && !accept) {
        auto [t, odd] = queue.front();
        queue.pop_front();
        if (odd && vec1[t] == yvec) {
            accept = key(t, true);
            break;
        }
        const auto& group = odd ? by1.at(vec1[t]) : by0.at(vec0[t]);
        for (size_t next : group) {
            size_t k2 = key(next, !odd);
            if (parent[k2] != -2) continue;
            parent[k2] = static_cast<int>(key(t, odd));
            queue.push_back({next, !odd});
        }
    }
    if (!accept) return std::nullopt;

    std::vector<TermPtr> chain_terms;
    for (int cur = static_cast<int>(*accept); cur != -1; cur = parent[cur])
        chain_terms.push_back(terms[cur / 2]);
    std::reverse(chain_terms.begin(), chain_terms.end());

    UChain chain{l, z, std::move(chain_terms), false};
    auto report = validate_u_chain(algebras, chain);
    if (!report.valid) return std::nullopt;
    return chain;
}

}  // namespace ua
