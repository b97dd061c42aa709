#include "ua/formula.hpp"

#include <algorithm>
#include <cctype>

namespace ua {

FormulaPtr Formula::eq(TermPtr lhs, TermPtr rhs) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Eq;
    f->lhs_ = std::move(lhs);
    f->rhs_ = std::move(rhs);
    return f;
}

FormulaPtr Formula::negation(FormulaPtr g) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Not;
    f->parts_ = {std::move(g)};
    return f;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::And;
    f->parts_ = std::move(fs);
    return f;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Or;
    f->parts_ = std::move(fs);
    return f;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Implies;
    f->parts_ = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Forall;
    f->var_ = std::move(var);
    f->parts_ = {std::move(body)};
    return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind_ = Kind::Exists;
    f->var_ = std::move(var);
    f->parts_ = {std::move(body)};
    return f;
}

std::string Formula::to_string() const {
    switch (kind_) {
        case Kind::Eq:
            return "(= " + lhs_->to_string() + " " + rhs_->to_string() + ")";
        case Kind::Not:
            return "(not " + parts_[0]->to_string() + ")";
        case Kind::And:
        case Kind::Or: {
            std::string s = kind_ == Kind::And ? "(and" : "(or";
            for (const auto& p : parts_) s += " " + p->to_string();
            return s + ")";
        }
        case Kind::Implies:
            return "(-> " + parts_[0]->to_string() + " " + parts_[1]->to_string() + ")";
        case Kind::Forall:
            return "(forall " + var_ + " " + parts_[0]->to_string() + ")";
        case Kind::Exists:
            return "(exists " + var_ + " " + parts_[0]->to_string() + ")";
    }
    return "?";
}

namespace {

void collect_free(const FormulaPtr& f, const Signature& sig,
                  std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (f->kind()) {
        case Formula::Kind::Eq:
            for (const auto& t : {f->lhs(), f->rhs()})
                for (const auto& v : free_vars(t, sig))
                    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            bound.push_back(f->var());
            collect_free(f->body(), sig, bound, out);
            bound.pop_back();
            return;
        default:
            for (const auto& p : f->parts()) collect_free(p, sig, bound, out);
            return;
    }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f, const Signature& sig) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(f, sig, bound, out);
    return out;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    for (int i = 0;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

FormulaPtr substitute_impl(const FormulaPtr& f, const Signature& sig,
                           std::map<std::string, TermPtr> subst) {
    switch (f->kind()) {
        case Formula::Kind::Eq:
            return Formula::eq(substitute(f->lhs(), sig, subst),
                               substitute(f->rhs(), sig, subst));
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            std::string var = f->var();
            subst.erase(var);  // the binder shadows outer substitution
            std::set<std::string> avoid;
            for (const auto& [from, to] : subst) {
                auto fv = free_vars(to, sig);
                avoid.insert(fv.begin(), fv.end());
            }
            FormulaPtr body = f->body();
            if (avoid.count(var)) {
                std::set<std::string> avoid_all = avoid;
                auto bv = free_vars(body, sig);
                avoid_all.insert(bv.begin(), bv.end());
                std::string renamed = fresh_name(var, avoid_all);
                std::map<std::string, TermPtr> rename{{var, Term::leaf(renamed)}};
                body = substitute_impl(body, sig, rename);
                var = renamed;
            }
            body = substitute_impl(body, sig, subst);
            return f->kind() == Formula::Kind::Forall ? Formula::forall(var, body)
                                                      : Formula::exists(var, body);
        }
        default: {
            std::vector<FormulaPtr> parts;
            parts.reserve(f->parts().size());
            for (const auto& p : f->parts()) parts.push_back(substitute_impl(p, sig, subst));
            switch (f->kind()) {
                case Formula::Kind::Not: return Formula::negation(parts[0]);
                case Formula::Kind::And: return Formula::conj(std::move(parts));
                case Formula::Kind::Or: return Formula::disj(std::move(parts));
                case Formula::Kind::Implies: return Formula::implies(parts[0], parts[1]);
                default: throw error("substitute: unreachable");
            }
        }
    }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const Signature& sig,
                      const std::map<std::string, TermPtr>& subst) {
    return substitute_impl(f, sig, subst);
}

namespace {

struct Evaluator {
    const Algebra& a;
    long long remaining;

    bool eval(const FormulaPtr& f, Env& env) {
        if (--remaining < 0)
            throw budget_error("formula evaluation budget exceeded at: " + f->to_string());
        switch (f->kind()) {
            case Formula::Kind::Eq:
                return eval_term(a, f->lhs(), env) == eval_term(a, f->rhs(), env);
            case Formula::Kind::Not:
                return !eval(f->parts()[0], env);
            case Formula::Kind::And:
                for (const auto& p : f->parts())
                    if (!eval(p, env)) return false;
                return true;
            case Formula::Kind::Or:
                for (const auto& p : f->parts())
                    if (eval(p, env)) return true;
                return false;
            case Formula::Kind::Implies:
                return !eval(f->parts()[0], env) || eval(f->parts()[1], env);
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                bool want = f->kind() == Formula::Kind::Exists;
                for (int v = 0; v < a.size(); ++v) {
                    env.push(f->var(), v);
                    bool r = eval(f->body(), env);
                    env.pop();
                    if (r == want) return want;
                }
                return !want;
            }
        }
        throw error("eval_formula: unreachable");
    }
};

}  // namespace

bool eval_formula(const Algebra& a, const FormulaPtr& f, Env& env, const EvalOptions& opt) {
    Evaluator ev{a, opt.budget};
    return ev.eval(f, env);
}

bool eval_sentence(const Algebra& a, const FormulaPtr& f, const EvalOptions& opt) {
    Env env;
    return eval_formula(a, f, env, opt);
}

bool is_positive(const FormulaPtr& f) {
    switch (f->kind()) {
        case Formula::Kind::Eq: return true;
        case Formula::Kind::Not:
        case Formula::Kind::Implies: return false;
        default:
            return std::all_of(f->parts().begin(), f->parts().end(),
                               [](const FormulaPtr& p) { return is_positive(p); });
    }
}

namespace {

bool quantifier_free(const FormulaPtr& f) {
    switch (f->kind()) {
        case Formula::Kind::Eq: return true;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: return false;
        default:
            return std::all_of(f->parts().begin(), f->parts().end(),
                               [](const FormulaPtr& p) { return quantifier_free(p); });
    }
}

}  // namespace

bool is_existential(const FormulaPtr& f) {
    FormulaPtr g = f;
    while (g->kind() == Formula::Kind::Exists) g = g->body();
    return quantifier_free(g);
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

struct FormulaParser {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("formula parse error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    static bool name_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',';
    }

    std::string name() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && name_char(text[pos])) ++pos;
        if (pos == start) fail("expected a name");
        return text.substr(start, pos - start);
    }

    // A term extends until the comma/paren nesting closes; reuse parse_term on
    // the delimited slice.
    TermPtr term() {
        skip_ws();
        size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
            ++pos;
        }
        if (pos == start) fail("expected a term");
        return parse_term(text.substr(start, pos - start));
    }

    FormulaPtr formula() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (text[pos] != '(') {
            std::string head = name();
            if (head == "forall" || head == "exists") {
                std::string v = name();
                FormulaPtr body = formula();
                return head == "forall" ? Formula::forall(v, body) : Formula::exists(v, body);
            }
            if (head == "true") return Formula::top();
            if (head == "false") return Formula::disj({});
            fail("expected a formula, got '" + head + "'");
        }
        ++pos;  // '('
        std::string head = name();
        FormulaPtr result;
        if (head == "=") {
            TermPtr l = term();
            TermPtr r = term();
            result = Formula::eq(l, r);
        } else if (head == "not") {
            result = Formula::negation(formula());
        } else if (head == "and" || head == "or") {
            std::vector<FormulaPtr> parts;
            skip_ws();
            while (pos < text.size() && text[pos] != ')') {
                parts.push_back(formula());
                skip_ws();
            }
            result = head == "and" ? Formula::conj(std::move(parts))
                                   : Formula::disj(std::move(parts));
        } else if (head == "->") {
            FormulaPtr l = formula();
            FormulaPtr r = formula();
            result = Formula::implies(l, r);
        } else if (head == "forall" || head == "exists") {
            std::string v = name();
            FormulaPtr body = formula();
            result = head == "forall" ? Formula::forall(v, body) : Formula::exists(v, body);
        } else {
            fail("unknown connective '" + head + "'");
        }
        if (!eat(')')) fail("expected ')'");
        return result;
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    FormulaParser p{text};
    FormulaPtr f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

}  // namespace ua
