#include "ua/term.hpp"

#include <algorithm>
#include <cctype>

namespace ua {

TermPtr Term::leaf(std::string name) {
    auto t = std::make_shared<Term>();
    t->head_ = std::move(name);
    return t;
}

TermPtr Term::app(std::string op, std::vector<TermPtr> children) {
    auto t = std::make_shared<Term>();
    t->head_ = std::move(op);
    t->children_ = std::make_shared<const std::vector<TermPtr>>(std::move(children));
    return t;
}

const std::vector<TermPtr>& Term::children() const {
    static const std::vector<TermPtr> none;
    return children_ ? *children_ : none;
}

std::string Term::to_string() const {
    if (is_leaf()) return head_;
    std::string s = head_ + "(";
    const auto& ch = children();
    for (size_t i = 0; i < ch.size(); ++i) {
        if (i) s += ",";
        s += ch[i]->to_string();
    }
    return s + ")";
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->head() != b->head() || a->is_leaf() != b->is_leaf()) return false;
    const auto& ca = a->children();
    const auto& cb = b->children();
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!term_equal(ca[i], cb[i])) return false;
    return true;
}

void Env::push(const std::string& name, int value) { vals_.emplace_back(name, value); }

void Env::pop() { vals_.pop_back(); }

const int* Env::find(const std::string& name) const {
    for (auto it = vals_.rbegin(); it != vals_.rend(); ++it)
        if (it->first == name) return &it->second;
    return nullptr;
}

int eval_term(const Algebra& a, const TermPtr& t, const Env& env) {
    const Signature& sig = a.signature();
    if (t->is_leaf()) {
        int op = sig.index_of(t->head());
        if (op >= 0) {
            if (sig.op(op).arity != 0)
                throw error("eval: arity mismatch, '" + t->head() + "' used without arguments");
            return a.constant(op);
        }
        const int* v = env.find(t->head());
        if (!v) throw error("eval: unbound variable '" + t->head() + "'");
        if (*v < 0 || *v >= a.size())
            throw error("eval: value for '" + t->head() + "' out of range");
        return *v;
    }
    int op = sig.index_of(t->head());
    if (op < 0) throw error("eval: unknown symbol '" + t->head() + "'");
    const auto& ch = t->children();
    if (static_cast<int>(ch.size()) != sig.op(op).arity)
        throw error("eval: arity mismatch for '" + t->head() + "'");
    std::vector<int> args(ch.size());
    for (size_t i = 0; i < ch.size(); ++i) args[i] = eval_term(a, ch[i], env);
    return a.apply(op, args);
}

namespace {

void collect_free(const TermPtr& t, const Signature& sig, std::set<std::string>& out) {
    if (t->is_leaf()) {
        int op = sig.index_of(t->head());
        if (op < 0) out.insert(t->head());
        return;
    }
    for (const auto& c : t->children()) collect_free(c, sig, out);
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t, const Signature& sig) {
    std::set<std::string> out;
    collect_free(t, sig, out);
    return out;
}

bool is_closed(const TermPtr& t, const Signature& sig) {
    return free_vars(t, sig).empty();
}

TermPtr substitute(const TermPtr& t, const Signature& sig,
                   const std::map<std::string, TermPtr>& subst) {
    if (t->is_leaf()) {
        if (sig.index_of(t->head()) >= 0) return t;
        auto it = subst.find(t->head());
        return it == subst.end() ? t : it->second;
    }
    std::vector<TermPtr> ch;
    ch.reserve(t->children().size());
    for (const auto& c : t->children()) ch.push_back(substitute(c, sig, subst));
    return Term::app(t->head(), std::move(ch));
}

namespace {

struct TermParser {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("term parse error at position " + std::to_string(pos) + ": " + msg);
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

    TermPtr term() {
        std::string h = name();
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            std::vector<TermPtr> args;
            skip_ws();
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                return Term::app(std::move(h), std::move(args));
            }
            while (true) {
                args.push_back(term());
                skip_ws();
                if (pos >= text.size()) fail("unterminated argument list");
                if (text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            return Term::app(std::move(h), std::move(args));
        }
        return Term::leaf(std::move(h));
    }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
    TermParser p{text};
    TermPtr t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

void ZeroOneSpec::validate(const Signature& sig) const {
    if (zeros.empty() || zeros.size() != ones.size())
        throw error("zero/one spec: tuples must be nonempty and of equal length");
    for (const auto& t : zeros)
        if (!is_closed(t, sig)) throw error("zero/one spec: term '" + t->to_string() + "' is not closed");
    for (const auto& t : ones)
        if (!is_closed(t, sig)) throw error("zero/one spec: term '" + t->to_string() + "' is not closed");
}

std::vector<int> ZeroOneSpec::zero_values(const Algebra& a) const {
    Env env;
    std::vector<int> v;
    for (const auto& t : zeros) v.push_back(eval_term(a, t, env));
    return v;
}

std::vector<int> ZeroOneSpec::one_values(const Algebra& a) const {
    Env env;
    std::vector<int> v;
    for (const auto& t : ones) v.push_back(eval_term(a, t, env));
    return v;
}

ZeroOneSpec ZeroOneSpec::constants01() {
    return ZeroOneSpec{{Term::leaf("0")}, {Term::leaf("1")}};
}

std::vector<std::string> z_var_names(int l) {
    std::vector<std::string> names;
    if (l == 1) {
        names.push_back("z");
    } else {
        for (int i = 1; i <= l; ++i) names.push_back("z" + std::to_string(i));
    }
    return names;
}

std::vector<std::string> slot_var_names(int n, int l) {
    std::vector<std::string> names{"x", "y"};
    for (auto& z : z_var_names(l)) names.push_back(z);
    for (int i = 1; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
    }
    return names;
}

}  // namespace ua
