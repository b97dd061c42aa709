#include "ua/preservation.hpp"

#include <algorithm>

namespace ua {

namespace {

struct Setup {
    std::vector<std::string> vars;
    Product prod;
    const Algebra& a;
    const Algebra& b;

    Setup(const FormulaPtr& phi, const Algebra& a_, const Algebra& b_)
        : prod(direct_product(a_, b_)), a(a_), b(b_) {
        if (!(a.signature() == b.signature()))
            throw error("preservation: signature mismatch");
        auto fv = free_vars(phi, a.signature());
        vars.assign(fv.begin(), fv.end());
    }

    std::vector<std::vector<int>> all_tuples(int size) const {
        std::vector<std::vector<int>> out;
        std::vector<int> vals(vars.size(), 0);
        while (true) {
            out.push_back(vals);
            int i = static_cast<int>(vals.size()) - 1;
            while (i >= 0 && ++vals[i] == size) vals[i--] = 0;
            if (i < 0) break;
        }
        return out;
    }

    bool holds(const Algebra& alg, const FormulaPtr& phi, const std::vector<int>& args,
               const EvalOptions& eval) const {
        Env env;
        for (size_t i = 0; i < vars.size(); ++i) env.push(vars[i], args[i]);
        return eval_formula(alg, phi, env, eval);
    }

    std::vector<int> paired(const std::vector<int>& aa, const std::vector<int>& bb) const {
        std::vector<int> out(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) {
            int comps[2] = {aa[i], bb[i]};
            out[i] = prod.encode(comps);
        }
        return out;
    }
};

}  // namespace

PreservationReport check_product_preservation(const FormulaPtr& phi, const Algebra& a,
                                              const Algebra& b,
                                              const PreservationOptions& opt) {
    Setup s(phi, a, b);
    PreservationReport report;
    report.variables = s.vars;

    auto a_tuples = opt.a_tuples ? *opt.a_tuples : s.all_tuples(a.size());
    auto b_tuples = opt.b_tuples ? *opt.b_tuples : s.all_tuples(b.size());

    for (const auto& aa : a_tuples) {
        if (!s.holds(a, phi, aa, opt.eval)) continue;
        for (const auto& bb : b_tuples) {
            ++report.assignments_checked;
            if (!s.holds(b, phi, bb, opt.eval)) continue;
            if (!s.holds(s.prod.algebra, phi, s.paired(aa, bb), opt.eval)) {
                report.counterexamples.push_back(
                    {aa, bb, "both factors satisfy phi but the product does not"});
                if (report.counterexamples.size() >= opt.max_counterexamples) return report;
            }
        }
    }
    return report;
}

PreservationReport check_factor_preservation(const FormulaPtr& phi, const Algebra& a,
                                             const Algebra& b,
                                             const PreservationOptions& opt) {
    Setup s(phi, a, b);
    PreservationReport report;
    report.variables = s.vars;

    auto a_tuples = opt.a_tuples ? *opt.a_tuples : s.all_tuples(a.size());
    auto b_tuples = opt.b_tuples ? *opt.b_tuples : s.all_tuples(b.size());

    for (const auto& aa : a_tuples) {
        for (const auto& bb : b_tuples) {
            ++report.assignments_checked;
            if (!s.holds(s.prod.algebra, phi, s.paired(aa, bb), opt.eval)) continue;
            bool in_a = s.holds(a, phi, aa, opt.eval);
            bool in_b = s.holds(b, phi, bb, opt.eval);
            if (!in_a || !in_b) {
                std::string which = !in_a && !in_b ? "neither factor" : (!in_a ? "factor A" : "factor B");
                report.counterexamples.push_back(
                    {aa, bb, "product satisfies phi but " + which + " does not"});
                if (report.counterexamples.size() >= opt.max_counterexamples) return report;
            }
        }
    }
    return report;
}

}  // namespace ua
