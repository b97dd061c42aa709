#include "ua/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ua {

namespace {

using nlohmann::json;

size_t expected_rows(int size, int arity) {
    size_t s = 1;
    for (int i = 0; i < arity; ++i) s *= static_cast<size_t>(size);
    return s;
}

}  // namespace

Algebra parse_algebra(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("algebra: syntax error: ") + e.what());
    }

    if (!j.is_object() || !j.contains("signature") || !j.contains("size") || !j.contains("tables"))
        throw parse_error("algebra: expected an object with signature, size and tables");

    std::vector<OpSym> ops;
    for (const auto& o : j.at("signature")) {
        if (!o.contains("name") || !o.contains("arity"))
            throw parse_error("algebra: each signature entry needs name and arity");
        OpSym sym{o.at("name").get<std::string>(), o.at("arity").get<int>()};
        if (sym.arity < 0) throw parse_error("algebra: negative arity for '" + sym.name + "'");
        if (sym.arity > 8)
            throw parse_error("algebra: arity " + std::to_string(sym.arity) + " for '" + sym.name +
                              "' exceeds the supported maximum of 8");
        ops.push_back(std::move(sym));
    }
    Signature sig;
    try {
        sig = Signature(std::move(ops));
    } catch (const error& e) {
        throw parse_error(std::string("algebra: ") + e.what());
    }

    int size = j.at("size").get<int>();
    if (size <= 0) throw parse_error("algebra: size must be positive");

    const auto& tbl = j.at("tables");
    std::vector<std::vector<int>> tables(sig.op_count());
    for (int op = 0; op < sig.op_count(); ++op) {
        const auto& sym = sig.op(op);
        if (!tbl.contains(sym.name))
            throw parse_error("algebra: missing table for '" + sym.name + "'");
        const auto& rows = tbl.at(sym.name);
        if (!rows.is_array())
            throw parse_error("algebra: table for '" + sym.name + "' must be an array");
        size_t expect = expected_rows(size, sym.arity);
        if (expect > 100'000'000)
            throw parse_error("algebra: table for '" + sym.name +
                              "' would need " + std::to_string(expect) + " entries");
        if (rows.size() != expect)
            throw parse_error("algebra: arity mismatch: table for '" + sym.name + "' has " +
                              std::to_string(rows.size()) + " entries, expected " +
                              std::to_string(expect));
        tables[op].reserve(expect);
        for (size_t i = 0; i < rows.size(); ++i) {
            int v = rows[i].get<int>();
            if (v < 0 || v >= size)
                throw parse_error("algebra: table entry " + std::to_string(v) + " out of range at '" +
                                  sym.name + "'[" + std::to_string(i) + "]");
            tables[op].push_back(v);
        }
    }

    std::string name = j.value("name", "");
    Algebra a(std::move(sig), size, std::move(tables), name);
    if (j.contains("element_names")) {
        std::vector<std::string> names = j.at("element_names").get<std::vector<std::string>>();
        if (static_cast<int>(names.size()) != size)
            throw parse_error("algebra: element_names has wrong length");
        a.set_element_names(std::move(names));
    }
    return a;
}

Algebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open algebra file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str());
}

std::string print_algebra(const Algebra& a) {
    json j;
    j["signature"] = json::array();
    for (const auto& op : a.signature().ops())
        j["signature"].push_back({{"name", op.name}, {"arity", op.arity}});
    j["size"] = a.size();
    j["tables"] = json::object();
    for (int op = 0; op < a.signature().op_count(); ++op)
        j["tables"][a.signature().op(op).name] = a.table(op);
    if (!a.name().empty()) j["name"] = a.name();
    if (!a.element_names().empty()) j["element_names"] = a.element_names();
    return j.dump(2);
}

}  // namespace ua
