#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bockstein.hpp"
#include "pipelines.hpp"
#include "sln.hpp"

namespace modres {

using Json = nlohmann::ordered_json;  // insertion-ordered keys keep reports byte-stable

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
    require(j.is_object(), where + ": expected an object");
    require(j.contains(name), where + ": missing field '" + std::string(name) + "'");
    return j.at(name);
}

inline int int_field(const Json& j, const char* name, const std::string& where) {
    const Json& v = field(j, name, where);
    require(v.is_number_integer(), where + ": field '" + std::string(name) + "' must be an integer");
    return v.get<int>();
}

}  // namespace detail

/* {"order": n, "cayley": [[...]]} or {"perm_gens": [[...], ...]}. */
inline Group group_from_json(const Json& j, const std::string& where) {
    std::string name = j.is_object() && j.contains("name") ? j.at("name").get<std::string>() : "";
    if (j.is_object() && j.contains("cayley")) {
        int n = detail::int_field(j, "order", where);
        const Json& t = detail::field(j, "cayley", where);
        require(t.is_array() && (int)t.size() == n, where + ": 'cayley' must be " + std::to_string(n) +
                                                        " rows");
        std::vector<std::vector<int>> table(n);
        for (int r = 0; r < n; ++r) {
            const Json& row = t.at(r);
            require(row.is_array() && (int)row.size() == n,
                    where + ": 'cayley' row " + std::to_string(r) + " must have " + std::to_string(n) +
                        " entries");
            for (const Json& v : row) {
                require(v.is_number_integer(), where + ": 'cayley' entries must be integers");
                table[r].push_back(v.get<int>());
            }
        }
        return Group::from_cayley(table, name);
    }
    if (j.is_object() && j.contains("perm_gens")) {
        const Json& t = j.at("perm_gens");
        require(t.is_array() && !t.empty(), where + ": 'perm_gens' must be a nonempty array");
        std::vector<std::vector<int>> gens;
        for (const Json& grow : t) {
            require(grow.is_array(), where + ": 'perm_gens' entries must be arrays");
            std::vector<int> perm;
            for (const Json& v : grow) perm.push_back(v.get<int>());
            gens.push_back(std::move(perm));
        }
        return Group::from_permutations(gens);
    }
    throw std::runtime_error(where + ": need either 'cayley' (with 'order') or 'perm_gens'");
}

inline Json group_to_json(const Group& g) {
    Json j;
    if (!g.name().empty()) j["name"] = g.name();
    j["order"] = g.order();
    Json rows = Json::array();
    for (int a = 0; a < g.order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
        rows.push_back(std::move(row));
    }
    j["cayley"] = std::move(rows);
    return j;
}

inline Matrix matrix_from_json(const Json& j, PrimeField f, int rows, int cols,
                               const std::string& where) {
    require(j.is_array() && (int)j.size() == rows,
            where + ": matrix must have " + std::to_string(rows) + " rows");
    Matrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        require(row.is_array() && (int)row.size() == cols,
                where + ": matrix row " + std::to_string(r) + " must have " + std::to_string(cols) +
                    " entries");
        for (int c = 0; c < cols; ++c) {
            const Json& v = row.at(c);
            require(v.is_number_integer(), where + ": matrix entries must be integers");
            long long x = v.get<long long>();
            require(x >= 0 && x < (long long)f.p,
                    where + ": entry at (" + std::to_string(r) + "," + std::to_string(c) +
                        ") out of range for p=" + std::to_string(f.p));
            m.at(r, c) = (uint32_t)x;
        }
    }
    return m;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

/* {"group": <inline group>?, "p": prime, "dim": d, "action": {"<element>":
   [[...]], ...}}. The action is given on any generating set, keyed by element
   index; the remaining elements are filled in by word-BFS over the Cayley
   table and the full expansion is re-validated. */
inline GModule module_from_json(const Json& j, const Group& g, const std::string& where) {
    int p = detail::int_field(j, "p", where);
    require(p >= 2, where + ": 'p' must be a prime >= 2");
    PrimeField f((uint32_t)p);
    int dim = detail::int_field(j, "dim", where);
    require(dim >= 0, where + ": 'dim' must be >= 0");
    const Json& act = detail::field(j, "action", where);
    require(act.is_object(), where + ": 'action' must be an object keyed by element index");

    std::vector<std::optional<Matrix>> rho(g.order());
    rho[g.identity()] = Matrix::identity(f, dim);
    std::vector<int> gens;
    for (const auto& [key, val] : act.items()) {
        int x;
        try {
            size_t pos = 0;
            x = std::stoi(key, &pos);
            require(pos == key.size(), "");
        } catch (...) {
            throw std::runtime_error(where + ": action key '" + key + "' is not an element index");
        }
        require(x >= 0 && x < g.order(), where + ": action key " + std::to_string(x) +
                                             " out of range for a group of order " +
                                             std::to_string(g.order()));
        rho[x] = matrix_from_json(val, f, dim, dim, where + ": action of " + std::to_string(x));
        gens.push_back(x);
    }
    std::vector<int> queue = {g.identity()};
    for (size_t i = 0; i < queue.size(); ++i)
        for (int x : gens) {
            int z = g.mul(queue[i], x);
            if (!rho[z]) rho[z] = *rho[queue[i]] * *rho[x];
            bool seen = false;
            for (int y : queue)
                if (y == z) { seen = true; break; }
            if (!seen) queue.push_back(z);
        }
    require((int)queue.size() == g.order(),
            where + ": the keyed elements generate only " + std::to_string(queue.size()) + " of " +
                std::to_string(g.order()) + " elements");
    std::vector<Matrix> actions;
    actions.reserve(g.order());
    for (int x = 0; x < g.order(); ++x) actions.push_back(std::move(*rho[x]));
    return GModule(g, f, std::move(actions), true);  // ctor re-checks every product
}

inline Json module_to_json(const GModule& m, bool inline_group = true) {
    Json j;
    if (inline_group) j["group"] = group_to_json(m.group());
    j["p"] = m.field().p;
    j["dim"] = m.dim();
    Json act;
    for (int x : m.group().generators()) act[std::to_string(x)] = matrix_to_json(m.action(x));
    j["action"] = std::move(act);
    return j;
}

inline Json complexity_to_json(const ComplexityFunction& f) {
    Json j;
    switch (f.family) {
        case ComplexityFunction::Family::Polynomial:
            j["family"] = "poly";
            j["a"] = f.a;
            break;
        case ComplexityFunction::Family::LogShift: j["family"] = "log"; break;
        case ComplexityFunction::Family::Exponential: j["family"] = "exp"; break;
    }
    return j;
}

/* "poly:A" | "log" | "exp" (the --f flag syntax). */
inline ComplexityFunction parse_complexity(const std::string& s) {
    if (s == "log") return ComplexityFunction::log_shift();
    if (s == "exp") return ComplexityFunction::exponential();
    if (s.rfind("poly:", 0) == 0) {
        int a;
        try {
            size_t pos = 0;
            a = std::stoi(s.substr(5), &pos);
            require(pos == s.size() - 5, "");
        } catch (...) {
            throw std::runtime_error("bad growth profile '" + s + "': want poly:A with integer A");
        }
        return ComplexityFunction::polynomial(a);
    }
    throw std::runtime_error("bad growth profile '" + s + "': want poly:A, log, or exp");
}

inline Json verdict_to_json(const GrowthVerdict& v, const std::optional<ComplexityFunction>& f) {
    Json j;
    j["kind"] = v.kind == GrowthVerdict::Kind::FiniteLength ? "finite-length" : "bounded-by-f";
    j["holds"] = v.holds;
    if (v.kind == GrowthVerdict::Kind::BoundedByF)
        j["C"] = v.witness.str();  // exact witness constant, never a float
    int d = -1;
    try {
        d = fitted_degree(v.prefix);
    } catch (...) {
    }
    if (d >= 0)
        j["d"] = d;
    else
        j["d"] = nullptr;
    j["prefix"] = (int)v.prefix.size();
    j["ranks"] = v.prefix;
    if (f)
        j["f"] = complexity_to_json(*f);
    else
        j["f"] = nullptr;
    return j;
}

inline Json witness_to_json(const SerreWitness& w) {
    Json j;
    j["m"] = w.m;
    Json subs = Json::array();
    for (const BocksteinDatum& bd : w.data) subs.push_back(bd.l.elements());
    j["subgroups"] = std::move(subs);
    j["class_degree"] = 2 * w.m;
    j["cocycle"] = matrix_to_json(w.cls.cocycle);
    j["coboundary"] = matrix_to_json(w.coboundary);
    return j;
}

inline std::string ranks_to_csv(const std::vector<int>& ranks) {
    std::string out = "n,rank\n";
    for (size_t n = 0; n < ranks.size(); ++n)
        out += std::to_string(n) + "," + std::to_string(ranks[n]) + "\n";
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    require(out.good(), "cannot open '" + path + "' for writing");
    out << content;
    require(out.good(), "write to '" + path + "' failed");
}

inline Group load_group_file(const std::string& path) {
    return group_from_json(read_json_file(path), path);
}

/* Module file; the group comes inline ("group" object), by reference
   ("group" as a path string), or from the caller. */
inline GModule load_module_file(const std::string& path, const std::optional<Group>& external) {
    Json j = read_json_file(path);
    require(j.is_object(), path + ": expected an object");
    if (j.contains("group")) {
        const Json& gj = j.at("group");
        if (gj.is_string()) return module_from_json(j, load_group_file(gj.get<std::string>()), path);
        return module_from_json(j, group_from_json(gj, path + ": group"), path);
    }
    require(external.has_value(), path + ": no 'group' field and no --group file given");
    return module_from_json(j, *external, path);
}

}  // namespace modres
