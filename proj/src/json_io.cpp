#include "heatkern/json_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "heatkern/errors.hpp"

namespace heatkern {

namespace {

const char* algebra_name(Algebra a) { return a == Algebra::scalar ? "scalar" : "matrix"; }

Algebra algebra_from_name(const std::string& s) {
    if (s == "scalar") return Algebra::scalar;
    if (s == "matrix") return Algebra::matrix;
    throw InputError("unknown algebra '" + s + "'");
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    return j.get<double>();
}

Complex complex_entry(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("matrix entries must be [re, im] pairs");
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (!pretty) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                dump_rec(v, indent, depth + 1, out);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += pretty ? ": " : ":";
                dump_rec(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

Json to_json(const DiffPoly& p) {
    Json arr = Json::array();
    for (const auto& [word, c] : p.terms()) arr.push_back({{"coeff", c.get_str()}, {"word", word}});
    return arr;
}

DiffPoly diffpoly_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("a differential polynomial must be a JSON array of terms");
    DiffPoly p;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coeff") || !term.contains("word"))
            throw InputError("each term needs \"coeff\" and \"word\"");
        if (!term["coeff"].is_string()) throw InputError("coefficients are strings \"p/q\"");
        Rational c;
        if (c.set_str(term["coeff"].get<std::string>(), 10) != 0 || c.get_den() == 0)
            throw InputError("bad rational '" + term["coeff"].get<std::string>() + "'");
        c.canonicalize();
        Word w;
        for (const auto& d : term["word"]) {
            if (!d.is_number_integer()) throw InputError("derivative orders must be integers");
            w.push_back(d.get<int>());
        }
        p += DiffPoly::make(c, std::move(w));
    }
    return p;
}

Json to_json(const TaylorTable& table) {
    Json rows = Json::array();
    for (int k = 0; k <= table.max_order(); ++k) {
        Json row = Json::array();
        for (const auto& e : table.row(k)) row.push_back(to_json(e));
        rows.push_back(std::move(row));
    }
    return {{"algebra", algebra_name(table.algebra())}, {"rows", std::move(rows)}};
}

TaylorTable taylor_table_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("rows"))
        throw InputError("table needs \"algebra\" and \"rows\"");
    std::vector<std::vector<DiffPoly>> rows;
    for (const auto& r : j["rows"]) {
        std::vector<DiffPoly> row;
        for (const auto& e : r) row.push_back(diffpoly_from_json(e));
        rows.push_back(std::move(row));
    }
    return TaylorTable::from_rows(algebra_from_name(j["algebra"].get<std::string>()), std::move(rows));
}

TaylorTable load_or_build_table(const std::string& path, Algebra algebra, int k) {
    TaylorTable table(algebra);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw InputError("cache " + path + ": " + e.what());
        }
        TaylorTable cached = taylor_table_from_json(j);
        if (cached.algebra() == algebra) table = std::move(cached);
    }
    const int before = table.max_order();
    table.diagonal(k);
    if (table.max_order() > before) {
        std::ofstream out(path);
        if (!out) throw InputError("cannot write cache " + path);
        out << to_json(table).dump() << '\n';
    }
    return table;
}

Json to_json(const SpectralProblem& problem) {
    const auto& q = problem.potential;
    const int n_dim = q.dim();
    Json modes = Json::array();
    for (int n = 0; n <= q.bandwidth(); ++n) {
        const CMatrix m = q.mode(n);
        if (n > 0 && m.norm() == 0) continue;
        Json entries = Json::array();
        for (int i = 0; i < n_dim; ++i)
            for (int k = 0; k < n_dim; ++k) entries.push_back({m(i, k).real(), m(i, k).imag()});
        modes.push_back({{"n", n}, {"matrix", std::move(entries)}});
    }
    return {{"a", q.radius()}, {"N", n_dim}, {"modes", std::move(modes)}};
}

SpectralProblem problem_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("problem must be a JSON object");
    for (const char* key : {"a", "N", "modes"})
        if (!j.contains(key)) throw InputError(std::string("problem lacks \"") + key + "\"");
    const double a = number(j["a"], "a");
    if (!(a > 0) || !std::isfinite(a)) throw InputError("radius a must be positive");
    if (!j["N"].is_number_integer() || j["N"].get<int>() < 1) throw InputError("N must be a positive integer");
    const int n_dim = j["N"].get<int>();
    if (!j["modes"].is_array()) throw InputError("modes must be an array");

    std::map<int, CMatrix> given;
    int band = 0;
    for (const auto& m : j["modes"]) {
        if (!m.is_object() || !m.contains("n") || !m.contains("matrix"))
            throw InputError("each mode needs \"n\" and \"matrix\"");
        if (!m["n"].is_number_integer()) throw InputError("mode index must be an integer");
        const int n = m["n"].get<int>();
        const auto& entries = m["matrix"];
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n_dim * n_dim))
            throw InputError("mode " + std::to_string(n) + " needs N*N = " + std::to_string(n_dim * n_dim) +
                             " entries");
        CMatrix mat(n_dim, n_dim);
        for (int i = 0; i < n_dim; ++i)
            for (int k = 0; k < n_dim; ++k) mat(i, k) = complex_entry(entries[static_cast<std::size_t>(i * n_dim + k)]);
        if (!mat.allFinite()) throw InputError("mode " + std::to_string(n) + " is not finite");
        if (!given.emplace(n, mat).second) throw InputError("mode " + std::to_string(n) + " given twice");
        band = std::max(band, std::abs(n));
    }

    PeriodicFunction q(a, n_dim, band);
    for (const auto& [n, mat] : given) {
        q.set_mode(n, mat);
        if (n != 0 && !given.count(-n)) q.set_mode(-n, mat.adjoint());
    }
    SpectralProblem problem{std::move(q)};
    problem.validate();
    return problem;
}

SpectralProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file " + path);
    try {
        return problem_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw InputError("problem file " + path + ": " + e.what());
    }
}

Json state_to_json(const FlowState& state) {
    Json modes = Json::array();
    for (int n = 0; n <= state.q.bandwidth(); ++n) {
        const Complex c = state.q.mode(n)(0, 0);
        modes.push_back({c.real(), c.imag()});
    }
    return {{"s", state.s}, {"modes", std::move(modes)}};
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
    for (const auto& st : trajectory.states) out << dump_json(state_to_json(st)) << '\n';
}

}  // namespace heatkern
