// report.hpp: experiment configuration, pass/fail ledger and the JSON / CSV writers.
// Needs nlohmann/json on the include path. Keys come out sorted, so two runs with the same
// config and seed give the same bytes except meta.timestamp.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau::report {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

struct ConfigError : std::runtime_error {
    std::string path;
    ConfigError(const std::string& p, const std::string& msg) : std::runtime_error(p + ": " + msg), path(p) {}
};

struct FockParams {
    bool check_identities = true;
    int n = 2;
    int degree = 8;
    bool operator==(const FockParams&) const = default;
};

struct SurfaceParams {
    int genus = 2;
    std::string B = "5";                 // exact rational, "p" or "p/q"
    std::optional<std::string> S;        // curvature; default +1 / -1 by genus
    std::optional<long> d;               // degree, needed on the torus
    int levels = 6;
    std::optional<int> canonical;        // L = K^r
    bool operator==(const SurfaceParams&) const = default;
};

struct DimParams {
    std::string kind = "surface";        // surface | torus
    int g = 1;
    int d = 1;
    std::vector<int> d_list;             // torus degrees
    int k = 1;
    int m = 0;
    bool operator==(const DimParams&) const = default;
};

struct TorusParams {
    int d = 1;
    std::vector<int> k_list{4, 6, 8, 10, 12};
    std::optional<int> grid;             // fixed N; otherwise N = grid_factor * k
    int grid_factor = 12;
    int levels = 2;
    std::optional<std::string> f, g;     // defect symbols
    bool kernel_compare = false;
    std::optional<int> ladder_m;
    bool peaked = false;
    double guard = 0.05;                 // max k h^2
    double tol = 1e-9;
    bool operator==(const TorusParams&) const = default;
};

struct ExperimentConfig {
    std::string subcommand = "fock";
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    FockParams fock;
    SurfaceParams surface;
    DimParams dim;
    TorusParams torus;
    bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

template <class T> json opt(const std::optional<T>& v) { return v ? json(*v) : json(nullptr); }

// strict reader: every key known, every value of the right type, errors carry the field path
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    }

    template <class T> void get(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        read(j_.at(key), path_ + "." + key, out);
    }

    template <class F> void section(const char* key, F&& fn) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        Reader sub(j_.at(key), path_ + "." + key);
        fn(sub);
        sub.finish();
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(path_ + "." + it.key(), "unknown field");
    }

private:
    static void read(const json& v, const std::string& p, bool& out) {
        if (!v.is_boolean()) throw ConfigError(p, "expected a boolean");
        out = v.get<bool>();
    }
    static void read(const json& v, const std::string& p, int& out) {
        if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
        out = v.get<int>();
    }
    static void read(const json& v, const std::string& p, long& out) {
        if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
        out = v.get<long>();
    }
    static void read(const json& v, const std::string& p, std::uint64_t& out) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw ConfigError(p, "expected a non-negative integer");
        out = v.get<std::uint64_t>();
    }
    static void read(const json& v, const std::string& p, double& out) {
        if (!v.is_number()) throw ConfigError(p, "expected a number");
        out = v.get<double>();
    }
    static void read(const json& v, const std::string& p, std::string& out) {
        if (!v.is_string()) throw ConfigError(p, "expected a string");
        out = v.get<std::string>();
    }
    template <class T> static void read(const json& v, const std::string& p, std::optional<T>& out) {
        if (v.is_null()) {
            out.reset();
            return;
        }
        T t{};
        read(v, p, t);
        out = t;
    }
    template <class T> static void read(const json& v, const std::string& p, std::vector<T>& out) {
        if (!v.is_array()) throw ConfigError(p, "expected an array");
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            T t{};
            read(v[i], p + "[" + std::to_string(i) + "]", t);
            out.push_back(t);
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline bool is_rational(const std::string& s) {
    auto ok = [](const std::string& t, bool sign) {
        std::size_t i = sign && !t.empty() && t[0] == '-' ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return ok(s, true);
    return ok(s.substr(0, slash), true) && ok(s.substr(slash + 1), false) && s.substr(slash + 1).find_first_not_of('0') != std::string::npos;
}

}  // namespace detail

inline json to_json(const ExperimentConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["seed"] = c.seed;
    j["format"] = c.format;
    j["out"] = c.out;
    j["fock"] = {{"check_identities", c.fock.check_identities}, {"n", c.fock.n}, {"degree", c.fock.degree}};
    j["surface"] = {{"genus", c.surface.genus}, {"B", c.surface.B}, {"S", detail::opt(c.surface.S)},
                    {"d", detail::opt(c.surface.d)}, {"levels", c.surface.levels}, {"canonical", detail::opt(c.surface.canonical)}};
    j["dim"] = {{"kind", c.dim.kind}, {"g", c.dim.g}, {"d", c.dim.d}, {"d_list", c.dim.d_list}, {"k", c.dim.k}, {"m", c.dim.m}};
    auto& t = c.torus;
    j["torus"] = {{"d", t.d}, {"k_list", t.k_list}, {"grid", detail::opt(t.grid)}, {"grid_factor", t.grid_factor},
                  {"levels", t.levels}, {"f", detail::opt(t.f)}, {"g", detail::opt(t.g)},
                  {"kernel_compare", t.kernel_compare}, {"ladder_m", detail::opt(t.ladder_m)}, {"peaked", t.peaked},
                  {"guard", t.guard}, {"tol", t.tol}};
    return j;
}

inline void validate(const ExperimentConfig& c) {
    static const std::set<std::string> subs{"fock", "surface", "dim", "torus"};
    if (!subs.count(c.subcommand)) throw ConfigError("config.subcommand", "must be one of fock, surface, dim, torus");
    if (c.format != "json" && c.format != "csv") throw ConfigError("config.format", "must be json or csv");
    auto& f = c.fock;
    if (f.n < 1 || f.n > 2) throw ConfigError("config.fock.n", "must be 1 or 2");
    if (f.degree < 2 || f.degree > 8) throw ConfigError("config.fock.degree", "must be in 2..8");
    auto& s = c.surface;
    if (s.genus < 0) throw ConfigError("config.surface.genus", "must be >= 0");
    if (!detail::is_rational(s.B) || s.B[0] == '-' || s.B.substr(0, s.B.find('/')).find_first_not_of('0') == std::string::npos)
        throw ConfigError("config.surface.B", "must be a positive rational like 5 or 7/2");
    if (s.S && !detail::is_rational(*s.S)) throw ConfigError("config.surface.S", "must be a rational like -1 or 1/2");
    if (s.levels < 0) throw ConfigError("config.surface.levels", "must be >= 0");
    if (s.genus == 1 && !s.d) throw ConfigError("config.surface.d", "the torus needs its degree");
    if (s.d && *s.d < 1) throw ConfigError("config.surface.d", "must be >= 1");
    if (s.canonical && (*s.canonical < 1 || s.genus < 2))
        throw ConfigError("config.surface.canonical", "needs r >= 1 and genus >= 2");
    auto& d = c.dim;
    if (d.kind != "surface" && d.kind != "torus") throw ConfigError("config.dim.kind", "must be surface or torus");
    if (d.k < 1) throw ConfigError("config.dim.k", "must be >= 1");
    if (d.m < 0) throw ConfigError("config.dim.m", "must be >= 0");
    if (d.kind == "surface") {
        if (d.g < 0) throw ConfigError("config.dim.g", "must be >= 0");
        if (d.d < 1) throw ConfigError("config.dim.d", "must be >= 1");
    } else {
        if (d.d_list.empty()) throw ConfigError("config.dim.d_list", "must not be empty");
        for (std::size_t i = 0; i < d.d_list.size(); ++i)
            if (d.d_list[i] < 1) throw ConfigError("config.dim.d_list[" + std::to_string(i) + "]", "must be >= 1");
    }
    auto& t = c.torus;
    if (t.d < 1) throw ConfigError("config.torus.d", "must be >= 1");
    if (t.k_list.empty()) throw ConfigError("config.torus.k_list", "must not be empty");
    for (std::size_t i = 0; i < t.k_list.size(); ++i)
        if (t.k_list[i] < 1) throw ConfigError("config.torus.k_list[" + std::to_string(i) + "]", "must be >= 1");
    if (t.grid && *t.grid < 3) throw ConfigError("config.torus.grid", "must be >= 3");
    if (t.grid_factor < 1) throw ConfigError("config.torus.grid_factor", "must be >= 1");
    if (t.levels < 0 || t.levels > 5) throw ConfigError("config.torus.levels", "must be in 0..5");
    if (t.f.has_value() != t.g.has_value()) throw ConfigError(t.f ? "config.torus.g" : "config.torus.f", "defects need both f and g");
    if (t.ladder_m && (*t.ladder_m < 1 || *t.ladder_m > t.levels))
        throw ConfigError("config.torus.ladder_m", "must be in 1..levels");
    if (!(t.guard > 0)) throw ConfigError("config.torus.guard", "must be > 0");
    if (!(t.tol > 0)) throw ConfigError("config.torus.tol", "must be > 0");
}

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    detail::Reader r(j, "config");
    r.get("subcommand", c.subcommand);
    r.get("seed", c.seed);
    r.get("format", c.format);
    r.get("out", c.out);
    r.section("fock", [&](detail::Reader& s) {
        s.get("check_identities", c.fock.check_identities);
        s.get("n", c.fock.n);
        s.get("degree", c.fock.degree);
    });
    r.section("surface", [&](detail::Reader& s) {
        s.get("genus", c.surface.genus);
        s.get("B", c.surface.B);
        s.get("S", c.surface.S);
        s.get("d", c.surface.d);
        s.get("levels", c.surface.levels);
        s.get("canonical", c.surface.canonical);
    });
    r.section("dim", [&](detail::Reader& s) {
        s.get("kind", c.dim.kind);
        s.get("g", c.dim.g);
        s.get("d", c.dim.d);
        s.get("d_list", c.dim.d_list);
        s.get("k", c.dim.k);
        s.get("m", c.dim.m);
    });
    r.section("torus", [&](detail::Reader& s) {
        auto& t = c.torus;
        s.get("d", t.d);
        s.get("k_list", t.k_list);
        s.get("grid", t.grid);
        s.get("grid_factor", t.grid_factor);
        s.get("levels", t.levels);
        s.get("f", t.f);
        s.get("g", t.g);
        s.get("kernel_compare", t.kernel_compare);
        s.get("ladder_m", t.ladder_m);
        s.get("peaked", t.peaked);
        s.get("guard", t.guard);
        s.get("tol", t.tol);
    });
    r.finish();
    validate(c);
    return c;
}

inline ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

// ---- results

struct LedgerEntry {
    std::string check;
    bool pass = true;
    std::string value;
    std::string detail;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row) {
        if (row.size() != columns.size()) throw std::logic_error("table " + name + ": row width does not match header");
        rows.push_back(std::move(row));
    }
};

struct Report {
    ExperimentConfig config;
    std::vector<LedgerEntry> ledger;
    std::deque<Table> tables;  // table() hands out references, so no reallocation
    json summary = json::object();
    std::string timestamp;

    bool pass() const {
        for (auto& e : ledger)
            if (!e.pass) return false;
        return true;
    }
    Table& table(const std::string& name, std::vector<std::string> columns) {
        tables.push_back({name, std::move(columns), {}});
        return tables.back();
    }
};

inline const std::vector<std::string>& ledger_columns() {
    static const std::vector<std::string> c{"check", "pass", "value", "detail"};
    return c;
}

inline json to_json(const Report& r) {
    json j;
    j["schema_version"] = schema_version;
    j["config"] = to_json(r.config);
    j["ledger"] = json::array();
    for (auto& e : r.ledger) j["ledger"].push_back({{"check", e.check}, {"pass", e.pass}, {"value", e.value}, {"detail", e.detail}});
    j["tables"] = json::object();
    for (auto& t : r.tables) j["tables"][t.name] = {{"columns", t.columns}, {"rows", t.rows}};
    j["summary"] = r.summary;
    j["pass"] = r.pass();
    j["meta"] = {{"tool", "landau-lab"}, {"timestamp", r.timestamp}};
    return j;
}

namespace detail {

inline std::string csv_field(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

inline std::string csv_row(const std::vector<json>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
    return s + "\n";
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace detail

inline std::string ledger_csv(const Report& r) {
    std::vector<json> head(ledger_columns().begin(), ledger_columns().end());
    std::string s = detail::csv_row(head);
    for (auto& e : r.ledger) s += detail::csv_row({e.check, e.pass, e.value, e.detail});
    return s;
}

inline std::string table_csv(const Table& t) {
    std::string s = detail::csv_row(std::vector<json>(t.columns.begin(), t.columns.end()));
    for (auto& row : t.rows) s += detail::csv_row(row);
    return s;
}

// json: <dir>/report.json. csv: <dir>/ledger.csv plus <dir>/<table>.csv per table.
inline std::vector<std::filesystem::path> emit_report(const Report& r, const std::string& format, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    if (format == "json") {
        auto p = dir / "report.json";
        detail::write_file(p, to_json(r).dump(2) + "\n");
        written.push_back(p);
    } else if (format == "csv") {
        auto p = dir / "ledger.csv";
        detail::write_file(p, ledger_csv(r));
        written.push_back(p);
        for (auto& t : r.tables) {
            auto q = dir / (t.name + ".csv");
            detail::write_file(q, table_csv(t));
            written.push_back(q);
        }
    } else {
        throw std::invalid_argument("emit_report: format must be json or csv");
    }
    return written;
}

}  // namespace landau::report
