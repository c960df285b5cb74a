// landau-lab: runs one experiment, prints a summary, writes the report files under --out.
// exit 0 when every ledger check passes, 1 when one fails, 2 for bad flags or config.

#include <landau/experiments.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

using landau::report::ConfigError;
using landau::report::ExperimentConfig;

namespace {

// "g=2,d=10" or "f=cosx" style tokens
std::map<std::string, std::string> key_values(const std::vector<std::string>& tokens, const std::string& flag) {
    std::map<std::string, std::string> out;
    for (auto& tok : tokens) {
        std::stringstream ss(tok);
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto eq = part.find('=');
            if (eq == std::string::npos || eq == 0) throw ConfigError(flag, "expected key=value, got '" + part + "'");
            out[part.substr(0, eq)] = part.substr(eq + 1);
        }
    }
    return out;
}

int to_int(const std::string& s, const std::string& flag) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(flag, "not an integer: '" + s + "'");
}

std::vector<int> int_list(const std::vector<std::string>& tokens, const std::string& flag) {
    std::vector<int> out;
    for (auto& tok : tokens) {
        std::stringstream ss(tok);
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(to_int(part, flag));
    }
    return out;
}

void print_summary(const landau::report::Report& r, std::ostream& os) {
    os << "landau-lab " << r.config.subcommand << "  seed " << r.config.seed << "\n";
    if (r.summary.contains("geometry")) os << "geometry " << r.summary["geometry"].dump() << "\n";
    if (r.summary.contains("dim")) os << "dim " << r.summary["dim"].dump() << "\n";
    for (auto& t : r.tables) {
        if (t.name == "eigenvalues") {
            os << "table eigenvalues: " << t.rows.size() << " rows\n";
            continue;
        }
        os << "table " << t.name << "\n  ";
        for (auto& c : t.columns) os << c << "  ";
        os << "\n";
        for (auto& row : t.rows) {
            os << "  ";
            for (auto& v : row) os << (v.is_string() ? v.get<std::string>() : v.dump()) << "  ";
            os << "\n";
        }
    }
    int fails = 0;
    for (auto& e : r.ledger) {
        os << (e.pass ? "PASS " : "FAIL ") << e.check;
        if (!e.value.empty()) os << "  [" << e.value << "]";
        if (!e.detail.empty()) os << "  " << e.detail;
        os << "\n";
        fails += !e.pass;
    }
    os << (fails ? "FAILED " + std::to_string(fails) + " of " : "all passed, ") << r.ledger.size() << " checks\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau level experiments on the Fock space, constant-curvature surfaces and the flat torus"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out, format, config_file;
    std::uint64_t seed = 1;
    auto* o_out = app.add_option("--out", out, "directory for report files");
    auto* o_seed = app.add_option("--seed", seed, "seed for sampled checks and the eigensolver start");
    auto* o_format = app.add_option("--format", format, "json or csv");
    app.add_option("--config", config_file, "JSON config file; flags given on the command line override it");

    ExperimentConfig cli;  // defaults, filled from flags
    auto* fock = app.add_subcommand("fock", "exact symbol and Bargmann algebra");
    auto* f_check = fock->add_flag("--check-identities", "run the identity suite");
    auto* f_n = fock->add_option("--n", cli.fock.n, "complex dimension, 1 or 2");
    auto* f_deg = fock->add_option("--degree", cli.fock.degree, "degree cap, 2..8");

    auto* surf = app.add_subcommand("surface", "closed-form Landau spectra on constant-curvature surfaces");
    std::string s_S;
    long s_d = 0;
    int s_can = 0;
    auto* s_genus = surf->add_option("--genus", cli.surface.genus);
    auto* s_B = surf->add_option("--B", cli.surface.B, "field strength, rational");
    auto* s_So = surf->add_option("--S", s_S, "scalar curvature, rational");
    auto* s_do = surf->add_option("--d", s_d, "line bundle degree");
    auto* s_lev = surf->add_option("--levels", cli.surface.levels);
    auto* s_cano = surf->add_option("--canonical", s_can, "L = K^r");

    auto* dim = app.add_subcommand("dim", "Landau level dimensions");
    std::vector<std::string> d_surface, d_torus;
    auto* d_so = dim->add_option("--surface", d_surface, "g=..,d=..");
    auto* d_to = dim->add_option("--torus", d_torus, "degrees d1,d2,..")->excludes(d_so);
    auto* d_k = dim->add_option("--k", cli.dim.k);
    auto* d_m = dim->add_option("--m", cli.dim.m);

    auto* tor = app.add_subcommand("torus", "magnetic Laplacian on a flat torus");
    std::vector<std::string> t_k, t_def, t_lad;
    int t_grid = 0;
    auto* t_d = tor->add_option("--d", cli.torus.d);
    auto* t_ko = tor->add_option("--k", t_k, "one or more k, comma or space separated");
    auto* t_go = tor->add_option("--grid", t_grid, "fixed grid size N");
    auto* t_gf = tor->add_option("--grid-factor", cli.torus.grid_factor, "N = factor * k when --grid is absent");
    auto* t_lev = tor->add_option("--levels", cli.torus.levels);
    auto* t_defo = tor->add_option("--defects", t_def, "f=.. g=..")->expected(1, 2);
    auto* t_kern = tor->add_flag("--kernel-compare");
    auto* t_lado = tor->add_option("--ladder", t_lad, "m=..");
    auto* t_peak = tor->add_flag("--peaked");
    auto* t_guard = tor->add_option("--guard", cli.torus.guard, "largest allowed k h^2");
    auto* t_tol = tor->add_option("--tol", cli.torus.tol, "eigensolver residual tolerance, relative");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig c;
        if (!config_file.empty()) c = landau::report::config_from_file(config_file);
        auto set = [](CLI::Option* o, auto& dst, const auto& src) {
            if (o->count()) dst = src;
        };
        set(o_out, c.out, out);
        set(o_seed, c.seed, seed);
        set(o_format, c.format, format);

        if (fock->parsed()) {
            c.subcommand = "fock";
            if (f_check->count()) c.fock.check_identities = true;
            else if (config_file.empty()) c.fock.check_identities = false;
            set(f_n, c.fock.n, cli.fock.n);
            set(f_deg, c.fock.degree, cli.fock.degree);
        } else if (surf->parsed()) {
            c.subcommand = "surface";
            auto& s = c.surface;
            set(s_genus, s.genus, cli.surface.genus);
            set(s_B, s.B, cli.surface.B);
            if (s_So->count()) s.S = s_S;
            if (s_do->count()) s.d = s_d;
            set(s_lev, s.levels, cli.surface.levels);
            if (s_cano->count()) s.canonical = s_can;
        } else if (dim->parsed()) {
            c.subcommand = "dim";
            auto& d = c.dim;
            if (d_so->count()) {
                d.kind = "surface";
                auto kv = key_values(d_surface, "--surface");
                for (auto& [key, v] : kv) {
                    if (key == "g") d.g = to_int(v, "--surface g");
                    else if (key == "d") d.d = to_int(v, "--surface d");
                    else throw ConfigError("--surface", "unknown key '" + key + "', expected g and d");
                }
            }
            if (d_to->count()) {
                d.kind = "torus";
                d.d_list = int_list(d_torus, "--torus");
            }
            set(d_k, d.k, cli.dim.k);
            set(d_m, d.m, cli.dim.m);
        } else {
            c.subcommand = "torus";
            auto& t = c.torus;
            set(t_d, t.d, cli.torus.d);
            if (t_ko->count()) t.k_list = int_list(t_k, "--k");
            if (t_go->count()) t.grid = t_grid;
            set(t_gf, t.grid_factor, cli.torus.grid_factor);
            set(t_lev, t.levels, cli.torus.levels);
            if (t_defo->count()) {
                auto kv = key_values(t_def, "--defects");
                for (auto& [key, v] : kv) {
                    if (key == "f") t.f = v;
                    else if (key == "g") t.g = v;
                    else throw ConfigError("--defects", "unknown key '" + key + "', expected f and g");
                }
                if (!t.f || !t.g) throw ConfigError("--defects", "needs both f=.. and g=..");
            }
            if (t_kern->count()) t.kernel_compare = true;
            if (t_lado->count()) {
                auto kv = key_values(t_lad, "--ladder");
                if (kv.size() != 1 || !kv.count("m")) throw ConfigError("--ladder", "expected m=..");
                t.ladder_m = to_int(kv["m"], "--ladder m");
            }
            if (t_peak->count()) t.peaked = true;
            set(t_guard, t.guard, cli.torus.guard);
            set(t_tol, t.tol, cli.torus.tol);
        }
        landau::report::validate(c);

        auto r = landau::lab::run(c, [](const std::string& msg) { std::cerr << msg << "\n"; });
        print_summary(r, std::cout);
        if (!c.out.empty()) {
            for (auto& p : landau::report::emit_report(r, c.format, c.out)) std::cout << "wrote " << p.string() << "\n";
        }
        return r.pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
