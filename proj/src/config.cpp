#include "kortmix/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <string_view>
#include <utility>

namespace kortmix {

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

bool to_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool to_int(std::string_view s, int& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool to_u64(std::string_view s, std::uint64_t& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool to_bool(std::string_view s, bool& out) {
    if (s == "true" || s == "1") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0") {
        out = false;
        return true;
    }
    return false;
}

[[noreturn]] void bad_line(int lineno, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(lineno) + ": " + msg);
}

bool set_material_key(MaterialParams& m, const std::string& key, double v) {
    if (key == "kappa1") m.kappa1 = v;
    else if (key == "kappa2") m.kappa2 = v;
    else if (key == "kappa3") m.kappa3 = v;
    else if (key == "s3") m.s3 = v;
    else if (key == "cv") m.cv = v;
    else if (key == "eps_ref") m.eps_ref = v;
    else if (key == "rho_ref") m.rho_ref = v;
    else if (key == "a0") m.a0 = v;
    else if (key == "a2") m.a2 = v;
    else if (key == "R") m.R = v;
    else if (key == "K") m.K = v;
    else if (key == "tau6") m.tau6 = v;
    else if (key == "tau12") m.tau12 = v;
    else if (key == "q0") m.q0 = v;
    else if (key == "rho_min") m.rho_min = v;
    else if (key == "rho_max") m.rho_max = v;
    else return false;
    return true;
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& val, int lineno) {
    auto need_d = [&](double& dst) {
        if (!to_double(val, dst)) bad_line(lineno, "expected a number for '" + key + "'");
    };
    auto need_i = [&](int& dst) {
        if (!to_int(val, dst)) bad_line(lineno, "expected an integer for '" + key + "'");
    };
    auto need_b = [&](bool& dst) {
        if (!to_bool(val, dst)) bad_line(lineno, "expected true/false for '" + key + "'");
    };
    if (section == "material") {
        double v;
        if (!to_double(val, v)) bad_line(lineno, "expected a number for '" + key + "'");
        if (!set_material_key(cfg.material, key, v))
            bad_line(lineno, "unknown [material] key '" + key + "'");
    } else if (section == "audit") {
        auto& a = cfg.audit;
        if (key == "n_samples") {
            std::uint64_t v;
            if (!to_u64(val, v)) bad_line(lineno, "expected an unsigned integer for 'n_samples'");
            a.n_samples = static_cast<std::size_t>(v);
        } else if (key == "seed") {
            if (!to_u64(val, a.seed)) bad_line(lineno, "expected an unsigned integer for 'seed'");
        } else if (key == "rho_lo") need_d(a.ranges.rho_lo);
        else if (key == "rho_hi") need_d(a.ranges.rho_hi);
        else if (key == "c_lo") need_d(a.ranges.c_lo);
        else if (key == "c_hi") need_d(a.ranges.c_hi);
        else if (key == "eps_lo") need_d(a.ranges.eps_lo);
        else if (key == "eps_hi") need_d(a.ranges.eps_hi);
        else if (key == "slot_lo") need_d(a.ranges.slot_lo);
        else if (key == "slot_hi") need_d(a.ranges.slot_hi);
        else if (key == "rel_tol") need_d(a.tols.rel_tol);
        else if (key == "sigma_tol") need_d(a.tols.sigma_tol);
        else if (key == "adm_grid") need_i(a.adm_grid);
        else if (key == "c_grid") need_i(a.c_grid);
        else if (key == "mult_jets") need_i(a.mult_jets);
        else if (key == "tau_grid") need_i(a.tau_grid);
        else if (key == "parallel") need_b(a.parallel);
        else bad_line(lineno, "unknown [audit] key '" + key + "'");
    } else if (section == "solver") {
        auto& s = cfg.solver;
        if (key == "N") need_i(s.N);
        else if (key == "L") need_d(s.L);
        else if (key == "t_end") need_d(s.t_end);
        else if (key == "scheme_order") need_i(s.scheme_order);
        else if (key == "safety") need_d(s.safety);
        else if (key == "diag_every") need_i(s.diag_every);
        else if (key == "snapshot_every") need_i(s.snapshot_every);
        else if (key == "ic_profile") s.ic_profile = val;
        else if (key == "ic_amplitude") need_d(s.ic_amplitude);
        else if (key == "ic_width") need_d(s.ic_width);
        else if (key == "rho0") need_d(s.rho0);
        else if (key == "c0") need_d(s.c0);
        else if (key == "v0") need_d(s.v0);
        else if (key == "eps0") need_d(s.eps0);
        else if (key == "adv_coeff") need_d(s.adv_coeff);
        else if (key == "diff_coeff") need_d(s.diff_coeff);
        else if (key == "kort_coeff") need_d(s.kort_coeff);
        else if (key == "parallel") need_b(s.parallel);
        else if (key == "max_steps") {
            std::uint64_t v;
            if (!to_u64(val, v)) bad_line(lineno, "expected an unsigned integer for 'max_steps'");
            s.max_steps = static_cast<std::size_t>(v);
        } else bad_line(lineno, "unknown [solver] key '" + key + "'");
    } else if (section == "output") {
        auto& o = cfg.output;
        if (key == "dir") o.dir = val;
        else if (key == "diagnostics_file") o.diagnostics_file = val;
        else if (key == "audit_file") o.audit_file = val;
        else if (key == "check_file") o.check_file = val;
        else if (key == "samples_file") o.samples_file = val;
        else if (key == "snapshot_prefix") o.snapshot_prefix = val;
        else if (key == "dump_samples") need_b(o.dump_samples);
        else bad_line(lineno, "unknown [output] key '" + key + "'");
    } else {
        bad_line(lineno, "key outside of a [section]");
    }
}

void validate(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    const auto& m = cfg.material;
    if (!(m.s3 <= 0)) fail("material.s3 must be <= 0");
    if (!(m.a2 >= 0)) fail("material.a2 must be >= 0");
    if (!(m.cv > 0)) fail("material.cv must be > 0");
    if (!(m.eps_ref > 0)) fail("material.eps_ref must be > 0");
    if (!(m.rho_ref > 0)) fail("material.rho_ref must be > 0");
    if (!(m.K >= 0)) fail("material.K must be >= 0");
    if (!(m.tau6 >= 0)) fail("material.tau6 must be >= 0");
    if (!(m.tau12 >= 0)) fail("material.tau12 must be >= 0");
    if (!(m.rho_min > 0)) fail("material.rho_min must be > 0");
    if (!(m.rho_min < m.rho_max)) fail("material.rho_min must be < rho_max");

    const auto& a = cfg.audit;
    if (!(a.ranges.rho_lo < a.ranges.rho_hi)) fail("audit.rho_lo must be < rho_hi");
    if (!(a.ranges.c_lo < a.ranges.c_hi)) fail("audit.c_lo must be < c_hi");
    if (!(a.ranges.eps_lo < a.ranges.eps_hi)) fail("audit.eps_lo must be < eps_hi");
    if (!(a.ranges.slot_lo < a.ranges.slot_hi)) fail("audit.slot_lo must be < slot_hi");
    if (!(a.ranges.rho_lo >= m.rho_min && a.ranges.rho_hi <= m.rho_max))
        fail("audit rho range must lie inside [material.rho_min, material.rho_max]");
    if (!(a.ranges.eps_lo > 0)) fail("audit.eps_lo must be > 0");
    if (!(a.tols.rel_tol > 0)) fail("audit.rel_tol must be > 0");
    if (!(a.tols.sigma_tol >= 0)) fail("audit.sigma_tol must be >= 0");
    if (!(a.adm_grid >= 2)) fail("audit.adm_grid must be >= 2");
    if (!(a.c_grid >= 2)) fail("audit.c_grid must be >= 2");
    if (!(a.mult_jets >= 0)) fail("audit.mult_jets must be >= 0");
    if (!(a.tau_grid >= 2)) fail("audit.tau_grid must be >= 2");

    const auto& s = cfg.solver;
    if (!(s.N >= 8)) fail("solver.N must be >= 8");
    if (!(s.L > 0)) fail("solver.L must be > 0");
    if (!(s.t_end >= 0)) fail("solver.t_end must be >= 0");
    if (s.scheme_order != 2 && s.scheme_order != 4)
        fail("solver.scheme_order must be 2 or 4");
    if (!(s.safety > 0)) fail("solver.safety must be > 0");
    if (!(s.diag_every >= 1)) fail("solver.diag_every must be >= 1");
    if (!(s.snapshot_every >= 0)) fail("solver.snapshot_every must be >= 0");
    if (s.ic_profile != "constant" && s.ic_profile != "density_bump" &&
        s.ic_profile != "rho_sine" && s.ic_profile != "c_sine")
        fail("solver.ic_profile must be one of constant|density_bump|rho_sine|c_sine");
    if (!(s.ic_width > 0)) fail("solver.ic_width must be > 0");
    if (!(s.rho0 > 0)) fail("solver.rho0 must be > 0");
    if (!(s.eps0 > 0)) fail("solver.eps0 must be > 0");
    if (!(s.c0 >= 0 && s.c0 <= 1)) fail("solver.c0 must be in [0, 1]");
    if (!(s.adv_coeff > 0)) fail("solver.adv_coeff must be > 0");
    if (!(s.diff_coeff > 0)) fail("solver.diff_coeff must be > 0");
    if (!(s.kort_coeff > 0)) fail("solver.kort_coeff must be > 0");
    if (!(s.max_steps >= 1)) fail("solver.max_steps must be >= 1");
}

std::string dstr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line.erase(cpos);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') bad_line(lineno, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section != "material" && section != "audit" &&
                section != "solver" && section != "output")
                bad_line(lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) bad_line(lineno, "expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) bad_line(lineno, "empty key");
        set_key(cfg, section, key, val, lineno);
    }
    validate(cfg);
    cfg.digest = config_digest(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

void apply_mutation(RunConfig& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("mutation must be KEY=VALUE: " + spec);
    const std::string key = trim(spec.substr(0, eq));
    const std::string val = trim(spec.substr(eq + 1));
    double v;
    if (!to_double(val, v))
        throw ConfigError("mutation value must be a number: " + spec);
    if (!set_material_key(cfg.material, key, v)) {
        int idx = -1;
        if (key.size() > 3 && key.compare(0, 3, "tau") == 0)
            if (!to_int(std::string_view(key).substr(3), idx)) idx = -1;
        if (idx < 0 || idx > 12)
            throw ConfigError("unknown mutation key: " + key);
        cfg.material.tau_override[idx] = v;
        cfg.material.tau_override_on[idx] = true;
    }
    cfg.material.tampered = true;
    cfg.mutations.push_back(key + "=" + val);
}

std::string canonical_config(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    auto put = [&kv](const std::string& k, std::string v) {
        kv.emplace_back(k, std::move(v));
    };
    const auto& m = cfg.material;
    put("material.kappa1", dstr(m.kappa1));
    put("material.kappa2", dstr(m.kappa2));
    put("material.kappa3", dstr(m.kappa3));
    put("material.s3", dstr(m.s3));
    put("material.cv", dstr(m.cv));
    put("material.eps_ref", dstr(m.eps_ref));
    put("material.rho_ref", dstr(m.rho_ref));
    put("material.a0", dstr(m.a0));
    put("material.a2", dstr(m.a2));
    put("material.R", dstr(m.R));
    put("material.K", dstr(m.K));
    put("material.tau6", dstr(m.tau6));
    put("material.tau12", dstr(m.tau12));
    put("material.q0", dstr(m.q0));
    put("material.rho_min", dstr(m.rho_min));
    put("material.rho_max", dstr(m.rho_max));
    const auto& a = cfg.audit;
    put("audit.n_samples", std::to_string(a.n_samples));
    put("audit.seed", std::to_string(a.seed));
    put("audit.rho_lo", dstr(a.ranges.rho_lo));
    put("audit.rho_hi", dstr(a.ranges.rho_hi));
    put("audit.c_lo", dstr(a.ranges.c_lo));
    put("audit.c_hi", dstr(a.ranges.c_hi));
    put("audit.eps_lo", dstr(a.ranges.eps_lo));
    put("audit.eps_hi", dstr(a.ranges.eps_hi));
    put("audit.slot_lo", dstr(a.ranges.slot_lo));
    put("audit.slot_hi", dstr(a.ranges.slot_hi));
    put("audit.rel_tol", dstr(a.tols.rel_tol));
    put("audit.sigma_tol", dstr(a.tols.sigma_tol));
    put("audit.adm_grid", std::to_string(a.adm_grid));
    put("audit.c_grid", std::to_string(a.c_grid));
    put("audit.mult_jets", std::to_string(a.mult_jets));
    put("audit.tau_grid", std::to_string(a.tau_grid));
    put("audit.parallel", a.parallel ? "true" : "false");
    const auto& s = cfg.solver;
    put("solver.N", std::to_string(s.N));
    put("solver.L", dstr(s.L));
    put("solver.t_end", dstr(s.t_end));
    put("solver.scheme_order", std::to_string(s.scheme_order));
    put("solver.safety", dstr(s.safety));
    put("solver.diag_every", std::to_string(s.diag_every));
    put("solver.snapshot_every", std::to_string(s.snapshot_every));
    put("solver.ic_profile", s.ic_profile);
    put("solver.ic_amplitude", dstr(s.ic_amplitude));
    put("solver.ic_width", dstr(s.ic_width));
    put("solver.rho0", dstr(s.rho0));
    put("solver.c0", dstr(s.c0));
    put("solver.v0", dstr(s.v0));
    put("solver.eps0", dstr(s.eps0));
    put("solver.adv_coeff", dstr(s.adv_coeff));
    put("solver.diff_coeff", dstr(s.diff_coeff));
    put("solver.kort_coeff", dstr(s.kort_coeff));
    put("solver.parallel", s.parallel ? "true" : "false");
    put("solver.max_steps", std::to_string(s.max_steps));
    // mutations are part of the effective physics; output paths are not
    for (std::size_t i = 0; i < cfg.mutations.size(); ++i)
        put("mutate." + std::to_string(i), cfg.mutations[i]);
    std::sort(kv.begin(), kv.end());
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::string config_digest(const RunConfig& cfg) {
    const std::string c = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : c) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void finalize_config(RunConfig& cfg) {
    // tampered configs deliberately bypass the structural constraints so the
    // runtime checks can catch them
    if (!cfg.material.tampered) validate(cfg);
    cfg.digest = config_digest(cfg);
}

}  // namespace kortmix
