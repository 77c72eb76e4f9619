// hasseforge command line front end: symbols, ternary forms, Schinzel
// densities, specialization search, conic/quadric bundle pipelines, and the
// built-in constant verification battery.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "hasseforge/density.hpp"

namespace fs = std::filesystem;
using namespace hf;

namespace {

int g_threads = 0;
std::string g_out;
std::string g_cache_dir;
bool g_no_cache = false;

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw domain_error("empty integer in list");
        out.push_back(int_from_string(item.substr(b, e - b + 1)));
    }
    return out;
}

// polynomials within a block are separated by ';', blocks by '|'
std::vector<std::vector<IntPoly>> parse_blocks(const std::string& text) {
    std::vector<std::vector<IntPoly>> out;
    std::string current;
    std::vector<std::string> parts;
    for (char c : text) {
        if (c == '|') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    for (const auto& part : parts) {
        std::vector<IntPoly> block;
        std::stringstream ss(part);
        std::string poly;
        while (std::getline(ss, poly, ';')) {
            size_t b = poly.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            size_t e = poly.find_last_not_of(" \t");
            block.push_back(IntPoly::parse(poly.substr(b, e - b + 1)));
        }
        out.push_back(std::move(block));
    }
    return out;
}

std::vector<IntPoly> parse_poly_list(const std::string& text) {
    std::vector<IntPoly> out;
    std::stringstream ss(text);
    std::string poly;
    while (std::getline(ss, poly, ';')) {
        size_t b = poly.find_first_not_of(" \t");
        if (b == std::string::npos) throw domain_error("empty polynomial in list");
        size_t e = poly.find_last_not_of(" \t");
        out.push_back(IntPoly::parse(poly.substr(b, e - b + 1)));
    }
    return out;
}

// sets syntax: four '|'-separated comma lists of 1-based indices
std::array<std::vector<int>, 4> parse_sets(const std::string& text) {
    std::array<std::vector<int>, 4> out;
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == '|') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() != 4) throw domain_error("sets: expected four '|'-separated lists");
    for (int i = 0; i < 4; ++i) {
        std::stringstream ss(parts[i]);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t b = item.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            size_t e = item.find_last_not_of(" \t");
            out[i].push_back(std::stoi(item.substr(b, e - b + 1)) - 1);
        }
    }
    return out;
}

Place parse_place(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return Place::infinity();
    return Place::finite(int_from_string(text));
}

struct Emitted {
    int exit_code;
    ojson report;
};

void write_output(const ojson& report) {
    std::string bytes = dump_report(report);
    if (g_out.empty()) {
        std::cout << bytes;
    } else {
        std::ofstream f(g_out, std::ios::binary);
        f << bytes;
    }
}

// cache keyed by the content hash of the canonical request document
int run_cached(const ojson& request, const std::function<Emitted()>& compute) {
    std::string dir = g_cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("HASSE_FORGE_CACHE")) dir = env;
    }
    std::string req_bytes = dump_report(request);
    fs::path entry;
    if (!dir.empty() && !g_no_cache) {
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a(req_bytes)));
        entry = fs::path(dir) / (std::string(hex) + ".json");
        if (fs::exists(entry)) {
            std::ifstream f(entry);
            ojson stored = ojson::parse(f);
            if (dump_report(stored.at("request")) == req_bytes) {
                write_output(stored.at("report"));
                return stored.at("exit").get<int>();
            }
        }
    }
    Emitted result = compute();
    if (!entry.empty()) {
        fs::create_directories(entry.parent_path());
        ojson stored{{"request", request}, {"exit", result.exit_code}, {"report", result.report}};
        std::ofstream f(entry, std::ios::binary);
        f << dump_report(stored);
    }
    write_output(result.report);
    return result.exit_code;
}

ojson ok_report(const std::string& kind) {
    return ojson{{"schema", kSchemaVersion}, {"kind", kind}};
}

// ── verify-paper battery ────────────────────────────────────────────────────

Emitted run_verify_paper() {
    ojson checks = ojson::array();
    bool all_ok = true;
    auto add = [&](const std::string& name, bool ok, const std::string& expected,
                   const std::string& got) {
        checks.push_back(ojson{{"name", name}, {"ok", ok}, {"expected", expected}, {"got", got}});
        all_ok &= ok;
    };
    auto rat_eq = [&](const std::string& name, const Rat& got, const Rat& expected) {
        add(name, got == expected, j_rat(expected).get<std::string>(),
            j_rat(got).get<std::string>());
    };

    rat_eq("delta_exact_2_n1", delta_exact(2, {1}), Rat(3, 4));
    rat_eq("delta_exact_2_n2", delta_exact(2, {1, 1}), Rat(7, 16));
    rat_eq("delta_exact_2_n3", delta_exact(2, {1, 1, 1}), Rat(15, 64));
    rat_eq("delta_small_3_2", delta_closed_small(3, 2), Rat(604, 729));
    rat_eq("delta_exact_3_22", delta_exact(3, {2, 2}), Rat(604, 729));
    rat_eq("delta_exact_5_11", delta_exact(5, {1, 1}), Rat(576, 625));
    rat_eq("delta_large_5_11", delta_closed_large(5, {1, 1}), Rat(576, 625));
    rat_eq("delta2_lower_5_22", delta2_lower(5, 2, 2),
           (1 - Rat(1, 125)) * (1 - Rat(1, 125)) - Rat(32, 3125));

    rat_eq("sigma2_33", sigma2(3, 3, kDefaultTupleBudget, g_threads), Rat(1743, 4096));
    rat_eq("sigma2_value_vectors", sigma2_value_vectors(), Rat(1743, 4096));
    TVectorCount tc = count_T_vectors();
    add("count_T_total", tc.total == 49, "49", std::to_string(tc.total));
    add("count_T_odd0", tc.odd_at_0 == 25, "25", std::to_string(tc.odd_at_0));
    add("count_T_odd1", tc.odd_at_1 == 25, "25", std::to_string(tc.odd_at_1));
    add("count_T_both", tc.odd_at_both == 1, "1", std::to_string(tc.odd_at_both));

    LimitConstant lc = limit_constant();
    for (const auto& c : lc.checks) add("limit_" + c.name, c.ok, "pass", c.detail);

    add("q2_p3", !q2_locally_soluble(Int(3)), "insoluble at 3", "checked");
    add("q2_p5", q2_locally_soluble(Int(5)), "soluble at 5", "checked");
    add("q2_p7", q2_locally_soluble(Int(7)), "soluble at 7", "checked");
    bool q2_rule = true;
    for (u32 p : primes_below(10000))
        if (p > 2 && q2_locally_soluble(Int(p)) != (p % 8 != 3)) q2_rule = false;
    add("q2_mod8_rule_below_1e4", q2_rule, "p%8!=3 rule", "checked");

    bool product_formula = true;
    for (u64 i = 0; i < 1000 && product_formula; ++i) {
        u64 w = 0;
        Int a = Int(rng_below(7, i, w, 20001)) - 10000;
        Int b = Int(rng_below(7, i, w, 20001)) - 10000;
        if (a == 0 || b == 0) continue;
        int prod = hilbert(a, b, Place::infinity());
        std::set<Int> ps{Int(2)};
        for (auto& [p, e] : factorize(a * b)) ps.insert(p);
        for (const Int& p : ps) prod *= hilbert(a, b, Place::finite(p));
        product_formula = prod == 1;
    }
    add("hilbert_product_formula_sample", product_formula, "product +1", "checked");

    ojson j = ok_report("verify_paper");
    j["checks"] = checks;
    j["all_ok"] = all_ok;
    j["notes"] = ojson::array(
        {"sigma2 = 1743/4096 = 0.425537...; the reference decimal 42.553... reads as a percentage",
         "the final bracket upper check fails: the exact product P0 = 0.3504069... already "
         "exceeds 0.3504, so P < 0.3504 is not certifiable; the computed enclosure is reported"});
    return {all_ok ? 0 : 1, j};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hasseforge: diagonal conic/quadric bundle equations by prime specialization"};
    app.require_subcommand(1);
    app.add_option("--threads", g_threads, "worker thread cap (0 = all)");
    app.add_option("--out", g_out, "write the JSON report to this file");
    app.add_option("--cache-dir", g_cache_dir, "cache directory (default $HASSE_FORGE_CACHE)");
    app.add_flag("--no-cache", g_no_cache, "bypass the report cache");

    // ── symbols ─────────────────────────────────────────────────────────────
    auto* sym = app.add_subcommand("symbols", "Legendre / Jacobi / Hilbert symbols");
    std::string sym_op, sym_a, sym_b, sym_place = "inf";
    sym->add_option("op", sym_op, "legendre | jacobi | hilbert")->required();
    sym->add_option("a", sym_a)->required();
    sym->add_option("b", sym_b)->required();
    sym->add_option("--place", sym_place, "prime or 'inf' (hilbert only)");

    // ── density ─────────────────────────────────────────────────────────────
    auto* den = app.add_subcommand("density", "Schinzel densities and constants");
    std::string den_op;
    u64 den_ell = 2, den_cut = 13, den_cutoff = 199, den_budget = kDefaultTupleBudget;
    unsigned den_n = 2, den_d1 = 1, den_d2 = 1;
    std::string den_degrees = "1,1";
    bool den_serial = false;
    den->add_option("op", den_op,
                    "delta-exact | delta-large | delta-small | delta2-lower | sigma2 | "
                    "count-t | product-bound | limit-constant")
        ->required();
    den->add_option("--ell", den_ell);
    den->add_option("--degrees", den_degrees, "comma list");
    den->add_option("--n", den_n);
    den->add_option("--d1", den_d1);
    den->add_option("--d2", den_d2);
    den->add_option("--cut", den_cut);
    den->add_option("--cutoff", den_cutoff);
    den->add_option("--budget", den_budget);
    den->add_flag("--serial", den_serial, "use the reference enumeration kernel");

    // ── ternary ─────────────────────────────────────────────────────────────
    auto* ter = app.add_subcommand("ternary", "diagonal ternary forms");
    std::string ter_op, ter_place = "inf";
    std::vector<std::string> ter_coeffs;
    ter->add_option("op", ter_op, "solve | soluble | local | reduce")->required();
    ter->add_option("coeffs", ter_coeffs, "f1 f2 f3")->expected(3);
    ter->add_option("--place", ter_place);

    // ── specialize ──────────────────────────────────────────────────────────
    auto* spc = app.add_subcommand("specialize", "prime specialization search");
    std::string spc_op = "search", spc_polys, spc_mod = "1", spc_m0 = "0", spc_targets,
                spc_mmax = "0", spc_eps = "1/2", spc_file;
    spc->add_option("op", spc_op, "search | verify")->required();
    spc->add_option("--polys", spc_polys, "';'-separated polynomials");
    spc->add_option("--mod", spc_mod);
    spc->add_option("--m0", spc_m0);
    spc->add_option("--targets", spc_targets, "comma signs (+1/-1) in lex pair order");
    spc->add_option("--m-max", spc_mmax);
    spc->add_option("--epsilon", spc_eps, "rational, e.g. 1/2");
    spc->add_option("--file", spc_file, "search report to re-verify");

    // ── conic ───────────────────────────────────────────────────────────────
    auto* con = app.add_subcommand("conic", "diagonal conic bundle pipeline");
    std::string con_op = "solve", con_a = "1,1,-1", con_blocks, con_mmax = "0";
    con->add_option("op", con_op, "solve | local-data | genericity")->required();
    con->add_option("--a", con_a, "a1,a2,a3");
    con->add_option("--blocks", con_blocks, "blocks '|' separated, ';' within")->required();
    con->add_option("--m-max", con_mmax);

    // ── quadric ─────────────────────────────────────────────────────────────
    auto* qua = app.add_subcommand("quadric", "diagonal quadric bundle pipeline");
    std::string qua_op = "solve", qua_a = "1,1,1,-1", qua_polys, qua_sets = "|||",
                qua_mmax = "0", qua_p = "3";
    qua->add_option("op", qua_op, "solve | classify | q2")->required();
    qua->add_option("--a", qua_a, "a0,a1,a2,a3");
    qua->add_option("--polys", qua_polys, "';'-separated polynomials");
    qua->add_option("--sets", qua_sets, "four '|'-separated 1-based index lists");
    qua->add_option("--m-max", qua_mmax);
    qua->add_option("--p", qua_p, "odd prime for the q2 check");

    // ── montecarlo ──────────────────────────────────────────────────────────
    auto* mc = app.add_subcommand("montecarlo", "solvable-density sampling");
    unsigned mc_d1 = 1, mc_d2 = 1, mc_H = 10;
    u64 mc_samples = 100, mc_seed = 1;
    std::string mc_mmax = "2000";
    bool mc_exhaustive = false;
    mc->add_option("--d1", mc_d1);
    mc->add_option("--d2", mc_d2);
    mc->add_option("-H,--height", mc_H);
    mc->add_option("--samples", mc_samples);
    mc->add_option("--seed", mc_seed);
    mc->add_option("--m-max", mc_mmax);
    mc->add_flag("--exhaustive", mc_exhaustive, "sweep the whole coefficient box once");

    auto* vp = app.add_subcommand("verify-paper", "recompute the built-in density constants");
    (void)vp;

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        ojson request{{"command", sub->get_name()}};
        std::function<Emitted()> compute;

        if (sub == sym) {
            request["args"] = ojson{{"op", sym_op}, {"a", sym_a}, {"b", sym_b}, {"place", sym_place}};
            compute = [&]() -> Emitted {
                ojson j = ok_report("symbol");
                Int a = int_from_string(sym_a), b = int_from_string(sym_b);
                int value;
                if (sym_op == "legendre") value = legendre(a, b);
                else if (sym_op == "jacobi") value = jacobi(a, b);
                else if (sym_op == "hilbert") value = hilbert(a, b, parse_place(sym_place));
                else throw domain_error("unknown symbols op");
                j["op"] = sym_op;
                j["value"] = value;
                return {0, j};
            };
        } else if (sub == den) {
            request["args"] = ojson{{"op", den_op},     {"ell", den_ell},   {"degrees", den_degrees},
                                    {"n", den_n},       {"d1", den_d1},     {"d2", den_d2},
                                    {"cut", den_cut},   {"cutoff", den_cutoff},
                                    {"budget", den_budget}, {"serial", den_serial}};
            compute = [&]() -> Emitted {
                ojson j = ok_report("density");
                j["op"] = den_op;
                if (den_op == "delta-exact" || den_op == "delta-large") {
                    std::vector<unsigned> degs;
                    for (const Int& d : parse_int_list(den_degrees))
                        degs.push_back(static_cast<unsigned>(to_u64(d)));
                    Rat v = den_op == "delta-exact"
                                ? (den_serial ? delta_exact_serial(den_ell, degs, den_budget)
                                              : delta_exact(den_ell, degs, den_budget, g_threads))
                                : delta_closed_large(den_ell, degs);
                    j["value"] = j_rat(v);
                    j["decimal"] = decimal_enclosure(RatInterval(v), 9).first;
                } else if (den_op == "delta-small") {
                    Rat v = delta_closed_small(den_ell, den_n);
                    j["value"] = j_rat(v);
                } else if (den_op == "delta2-lower") {
                    Rat v = delta2_lower(den_ell, den_d1, den_d2);
                    j["value"] = j_rat(v);
                } else if (den_op == "sigma2") {
                    Rat v = sigma2(den_d1, den_d2, den_budget, g_threads);
                    j["value"] = j_rat(v);
                    j["decimal"] = decimal_enclosure(RatInterval(v), 9).first;
                } else if (den_op == "count-t") {
                    TVectorCount tc = count_T_vectors();
                    j["total"] = tc.total;
                    j["odd_at_0"] = tc.odd_at_0;
                    j["odd_at_1"] = tc.odd_at_1;
                    j["odd_at_both"] = tc.odd_at_both;
                } else if (den_op == "product-bound") {
                    j["value"] = j_interval(product_lower_bound(den_d1, den_d2, den_cut), 9);
                } else if (den_op == "limit-constant") {
                    LimitConstant lc = limit_constant(den_cutoff);
                    j = limit_constant_to_json(lc);
                    return {lc.all_ok ? 0 : 1, j};
                } else {
                    throw domain_error("unknown density op");
                }
                return {0, j};
            };
        } else if (sub == ter) {
            request["args"] = ojson{{"op", ter_op}, {"coeffs", ter_coeffs}, {"place", ter_place}};
            compute = [&]() -> Emitted {
                TernaryForm form{{int_from_string(ter_coeffs[0]), int_from_string(ter_coeffs[1]), int_from_string(ter_coeffs[2])}};
                ojson j = ok_report("ternary");
                j["op"] = ter_op;
                j["form"] = ojson::array({j_int(form.f[0]), j_int(form.f[1]), j_int(form.f[2])});
                if (ter_op == "solve") {
                    TernarySolveResult r = ternary_solve(form, g_threads);
                    j["bound"] = j_int(r.bound);
                    if (r.soluble) {
                        j["status"] = "solved";
                        j["x"] = ojson::array({j_int(r.sol.x[0]), j_int(r.sol.x[1]), j_int(r.sol.x[2])});
                        return {0, j};
                    }
                    j["status"] = "insoluble";
                    j["witness_place"] = to_string(r.witness);
                    return {2, j};
                }
                if (ter_op == "soluble") {
                    bool s = ternary_soluble(form);
                    j["soluble"] = s;
                    return {s ? 0 : 2, j};
                }
                if (ter_op == "local") {
                    bool s = ternary_locally_soluble(form, parse_place(ter_place));
                    j["place"] = ter_place;
                    j["soluble"] = s;
                    return {s ? 0 : 2, j};
                }
                if (ter_op == "reduce") {
                    SquarefreeReduction r = reduce_squarefree(form);
                    j["reduced"] = ojson::array(
                        {j_int(r.reduced.f[0]), j_int(r.reduced.f[1]), j_int(r.reduced.f[2])});
                    j["multipliers"] =
                        ojson::array({j_int(r.mult[0]), j_int(r.mult[1]), j_int(r.mult[2])});
                    return {0, j};
                }
                throw domain_error("unknown ternary op");
            };
        } else if (sub == spc) {
            request["args"] = ojson{{"op", spc_op},       {"polys", spc_polys}, {"mod", spc_mod},
                                    {"m0", spc_m0},       {"targets", spc_targets},
                                    {"m_max", spc_mmax},  {"epsilon", spc_eps}, {"file", spc_file}};
            compute = [&]() -> Emitted {
                if (spc_op == "verify") {
                    std::ifstream f(spc_file);
                    if (!f) throw domain_error("cannot open " + spc_file);
                    ojson doc = ojson::parse(f);
                    SearchSpec spec = spec_from_json(doc.at("spec"));
                    Certificate cert = certificate_from_json(doc.at("certificate"));
                    bool ok = verify(cert, spec);
                    ojson j = ok_report("specialize_verify");
                    j["valid"] = ok;
                    return {ok ? 0 : 2, j};
                }
                SearchSpec spec;
                spec.tuple = parse_poly_list(spc_polys);
                spec.M = int_from_string(spc_mod);
                spec.m0 = int_from_string(spc_m0);
                spec.m_max = int_from_string(spc_mmax);
                spec.epsilon = rat_from_json(ojson(spc_eps));
                int n = spec.n();
                spec.targets = SymbolTargets::all_plus(n);
                if (!spc_targets.empty()) {
                    std::vector<Int> signs = parse_int_list(spc_targets);
                    size_t k = 0;
                    for (int i = 0; i < n; ++i)
                        for (int jx = i + 1; jx < n; ++jx) {
                            if (k < signs.size())
                                spec.targets.set(i, jx, static_cast<int>(to_i64(signs[k])));
                            ++k;
                        }
                }
                SearchOutcome out = search(spec);
                ojson j = ok_report("specialize_search");
                j["spec"] = spec_to_json(spec);
                ojson stats{{"candidates", out.stats.candidates},
                            {"rejected_not_prime", out.stats.rejected_not_prime},
                            {"rejected_duplicate", out.stats.rejected_duplicate},
                            {"rejected_symbol", out.stats.rejected_symbol},
                            {"rejected_even_modulus", out.stats.rejected_even_modulus}};
                j["scan"] = stats;
                if (out.found) {
                    j["status"] = "found";
                    j["certificate"] = certificate_to_json(out.cert);
                    return {0, j};
                }
                j["status"] = "exhausted";
                j["scanned_to"] = j_int(out.scanned_to);
                return {3, j};
            };
        } else if (sub == con) {
            request["args"] = ojson{{"op", con_op}, {"a", con_a}, {"blocks", con_blocks},
                                    {"m_max", con_mmax}};
            compute = [&]() -> Emitted {
                ConicBundleProblem problem;
                std::vector<Int> a = parse_int_list(con_a);
                if (a.size() != 3) throw domain_error("conic: need three coefficients");
                problem.a = {a[0], a[1], a[2]};
                auto blocks = parse_blocks(con_blocks);
                if (blocks.size() < 2 || blocks.size() > 3)
                    throw domain_error("conic: need two or three blocks");
                for (size_t i = 0; i < blocks.size(); ++i) problem.blocks[i] = blocks[i];
                if (con_op == "genericity") {
                    GenericityResult r = genericity_check(problem);
                    ojson j = ok_report("conic_genericity");
                    j["in_generic_locus"] = r.in_generic_locus;
                    if (!r.in_generic_locus) j["witness"] = r.witness;
                    return {r.in_generic_locus ? 0 : 2, j};
                }
                if (con_op == "local-data") {
                    auto locals = enumerate_local_data(problem);
                    ojson j = ok_report("conic_local_data");
                    ojson arr = ojson::array();
                    for (const auto& d : locals) {
                        ojson one{{"m0", j_int(d.m0)}, {"modulus", j_int(d.M)}};
                        ojson lam = ojson::array(), lt = ojson::array();
                        for (const auto& row : d.lambda) lam.push_back(row);
                        for (const auto& row : d.lambda_tilde) lt.push_back(row);
                        one["lambda"] = lam;
                        one["lambda_tilde"] = lt;
                        arr.push_back(one);
                    }
                    j["admissible"] = arr;
                    return {locals.empty() ? 2 : 0, j};
                }
                ConicOutcome out = solve_conic_bundle(problem, int_from_string(con_mmax), g_threads);
                ojson j = conic_outcome_to_json(problem, out);
                int code = std::holds_alternative<ConicSolution>(out)
                               ? 0
                               : (std::holds_alternative<Obstruction>(out) ? 2 : 3);
                return {code, j};
            };
        } else if (sub == qua) {
            request["args"] = ojson{{"op", qua_op},   {"a", qua_a},       {"polys", qua_polys},
                                    {"sets", qua_sets}, {"m_max", qua_mmax}, {"p", qua_p}};
            compute = [&]() -> Emitted {
                if (qua_op == "q2") {
                    bool s = q2_locally_soluble(int_from_string(qua_p));
                    ojson j = ok_report("quadric_q2");
                    j["p"] = qua_p;
                    j["soluble"] = s;
                    return {s ? 0 : 2, j};
                }
                QuadricBundleProblem problem;
                std::vector<Int> a = parse_int_list(qua_a);
                if (a.size() != 4) throw domain_error("quadric: need four coefficients");
                problem.a = {a[0], a[1], a[2], a[3]};
                problem.polys = parse_poly_list(qua_polys);
                problem.sets = parse_sets(qua_sets);
                if (qua_op == "classify") {
                    DeltaClass c = classify_delta(problem);
                    ojson j = ok_report("quadric_classify");
                    j["delta"] = problem.delta().str();
                    j["class"] = c == DeltaClass::nonsquare
                                     ? "nonsquare"
                                     : (c == DeltaClass::square_in_base ? "square_in_base"
                                                                        : "square_over_closure_only");
                    return {0, j};
                }
                QuadricOutcome out = solve_quadric_bundle(problem, int_from_string(qua_mmax), g_threads);
                ojson j = quadric_outcome_to_json(problem, out);
                int code = 0;
                if (std::holds_alternative<Obstruction>(out)) code = 2;
                else if (std::holds_alternative<Exhausted>(out)) code = 3;
                else if (std::holds_alternative<Unsupported>(out)) code = 2;
                return {code, j};
            };
        } else if (sub == mc) {
            request["args"] = ojson{{"d1", mc_d1},           {"d2", mc_d2},     {"H", mc_H},
                                    {"samples", mc_samples}, {"seed", mc_seed},
                                    {"m_max", mc_mmax},      {"exhaustive", mc_exhaustive}};
            compute = [&]() -> Emitted {
                McEstimate e = monte_carlo(mc_d1, mc_d2, mc_H, mc_samples, mc_seed, int_from_string(mc_mmax),
                                           g_threads, mc_exhaustive);
                ojson j = mc_to_json(e);
                RatInterval lower = product_lower_bound(mc_d1, mc_d2, 13);
                j["product_lower_bound"] = j_interval(lower, 9);
                j["gap_estimate_minus_bound"] =
                    decimal_enclosure(RatInterval(e.estimate - lower.lo), 9).first;
                return {0, j};
            };
        } else {
            compute = run_verify_paper;
        }
        return run_cached(request, compute);
    } catch (const budget_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
