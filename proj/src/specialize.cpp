#include "hasseforge/specialize.hpp"

#include <algorithm>

#include "hasseforge/intmath.hpp"

namespace hf {

SymbolTargets SymbolTargets::all_plus(int n) {
    SymbolTargets t;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.signs[{i, j}] = 1;
    return t;
}

int SymbolTargets::at(int i, int j) const {
    auto it = signs.find({i, j});
    if (it == signs.end()) throw domain_error("symbol targets: pair not prescribed");
    return it->second;
}

void SymbolTargets::set(int i, int j, int sign) {
    if (i >= j) throw domain_error("symbol targets: need i < j");
    if (sign != 1 && sign != -1) throw domain_error("symbol targets: sign must be +-1");
    signs[{i, j}] = sign;
}

namespace {

void validate_spec(const SearchSpec& spec) {
    if (spec.tuple.empty()) throw domain_error("search: empty tuple");
    if (spec.M < 1) throw domain_error("search: M >= 1 required");
    if (spec.m0 < 0 || spec.m0 >= spec.M) throw domain_error("search: m0 out of range");
    if (spec.epsilon <= 0) throw domain_error("search: epsilon must be positive");
    int n = spec.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) spec.targets.at(i, j);  // totality
    auto check = is_schinzel(spec.tuple);
    if (!check.ok) {
        if (check.reason == SchinzelCheck::nonpositive_leading)
            throw domain_error("search: tuple is not Schinzel (nonpositive leading coefficient in component " +
                               std::to_string(check.poly_index) + ")");
        throw domain_error("search: tuple is not Schinzel (product vanishes identically mod " +
                           check.ell.get_str() + ")");
    }
}

// verdict for lhs > rhs_expr (strict) or lhs <= rhs_expr, refining precision
template <typename RhsAt>
BoundRecord decide_bound(const std::string& name, const Rat& lhs, bool want_greater,
                         RhsAt rhs_at) {
    BoundRecord rec;
    rec.name = name;
    rec.lhs = lhs;
    for (int prec : {24, 48, 96, 192}) {
        rec.rhs = rhs_at(prec);
        if (want_greater) {
            if (lhs > rec.rhs.hi) { rec.verdict = 1; return rec; }
            if (lhs <= rec.rhs.lo) { rec.verdict = -1; return rec; }
        } else {
            if (lhs <= rec.rhs.lo) { rec.verdict = 1; return rec; }
            if (lhs > rec.rhs.hi) { rec.verdict = -1; return rec; }
        }
    }
    rec.verdict = 0;
    return rec;
}

BoundRecord make_min_value_record(const SearchSpec& spec, const std::vector<Int>& values) {
    Int h = tuple_height(spec.tuple);
    Int mn = values.front();
    for (const Int& v : values) mn = std::min(mn, v);
    Rat half_eps = spec.epsilon / 2;
    return decide_bound("min_value_gt_height_log_power", Rat(mn), true, [&](int prec) {
        RatInterval lg = log_interval(Rat(h), prec);
        if (lg.lo < 0) lg.lo = 0;  // h >= 1
        return RatInterval(Rat(h)) * pow_interval(lg, half_eps, prec);
    });
}

BoundRecord make_scale_record(const SearchSpec& spec, const Int& m) {
    Int h = tuple_height(spec.tuple);
    Rat expo = Rat(spec.n()) + spec.epsilon;
    return decide_bound("m_le_log_power", Rat(m), false, [&](int prec) {
        RatInterval lg = log_interval(Rat(h), prec);
        if (lg.lo < 0) lg.lo = 0;
        return pow_interval(lg, expo, prec);
    });
}

}  // namespace

Int default_m_max(const SearchSpec& spec) {
    Int h = tuple_height(spec.tuple);
    Int floor_scale = 10000 * spec.M;
    RatInterval lg = log_interval(Rat(h), 24);
    if (lg.lo < 0) lg.lo = 0;
    RatInterval pw = pow_interval(lg, Rat(spec.n() + 1), 24);
    Int ceil_pow;
    mpz_cdiv_q(ceil_pow.get_mpz_t(), pw.hi.get_num().get_mpz_t(), pw.hi.get_den().get_mpz_t());
    return std::max(ceil_pow, floor_scale);
}

SearchOutcome search(const SearchSpec& spec, const Int& start) {
    validate_spec(spec);
    Int m_max = spec.m_max > 0 ? spec.m_max : default_m_max(spec);
    if (start < 1) throw domain_error("search: start must be >= 1");

    const int n = spec.n();
    SearchOutcome out;
    // first candidate >= start congruent to m0 mod M
    Int m = start + ((spec.m0 - start) % spec.M + spec.M) % spec.M;
    std::vector<Int> values(n);
    for (; m <= m_max; m += spec.M) {
        out.stats.candidates++;
        out.scanned_to = m;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            values[i] = spec.tuple[i](m);
            if (!is_prime(values[i])) {
                out.stats.rejected_not_prime++;
                ok = false;
            }
        }
        if (!ok) continue;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (values[i] == values[j]) {
                    out.stats.rejected_duplicate++;
                    ok = false;
                }
        if (!ok) continue;
        // symbols: (P_i(m)/P_j(m)) needs P_j(m) odd
        for (int j = 1; j < n && ok; ++j)
            if (values[j] == 2) {
                out.stats.rejected_even_modulus++;
                ok = false;
            }
        if (!ok) continue;
        std::vector<SymbolRecord> symbols;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = i + 1; j < n && ok; ++j) {
                int target = spec.targets.at(i, j);
                int realized = jacobi(values[i], values[j]);
                symbols.push_back({i, j, target, realized});
                if (realized != target) {
                    out.stats.rejected_symbol++;
                    ok = false;
                }
            }
        }
        if (!ok) continue;

        out.found = true;
        out.cert.m = m;
        out.cert.values = values;
        out.cert.symbols = std::move(symbols);
        out.cert.min_value_bound = make_min_value_record(spec, values);
        out.cert.scale_bound = make_scale_record(spec, m);
        out.cert.primality_deterministic = true;
        for (const Int& v : values)
            out.cert.primality_deterministic &= primality_is_deterministic(v);
        return out;
    }
    return out;
}

bool verify(const Certificate& cert, const SearchSpec& spec) {
    try {
        validate_spec(spec);
    } catch (const domain_error&) {
        return false;
    }
    const int n = spec.n();
    if (static_cast<int>(cert.values.size()) != n) return false;
    if (cert.m < 1) return false;
    if ((cert.m - spec.m0) % spec.M != 0) return false;
    for (int i = 0; i < n; ++i) {
        if (spec.tuple[i](cert.m) != cert.values[i]) return false;
        if (!is_prime(cert.values[i])) return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cert.values[i] == cert.values[j]) return false;
    for (int j = 1; j < n; ++j)
        if (cert.values[j] == 2) return false;
    size_t k = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (k >= cert.symbols.size()) return false;
            const SymbolRecord& s = cert.symbols[k++];
            if (s.i != i || s.j != j) return false;
            if (s.target != spec.targets.at(i, j)) return false;
            if (jacobi(cert.values[i], cert.values[j]) != s.realized) return false;
            if (s.realized != s.target) return false;
        }
    }
    if (k != cert.symbols.size()) return false;
    BoundRecord mv = make_min_value_record(spec, cert.values);
    BoundRecord sc = make_scale_record(spec, cert.m);
    if (mv.verdict != cert.min_value_bound.verdict) return false;
    if (sc.verdict != cert.scale_bound.verdict) return false;
    return true;
}

// ── serialization ───────────────────────────────────────────────────────────

namespace {

ojson bound_to_json(const BoundRecord& b) {
    return ojson{{"name", b.name},
                 {"lhs", j_rat(b.lhs)},
                 {"rhs", j_interval(b.rhs)},
                 {"satisfied", b.verdict > 0 ? "yes" : (b.verdict < 0 ? "no" : "undecided")}};
}

BoundRecord bound_from_json(const ojson& j) {
    BoundRecord b;
    b.name = j.at("name").get<std::string>();
    b.lhs = rat_from_json(j.at("lhs"));
    b.rhs = RatInterval(rat_from_json(j.at("rhs").at("lo")), rat_from_json(j.at("rhs").at("hi")));
    std::string s = j.at("satisfied").get<std::string>();
    b.verdict = s == "yes" ? 1 : (s == "no" ? -1 : 0);
    return b;
}

}  // namespace

ojson certificate_to_json(const Certificate& cert) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "specialization_certificate";
    j["m"] = j_int(cert.m);
    ojson vals = ojson::array();
    for (const Int& v : cert.values) vals.push_back(j_int(v));
    j["values"] = vals;
    ojson syms = ojson::array();
    for (const SymbolRecord& s : cert.symbols)
        syms.push_back(ojson{{"i", s.i}, {"j", s.j}, {"target", s.target}, {"realized", s.realized}});
    j["symbols"] = syms;
    j["bounds"] = ojson{{"min_value", bound_to_json(cert.min_value_bound)},
                        {"scale", bound_to_json(cert.scale_bound)}};
    j["primality"] = cert.primality_deterministic ? "deterministic" : "probabilistic_2^-128";
    return j;
}

Certificate certificate_from_json(const ojson& j) {
    Certificate c;
    c.m = int_from_json(j.at("m"));
    for (const auto& v : j.at("values")) c.values.push_back(int_from_json(v));
    for (const auto& s : j.at("symbols"))
        c.symbols.push_back({s.at("i").get<int>(), s.at("j").get<int>(), s.at("target").get<int>(),
                             s.at("realized").get<int>()});
    c.min_value_bound = bound_from_json(j.at("bounds").at("min_value"));
    c.scale_bound = bound_from_json(j.at("bounds").at("scale"));
    c.primality_deterministic = j.at("primality").get<std::string>() == "deterministic";
    return c;
}

ojson spec_to_json(const SearchSpec& spec) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "specialization_spec";
    ojson tuple = ojson::array();
    for (const auto& p : spec.tuple) {
        ojson coeffs = ojson::array();
        for (const Int& c : p.coeffs()) coeffs.push_back(j_int(c));
        tuple.push_back(coeffs);
    }
    j["tuple"] = tuple;
    j["modulus"] = j_int(spec.M);
    j["m0"] = j_int(spec.m0);
    ojson targets = ojson::array();
    for (const auto& [pair, sign] : spec.targets.signs)
        targets.push_back(ojson{{"i", pair.first}, {"j", pair.second}, {"sign", sign}});
    j["targets"] = targets;
    j["m_max"] = j_int(spec.m_max);
    j["epsilon"] = j_rat(spec.epsilon);
    return j;
}

SearchSpec spec_from_json(const ojson& j) {
    SearchSpec s;
    for (const auto& cj : j.at("tuple")) {
        std::vector<Int> coeffs;
        for (const auto& c : cj) coeffs.push_back(int_from_json(c));
        s.tuple.emplace_back(std::move(coeffs));
    }
    s.M = int_from_json(j.at("modulus"));
    s.m0 = int_from_json(j.at("m0"));
    for (const auto& t : j.at("targets"))
        s.targets.set(t.at("i").get<int>(), t.at("j").get<int>(), t.at("sign").get<int>());
    s.m_max = int_from_json(j.at("m_max"));
    s.epsilon = rat_from_json(j.at("epsilon"));
    return s;
}

}  // namespace hf
