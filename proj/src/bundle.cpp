#include "hasseforge/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hf {

// ── problem plumbing ────────────────────────────────────────────────────────

std::vector<IntPoly> ConicBundleProblem::flattened() const {
    std::vector<IntPoly> out;
    for (const auto& block : blocks)
        for (const auto& p : block) out.push_back(p);
    return out;
}

std::array<int, 3> ConicBundleProblem::block_sizes() const {
    return {static_cast<int>(blocks[0].size()), static_cast<int>(blocks[1].size()),
            static_cast<int>(blocks[2].size())};
}

void validate_conic(const ConicBundleProblem& problem) {
    for (const Int& c : problem.a)
        if (c == 0) throw domain_error("conic bundle: zero coefficient");
    if (problem.blocks[0].empty() || problem.blocks[1].empty())
        throw domain_error("conic bundle: first two blocks must be nonempty");
    for (const auto& block : problem.blocks)
        for (const auto& p : block) {
            if (p.is_zero() || p.degree() < 1)
                throw domain_error("conic bundle: constant polynomial factor");
            if (p.lc() <= 0)
                throw domain_error("conic bundle: nonpositive leading coefficient");
        }
}

namespace {

bool same_sign3(const std::array<Int, 3>& a) {
    return (a[0] > 0 && a[1] > 0 && a[2] > 0) || (a[0] < 0 && a[1] < 0 && a[2] < 0);
}

void require_schinzel(const std::vector<IntPoly>& tuple) {
    auto check = is_schinzel(tuple);
    if (check.ok) return;
    if (check.reason == SchinzelCheck::nonpositive_leading)
        throw domain_error("bundle: tuple is not Schinzel (nonpositive leading coefficient)");
    throw domain_error("bundle: tuple is not Schinzel (witness prime " + check.ell.get_str() + ")");
}

}  // namespace

ConicNormalization normalize_conic_coefficients(const std::array<Int, 3>& a) {
    for (const Int& c : a)
        if (c == 0) throw domain_error("normalize: zero coefficient");
    ConicNormalization out;
    out.coord_mult = {Rat(1), Rat(1), Rat(1)};

    std::array<int, 3> sign{};
    std::set<Int> primes;
    std::array<std::map<Int, unsigned>, 3> expo;
    for (int i = 0; i < 3; ++i) {
        sign[i] = a[i] > 0 ? 1 : -1;
        for (auto& [p, e] : factorize(a[i])) {
            expo[i][p] = e;
            primes.insert(p);
        }
    }
    for (const Int& p : primes) {
        std::array<unsigned, 3> e{};
        for (int i = 0; i < 3; ++i) {
            auto it = expo[i].find(p);
            e[i] = it == expo[i].end() ? 0 : it->second;
        }
        // squares move into the coordinates
        for (int i = 0; i < 3; ++i)
            if (e[i] >= 2) out.coord_mult[i] /= rat_pow(Rat(p), e[i] / 2);
        std::array<unsigned, 3> eps{e[0] & 1u, e[1] & 1u, e[2] & 1u};
        unsigned cnt = eps[0] + eps[1] + eps[2];
        if (cnt == 3) {
            eps = {0, 0, 0};  // common prime: divide the equation by p
        } else if (cnt == 2) {
            // p | a_i, a_j: (a_i/p, a_j/p, p a_k); solutions map back by
            // scaling the k-th coordinate with p
            int k = eps[0] == 0 ? 0 : (eps[1] == 0 ? 1 : 2);
            for (int i = 0; i < 3; ++i) eps[i] = (i == k) ? 1 : 0;
            out.coord_mult[k] *= Rat(p);
        }
        for (int i = 0; i < 3; ++i) expo[i][p] = eps[i];
    }
    for (int i = 0; i < 3; ++i) {
        out.a[i] = sign[i];
        for (auto& [p, e] : expo[i])
            if (e) out.a[i] *= p;
    }
    Int prod = abs(out.a[0] * out.a[1] * out.a[2]);
    out.M = 8 * prod;
    out.M_primes.push_back(2);
    for (auto& [p, e] : factorize(prod))
        if (p != 2) out.M_primes.push_back(p);
    std::sort(out.M_primes.begin(), out.M_primes.end());
    return out;
}

// ── local data ──────────────────────────────────────────────────────────────

namespace {

// specialized conic solubility over Q_p from the coefficient triple
bool conic_soluble_at(const std::array<Int, 3>& c, const Int& p) {
    return hilbert(-c[0] * c[2], -c[1] * c[2], Place::finite(p)) == 1;
}

std::array<Int, 3> block_products(const std::array<std::vector<Int>, 3>& values) {
    std::array<Int, 3> pi{Int(1), Int(1), Int(1)};
    for (int i = 0; i < 3; ++i)
        for (const Int& v : values[i]) pi[i] *= v;
    return pi;
}

}  // namespace

std::array<std::vector<int>, 3> compute_lambda(const ConicLocalData& data,
                                               const std::array<Int, 3>& a) {
    std::array<std::vector<int>, 3> lambda;
    for (int i = 0; i < 3; ++i) {
        int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        Int other = -a[i1] * a[i2];
        for (const Int& v : data.values[i]) {
            int s = 1;
            for (const Int& p : data.M_primes) s *= hilbert(v, other, Place::finite(p));
            lambda[i].push_back(s == -1 ? 1 : 0);
        }
    }
    return lambda;
}

std::array<std::vector<int>, 3> compute_lambda_tilde(
    const std::array<std::vector<int>, 3>& lambda, const ConicLocalData& data) {
    std::array<Int, 3> pi = block_products(data.values);
    std::array<std::vector<int>, 3> lt = lambda;
    Place two = Place::finite(Int(2));
    for (size_t k = 0; k < lt[1].size(); ++k)
        lt[1][k] ^= (hilbert(pi[0], data.values[1][k], two) == -1);
    for (size_t l = 0; l < lt[2].size(); ++l)
        lt[2][l] ^= (hilbert(pi[0] * pi[1], data.values[2][l], two) == -1);
    return lt;
}

std::vector<ConicLocalData> enumerate_local_data(const ConicBundleProblem& problem) {
    validate_conic(problem);
    if (same_sign3(problem.a)) throw domain_error("conic bundle: coefficients all of one sign");
    ConicNormalization norm = normalize_conic_coefficients(problem.a);

    std::vector<ConicLocalData> out;
    for (Int m0 = 0; m0 < norm.M; ++m0) {
        ConicLocalData data;
        data.M = norm.M;
        data.M_primes = norm.M_primes;
        data.m0 = m0;
        bool units = true;
        for (int i = 0; i < 3 && units; ++i) {
            for (const auto& poly : problem.blocks[i]) {
                Int v = poly(m0);
                Int g;
                mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), norm.M.get_mpz_t());
                if (g != 1) {
                    units = false;
                    break;
                }
                data.values[i].push_back(v);
            }
        }
        if (!units) continue;
        std::array<Int, 3> pi = block_products(data.values);
        std::array<Int, 3> c{norm.a[0] * pi[0], norm.a[1] * pi[1], norm.a[2] * pi[2]};
        bool soluble = true;
        for (const Int& p : norm.M_primes)
            if (!conic_soluble_at(c, p)) {
                soluble = false;
                break;
            }
        if (!soluble) continue;
        data.lambda = compute_lambda(data, norm.a);
        data.lambda_tilde = compute_lambda_tilde(data.lambda, data);
        int sum = 0;
        for (const auto& row : data.lambda_tilde)
            for (int b : row) sum ^= b;
        if (sum != 0)
            throw internal_error("local data: lambda-tilde sum is odd for admissible residue");
        out.push_back(std::move(data));
    }
    return out;
}

// ── targets ─────────────────────────────────────────────────────────────────

std::optional<CrossBlockTargets> solve_targets(
    const std::array<std::vector<int>, 3>& lambda_tilde, const std::array<int, 3>& block_sizes) {
    std::vector<int> flat;
    for (const auto& row : lambda_tilde)
        for (int b : row) flat.push_back(b & 1);
    F2System sys = build_cross_block_system(block_sizes[0], block_sizes[1], block_sizes[2], flat);
    auto x = f2_solve_canonical(sys);
    if (!x) return std::nullopt;
    CrossBlockTargets out;
    for (size_t k = 0; k < sys.vars.size(); ++k)
        out.later_over_earlier[sys.vars[k]] = (*x)[k] ? -1 : 1;
    return out;
}

SymbolTargets targets_for_search(const CrossBlockTargets& cross,
                                 const std::vector<Int>& residues_flat) {
    int n = static_cast<int>(residues_flat.size());
    SymbolTargets t = SymbolTargets::all_plus(n);
    auto mod4is3 = [](const Int& v) { return ((v % 4) + 4) % 4 == 3; };
    for (const auto& [pair, sign] : cross.later_over_earlier) {
        auto [u, v] = pair;
        // (p_u/p_v) = (p_v/p_u) unless both are 3 mod 4
        int flip = (mod4is3(residues_flat[u]) && mod4is3(residues_flat[v])) ? -1 : 1;
        t.set(u, v, sign * flip);
    }
    return t;
}

GenericityResult genericity_check(const ConicBundleProblem& problem) {
    validate_conic(problem);
    std::vector<IntPoly> polys = problem.flattened();
    for (size_t k = 0; k < polys.size(); ++k) {
        if (discriminant(polys[k]) == 0)
            return {false, "discriminant of component " + std::to_string(k) + " vanishes"};
    }
    for (size_t k = 0; k < polys.size(); ++k)
        for (size_t l = k + 1; l < polys.size(); ++l)
            if (resultant(polys[k], polys[l]) == 0)
                return {false, "resultant of components " + std::to_string(k) + "," +
                                   std::to_string(l) + " vanishes"};
    return {};
}

// ── conic pipeline ──────────────────────────────────────────────────────────

Int conic_equation_value(const ConicBundleProblem& problem, const std::array<Int, 3>& x,
                         const Int& t) {
    Int total = 0;
    for (int i = 0; i < 3; ++i) {
        Int prod = problem.a[i];
        for (const auto& poly : problem.blocks[i]) prod *= poly(t);
        total += prod * x[i] * x[i];
    }
    return total;
}

namespace {

// scale a rational vector to a primitive integer vector
template <size_t N>
std::array<Int, N> integralize(const std::array<Rat, N>& v) {
    Int den = 1;
    for (const Rat& q : v)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    std::array<Int, N> out;
    Int g = 0;
    for (size_t i = 0; i < N; ++i) {
        Rat scaled = v[i] * den;
        out[i] = scaled.get_num();  // denominator is 1 after scaling
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& c : out) c /= g;
    for (auto& c : out) c = abs(c);
    return out;
}

HeightBoundRecord conic_height_bound(const ConicBundleProblem& problem,
                                     const std::array<Int, 3>& x, const Int& t) {
    HeightBoundRecord rec;
    rec.max_coordinate = std::max({Int(abs(x[0])), Int(abs(x[1])), Int(abs(x[2])), t});
    Int maxa = std::max({Int(abs(problem.a[0])), Int(abs(problem.a[1])), Int(abs(problem.a[2]))});
    auto tuple = problem.flattened();
    Int h = tuple_height(tuple);
    int n = static_cast<int>(tuple.size());
    unsigned maxdi = 0;
    for (int i = 0; i < 3; ++i) {
        unsigned di = 0;
        for (const auto& p : problem.blocks[i]) di += static_cast<unsigned>(p.degree());
        maxdi = std::max(maxdi, di);
    }
    unsigned maxni = 0;
    for (const auto& b : problem.blocks) maxni = std::max<unsigned>(maxni, b.size());

    RatInterval lg = log_interval(Rat(h), 48);
    if (lg.lo < 0) lg.lo = 0;
    RatInterval pw = pow_interval(lg, Rat(static_cast<long>((n + 1) * maxdi)), 48);
    RatInterval bound = RatInterval(Rat(maxa)) * pw * RatInterval(rat_pow(Rat(h), maxni));
    rec.bound = bound;
    int cmp = compare_rat_interval(Rat(rec.max_coordinate), bound);
    rec.verdict = cmp < 0 ? 1 : (cmp > 0 ? -1 : 0);
    return rec;
}

Obstruction conic_obstruction_report(const ConicBundleProblem& problem,
                                     const ConicNormalization& norm) {
    // count, per place, the unit-value residues where solubility fails
    std::vector<Int> unit_m0;
    for (Int m0 = 0; m0 < norm.M; ++m0) {
        bool units = true;
        for (int i = 0; i < 3 && units; ++i)
            for (const auto& poly : problem.blocks[i]) {
                Int g;
                Int v = poly(m0);
                mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), norm.M.get_mpz_t());
                if (g != 1) {
                    units = false;
                    break;
                }
            }
        if (units) unit_m0.push_back(m0);
    }
    if (unit_m0.empty()) {
        for (const Int& p : norm.M_primes) {
            bool always_bad = true;
            for (Int m0 = 0; m0 < p && always_bad; ++m0) {
                bool ok = true;
                for (int i = 0; i < 3 && ok; ++i)
                    for (const auto& poly : problem.blocks[i])
                        if (poly(m0) % p == 0) {
                            ok = false;
                            break;
                        }
                always_bad = !ok;
            }
            if (always_bad)
                return {Place::finite(p), "no residue gives unit polynomial values at " + p.get_str()};
        }
        return {Place::finite(Int(2)), "no residue gives unit polynomial values"};
    }
    for (const Int& p : norm.M_primes) {
        bool fails_everywhere = true;
        for (const Int& m0 : unit_m0) {
            std::array<Int, 3> c;
            for (int i = 0; i < 3; ++i) {
                c[i] = norm.a[i];
                for (const auto& poly : problem.blocks[i]) c[i] *= poly(m0);
            }
            if (conic_soluble_at(c, p)) {
                fails_everywhere = false;
                break;
            }
        }
        if (fails_everywhere)
            return {Place::finite(p), "specialized conic insoluble at " + p.get_str() +
                                          " for every admissible residue"};
    }
    return {Place::finite(Int(2)),
            "no residue admits simultaneous local solubility at all primes dividing the modulus"};
}

}  // namespace

ConicOutcome solve_conic_bundle(const ConicBundleProblem& problem, const Int& m_max,
                                int threads) {
    validate_conic(problem);
    if (same_sign3(problem.a))
        return Obstruction{Place::infinity(), "coefficients all of one sign"};
    std::vector<IntPoly> tuple = problem.flattened();
    require_schinzel(tuple);

    ConicNormalization norm = normalize_conic_coefficients(problem.a);
    std::vector<ConicLocalData> locals = enumerate_local_data(problem);
    if (locals.empty()) return conic_obstruction_report(problem, norm);

    auto sizes = problem.block_sizes();
    Int used_m_max = 0;
    for (const ConicLocalData& data : locals) {
        auto cross = solve_targets(data.lambda_tilde, sizes);
        if (!cross) throw internal_error("conic: cross-block system inconsistent");
        std::vector<Int> residues_flat;
        for (const auto& row : data.values)
            for (const Int& v : row) residues_flat.push_back(v);

        SearchSpec spec;
        spec.tuple = tuple;
        spec.M = data.M;
        spec.m0 = data.m0;
        spec.targets = targets_for_search(*cross, residues_flat);
        spec.m_max = m_max;
        used_m_max = spec.m_max > 0 ? spec.m_max : default_m_max(spec);

        SearchOutcome found = search(spec);
        if (!found.found) continue;
        const Certificate& cert = found.cert;

        // rebuild the specialized ternary form with the normalized coefficients
        std::array<Int, 3> pi{Int(1), Int(1), Int(1)};
        size_t k = 0;
        for (int i = 0; i < 3; ++i)
            for (size_t j = 0; j < problem.blocks[i].size(); ++j) pi[i] *= cert.values[k++];
        TernaryForm form{{norm.a[0] * pi[0], norm.a[1] * pi[1], norm.a[2] * pi[2]}};

        // prescribed symbols make the specialized conic everywhere locally
        // soluble; cross-check at each specialized prime
        for (const Int& p : cert.values)
            if (!ternary_locally_soluble(form, Place::finite(p)))
                throw internal_error("conic: specialized form not soluble at a specialized prime");

        TernarySolveResult ternary = ternary_solve(form, threads);
        if (!ternary.soluble)
            throw internal_error("conic: everywhere locally soluble form has no bounded zero");

        std::array<Rat, 3> mapped;
        for (int i = 0; i < 3; ++i) mapped[i] = norm.coord_mult[i] * Rat(ternary.sol.x[i]);
        ConicSolution sol;
        sol.x = integralize(mapped);
        sol.t = cert.m;
        if (conic_equation_value(problem, sol.x, sol.t) != 0)
            throw internal_error("conic: mapped solution fails the original equation");
        if (!verify(cert, spec)) throw internal_error("conic: certificate fails verification");

        sol.cert = cert;
        sol.spec_used = spec;
        sol.m0 = data.m0;
        sol.M = data.M;
        sol.normalized_a = norm.a;
        sol.specialized_form = form;
        sol.specialized_solution = ternary.sol;
        sol.cassels_bound = ternary.bound;
        sol.height_bound = conic_height_bound(problem, sol.x, sol.t);
        return sol;
    }
    return Exhausted{used_m_max};
}

// ── quadric bundles ─────────────────────────────────────────────────────────

IntPoly QuadricBundleProblem::delta() const {
    IntPoly d = IntPoly::constant(a[0] * a[1] * a[2] * a[3]);
    for (const auto& set : sets)
        for (int idx : set) d = d * polys[static_cast<size_t>(idx)];
    return d;
}

void validate_quadric(const QuadricBundleProblem& problem) {
    for (const Int& c : problem.a)
        if (c == 0) throw domain_error("quadric bundle: zero coefficient");
    if (problem.polys.empty()) throw domain_error("quadric bundle: no polynomials");
    for (const auto& p : problem.polys) {
        if (p.is_zero() || p.degree() < 1)
            throw domain_error("quadric bundle: constant polynomial");
        if (p.lc() <= 0) throw domain_error("quadric bundle: nonpositive leading coefficient");
    }
    int n = static_cast<int>(problem.polys.size());
    for (const auto& set : problem.sets)
        for (int idx : set)
            if (idx < 0 || idx >= n) throw domain_error("quadric bundle: set index out of range");
}

DeltaClass classify_delta(const QuadricBundleProblem& problem) {
    validate_quadric(problem);
    IntPoly d = problem.delta();
    if (d.degree() == 0) {
        // constant delta: square class of an integer
        Int c = d.coeff(0);
        return is_square(c) ? DeltaClass::square_in_base
                            : DeltaClass::square_over_closure_only;
    }
    auto cls = classify_square(d);
    switch (cls.kind) {
        case SquareClassification::nonsquare: return DeltaClass::nonsquare;
        case SquareClassification::square_in_base: return DeltaClass::square_in_base;
        default: return DeltaClass::square_over_closure_only;
    }
}

bool q2_locally_soluble(const Int& p) {
    if (p == 2 || !is_prime(p)) throw domain_error("q2 check: odd prime required");
    return jacobi(Int(-1), p) == 1 || jacobi(Int(2), p) == 1;
}

Int quadric_equation_value(const QuadricBundleProblem& problem, const std::array<Int, 4>& x,
                           const Int& t) {
    Int total = 0;
    for (int i = 0; i < 4; ++i) {
        Int prod = problem.a[i];
        for (int idx : problem.sets[i]) prod *= problem.polys[static_cast<size_t>(idx)](t);
        total += prod * x[i] * x[i];
    }
    return total;
}

SymbolTargets quadric_targets(const std::array<Int, 4>& normalized_a,
                              const std::vector<Int>& residues,
                              const std::vector<int>& occurrence, const Int& M,
                              const std::vector<Int>& M_primes) {
    int n = static_cast<int>(residues.size());
    if (static_cast<int>(occurrence.size()) != n)
        throw domain_error("quadric targets: occurrence size mismatch");
    if (n < 1 || occurrence[0] != 1)
        throw domain_error("quadric targets: leading index must be single-occurrence");
    (void)M;
    Int aprod = normalized_a[0] * normalized_a[1] * normalized_a[2] * normalized_a[3];
    SymbolTargets t = SymbolTargets::all_plus(n);
    for (int i = 1; i < n; ++i) {
        if (occurrence[i] != 2) continue;
        int s = 1;
        for (const Int& p : M_primes) s *= hilbert(aprod, residues[i], Place::finite(p));
        t.set(0, i, -s);
    }
    return t;
}

namespace {

struct QuadricNormalization {
    std::array<Int, 4> a;
    std::array<std::vector<int>, 4> sets;
    // original X_i = c_i * prod_k P_k(m)^e_ik * x_i
    std::array<Rat, 4> coord_c;
    std::array<std::map<int, int>, 4> coord_poly_exp;
    Int M;
    std::vector<Int> M_primes;
};

QuadricNormalization normalize_quadric(const QuadricBundleProblem& problem) {
    QuadricNormalization out;
    out.a = problem.a;
    out.sets = problem.sets;
    out.coord_c = {Rat(1), Rat(1), Rat(1), Rat(1)};

    // integer coefficients: squarefree, no prime in more than two
    for (;;) {
        bool changed = false;
        for (int i = 0; i < 4; ++i) {
            Int sq;
            Int part = squarefree_part(out.a[i], sq);
            if (sq != 1) {
                out.coord_c[i] /= Rat(sq);
                out.a[i] = part;
                changed = true;
            }
        }
        std::map<Int, std::vector<int>> holders;
        for (int i = 0; i < 4; ++i)
            for (auto& [p, e] : factorize(out.a[i])) holders[p].push_back(i);
        for (auto& [p, who] : holders) {
            if (who.size() == 4) {
                for (int i : who) out.a[i] /= p;
                changed = true;
                break;
            }
            if (who.size() == 3) {
                for (int i = 0; i < 4; ++i) {
                    bool in = std::find(who.begin(), who.end(), i) != who.end();
                    if (in) {
                        out.a[i] /= p;
                        out.coord_c[i] /= Rat(p);
                    } else {
                        out.a[i] *= p;
                    }
                }
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }

    // set membership: complement indices sitting in three sets, drop indices
    // sitting in all four
    int n = static_cast<int>(problem.polys.size());
    for (int idx = 0; idx < n; ++idx) {
        std::vector<int> in;
        for (int i = 0; i < 4; ++i)
            if (std::find(out.sets[i].begin(), out.sets[i].end(), idx) != out.sets[i].end())
                in.push_back(i);
        if (in.size() == 4) {
            for (int i = 0; i < 4; ++i)
                out.sets[i].erase(std::find(out.sets[i].begin(), out.sets[i].end(), idx));
        } else if (in.size() == 3) {
            for (int i = 0; i < 4; ++i) {
                bool member = std::find(in.begin(), in.end(), i) != in.end();
                if (member) {
                    out.sets[i].erase(std::find(out.sets[i].begin(), out.sets[i].end(), idx));
                    out.coord_poly_exp[i][idx] -= 1;
                } else {
                    out.sets[i].push_back(idx);
                }
            }
        }
    }
    for (auto& set : out.sets) std::sort(set.begin(), set.end());

    Int prod = abs(out.a[0] * out.a[1] * out.a[2] * out.a[3]);
    out.M = 8 * prod;
    out.M_primes.push_back(2);
    for (auto& [p, e] : factorize(prod))
        if (p != 2) out.M_primes.push_back(p);
    std::sort(out.M_primes.begin(), out.M_primes.end());
    return out;
}

bool all_same_sign4(const std::array<Int, 4>& a) {
    return (a[0] > 0 && a[1] > 0 && a[2] > 0 && a[3] > 0) ||
           (a[0] < 0 && a[1] < 0 && a[2] < 0 && a[3] < 0);
}

std::array<Int, 4> quadric_coefficients(const QuadricNormalization& norm,
                                        const std::vector<IntPoly>& polys, const Int& t) {
    std::array<Int, 4> c;
    for (int i = 0; i < 4; ++i) {
        c[i] = norm.a[i];
        for (int idx : norm.sets[i]) c[i] *= polys[static_cast<size_t>(idx)](t);
    }
    return c;
}

std::optional<QuadricSolution> quadric_map_back(const QuadricBundleProblem& problem,
                                                const QuadricNormalization& norm,
                                                const std::array<Int, 4>& raw, const Int& t,
                                                const std::string& route) {
    std::array<Rat, 4> mapped;
    for (int i = 0; i < 4; ++i) {
        Rat scale = norm.coord_c[i];
        for (auto& [idx, e] : norm.coord_poly_exp[i]) {
            Int v = problem.polys[static_cast<size_t>(idx)](t);
            if (v == 0) return std::nullopt;
            Rat f(v);
            for (int k = 0; k < std::abs(e); ++k) scale = e > 0 ? Rat(scale * f) : Rat(scale / f);
        }
        mapped[i] = scale * Rat(raw[i]);
    }
    QuadricSolution sol;
    sol.x = integralize(mapped);
    sol.t = t;
    sol.route = route;
    if (quadric_equation_value(problem, sol.x, sol.t) != 0)
        throw internal_error("quadric: mapped solution fails the original equation");
    return sol;
}

constexpr long kPreSearchTMax = 12;
constexpr long kPreSearchRadius = 200;
const std::array<long, 3> kSearchStages{50, 200, 800};

}  // namespace

QuadricOutcome solve_quadric_bundle(const QuadricBundleProblem& problem, const Int& m_max,
                                    int threads) {
    validate_quadric(problem);
    if (all_same_sign4(problem.a))
        return Obstruction{Place::infinity(), "coefficients all of one sign"};

    QuadricNormalization norm = normalize_quadric(problem);
    DeltaClass cls = classify_delta(problem);

    if (cls == DeltaClass::square_over_closure_only)
        return Unsupported{
            "discriminant is a square only over the algebraic closure; prime specialization "
            "cannot certify local solubility for this shape"};

    if (cls == DeltaClass::square_in_base) {
        // quadric fibres are products of the conic fibres cut out by x0 = 0
        std::array<int, 3> nonempty{};
        int count = 0;
        for (int i = 1; i < 4; ++i)
            if (!norm.sets[i].empty()) nonempty[count++] = i;
        if (count < 2)
            return Unsupported{
                "conic reduction needs two polynomial blocks among the last three coordinates"};
        std::array<int, 3> order{};
        int pos = 0;
        for (int i = 0; i < count; ++i) order[pos++] = nonempty[i];
        for (int i = 1; i < 4; ++i)
            if (norm.sets[i].empty()) order[pos++] = i;
        ConicBundleProblem conic;
        for (int k = 0; k < 3; ++k) {
            conic.a[k] = norm.a[order[k]];
            for (int idx : norm.sets[order[k]])
                conic.blocks[k].push_back(problem.polys[static_cast<size_t>(idx)]);
        }
        ConicOutcome sub = solve_conic_bundle(conic, m_max, threads);
        if (std::holds_alternative<Obstruction>(sub)) return std::get<Obstruction>(sub);
        if (std::holds_alternative<Exhausted>(sub)) return std::get<Exhausted>(sub);
        const ConicSolution& cs = std::get<ConicSolution>(sub);
        std::array<Int, 4> raw{};
        raw[0] = 0;
        for (int k = 0; k < 3; ++k) raw[order[k]] = cs.x[k];
        auto mapped = quadric_map_back(problem, norm, raw, cs.t, "conic_reduction");
        if (!mapped) throw internal_error("quadric: conic reduction produced degenerate value");
        mapped->conic = cs;
        mapped->cert = cs.cert;
        return *mapped;
    }

    // nonsquare discriminant: direct bounded search over small t first
    Int pre_t_cap = (m_max > 0) ? std::min(Int(kPreSearchTMax), m_max) : Int(kPreSearchTMax);
    for (Int t = 0; t <= pre_t_cap; ++t) {
        std::array<Int, 4> c = quadric_coefficients(norm, problem.polys, t);
        if (c[0] == 0 || c[1] == 0 || c[2] == 0 || c[3] == 0) continue;
        Int maxc = std::max({Int(abs(c[0])), Int(abs(c[1])), Int(abs(c[2])), Int(abs(c[3]))});
        Int radius = std::min(Int(kPreSearchRadius), Int(40 * maxc));
        auto hit = quaternary_bounded_search(QuaternaryForm{c}, radius, threads);
        if (hit.found) {
            auto mapped = quadric_map_back(problem, norm, hit.x, t, "direct_search");
            if (mapped) {
                mapped->search_radius_heuristic = true;
                return *mapped;
            }
        }
    }

    require_schinzel(problem.polys);

    // reindex: single-occurrence polynomials first
    int n = static_cast<int>(problem.polys.size());
    std::vector<int> occurrence(n, 0);
    for (const auto& set : norm.sets)
        for (int idx : set) occurrence[static_cast<size_t>(idx)]++;
    std::vector<int> perm;  // internal slot -> original index
    for (int i = 0; i < n; ++i)
        if (occurrence[i] == 1) perm.push_back(i);
    int r = static_cast<int>(perm.size());
    for (int i = 0; i < n; ++i)
        if (occurrence[i] == 0) perm.push_back(i);
    for (int i = 0; i < n; ++i)
        if (occurrence[i] == 2) perm.push_back(i);
    if (r == 0)
        return Unsupported{"no polynomial occurs in exactly one coordinate set"};

    std::vector<IntPoly> tuple;
    for (int idx : perm) tuple.push_back(problem.polys[static_cast<size_t>(idx)]);
    std::vector<int> occ_perm;
    for (int idx : perm) occ_perm.push_back(std::max(occurrence[static_cast<size_t>(idx)], 1));

    // admissible residues
    Int used_m_max = 0;
    bool any_unit = false;
    for (Int m0 = 0; m0 < norm.M; ++m0) {
        bool units = true;
        std::vector<Int> vals(static_cast<size_t>(n));
        for (int i = 0; i < n && units; ++i) {
            vals[static_cast<size_t>(i)] = problem.polys[static_cast<size_t>(i)](m0);
            Int g;
            mpz_gcd(g.get_mpz_t(), vals[static_cast<size_t>(i)].get_mpz_t(), norm.M.get_mpz_t());
            units = g == 1;
        }
        if (!units) continue;
        any_unit = true;
        std::array<Int, 4> c = quadric_coefficients(norm, problem.polys, m0);
        bool soluble = true;
        for (const Int& p : norm.M_primes)
            if (!quaternary_locally_isotropic(QuaternaryForm{c}, p)) {
                soluble = false;
                break;
            }
        if (!soluble) continue;

        std::vector<Int> residues;
        for (int idx : perm) residues.push_back(vals[static_cast<size_t>(idx)]);
        SearchSpec spec;
        spec.tuple = tuple;
        spec.M = norm.M;
        spec.m0 = m0;
        spec.targets = quadric_targets(norm.a, residues, occ_perm, norm.M, norm.M_primes);
        spec.m_max = m_max;
        used_m_max = spec.m_max > 0 ? spec.m_max : default_m_max(spec);

        Int start = 1;
        for (int attempt = 0; attempt < 25; ++attempt) {
            SearchOutcome found = search(spec, start);
            if (!found.found) break;
            const Certificate& cert = found.cert;
            Int m = cert.m;
            std::array<Int, 4> cm = quadric_coefficients(norm, problem.polys, m);
            // prescribed symbols force local isotropy at the specialized primes
            for (int i = 0; i < n; ++i)
                if (!quaternary_locally_isotropic(QuaternaryForm{cm}, cert.values[static_cast<size_t>(i)]))
                    throw internal_error("quadric: specialized form anisotropic at specialized prime");
            Int maxc = std::max({Int(abs(cm[0])), Int(abs(cm[1])), Int(abs(cm[2])), Int(abs(cm[3]))});
            for (long stage : kSearchStages) {
                Int radius = std::min(Int(stage), Int(40 * maxc));
                auto hit = quaternary_bounded_search(QuaternaryForm{cm}, radius, threads);
                if (hit.found) {
                    auto mapped = quadric_map_back(problem, norm, hit.x, m, "specialization");
                    if (mapped) {
                        mapped->cert = cert;
                        mapped->search_radius_heuristic = true;
                        return *mapped;
                    }
                }
                if (radius == 40 * maxc) break;
            }
            start = m + 1;
        }
    }
    if (!any_unit)
        return Obstruction{Place::finite(norm.M_primes.front()),
                           "no residue gives unit polynomial values"};
    if (used_m_max == 0)
        return Obstruction{Place::finite(norm.M_primes.front()),
                           "no admissible residue: specialized quadric insoluble at a prime "
                           "dividing the modulus"};
    return Exhausted{used_m_max};
}

// ── reporting ───────────────────────────────────────────────────────────────

namespace {

ojson poly_json(const IntPoly& p) {
    ojson coeffs = ojson::array();
    for (const Int& c : p.coeffs()) coeffs.push_back(j_int(c));
    return ojson{{"coeffs", coeffs}, {"text", p.str()}};
}

ojson height_bound_json(const HeightBoundRecord& rec) {
    return ojson{{"bound", j_interval(rec.bound, 6)},
                 {"max_coordinate", j_int(rec.max_coordinate)},
                 {"within_bound", rec.verdict > 0 ? "yes" : (rec.verdict < 0 ? "no" : "undecided")}};
}

}  // namespace

ojson conic_outcome_to_json(const ConicBundleProblem& problem, const ConicOutcome& outcome) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "conic_bundle_result";
    ojson prob;
    prob["a"] = ojson::array({j_int(problem.a[0]), j_int(problem.a[1]), j_int(problem.a[2])});
    ojson blocks = ojson::array();
    for (const auto& block : problem.blocks) {
        ojson b = ojson::array();
        for (const auto& p : block) b.push_back(poly_json(p));
        blocks.push_back(b);
    }
    prob["blocks"] = blocks;
    j["problem"] = prob;

    if (std::holds_alternative<ConicSolution>(outcome)) {
        const auto& s = std::get<ConicSolution>(outcome);
        j["status"] = "solved";
        j["t"] = j_int(s.t);
        j["x"] = ojson::array({j_int(s.x[0]), j_int(s.x[1]), j_int(s.x[2])});
        j["m0"] = j_int(s.m0);
        j["modulus"] = j_int(s.M);
        j["normalized_a"] = ojson::array(
            {j_int(s.normalized_a[0]), j_int(s.normalized_a[1]), j_int(s.normalized_a[2])});
        j["specialized_form"] =
            ojson::array({j_int(s.specialized_form.f[0]), j_int(s.specialized_form.f[1]),
                          j_int(s.specialized_form.f[2])});
        j["specialized_solution"] =
            ojson::array({j_int(s.specialized_solution.x[0]), j_int(s.specialized_solution.x[1]),
                          j_int(s.specialized_solution.x[2])});
        j["cassels_bound"] = j_int(s.cassels_bound);
        j["certificate"] = certificate_to_json(s.cert);
        j["height_bound"] = height_bound_json(s.height_bound);
    } else if (std::holds_alternative<Obstruction>(outcome)) {
        const auto& o = std::get<Obstruction>(outcome);
        j["status"] = "obstruction";
        j["place"] = to_string(o.place);
        j["detail"] = o.detail;
    } else {
        j["status"] = "exhausted";
        j["m_max"] = j_int(std::get<Exhausted>(outcome).m_max);
    }
    return j;
}

ojson quadric_outcome_to_json(const QuadricBundleProblem& problem, const QuadricOutcome& outcome) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "quadric_bundle_result";
    ojson prob;
    prob["a"] = ojson::array({j_int(problem.a[0]), j_int(problem.a[1]), j_int(problem.a[2]),
                              j_int(problem.a[3])});
    ojson polys = ojson::array();
    for (const auto& p : problem.polys) polys.push_back(poly_json(p));
    prob["polys"] = polys;
    ojson sets = ojson::array();
    for (const auto& s : problem.sets) sets.push_back(s);
    prob["sets"] = sets;
    j["problem"] = prob;

    if (std::holds_alternative<QuadricSolution>(outcome)) {
        const auto& s = std::get<QuadricSolution>(outcome);
        j["status"] = "solved";
        j["route"] = s.route;
        j["t"] = j_int(s.t);
        j["x"] = ojson::array({j_int(s.x[0]), j_int(s.x[1]), j_int(s.x[2]), j_int(s.x[3])});
        if (s.search_radius_heuristic) j["search_radius"] = "heuristic";
        if (s.cert) j["certificate"] = certificate_to_json(*s.cert);
    } else if (std::holds_alternative<Obstruction>(outcome)) {
        const auto& o = std::get<Obstruction>(outcome);
        j["status"] = "obstruction";
        j["place"] = to_string(o.place);
        j["detail"] = o.detail;
    } else if (std::holds_alternative<Exhausted>(outcome)) {
        j["status"] = "exhausted";
        j["m_max"] = j_int(std::get<Exhausted>(outcome).m_max);
    } else {
        j["status"] = "unsupported";
        j["reason"] = std::get<Unsupported>(outcome).reason;
    }
    return j;
}

}  // namespace hf
