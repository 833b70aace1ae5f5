#include "frobg/commands.hpp"

#include "frobg/caustics.hpp"
#include "frobg/symmetry.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace frobg {

namespace {

Real rabs(const Real& x) { return boost::multiprecision::abs(x); }

const Real kResidueTol("1e-3");
const Real kExponentTol("0.05");

std::string decimal(const Real& x) { return to_decimal(x, 8); }

CheckResult boolean_check(const std::string& name, bool ok, const std::string& notes = {}) {
    return CheckResult::measured(name, ok ? Real(0) : Real(1), Real(0), 0, notes);
}

CheckResult failed_check(const std::string& name, const Error& err) {
    CheckResult r = CheckResult::measured(name, Real(1), Real(0), 0, err.what());
    return r;
}

OneForm dG_of(const GJet& jet) {
    return [&jet](const std::vector<Real>& p, const std::vector<Real>& v) {
        return dG_form(jet, std::span<const Real>(p), std::span<const Real>(v));
    };
}

OneForm tau_of(const Prepotential& P) {
    return [&P](const std::vector<Real>& p, const std::vector<Real>& v) {
        return tau2d_form(P, std::span<const Real>(p), std::span<const Real>(v));
    };
}

OneForm logj_of(const Prepotential& P) {
    return [&P](const std::vector<Real>& p, const std::vector<Real>& v) {
        return dlogJ_form(P, std::span<const Real>(p), std::span<const Real>(v));
    };
}

struct CausticBase {
    std::vector<Real> point;
    std::size_t coord = 0;
};

// Newton along one coordinate from seeded starts until kappa = 0 and the
// punctured ray next to the point is semisimple.
std::optional<CausticBase> locate_caustic(const Prepotential& P, const Expression& kappa, PointSampler& rng,
                                          std::optional<std::size_t> ray, const Real& eps0) {
    const std::size_t n = P.dimension();
    std::vector<Expression> grad;
    for (std::size_t a = 0; a < n; ++a) grad.push_back(diff(kappa, a));
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Real> x;
        for (const auto& q : rng.next_point(n)) x.emplace_back(q);
        try {
            std::size_t coord = 0;
            if (ray) {
                coord = *ray;
            } else {
                Real best = -1;
                for (std::size_t a = 0; a < n; ++a) {
                    if (a == P.identity()) continue;
                    const Real g = rabs(evaluate_as<Real>(grad[a], std::span<const Real>(x)));
                    if (g > best) {
                        best = g;
                        coord = a;
                    }
                }
            }
            bool converged = false;
            for (int it = 0; it < 200 && !converged; ++it) {
                const Real f = evaluate_as<Real>(kappa, std::span<const Real>(x));
                if (rabs(f) < Real("1e-45")) {
                    converged = true;
                    break;
                }
                const Real fp = evaluate_as<Real>(grad[coord], std::span<const Real>(x));
                if (fp == 0) break;
                Real step = f / fp;
                if (rabs(step) > 1) step = step > 0 ? Real(1) : Real(-1);
                x[coord] -= step;
            }
            if (!converged) continue;
            if (rabs(evaluate_as<Real>(grad[coord], std::span<const Real>(x))) < Real("1e-6")) continue;
            std::vector<Real> dir(n, Real(0));
            dir[coord] = 1;
            for (int level = 0; level < 3; ++level) {
                auto q = x;
                q[coord] += eps0 / Real(1L << level);
                canonical_frame(P, std::span<const Real>(q));
            }
            return CausticBase{x, coord};
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

CheckResult residue_check(const std::string& name, const std::function<ResidueEstimate()>& probe,
                          const Rational& expected, const std::string& extra, Real* value = nullptr) {
    try {
        const ResidueEstimate r = probe();
        if (value) *value = r.value;
        return CheckResult::measured(name, rabs(r.value - Real(expected)), kResidueTol, r.raw.size(),
                                     "residue " + decimal(r.value) + ", expected " + to_string(expected) +
                                         ", extrapolation error " + to_decimal(r.error, 3) + extra);
    } catch (const Error& err) {
        return failed_check(name, err);
    }
}

std::string coordinate_name(std::size_t a) { return "t" + std::to_string(a + 1); }

std::vector<std::vector<Real>> real_points(std::size_t n, std::size_t count, std::uint64_t seed) {
    PointSampler rng(seed, Rational(1), 1000);
    std::vector<std::vector<Real>> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Real> p;
        for (const auto& q : rng.next_point(n)) p.emplace_back(q);
        out.push_back(std::move(p));
    }
    return out;
}

std::string complex_string(const Complex& z) {
    std::string s = to_decimal(z.real(), 12);
    if (z.imag() != 0) s += (z.imag() < 0 ? " - " : " + ") + to_decimal(rabs(z.imag()), 12) + "i";
    return s;
}

std::string join_complex(const std::vector<Complex>& zs) {
    std::string s;
    for (std::size_t i = 0; i < zs.size(); ++i) s += (i ? ", " : "") + complex_string(zs[i]);
    return s;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"wdvv", "getzler", "bo7", "bo8", "bo9", "gamma", "caustic-residues"};
    return names;
}

std::vector<CheckResult> caustic_checks(const ModelEntry& e, std::uint64_t seed, bool exponents,
                                        std::optional<std::size_t> ray) {
    const Prepotential& P = e.model;
    const std::size_t n = P.dimension();
    const GJet jet(e.G, n);
    const bool two_d = n == 2;
    std::vector<CheckResult> out;
    PointSampler rng(seed, Rational(1), 1000);
    const Real eps0 = Real(1) / 64;

    for (std::size_t i = 0; i < e.caustics.size(); ++i) {
        const auto& c = e.caustics[i];
        const std::string tag = "K" + std::to_string(i + 1) + ":";
        const auto base = locate_caustic(P, c.kappa, rng, ray, eps0);
        if (!base) {
            out.push_back(CheckResult::skipped(tag + "residues", "no semisimple real point found next to " + c.kappa.to_string()));
            continue;
        }
        std::vector<Real> dir(n, Real(0));
        dir[base->coord] = 1;
        std::ostringstream where;
        where << ", base (";
        for (std::size_t a = 0; a < n; ++a) where << (a ? ", " : "") << to_decimal(base->point[a], 8);
        where << "), ray " << coordinate_name(base->coord);
        const Rational N(c.N);
        const auto probe = [&](const OneForm& form) {
            return [&, form] { return residue_probe(form, c.kappa, base->point, dir, eps0); };
        };
        Real dg = 0, lj = 0, tau = 0;
        out.push_back(residue_check(tag + "dG", probe(dG_of(jet)), -(N - 2) * (N - 3) / (24 * N), where.str(), &dg));
        out.push_back(residue_check(tag + "dlogJ", probe(logj_of(P)), -(N - 2) / 2, "", &lj));
        if (two_d) {
            out.push_back(residue_check(tag + "tau", probe(tau_of(P)), -(N - 2) * (N - 2) / (16 * N), "", &tau));
            out.push_back(CheckResult::measured(tag + "sum-rule", rabs(dg - (tau - lj / 24)), kResidueTol, 3,
                                                "res dG = res dlog tau - res dlog J / 24"));
        }
        if (exponents) {
            try {
                const auto fit = collision_exponent(P, [&](const Real& s) {
                    auto q = base->point;
                    q[base->coord] += s;
                    return q;
                });
                out.push_back(CheckResult::measured(tag + "exponent", rabs(fit.exponent - Real(c.N)), kExponentTol,
                                                    fit.samples,
                                                    "N fit " + decimal(fit.exponent) + ", expected " +
                                                        std::to_string(c.N) + ", line rms " + to_decimal(fit.rms, 3)));
            } catch (const Error& err) {
                out.push_back(failed_check(tag + "exponent", err));
            }
        }
    }

    if (e.n_log) {
        const std::size_t coord = n - 1;
        const Rational Nl(*e.n_log);
        const std::string tag = "Klog:";
        std::vector<Real> base;
        for (const auto& q : rng.next_point(n)) base.emplace_back(q);
        const std::string note = ", chart y = exp(" + coordinate_name(coord) + "); label assignment lemma4-labels-swapped";
        const auto probe = [&](const OneForm& form) {
            return [&, form] { return residue_probe_log(form, coord, base); };
        };
        Real dg = 0, lj = 0, tau = 0;
        out.push_back(residue_check(tag + "dG", probe(dG_of(jet)), -Nl / 24, note, &dg));
        out.push_back(residue_check(tag + "dlogJ", probe(logj_of(P)), -Nl / 2, "", &lj));
        if (two_d) {
            out.push_back(residue_check(tag + "tau", probe(tau_of(P)), -Nl / 16, "", &tau));
            out.push_back(CheckResult::measured(tag + "sum-rule", rabs(dg - (tau - lj / 24)), kResidueTol, 3,
                                                "res dG = res dlog tau - res dlog J / 24"));
        }
        if (exponents) {
            try {
                const auto fit = collision_exponent(P, [&](const Real& s) {
                    auto q = base;
                    q[coord] = log(s);
                    return q;
                });
                out.push_back(CheckResult::measured(tag + "exponent", rabs(fit.exponent - Real(Nl)), kExponentTol,
                                                    fit.samples,
                                                    "N fit " + decimal(fit.exponent) + ", expected " +
                                                        std::to_string(*e.n_log) + " along y = s"));
            } catch (const Error& err) {
                out.push_back(failed_check(tag + "exponent", err));
            }
        }
    }
    if (out.empty()) out.push_back(CheckResult::skipped("caustics", "model carries no caustic data"));
    return out;
}

VerificationReport cmd_verify(const ModelEntry& e, const VerifyOptions& opt) {
    std::vector<std::string> checks = opt.checks.empty() ? known_checks() : opt.checks;
    for (const auto& c : checks)
        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
            fail(ErrorCode::UnknownCheck, "unknown check '" + c + "'");
    auto wanted = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };

    const Prepotential& P = e.model;
    VerificationReport r;
    r.model = e.label();
    r.seed = opt.seed;
    r.precision = precision();
    const auto points = sample_points(P, e.G, opt.points, opt.seed);

    // Checks run in the fixed order of known_checks so reports do not depend on the --checks order.
    if (wanted("wdvv")) {
        Real worst = 0;
        bool exact = true;
        for (const auto& p : points) {
            const Scalar s = wdvv_residual(P, p);
            exact = exact && s.is_exact();
            worst = std::max(worst, rabs(s.to_real()));
        }
        r.checks.push_back(CheckResult::measured("wdvv", worst, opt.tol, points.size(), exact ? "exact" : "floating"));
    }
    if (wanted("getzler")) {
        const Scalar s = getzler_residual(P, e.G, points, GetzlerMode::Symmetrized, opt.seed);
        r.checks.push_back(CheckResult::measured("getzler", rabs(s.to_real()), opt.tol, points.size(),
                                                 std::string(s.is_exact() ? "exact" : "floating") + ", G = " +
                                                     e.G.to_string()));
    }
    if (wanted("bo7")) {
        r.checks.push_back(boolean_check("bo7", check_bo7(e.G, P), "d G / d " + coordinate_name(P.identity()) + " = 0 symbolically"));
    }
    const Rational theorem1 = gamma_theorem1(P);
    const std::optional<Rational> euler_const = euler_derivative_constant(P, e.G);
    if (wanted("bo8")) {
        Real worst = 0;
        for (const auto& p : points) {
            const IdentityCheck ic = check_bo8(P, e.G, p, opt.tol);
            worst = std::max(worst, rabs(ic.lhs.to_real() - ic.rhs.to_real()));
        }
        std::string note = "rhs " + to_string(theorem1);
        if (euler_const) note = "E(G) = " + to_string(*euler_const) + " exactly, " + note;
        r.checks.push_back(CheckResult::measured("bo8", worst, opt.tol, points.size(), note));
    }
    if (wanted("bo9")) {
        for (int k : {2, 3}) {
            Real worst = 0;
            for (const auto& p : points) {
                const IdentityCheck ic = check_bo9(P, e.G, k, p, opt.tol);
                const Real rhs = ic.rhs.to_real();
                worst = std::max(worst, rabs(ic.lhs.to_real() - rhs) / std::max(Real(1), rabs(rhs)));
            }
            r.checks.push_back(CheckResult::measured("bo9:k=" + std::to_string(k), worst, opt.tol, points.size(),
                                                     "relative to max(1, |rhs|)"));
        }
    }
    if (wanted("gamma")) {
        GammaSummary g;
        g.theorem1 = theorem1;
        g.table_value = e.gamma;
        Real worst = rabs(Real(theorem1 - e.gamma));
        if (euler_const) {
            g.euler_applied = Scalar(*euler_const);
            worst = std::max(worst, rabs(Real(*euler_const - theorem1)));
        } else if (!points.empty()) {
            const IdentityCheck ic = check_bo8(P, e.G, points.front(), opt.tol);
            g.euler_applied = ic.lhs;
            worst = std::max(worst, rabs(ic.lhs.to_real() - Real(theorem1)));
        }
        g.consistent = worst <= opt.tol;
        r.gamma = g;
        r.checks.push_back(CheckResult::measured("gamma", worst, opt.tol, euler_const ? 0 : 1,
                                                 "from charges " + to_string(theorem1) + ", stored " + to_string(e.gamma)));
    }
    if (wanted("caustic-residues")) {
        for (auto& c : caustic_checks(e, opt.seed, false)) {
            c.name = "caustic-residues/" + c.name;
            r.checks.push_back(std::move(c));
        }
    }
    r.metadata["F"] = P.F().to_string();
    r.metadata["G"] = e.G.to_string();
    if (const auto& d = P.charge_d()) r.metadata["d"] = to_string(*d);
    for (std::size_t i = 0; i < e.notes.size(); ++i) r.metadata["note" + std::to_string(i + 1)] = e.notes[i];
    return r;
}

VerificationReport cmd_caustic(const ModelEntry& e, const CausticOptions& opt) {
    if (opt.ray && *opt.ray >= e.model.dimension()) fail(ErrorCode::Usage, "ray coordinate out of range");
    VerificationReport r;
    r.model = e.label();
    r.seed = opt.seed;
    r.precision = precision();
    r.checks = caustic_checks(e, opt.seed, true, opt.ray);
    for (std::size_t i = 0; i < e.caustics.size(); ++i)
        r.metadata["K" + std::to_string(i + 1)] =
            e.caustics[i].kappa.to_string() + " (N = " + std::to_string(e.caustics[i].N) + ")";
    if (e.n_log) r.metadata["Klog"] = coordinate_name(e.model.dimension() - 1) + " -> -infinity (N_log = " + std::to_string(*e.n_log) + ")";
    return r;
}

VerificationReport cmd_lg(const LgOptions& opt) {
    VerificationReport r;
    r.model = "lg(k=" + std::to_string(opt.k) + ",m=" + std::to_string(opt.m) + ")";
    r.seed = opt.seed;
    r.precision = precision();

    std::vector<Complex> a = opt.coeffs;
    if (a.empty()) {
        PointSampler rng(opt.seed, Rational(1), 64);
        for (int j = 0; j < opt.k + opt.m; ++j) a.emplace_back(Real(rng.next_rational()), Real(rng.next_rational()));
        a.back() += Complex(Real(2));
    }
    const Superpotential S(opt.k, opt.m, a);
    const auto x = critical_points(S);
    const auto u = critical_values(S);
    Real worst = 0;
    for (const auto& p : x) worst = std::max(worst, abs(S.derivative(p)));
    r.checks.push_back(CheckResult::measured("critical-points", worst, Real("1e-12"), x.size(), "max |F'(x_i)|"));
    r.metadata["coefficients"] = join_complex(a);
    r.metadata["critical_points"] = join_complex(x);
    r.metadata["critical_values"] = join_complex(u);
    r.metadata["caustic_indicator"] = complex_string(lg_caustic_indicator(S));

    if (opt.k == 1 && opt.m == 1) {
        // a_1 = t1, a_2 = r exp(r t2) against the CP1 canonical coordinates.
        Real diff = 0;
        PointSampler rng(opt.seed, Rational(1), 1000);
        for (long rr = 1; rr <= 3; ++rr) {
            const auto cp1 = get_model("cp1", {{"r", Rational(rr)}});
            const std::vector<Real> t{Real(rng.next_rational()), Real(rng.next_rational())};
            const auto v = canonical_coordinates(cp1.model, std::span<const Real>(t));
            const auto w = critical_values(Superpotential(1, 1, {Complex(t[0]), Complex(Real(rr) * exp(Real(rr) * t[1]))}));
            for (std::size_t i = 0; i < 2; ++i) diff = std::max(diff, abs(v[i] - w[i]));
        }
        r.checks.push_back(CheckResult::measured("cp1-identification", diff, Real("1e-40"), 3,
                                                 "a1 = t1, a2 = r exp(r t2), r = 1..3"));
    }

    const std::size_t paths = opt.sweep ? opt.paths : 1;
    for (std::size_t i = 0; i < paths; ++i) {
        const std::uint64_t seed = opt.seed + i;
        const std::string name = "path-" + std::to_string(seed);
        try {
            const auto fit = lg_collision_exponent(transversal_path(opt.k, opt.m, seed));
            r.checks.push_back(CheckResult::measured(name, rabs(fit.exponent - 3), Real("0.1"), fit.samples,
                                                     "N fit " + decimal(fit.exponent) + ", line rms " + to_decimal(fit.rms, 3)));
        } catch (const Error& err) {
            std::string note = err.what();
            if (err.code() == ErrorCode::NoCollision) {
                try {
                    const auto fit = lg_collision_exponent(boundary_path(opt.k, opt.m, seed));
                    note += "; boundary path a_{k+m} = s gives N fit " + decimal(fit.exponent);
                } catch (const Error&) {
                }
            }
            r.checks.push_back(CheckResult::measured(name, Real(1), Real(0), 0, note));
        }
    }
    return r;
}

VerificationReport cmd_symmetry(const ModelEntry& e, const SymmetryOptions& opt) {
    VerificationReport r;
    r.model = e.label();
    r.seed = opt.seed;
    r.precision = precision();
    const Prepotential& P = e.model;
    const std::size_t n = P.dimension();

    if (opt.inversion) {
        try {
            const InversionResult inv = transform_g_inversion(e.G, P);
            r.checks.push_back(boolean_check("inversion-preconditions", true, "linear Euler field, d = " + to_string(*P.charge_d())));
            r.metadata["G_hat"] = inv.G.to_string();
            r.metadata["gamma_hat"] = to_string(e.gamma + inv.gamma_shift);
            r.metadata["tau_rule"] = inv.tau_rule;
        } catch (const Error& err) {
            r.checks.push_back(failed_check("inversion-preconditions", err));
        }
    }
    if (opt.legendre) {
        const std::size_t kappa = *opt.legendre;
        if (kappa >= n) fail(ErrorCode::Usage, "Legendre index out of range");
        const GCandidate pulled = transform_g_legendre(e.G, P, kappa);
        const Rational gamma_hat = transform_gamma_legendre(e.gamma, n, charges(P).q[kappa]);
        r.metadata["kappa"] = coordinate_name(kappa);
        r.metadata["G_hat_pullback"] = pulled.to_string();
        r.metadata["gamma_hat"] = to_string(gamma_hat);
        r.metadata["tau_rule"] = "tau^_I = tau_I";

        static const std::map<std::pair<std::string, std::size_t>, std::string> counterparts{
            {{"eaw_a2", 1}, "legendre_s2_a2"}, {{"eaw_a2", 2}, "legendre_s3_a2"}};
        std::optional<ModelEntry> hat;
        if (kappa == P.identity())
            hat = e;
        else if (auto it = counterparts.find({P.name(), kappa}); it != counterparts.end())
            hat = get_model(it->second);
        if (!hat) {
            r.checks.push_back(CheckResult::skipped("legendre", "no hatted prepotential registered for this transform"));
            return r;
        }
        r.metadata["hatted_model"] = hat->label();
        const auto pts = real_points(n, opt.points, opt.seed);
        try {
            const LegendreCheck chk = legendre_check(P, hat->model, kappa, pts);
            std::string offsets;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a; b < n; ++b)
                    if (rabs(chk.offset(a, b)) > opt.tol)
                        offsets += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")=" + decimal(chk.offset(a, b));
            r.checks.push_back(CheckResult::measured("legendre-third-derivatives", chk.residual, opt.tol, chk.points,
                                                     "through the inverse Jacobian"));
            r.checks.push_back(CheckResult::measured("legendre-second-derivatives", chk.offset_spread, opt.tol, chk.points,
                                                     "agree up to a constant quadratic term;" +
                                                         (offsets.empty() ? std::string(" offset 0") : " offset" + offsets)));
            r.checks.push_back(CheckResult::measured("g-transform", legendre_g_residual(pulled, P, kappa, hat->G, pts),
                                                     opt.tol, pts.size(), "gradients against " + hat->G.to_string()));
        } catch (const Error& err) {
            r.checks.push_back(failed_check("legendre", err));
            return r;
        }
        const Scalar hg = getzler_residual(hat->model, hat->G, sample_points(hat->model, hat->G, opt.points, opt.seed));
        r.checks.push_back(CheckResult::measured("hatted-getzler", rabs(hg.to_real()), Real("1e-9"), opt.points));
        r.checks.push_back(boolean_check("gamma-transform", gamma_hat == hat->gamma,
                                         "gamma^ = " + to_string(gamma_hat) + ", stored " + to_string(hat->gamma)));
        const auto [E_hat, d_hat] = recover_euler_field(hat->model.F(), n, hat->model.identity());
        const GJet jet(hat->G, n);
        Real worst = 0;
        std::size_t used = 0;
        for (const auto& p : sample_points(hat->model, hat->G, opt.points, opt.seed)) {
            const auto q = p.reals();
            const auto g = jet.gradient<Real>(std::span<const Real>(q));
            const auto Ev = E_hat.at<Real>(std::span<const Real>(q));
            Real eg = 0;
            for (std::size_t a = 0; a < n; ++a) eg += Ev[a] * g[a];
            worst = std::max(worst, rabs(eg - Real(gamma_hat)));
            ++used;
        }
        r.checks.push_back(CheckResult::measured("hatted-euler", worst, opt.tol, used,
                                                 "recovered hatted Euler field applied to G^, d^ = " + to_string(d_hat)));
    }
    if (!opt.inversion && !opt.legendre) fail(ErrorCode::Usage, "choose --legendre K or --inversion");
    return r;
}

nlohmann::ordered_json cmd_list_json() {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& name : list_models()) {
        const ModelEntry e = get_model(name);
        nlohmann::ordered_json j;
        j["name"] = name;
        j["label"] = e.label();
        j["dimension"] = e.model.dimension();
        j["F"] = e.model.F().to_string();
        j["G"] = e.G.to_string();
        j["gamma"] = to_string(e.gamma);
        arr.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["models"] = std::move(arr);
    auto refs = nlohmann::ordered_json::array();
    for (const auto& c : coxeter_references()) {
        nlohmann::ordered_json j;
        j["group"] = c.group;
        j["caustic_types"] = c.caustic_types;
        j["G"] = c.g_function;
        j["gamma"] = to_string(c.gamma);
        refs.push_back(std::move(j));
    }
    out["coxeter_references"] = std::move(refs);
    return out;
}

std::string cmd_list_text() {
    std::ostringstream out;
    for (const auto& name : list_models()) {
        const ModelEntry e = get_model(name);
        out << e.label() << "  n=" << e.model.dimension() << "  gamma=" << to_string(e.gamma) << "  G = " << e.G.to_string()
            << '\n';
    }
    out << "reference rows:";
    for (const auto& c : coxeter_references()) out << ' ' << c.group;
    out << '\n';
    return out.str();
}

}  // namespace frobg
