#include "nicholson/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "nicholson/bounds.hpp"
#include "nicholson/csv.hpp"
#include "nicholson/errors.hpp"
#include "nicholson/iterate.hpp"
#include "nicholson/verify.hpp"

namespace nicholson {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());
}

CsvTable two_column(std::vector<double> t, std::vector<double> v) {
    return CsvTable{{"t", "value"}, {std::move(t), std::move(v)}};
}

// Derivation shared by every subcommand; an (A1) failure is the only one that throws.
DerivedConstants derive(const RunConfig& cfg) {
    return derive_constants(cfg.params, cfg.overrides);
}

void print_constants(std::ostream& out, const DerivedConstants& c) {
    out << "kappa=" << format_double(c.kappa) << '\n'
        << "lambda=" << format_double(c.lambda) << '\n'
        << "beta=" << format_double(c.beta) << '\n'
        << "epsilon=" << format_double(c.epsilon) << '\n'
        << "alpha=" << format_double(c.alpha) << '\n'
        << "t0=" << format_double(c.t0) << '\n'
        << "sigma0=" << format_double(c.sigma0) << '\n'
        << "beta_lo=" << format_double(c.beta_lo) << '\n'
        << "beta_hi=" << format_double(c.beta_hi) << '\n';
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InfeasibleError& e) {
        err << "infeasible [" << e.condition() << "]: " << e.what() << '\n';
        return kExitFailed;
    } catch (const MonotonicityBreach& e) {
        err << "monotonicity breach: step " << e.step() << ", node " << e.node() << ": "
            << e.what() << '\n';
        return kExitFailed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        CheckReport rep;
        try {
            const auto c = derive(cfg);
            rep = check_hypotheses(cfg.params, c);
        } catch (const InfeasibleError& e) {
            rep.add(make_strict_item(e.condition(), cfg.params.ratio() - 1.0, e.what()));
        }
        print_report(out, rep);
        const bool ok = rep.all_pass();
        out << (ok ? "ALL REQUIRED CONDITIONS PASS" : "SOME REQUIRED CONDITIONS FAIL") << '\n';
        return ok ? kExitOk : kExitFailed;
    });
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        const auto c = derive(cfg);
        const auto u = UpperSolution::from(c);
        const auto l = LowerSolution::from(c);
        const auto& g = cfg.grid;
        ensure_dir(cfg.outputs);

        std::vector<double> t, up, lo, compat;
        std::vector<double> ru_t, ru, rl_t, rl;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double s = g.time(i);
            t.push_back(s);
            up.push_back(u.value(s));
            lo.push_back(l.value(s));
            compat.push_back(std::exp(c.beta * s) * (up.back() - lo.back()));
            if (std::abs(s) >= 0.5 * g.h) {
                ru_t.push_back(s);
                ru.push_back(residual_upper(s, u, cfg.params));
            }
            if (std::abs(s - l.t0) >= 0.5 * g.h) {
                rl_t.push_back(s);
                rl.push_back(residual_lower(s, l, cfg.params));
            }
        }
        write_csv(cfg.outputs / "upper.csv", two_column(t, up));
        write_csv(cfg.outputs / "lower.csv", two_column(t, lo));
        write_csv(cfg.outputs / "residual_upper.csv", two_column(ru_t, ru));
        write_csv(cfg.outputs / "residual_lower.csv", two_column(rl_t, rl));
        write_csv(cfg.outputs / "compat.csv", two_column(t, compat));

        CheckReport rep;
        rep.add(verify_upper(u, cfg.params, g).item());
        rep.add(verify_lower(l, cfg.params, g).item());
        rep.append(check_gamma_membership(u, c.beta, kDefaultShifts, g));
        rep.append(check_compatibility(u, l, c.beta, g));
        print_report(out, rep);
        return rep.all_pass() ? kExitOk : kExitFailed;
    });
}

int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        const auto c = derive(cfg);
        IterateOptions opt;
        opt.tol = cfg.tol;
        opt.max_iter = cfg.max_iter;
        opt.save_count = cfg.save_count;
        opt.check_weighted = cfg.check_weighted;
        opt.require_hypotheses = cfg.require_hypotheses;
        ensure_dir(cfg.outputs);
        const auto res = iterate(cfg.params, c, cfg.grid, opt);

        const auto& g = cfg.grid;
        CsvTable iters;
        iters.header.push_back("t");
        std::vector<double> t(g.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.time(i);
        iters.columns.push_back(t);
        for (std::size_t k = 0; k < res.saved.size(); ++k) {
            iters.header.push_back("x" + std::to_string(k));
            const auto v = res.saved[k].values();
            iters.columns.emplace_back(v.begin(), v.end());
        }
        write_csv(cfg.outputs / "iterates.csv", iters);
        const auto fv = res.final.values();
        write_csv(cfg.outputs / "final.csv", two_column(t, {fv.begin(), fv.end()}));

        const auto resid = dde_residual(res.final, cfg.params);
        std::ofstream meta(cfg.outputs / "run.txt", std::ios::binary | std::ios::trunc);
        print_constants(meta, c);
        meta << "tol=" << format_double(cfg.tol) << '\n'
             << "max_iter=" << cfg.max_iter << '\n'
             << "steps=" << res.steps << '\n'
             << "converged=" << (res.converged ? "true" : "false") << '\n'
             << "tail_lead=" << format_double(UpperSolution::from(c).junction()) << '\n'
             << "tail_budget=" << format_double(res.tail_budget) << '\n'
             << "residual_sup=" << format_double(resid.sup_residual) << '\n'
             << "residual_argmax_t=" << format_double(resid.argmax_t) << '\n'
             << "endpoint_left=" << format_double(resid.left_error) << '\n'
             << "endpoint_right=" << format_double(resid.right_error) << '\n'
             << "gaps=";
        for (std::size_t k = 0; k < res.gaps.size(); ++k) {
            meta << (k ? "," : "") << format_double(res.gaps[k]);
        }
        meta << '\n';

        out << "steps=" << res.steps << " converged=" << (res.converged ? "true" : "false")
            << " last_gap=" << (res.gaps.empty() ? std::string("n/a") : format_double(res.gaps.back()))
            << " residual_sup=" << format_double(resid.sup_residual) << '\n';
        return kExitOk;
    });
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& vopt, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        const auto c = derive(cfg);
        std::optional<Profile> prof;
        if (vopt.run_pipeline) {
            IterateOptions opt;
            opt.tol = cfg.tol;
            opt.max_iter = cfg.max_iter;
            opt.require_hypotheses = cfg.require_hypotheses;
            prof = iterate(cfg.params, c, cfg.grid, opt).final;
        } else {
            const fs::path path = vopt.profile.value_or(cfg.outputs / "final.csv");
            if (!fs::exists(path)) throw ConfigError("no profile at " + path.string());
            prof = profile_from_csv(read_csv(path), LeftTail{c.lambda, std::nullopt}, c.kappa);
        }

        const auto resid = dde_residual(*prof, cfg.params);
        out << "sup_residual=" << format_double(resid.sup_residual) << '\n'
            << "argmax_t=" << format_double(resid.argmax_t) << '\n'
            << "endpoint_left=" << format_double(resid.left_error) << '\n'
            << "endpoint_right=" << format_double(resid.right_error) << '\n';
        bool ok = resid.sup_residual <= kSolutionBudget;

        const auto& g = prof->grid();
        const double t_end = std::min(10.0, g.t_max);
        const double dt = 0.5 * g.h;
        if (g.t_min <= -cfg.params.max_delay() && t_end > 0.0) {
            const auto cc = cross_check(*prof, cfg.params, 0.0, t_end, dt);
            out << "cross_check_max_deviation=" << format_double(cc.max_deviation) << '\n'
                << "cross_check_at=" << format_double(cc.at) << '\n';
            ok = ok && cc.max_deviation <= kSolutionBudget;
        } else {
            out << "cross_check=skipped (window does not cover [-r, 0])\n";
        }
        const auto asym = asymptotic_check(*prof, c.kappa, 1e-3 * c.kappa, 1e-3 * c.kappa);
        print_report(out, asym);
        out << (ok ? "VERIFIED" : "NOT VERIFIED") << '\n';
        return ok ? kExitOk : kExitFailed;
    });
}

}  // namespace nicholson
