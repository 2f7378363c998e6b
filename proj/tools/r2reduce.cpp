/*
   Copyright 2026 The r2reduce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
// r2reduce: list reduction rules, evaluate reductions and applications, and
// run oracle verification sweeps.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "r2/applications.hpp"
#include "r2/catalog.hpp"
#include "r2/reducer.hpp"
#include "r2/report.hpp"

namespace {

using namespace r2;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInapplicable = 2;
constexpr int kExitNotConverged = 3;

int default_jobs() {
    if (const char* env = std::getenv("R2REDUCE_JOBS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct EvalOptions {
    std::string target;
    std::optional<int> n, m, nu;
    double a = 0, b = 0, c = 0, h_re = 0, h_im = 0, j = 0, p = 0, q = 0;
    double f_coeff = 1, f_mu = 0, f_sigma = 0;
    double eta1 = 1, eta2 = 1, x2 = 1, k = 0, kx = 0, k_fermi = 1;
    double rel = 1e-10, abs = 1e-14;
    long long max_evals = 2000000;
    bool oracle = false;
    std::string format = "human";
};

struct Output {
    std::string target;
    std::string rule_id;
    QuadResult result;
    std::optional<QuadResult> oracle;
};

void print_eval(const Output& o, Format format) {
    if (format == Format::Json) {
        nlohmann::ordered_json j;
        j["target"] = o.target;
        if (!o.rule_id.empty()) j["rule_id"] = o.rule_id;
        j["result"] = quad_to_json(o.result);
        if (o.oracle) j["oracle"] = quad_to_json(*o.oracle);
        std::cout << j.dump(2) << '\n';
        return;
    }
    auto value = [](Complex z) {
        std::string s = format_number(z.real());
        if (z.imag() != 0.0) s += (z.imag() < 0 ? "" : "+") + format_number(z.imag()) + "i";
        return s;
    };
    if (format == Format::Csv) {
        std::cout << "target,rule_id,value_re,value_im,abs_error_estimate,evaluations,converged\n"
                  << o.target << ',' << o.rule_id << ',' << format_number(o.result.value.real()) << ','
                  << format_number(o.result.value.imag()) << ',' << format_number(o.result.abs_error_estimate) << ','
                  << o.result.evaluations << ',' << (o.result.converged ? "true" : "false") << '\n';
        return;
    }
    std::cout << o.target;
    if (!o.rule_id.empty() && o.rule_id != o.target) std::cout << " [" << o.rule_id << "]";
    std::cout << "\nvalue               " << value(o.result.value) << "\nabs_error_estimate  "
              << format_number(o.result.abs_error_estimate) << "\nevaluations         " << o.result.evaluations
              << "\nconverged           " << (o.result.converged ? "yes" : "no") << '\n';
    if (o.oracle) {
        std::cout << "oracle              " << value(o.oracle->value) << " (error "
                  << format_number(o.oracle->abs_error_estimate) << ")\n";
    }
}

QuadResult closed(double v) {
    QuadResult r;
    r.value = v;
    r.converged = true;
    return r;
}

// Resolves an id or short code; variants sharing a code are told apart by the triple.
const Rule& resolve_rule(const EvalOptions& o) {
    if (const Rule* r = find_rule(o.target)) return *r;
    const auto candidates = select_rules(o.target);
    if (candidates.size() == 1) return *candidates.front();
    for (const Rule* r : candidates) {
        if (!r->triple) continue;
        if ((!o.n || *o.n == r->triple->n) && (!o.m || *o.m == r->triple->m) && r->triple->nu == o.nu.value_or(0)) {
            return *r;
        }
    }
    throw ApplicabilityError("requires --n/--m/--nu selecting one variant of " + o.target);
}

int run_eval(const EvalOptions& o) {
    const Format format = parse_format(o.format);
    Tolerance tol{o.rel, o.abs, o.max_evals};
    tol.validate();
    Output out;
    out.target = o.target;
    const YukawaPairSpec pair{o.eta1, o.eta2, o.x2};
    const FourierSpec four{o.k, o.kx, o.eta1, o.eta2, o.x2};
    if (o.target == "yukawa-pair") {
        out.result = closed(yukawa_pair(pair));
    } else if (o.target == "yukawa-pair-equal") {
        out.result = closed(yukawa_pair_equal(o.eta1, o.x2));
    } else if (o.target == "yukawa-pair-catalog") {
        out.result = yukawa_pair_catalog(pair, tol);
    } else if (o.target == "hydrogenic-pair") {
        out.result = closed(hydrogenic_pair(pair));
    } else if (o.target == "hydrogenic-pair-equal") {
        out.result = closed(hydrogenic_pair_equal(o.eta1, o.x2));
    } else if (o.target == "fourier-erfi") {
        out.result = fourier_pair_erfi(four, tol);
    } else if (o.target == "fourier-tau") {
        out.result = fourier_pair_tau(four, tol);
    } else if (o.target == "fourier-catalog") {
        out.result = fourier_pair_catalog(four, tol);
    } else if (o.target == "cheshire") {
        out.result = cheshire(o.k_fermi, o.kx, o.x2, tol);
    } else {
        const Rule& rule = resolve_rule(o);
        Params P;
        if (rule.triple) P.triple = *rule.triple;
        if (o.n) P.triple.n = *o.n;
        if (o.m) P.triple.m = *o.m;
        if (o.nu) P.triple.nu = *o.nu;
        P.a = o.a;
        P.b = o.b;
        P.c = o.c;
        P.h = Complex(o.h_re, o.h_im);
        P.j = o.j;
        P.p = o.p;
        P.q = o.q;
        P.tilde = rule.tilde;
        const TestIntegrand f{o.f_coeff, o.f_mu, o.f_sigma};
        out.rule_id = rule.id;
        out.result = reduce_to_1d(rule, P, f, tol);
        if (o.oracle) out.oracle = direct_2d(P, f);
    }
    print_eval(out, format);
    return out.result.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reductions of two-dimensional quadrant integrals to one-dimensional kernels"};
    app.require_subcommand(1);

    // list
    std::string list_family, list_format = "human";
    bool list_errata = true;
    auto* list = app.add_subcommand("list", "List catalog rules");
    list->add_option("--family", list_family, "positive-exp, inverse-exp, mixed-tilde, general-h or r-integral");
    list->add_option("--format", list_format, "human, json or csv");
    list->add_flag("!--no-errata", list_errata, "Hide erratum entries");

    // eval
    EvalOptions ev;
    auto* eval = app.add_subcommand("eval", "Evaluate one rule or application");
    eval->add_option("target", ev.target, "Rule id, short code, or application name")->required();
    eval->add_option("--n", ev.n);
    eval->add_option("--m", ev.m);
    eval->add_option("--nu", ev.nu);
    eval->add_option("--a", ev.a);
    eval->add_option("--b", ev.b);
    eval->add_option("--c", ev.c);
    eval->add_option("--h-re", ev.h_re);
    eval->add_option("--h-im", ev.h_im);
    eval->add_option("--j", ev.j);
    eval->add_option("--p", ev.p);
    eval->add_option("--q", ev.q);
    eval->add_option("--f-coeff", ev.f_coeff);
    eval->add_option("--f-mu", ev.f_mu);
    eval->add_option("--f-sigma", ev.f_sigma);
    eval->add_option("--eta1", ev.eta1);
    eval->add_option("--eta2", ev.eta2);
    eval->add_option("--x2", ev.x2);
    eval->add_option("--k", ev.k);
    eval->add_option("--kx", ev.kx, "Scalar product of momentum and separation");
    eval->add_option("--k-fermi", ev.k_fermi);
    eval->add_option("--rel", ev.rel);
    eval->add_option("--abs", ev.abs);
    eval->add_option("--max-evals", ev.max_evals);
    eval->add_flag("--oracle", ev.oracle, "Also evaluate the 2D oracle (rules only)");
    eval->add_option("--format", ev.format, "human, json or csv");

    // verify
    std::string rules_sel = "all", verify_format = "json", output;
    int samples = 20, jobs = default_jobs();
    std::uint64_t seed = 42;
    VerifyTolerances vt;
    auto* verify_cmd = app.add_subcommand("verify", "Compare reductions with the 2D oracle on random draws");
    verify_cmd->add_option("--rules", rules_sel, "all, ids or short codes, comma separated");
    verify_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--rel", vt.check.rel, "Pass threshold, relative");
    verify_cmd->add_option("--abs", vt.check.abs, "Pass threshold, absolute");
    verify_cmd->add_option("--format", verify_format, "human, json or csv");
    verify_cmd->add_option("--output", output, "Write the report here; the summary goes to stdout");
    verify_cmd->add_option("--jobs", jobs, "Concurrent cases (default: R2REDUCE_JOBS or core count)")
        ->check(CLI::PositiveNumber);

    // derivative-check
    double dp = 1, dq = 1, dc = 0, dmu = 0.5, dsigma = 0, dstep = 0;
    int draws = 5;
    std::uint64_t dseed = 1;
    auto* deriv = app.add_subcommand("derivative-check", "Compare K7 with a finite p-derivative of K6");
    deriv->add_option("--p", dp);
    deriv->add_option("--q", dq);
    deriv->add_option("--c", dc);
    deriv->add_option("--f-mu", dmu);
    deriv->add_option("--f-sigma", dsigma);
    deriv->add_option("--step", dstep, "Default 1e-4 p");
    deriv->add_option("--draws", draws, "Extra random (p, q) draws after the given point");
    deriv->add_option("--seed", dseed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            std::vector<const Rule*> rules;
            std::optional<Family> fam;
            if (!list_family.empty()) {
                fam = parse_family(list_family);
                if (!fam) throw DomainError("unknown family '" + list_family + "'");
            }
            for (const Rule& r : all_rules()) {
                if (fam && r.family != *fam) continue;
                if (!list_errata && r.erratum) continue;
                rules.push_back(&r);
            }
            std::cout << render_rules(rules, parse_format(list_format));
            return kExitOk;
        }
        if (*eval) return run_eval(ev);
        if (*verify_cmd) {
            const Format format = parse_format(verify_format);
            SweepConfig cfg;
            cfg.rules = select_rules(rules_sel);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.tol = vt;
            cfg.jobs = jobs;
            const auto records = run_sweep(cfg);
            const std::string report = render_sweep(cfg, records, format);
            const SweepSummary summary = summarize(records);
            if (output.empty()) {
                std::cout << report;
                if (format != Format::Human) std::cerr << summary_line(summary, seed) << '\n';
            } else {
                std::ofstream file(output, std::ios::binary);
                if (!file) throw DomainError("cannot write " + output);
                file << report;
                std::cout << summary_line(summary, seed) << '\n';
            }
            return sweep_exit_code(summary);
        }
        if (*deriv) {
            Rng rng(dseed);
            int consistent_sign = 0;
            bool ok = true;
            for (int i = 0; i <= draws; ++i) {
                Params P;
                P.p = i == 0 ? dp : log_uniform(rng, 0.3, 3.0);
                P.q = i == 0 ? dq : log_uniform(rng, 0.3, 3.0);
                P.c = dc;
                const DerivativeReport rep = derivative_check_K7(P, TestIntegrand{1.0, dmu, dsigma}, i == 0 ? dstep : 0.0);
                std::printf("p=%s q=%s step=%s dK6/dp=%s K7=%s residual(+)=%s residual(-)=%s sign=%+d halving_ratio=%s\n",
                            format_number(P.p).c_str(), format_number(P.q).c_str(), format_number(rep.step).c_str(),
                            format_number(rep.finite_difference).c_str(), format_number(rep.k7_value).c_str(),
                            format_number(rep.residual_plus).c_str(), format_number(rep.residual_minus).c_str(),
                            rep.sign, format_number(rep.halving_ratio).c_str());
                if (!rep.converged) return kExitNotConverged;
                if (rep.sign == 0 || (consistent_sign != 0 && rep.sign != consistent_sign)) ok = false;
                consistent_sign = rep.sign;
            }
            std::printf("relation: K7 = %s d/dp K6 %s\n", consistent_sign < 0 ? "-" : "+",
                        ok ? "(consistent)" : "(INCONSISTENT)");
            return ok ? kExitOk : kExitFailed;
        }
    } catch (const ApplicabilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInapplicable;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInapplicable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitOk;
}
