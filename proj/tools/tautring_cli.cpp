#include <CLI11.hpp>
#include <json.hpp>

#include "tautring/bv.hpp"
#include "tautring/cache.hpp"
#include "tautring/expr.hpp"
#include "tautring/fano.hpp"
#include "tautring/hilbert.hpp"
#include "tautring/k3_model.hpp"
#include "tautring/schubert.hpp"

#include <iostream>
#include <string>

using namespace tautring;
using nlohmann::json;

namespace {

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::ChowZero: return 0;
        case Verdict::CohomologicallyNonzero: return 1;
        case Verdict::Indeterminate: return 3;
    }
    return 2;
}

struct Options {
    bool json_out = false;
    bool no_cache = false;
};

void emit(const Options& opt, const json& j, const std::string& plain) {
    if (opt.json_out) std::cout << j.dump(2) << "\n";
    else std::cout << plain << "\n";
}

K3Model load_model(const std::string& path) {
    if (path.empty()) return K3Model::standard(21);
    return K3Model::parse_file(path);
}

void check_bv_indices(const Polynomial& p, int m) {
    for (const auto& [mono, c] : p.terms())
        for (const Gen& g : mono.factors)
            for (int k = 0; k < g.arity; ++k)
                if (g.idx[k] < 1 || g.idx[k] > m)
                    throw std::runtime_error("factor index out of range 1.." +
                                             std::to_string(m));
}

ResultCache make_cache(const Options& opt) {
    if (opt.no_cache) return ResultCache();
    if (auto dir = ResultCache::dir_from_env()) return ResultCache(*dir);
    return ResultCache();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection calculus for tautological rings"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "structured JSON output");
    app.add_flag("--no-cache", opt.no_cache, "bypass the on-disk result cache");

    std::string expr_text, model_path, partition_text;
    int m = 0, n = 0, l = 0;

    auto* cmd_normalize = app.add_subcommand("normalize", "normal form on S^m");
    cmd_normalize->add_option("--m", m, "number of factors")->required();
    cmd_normalize->add_option("--model", model_path, "model file");
    cmd_normalize->add_option("expr", expr_text, "expression")->required();

    auto* cmd_realize = app.add_subcommand("realize", "cohomological realization");
    cmd_realize->add_option("--m", m)->required();
    cmd_realize->add_option("--model", model_path)->required();
    cmd_realize->add_option("expr", expr_text)->required();

    auto* cmd_verify = app.add_subcommand("verify-vanishing", "Chow-vanishing instance");
    cmd_verify->add_option("--m", m)->required();
    cmd_verify->add_option("--model", model_path)->required();
    cmd_verify->add_option("expr", expr_text)->required();

    auto* cmd_hilbert = app.add_subcommand("hilbert", "length-n parameter space calculus");
    auto* cmd_pullback = cmd_hilbert->add_subcommand("pullback", "partial-diagonal pullback");
    cmd_pullback->add_option("--n", n)->required();
    cmd_pullback->add_option("--partition", partition_text)->required();
    cmd_pullback->add_option("--l", l);
    cmd_pullback->add_option("expr", expr_text)->required();
    auto* cmd_chern = cmd_hilbert->add_subcommand("chern-number", "degree of a codim-2n class");
    cmd_chern->add_option("--n", n)->required();
    cmd_chern->add_option("expr", expr_text)->required();
    cmd_hilbert->require_subcommand(1);

    auto* cmd_fano = app.add_subcommand("fano", "line-parameter-space calculus");
    auto* cmd_fint = cmd_fano->add_subcommand("integrate", "degree of a codim-4 class");
    cmd_fint->add_option("expr", expr_text)->required();
    auto* cmd_fnorm = cmd_fano->add_subcommand("normalize", "divisor-calculus normal form");
    cmd_fnorm->add_option("expr", expr_text)->required();
    auto* cmd_fver = cmd_fano->add_subcommand("verify", "cohomology-to-Chow vanishing");
    cmd_fver->add_option("expr", expr_text)->required();
    cmd_fano->require_subcommand(1);

    auto* cmd_grass = app.add_subcommand("grass", "Grassmannian Schubert calculus");
    auto* cmd_gint = cmd_grass->add_subcommand("integrate", "coefficient of the point class");
    cmd_gint->add_option("expr", expr_text)->required();
    cmd_grass->require_subcommand(1);

    // allow the global --json / --no-cache flags after a subcommand as well
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_normalize) {
            K3Model model = load_model(model_path);
            Polynomial p = parse_polynomial(expr_text, RingTag::BV);
            check_bv_indices(p, m);
            Polynomial nf = bv_normalize(p, model);
            emit(opt,
                 {{"command", "normalize"},
                  {"m", m},
                  {"model_fingerprint", model.fingerprint()},
                  {"normal_form", print_canonical(nf)}},
                 print_canonical(nf));
            return 0;
        }
        if (*cmd_realize) {
            K3Model model = load_model(model_path);
            Polynomial p = parse_polynomial(expr_text, RingTag::BV);
            check_bv_indices(p, m);
            TensorClass t = model.realize(p, m);
            emit(opt,
                 {{"command", "realize"},
                  {"m", m},
                  {"model_fingerprint", model.fingerprint()},
                  {"tensor", print_tensor(t)}},
                 print_tensor(t));
            return 0;
        }
        if (*cmd_verify) {
            K3Model model = load_model(model_path);
            Polynomial p = parse_polynomial(expr_text, RingTag::BV);
            check_bv_indices(p, m);
            VanishingReport rep = verify_vanishing(p, m, model);
            emit(opt,
                 {{"command", "verify-vanishing"},
                  {"m", m},
                  {"model_fingerprint", model.fingerprint()},
                  {"verdict", verdict_name(rep.verdict)},
                  {"realize_zero", rep.realize_zero},
                  {"small_m_hypothesis", rep.small_m_hypothesis},
                  {"invariance_hypothesis", rep.invariance_hypothesis},
                  {"normal_form", print_canonical(rep.normal_form)}},
                 verdict_name(rep.verdict));
            return verdict_exit(rep.verdict);
        }
        if (*cmd_pullback) {
            HilbertEngine eng(K3Model::standard(21), make_cache(opt));
            SetPartition mu = SetPartition::parse(partition_text, n);
            Polynomial p = parse_polynomial(expr_text, RingTag::Hilbert);
            Polynomial out = eng.pullback(p, n, mu, l);
            emit(opt,
                 {{"command", "hilbert pullback"},
                  {"n", n},
                  {"partition", mu.text()},
                  {"l", l},
                  {"model_fingerprint", eng.model().fingerprint()},
                  {"normal_form", print_canonical(out)}},
                 print_canonical(out));
            return 0;
        }
        if (*cmd_chern) {
            HilbertEngine eng(K3Model::standard(21), make_cache(opt));
            Polynomial p = parse_polynomial(expr_text, RingTag::Hilbert);
            Rational v = eng.chern_number(p, n);
            emit(opt,
                 {{"command", "hilbert chern-number"},
                  {"n", n},
                  {"model_fingerprint", eng.model().fingerprint()},
                  {"value", v.str()}},
                 v.str());
            return 0;
        }
        if (*cmd_fint) {
            Polynomial p = parse_polynomial(expr_text, RingTag::Fano);
            if (p.homogeneous_codim() != 4)
                throw std::runtime_error("fano integrate: expected a codim-4 class");
            Polynomial v = fano_integral_form(p);
            emit(opt, {{"command", "fano integrate"}, {"value", print_canonical(v)}},
                 print_canonical(v));
            return 0;
        }
        if (*cmd_fnorm) {
            Polynomial p = parse_polynomial(expr_text, RingTag::Fano);
            Polynomial nf = fano_normalize(p);
            emit(opt, {{"command", "fano normalize"}, {"normal_form", print_canonical(nf)}},
                 print_canonical(nf));
            return 0;
        }
        if (*cmd_fver) {
            Polynomial p = parse_polynomial(expr_text, RingTag::Fano);
            Verdict v = verify_theocubic(p);
            emit(opt,
                 {{"command", "fano verify"},
                  {"verdict", verdict_name(v)},
                  {"oracle", coh_verdict_name(fano_cohomology_vanishes(p))},
                  {"normal_form", print_canonical(fano_normalize(p))}},
                 verdict_name(v));
            return verdict_exit(v);
        }
        if (*cmd_gint) {
            SchubertElement e = parse_schubert(expr_text);
            Rational v = integrate_grass(e);
            emit(opt,
                 {{"command", "grass integrate"}, {"class", e.text()}, {"value", v.str()}},
                 v.str());
            return 0;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}
