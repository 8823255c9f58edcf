#include "cochainlab/tasks.hpp"

#include <chrono>
#include <sstream>

namespace cochainlab {

const char* config_error_name(ConfigErrorCode c) {
    switch (c) {
        case ConfigErrorCode::E_PARSE: return "E_PARSE";
        case ConfigErrorCode::E_TASK: return "E_TASK";
        case ConfigErrorCode::E_SPEC: return "E_SPEC";
        case ConfigErrorCode::E_CAP: return "E_CAP";
        case ConfigErrorCode::E_PARAM: return "E_PARAM";
        case ConfigErrorCode::E_SEED: return "E_SEED";
    }
    return "E_UNKNOWN";
}

const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> tasks = {
        "group-info",  "fc-data",        "commutant",         "cohomology",
        "split-check", "homotopy-check", "restriction-check", "affine-fixed",
        "fp-h1",       "approximation-suite", "appendix-suite"};
    return tasks;
}

bool task_is_randomized(const std::string& task) {
    return task == "split-check" || task == "homotopy-check" || task == "affine-fixed" ||
           task == "approximation-suite" || task == "appendix-suite";
}

std::string content_hash_hex(const Json& canonical) {
    std::string s = canonical.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

TaskConfig parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(ConfigErrorCode::E_PARSE, std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError(ConfigErrorCode::E_PARSE, "config must be a JSON object");
    TaskConfig cfg;
    if (!j.contains("task") || !j.at("task").is_string())
        throw ConfigError(ConfigErrorCode::E_TASK, "missing task name");
    cfg.task = j.at("task").get<std::string>();
    const auto& tasks = known_tasks();
    if (std::find(tasks.begin(), tasks.end(), cfg.task) == tasks.end())
        throw ConfigError(ConfigErrorCode::E_TASK, "unknown task: " + cfg.task);
    cfg.mode = j.value("mode", "exact");
    if (cfg.mode != "exact" && cfg.mode != "float")
        throw ConfigError(ConfigErrorCode::E_PARAM, "mode must be exact or float");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw ConfigError(ConfigErrorCode::E_SEED, "seed must be an integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (task_is_randomized(cfg.task) && !cfg.seed)
        throw ConfigError(ConfigErrorCode::E_SEED, "seed is mandatory for randomized task " + cfg.task);
    cfg.params = j.value("params", Json::object());
    // defaults
    if (!cfg.params.contains("epsilon")) cfg.params["epsilon"] = 1e-6;
    if (!cfg.params.contains("degree_cap")) cfg.params["degree_cap"] = 3;
    int cap = cfg.params.at("degree_cap").get<int>();
    if (cfg.params.contains("degrees")) {
        for (const auto& d : cfg.params.at("degrees"))
            if (d.get<int>() > cap)
                throw ConfigError(ConfigErrorCode::E_CAP, "degree " + d.dump() + " exceeds the cap " +
                                                              std::to_string(cap));
    }
    cfg.raw = j;
    cfg.raw["mode"] = cfg.mode;
    cfg.raw["params"] = cfg.params;
    return cfg;
}

namespace {

struct Inputs {
    GroupPtr G;
    ModulePtr M;
    std::optional<FpPresentation> fp;
    std::optional<FpModule> fpmod;
};

Inputs load_inputs(const TaskConfig& cfg, bool need_group, bool need_module) {
    Inputs in;
    try {
        if (cfg.raw.contains("group")) {
            in.G = group_from_json(cfg.raw.at("group"));
        } else if (need_group) {
            throw std::invalid_argument("missing group spec");
        }
        if (in.G && cfg.raw.contains("rep")) {
            PNorm p = cfg.raw.contains("p") ? pnorm_from_json(cfg.raw.at("p")) : PNorm::two();
            in.M = module_from_json(in.G, cfg.raw.at("rep"), p);
        } else if (need_module) {
            throw std::invalid_argument("missing rep spec");
        }
        if (cfg.raw.contains("fp")) {
            in.fp = fp_from_json(cfg.raw.at("fp"));
            if (cfg.raw.contains("fp_rep")) {
                std::vector<RatMatrix> mats;
                for (const auto& m : cfg.raw.at("fp_rep").at("matrices"))
                    mats.push_back(matrix_from_json(m));
                PNorm p = cfg.raw.contains("p") ? pnorm_from_json(cfg.raw.at("p")) : PNorm::two();
                in.fpmod = build_fp_module(*in.fp, std::move(mats), p);
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::length_error& e) {
        throw ConfigError(ConfigErrorCode::E_CAP, e.what());
    } catch (const std::exception& e) {
        throw ConfigError(ConfigErrorCode::E_SPEC, e.what());
    }
    return in;
}

Subgroup subgroup_from_params(const GroupPtr& G, const Json& params, const char* key = "subgroup") {
    if (!params.contains(key)) return whole_group(G);
    auto gens = params.at(key).get<std::vector<int>>();
    return subgroup_closure(G, gens);
}

AlgebraElement xi_from_params(const GroupPtr& G, const Subgroup& F, const Json& params) {
    if (params.contains("xi")) return algebra_from_json(G, params.at("xi"));
    if (params.contains("xi_class")) {
        ConjugacyData cd = f_conjugacy_classes(G, F);
        return class_average(G, cd, params.at("xi_class").get<int>());
    }
    return uniform_average(G, whole_group(G).elements);
}

Json dims_json(const CohomologyReport& r) {
    Json j;
    j["degree"] = r.degree;
    j["dim_C"] = r.dim_C;
    j["dim_Z"] = r.dim_Z;
    j["dim_B"] = r.dim_B;
    j["dim_H"] = r.dim_H;
    if (r.float_checked) j["float_agrees"] = r.float_agrees;
    return j;
}

Report make_report(const TaskConfig& cfg, const std::string& status, Json payload) {
    Report rep;
    rep.task = cfg.task;
    rep.status = status;
    rep.content_hash = content_hash_hex(cfg.raw);
    rep.payload = std::move(payload);
    rep.exit_code = status == "pass" ? 0 : (status == "budget-exhausted" ? 3 : 1);
    return rep;
}

Report run_group_info(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    Json p;
    p["order"] = in.G->n;
    p["identity"] = in.G->identity;
    p["abelian"] = in.G->is_abelian();
    ConjugacyData cd = f_conjugacy_classes(in.G, whole_group(in.G));
    Json sizes = Json::array();
    for (const auto& c : cd.classes) sizes.push_back(c.size());
    p["conjugacy_class_sizes"] = sizes;
    Json inv = Json::array();
    for (int g = 0; g < in.G->n; ++g) inv.push_back(in.G->invert(g));
    p["inverses"] = inv;
    return make_report(cfg, "pass", p);
}

Report run_fc_data(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    Subgroup F = subgroup_from_params(in.G, cfg.params);
    FcData fc = fc_data(in.G, F);
    ConjugacyData cd = f_conjugacy_classes(in.G, F);
    Json p;
    p["subgroup_order"] = F.order();
    p["fc_subgroup_is_G"] = fc.fc_subgroup.order() == in.G->n;
    Json sizes = Json::array();
    for (const auto& c : cd.classes) sizes.push_back(c.size());
    p["class_sizes"] = sizes;
    Json idx = Json::array();
    for (long v : fc.centralizer_index) idx.push_back(v);
    p["centralizer_indices"] = idx;
    return make_report(cfg, "pass", p);
}

Report run_commutant(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, false);
    Subgroup F = subgroup_from_params(in.G, cfg.params);
    CommutantBasis cb = commutant_basis(in.G, F);  // verifies span = kernel
    Json p;
    p["dimension"] = cb.basis.size();
    Json basis = Json::array();
    for (const auto& b : cb.basis) basis.push_back(algebra_to_json(b));
    p["class_sums"] = basis;
    p["kernel_dimension_matches"] = true;
    return make_report(cfg, "pass", p);
}

Report run_cohomology(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    std::vector<int> degrees = cfg.params.contains("degrees")
                                   ? cfg.params.at("degrees").get<std::vector<int>>()
                                   : std::vector<int>{0, 1};
    bool float_check = cfg.mode == "float";
    CochainCaps caps;
    caps.degree_cap = cfg.params.at("degree_cap").get<int>();
    Json reports = Json::array();
    bool ok = true;
    for (int n : degrees) {
        try {
            auto r = cohomology(in.M, n, false, float_check, caps);
            if (float_check && !r.float_agrees) ok = false;
            reports.push_back(dims_json(r));
        } catch (const std::length_error& e) {
            throw ConfigError(ConfigErrorCode::E_CAP, e.what());
        }
    }
    Json p;
    p["reports"] = reports;
    return make_report(cfg, ok ? "pass" : "fail", p);
}

Report run_split_check(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    AlgebraElement xi = xi_from_params(in.G, whole_group(in.G), cfg.params);
    Json p;
    p["xi"] = algebra_to_json(xi);
    ContractingHomotopy K = contracting_homotopy(in.M, xi);
    int cap = cfg.params.at("degree_cap").get<int>();
    std::vector<int> degrees;
    for (int n = 0; n <= cap; ++n) degrees.push_back(n);
    int samples = cfg.params.value("samples", 3);
    DetRng rng(*cfg.seed);
    auto idrep = verify_contracting_identity(K, degrees, samples, rng);
    bool identity_ok = idrep.exact_zero;
    p["identity_residual"] = identity_ok ? "0" : "nonzero";
    if (!identity_ok) {
        p["first_failure_degree"] = idrep.first_failure_degree;
        p["first_failure_flat"] = idrep.first_failure_flat;
    }
    // independent rank computation must agree (dim H^n = 0)
    Json dims = Json::array();
    bool ranks_ok = true;
    long rank_cost_cap = cfg.params.value("rank_cost_cap", 1500);
    for (int n : degrees) {
        long flat = in.M->dim;
        for (int i = 0; i < n; ++i) flat *= in.G->n;
        if (flat > rank_cost_cap) break;
        auto r = cohomology(in.M, n, false);
        dims.push_back(dims_json(r));
        if (r.dim_H != 0) ranks_ok = false;
    }
    p["rank_reports"] = dims;
    p["ranks_vanish"] = ranks_ok;
    bool ok = identity_ok && ranks_ok;
    return make_report(cfg, ok ? "pass" : "fail", p);
}

Report run_homotopy_check(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    Subgroup F = subgroup_from_params(in.G, cfg.params);
    AlgebraElement xi = xi_from_params(in.G, F, cfg.params);
    std::vector<int> degrees = cfg.params.contains("degrees")
                                   ? cfg.params.at("degrees").get<std::vector<int>>()
                                   : std::vector<int>{0, 1, 2};
    int samples = cfg.params.value("samples", 5);
    DetRng rng(*cfg.seed);
    auto rep = verify_homotopy_identity(in.M, xi, F, degrees, samples, rng);
    Json p;
    p["test"] = "homotopy_identity";
    p["group"] = cfg.raw.at("group");
    p["xi"] = algebra_to_json(xi);
    p["degrees"] = degrees;
    p["samples"] = rep.samples;
    p["residual"] = rep.exact_zero ? "0" : "nonzero";
    if (!rep.exact_zero) {
        p["first_failure_flat"] = rep.first_failure_flat;
        p["first_failure_degree"] = rep.first_failure_degree;
    }
    return make_report(cfg, rep.exact_zero ? "pass" : "fail", p);
}

Report run_restriction_check(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    Subgroup F = subgroup_from_params(in.G, cfg.params);
    auto coh = cohomology(in.M, 1, true);
    if (!coh.basis_Z) throw ConfigError(ConfigErrorCode::E_CAP, "Z^1 basis too large");
    RestrictedModule FR = restrict_to_subgroup(in.M, F);
    CoboundaryMatrix dF = coboundary_matrix(FR.module, 0);
    RatMatrix dFd = dF.mat.to_dense();
    bool all_in = true;
    Json fails = Json::array();
    for (int c = 0; c < coh.basis_Z->cols; ++c) {
        Cochain z = cochain_from_flat(in.M, 1, coh.basis_Z->col(c));
        Cochain zr = restriction(z, FR);
        if (!in_column_space(dFd, zr.values)) {
            all_in = false;
            fails.push_back(c);
        }
    }
    Json p;
    p["dim_Z1"] = coh.dim_Z;
    p["subgroup_order"] = F.order();
    p["all_restrict_into_B1"] = all_in;
    if (!all_in) p["failing_basis_indices"] = fails;
    return make_report(cfg, all_in ? "pass" : "fail", p);
}

Report run_affine_fixed(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, false, false);
    double eps = cfg.params.at("epsilon").get<double>();
    Json p;
    if (in.fp && in.fpmod) {
        std::vector<RatVec> vals;
        for (const auto& v : cfg.params.at("gen_values")) vals.push_back(ratvec_from_json(v));
        FpAffineAction a = fp_action_from_cocycle(*in.fp, *in.fpmod, std::move(vals));
        FixedPointSet fp = fp_fixed_points(a);
        p["fixed_set_nonempty"] = fp.nonempty;
        if (fp.nonempty) p["fixed_point"] = ratvec_to_json(fp.point);
        p["fixed_directions_dim"] = fp.directions.cols;
        auto rep = fp_almost_fixed_point(a, eps, *cfg.seed);
        p["displacement"] = rep.value;
        p["reached_epsilon"] = rep.reached_eps;
        return make_report(cfg, "pass", p);
    }
    if (!in.M) throw ConfigError(ConfigErrorCode::E_PARAM, "need either fp+fp_rep or group+rep");
    Cochain phi = cfg.params.contains("cocycle")
                      ? cochain_from_json(in.M, cfg.params.at("cocycle"))
                      : zero_cochain(in.M, 1);
    AffineAction a = action_from_cocycle(in.M, std::move(phi));
    FixedPointSet fp = fixed_points(a);
    p["fixed_set_nonempty"] = fp.nonempty;
    if (fp.nonempty) p["fixed_point"] = ratvec_to_json(fp.point);
    p["fixed_directions_dim"] = fp.directions.cols;
    auto rep = almost_fixed_point(a, whole_group(in.G).elements, eps, *cfg.seed);
    p["displacement"] = rep.value;
    p["reached_epsilon"] = rep.reached_eps;
    return make_report(cfg, "pass", p);
}

Report run_fp_h1(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, false, false);
    if (!in.fp || !in.fpmod) throw ConfigError(ConfigErrorCode::E_PARAM, "fp and fp_rep required");
    auto sp = fp_cocycle_space(*in.fp, *in.fpmod);
    Json p;
    p["dim_Z1"] = sp.dim_Z;
    p["dim_B1"] = sp.dim_B;
    p["dim_H1"] = sp.dim_H;
    p["abelianization_free_rank"] = abelianization_free_rank(*in.fp);
    bool ok = true;
    if (cfg.raw.contains("group") && cfg.raw.contains("rep")) {
        // oracle agreement with the finite-group cochain complex
        Inputs fin = load_inputs(cfg, true, true);
        auto coh = cohomology(fin.M, 1, false);
        p["table_dim_H1"] = coh.dim_H;
        ok = coh.dim_H == sp.dim_H;
        p["agrees_with_table"] = ok;
    }
    return make_report(cfg, ok ? "pass" : "fail", p);
}

Report run_approximation_suite(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    double eps = cfg.params.at("epsilon").get<double>();
    ShrinkBudget budget;
    if (cfg.params.contains("budget")) {
        const auto& b = cfg.params.at("budget");
        budget.max_word_len = b.value("max_word_len", budget.max_word_len);
        budget.opt_iters = b.value("opt_iters", budget.opt_iters);
        budget.max_candidates = b.value("max_candidates", budget.max_candidates);
    }
    Subgroup F = subgroup_from_params(in.G, cfg.params);
    Json p;
    bool pass = true, budget_hit = false;
    // shrinking averages on the coordinate basis vectors
    {
        CommutantBasis cb = commutant_basis(in.G, F);
        std::vector<RatVec> E;
        for (int i = 0; i < in.M->dim; ++i) {
            RatVec e(in.M->dim, Rat(0));
            e[i] = 1;
            E.push_back(std::move(e));
        }
        auto sh = shrinking_average(in.M, cb.averages, E, eps, budget, *cfg.seed);
        Json js;
        js["max_norm"] = sh.best_bound;
        js["success"] = sh.success;
        js["certified"] = sh.certified;
        js["steps"] = sh.steps;
        js["xi"] = algebra_to_json(sh.xi);
        p["shrinking_average"] = js;
        pass = pass && sh.success;
        budget_hit = budget_hit || !sh.success;
    }
    // almost-coboundary witness for a random exact cocycle (a coboundary)
    {
        DetRng rng(*cfg.seed);
        Cochain x = random_cochain(in.M, 0, rng);
        Cochain phi = apply_coboundary(x);
        std::vector<std::vector<int>> E;
        for (int f : F.elements) E.push_back({f});
        auto w = almost_coboundary_witness(phi, F, E, eps, budget, *cfg.seed);
        Json js;
        js["sup_bound"] = w.sup_bound;
        js["success"] = w.success;
        js["certified"] = w.certified;
        js["membership_verified"] = w.membership_verified;
        p["almost_coboundary_witness"] = js;
        pass = pass && w.success;
        budget_hit = budget_hit || !w.success;
    }
    // generator-average decay
    {
        DetRng rng(*cfg.seed + 1);
        Cochain x = random_cochain(in.M, 0, rng);
        Cochain phi = apply_coboundary(x);
        std::vector<int> sigma = cfg.params.contains("sigma")
                                     ? cfg.params.at("sigma").get<std::vector<int>>()
                                     : generating_set(whole_group(in.G));
        auto dec = generator_average_decay(phi, sigma, eps, budget, *cfg.seed);
        Json js;
        js["bound"] = dec.bound;
        js["success"] = dec.success;
        js["certified"] = dec.certified;
        js["power_used"] = dec.power_used;
        p["generator_average_decay"] = js;
        pass = pass && dec.success;
        budget_hit = budget_hit || !dec.success;
    }
    if (pass) return make_report(cfg, "pass", p);
    return make_report(cfg, budget_hit ? "budget-exhausted" : "fail", p);
}

Report run_appendix_suite(const TaskConfig& cfg) {
    Inputs in = load_inputs(cfg, true, true);
    int samples = cfg.params.value("samples", 1000);
    Json p;
    auto qd = quotient_displacement_check(in.M, samples, *cfg.seed);
    Json jq;
    jq["samples"] = qd.samples;
    jq["failures"] = qd.failures;
    jq["exact"] = qd.exact;
    jq["max_violation"] = qd.max_violation;
    jq["pass"] = qd.pass;
    p["quotient_displacement"] = jq;
    auto g = guichardet_criterion(in.M);
    Json jg;
    jg["dim_B1"] = g.dim_B1;
    jg["b1_closed"] = g.b1_closed;
    jg["quotient_dim"] = g.quotient_dim;
    jg["quotient_average_vanishes"] = g.quotient_average_vanishes;
    jg["pass"] = g.pass;
    p["guichardet"] = jg;
    bool pass = qd.pass && g.pass;
    if (in.fp && in.fpmod) {
        auto qi = quotient_injectivity_check(*in.fp, *in.fpmod);
        Json ji;
        ji["applicable"] = qi.applicable;
        ji["abelianization_rank"] = qi.abelianization_rank;
        ji["injective"] = qi.injective;
        p["quotient_injectivity"] = ji;
        if (qi.applicable) pass = pass && qi.injective;
    }
    return make_report(cfg, pass ? "pass" : "fail", p);
}

}  // namespace

Report run_task(const TaskConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
        if (cfg.task == "group-info") rep = run_group_info(cfg);
        else if (cfg.task == "fc-data") rep = run_fc_data(cfg);
        else if (cfg.task == "commutant") rep = run_commutant(cfg);
        else if (cfg.task == "cohomology") rep = run_cohomology(cfg);
        else if (cfg.task == "split-check") rep = run_split_check(cfg);
        else if (cfg.task == "homotopy-check") rep = run_homotopy_check(cfg);
        else if (cfg.task == "restriction-check") rep = run_restriction_check(cfg);
        else if (cfg.task == "affine-fixed") rep = run_affine_fixed(cfg);
        else if (cfg.task == "fp-h1") rep = run_fp_h1(cfg);
        else if (cfg.task == "approximation-suite") rep = run_approximation_suite(cfg);
        else if (cfg.task == "appendix-suite") rep = run_appendix_suite(cfg);
        else throw ConfigError(ConfigErrorCode::E_TASK, "unknown task: " + cfg.task);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::length_error& e) {
        throw ConfigError(ConfigErrorCode::E_CAP, e.what());
    } catch (const std::exception& e) {
        // module errors become failure reports with the error payload
        Json p;
        p["error"] = e.what();
        rep = Report{cfg.task, "fail", content_hash_hex(cfg.raw), p, 0, 1};
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (cfg.seed) rep.payload["seed"] = *cfg.seed;
    rep.payload["mode"] = cfg.mode;
    return rep;
}

std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") {
        Json j;
        j["task"] = r.task;
        j["status"] = r.status;
        j["content_hash"] = r.content_hash;
        j["results"] = r.payload;
        // exact-mode reruns are bitwise identical, so no timing in JSON
        return j.dump(2) + "\n";
    }
    if (format == "table") {
        std::ostringstream os;
        os << "task:   " << r.task << "\n";
        os << "status: " << r.status << "\n";
        os << "hash:   " << r.content_hash << "\n";
        os << "time:   " << r.seconds << " s\n";
        os << "results:\n";
        os << r.payload.dump(2) << "\n";
        return os.str();
    }
    throw ConfigError(ConfigErrorCode::E_PARAM, "unknown format: " + format);
}

}  // namespace cochainlab
