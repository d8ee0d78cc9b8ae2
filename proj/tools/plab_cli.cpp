// plab command-line front end: dataset generation, envelopes, transfinite
// diameters, Bergman diagnostics, energies, dynamics, and the verification
// harnesses, with JSON reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "plab/dynamics.hpp"
#include "plab/verify.hpp"

using json = nlohmann::ordered_json;
using namespace plab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
    std::string set_kind = "circle";
    double r = 1.0;
    double a = -1.0, b = 1.0;
    double center_re = 0.0, center_im = 0.0;
    int count = 256;
    int torus_n = 2;
    std::string cloud_path;

    std::string weight_spec = "zero";
    int kmax = 48;
    std::string kschedule;
    std::string out_path;
    std::string json_path;
    double tol = 0.03;
    int threads = 1;
    long seed = 0;
    std::string precision = "auto";
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--set", o.set_kind,
                    "set kind: circle|interval|torus|disc|file");
    cmd->add_option("--r", o.r, "circle/disc radius");
    cmd->add_option("--a", o.a, "interval left endpoint");
    cmd->add_option("--b", o.b, "interval right endpoint");
    cmd->add_option("--center-re", o.center_re, "circle center, real part");
    cmd->add_option("--center-im", o.center_im, "circle center, imag part");
    cmd->add_option("--count", o.count, "cloud size");
    cmd->add_option("--torus-n", o.torus_n, "torus dimension (1 or 2)");
    cmd->add_option("--cloud", o.cloud_path, "point-cloud CSV for --set file");
    cmd->add_option("--weight", o.weight_spec, "weight spec");
    cmd->add_option("--kmax", o.kmax, "largest degree of the default schedule");
    cmd->add_option("--kschedule", o.kschedule, "comma-separated degrees");
    cmd->add_option("--out", o.out_path, "CSV output path");
    cmd->add_option("--json", o.json_path, "JSON report path (default stdout)");
    cmd->add_option("--tol", o.tol, "verification tolerance");
    cmd->add_option("--threads", o.threads, "worker thread cap");
    cmd->add_option("--seed", o.seed, "seed for randomized refinement order");
    cmd->add_option("--precision", o.precision, "auto|double|dd");
    cmd->add_flag("--no-timestamp", o.no_timestamp,
                  "omit the timestamp from reports");
}

CompactGrid make_set(const CommonOpts& o) {
    if (o.set_kind == "circle")
        return make_circle(cplx(o.center_re, o.center_im), o.r, o.count);
    if (o.set_kind == "interval") return make_interval(o.a, o.b, o.count);
    if (o.set_kind == "torus") return make_torus(o.torus_n, o.count);
    if (o.set_kind == "disc") return make_disc_boundary(o.r, o.count);
    if (o.set_kind == "file") {
        if (o.cloud_path.empty())
            throw ParameterError("--set file requires --cloud <path>");
        return load_pointcloud(o.cloud_path);
    }
    throw ParameterError("unknown --set kind `" + o.set_kind + "`");
}

std::vector<int> make_schedule(const CommonOpts& o) {
    std::vector<int> ks;
    if (!o.kschedule.empty()) {
        std::stringstream ss(o.kschedule);
        std::string tok;
        while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
        return ks;
    }
    for (int k : {8, 16, 24, 32, 48, 64, 96, 128})
        if (k <= o.kmax) ks.push_back(k);
    if (ks.empty() || ks.back() != o.kmax) ks.push_back(o.kmax);
    return ks;
}

// resolved configuration embedded in every report; execution-only knobs
// (threads) are excluded so reports are invariant across them
json config_json(const CommonOpts& o) {
    json c;
    c["set"] = o.set_kind;
    if (o.set_kind == "circle" || o.set_kind == "disc") {
        c["r"] = o.r;
        c["center_re"] = o.center_re;
        c["center_im"] = o.center_im;
    }
    if (o.set_kind == "interval") {
        c["a"] = o.a;
        c["b"] = o.b;
    }
    if (o.set_kind == "torus") c["torus_n"] = o.torus_n;
    if (o.set_kind == "file") c["cloud"] = o.cloud_path;
    c["count"] = o.count;
    c["weight"] = o.weight_spec;
    json ks = json::array();
    for (int k : make_schedule(o)) ks.push_back(k);
    c["k_schedule"] = ks;
    c["tol"] = o.tol;
    c["seed"] = o.seed;
    c["precision"] = o.precision;
    return c;
}

void emit(const CommonOpts& o, json& report) {
    report["diagnostics"]["version"] = kVersion;
    if (!o.no_timestamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        report["diagnostics"]["timestamp_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    std::string text = report.dump(2);
    text.push_back('\n');
    if (o.json_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.json_path, std::ios::binary);
        if (!f) throw IngestionError("cannot write " + o.json_path);
        f << text;
    }
}

json per_k_json(const std::vector<std::pair<double, double>>& per_k) {
    json arr = json::array();
    for (auto& [k, v] : per_k) arr.push_back({{"k", k}, {"value", v}});
    return arr;
}

int cmd_gen(const CommonOpts& o) {
    CompactGrid g = make_set(o);
    if (o.out_path.empty()) throw ParameterError("gen requires --out <csv>");
    save_pointcloud(g, o.out_path);
    json rep;
    rep["command"] = "gen";
    rep["config"] = config_json(o);
    rep["result"]["points"] = g.size();
    rep["result"]["fill_distance"] = g.fill_distance;
    rep["diagnostics"] = json::object();
    CommonOpts oq = o;
    oq.json_path = o.json_path;
    emit(oq, rep);
    return 0;
}

int cmd_envelope(const CommonOpts& o, int k, double eval_re, double eval_im) {
    CompactGrid K = make_set(o);
    WeightFn phi = parse_weight(o.weight_spec);
    DiscreteMeasure mu = default_bm_measure(K, std::max(o.count, 4 * k + 8));
    CompactGrid empty;
    empty.dim = K.dim;
    ExtremalResult res = extremal_bergman(K, phi, mu, k, empty);
    RegularityReport reg = regularity_check(res, K, phi);
    json rep;
    rep["command"] = "envelope";
    rep["config"] = config_json(o);
    rep["config"]["k"] = k;
    rep["result"]["sup_defect"] = res.sup_defect;
    rep["result"]["contact_fraction"] = reg.contact_fraction;
    rep["result"]["value_at_eval"] =
        res.eval({K.dim, cplx(eval_re, eval_im), {}});
    rep["diagnostics"]["fill_distance"] = K.fill_distance;
    emit(o, rep);
    return 0;
}

int cmd_transfinite(const CommonOpts& o, const std::string& method) {
    CompactGrid K = make_set(o);
    WeightFn v = parse_weight(o.weight_spec);
    json rep;
    rep["command"] = "transfinite";
    rep["config"] = config_json(o);
    rep["config"]["method"] = method;
    double log_d_inf = 0.0;
    if (method == "leja") {
        TransfiniteEstimate est =
            transfinite_diameter_leja(K, v, make_schedule(o));
        log_d_inf = est.log_d_inf;
        std::vector<std::pair<double, double>> pk;
        for (auto& [k, val] : est.per_k)
            pk.push_back({static_cast<double>(k), val});
        rep["per_k"] = per_k_json(pk);
        rep["diagnostics"]["extrapolation_residual"] =
            est.extrapolation_residual;
    } else if (method == "robin") {
        if (K.dim != 1)
            throw CLI::ValidationError("--method robin", "robin is 1-D only");
        log_d_inf = transfinite_via_robin(K, v);
    } else if (method == "energy") {
        if (K.dim != 1)
            throw CLI::ValidationError("--method energy",
                                       "energy route is 1-D only");
        DiscreteMeasure ref = haar_measure(make_circle(cplx(0, 0), 1.0, 256));
        double ediff =
            energy_eq_delta(ref.support, zero_weight(), K, v).value;
        log_d_inf = 2.0 * ediff;
    } else {
        throw CLI::ValidationError("--method", "expected leja|robin|energy");
    }
    rep["result"]["log_d_inf"] = log_d_inf;
    rep["diagnostics"]["fill_distance"] = K.fill_distance;
    emit(o, rep);
    return 0;
}

int cmd_bergman(const CommonOpts& o, int k) {
    CompactGrid K = make_set(o);
    WeightFn phi = parse_weight(o.weight_spec);
    DiscreteMeasure mu = default_bm_measure(K, std::max(o.count, 4 * k + 8));
    OrthonormalBasis onb = orthonormal_basis_for(mu, phi, k);
    BergmanDensity rho = bergman_density(onb);
    json rep;
    rep["command"] = "bergman";
    rep["config"] = config_json(o);
    rep["config"]["k"] = k;
    rep["result"]["n_k"] = rho.n_k;
    rep["result"]["normalization"] = rho.normalization;
    rep["result"]["normalization_defect"] = rho.normalization_defect;
    rep["result"]["sup_rho"] = rho.sup_value;
    rep["diagnostics"]["condition_estimate"] = onb.condition_estimate;
    emit(o, rep);
    return 0;
}

int cmd_energy(const CommonOpts& o, const CommonOpts& o2) {
    CompactGrid K1 = make_set(o), K2 = make_set(o2);
    WeightFn p1 = parse_weight(o.weight_spec),
             p2 = parse_weight(o2.weight_spec);
    EnergyDelta d = energy_eq_delta(K1, p1, K2, p2);
    json rep;
    rep["command"] = "energy";
    rep["config"] = config_json(o);
    rep["config"]["set2"] = o2.set_kind;
    rep["config"]["weight2"] = o2.weight_spec;
    rep["result"]["energy_eq_delta"] = d.value;
    json comp = json::array();
    for (double c : d.components) comp.push_back(c);
    rep["result"]["components"] = comp;
    rep["diagnostics"] = json::object();
    emit(o, rep);
    return 0;
}

int cmd_dynamics(const CommonOpts& o, const std::string& lift_spec) {
    if (lift_spec.empty())
        throw ParameterError("dynamics requires --lift `d=..;F0=..;F1=..`");
    MapLift F = parse_lift(lift_spec);
    CompactGrid K = make_set(o);
    WeightFn psi = parse_weight(o.weight_spec);
    cplx res = resultant(F);
    std::vector<int> ks;
    for (int k : make_schedule(o))
        if (k <= 24) ks.push_back(k);
    if (ks.size() < 3) ks = {8, 12, 16, 20};
    PullbackReport pb = pullback_check(F, K, psi, ks);
    json rep;
    rep["command"] = "dynamics";
    rep["config"] = config_json(o);
    rep["config"]["lift"] = lift_spec;
    rep["result"]["resultant_re"] = res.real();
    rep["result"]["resultant_im"] = res.imag();
    rep["result"]["pullback_lhs"] = pb.lhs;
    rep["result"]["pullback_rhs"] = pb.rhs;
    rep["result"]["pullback_gap"] = pb.gap;
    rep["result"]["implied_log_c"] = pb.implied_log_c;
    rep["result"]["res_log_c"] = pb.res_log_c;
    rep["diagnostics"] = json::object();
    emit(o, rep);
    return pb.gap <= o.tol ? 0 : 2;
}

int cmd_verify(const CommonOpts& o, const std::string& claim,
               const std::string& u_spec) {
    json rep;
    rep["command"] = "verify";
    rep["config"] = config_json(o);
    rep["config"]["claim"] = claim;
    ConvergenceReport cr;
    if (claim == "thm_a") {
        DiscreteMeasure mu = haar_measure(make_circle(cplx(0, 0), 1.0, o.count));
        cr = verify_theorem_a(mu, parse_weight(o.weight_spec), mu,
                              zero_weight(), make_schedule(o), o.tol);
    } else if (claim == "cor_a") {
        DiscreteMeasure ref = haar_measure(make_circle(cplx(0, 0), 1.0, 256));
        CompactGrid K = make_set(o);
        DiscreteMeasure mu = default_bm_measure(K, o.count);
        cr = verify_corollary_a(ref, K, parse_weight(o.weight_spec), &mu,
                                make_schedule(o), o.tol);
    } else if (claim == "lemma_elde") {
        CompactGrid K = make_set(o);
        DiscreteMeasure mu = default_bm_measure(K, o.count);
        SandwichReport sw = verify_lemma_elde(K, parse_weight(o.weight_spec),
                                              mu, make_schedule(o), o.tol);
        json rows = json::array();
        for (const auto& r : sw.rows)
            rows.push_back({{"k", r.k},
                            {"gap", r.gap},
                            {"upper", r.upper},
                            {"within", r.within}});
        rep["per_k"] = rows;
        rep["result"]["extrapolated_gap"] = sw.extrapolated_gap;
        rep["result"]["sandwich_ok"] = sw.sandwich_ok;
        rep["result"]["vanishes"] = sw.vanishes;
        rep["diagnostics"] = json::object();
        emit(o, rep);
        return sw.sandwich_ok && sw.vanishes ? 0 : 2;
    } else if (claim == "thm_b") {
        CompactGrid K = make_set(o);
        cr = verify_theorem_b(K, parse_weight(o.weight_spec),
                              parse_weight(u_spec.empty() ? "expr:re2" : u_spec),
                              {0.05, 0.1}, o.tol);
    } else {
        throw CLI::ValidationError(
            "--claim", "expected thm_a|cor_a|lemma_elde|thm_b");
    }
    rep["config"]["claim_id"] = claim_name(cr.claim);
    rep["per_k"] = per_k_json(cr.per_k);
    if (!cr.per_k_alt.empty()) rep["per_k_alt"] = per_k_json(cr.per_k_alt);
    rep["result"]["target"] = cr.target;
    rep["result"]["extrapolated"] = cr.extrapolated;
    if (!cr.per_k_alt.empty())
        rep["result"]["extrapolated_alt"] = cr.extrapolated_alt;
    rep["result"]["gap"] = cr.gap;
    rep["result"]["pass"] = cr.pass;
    rep["diagnostics"] = json::object();
    emit(o, rep);
    return cr.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plab: numerical weighted pluripotential theory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value configuration file");

    CommonOpts og, oe, ot, ob, on1, od, ov;
    CommonOpts on2; // second pair of the energy command
    int env_k = 48, berg_k = 48;
    double eval_re = 2.0, eval_im = 0.0;
    std::string method = "leja", lift_spec, claim = "cor_a", u_spec;

    CLI::App* gen = app.add_subcommand("gen", "generate a point cloud");
    add_common(gen, og);
    CLI::App* env = app.add_subcommand("envelope", "equilibrium weight");
    add_common(env, oe);
    env->add_option("--k", env_k, "estimator degree");
    env->add_option("--eval-re", eval_re, "evaluation point, real part");
    env->add_option("--eval-im", eval_im, "evaluation point, imag part");
    CLI::App* tra = app.add_subcommand("transfinite", "transfinite diameter");
    add_common(tra, ot);
    tra->add_option("--method", method, "leja|robin|energy");
    CLI::App* ber = app.add_subcommand("bergman", "Bergman diagnostics");
    add_common(ber, ob);
    ber->add_option("--k", berg_k, "degree");
    CLI::App* ene = app.add_subcommand("energy", "equilibrium energy delta");
    add_common(ene, on1);
    ene->add_option("--set2", on2.set_kind, "second set kind");
    ene->add_option("--r2", on2.r, "second circle radius");
    ene->add_option("--a2", on2.a, "second interval left endpoint");
    ene->add_option("--b2", on2.b, "second interval right endpoint");
    ene->add_option("--weight2", on2.weight_spec, "second weight spec");
    CLI::App* dyn = app.add_subcommand("dynamics", "Green weights, resultants");
    add_common(dyn, od);
    dyn->add_option("--lift", lift_spec, "lift spec d=..;F0=..;F1=..");
    CLI::App* ver = app.add_subcommand("verify", "convergence harnesses");
    add_common(ver, ov);
    ver->add_option("--claim", claim, "thm_a|cor_a|lemma_elde|thm_b");
    ver->add_option("--u", u_spec, "direction weight for thm_b");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(og);
        if (env->parsed()) return cmd_envelope(oe, env_k, eval_re, eval_im);
        if (tra->parsed()) return cmd_transfinite(ot, method);
        if (ber->parsed()) return cmd_bergman(ob, berg_k);
        if (ene->parsed()) {
            on2.count = on1.count;
            return cmd_energy(on1, on2);
        }
        if (dyn->parsed()) return cmd_dynamics(od, lift_spec);
        if (ver->parsed()) return cmd_verify(ov, claim, u_spec);
        return 64;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const IngestionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 64;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
