// bjseq: command-line front end. JSON reports on stdout, notes and timing on stderr.
// Exit codes: 0 holds/pass, 1 fails/witness, 2 indeterminate/inconclusive,
// 3 bad input, 4 outside the domain of an operation, 5 search exhausted, 6 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "bjseq/bjseq.hpp"

using namespace bjseq;

namespace {

enum Exit { kHolds = 0, kFails = 1, kUndecided = 2, kBadInput = 3, kDomain = 4, kExhausted = 5, kInternal = 6 };

int exit_for(Outcome o) {
    switch (o) {
        case Outcome::Holds: return kHolds;
        case Outcome::Fails: return kFails;
        default: return kUndecided;
    }
}

struct Common {
    std::string space;
    std::string p;
    std::optional<double> tol;

    SpaceId space_id() const {
        std::optional<Rational> q;
        if (!p.empty()) q = parse_rational(p);
        SpaceId s = SpaceId::parse(space, q);
        if (s.kind == Space::Lp && !(s.p > 1)) throw ValidationError("lp needs p > 1");
        return s;
    }
};

double default_tolerance() {
    if (const char* env = std::getenv("BJSEQ_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0)) throw ValidationError("BJSEQ_TOL must be a positive number");
        return v;
    }
    return kDefaultTolerance;
}

json header(const std::string& cmd, const SpaceId& s, double tol, Mode mode) {
    return json{{"version", kVersion}, {"command", cmd}, {"space", s.name()}, {"mode", to_string(mode)}, {"tol", tol}};
}

Mode mode_of(std::initializer_list<const SequenceRep*> xs) {
    Mode m = Mode::Exact;
    for (auto* x : xs) m = join(m, x->is_exact() ? Mode::Exact : Mode::Approx);
    return m;
}

SequenceRep load_sequence(const std::string& path, const SpaceId& s, const char* what) {
    SequenceRep x = sequence_from_json(read_json_file(path));
    require_member(x, s, what);
    return x;
}

const std::vector<SpaceId>& all_spaces() {
    static const std::vector<SpaceId> v{SpaceId::linf(), SpaceId::c(),  SpaceId::c0(),
                                        SpaceId::c00(),  SpaceId::l1(), SpaceId::lp(3),
                                        SpaceId::lp(Rational(3, 2))};
    return v;
}

json classify_value(const Verdict& v) {
    if (v.indeterminate()) return "indeterminate";
    return v.holds();
}

}  // namespace

int main(int argc, char** argv) {
    auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"Birkhoff-James orthogonality in sequence spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    auto add_common = [&](CLI::App* sub, bool need_space = true) {
        auto* o = sub->add_option("--space", c.space, "linf, c, c0, c00, l1, lp (with --p), or l<p> such as l3");
        if (need_space) o->required();
        sub->add_option("--p", c.p, "exponent for lp, e.g. 3 or 3/2");
        sub->add_option("--tol", c.tol, "tolerance for approximate data (overrides BJSEQ_TOL)")->check(CLI::PositiveNumber);
    };

    std::string xfile, yfile, opfile, sampler = "default", config;
    bool oracle = false, witness = false, all = false, inject = false;
    double delta = kDefaultDelta;
    std::uint64_t seed = 42;
    std::size_t n = 0, points = 40;

    auto* orth = app.add_subcommand("check-orth", "decide x _|_ y with the characterization");
    add_common(orth);
    orth->add_option("x", xfile, "x as sequence JSON")->required();
    orth->add_option("y", yfile, "y as sequence JSON")->required();
    orth->add_flag("--oracle", oracle, "also run the definition-based oracle");
    orth->add_option("--delta", delta, "oracle resolution, relative to ||x||")->check(CLI::PositiveNumber);

    auto* cls = app.add_subcommand("classify", "smoothness and left/right symmetry of x");
    add_common(cls);
    cls->add_option("x", xfile, "x as sequence JSON")->required();
    cls->add_flag("--witness", witness, "construct witnesses for failed properties");
    cls->add_option("--seed", seed, "seed for witness searches");

    auto* sup = app.add_subcommand("support", "a support functional of x, optionally with the kernel projection of y");
    add_common(sup);
    sup->add_option("x", xfile, "x as sequence JSON")->required();
    sup->add_option("y", yfile, "y as sequence JSON");

    auto* orc = app.add_subcommand("oracle-verify", "oracle on one pair, or an agreement run with --n");
    add_common(orc);
    orc->add_option("x", xfile, "x as sequence JSON");
    orc->add_option("y", yfile, "y as sequence JSON");
    orc->add_option("--delta", delta, "oracle resolution, relative to ||x||")->check(CLI::PositiveNumber);
    orc->add_option("--n", n, "number of sampled pairs");
    orc->add_option("--seed", seed, "sampler seed");
    orc->add_option("--sampler", sampler, "sampler preset or JSON file");

    auto* iso = app.add_subcommand("isometry-verify", "check a signed permutation or falsify a matrix operator");
    add_common(iso);
    iso->add_option("op", opfile, "operator JSON")->required();
    iso->add_option("--n", n, "samples or trials (default 1000)");
    iso->add_option("--seed", seed, "sampler seed");

    auto* prop = app.add_subcommand("proptest", "agreement and classifier soundness campaigns");
    add_common(prop, false);
    prop->add_flag("--all", all, "every space in {linf, c, c0, c00, l1, l3, l3/2}");
    prop->add_option("--n", n, "agreement pairs per space (default 1000)");
    prop->add_option("--seed", seed, "seed");
    prop->add_option("--points", points, "corpus points per space for soundness checks");
    prop->add_option("--sampler", sampler, "sampler preset or JSON file");
    prop->add_option("--config", config, "campaign JSON: {spaces, n, seed, tol, points, sampler}");
    prop->add_flag("--inject-bug", inject, "run against a deliberately broken predicate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json{{"version", kVersion}, {"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2) << "\n";
        std::cerr << "bjseq: " << e.what() << "\n";
        return kBadInput;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    auto load_sampler = [&](const std::string& spec) {
        if (spec.find(".json") != std::string::npos) return sampler_from_json(read_json_file(spec));
        return SamplerConfig::preset(spec);
    };

    int code = kHolds;
    json out;
    try {
        double tol = c.tol ? *c.tol : default_tolerance();

        if (cmd == "check-orth") {
            SpaceId s = c.space_id();
            SequenceRep x = load_sequence(xfile, s, "x"), y = load_sequence(yfile, s, "y");
            Verdict v = birkhoff_james(s, x, y, tol);
            out = header(cmd, s, tol, mode_of({&x, &y}));
            out["verdict"] = to_string(v.outcome);
            out["margin"] = number_or_inf(v.margin);
            out["verdict_mode"] = to_string(v.mode);
            if (oracle) {
                if (y.is_zero()) throw DomainError("oracle needs y != 0");
                Verdict o = oracle_orth(s, x, y, delta);
                json oj = to_json(o);
                oj["delta"] = delta;
                if (!x.is_zero()) {
                    MinimizationResult m = min_norm_over_lambda(x, y, s, delta);
                    oj["minimum"] = to_json(m.value);
                    oj["lambda_star"] = to_json(m.lambda_star);
                }
                oj["agrees"] = o.outcome == v.outcome;
                out["oracle"] = oj;
            }
            code = exit_for(v.outcome);
        } else if (cmd == "classify") {
            SpaceId s = c.space_id();
            SequenceRep x = load_sequence(xfile, s, "x");
            if (s.kind == Space::Lp && s.p == 2) throw DomainError("symmetry classification undefined at p=2");
            Verdict sm = is_smooth(s, x), l = is_left_symmetric(s, x), r = is_right_symmetric(s, x);
            out = header(cmd, s, tol, mode_of({&x}));
            out["smooth"] = classify_value(sm);
            out["left_symmetric"] = classify_value(l);
            out["right_symmetric"] = classify_value(r);
            if (witness) {
                json w = json::object();
                WitnessOptions opt{seed, 2000, tol};
                if (l.fails()) w["left"] = to_json(left_asymmetry_witness(s, x, opt));
                if (r.fails()) w["right"] = to_json(right_asymmetry_witness(s, x, opt));
                if (sm.fails()) {
                    auto [y, z] = additivity_violation(s, x, opt);
                    w["additivity"] = json::array({to_json(y), to_json(z)});
                }
                out["witnesses"] = w;
            }
        } else if (cmd == "support") {
            SpaceId s = c.space_id();
            SequenceRep x = load_sequence(xfile, s, "x");
            if (x.is_zero()) throw DomainError("support functional of 0");
            SupportFunctional f = support_functional(s, x);
            out = header(cmd, s, tol, mode_of({&x}));
            out["functional"] = to_json(f);
            out["dual_norm"] = to_json(f.dual_norm());
            out["action"] = to_json(f.apply(x));
            out["norm"] = to_json(norm(x, s));
            if (!yfile.empty()) {
                SequenceRep y = load_sequence(yfile, s, "y");
                SequenceRep k = project_to_kernel(s, x, y);
                out["action_on_y"] = to_json(f.apply(y));
                out["kernel_projection"] = to_json(k);
                out["x_orthogonal_to_projection"] = to_json(birkhoff_james(s, x, k, tol));
            }
        } else if (cmd == "oracle-verify") {
            SpaceId s = c.space_id();
            if (!xfile.empty()) {
                if (yfile.empty()) throw ValidationError("oracle-verify needs both x and y, or --n");
                SequenceRep x = load_sequence(xfile, s, "x"), y = load_sequence(yfile, s, "y");
                Verdict o = oracle_orth(s, x, y, delta);
                out = header(cmd, s, tol, Mode::Approx);
                out["delta"] = delta;
                out["oracle"] = to_json(o);
                if (!x.is_zero()) {
                    MinimizationResult m = min_norm_over_lambda(x, y, s, delta);
                    out["minimum"] = to_json(m.value);
                    out["lambda_star"] = to_json(m.lambda_star);
                    out["evaluations"] = m.evaluations;
                }
                Verdict v = birkhoff_james(s, x, y, tol);
                out["predicate"] = to_json(v);
                code = exit_for(o.outcome);
            } else {
                if (n == 0) throw ValidationError("oracle-verify needs x and y, or --n");
                AgreementStats st = agreement_report(s, load_sampler(sampler), n, seed, tol, delta);
                out = header(cmd, s, tol, Mode::Approx);
                out["delta"] = delta;
                out["seed"] = seed;
                out["agreement"] = to_json(st);
                code = st.hard_disagree == 0 ? kHolds : kFails;
            }
        } else if (cmd == "isometry-verify") {
            SpaceId s = c.space_id();
            json op = read_json_file(opfile);
            std::size_t trials = n ? n : 1000;
            out = header(cmd, s, tol, Mode::Exact);
            out["seed"] = seed;
            if (op.contains("entries")) {
                FiniteMatrixOperator m = matrix_from_json(op);
                FalsifyResult r = falsify_matrix_isometry(m, s, trials, seed, tol);
                for (const auto& row : m.entries)
                    for (const auto& e : row)
                        if (!e.is_exact()) out["mode"] = "approx";
                out["operator"] = to_json(m);
                out["status"] = to_string(r.status);
                out["trials"] = r.trials;
                if (r.witness) {
                    out["witness"] = to_json(*r.witness);
                    out["norm_x"] = to_json(r.norm_x);
                    out["norm_mx"] = to_json(r.norm_mx);
                }
                code = r.status == FalsifyStatus::Pass ? kHolds : r.status == FalsifyStatus::Witness ? kFails : kUndecided;
            } else {
                SignedPermutation t = signed_permutation_from_json(op);
                IsometryReport r = verify_isometry(t, s, trials, seed);
                std::size_t transport = 0, transport_failures = 0;
                if (s.kind != Space::Lp || s.p != 2) {
                    for (const auto& x : curated_corpus(s, 40, seed)) {
                        ++transport;
                        if (!symmetry_transport_check(t, s, x).holds()) ++transport_failures;
                    }
                }
                json viol = json::array();
                for (const auto& v : r.violations)
                    viol.push_back({{"x", to_json(v.x)}, {"norm_x", to_json(v.before)}, {"norm_tx", to_json(v.after)}});
                out["operator"] = to_json(t);
                out["samples"] = r.samples;
                out["exact_checks"] = r.exact_checks;
                out["violations"] = viol;
                out["symmetry_transport"] = {{"points", transport}, {"failures", transport_failures}};
                bool pass = r.violations.empty() && transport_failures == 0;
                out["status"] = pass ? "pass" : "violation";
                code = pass ? kHolds : kFails;
            }
        } else if (cmd == "proptest") {
            CampaignConfig cc;
            cc.n = 1000;
            cc.seed = seed;
            cc.tol = tol;
            cc.points = points;
            cc.sampler = load_sampler(sampler);
            if (!config.empty()) {
                json j = read_json_file(config);
                if (j.contains("spaces"))
                    for (const auto& sp : j["spaces"]) cc.spaces.push_back(SpaceId::parse(sp.get<std::string>()));
                cc.n = j.value("n", cc.n);
                cc.seed = j.value("seed", cc.seed);
                cc.tol = j.value("tol", cc.tol);
                cc.delta = j.value("delta", cc.delta);
                cc.points = j.value("points", cc.points);
                if (j.contains("sampler"))
                    cc.sampler = j["sampler"].is_string() ? load_sampler(j["sampler"].get<std::string>()) : sampler_from_json(j["sampler"]);
            }
            if (n) cc.n = n;
            if (all) cc.spaces = all_spaces();
            if (!c.space.empty()) cc.spaces.push_back(c.space_id());
            if (cc.spaces.empty()) throw ValidationError("proptest needs --all, --space or a config with spaces");
            cc.inject_bug = inject;
            CampaignReport r = run_campaign(cc);
            out = json{{"version", kVersion}, {"command", cmd}, {"mode", "approx"}, {"tol", cc.tol}};
            json names = json::array();
            for (const auto& s : cc.spaces) names.push_back(s.name());
            out["spaces"] = names;
            out["n"] = cc.n;
            out["seed"] = cc.seed;
            out["delta"] = cc.delta;
            out["inject_bug"] = cc.inject_bug;
            out["sampler"] = to_json(cc.sampler);
            out["report"] = to_json(r);
            code = r.hard_failures() == 0 ? kHolds : kFails;
        }
    } catch (const ValidationError& e) {
        out = json{{"version", kVersion}, {"command", cmd}, {"error", {{"type", "validation"}, {"message", e.what()}}}};
        code = kBadInput;
    } catch (const DomainError& e) {
        out = json{{"version", kVersion}, {"command", cmd}, {"error", {{"type", "domain"}, {"message", e.what()}}}};
        code = kDomain;
    } catch (const SearchExhausted& e) {
        out = json{{"version", kVersion}, {"command", cmd}, {"error", {{"type", "search_exhausted"}, {"message", e.what()}}}};
        code = kExhausted;
    } catch (const json::exception& e) {
        out = json{{"version", kVersion}, {"command", cmd}, {"error", {{"type", "validation"}, {"message", e.what()}}}};
        code = kBadInput;
    } catch (const std::exception& e) {
        out = json{{"version", kVersion}, {"command", cmd}, {"error", {{"type", "internal"}, {"message", e.what()}}}};
        code = kInternal;
    }
    std::cout << out.dump(2) << "\n";
    if (out.contains("error")) std::cerr << "bjseq: " << out["error"]["message"].get<std::string>() << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "bjseq: " << cmd << " finished in " << ms << " ms (exit " << code << ")\n";
    return code;
}
