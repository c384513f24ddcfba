#include "boundarylab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "boundarylab/covering.hpp"
#include "boundarylab/harmonic.hpp"
#include "boundarylab/io.hpp"
#include "boundarylab/svg.hpp"

namespace bl {

namespace {

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path.empty()) {
        out << payload;
        if (!payload.empty() && payload.back() != '\n') out << "\n";
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + path);
    f << payload;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

cplx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

json classify_report(SchottkySystem& sys, double theta, int horizon) {
    json j;
    j["system"] = sys.name.empty() ? "custom" : sys.name;
    j["theta"] = theta;
    j["horizon"] = horizon;
    const RadialTypeResult rt = radial_type(sys, theta, horizon);
    j["coding"] = report_json(rt.coding);
    json itinerary = json::array();
    for (const Letter& l : rt.coding.itinerary)
        itinerary.push_back(json::array({l.gen, l.exp}));
    j["itinerary"] = itinerary;
    j["depths"] = rt.depths.entries;
    j["depth_class"] = to_string(rt.depth_class);
    j["radial_type"] = to_string(rt.tag);
    const AssociatedAddresses assoc = associated_addresses_for(sys, rt.coding);
    json addr = json::array();
    for (const auto& a : assoc.matches) addr.push_back(a.digits);
    j["associated_addresses"] = addr;
    json prefixes = json::array();
    for (const auto& a : assoc.root_prefixes) prefixes.push_back(a.digits);
    j["root_prefixes"] = prefixes;
    return j;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    if (const char* threads = std::getenv("BOUNDARY_LAB_THREADS")) {
#ifdef _OPENMP
        const int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
#else
        (void)threads;
#endif
    }

    CLI::App app{"boundary behaviour of universal coverings at desk scale"};
    app.require_subcommand(1);

    std::string system_arg = "cyclic";
    std::string out_path;
    double theta = 0.0;
    int horizon = 64;
    int depth = 6;
    int orbit_len = 0;
    double annulus_R = 2.0;
    bool punctured = false;
    int loops = 1;
    double target_angle = 0.8;
    cplx z_point(1.0, 0.0);
    std::string z_arg = "1";
    long mc_walks = 0;
    std::uint64_t seed = 1;
    int k_power = 1;

    std::vector<double> interval;
    auto* classify_cmd = app.add_subcommand("classify", "radial type of a boundary point");
    classify_cmd->add_option("--system", system_arg, "builtin name or JSON file");
    auto* theta_opt = classify_cmd->add_option("--theta", theta, "boundary angle");
    classify_cmd->add_option("--interval", interval, "boundary interval lo hi")
        ->expected(2)
        ->excludes(theta_opt);
    classify_cmd->add_option("--horizon", horizon, "itinerary horizon");
    classify_cmd->add_option("--out", out_path, "output file");

    auto* depth_cmd = app.add_subcommand("depth", "depth sequence of a boundary point");
    depth_cmd->add_option("--system", system_arg);
    depth_cmd->add_option("--theta", theta)->required();
    depth_cmd->add_option("--horizon", horizon);
    depth_cmd->add_option("--out", out_path);

    auto* prime_cmd = app.add_subcommand("prime-end", "prime end class and impression");
    prime_cmd->add_option("--system", system_arg);
    prime_cmd->add_option("--theta", theta)->required();
    prime_cmd->add_option("--horizon", horizon);
    prime_cmd->add_option("--out", out_path);

    auto* cross_cmd = app.add_subcommand("true-crosscut", "true-crosscut verdict");
    cross_cmd->add_option("--system", system_arg);
    cross_cmd->add_option("--depth", depth, "materialization depth");
    cross_cmd->add_option("--out", out_path);

    auto* cover_cmd = app.add_subcommand("cover", "limit-set cover arcs as JSON");
    cover_cmd->add_option("--system", system_arg);
    cover_cmd->add_option("--depth", depth)->required();
    cover_cmd->add_option("--out", out_path);

    auto* limit_cmd = app.add_subcommand("limit-set", "limit-set cover plot (SVG)");
    limit_cmd->add_option("--system", system_arg);
    limit_cmd->add_option("--depth", depth)->required();
    limit_cmd->add_option("--out", out_path);

    auto* render_cmd = app.add_subcommand("render", "system plot (SVG)");
    render_cmd->add_option("--system", system_arg);
    render_cmd->add_option("--depth", depth);
    render_cmd->add_option("--orbit", orbit_len, "orbit word length to draw");
    render_cmd->add_option("--out", out_path);

    auto* trace_cmd = app.add_subcommand(
        "trace", "radial trace through a covering; CSV columns: t, re_pi, im_pi");
    trace_cmd->add_option("--annulus", annulus_R, "annulus parameter R");
    trace_cmd->add_flag("--punctured", punctured, "use the punctured-disk covering");
    trace_cmd->add_option("--theta", theta, "radial direction")->required();
    trace_cmd->add_option("--samples", horizon, "number of samples");
    trace_cmd->add_option("--out", out_path);

    auto* lift_cmd = app.add_subcommand(
        "lift",
        "lift a curve through the covering; CSV columns: t, re_omega, im_omega, "
        "re_lift, im_lift");
    lift_cmd->add_option("--annulus", annulus_R, "annulus parameter R");
    lift_cmd->add_flag("--punctured", punctured, "use the punctured-disk covering");
    lift_cmd->add_option("--loops", loops, "number of core-circle loops");
    lift_cmd->add_option("--target-angle", target_angle, "radial target direction");
    lift_cmd->add_option("--out", out_path);

    auto* corr_cmd = app.add_subcommand("correspond", "loop count vs deck power report");
    corr_cmd->add_option("--annulus", annulus_R);
    corr_cmd->add_option("--k", k_power, "winding count")->required();
    corr_cmd->add_option("--angle", target_angle, "boundary point direction");
    corr_cmd->add_option("--out", out_path);

    auto* harm_cmd = app.add_subcommand("harmonic", "harmonic measure of the inner circle");
    harm_cmd->add_option("--annulus", annulus_R)->required();
    harm_cmd->add_option("--z", z_arg, "evaluation point re[,im]");
    harm_cmd->add_option("--mc", mc_walks, "Monte Carlo walks (0 = closed form)");
    harm_cmd->add_option("--seed", seed, "master seed");
    harm_cmd->add_option("--out", out_path);

    std::vector<const char*> argv;
    argv.push_back("boundary-lab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            err << "usage error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }

    try {
        if (classify_cmd->parsed()) {
            if (interval.size() == 2) {
                theta = normalize_angle(interval[0] +
                                        0.5 * ccw_gap(interval[0], interval[1]));
            } else if (theta_opt->count() == 0) {
                err << "usage error: classify needs --theta or --interval\n";
                return 1;
            }
            SchottkySystem sys = load_system(system_arg);
            sys.materialize(std::min(horizon, 12));
            json j = classify_report(sys, theta, horizon);
            if (interval.size() == 2)
                j["interval"] = json::array({interval[0], interval[1]});
            write_output(out_path, j.dump(2), out);
        } else if (trace_cmd->parsed()) {
            const ExplicitCovering cov =
                punctured ? build_punctured_disk_covering() : build_annulus_covering(annulus_R);
            const RadialTrace tr =
                radial_trace(cov, theta, std::max(horizon, 8), 1.0 - 1e-12);
            std::string csv = "t,re_pi,im_pi\n";
            for (size_t i = 0; i < tr.t.size(); ++i)
                csv += csv_num(tr.t[i]) + "," + csv_num(tr.values[i].real()) + "," +
                       csv_num(tr.values[i].imag()) + "\n";
            write_output(out_path, csv, out);
        } else if (depth_cmd->parsed()) {
            SchottkySystem sys = load_system(system_arg);
            sys.materialize(std::min(horizon, 12));
            const DepthSequence d = depth_sequence(sys, theta, horizon);
            json j = report_json(d);
            DepthDiagnostics diag;
            j["depth_class"] = to_string(classify_depth(d, &diag));
            j["tail_min"] = diag.tail_min;
            j["tail_max"] = diag.tail_max;
            write_output(out_path, j.dump(2), out);
        } else if (prime_cmd->parsed()) {
            SchottkySystem sys = load_system(system_arg);
            sys.materialize(std::min(horizon, 12));
            const PrimeEndResult pe = classify_prime_end(sys, theta, horizon);
            json j;
            j["class"] = to_string(pe.cls);
            j["impression"] = report_json(impression_of(sys, pe));
            json cert;
            if (pe.cls == PrimeEndClass::Regular) {
                cert["terminal_gap"] = pe.terminal_gap;
                cert["component_class"] = pe.gap_class;
            } else if (pe.cls == PrimeEndClass::Parabolic) {
                cert["parabolic_fixed"] = pe.parabolic_fixed;
            }
            cert["chain_head"] = to_json(pe.chain.at(0));
            cert["chain_next"] = to_json(pe.chain.at(1));
            j["certificate"] = cert;
            write_output(out_path, j.dump(2), out);
        } else if (cross_cmd->parsed()) {
            SchottkySystem sys = load_system(system_arg);
            const TrueCrosscutResult r = detect_true_crosscut(sys, depth);
            json j;
            j["verdict"] = to_string(r.verdict);
            j["depth_used"] = r.depth_used;
            j["depth0_cover_length"] = r.depth0_cover_length;
            if (r.certificate_gap) {
                j["certificate"] = {{"gap", to_json(r.certificate_gap->arc)},
                                    {"component_class", r.certificate_class}};
            } else {
                j["certificate"] = nullptr;
                j["note"] = "no gap found up to depth " + std::to_string(r.depth_used);
            }
            write_output(out_path, j.dump(2), out);
        } else if (cover_cmd->parsed()) {
            SchottkySystem sys = load_system(system_arg);
            sys.materialize(depth);
            const LimitSetCover cover = limit_set_cover(sys, depth);
            json j;
            j["depth"] = cover.depth;
            j["total_length"] = cover.total_length;
            json arcs = json::array();
            for (const Arc& a : cover.arcs) arcs.push_back(to_json(a));
            j["arcs"] = arcs;
            write_output(out_path, j.dump(2), out);
        } else if (limit_cmd->parsed()) {
            SchottkySystem sys = load_system(system_arg);
            sys.materialize(depth);
            write_output(out_path, render_cover_svg(sys, depth), out);
        } else if (render_cmd->parsed()) {
            if (system_arg == "reef_point") {
                write_output(out_path, render_reef_svg(reef_point_geometry()), out);
            } else if (system_arg == "reef_interval") {
                write_output(out_path, render_reef_svg(reef_interval_geometry()), out);
            } else {
                SchottkySystem sys = load_system(system_arg);
                sys.materialize(std::max(depth, 1));
                write_output(out_path, render_system_svg(sys, depth, orbit_len), out);
            }
        } else if (lift_cmd->parsed()) {
            const ExplicitCovering cov =
                punctured ? build_punctured_disk_covering() : build_annulus_covering(annulus_R);
            std::vector<cplx> curve;
            const cplx start_val = cov.evaluate(cplx(0, 0));
            if (cov.kind == ExplicitCovering::Kind::Annulus) {
                for (int l = 0; l < loops; ++l)
                    for (int i = 0; i < 128; ++i)
                        curve.push_back(std::polar(1.0, kTwoPi * i / 128.0));
                for (int i = 0; i <= 128; ++i) {
                    const double r =
                        1.0 + (annulus_R - 1e-6 - 1.0) * i / 128.0;
                    curve.push_back(std::polar(r, target_angle));
                }
            } else {
                for (int i = 0; i <= 256; ++i) {
                    const double t = static_cast<double>(i) / 256.0;
                    curve.push_back(start_val * (1.0 - t) +
                                    std::polar(1e-5, target_angle) * t);
                }
            }
            const auto lifted = lift_curve(cov, curve, cplx(0, 0), 1e-5);
            std::string csv = "t,re_omega,im_omega,re_lift,im_lift\n";
            for (size_t i = 0; i < lifted.size(); ++i) {
                const double t = static_cast<double>(i) / (lifted.size() - 1);
                csv += csv_num(t) + "," + csv_num(curve[i].real()) + "," +
                       csv_num(curve[i].imag()) + "," + csv_num(lifted[i].real()) + "," +
                       csv_num(lifted[i].imag()) + "\n";
            }
            write_output(out_path, csv, out);
        } else if (corr_cmd->parsed()) {
            const ExplicitCovering cov = build_annulus_covering(annulus_R);
            const CorrespondenceReport rep = correspondence_check(cov, target_angle, k_power);
            json j;
            j["k"] = rep.k;
            j["endpoint_base"] = to_json(rep.endpoint_base);
            j["endpoint_looped"] = to_json(rep.endpoint_looped);
            j["deck_image"] = to_json(rep.deck_image);
            j["discrepancy"] = rep.discrepancy;
            write_output(out_path, j.dump(2), out);
        } else if (harm_cmd->parsed()) {
            z_point = parse_complex(z_arg);
            json j;
            j["R"] = annulus_R;
            j["z"] = to_json(z_point);
            if (mc_walks > 0) {
                const HarmonicEstimate est =
                    harmonic_measure_annulus_mc(annulus_R, z_point, mc_walks, seed);
                j["method"] = "monte-carlo";
                j["n_walks"] = est.n_walks;
                j["seed"] = seed;
                j["value"] = est.value;
                j["stderr"] = est.stderr_;
            } else {
                const HarmonicEstimate est =
                    harmonic_measure_annulus_closed_form(annulus_R, z_point);
                j["method"] = "closed-form";
                j["value"] = est.value;
            }
            write_output(out_path, j.dump(2), out);
        }
    } catch (const AmbiguousAtTolerance& e) {
        err << "error: AmbiguousAtTolerance: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "error: ResourceLimit: " << e.what() << "\n";
        return 2;
    } catch (const StepTooLarge& e) {
        err << "error: StepTooLarge: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace bl
