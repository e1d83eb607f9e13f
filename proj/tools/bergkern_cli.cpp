// Command-line front end: constructs bases, runs weight-scaling studies,
// model-surface verifications, Chern densities, and equidistribution
// averages, emitting deterministic CSV/JSON tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bergkern/reports.hpp"

namespace {

using namespace bergkern;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTruncation = 4;

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out);
    f << text;
}

std::vector<HalfInt> parse_weights(const std::vector<std::string>& ws) {
    std::vector<HalfInt> out;
    for (const auto& w : ws) out.push_back(HalfInt::parse(w));
    return out;
}

template <typename Real>
bergman::PipelineConfig<Real> pipeline_config(const reports::RunConfig& cfg) {
    bergman::PipelineConfig<Real> pc;
    pc.trunc = cfg.trunc;
    pc.panels_x = cfg.panels_x;
    pc.panels_y = cfg.panels_y;
    pc.nodes_per_panel = cfg.nodes_per_panel;
    pc.y_cap_min = Real(cfg.y_cap_min);
    return pc;
}

template <typename Real>
int run_scaling(const reports::RunConfig& cfg, const std::string& out) {
    std::vector<HPoint<Real>> probes;
    for (auto& p : cfg.probes) probes.push_back({Real(p.first), Real(p.second)});
    std::vector<bergman::ScalingRow<Real>> rows;
    for (auto k : cfg.weights) {
        try {
            auto pipe = bergman::build_pipeline<Real>(k, pipeline_config<Real>(cfg));
            rows.push_back(bergman::scaling_row(pipe, probes, Real(cfg.y_cut),
                                                pipeline_config<Real>(cfg)));
        } catch (const GramNotPositiveDefinite& e) {
            std::fprintf(stderr, "gram failure at weight %s: %s\n", k.str().c_str(), e.what());
            return kExitNumerical;
        }
    }
    write_output(cfg.format == "json" ? reports::scaling_report_json(rows, cfg)
                                      : reports::scaling_report_csv(rows, cfg),
                 out);
    return kExitOk;
}

template <typename Real>
int run_models(const std::string& kind, const std::vector<unsigned>& ms,
               const std::vector<double>& ts, std::size_t Q, double tol,
               const reports::RunConfig& cfg, const std::string& out) {
    std::vector<models::BoucheRow<Real>> torus;
    std::vector<models::P1Row<Real>> p1;
    try {
        if (kind == "torus" || kind == "both") {
            for (double t : ts) {
                auto rows = models::verify_bouche_limit<Real>(ms, Real(t), Q, Real(tol));
                torus.insert(torus.end(), rows.begin(), rows.end());
            }
        }
        if (kind == "p1" || kind == "both") p1 = models::verify_p1_scaling<Real>(ms);
    } catch (const TailToleranceError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitTruncation;
    }
    write_output(cfg.format == "json" ? reports::models_report_json(torus, p1)
                                      : reports::models_report_csv(torus, p1),
                 out);
    return kExitOk;
}

template <typename Real>
int run_chern(const std::vector<std::string>& ws, const std::vector<double>& pts, double h,
              const reports::RunConfig& cfg, const std::string& out) {
    auto weights = parse_weights(ws);
    std::vector<HPoint<Real>> points;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
        points.push_back({Real(pts[i]), Real(pts[i + 1])});
    if (points.empty()) points = {{Real(0), Real(1)}, {Real(0.3), Real(1.7)}, {Real(-0.2), Real(2.4)}};
    write_output(cfg.format == "json" ? reports::chern_report_json<Real>(weights, points, Real(h))
                                      : reports::chern_report_csv<Real>(weights, points, Real(h)),
                 out);
    return kExitOk;
}

template <typename Real>
int run_que(const std::string& kstr, double cx, double cy, double width,
            const reports::RunConfig& cfg, const std::string& out) {
    HalfInt k = HalfInt::parse(kstr);
    try {
        auto pipe = bergman::build_pipeline<Real>(k, pipeline_config<Real>(cfg));
        bergman::Kernel<Real> kernel(pipe.ortho);
        Real w2 = Real(width) * Real(width);
        auto bump = [=](const HPoint<Real>& z) {
            Real dx = z.x - Real(cx), dy = z.y - Real(cy);
            return std::exp(-(dx * dx + dy * dy) / w2);
        };
        // e^{-(y-cy)^2/w^2} <= C e^{-y} with C = e^{w^2/4 + cy}
        TailMajorant<Real> bump_tail{std::exp(w2 / 4 + Real(cy)), Real(1), Real(-2)};
        auto r = bergman::que_average(bump, bump_tail, kernel, pipe.grid);
        write_output(cfg.format == "json" ? reports::que_report_json(k, r, kernel.dimension())
                                          : reports::que_report_csv(k, r, kernel.dimension()),
                 out);
    } catch (const GramNotPositiveDefinite& e) {
        std::fprintf(stderr, "gram failure at weight %s: %s\n", k.str().c_str(), e.what());
        return kExitNumerical;
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitTruncation;
    }
    return kExitOk;
}

int run_basis(const std::string& kstr, unsigned trunc, const std::string& out) {
    HalfInt k = HalfInt::parse(kstr);
    if (k.twice() < 0) {
        std::fprintf(stderr, "negative weight %s has no cusp forms\n", k.str().c_str());
        return kExitBadInput;
    }
    auto basis = forms::cusp_basis(k, trunc);
    auto j = reports::basis_json(basis);
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal cusp-form bases, Bergman kernels, and model-surface checks"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string out, config_path;
    int precision = 64;
    unsigned trunc = 160;
    std::string format = "csv";
    app.add_option("--out", out, "output path (default stdout)");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--precision", precision, "evaluation mantissa bits: 53 or 64");
    app.add_option("--trunc", trunc, "q-expansion truncation");
    app.add_option("--format", format, "csv or json");

    auto* cmd_basis = app.add_subcommand("basis", "construct a cusp-form basis");
    std::string kstr = "12";
    cmd_basis->add_option("--k", kstr, "weight, e.g. 12 or 25/2")->required();

    auto* cmd_scaling = app.add_subcommand("scaling", "weight sweep of B_k ratios and sups");
    std::vector<std::string> weight_args;
    double y_cut = 4.0;
    cmd_scaling->add_option("--weights", weight_args, "weights, e.g. 12 24 25/2");
    cmd_scaling->add_option("--y-cut", y_cut, "sup truncation height");

    auto* cmd_models = app.add_subcommand("models", "model-surface heat/Bergman tables");
    std::string kind = "both";
    std::vector<unsigned> ms = {8, 16, 32, 64};
    std::vector<double> ts = {1.0};
    std::size_t Q = 64;
    double tail_tol = 1e-12;
    cmd_models->add_option("--kind", kind, "torus | p1 | both");
    cmd_models->add_option("--m", ms, "bundle degrees");
    cmd_models->add_option("--t", ts, "heat times");
    cmd_models->add_option("--Q", Q, "spectral truncation");
    cmd_models->add_option("--tol", tail_tol, "spectral tail tolerance");

    auto* cmd_chern = app.add_subcommand("chern", "numeric vs closed Chern densities");
    std::vector<std::string> chern_ws = {"1/2", "1", "2"};
    std::vector<double> chern_pts;
    double h = 0.01;
    cmd_chern->add_option("--w", chern_ws, "metric weights");
    cmd_chern->add_option("--points", chern_pts, "x y pairs");
    cmd_chern->add_option("--step", h, "finite-difference step");

    auto* cmd_que = app.add_subcommand("que", "averaged equidistribution check");
    std::string que_k = "12";
    double cx = 0.1, cy = 1.5, width = 0.3;
    cmd_que->add_option("--k", que_k, "weight");
    cmd_que->add_option("--center-x", cx, "bump center x");
    cmd_que->add_option("--center-y", cy, "bump center y");
    cmd_que->add_option("--width", width, "bump width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        reports::RunConfig cfg = reports::RunConfig::defaults();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::fprintf(stderr, "cannot read config %s\n", config_path.c_str());
                return kExitBadInput;
            }
            reports::json j;
            f >> j;
            cfg = reports::config_from_json(j);
        }
        if (app.count("--trunc")) cfg.trunc = trunc;
        if (app.count("--format")) cfg.format = format;
        if (app.count("--precision")) cfg.precision = precision;
        if (cfg.precision != 53 && cfg.precision != 64) {
            std::fprintf(stderr, "precision must be 53 or 64\n");
            return kExitBadInput;
        }
        if (!weight_args.empty()) cfg.weights = parse_weights(weight_args);
        if (cmd_scaling->count("--y-cut")) cfg.y_cut = y_cut;

        const bool ld = cfg.precision == 64;
        if (*cmd_basis) return run_basis(kstr, cfg.trunc, out);
        if (*cmd_scaling)
            return ld ? run_scaling<long double>(cfg, out) : run_scaling<double>(cfg, out);
        if (*cmd_models)
            return ld ? run_models<long double>(kind, ms, ts, Q, tail_tol, cfg, out)
                      : run_models<double>(kind, ms, ts, Q, tail_tol, cfg, out);
        if (*cmd_chern)
            return ld ? run_chern<long double>(chern_ws, chern_pts, h, cfg, out)
                      : run_chern<double>(chern_ws, chern_pts, h, cfg, out);
        if (*cmd_que)
            return ld ? run_que<long double>(que_k, cx, cy, width, cfg, out)
                      : run_que<double>(que_k, cx, cy, width, cfg, out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return kExitOk;
}
