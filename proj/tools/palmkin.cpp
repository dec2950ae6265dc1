// palmkin: command-line front end for case runs, resolution studies,
// reference comparisons and voxel exports.

#include "palmkin/palmkin.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <thread>

namespace fs = std::filesystem;
using namespace palmkin;

namespace {

double parse_angle(const std::string& s) {
    if (s.rfind("pi/", 0) == 0) return parse_step(Json(s));
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigurationError("cannot parse angle '" + s + "' (use a number or pi/N)");
}

std::vector<double> parse_list(const std::string& s, bool angles) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(angles ? parse_angle(item) : std::stod(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct Common {
    double delta = kDefaultDelta;
    std::string step = "pi/60";
    std::string params;
    std::string out;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "json";

    HandParams hand() const { return params.empty() ? normalized_params() : load_hand_params(params); }
    RunOptions run() const { return {delta, parse_angle(step), threads}; }
};

void add_common(CLI::App* app, Common& c, bool with_format) {
    app->add_option("--delta", c.delta, "voxel edge length")->capture_default_str();
    app->add_option("--step", c.step, "joint sampling step, number or pi/N")->capture_default_str();
    app->add_option("--params", c.params, "hand parameter JSON file");
    app->add_option("--out", c.out, "output directory (stdout when omitted)");
    app->add_option("--threads", c.threads, "worker threads per workspace")->capture_default_str();
    if (with_format) {
        app->add_option("--format", c.format, "json, csv or ply")
            ->check(CLI::IsMember({"json", "csv", "ply"}))
            ->capture_default_str();
    }
}

void emit(const Common& c, const std::string& filename, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(c.out);
    const auto path = (fs::path(c.out) / filename).string();
    write_text(path, text);
    std::cerr << "wrote " << path << '\n';
}

void print_summary(const CaseReport& r) {
    std::fprintf(stderr, "case %d  (delta %.4g, %.1fs)\n", r.spec.id, r.delta, r.seconds);
    for (const auto& d : r.digits) {
        std::fprintf(stderr, "  %-6s reachable %9.6f  (%zu voxels, %llu samples)\n",
                     std::string(to_string(d.digit)).c_str(), d.volume, d.voxels,
                     static_cast<unsigned long long>(d.samples));
    }
    for (const auto& p : r.pairs) {
        std::fprintf(stderr, "  thumb-%-6s overlap %9.6f  (%zu voxels)  own %6.2f%%\n",
                     std::string(to_string(p.finger)).c_str(), p.volume, p.voxels,
                     p.ratio_own_pct ? *p.ratio_own_pct : 0.0);
    }
}

// Voxel clouds for every digit and every thumb-finger overlap of one case.
void export_clouds(Analyzer& a, const CaseSpec& spec, const Common& c) {
    if (c.out.empty()) throw ConfigurationError("--out is required for csv/ply export");
    const auto ext = "." + c.format;
    const auto stem = "case" + std::to_string(spec.id) + "_";
    const auto text = [&](const VoxelSet& s) { return c.format == "csv" ? to_csv(s) : to_ply(s); };
    for (Digit d : kAllDigits) emit(c, stem + std::string(to_string(d)) + ext, text(a.digit_workspace(spec, d)));
    for (Digit f : kFingers) {
        const auto ov = a.digit_overlap(spec, f);
        const auto name = stem + "overlap_thumb-" + std::string(to_string(f));
        emit(c, name + "_thumbcounts" + ext, text(ov.as_voxel_set(true)));
        emit(c, name + "_fingercounts" + ext, text(ov.as_voxel_set(false)));
    }
}

int run_compare(const Common& c, const std::string& ref_path) {
    const auto ref = load_reference(ref_path);
    const auto params = c.hand();
    // One analyzer per resolution, each reused across cases.
    std::map<std::pair<double, double>, std::unique_ptr<Analyzer>> analyzers;
    std::map<std::tuple<double, double, int>, CaseReport> reports;
    std::vector<ComparisonRow> rows;
    for (const auto& e : ref.entries) {
        auto& a = analyzers[{e.delta, e.step}];
        if (!a) a = std::make_unique<Analyzer>(params, RunOptions{e.delta, e.step, c.threads});
        auto it = reports.find({e.delta, e.step, e.case_id});
        if (it == reports.end()) it = reports.emplace(std::tuple{e.delta, e.step, e.case_id}, a->run_case(e.case_id)).first;
        rows.push_back(compare_entry(e, metric_value(it->second, e.digit, e.metric)));
    }
    for (const auto& r : rows) {
        std::fprintf(stderr, "%s case %d %-6s %-26s delta %.3f step pi/%.0f expected %.6f actual %s err %s tol %.0f%%\n",
                     r.pass ? "PASS" : "FAIL", r.ref.case_id, std::string(to_string(r.ref.digit)).c_str(),
                     r.ref.metric.c_str(), r.ref.delta, std::numbers::pi / r.ref.step, r.ref.expected,
                     r.actual ? std::to_string(*r.actual).c_str() : "n/a",
                     r.relative_error ? (std::to_string(100.0 * *r.relative_error) + "%").c_str() : "n/a",
                     100.0 * r.ref.tolerance);
    }
    emit(c, "compare.json", dump(to_json(rows)));
    return all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Palm/finger workspace and thumb overlap analysis"};
    app.require_subcommand(1);

    Common common;

    auto* case_cmd = app.add_subcommand("case", "run one case");
    int case_id = 1;
    case_cmd->add_option("id", case_id, "case id 1-7")->required();
    add_common(case_cmd, common, true);

    auto* all_cmd = app.add_subcommand("all", "run all seven cases");
    add_common(all_cmd, common, false);

    auto* conv_cmd = app.add_subcommand("converge", "volume vs. voxel size and joint step (case 7)");
    std::string deltas = "0.05,0.025";
    std::string steps = "pi/18,pi/30,pi/45,pi/60,pi/90";
    double threshold = 3.0;
    conv_cmd->add_option("--deltas", deltas, "comma-separated voxel sizes")->capture_default_str();
    conv_cmd->add_option("--steps", steps, "comma-separated steps, coarse to fine")->capture_default_str();
    conv_cmd->add_option("--threshold", threshold, "convergence threshold in percent")->capture_default_str();
    add_common(conv_cmd, common, false);

    auto* cmp_cmd = app.add_subcommand("compare", "check results against a reference table");
    std::string ref_path = "data/reference.json";
    cmp_cmd->add_option("--reference", ref_path, "reference JSON")->capture_default_str();
    add_common(cmp_cmd, common, false);

    auto* exp_cmd = app.add_subcommand("export", "write a case report, voxel clouds, the case catalog or parameters");
    std::string target;
    exp_cmd->add_option("target", target, "case id 1-7, 'catalog' or 'params'")->required();
    add_common(exp_cmd, common, true);

    auto* ov_cmd = app.add_subcommand("overlap", "overlap of two exported CSV voxel files");
    std::string thumb_csv, finger_csv;
    ov_cmd->add_option("thumb", thumb_csv, "thumb voxel CSV")->required();
    ov_cmd->add_option("finger", finger_csv, "finger voxel CSV")->required();
    add_common(ov_cmd, common, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*case_cmd || *exp_cmd) {
            if (*exp_cmd && (target == "catalog" || target == "params")) {
                if (common.format != "json") throw ConfigurationError(target + " is only available as json");
                const auto j = target == "catalog" ? case_catalog() : to_json(common.hand());
                emit(common, target == "catalog" ? "cases.json" : "params.json", dump(j));
                return 0;
            }
            const int id = *case_cmd ? case_id : std::stoi(target);
            Analyzer a(common.hand(), common.run());
            const auto spec = case_spec(id);
            if (common.format == "json") {
                const auto r = a.run_case(spec);
                print_summary(r);
                emit(common, "case" + std::to_string(id) + ".json", dump(to_json(r)));
            } else {
                export_clouds(a, spec, common);
            }
            return 0;
        }
        if (*all_cmd) {
            Analyzer a(common.hand(), common.run());
            Json reports = Json::array();
            for (int id = 1; id <= 7; ++id) {
                const auto r = a.run_case(id);
                print_summary(r);
                reports.push_back(to_json(r));
            }
            emit(common, "all_cases.json", dump(reports));
            return 0;
        }
        if (*conv_cmd) {
            const auto study = convergence_study(parse_list(deltas, false), parse_list(steps, true),
                                                 {Digit::thumb, Digit::index, Digit::little}, case_spec(7),
                                                 common.hand(), common.threads, threshold);
            for (const auto& e : study.entries) {
                std::fprintf(stderr, "%-6s delta %.4g step %.5f  volume %.6f  change %s\n",
                             std::string(to_string(e.digit)).c_str(), e.delta, e.step, e.volume,
                             e.change_pct ? (std::to_string(*e.change_pct) + "%").c_str() : "-");
            }
            emit(common, "convergence.json", dump(to_json(study)));
            return 0;
        }
        if (*cmp_cmd) return run_compare(common, ref_path);
        if (*ov_cmd) {
            const auto t = load_csv(thumb_csv, common.delta);
            const auto f = load_csv(finger_csv, common.delta);
            const auto ov = overlap(t, f);
            Json j{{"delta", common.delta},
                   {"voxels", ov.keys.size()},
                   {"overlap_volume", ov.volume()},
                   {"thumb_vwrc", detail::vwrc_json(vwrc(ov.thumb_counts))},
                   {"finger_vwrc", detail::vwrc_json(vwrc(ov.finger_counts))}};
            if (common.format == "json") {
                emit(common, "overlap.json", dump(j));
            } else {
                const auto s = ov.as_voxel_set(true);
                emit(common, "overlap." + common.format, common.format == "csv" ? to_csv(s) : to_ply(s));
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
