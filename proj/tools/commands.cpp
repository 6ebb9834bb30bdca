#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hgseg/error.hpp"
#include "hgseg/fh.hpp"
#include "hgseg/grid_graph.hpp"
#include "hgseg/hierarchy.hpp"
#include "hgseg/image_io.hpp"
#include "hgseg/merge_tree.hpp"
#include "hgseg/oracle.hpp"
#include "hgseg/saliency.hpp"

namespace hgseg::cli {

EdgeWeightedGraph read_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::size_t> vertex_count;
    std::vector<WeightedEdge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        std::istringstream values(line);
        auto bad = [&] { return InvalidInput("graph line " + std::to_string(line_no) + ": malformed"); };
        if (!vertex_count) {
            std::size_t n;
            std::string rest;
            if (!(values >> n) || (values >> rest)) throw bad();
            vertex_count = n;
            continue;
        }
        std::int64_t u, v, w;
        std::string rest;
        if (!(values >> u >> v >> w) || (values >> rest) || u < 0 || v < 0) throw bad();
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    }
    if (!vertex_count) throw InvalidInput("graph file has no vertex count");
    return EdgeWeightedGraph(*vertex_count, std::move(edges));
}

namespace {

class UsageError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "usage"; }
};

struct Loaded {
    std::optional<RgbImage> image;
    EdgeWeightedGraph graph;
    std::vector<std::string> outputs;
};

std::string read_text(const std::string& path) {
    const auto bytes = read_file(path);
    return {bytes.begin(), bytes.end()};
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Loaded load(const RunConfig& cfg, std::size_t outputs) {
    Loaded in;
    std::size_t first_output = 0;
    if (cfg.graph_path) {
        in.graph = read_graph_text(read_text(*cfg.graph_path));
    } else {
        if (cfg.positional.empty()) throw UsageError("missing input image");
        in.image = read_ppm(read_file(cfg.positional[0]));
        in.graph = build_grid_graph(*in.image);
        first_output = 1;
    }
    in.outputs.assign(cfg.positional.begin() + static_cast<std::ptrdiff_t>(first_output),
                      cfg.positional.end());
    if (in.outputs.size() != outputs) {
        throw UsageError("expected " + std::to_string(outputs) + " output path(s), got " +
                         std::to_string(in.outputs.size()));
    }
    return in;
}

std::string labels_text(const Partition& p) {
    std::ostringstream out;
    for (std::size_t v = 0; v < p.labels.size(); ++v) out << v << ' ' << p.labels[v] << '\n';
    return out.str();
}

// Writes a segmentation: mean-colour image for image inputs, label list otherwise.
void write_partition(const Loaded& in, const Partition& p, const std::string& path) {
    if (in.image) {
        const auto bytes = write_ppm(render_segmentation(p, *in.image, RenderStyle::mean_color));
        write_file(path, bytes);
    } else {
        write_text(path, labels_text(p));
    }
}

std::size_t min_area_for(const RunConfig& cfg) {
    // Debug graphs are tiny; only filter them when asked explicitly.
    if (cfg.min_area) return *cfg.min_area;
    return cfg.graph_path ? 0 : kDefaultMinArea;
}

std::string scales_text(const ScaleMap& map) {
    struct Row {
        Scale scale;
        VertexId u, v;
        Weight w;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < map.edges.size(); ++i) {
        const auto& e = map.edges[i];
        rows.push_back({map.scales[i], std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.scale, a.u, a.v) < std::tie(b.scale, b.u, b.v);
    });
    std::ostringstream out;
    out << "edge_u,edge_v,weight,scale\n";
    for (const auto& r : rows) out << r.u << ',' << r.v << ',' << r.w << ',' << r.scale << '\n';
    return out.str();
}

int cmd_hierarchy(const RunConfig& cfg, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Loaded in = load(cfg, 2);
    const Mst mst = kruskal_mst(in.graph);
    const ScaleMap scales = compute_hierarchy(in.graph, mst);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_text(in.outputs[0], merge_tree(scales).to_text());
    write_text(in.outputs[1], scales_text(scales));
    out << "edges " << in.graph.edges().size() << "\n"
        << "mst_edges " << mst.edges.size() << "\n"
        << "distinct_scales " << scales.distinct_scales().size() << "\n"
        << "seconds " << std::fixed << std::setprecision(3) << elapsed << "\n";
    return 0;
}

int cmd_cut(const RunConfig& cfg, std::ostream& out) {
    if (cfg.scale.has_value() == cfg.regions.has_value()) {
        throw UsageError("exactly one of --scale and --regions is required");
    }
    const Loaded in = load(cfg, 1);
    const ScaleMap scales = compute_hierarchy(in.graph, kruskal_mst(in.graph));
    LevelCut level;
    if (cfg.scale) {
        if (*cfg.scale < 0) throw UsageError("--scale must be non-negative");
        level = {*cfg.scale, cut(scales, *cfg.scale)};
    } else {
        level = cut_to_region_count(scales, *cfg.regions);
    }
    const std::size_t before = level.partition.region_count;
    const Partition filtered = area_filter(level.partition, in.graph, min_area_for(cfg));
    write_partition(in, filtered, in.outputs[0]);
    out << "scale " << level.lambda << "\n"
        << "regions_before_filter " << before << "\n"
        << "regions_after_filter " << filtered.region_count << "\n";
    return 0;
}

int cmd_fh(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.k) throw UsageError("--k is required");
    if (*cfg.k < 0) throw UsageError("--k must be non-negative");
    const Loaded in = load(cfg, 1);
    const Partition raw = segment_fh(kruskal_mst(in.graph), *cfg.k);
    const Partition filtered = area_filter(raw, in.graph, min_area_for(cfg));
    write_partition(in, filtered, in.outputs[0]);
    out << "regions_before_filter " << raw.region_count << "\n"
        << "regions_after_filter " << filtered.region_count << "\n";
    return 0;
}

int cmd_saliency(const RunConfig& cfg, std::ostream& out) {
    Normalization norm;
    if (cfg.norm == "linear") {
        norm = Normalization::linear;
    } else if (cfg.norm == "log") {
        norm = Normalization::log;
    } else {
        throw UsageError("--norm must be linear or log");
    }
    const Loaded in = load(cfg, 1);
    const ScaleMap scales = compute_hierarchy(in.graph, kruskal_mst(in.graph));
    const SaliencyMap sal = saliency_map(scales, in.graph);
    Scale max_value = 0;
    for (const auto& e : sal.edges) max_value = std::max(max_value, e.value);

    if (in.image) {
        const GrayImage img = render_contours(sal, in.image->shape(), norm, cfg.invert);
        write_file(in.outputs[0], write_pgm(img));
        out << "width " << img.width << "\nheight " << img.height << "\nbit_depth " << img.bit_depth << "\n";
    } else {
        std::ostringstream text;
        text << "edge_u,edge_v,saliency\n";
        for (const auto& e : sal.edges) text << e.u << ',' << e.v << ',' << e.value << '\n';
        write_text(in.outputs[0], text.str());
    }
    out << "max_saliency " << max_value << "\n";
    return 0;
}

std::vector<Partition> partitions_for(const Loaded& in, Method method, std::span<const std::int64_t> ks) {
    const Mst mst = kruskal_mst(in.graph);
    std::vector<Partition> parts;
    if (method == Method::fh) {
        for (auto k : ks) parts.push_back(segment_fh(mst, k));
    } else {
        const ScaleMap scales = compute_hierarchy(in.graph, mst);
        for (auto k : ks) parts.push_back(cut(scales, k));
    }
    return parts;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.k_list.empty()) throw UsageError("--k-list must not be empty");
    for (auto k : cfg.k_list) {
        if (k < 0) throw UsageError("--k-list values must be non-negative");
    }
    const Loaded in = load(cfg, 1);
    const auto parts = partitions_for(in, cfg.method, cfg.k_list);
    std::ostringstream csv;
    csv << "k,region_count,nested_with_previous\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const bool nested = i == 0 || refines(parts[i - 1], parts[i]) || refines(parts[i], parts[i - 1]);
        csv << cfg.k_list[i] << ',' << parts[i].region_count << ',' << (nested ? "yes" : "no") << '\n';
    }
    write_text(in.outputs[0], csv.str());
    out << csv.str();
    return 0;
}

int cmd_noise(const RunConfig& cfg, std::ostream& out) {
    if (cfg.graph_path) throw UsageError("noise needs an image input");
    const Loaded in = load(cfg, 1);
    const RgbImage noisy = add_salt_noise(*in.image, cfg.salt, cfg.seed);
    write_file(in.outputs[0], write_ppm(noisy));
    std::size_t changed = 0;
    for (std::size_t i = 0; i < noisy.pixels.size(); ++i) changed += noisy.pixels[i] != in.image->pixels[i];
    out << "pixels " << noisy.pixels.size() << "\nchanged " << changed << "\n";
    return 0;
}

constexpr const char* kReportSeparator = "---\n";

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    std::vector<oracle::PropertyReport> reports;
    if (cfg.replay_path) {
        const std::string text = read_text(*cfg.replay_path);
        std::size_t begin = 0;
        while (begin < text.size()) {
            std::size_t end = text.find(kReportSeparator, begin);
            if (end == std::string::npos) end = text.size();
            const std::string chunk = text.substr(begin, end - begin);
            // passing reports carry no instance and have nothing to replay
            if (chunk.find("\ninstance ") != std::string::npos) reports.push_back(oracle::replay(chunk));
            begin = end + std::string_view(kReportSeparator).size();
        }
    } else {
        const Loaded in = load(cfg, 0);
        if (cfg.k_list.empty() || cfg.method == Method::hier) {
            const ScaleMap scales = compute_hierarchy(in.graph, kruskal_mst(in.graph));
            reports.push_back(oracle::check_causality(scales));
            reports.push_back(oracle::check_nestedness(scales));
        } else {
            const auto parts = partitions_for(in, cfg.method, cfg.k_list);
            reports.push_back(oracle::check_causality(parts, cfg.k_list));
            reports.push_back(oracle::check_nestedness(parts, cfg.k_list));
        }
    }
    std::string document;
    for (const auto& r : reports) {
        out << r.property << ' ' << (r.passed ? "pass" : "fail");
        if (!r.message.empty()) out << ": " << r.message;
        out << '\n';
        if (!document.empty()) document += kReportSeparator;
        document += oracle::to_text(r);
    }
    if (cfg.report_path) write_text(*cfg.report_path, document);
    return 0;
}

void add_input_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("paths", cfg.positional, "Input image (unless --graph) followed by output path(s)");
    sub->add_option("--graph", cfg.graph_path, "Text graph input instead of an image");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Hierarchical graph-based image segmentation"};
    app.name("hgseg");
    app.require_subcommand(1);

    auto* hierarchy = app.add_subcommand("hierarchy", "Compute the hierarchy; write merge tree and scales");
    add_input_options(hierarchy, cfg);

    auto* cut_cmd = app.add_subcommand("cut", "Extract one level of the hierarchy");
    add_input_options(cut_cmd, cfg);
    auto* scale_opt = cut_cmd->add_option("--scale", cfg.scale, "Threshold lambda");
    auto* regions_opt = cut_cmd->add_option("--regions", cfg.regions, "Target region count");
    scale_opt->excludes(regions_opt);
    cut_cmd->add_option("--min-area", cfg.min_area, "Area filter threshold (default 500 for images)");

    auto* fh = app.add_subcommand("fh", "Non-hierarchical region merging at a fixed k");
    add_input_options(fh, cfg);
    fh->add_option("--k", cfg.k, "Scale parameter")->required();
    fh->add_option("--min-area", cfg.min_area, "Area filter threshold (default 500 for images)");

    auto* saliency = app.add_subcommand("saliency", "Render the saliency map");
    add_input_options(saliency, cfg);
    saliency->add_option("--norm", cfg.norm, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    saliency->add_flag("--invert", cfg.invert, "Dark contours on white");

    std::string method = "hier";
    auto* sweep = app.add_subcommand("sweep", "Region counts over a list of scales");
    add_input_options(sweep, cfg);
    sweep->add_option("--method", method, "fh or hier")->check(CLI::IsMember({"fh", "hier"}));
    sweep->add_option("--k-list", cfg.k_list, "Comma separated scales")->delimiter(',')->allow_extra_args(false)->required();

    auto* noise = app.add_subcommand("noise", "Corrupt an image with salt noise");
    add_input_options(noise, cfg);
    noise->add_option("--salt", cfg.salt, "Per-pixel probability")->required();
    noise->add_option("--seed", cfg.seed, "Generator seed");

    auto* check = app.add_subcommand("check", "Causality and nestedness checks, with replayable reports");
    add_input_options(check, cfg);
    check->add_option("--method", method, "fh or hier")->check(CLI::IsMember({"fh", "hier"}));
    check->add_option("--k-list", cfg.k_list, "Levels for --method fh")->delimiter(',')->allow_extra_args(false);
    check->add_option("--report", cfg.report_path, "Write the report document here");
    check->add_option("--replay", cfg.replay_path, "Re-run the checks stored in a report");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }
    cfg.method = method == "fh" ? Method::fh : Method::hier;
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (cfg.subcommand == "hierarchy") return cmd_hierarchy(cfg, out);
        if (cfg.subcommand == "cut") return cmd_cut(cfg, out);
        if (cfg.subcommand == "fh") return cmd_fh(cfg, out);
        if (cfg.subcommand == "saliency") return cmd_saliency(cfg, out);
        if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out);
        if (cfg.subcommand == "noise") return cmd_noise(cfg, out);
        if (cfg.subcommand == "check") return cmd_check(cfg, out);
    } catch (const UsageError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace hgseg::cli
