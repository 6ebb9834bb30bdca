#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hgseg/graph.hpp"

namespace hgseg::cli {

enum class Method { fh, hier };

/// Parsed command line. `positional` holds the positional paths in order
/// (input image first unless --graph is given, then the outputs).
struct RunConfig {
    std::string subcommand;
    std::vector<std::string> positional;
    std::optional<std::string> graph_path;
    std::optional<std::string> tree_path;
    std::optional<std::string> scales_path;
    std::optional<std::int64_t> scale;
    std::optional<std::size_t> regions;
    std::optional<std::int64_t> k;
    std::optional<std::size_t> min_area;
    std::vector<std::int64_t> k_list;
    Method method = Method::hier;
    std::string norm = "linear";
    bool invert = false;
    double salt = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::string> replay_path;
    std::optional<std::string> report_path;
};

inline constexpr std::size_t kDefaultMinArea = 500;

/// Text graph format: vertex count, then one "u v w" line per edge.
/// '#' starts a comment.
EdgeWeightedGraph read_graph_text(const std::string& text);

/// Parses and runs a command line. Returns the process exit code: 0 on
/// success, 2 on usage errors and 1 on any other failure, which is reported
/// as a single "error: <class>: <message>" line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgseg::cli
