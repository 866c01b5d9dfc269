// Copyright 2026 The GenPerm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommand dispatch for the genperm executable. Each handler reads its
// inputs, runs one library operation and renders JSON (scalar reports) or
// CSV (tables). Files named by --out and the other *-out flags are written
// whole after the computation succeeds, followed by a manifest describing
// the invocation.

#include "genperm_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "genperm/detect.hpp"
#include "genperm/experiments.hpp"
#include "genperm/io.hpp"
#include "genperm/metrics.hpp"
#include "genperm/parallel.hpp"
#include "genperm/random.hpp"
#include "genperm/synth.hpp"
#include "genperm/validate.hpp"

#ifndef GENPERM_VERSION
#define GENPERM_VERSION "unknown"
#endif

namespace genperm::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Raised for malformed or inconsistent arguments; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(format_number(value).c_str(), nullptr);
}

Json number(const std::optional<double>& value) {
  return value ? number(*value) : Json(nullptr);
}

std::string cell(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

/// Options shared by every subcommand.
struct Common {
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed_flag;
  bool one_indexed = false;
  std::string out;
  std::string manifest;
  std::string cover_format = "auto";

  std::uint64_t seed = 0;
  std::string seed_source = "default";
  io::ReadOptions read() const { return {one_indexed}; }
};

/// Everything a handler produces. Primary output goes to --out or the
/// output stream; extra files are keyed by path.
struct Output {
  std::string primary;
  std::vector<std::pair<std::string, std::string>> files;
  Json inputs = Json::object();
};

io::CoverFormat cover_format(const std::string& name) {
  if (name == "list") return io::CoverFormat::kCommunityList;
  if (name == "membership") return io::CoverFormat::kMembership;
  return io::CoverFormat::kAuto;
}

OmegaVariant omega_variant(const std::string& name) {
  if (name == "unordered") return OmegaVariant::kUnorderedPairs;
  if (name == "adjusted") return OmegaVariant::kAdjusted;
  return OmegaVariant::kOrderedWithSelf;
}

const char* omega_name(OmegaVariant v) {
  switch (v) {
    case OmegaVariant::kUnorderedPairs:
      return "unordered";
    case OmegaVariant::kAdjusted:
      return "adjusted";
    case OmegaVariant::kOrderedWithSelf:
      break;
  }
  return "ordered";
}

Graph load_graph(const std::string& path, const Common& common, std::ostream& err) {
  BuiltGraph built = io::read_edge_list_file(path, common.read());
  if (built.report.duplicates_dropped > 0) {
    err << "warning: " << path << ": dropped " << built.report.duplicates_dropped
        << " duplicate edges\n";
  }
  if (built.report.self_loops_dropped > 0) {
    err << "warning: " << path << ": dropped " << built.report.self_loops_dropped
        << " self-loops\n";
  }
  return std::move(built.graph);
}

Cover load_cover(const std::string& path, std::size_t n, const Common& common,
                 std::ostream& err) {
  Cover cover = io::read_cover_file(path, n, cover_format(common.cover_format), common.read());
  if (cover.implicit_singletons() > 0) {
    err << "note: " << path << ": " << cover.implicit_singletons()
        << " uncovered nodes treated as singleton communities\n";
  }
  return cover;
}

std::vector<std::vector<NodeId>> load_communities(const std::string& path,
                                                  const Common& common) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  io::CoverFormat format = cover_format(common.cover_format);
  if (format == io::CoverFormat::kAuto) format = io::detect_cover_format(text);
  std::istringstream parse(text);
  return io::parse_communities(parse, format, common.read());
}

std::string cover_text(const Cover& cover, const Common& common, bool membership = false) {
  std::ostringstream s;
  if (membership) {
    io::write_membership(s, cover, common.read());
  } else {
    io::write_cover(s, cover, common.read());
  }
  return s.str();
}

std::string graph_text(const Graph& g, const Common& common) {
  std::ostringstream s;
  io::write_edge_list(s, g, common.read());
  return s.str();
}

std::uint64_t report_id(NodeId v, const Common& common) {
  return static_cast<std::uint64_t>(v) + (common.one_indexed ? 1 : 0);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <typename T>
Json json_array(const std::vector<T>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v);
  return a;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--jobs", common.jobs, "Concurrent trials or sweep cells")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", common.seed_flag,
                  "Base seed; defaults to $GENPERM_SEED, then 0");
  sub->add_flag("--one-indexed", common.one_indexed,
                "Node ids in every input and output start at 1");
  sub->add_option("--out", common.out, "Write the primary output here instead of stdout");
  sub->add_option("--manifest", common.manifest,
                  "Manifest path; defaults to <first output file>.manifest.json");
}

void add_cover_format(CLI::App* sub, Common& common) {
  sub->add_option("--cover-format", common.cover_format, "Community file layout")
      ->check(CLI::IsMember({"auto", "list", "membership"}));
}

void resolve_seed(Common& common) {
  if (common.seed_flag) {
    common.seed = *common.seed_flag;
    common.seed_source = "flag";
    return;
  }
  if (const char* env = std::getenv("GENPERM_SEED"); env != nullptr && *env != '\0') {
    const std::string text(env);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.front() == '-') {
      throw UsageError("GENPERM_SEED is not an unsigned integer: " + text);
    }
    common.seed = value;
    common.seed_source = "GENPERM_SEED";
  }
}

// ---------------------------------------------------------------------------
// Subcommand handlers. Each registers its options and returns a runner.

using Runner = std::function<Output(Common&, std::ostream& err)>;

Runner setup_detect(CLI::App* sub) {
  struct Args {
    std::string graph, report, order = "id", format = "list";
    std::size_t max_iter = 15;
    double tolerance = 0.0;
    bool per_component = false, no_merge = false, no_prune = false;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--max-iter", a->max_iter, "Sweep limit")->check(CLI::PositiveNumber);
  sub->add_option("--order", a->order, "Vertex order")->check(CLI::IsMember({"id", "shuffle"}));
  sub->add_option("--tolerance", a->tolerance, "Objective change that counts as converged")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--per-component", a->per_component, "Detect each component separately");
  sub->add_flag("--no-merge-ties", a->no_merge, "Skip the final tie consolidation pass");
  sub->add_flag("--no-prune", a->no_prune, "Skip the final membership pruning pass");
  sub->add_option("--report", a->report, "Run report path; defaults to <out>.report.json");
  sub->add_option("--format", a->format, "Output layout")
      ->check(CLI::IsMember({"list", "membership"}));
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    const Graph g = load_graph(a->graph, common, err);
    DetectConfig cfg;
    cfg.max_iter = a->max_iter;
    cfg.ordering = a->order == "shuffle" ? VertexOrder::kShuffle : VertexOrder::kAscendingId;
    cfg.seed = common.seed;
    cfg.objective_tolerance = a->tolerance;
    cfg.per_component = a->per_component;
    cfg.merge_ties = !a->no_merge;
    cfg.prune_memberships = !a->no_prune;
    const DetectionResult r = max_genperm(g, cfg);
    for (const auto& w : r.warnings) err << "warning: " << w << "\n";
    o.primary = cover_text(r.cover, common, a->format == "membership");

    Json report;
    report["iterations"] = r.iterations_used;
    report["converged"] = r.converged;
    report["initial_objective"] = number(r.initial_objective);
    Json history = Json::array();
    for (const double v : r.objective_history) history.push_back(number(v));
    report["objective_history"] = history;
    report["objective"] = number(r.objective_history.back());
    report["communities"] = r.cover.community_count();
    report["merges"] = r.merges;
    report["pruned"] = r.pruned;
    report["order"] = a->order;
    report["seed"] = common.seed;
    report["warnings"] = json_array(r.warnings);
    std::string report_path = a->report;
    if (report_path.empty() && !common.out.empty()) report_path = common.out + ".report.json";
    if (!report_path.empty()) o.files.emplace_back(report_path, dump(report));
    return o;
  };
}

Runner setup_score(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, cover, per_vertex;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--cover", a->cover, "Community file")->required();
  sub->add_option("--per-vertex", a->per_vertex, "Write the v,c,genperm table here");
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["cover"] = a->cover;
    const Graph g = load_graph(a->graph, common, err);
    const Cover cover = load_cover(a->cover, g.node_count(), common, err);
    const ScoreSet s = score_all(g, cover);
    Json j;
    j["genperm"] = number(s.genperm);
    j["eq"] = number(s.eq);
    j["qov"] = number(s.qov);
    j["cc"] = number(s.cc);
    j["oc"] = number(s.oc);
    j["per_vertex_path"] = a->per_vertex.empty() ? Json(nullptr) : Json(a->per_vertex);
    j["implicit_singletons"] = cover.implicit_singletons();
    o.primary = dump(j);
    if (!a->per_vertex.empty()) {
      std::ostringstream csv;
      csv << "v,c,genperm\n";
      for (const auto& e : genperm_table(g, cover)) {
        csv << report_id(e.vertex, common) << ',' << e.community << ','
            << format_number(e.genperm) << '\n';
      }
      o.files.emplace_back(a->per_vertex, csv.str());
    }
    return o;
  };
}

Runner setup_validate(CLI::App* sub, Common& common) {
  struct Args {
    std::string truth, detected, graph, omega = "ordered";
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--truth", a->truth, "Ground-truth community file")->required();
  sub->add_option("--detected", a->detected, "Detected community file")->required();
  sub->add_option("--graph", a->graph, "Edge list fixing the node universe");
  sub->add_option("--omega", a->omega, "Omega pair convention")
      ->check(CLI::IsMember({"ordered", "unordered", "adjusted"}));
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["truth"] = a->truth;
    o.inputs["detected"] = a->detected;
    auto truth_sets = load_communities(a->truth, common);
    auto detected_sets = load_communities(a->detected, common);
    std::size_t n = std::max(io::max_node_bound(truth_sets), io::max_node_bound(detected_sets));
    if (!a->graph.empty()) {
      o.inputs["graph"] = a->graph;
      const std::size_t graph_n = load_graph(a->graph, common, err).node_count();
      if (n > graph_n) throw std::runtime_error("a cover names nodes outside the graph");
      n = graph_n;
    }
    const Cover truth = Cover::build(n, std::move(truth_sets));
    const Cover detected = Cover::build(n, std::move(detected_sets));
    const auto variant = omega_variant(a->omega);
    const ValidationReport r = validate(truth, detected, variant);
    Json j;
    j["onmi"] = number(r.onmi);
    j["omega"] = number(r.omega);
    j["fscore"] = number(r.fscore);
    j["onmi_variant"] = r.onmi_variant;
    j["omega_variant"] = omega_name(variant);
    j["nodes"] = n;
    o.primary = dump(j);
    return o;
  };
}

// Candidate list: one "name path" pair per line; '#' starts a comment and
// relative paths are resolved against the list's directory.
std::vector<std::pair<std::string, std::string>> read_candidate_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name, file, extra;
    if (!(fields >> name)) continue;
    if (!(fields >> file) || (fields >> extra)) {
      throw std::runtime_error(path + ":" + std::to_string(number) +
                               ": expected \"name path\"");
    }
    const std::filesystem::path p(file);
    entries.emplace_back(name, p.is_absolute() ? file : (base / p).string());
  }
  if (entries.empty()) throw std::runtime_error(path + ": no candidates listed");
  return entries;
}

Runner setup_rankcorr(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, truth, candidates, omega = "ordered";
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--truth", a->truth, "Ground-truth community file")->required();
  sub->add_option("--candidates", a->candidates, "File of \"name path\" lines")->required();
  sub->add_option("--omega", a->omega, "Omega pair convention")
      ->check(CLI::IsMember({"ordered", "unordered", "adjusted"}));
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["truth"] = a->truth;
    o.inputs["candidates"] = a->candidates;
    const Graph g = load_graph(a->graph, common, err);
    const Cover truth = load_cover(a->truth, g.node_count(), common, err);
    std::vector<NamedCover> candidates;
    Json files = Json::array();
    for (const auto& [name, path] : read_candidate_list(a->candidates)) {
      candidates.push_back({name, load_cover(path, g.node_count(), common, err)});
      files.push_back(path);
    }
    o.inputs["candidate_files"] = files;
    const RankCorrelation rc =
        rank_correlation_protocol(g, truth, candidates, omega_variant(a->omega), common.jobs);
    Json list = Json::array();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      Json entry;
      entry["name"] = candidates[i].name;
      Json scores, validation;
      for (std::size_t m = 0; m < kScoringMetrics.size(); ++m) {
        scores[kScoringMetrics[m]] = number(rc.scores[i][m]);
      }
      for (std::size_t m = 0; m < kValidationMetrics.size(); ++m) {
        validation[kValidationMetrics[m]] = number(rc.validation[i][m]);
      }
      entry["scores"] = scores;
      entry["validation"] = validation;
      list.push_back(entry);
    }
    Json rho;
    for (std::size_t s = 0; s < kScoringMetrics.size(); ++s) {
      Json row;
      for (std::size_t v = 0; v < kValidationMetrics.size(); ++v) {
        row[kValidationMetrics[v]] = number(rc.rho[s][v]);
      }
      rho[kScoringMetrics[s]] = row;
    }
    Json j;
    j["candidates"] = list;
    j["rho"] = rho;
    j["omega_variant"] = a->omega;
    o.primary = dump(j);
    return o;
  };
}

Runner setup_perturb(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, truth, cover_out;
    std::vector<std::string> strategies = {"edge", "random", "community"};
    std::vector<double> p_grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::size_t trials = 50;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--truth", a->truth, "Ground-truth community file")->required();
  sub->add_option("--strategies", a->strategies, "Comma-separated strategies")
      ->delimiter(',')
      ->check(CLI::IsMember({"edge", "random", "community"}));
  sub->add_option("--p-grid", a->p_grid, "Comma-separated perturbation intensities")
      ->delimiter(',');
  sub->add_option("--trials", a->trials, "Trials per cell")->check(CLI::PositiveNumber);
  sub->add_option("--cover-out", a->cover_out,
                  "Write one perturbed cover (single strategy and p) instead of a sweep");
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["truth"] = a->truth;
    const Graph g = load_graph(a->graph, common, err);
    const Cover truth = load_cover(a->truth, g.node_count(), common, err);
    std::vector<PerturbStrategy> strategies;
    for (const auto& s : a->strategies) strategies.push_back(parse_perturb_strategy(s));
    for (const double p : a->p_grid) {
      if (!(p >= 0.0 && p <= 0.5)) throw UsageError("--p-grid values must lie in [0, 0.5]");
    }
    if (!a->cover_out.empty()) {
      if (strategies.size() != 1 || a->p_grid.size() != 1 || a->p_grid[0] <= 0.0) {
        throw UsageError("--cover-out needs exactly one strategy and one p > 0");
      }
      const Cover out = perturb(g, truth, {strategies[0], a->p_grid[0], common.seed});
      o.files.emplace_back(a->cover_out, cover_text(out, common));
      Json j;
      j["strategy"] = to_string(strategies[0]);
      j["p"] = number(a->p_grid[0]);
      j["cover_path"] = a->cover_out;
      j["genperm"] = number(genperm_network(g, out));
      o.primary = dump(j);
      return o;
    }
    const auto rows =
        robustness_sweep(g, truth, strategies, a->p_grid, a->trials, common.seed, common.jobs);
    std::ostringstream csv;
    csv << "strategy,p,metric,mean,normalized\n";
    for (const auto& row : rows) {
      for (std::size_t m = 0; m < kSweepMetrics.size(); ++m) {
        csv << to_string(row.strategy) << ',' << format_number(row.p) << ',' << kSweepMetrics[m]
            << ',' << format_number(row.mean[m]) << ',' << format_number(row.normalized[m])
            << '\n';
      }
    }
    o.primary = csv.str();
    return o;
  };
}

Runner setup_sample(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, truth, graph_out, cover_out, map_out;
    std::optional<std::uint64_t> anchor;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--truth", a->truth, "Ground-truth community file")->required();
  sub->add_option("--graph-out", a->graph_out, "Sampled edge list")->required();
  sub->add_option("--cover-out", a->cover_out, "Sampled ground truth")->required();
  sub->add_option("--map-out", a->map_out, "CSV of sampled,original node ids");
  sub->add_option("--anchor", a->anchor, "Use this overlapping node instead of a random one");
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["truth"] = a->truth;
    const Graph g = load_graph(a->graph, common, err);
    const Cover truth = load_cover(a->truth, g.node_count(), common, err);
    SampledNetwork s;
    if (a->anchor) {
      const std::uint64_t shift = common.one_indexed ? 1 : 0;
      if (*a->anchor < shift || *a->anchor - shift >= g.node_count()) {
        throw UsageError("--anchor is not a node of the graph");
      }
      s = sample_around(g, truth, static_cast<NodeId>(*a->anchor - shift));
    } else {
      s = sample_subnetwork(g, truth, common.seed);
    }
    o.files.emplace_back(a->graph_out, graph_text(s.sub.graph, common));
    o.files.emplace_back(a->cover_out, cover_text(s.cover, common));
    if (!a->map_out.empty()) {
      std::ostringstream csv;
      csv << "sampled,original\n";
      for (NodeId v = 0; v < s.sub.to_original.size(); ++v) {
        csv << report_id(v, common) << ',' << report_id(s.sub.to_original[v], common) << '\n';
      }
      o.files.emplace_back(a->map_out, csv.str());
    }
    Json j;
    j["anchor"] = report_id(s.anchor, common);
    j["nodes"] = s.sub.graph.node_count();
    j["edges"] = s.sub.graph.edge_count();
    j["communities"] = s.cover.community_count();
    j["graph_path"] = a->graph_out;
    j["cover_path"] = a->cover_out;
    o.primary = dump(j);
    return o;
  };
}

Runner setup_analyze(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, cover, mode = "profile";
    std::optional<std::size_t> community;
    bool allow_disconnected = false;
    std::vector<double> x_grid = {10, 20, 30, 40, 50};
    std::vector<std::size_t> layers = {1, 2, 3, 4};
    std::size_t trials = 10, max_iter = 15;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--cover", a->cover, "Community file")->required();
  sub->add_option("--mode", a->mode, "Analysis to run")
      ->check(CLI::IsMember({"profile", "farness", "assortativity", "layers"}));
  sub->add_option("--community", a->community, "Restrict farness to one community index");
  sub->add_flag("--allow-disconnected", a->allow_disconnected,
                "Farness: tolerate communities that induce disconnected subgraphs");
  sub->add_option("--x-grid", a->x_grid, "Layers: removal percentages")->delimiter(',');
  sub->add_option("--layers", a->layers, "Layers: which core layers to remove (1 = outermost)")
      ->delimiter(',');
  sub->add_option("--trials", a->trials, "Layers: trials per cell")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", a->max_iter, "Layers: detection sweep limit")
      ->check(CLI::PositiveNumber);
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["cover"] = a->cover;
    const Graph g = load_graph(a->graph, common, err);
    const Cover cover = load_cover(a->cover, g.node_count(), common, err);
    std::ostringstream csv;
    if (a->mode == "profile") {
      const BinnedProfile p = binned_profile(g, cover);
      csv << "bin,lower,upper,count,fraction,mean_memberships,mean_internal,mean_clustering,"
             "mean_degree\n";
      for (std::size_t b = 0; b < p.bins.size(); ++b) {
        const ProfileBin& bin = p.bins[b];
        csv << b << ',' << format_number(bin.lower) << ',' << format_number(bin.upper) << ','
            << bin.count << ',' << format_number(bin.fraction) << ','
            << format_number(bin.mean_memberships) << ',' << format_number(bin.mean_internal)
            << ',' << format_number(bin.mean_clustering) << ','
            << format_number(bin.mean_degree) << '\n';
      }
    } else if (a->mode == "farness") {
      if (a->community && *a->community >= cover.community_count()) {
        throw UsageError("--community is out of range");
      }
      csv << "community,vertex,farness,genperm\n";
      for (CommunityId c = 0; c < cover.community_count(); ++c) {
        if (a->community ? c != *a->community : cover.is_implicit(c)) continue;
        const FarnessProfile f = farness_profile(g, cover, c, a->allow_disconnected);
        if (f.disconnected) err << "warning: community " << c << " is disconnected\n";
        for (const auto& e : f.entries) {
          csv << c << ',' << report_id(e.vertex, common) << ',' << format_number(e.farness)
              << ',' << format_number(e.genperm) << '\n';
        }
      }
    } else if (a->mode == "assortativity") {
      csv << "community,size,assortativity\n";
      for (CommunityId c = 0; c < cover.community_count(); ++c) {
        if (cover.is_implicit(c)) continue;
        csv << c << ',' << cover.members(c).size() << ','
            << cell(genperm_assortativity(g, cover, c)) << '\n';
      }
    } else {
      const std::size_t max_iter = a->max_iter;
      const Detector detector = [max_iter](const Graph& sub, std::uint64_t) {
        DetectConfig cfg;
        cfg.max_iter = max_iter;
        cfg.per_component = true;
        return max_genperm(sub, cfg).cover;
      };
      const auto rows = layered_removal(g, cover, detector, a->x_grid, a->trials, common.seed,
                                        common.jobs, a->layers);
      csv << "layer,x,mean_onmi,mean_removed\n";
      for (const auto& row : rows) {
        csv << row.layer << ',' << format_number(row.x) << ',' << format_number(row.mean_onmi)
            << ',' << format_number(row.mean_removed) << '\n';
      }
    }
    o.primary = csv.str();
    return o;
  };
}

Runner setup_spread(CLI::App* sub, Common& common) {
  struct Args {
    std::string graph, cover;
    std::vector<std::string> policies = {"genperm", "degree", "random"};
    std::size_t k = 10, runs = 200;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--graph", a->graph, "Edge list")->required();
  sub->add_option("--cover", a->cover, "Community file used by the genperm policy")->required();
  sub->add_option("--policies", a->policies, "Comma-separated initiator policies")
      ->delimiter(',')
      ->check(CLI::IsMember({"random", "degree", "genperm", "genperm-community"}));
  sub->add_option("--k", a->k, "Initiators per run")->check(CLI::PositiveNumber);
  sub->add_option("--runs", a->runs, "Runs per policy")->check(CLI::PositiveNumber);
  add_cover_format(sub, common);
  return [a](Common& common, std::ostream& err) {
    Output o;
    o.inputs["graph"] = a->graph;
    o.inputs["cover"] = a->cover;
    const Graph g = load_graph(a->graph, common, err);
    const Cover cover = load_cover(a->cover, g.node_count(), common, err);
    std::ostringstream csv;
    csv << "policy,k,runs,mean_steps,stderr,min_steps,max_steps\n";
    for (std::size_t pi = 0; pi < a->policies.size(); ++pi) {
      const InitiatorPolicy policy = parse_initiator_policy(a->policies[pi]);
      const std::uint64_t base = derive_seed(common.seed, pi);
      std::vector<std::size_t> steps(a->runs);
      parallel_for(a->runs, common.jobs, [&](std::size_t r) {
        const std::uint64_t seed = derive_seed(base, r);
        const auto init = select_initiators(g, cover, policy, a->k, seed);
        steps[r] = spread(g, init, derive_seed(seed, 1)).steps;
      });
      double mean = 0.0;
      for (const std::size_t s : steps) mean += static_cast<double>(s);
      mean /= static_cast<double>(steps.size());
      double var = 0.0;
      for (const std::size_t s : steps) var += (static_cast<double>(s) - mean) * (s - mean);
      const double n = static_cast<double>(steps.size());
      const double se = steps.size() > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
      csv << to_string(policy) << ',' << a->k << ',' << a->runs << ',' << format_number(mean)
          << ',' << format_number(se) << ',' << *std::min_element(steps.begin(), steps.end())
          << ',' << *std::max_element(steps.begin(), steps.end()) << '\n';
    }
    o.primary = csv.str();
    return o;
  };
}

Runner setup_generate(CLI::App* sub) {
  struct Args {
    std::string kind = "ring", graph_out, cover_out;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> blocks = {10, 10, 10, 10};
    double overlap = 0.1, p_in = 0.5, p_out = 0.02;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--kind", a->kind, "Generator")
      ->check(CLI::IsMember({"chain", "ring", "star", "path", "bridge-pair", "planted"}));
  sub->add_option("--sizes", a->sizes,
                  "chain: nx,ny,nz; ring: k,s; star: n,s1,s2,...; path/bridge-pair: sizes")
      ->delimiter(',');
  sub->add_option("--blocks", a->blocks, "planted: block sizes")->delimiter(',');
  sub->add_option("--overlap", a->overlap, "planted: fraction of nodes in two blocks")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--p-in", a->p_in, "planted: edge probability within a block")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--p-out", a->p_out, "planted: edge probability across blocks")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--graph-out", a->graph_out, "Edge list path")->required();
  sub->add_option("--cover-out", a->cover_out, "Ground-truth community path")->required();
  return [a](Common& common, std::ostream& err) {
    Output o;
    Graph graph;
    Cover truth;
    std::vector<std::string> warnings;
    if (a->kind == "planted") {
      synth::PlantedSpec spec;
      spec.blocks = a->blocks;
      spec.overlap_fraction = a->overlap;
      spec.p_in = a->p_in;
      spec.p_out = a->p_out;
      spec.seed = common.seed;
      auto pg = synth::gen_planted_overlap(spec);
      graph = std::move(pg.graph);
      truth = std::move(pg.truth);
      warnings = std::move(pg.warnings);
    } else {
      std::vector<std::size_t> sizes = a->sizes;
      if (sizes.empty()) {
        if (a->kind == "chain") sizes = {4, 4, 4};
        if (a->kind == "ring") sizes = {5, 5};
        if (a->kind == "star") sizes = {4, 4, 4, 4, 4};
        if (a->kind == "path" || a->kind == "bridge-pair") sizes = {4, 4};
      }
      synth::LabeledGraph lg;
      if (a->kind == "path") {
        lg = synth::gen_clique_path(sizes);
      } else {
        synth::CliqueSpec spec;
        spec.sizes = sizes;
        spec.seed = common.seed;
        spec.topology = a->kind == "chain"  ? synth::Topology::kChain
                        : a->kind == "ring" ? synth::Topology::kRing
                        : a->kind == "star" ? synth::Topology::kStar
                                            : synth::Topology::kBridgePair;
        lg = synth::generate_cliques(spec);
      }
      graph = std::move(lg.graph);
      truth = std::move(lg.truth);
    }
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    o.files.emplace_back(a->graph_out, graph_text(graph, common));
    o.files.emplace_back(a->cover_out, cover_text(truth, common));
    Json j;
    j["kind"] = a->kind;
    j["nodes"] = graph.node_count();
    j["edges"] = graph.edge_count();
    j["communities"] = truth.community_count();
    j["graph_path"] = a->graph_out;
    j["cover_path"] = a->cover_out;
    j["warnings"] = json_array(warnings);
    o.primary = dump(j);
    return o;
  };
}

Json manifest_for(const std::string& subcommand, const std::vector<std::string>& args,
                  const Common& common, const Output& o, const std::vector<std::string>& written,
                  double seconds) {
  Json m;
  m["subcommand"] = subcommand;
  m["version"] = GENPERM_VERSION;
  m["inputs"] = o.inputs;
  m["outputs"] = json_array(written);
  m["arguments"] = json_array(args);
  m["seed"] = common.seed;
  m["seed_source"] = common.seed_source;
  m["jobs"] = common.jobs;
  m["one_indexed"] = common.one_indexed;
  m["wall_time_seconds"] = number(seconds);
  return m;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value == 0.0 ? 0.0 : value);
  return buffer;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GenPerm community scoring, detection and evaluation", "genperm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GENPERM_VERSION);

  Common common;
  std::map<std::string, Runner> runners;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, common);
    return sub;
  };
  runners["detect"] = setup_detect(add("detect", "Detect communities with MaxGenPerm"));
  runners["score"] = setup_score(add("score", "Score a cover with every metric"), common);
  runners["validate"] =
      setup_validate(add("validate", "Compare a cover against ground truth"), common);
  runners["rankcorr"] = setup_rankcorr(
      add("rankcorr", "Rank-correlate scoring and validation metrics over candidates"), common);
  runners["perturb"] =
      setup_perturb(add("perturb", "Perturbation robustness sweep"), common);
  runners["sample"] =
      setup_sample(add("sample", "Extract the subnetwork around an overlapping node"), common);
  runners["analyze"] = setup_analyze(
      add("analyze", "Core-periphery profiles, farness, assortativity, layer removal"), common);
  runners["spread"] = setup_spread(add("spread", "Message spreading from initiators"), common);
  runners["generate"] = setup_generate(add("generate", "Write a synthetic graph and truth"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << GENPERM_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    for (const CLI::App* sub : app.get_subcommands()) {
      if (sub->get_help_ptr() != nullptr && sub->get_help_ptr()->count() > 0) {
        out << sub->help();
        return kExitOk;
      }
    }
    err << "error: argument: " << e.what() << "\n";
    return kExitUsage;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    resolve_seed(common);
    Output o = runners.at(name)(common, err);
    std::vector<std::string> written;
    if (common.out.empty()) {
      out << o.primary;
    } else {
      write_file(common.out, o.primary);
      written.push_back(common.out);
    }
    for (const auto& [path, content] : o.files) {
      write_file(path, content);
      written.push_back(path);
    }
    std::string manifest_path = common.manifest;
    if (manifest_path.empty() && !written.empty()) {
      manifest_path = written.front() + ".manifest.json";
    }
    if (!manifest_path.empty()) {
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_file(manifest_path, dump(manifest_for(name, args, common, o, written, seconds)));
    }
  } catch (const UsageError& e) {
    err << "error: argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: data: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace genperm::cli
