// Copyright 2026 The qcwalk Authors.
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
#include "cli_app.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "qcw/classical_walks.hpp"
#include "qcw/clustering.hpp"
#include "qcw/errors.hpp"
#include "qcw/lindblad.hpp"
#include "qcw/random.hpp"

namespace qcw::cli {

using nlohmann::json;

namespace {

// Typed access to one JSON object; every key must be consumed.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  ~ObjectReader() = default;

  template <class T>
  void read(const char* key, T& dst) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      dst = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  template <class T>
  void read(const char* key, std::optional<T>& dst) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    try {
      dst = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

const char* scheme_name(NoJumpScheme s) { return s == NoJumpScheme::exact ? "exact" : "first_order"; }

NoJumpScheme parse_scheme(const std::string& s) {
  if (s == "exact") return NoJumpScheme::exact;
  if (s == "first_order") return NoJumpScheme::first_order;
  throw ConfigError("unknown no-jump scheme '" + s + "'");
}

WalkerKind parse_walker_config(const std::string& s) {
  try {
    return parse_walker(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

void read_walk(const json& j, WalkConfig& w) {
  ObjectReader r(j, "walk");
  std::string mode(walker_name(w.mode));
  r.read("mode", mode);
  w.mode = parse_walker_config(mode);
  r.read("alpha", w.alpha);
  r.read("walk_length", w.settings.walk_length);
  r.read("walks_per_node", w.settings.walks_per_node);
  r.read("p", w.settings.p);
  r.read("q", w.settings.q);
  r.read("dt", w.settings.hqcw_dt);
  r.read("t_max", w.settings.hqcw_t_max);
  std::string scheme = scheme_name(w.settings.hqcw_scheme);
  r.read("scheme", scheme);
  w.settings.hqcw_scheme = parse_scheme(scheme);
  r.finish();
}

void read_oracle(const json& j, OracleConfig& o) {
  ObjectReader r(j, "oracle");
  r.read("graph_file", o.graph_file);
  r.read("start", o.start);
  r.read("alphas", o.alphas);
  r.read("times", o.times);
  r.read("trajectories", o.trajectories);
  r.read("dt", o.dt);
  std::string scheme = scheme_name(o.scheme);
  r.read("scheme", scheme);
  o.scheme = parse_scheme(scheme);
  r.finish();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, x);
  return buf;
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

PipelineConfig parse_config(const json& j) {
  PipelineConfig c;
  ObjectReader r(j, "config");
  std::string provenance;
  r.read("provenance", provenance);
  r.read("seed", c.seed);
  r.read("threads", c.threads);
  if (const json* g = r.child("graph")) {
    ObjectReader gr(*g, "graph");
    gr.read("cluster_sizes", c.graph.cluster_sizes);
    gr.read("p_intra", c.graph.p_intra);
    gr.read("p_inter", c.graph.p_inter);
    gr.read("max_attempts", c.graph.max_attempts);
    gr.read("resample", c.resample_graph);
    gr.finish();
  }
  if (const json* w = r.child("walk")) read_walk(*w, c.walk);
  if (const json* e = r.child("embedding")) {
    ObjectReader er(*e, "embedding");
    er.read("dimension", c.embedding.dimension);
    er.read("window", c.embedding.window);
    er.read("negatives", c.embedding.negatives);
    er.read("epochs", c.embedding.epochs);
    er.read("learning_rate", c.embedding.learning_rate);
    er.read("deterministic", c.embedding.deterministic);
    er.finish();
  }
  if (const json* e = r.child("evaluation")) {
    ObjectReader ev(*e, "evaluation");
    ev.read("k", c.k);
    ev.read("restarts", c.restarts);
    ev.read("repetitions", c.repetitions);
    ev.finish();
  }
  if (const json* s = r.child("sweeps")) {
    if (!s->is_array()) throw ConfigError("sweeps: expected an array");
    for (const json& item : *s) {
      ObjectReader sr(item, "sweeps[]");
      Sweep sweep;
      std::string walker(walker_name(sweep.walker));
      sr.read("walker", walker);
      sweep.walker = parse_walker_config(walker);
      sr.read("alphas", sweep.alphas);
      sr.read("dimensions", sweep.dimensions);
      sr.finish();
      c.sweeps.push_back(std::move(sweep));
    }
  }
  if (const json* o = r.child("oracle")) read_oracle(*o, c.oracle);
  r.finish();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  PipelineConfig c = parse_config(j);
  if (!c.oracle.graph_file.empty() && std::filesystem::path(c.oracle.graph_file).is_relative()) {
    c.oracle.graph_file = (std::filesystem::absolute(path).parent_path() / c.oracle.graph_file).lexically_normal().string();
  }
  return c;
}

json to_json(const PipelineConfig& c) {
  json sweeps = json::array();
  for (const auto& s : c.sweeps) {
    sweeps.push_back({{"walker", walker_name(s.walker)}, {"alphas", s.alphas}, {"dimensions", s.dimensions}});
  }
  const auto& w = c.walk.settings;
  return {
      {"seed", c.seed},
      {"threads", c.threads},
      {"graph",
       {{"cluster_sizes", c.graph.cluster_sizes},
        {"p_intra", c.graph.p_intra},
        {"p_inter", c.graph.p_inter},
        {"max_attempts", c.graph.max_attempts},
        {"resample", c.resample_graph}}},
      {"walk",
       {{"mode", walker_name(c.walk.mode)},
        {"alpha", c.walk.alpha},
        {"walk_length", w.walk_length},
        {"walks_per_node", w.walks_per_node},
        {"p", w.p},
        {"q", w.q},
        {"dt", optional_json(w.hqcw_dt)},
        {"t_max", optional_json(w.hqcw_t_max)},
        {"scheme", scheme_name(w.hqcw_scheme)}}},
      {"embedding",
       {{"dimension", c.embedding.dimension},
        {"window", c.embedding.window},
        {"negatives", c.embedding.negatives},
        {"epochs", c.embedding.epochs},
        {"learning_rate", c.embedding.learning_rate},
        {"deterministic", c.embedding.deterministic}}},
      {"evaluation", {{"k", c.k}, {"restarts", c.restarts}, {"repetitions", c.repetitions}}},
      {"sweeps", sweeps},
      {"oracle",
       {{"graph_file", c.oracle.graph_file},
        {"start", c.oracle.start},
        {"alphas", c.oracle.alphas},
        {"times", c.oracle.times},
        {"trajectories", c.oracle.trajectories},
        {"dt", optional_json(c.oracle.dt)},
        {"scheme", scheme_name(c.oracle.scheme)}}},
  };
}

std::string config_hash(const json& effective) {
  json canonical = effective;
  canonical.erase("threads");
  canonical.erase("provenance");
  return hex64(hash_tag(canonical.dump()));
}

ExperimentConfig experiment_config(const PipelineConfig& c) {
  ExperimentConfig e;
  e.graph = c.graph;
  e.resample_graph = c.resample_graph;
  e.walkers = c.walk.settings;
  e.embedding = c.embedding;
  e.k = c.k;
  e.restarts = c.restarts;
  e.repetitions = c.repetitions;
  e.seed = c.seed;
  e.sweeps = c.sweeps;
  e.threads = c.threads;
  return e;
}

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "JSON configuration file");
  sub->add_option("--seed", f.seed, "Master seed (falls back to the config, then HQCW_SEED)");
  sub->add_option("--out", f.out, "Output directory")->capture_default_str();
  sub->add_option("--threads", f.threads, "Worker threads");
}

std::uint64_t env_seed() {
  const char* s = std::getenv("HQCW_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw ConfigError(std::string("HQCW_SEED is not an unsigned integer: ") + s);
  return v;
}

// Loads the config and resolves the master seed: --seed, then the config
// file, then HQCW_SEED, then 0.
PipelineConfig base_config(const CommonFlags& f) {
  PipelineConfig c;
  bool config_has_seed = false;
  if (f.config) {
    c = load_config(*f.config);
    std::ifstream in(*f.config);
    config_has_seed = json::parse(in).contains("seed");
  }
  if (f.seed) {
    c.seed = *f.seed;
  } else if (!config_has_seed) {
    c.seed = env_seed();
  }
  if (f.threads) c.threads = *f.threads;
  if (c.threads < 1) throw InvalidArgument("threads must be at least 1");
  return c;
}

template <class T>
void override_with(const std::optional<T>& flag, T& dst) {
  if (flag) dst = *flag;
}

struct Output {
  std::filesystem::path dir;
  std::vector<std::string> header;

  std::filesystem::path operator/(const std::string& name) const { return dir / name; }
};

// Creates the output directory and writes effective_config.json.
Output prepare_output(const CommonFlags& f, const PipelineConfig& c) {
  Output o;
  o.dir = f.out;
  std::error_code ec;
  std::filesystem::create_directories(o.dir, ec);
  if (ec) throw IoError("cannot create output directory " + o.dir.string() + ": " + ec.message());
  json effective = to_json(c);
  const std::string line = "config-hash=" + config_hash(effective) + " seed=" + std::to_string(c.seed) +
                           " version=" + kVersion;
  o.header = {line};
  effective["provenance"] = line;
  std::ofstream out(o / "effective_config.json", std::ios::binary);
  if (!out) throw IoError("cannot write " + (o / "effective_config.json").string());
  out << effective.dump(2) << '\n';
  return o;
}

void write_text(const std::filesystem::path& path, const std::vector<std::string>& header, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header) out << "# " << line << '\n';
  out << body;
  if (!out) throw IoError("failed writing " + path.string());
}

Graph read_graph(const std::string& path) { return load_edge_list(path).graph; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid quantum-classical walk embeddings", "qcw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonFlags common;

  // generate-graph
  auto* gen = app.add_subcommand("generate-graph", "Sample a clustered Erdos-Renyi graph");
  add_common(gen, common);
  std::optional<std::vector<std::size_t>> sizes;
  std::optional<double> p_intra;
  std::optional<double> p_inter;
  gen->add_option("--sizes", sizes, "Cluster sizes")->delimiter(',');
  gen->add_option("--p-intra", p_intra, "Intra-cluster edge probability");
  gen->add_option("--p-inter", p_inter, "Inter-cluster edge probability");

  // walk
  auto* walk = app.add_subcommand("walk", "Generate a walk corpus");
  add_common(walk, common);
  std::string graph_path;
  std::optional<std::string> mode;
  std::optional<double> alpha;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<std::size_t> walk_length;
  std::optional<std::size_t> walks_per_node;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<std::string> scheme;
  bool dump = false;
  walk->add_option("--graph", graph_path, "Edge-list file")->required();
  walk->add_option("--mode", mode, "crw1 | crw2 | hqcw (first | second accepted)");
  walk->add_option("--alpha", alpha, "Classicality parameter for hqcw");
  walk->add_option("--p", p, "Return parameter");
  walk->add_option("--q", q, "In-out parameter");
  walk->add_option("--walk-length", walk_length, "Steps (classical) or jumps (hqcw) per walk");
  walk->add_option("--walks-per-node", walks_per_node, "Walks started from every node");
  walk->add_option("--dt", dt, "hqcw time step");
  walk->add_option("--t-max", t_max, "hqcw time cap per trajectory");
  walk->add_option("--scheme", scheme, "hqcw jump-free propagator: exact | first_order");
  walk->add_flag("--dump-trajectories", dump, "Also write trajectories.tsv (hqcw)");

  // embed
  auto* embed = app.add_subcommand("embed", "Train skip-gram embeddings on a corpus");
  add_common(embed, common);
  std::string corpus_path;
  std::optional<std::size_t> nodes;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> window;
  std::optional<std::size_t> negatives;
  std::optional<std::size_t> epochs;
  std::optional<double> learning_rate;
  bool concurrent = false;
  embed->add_option("--corpus", corpus_path, "Corpus file")->required();
  embed->add_option("--nodes", nodes, "Node count (default: largest id in the corpus + 1)");
  embed->add_option("--dim", dim, "Embedding dimension");
  embed->add_option("--window", window, "Context window");
  embed->add_option("--negatives", negatives, "Negative samples per pair");
  embed->add_option("--epochs", epochs, "Training epochs");
  embed->add_option("--learning-rate", learning_rate, "Initial learning rate");
  embed->add_flag("--concurrent", concurrent, "Lock-free multi-threaded updates (not reproducible)");

  // cluster-eval
  auto* clus = app.add_subcommand("cluster-eval", "Cluster embeddings and score against labels");
  add_common(clus, common);
  std::string embeddings_path;
  std::string labels_path;
  std::optional<std::size_t> k;
  std::optional<std::size_t> restarts;
  clus->add_option("--embeddings", embeddings_path, "Embedding CSV")->required();
  clus->add_option("--labels", labels_path, "Edge-list file carrying community labels")->required();
  clus->add_option("--k", k, "Number of clusters");
  clus->add_option("--restarts", restarts, "k-means restarts");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a sweep and write a report");
  add_common(exp, common);
  std::optional<std::size_t> repetitions;
  exp->add_option("--repetitions", repetitions, "Repetitions per row");
  exp->add_option("--restarts", restarts, "k-means restarts");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Compare trajectory ensembles with the master equation");
  add_common(orc, common);
  std::optional<std::string> oracle_graph;
  std::optional<std::vector<double>> alphas;
  std::optional<std::vector<double>> times;
  std::optional<std::size_t> trajectories;
  std::optional<NodeId> start;
  bool halving = false;
  orc->add_option("--graph", oracle_graph, "Edge-list file (at most 32 nodes)");
  orc->add_option("--alpha", alphas, "Alpha values in [0, 1]")->delimiter(',');
  orc->add_option("--times", times, "Comparison times, multiples of dt")->delimiter(',');
  orc->add_option("--trajectories", trajectories, "Ensemble size");
  orc->add_option("--dt", dt, "Trajectory time step");
  orc->add_option("--start", start, "Start node");
  orc->add_option("--scheme", scheme, "Jump-free propagator: exact | first_order");
  orc->add_flag("--halving", halving, "Report the exact change from halving dt");

  auto fail = [&](const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return 1;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what());
  }

  try {
    PipelineConfig c = base_config(common);

    if (gen->parsed()) {
      override_with(sizes, c.graph.cluster_sizes);
      override_with(p_intra, c.graph.p_intra);
      override_with(p_inter, c.graph.p_inter);
      c.graph.validate();
      const Output o = prepare_output(common, c);
      ClusteredErSpec spec = c.graph;
      spec.seed = graph_seed(c.seed, 0);
      const LabeledGraph lg = generate_clustered_er(spec);
      save_edge_list(lg.graph, lg.labels, o / "graph.tsv", o.header);
      out << json{{"graph", (o / "graph.tsv").string()}, {"nodes", lg.graph.node_count()},
                  {"edges", lg.graph.edge_count()}}.dump()
          << '\n';
      return 0;
    }

    if (walk->parsed()) {
      if (mode) c.walk.mode = parse_walker_config(*mode);
      override_with(alpha, c.walk.alpha);
      override_with(p, c.walk.settings.p);
      override_with(q, c.walk.settings.q);
      override_with(walk_length, c.walk.settings.walk_length);
      override_with(walks_per_node, c.walk.settings.walks_per_node);
      if (dt) c.walk.settings.hqcw_dt = *dt;
      if (t_max) c.walk.settings.hqcw_t_max = *t_max;
      if (scheme) c.walk.settings.hqcw_scheme = parse_scheme(*scheme);
      const Graph g = read_graph(graph_path);
      const auto seed = walks_seed(c.seed, c.walk.mode, c.walk.alpha, 0);
      json summary{{"mode", walker_name(c.walk.mode)}};
      if (c.walk.mode == WalkerKind::hqcw) {
        const HqcwParams params = hqcw_params(c.walk.settings, c.walk.alpha, seed);
        params.validate();
        const Output o = prepare_output(common, c);
        const HqcwCorpus hc = generate_hqcw_corpus(g, params, c.threads);
        save_corpus(hc.corpus, o / "walks.txt", o.header);
        if (dump) save_trajectory_dump(hc.trajectories, o / "trajectories.tsv", o.header);
        summary["walks"] = hc.corpus.size();
        summary["timed_out"] = hc.timed_out;
        summary["dt"] = params.resolved_dt(g);
        summary["corpus"] = (o / "walks.txt").string();
      } else {
        const Output o = prepare_output(common, c);
        const WalkCorpus corpus = generate_walks(g, c.walk.mode, c.walk.settings, c.walk.alpha, seed, c.threads);
        save_corpus(corpus, o / "walks.txt", o.header);
        summary["walks"] = corpus.size();
        summary["corpus"] = (o / "walks.txt").string();
      }
      out << summary.dump() << '\n';
      return 0;
    }

    if (embed->parsed()) {
      override_with(dim, c.embedding.dimension);
      override_with(window, c.embedding.window);
      override_with(negatives, c.embedding.negatives);
      override_with(epochs, c.embedding.epochs);
      override_with(learning_rate, c.embedding.learning_rate);
      if (concurrent) c.embedding.deterministic = false;
      c.embedding.validate();
      const WalkCorpus corpus = load_corpus(corpus_path);
      const Output o = prepare_output(common, c);
      SkipGramParams params = c.embedding;
      params.seed = embedding_seed(c.seed, 0, params.dimension);
      params.threads = c.threads;
      const auto trained = train(corpus, params, nodes.value_or(0));
      save_embeddings(trained.input, o / "embeddings.csv", o.header);
      save_training_log(trained.epoch_mean_loss, o / "training_log.csv", o.header);
      out << json{{"embeddings", (o / "embeddings.csv").string()}, {"rows", trained.input.rows()},
                  {"dimension", trained.input.dimension()}, {"final_loss", trained.epoch_mean_loss.back()}}.dump()
          << '\n';
      return 0;
    }

    if (clus->parsed()) {
      override_with(k, c.k);
      override_with(restarts, c.restarts);
      if (c.k < 1 || c.restarts < 1) throw InvalidArgument("k and restarts must be at least 1");
      const EmbeddingMatrix e = load_embeddings(embeddings_path);
      const auto loaded = load_edge_list(labels_path);
      if (!loaded.labels) throw InvalidArgument(labels_path + " carries no community labels");
      if (loaded.labels->size() != e.rows()) throw LengthMismatch("embedding rows do not match label count");
      const Output o = prepare_output(common, c);
      const auto result = kmeans_best_of(to_points(e), c.k, c.restarts, kmeans_seed(c.seed, 0, e.dimension()));
      const double score = ari(result.labels, loaded.labels->values());
      std::ostringstream clusters;
      clusters << "node,cluster\n";
      for (std::size_t i = 0; i < result.labels.size(); ++i) clusters << i << ',' << result.labels[i] << '\n';
      write_text(o / "clusters.csv", o.header, clusters.str());
      char row[128];
      std::snprintf(row, sizeof row, "%zu,%zu,%zu,%.17g,%.6f\n", e.dimension(), c.k, c.restarts, result.inertia, score);
      write_text(o / "report.csv", o.header, std::string("d,k,restarts,inertia,ari\n") + row);
      out << json{{"ari", score}, {"inertia", result.inertia}, {"report", (o / "report.csv").string()}}.dump() << '\n';
      return 0;
    }

    if (exp->parsed()) {
      override_with(repetitions, c.repetitions);
      override_with(restarts, c.restarts);
      const ExperimentConfig ec = experiment_config(c);
      ec.validate();
      const Output o = prepare_output(common, c);
      const ExperimentReport report = run_experiment(ec);
      save_report(report, o / "report.csv", o.header);
      std::ostringstream reps;
      reps << "walker,param_name,param_value,d,repetition,ari\n";
      for (const auto& r : report.rows) {
        for (std::size_t i = 0; i < r.ari_per_repetition.size(); ++i) {
          char v[64];
          std::snprintf(v, sizeof v, "%.17g", r.ari_per_repetition[i]);
          reps << r.walker << ',' << r.param_name << ',' << r.param_value << ',' << r.dimension << ',' << i << ','
               << v << '\n';
        }
      }
      write_text(o / "repetitions.csv", o.header, reps.str());
      for (const auto& w : report.warnings) err << json{{"warning", w}}.dump() << '\n';
      out << json{{"report", (o / "report.csv").string()}, {"rows", report.rows.size()}}.dump() << '\n';
      return 0;
    }

    if (orc->parsed()) {
      if (oracle_graph) c.oracle.graph_file = *oracle_graph;
      override_with(alphas, c.oracle.alphas);
      override_with(times, c.oracle.times);
      override_with(trajectories, c.oracle.trajectories);
      if (dt) c.oracle.dt = *dt;
      override_with(start, c.oracle.start);
      if (scheme) c.oracle.scheme = parse_scheme(*scheme);
      if (c.oracle.graph_file.empty()) throw InvalidArgument("oracle needs a graph (--graph or oracle.graph_file)");
      if (c.oracle.trajectories < 2) throw InvalidArgument("oracle needs at least two trajectories");
      if (c.oracle.alphas.empty() || c.oracle.times.empty()) throw InvalidArgument("oracle needs alphas and times");
      for (double a : c.oracle.alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw InvalidAlpha("oracle alpha must lie in [0, 1], got " + format_value(a));
      }
      const Graph g = read_graph(c.oracle.graph_file);
      if (g.node_count() > kMaxOracleNodes) throw InvalidArgument("oracle graphs are limited to 32 nodes");
      if (c.oracle.start >= g.node_count()) throw InvalidArgument("start node out of range");
      const Output o = prepare_output(common, c);
      const DensityMatrix rho0 = pure_density(QuantumState::localized(g.node_count(), c.oracle.start));
      for (double a : c.oracle.alphas) {
        const double step = c.oracle.dt.value_or(default_timestep(g, a));
        const auto runs = simulate_occupations(g, c.oracle.start, a, step, c.oracle.times, c.oracle.trajectories,
                                               derive_seed(c.seed, {hash_tag("oracle"), std::bit_cast<std::uint64_t>(a)}),
                                               c.oracle.scheme, c.threads);
        const auto estimate = ensemble_occupations(runs, c.oracle.times);
        const auto pops = integrate_populations(rho0, g, a, c.oracle.times, default_oracle_timestep(g));
        const auto rows = compare_with_lindblad(estimate, pops);
        const std::string name = "oracle_alpha" + format_value(a) + ".csv";
        save_oracle_comparison(rows, o / name, o.header);
        double max_z = 0.0;
        for (const auto& r : rows) max_z = std::max(max_z, std::abs(r.z_score));
        json summary{{"alpha", a}, {"dt", step}, {"max_abs_z", max_z}, {"within_3_stderr", max_z <= 3.0},
                     {"comparison", (o / name).string()}};
        if (halving) {
          const auto full = expected_occupations(g, c.oracle.start, a, step, c.oracle.times, c.oracle.scheme);
          const auto half = expected_occupations(g, c.oracle.start, a, step / 2, c.oracle.times, c.oracle.scheme);
          double change = 0.0;
          for (std::size_t t = 0; t < full.size(); ++t) change = std::max(change, (full[t] - half[t]).cwiseAbs().maxCoeff());
          summary["dt_halving_change"] = change;
        }
        out << summary.dump() << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const json::exception& e) {
    return fail("ConfigError", e.what());
  } catch (const std::exception& e) {
    return fail("InternalError", e.what());
  }
  return fail("UsageError", "no subcommand given");
}

}  // namespace qcw::cli
