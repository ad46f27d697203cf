#include "hdfp/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>

#include "hdfp/encoder.hpp"
#include "hdfp/error.hpp"
#include "hdfp/eval/bo.hpp"
#include "hdfp/eval/features.hpp"
#include "hdfp/eval/ged.hpp"
#include "hdfp/eval/generator.hpp"
#include "hdfp/eval/knn.hpp"
#include "hdfp/eval/stats.hpp"
#include "hdfp/hash.hpp"
#include "hdfp/hdc.hpp"
#include "hdfp/molecule_list.hpp"
#include "hdfp/molgraph.hpp"
#include "hdfp/morgan.hpp"
#include "hdfp/parallel.hpp"

#ifndef HDFP_VERSION
#define HDFP_VERSION "dev"
#endif

namespace hdfp::cli {
namespace {

using json = nlohmann::ordered_json;

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

// Fully resolved parameters of one invocation: a replayable argv plus the
// same values as a JSON object for the manifest.
class Resolved {
 public:
  explicit Resolved(std::string command) : command_(std::move(command)) { args_.push_back(command_); }

  void positional(const std::string& name, const std::string& v) {
    args_.push_back(v);
    config_[name] = v;
  }
  void text(const std::string& flag, const std::string& v) {
    push(flag, v);
    config_[flag] = v;
  }
  void integer(const std::string& flag, std::int64_t v) {
    push(flag, std::to_string(v));
    config_[flag] = v;
  }
  void unsigned_integer(const std::string& flag, std::uint64_t v) {
    push(flag, std::to_string(v));
    config_[flag] = v;
  }
  void real(const std::string& flag, double v) {
    push(flag, exact(v));
    config_[flag] = v;
  }
  void list(const std::string& flag, const std::vector<std::size_t>& v) {
    push(flag, join(v));
    config_[flag] = v;
  }
  void toggle(const std::string& flag, bool on) {
    if (on) args_.push_back("--" + flag);
    config_[flag] = on;
  }

  const std::string& command() const noexcept { return command_; }
  const std::vector<std::string>& args() const noexcept { return args_; }
  const json& config() const noexcept { return config_; }

 private:
  void push(const std::string& flag, std::string v) {
    args_.push_back("--" + flag);
    args_.push_back(std::move(v));
  }

  std::string command_;
  std::vector<std::string> args_;
  json config_ = json::object();
};

struct Common {
  std::string output;
  std::string manifest;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-o,--output", c.output, "Output file (default: stdout)");
  app->add_option("--manifest", c.manifest,
                  "Manifest path (default: <output>.manifest.json; none for stdout)");
  app->add_option("--threads", c.threads, "Worker threads (default: $HDFP_THREADS or 1)");
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("HDFP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) {
      throw Error(ErrorKind::kConfig, std::string("HDFP_THREADS must be a positive integer, got '") +
                                          env + "'");
    }
    return static_cast<unsigned>(v);
  }
  return 1;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorKind::kIo, "cannot open output '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (file_.is_open()) {
      file_.close();
      if (file_.fail()) throw Error(ErrorKind::kIo, "failed writing output");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_manifest(Resolved r, const Common& c, const std::string& input,
                    std::optional<std::uint64_t> master_seed) {
  std::string path = c.manifest;
  if (path.empty()) {
    if (c.output.empty()) return;
    path = c.output + ".manifest.json";
  }
  if (!c.output.empty()) r.text("output", c.output);
  if (!c.manifest.empty()) r.text("manifest", c.manifest);

  json m;
  m["tool"] = "hdfp";
  m["version"] = HDFP_VERSION;
  m["command"] = r.command();
  m["input"] = input;
  m["output"] = c.output.empty() ? "-" : c.output;
  m["master_seed"] = master_seed ? json(*master_seed) : json(nullptr);
  m["config"] = r.config();
  m["args"] = r.args();

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIo, "cannot write manifest '" + path + "'");
  f << m.dump(2) << '\n';
  if (!f) throw Error(ErrorKind::kIo, "failed writing manifest '" + path + "'");
}

struct Library {
  std::vector<mol::MolGraph> graphs;
  std::vector<double> labels;
};

Library load_library(const std::string& path, bool need_property) {
  const auto records = mol::read_molecule_list(path);
  Library lib;
  lib.graphs.reserve(records.size());
  for (const auto& rec : records) {
    if (need_property && !rec.property) {
      throw Error(ErrorKind::kInvalidValue,
                  "line " + std::to_string(rec.line_number) + ": missing property value");
    }
    try {
      lib.graphs.push_back(mol::parse_smiles(rec.smiles));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(rec.line_number) + ": " + e.what());
    }
    if (rec.property) lib.labels.push_back(*rec.property);
  }
  return lib;
}

encoder::Encoder make_encoder(std::size_t dim, int depth, std::uint64_t seed,
                              bool global_attrs = true) {
  encoder::EncoderConfig cfg;
  cfg.dim = dim;
  cfg.depth = depth;
  cfg.master_seed = seed;
  cfg.include_global_attrs = global_attrs;
  return encoder::Encoder(cfg);  // validates
}

baseline::MorganConfig make_morgan(std::size_t nbits, int radius) {
  baseline::MorganConfig cfg;
  cfg.nbits = nbits;
  cfg.radius = radius;
  cfg.validate();
  return cfg;
}

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw Error(ErrorKind::kConfig, "--dims must list at least one dimension");
}

// encode -------------------------------------------------------------------

struct EncodeOptions {
  Common common;
  std::string input;
  std::string rep = "hdf";
  std::size_t dim = 1024;
  int depth = 2;
  int radius = 2;
  std::uint64_t seed = 42;
  bool no_global_attrs = false;
  bool strict = false;
  std::size_t batch = 1024;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int cmd_encode(const EncodeOptions& o, std::ostream& out, std::ostream& err) {
  const bool hdf = o.rep == "hdf";
  if (!hdf) {
    if (o.depth_opt->count()) throw Error(ErrorKind::kConfig, "--depth applies to --rep hdf; use --radius");
    if (o.seed_opt->count()) throw Error(ErrorKind::kConfig, "--seed applies to --rep hdf only");
    if (o.no_global_attrs) throw Error(ErrorKind::kConfig, "--no-global-attrs applies to --rep hdf only");
  } else if (o.radius_opt->count()) {
    throw Error(ErrorKind::kConfig, "--radius applies to --rep morgan; use --depth");
  }
  if (o.batch == 0) throw Error(ErrorKind::kConfig, "--batch-size must be positive");
  const unsigned threads = resolve_threads(o.common.threads);

  std::optional<encoder::Encoder> enc;
  baseline::MorganConfig morgan;
  if (hdf) {
    enc.emplace(make_encoder(o.dim, o.depth, o.seed, !o.no_global_attrs));
  } else {
    morgan = make_morgan(o.dim, o.radius);
  }

  std::ifstream in(o.input);
  if (!in) throw Error(ErrorKind::kIo, "cannot open molecule list '" + o.input + "'");
  OutputTarget target(o.common.output, out);

  struct Item {
    std::size_t line = 0;
    std::string smiles;
    std::string result;
    std::string error;
  };
  std::vector<Item> batch;
  std::size_t encoded = 0;
  std::size_t failures = 0;

  auto flush = [&] {
    parallel_for(batch.size(), threads, [&](std::size_t i) {
      Item& item = batch[i];
      if (!item.error.empty()) return;
      try {
        const auto g = mol::parse_smiles(item.smiles);
        item.result = hdf ? encoder::to_jsonl(item.smiles, enc->encode(g))
                          : baseline::to_jsonl(item.smiles, morgan, baseline::morgan_encode(morgan, g));
      } catch (const Error& e) {
        item.error = e.what();
      }
    });
    for (const Item& item : batch) {
      if (item.error.empty()) {
        target.stream() << item.result << '\n';
        ++encoded;
      } else {
        err << "line " << item.line << ": " << item.error << '\n';
        ++failures;
      }
    }
    batch.clear();
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    Item item;
    item.line = line_number;
    try {
      auto rec = mol::parse_record_line(line, line_number);
      if (!rec) continue;
      item.smiles = rec->smiles;
    } catch (const Error& e) {
      item.error = e.what();
    }
    batch.push_back(std::move(item));
    if (batch.size() >= o.batch) flush();
  }
  flush();
  target.finish();

  Resolved r("encode");
  r.positional("input", o.input);
  r.text("rep", o.rep);
  r.unsigned_integer("dim", o.dim);
  if (hdf) {
    r.integer("depth", o.depth);
    r.unsigned_integer("seed", o.seed);
    r.toggle("no-global-attrs", o.no_global_attrs);
  } else {
    r.integer("radius", o.radius);
  }
  r.toggle("strict", o.strict);
  write_manifest(r, o.common, o.input, hdf ? std::optional(o.seed) : std::nullopt);

  err << "encoded " << encoded << " molecules, " << failures << " failed\n";
  return failures > 0 && o.strict ? kExitInput : kExitOk;
}

// ged-bench ----------------------------------------------------------------

struct GedOptions {
  Common common;
  std::string input;
  std::vector<std::size_t> dims = {32, 128, 512, 2048};
  int max_edits = 6;
  int depth = 2;
  std::size_t pairs = 200;
  std::uint64_t rng_seed = 0;
  std::uint64_t seed = 42;
  std::size_t frontier = 64;
  bool per_seed = false;
};

int cmd_ged_bench(const GedOptions& o, std::ostream& out, std::ostream& err) {
  check_dims(o.dims);
  if (o.max_edits < 1 || o.max_edits > eval::kMaxLadderDepth) {
    throw Error(ErrorKind::kConfig, "--max-edits must be in 1.." + std::to_string(eval::kMaxLadderDepth));
  }
  if (o.pairs == 0) throw Error(ErrorKind::kConfig, "--pairs must be positive");
  if (o.frontier == 0) throw Error(ErrorKind::kConfig, "--frontier must be positive");
  for (std::size_t d : o.dims) {
    make_encoder(d, o.depth, o.seed);
    make_morgan(d, o.depth);
  }

  const auto lib = load_library(o.input, false);
  if (lib.graphs.empty()) throw Error(ErrorKind::kEmptyInput, "seed file has no molecules");

  eval::LadderOptions ladder;
  ladder.frontier_limit = o.frontier;
  std::vector<std::pair<std::string, eval::GedDataset>> datasets;
  if (o.per_seed) {
    for (std::size_t i = 0; i < lib.graphs.size(); ++i) {
      std::span<const mol::MolGraph> one(&lib.graphs[i], 1);
      datasets.emplace_back("seed" + std::to_string(i),
                            eval::build_ged_dataset(one, o.max_edits, o.pairs,
                                                    mix64(o.rng_seed + i), ladder));
    }
  } else {
    datasets.emplace_back("all", eval::build_ged_dataset(lib.graphs, o.max_edits, o.pairs,
                                                         o.rng_seed, ladder));
  }

  OutputTarget target(o.common.output, out);
  target.stream() << "dataset,representation,dim,correlation\n";
  for (const auto& [name, data] : datasets) {
    for (const auto& w : data.warnings) err << name << ": " << w << '\n';
    for (std::size_t d : o.dims) {
      const auto enc = make_encoder(d, o.depth, o.seed);
      const auto morgan = make_morgan(d, o.depth);
      double hdf_corr = 0.0;
      double morgan_corr = 0.0;
      try {
        hdf_corr = eval::ged_correlation(data.pairs, eval::hdf_cosine_distance(enc));
        morgan_corr = eval::ged_correlation(data.pairs, eval::morgan_tanimoto_distance(morgan));
      } catch (const Error& e) {
        if (!o.per_seed) throw;
        err << name << ": skipped at dim " << d << ": " << e.what() << '\n';
        continue;
      }
      target.stream() << name << ",hdf," << d << ',' << csv_number(hdf_corr) << '\n';
      target.stream() << name << ",morgan," << d << ',' << csv_number(morgan_corr) << '\n';
    }
  }
  target.finish();

  Resolved r("ged-bench");
  r.positional("input", o.input);
  r.list("dims", o.dims);
  r.integer("max-edits", o.max_edits);
  r.integer("depth", o.depth);
  r.unsigned_integer("pairs", o.pairs);
  r.unsigned_integer("rng-seed", o.rng_seed);
  r.unsigned_integer("seed", o.seed);
  r.unsigned_integer("frontier", o.frontier);
  r.toggle("per-seed", o.per_seed);
  write_manifest(r, o.common, o.input, o.seed);
  return kExitOk;
}

// knn-eval -----------------------------------------------------------------

struct KnnOptions {
  Common common;
  std::string input;
  std::vector<std::size_t> dims = {32, 64, 128, 256, 512, 1024};
  std::size_t k = 5;
  std::uint64_t split_seed = 0;
  double train_fraction = 0.8;
  std::size_t splits = 1;
  int depth = 2;
  std::uint64_t seed = 42;
};

int cmd_knn_eval(const KnnOptions& o, std::ostream& out, std::ostream& err) {
  check_dims(o.dims);
  if (o.k == 0) throw Error(ErrorKind::kConfig, "--k must be positive");
  if (!(o.train_fraction > 0.0 && o.train_fraction < 1.0)) {
    throw Error(ErrorKind::kConfig, "--train-fraction must be in (0,1)");
  }
  if (o.splits == 0) throw Error(ErrorKind::kConfig, "--splits must be positive");
  for (std::size_t d : o.dims) {
    make_encoder(d, o.depth, o.seed);
    make_morgan(d, o.depth);
  }
  const unsigned threads = resolve_threads(o.common.threads);

  const auto records = mol::read_molecule_list(o.input);
  const std::size_t n = records.size();
  const auto n_train = static_cast<std::size_t>(std::floor(o.train_fraction * static_cast<double>(n)));
  if (o.k > n_train) {
    throw Error(ErrorKind::kConfig, "k=" + std::to_string(o.k) + " exceeds the training split size " +
                                        std::to_string(n_train));
  }
  if (n_train >= n) throw Error(ErrorKind::kConfig, "test split is empty");

  const auto lib = load_library(o.input, true);

  std::vector<std::vector<std::size_t>> train_sets;
  std::vector<std::vector<std::size_t>> test_sets;
  for (std::size_t s = 0; s < o.splits; ++s) {
    auto rng = hdc::SeededGenerator(o.split_seed).stream("split:" + std::to_string(s));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::size_t> train(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    train_sets.push_back(std::move(train));
    test_sets.push_back(std::move(test));
  }
  auto labels_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> y;
    y.reserve(idx.size());
    for (std::size_t i : idx) y.push_back(lib.labels[i]);
    return y;
  };

  OutputTarget target(o.common.output, out);
  target.stream() << "representation,dim,k,mae\n";
  for (std::size_t d : o.dims) {
    const auto hdf = eval::hdf_features(make_encoder(d, o.depth, o.seed), lib.graphs, threads);
    const auto bits = eval::morgan_features(make_morgan(d, o.depth), lib.graphs, threads);
    std::vector<double> mae_h;
    std::vector<double> mae_m;
    std::vector<double> ratios;
    bool degenerate = false;
    for (std::size_t s = 0; s < o.splits; ++s) {
      const auto ytr = labels_of(train_sets[s]);
      const auto yte = labels_of(test_sets[s]);
      const double h = eval::knn_mae(hdf.select(train_sets[s]), ytr, hdf.select(test_sets[s]), yte,
                                     {o.k, eval::Distance::kCosine});
      const double m = eval::knn_mae(bits.select(train_sets[s]), ytr, bits.select(test_sets[s]), yte,
                                     {o.k, eval::Distance::kTanimoto});
      mae_h.push_back(h);
      mae_m.push_back(m);
      if (h > 0.0) {
        ratios.push_back(m / h);
      } else {
        degenerate = true;
        ratios.push_back(m > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      }
    }
    target.stream() << "hdf," << d << ',' << o.k << ',' << csv_number(eval::median(mae_h)) << '\n';
    target.stream() << "morgan," << d << ',' << o.k << ',' << csv_number(eval::median(mae_m)) << '\n';
    target.stream() << (degenerate ? "ratio-degenerate," : "ratio,") << d << ',' << o.k << ','
                    << csv_number(eval::median(ratios)) << '\n';
    if (degenerate) err << "dim " << d << ": hdf MAE is 0, ratio flagged degenerate\n";
  }
  target.finish();

  Resolved r("knn-eval");
  r.positional("input", o.input);
  r.list("dims", o.dims);
  r.unsigned_integer("k", o.k);
  r.unsigned_integer("split-seed", o.split_seed);
  r.real("train-fraction", o.train_fraction);
  r.unsigned_integer("splits", o.splits);
  r.integer("depth", o.depth);
  r.unsigned_integer("seed", o.seed);
  write_manifest(r, o.common, o.input, o.seed);
  return kExitOk;
}

// bo-run -------------------------------------------------------------------

struct BoOptions {
  Common common;
  std::string input;
  std::string rep = "hdf";
  std::size_t dim = 64;
  int depth = 2;
  int radius = 2;
  std::optional<double> target;
  std::size_t rounds = 150;
  std::size_t init = 10;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::uint64_t encoder_seed = 42;
  double noise = 1e-4;
  std::optional<double> lengthscale;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
};

int cmd_bo_run(const BoOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.target) throw Error(ErrorKind::kConfig, "--target is required");
  if (o.rep == "morgan" && o.depth_opt->count()) {
    throw Error(ErrorKind::kConfig, "--depth applies to --rep hdf; use --radius");
  }
  if (o.rep != "morgan" && o.radius_opt->count()) {
    throw Error(ErrorKind::kConfig, "--radius applies to --rep morgan");
  }
  if (o.repetitions == 0) throw Error(ErrorKind::kConfig, "--repetitions must be positive");
  eval::BoConfig base;
  base.init_points = o.init;
  base.rounds = o.rounds;
  base.noise_variance = o.noise;
  base.lengthscale = o.lengthscale;
  base.target_value = *o.target;
  base.acquisition = o.rep == "random" ? eval::Acquisition::kRandom
                                       : eval::Acquisition::kExpectedImprovement;
  base.validate();
  if (o.rep == "hdf") make_encoder(o.dim, o.depth, o.encoder_seed);
  if (o.rep == "morgan") make_morgan(o.dim, o.radius);
  const unsigned threads = resolve_threads(o.common.threads);

  const auto lib = load_library(o.input, true);
  const std::size_t n = lib.graphs.size();
  if (n <= o.init + o.rounds) {
    throw Error(ErrorKind::kConfig, "library of " + std::to_string(n) +
                                        " molecules must exceed init + rounds = " +
                                        std::to_string(o.init + o.rounds));
  }

  eval::FeatureMatrix features;
  if (o.rep == "hdf") {
    features = eval::hdf_features(make_encoder(o.dim, o.depth, o.encoder_seed), lib.graphs, threads);
  } else if (o.rep == "morgan") {
    features = eval::morgan_features(make_morgan(o.dim, o.radius), lib.graphs, threads);
  } else {
    features = eval::FeatureMatrix(n, 1);  // random acquisition never reads features
  }

  OutputTarget target(o.common.output, out);
  target.stream() << "seed,representation,dim,round,best_distance\n";
  std::vector<double> aucs;
  for (std::size_t rep = 0; rep < o.repetitions; ++rep) {
    eval::BoConfig cfg = base;
    cfg.seed = o.seed + rep;
    const auto trace = eval::bo_run(features, lib.labels, cfg);
    if (trace.truncated) err << "seed " << cfg.seed << ": library exhausted, trace truncated\n";
    for (std::size_t round = 0; round < trace.best_distance_per_round.size(); ++round) {
      target.stream() << cfg.seed << ',' << o.rep << ',' << o.dim << ',' << round + 1 << ','
                      << csv_number(trace.best_distance_per_round[round]) << '\n';
    }
    target.stream() << cfg.seed << ',' << o.rep << ',' << o.dim << ",auc," << csv_number(trace.auc)
                    << '\n';
    aucs.push_back(trace.auc);
  }
  target.finish();
  err << o.rep << " median AUC " << csv_number(eval::median(aucs)) << " over " << aucs.size()
      << " repetitions\n";

  Resolved r("bo-run");
  r.positional("input", o.input);
  r.text("rep", o.rep);
  r.unsigned_integer("dim", o.dim);
  if (o.rep == "morgan") r.integer("radius", o.radius);
  else r.integer("depth", o.depth);
  r.real("target", *o.target);
  r.unsigned_integer("rounds", o.rounds);
  r.unsigned_integer("init", o.init);
  r.unsigned_integer("repetitions", o.repetitions);
  r.unsigned_integer("seed", o.seed);
  r.unsigned_integer("encoder-seed", o.encoder_seed);
  r.real("noise", o.noise);
  if (o.lengthscale) r.real("lengthscale", *o.lengthscale);
  write_manifest(r, o.common, o.input, o.seed);
  return kExitOk;
}

// generate -----------------------------------------------------------------

struct GenerateOptions {
  Common common;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::string label = "wiener";
  std::size_t min_atoms = 4;
  std::size_t max_atoms = 30;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream&) {
  eval::GeneratorOptions opt;
  opt.min_atoms = o.min_atoms;
  opt.max_atoms = o.max_atoms;
  const auto corpus = eval::generate_corpus(o.count, o.seed, opt);

  OutputTarget target(o.common.output, out);
  for (const auto& g : corpus) {
    target.stream() << mol::write_smiles(g);
    if (o.label == "wiener") target.stream() << '\t' << mol::wiener_index(g);
    else if (o.label == "heteroatom") target.stream() << '\t' << exact(mol::heteroatom_fraction(g));
    target.stream() << '\n';
  }
  target.finish();

  Resolved r("generate");
  r.unsigned_integer("count", o.count);
  r.unsigned_integer("seed", o.seed);
  r.text("label", o.label);
  r.unsigned_integer("min-atoms", o.min_atoms);
  r.unsigned_integer("max-atoms", o.max_atoms);
  write_manifest(r, o.common, "", o.seed);
  return kExitOk;
}

// replay -------------------------------------------------------------------

int cmd_replay(const std::string& manifest_path, const std::string& output_override,
               std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest '" + manifest_path + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, "manifest '" + manifest_path + "' is not valid JSON: " + e.what());
  }
  if (!m.contains("args") || !m["args"].is_array() || m["args"].empty()) {
    throw Error(ErrorKind::kIo, "manifest '" + manifest_path + "' has no args");
  }
  std::vector<std::string> args;
  for (const auto& a : m["args"]) {
    if (!a.is_string()) throw Error(ErrorKind::kIo, "manifest args must be strings");
    args.push_back(a.get<std::string>());
  }
  if (args.front() == "replay") throw Error(ErrorKind::kIo, "manifest cannot replay a replay");

  if (!output_override.empty()) {
    std::vector<std::string> patched;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if ((args[i] == "--output" || args[i] == "--manifest") && i + 1 < args.size()) {
        ++i;
        continue;
      }
      patched.push_back(args[i]);
    }
    patched.push_back("--output");
    patched.push_back(output_override);
    args = std::move(patched);
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("hdfp: hyperdimensional molecular fingerprints", "hdfp");
  app.set_version_flag("--version", HDFP_VERSION);
  app.require_subcommand(1);

  EncodeOptions enc;
  auto* encode = app.add_subcommand("encode", "Encode a molecule list to JSONL fingerprints");
  encode->add_option("input", enc.input, "Molecule list (SMILES[<TAB>property] per line)")->required();
  encode->add_option("--rep", enc.rep, "Representation")->check(CLI::IsMember({"hdf", "morgan"}));
  encode->add_option("--dim", enc.dim, "Vector dimension (bits for morgan)");
  enc.depth_opt = encode->add_option("--depth", enc.depth, "Message-passing depth (hdf)");
  enc.radius_opt = encode->add_option("--radius", enc.radius, "Morgan radius");
  enc.seed_opt = encode->add_option("--seed", enc.seed, "Master seed (hdf)");
  encode->add_flag("--no-global-attrs", enc.no_global_attrs, "Skip size/diameter attributes");
  encode->add_flag("--strict", enc.strict, "Exit nonzero if any line fails");
  encode->add_option("--batch-size", enc.batch, "Molecules per parallel batch");
  add_common(encode, enc.common);

  GedOptions ged;
  auto* ged_cmd = app.add_subcommand("ged-bench", "Correlation of fingerprint distance with edit distance");
  ged_cmd->add_option("input", ged.input, "Seed molecule list")->required();
  ged_cmd->add_option("--dims", ged.dims, "Dimensions")->delimiter(',');
  ged_cmd->add_option("--max-edits", ged.max_edits, "Perturbation ladder depth");
  ged_cmd->add_option("--depth", ged.depth, "HDF depth and Morgan radius");
  ged_cmd->add_option("--pairs", ged.pairs, "Pairs per seed");
  ged_cmd->add_option("--rng-seed", ged.rng_seed, "Ladder sampling seed");
  ged_cmd->add_option("--seed", ged.seed, "HDF master seed");
  ged_cmd->add_option("--frontier", ged.frontier, "Ladder frontier cap per depth");
  ged_cmd->add_flag("--per-seed", ged.per_seed, "One dataset per seed molecule");
  add_common(ged_cmd, ged.common);

  KnnOptions knn;
  auto* knn_cmd = app.add_subcommand("knn-eval", "k-NN regression error, Morgan vs HDF");
  knn_cmd->add_option("input", knn.input, "Molecule list with property column")->required();
  knn_cmd->add_option("--dims", knn.dims, "Dimensions")->delimiter(',');
  knn_cmd->add_option("--k", knn.k, "Neighbors");
  knn_cmd->add_option("--split-seed", knn.split_seed, "Train/test split seed");
  knn_cmd->add_option("--train-fraction", knn.train_fraction, "Training fraction");
  knn_cmd->add_option("--splits", knn.splits, "Number of random splits (medians reported)");
  knn_cmd->add_option("--depth", knn.depth, "HDF depth and Morgan radius");
  knn_cmd->add_option("--seed", knn.seed, "HDF master seed");
  add_common(knn_cmd, knn.common);

  BoOptions bo;
  auto* bo_cmd = app.add_subcommand("bo-run", "Bayesian optimization over a fixed library");
  bo_cmd->add_option("input", bo.input, "Molecule list with property column")->required();
  bo_cmd->add_option("--rep", bo.rep, "Representation")->check(CLI::IsMember({"hdf", "morgan", "random"}));
  bo_cmd->add_option("--dim", bo.dim, "Vector dimension (bits for morgan)");
  bo.depth_opt = bo_cmd->add_option("--depth", bo.depth, "HDF depth");
  bo.radius_opt = bo_cmd->add_option("--radius", bo.radius, "Morgan radius");
  bo_cmd->add_option("--target", bo.target, "Target property value");
  bo_cmd->add_option("--rounds", bo.rounds, "Acquisition rounds");
  bo_cmd->add_option("--init", bo.init, "Initial random design size");
  bo_cmd->add_option("--repetitions", bo.repetitions, "Repetitions (seeds seed..seed+n-1)");
  bo_cmd->add_option("--seed", bo.seed, "First repetition seed");
  bo_cmd->add_option("--encoder-seed", bo.encoder_seed, "HDF master seed");
  bo_cmd->add_option("--noise", bo.noise, "GP noise variance");
  bo_cmd->add_option("--lengthscale", bo.lengthscale, "Fixed GP lengthscale (default: median heuristic)");
  add_common(bo_cmd, bo.common);

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic molecule corpus");
  gen_cmd->add_option("--count", gen.count, "Number of distinct molecules");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--label", gen.label, "Property column")
      ->check(CLI::IsMember({"none", "wiener", "heteroatom"}));
  gen_cmd->add_option("--min-atoms", gen.min_atoms, "Minimum heavy atoms");
  gen_cmd->add_option("--max-atoms", gen.max_atoms, "Maximum heavy atoms");
  add_common(gen_cmd, gen.common);

  std::string manifest_path;
  std::string replay_output;
  auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
  replay->add_option("manifest", manifest_path, "Manifest JSON")->required();
  replay->add_option("-o,--output", replay_output, "Write to this path instead of the recorded one");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (encode->parsed()) return cmd_encode(enc, out, err);
    if (ged_cmd->parsed()) return cmd_ged_bench(ged, out, err);
    if (knn_cmd->parsed()) return cmd_knn_eval(knn, out, err);
    if (bo_cmd->parsed()) return cmd_bo_run(bo, out, err);
    if (gen_cmd->parsed()) return cmd_generate(gen, out, err);
    if (replay->parsed()) return cmd_replay(manifest_path, replay_output, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace hdfp::cli
