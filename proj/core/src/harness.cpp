// core/src/harness.cpp

// Copyright 2026 mvox authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mvox/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "mvox/csv.hpp"
#include "mvox/dsp.hpp"
#include "mvox/features.hpp"
#include "mvox/parallel.hpp"
#include "mvox/rng.hpp"
#include "mvox/similarity.hpp"
#include "mvox/version.hpp"
#include "mvox/wav.hpp"

namespace fs = std::filesystem;

namespace mvox {

Task parse_task(const std::string& name) {
  if (name == "ctid") return Task::kCtid;
  if (name == "clid") return Task::kClid;
  throw InvalidArgument("unknown task '" + name + "' (expected ctid or clid)");
}

const char* task_name(Task task) { return task == Task::kCtid ? "ctid" : "clid"; }

std::vector<int> manifest_labels(const Manifest& manifest, Task task) {
  std::vector<int> labels;
  labels.reserve(manifest.size());
  for (const auto& r : manifest.records()) {
    labels.push_back(task == Task::kCtid ? r.call_type : r.caller);
  }
  return labels;
}

int task_n_classes(const Manifest& manifest, Task task) {
  return task == Task::kCtid ? manifest.vocab().n_call_types()
                             : manifest.vocab().n_callers;
}

GridSearchOutcome grid_search(const Dataset& train_set, const Dataset& val_set,
                              const Dataset& test_set, int n_classes,
                              const GridSpec& grid, int epochs, std::uint64_t seed,
                              int threads) {
  require(!grid.batch_sizes.empty() && !grid.learning_rates.empty(),
          "grid_search: empty grid axis");
  for (int b : grid.batch_sizes) require(b >= 1, "grid_search: batch size must be >= 1");
  for (double lr : grid.learning_rates)
    require(lr > 0.0, "grid_search: learning rate must be positive");

  struct Point {
    int batch_size;
    double lr;
  };
  std::vector<Point> points;
  for (int b : grid.batch_sizes) {
    for (double lr : grid.learning_rates) points.push_back({b, lr});
  }

  std::vector<TrainResult> runs(points.size());
  std::vector<std::string> failures(points.size());
  parallel_for(points.size(), threads, [&](std::size_t k) {
    TrainConfig cfg;
    cfg.batch_size = points[k].batch_size;
    cfg.lr = points[k].lr;
    cfg.epochs = epochs;
    cfg.seed = derive_seed(seed, "grid", k);
    try {
      runs[k] = train(train_set, val_set, n_classes, cfg);
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!failures[k].empty()) {
      throw Error("grid point (batch_size=" + std::to_string(points[k].batch_size) +
                  ", lr=" + format_double(points[k].lr) + ") failed: " + failures[k]);
    }
  }

  GridSearchOutcome out;
  out.table.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.table.push_back(GridPointResult{points[k].batch_size, points[k].lr,
                                        runs[k].best_val_uar, runs[k].best_epoch});
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (out.table[k].val_uar > out.table[best].val_uar) best = k;
  }
  out.best_index = best;
  out.best_run = std::move(runs[best]);
  out.test_report = evaluate(out.best_run.best_model, test_set);
  return out;
}

void write_grid_results_csv(const std::vector<GridPointResult>& table,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "batch_size,learning_rate,val_uar,best_epoch\n";
  for (const auto& r : table) {
    out << r.batch_size << ',' << format_double(r.learning_rate) << ','
        << format_double(r.val_uar) << ',' << r.best_epoch << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<GridPointResult> read_grid_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open grid results: " + path);
  std::vector<GridPointResult> table;
  std::string line;
  std::getline(in, line);  // header
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    const std::string ctx = path + ":" + std::to_string(line_no);
    if (f.size() != 4) throw ParseError(ctx + ": expected 4 fields");
    GridPointResult r;
    r.batch_size = static_cast<int>(parse_int(f[0], ctx));
    r.learning_rate = parse_double(f[1], ctx);
    r.val_uar = parse_double(f[2], ctx);
    r.best_epoch = static_cast<int>(parse_int(f[3], ctx));
    table.push_back(r);
  }
  return table;
}

LayerSweepResult layer_sweep(const std::map<int, FrameMatrix>& layer_tables,
                             const std::vector<int>& labels,
                             const SplitAssignment& split, int n_classes,
                             const GridSpec& grid, int epochs, std::uint64_t seed,
                             int threads) {
  require(!layer_tables.empty(), "layer_sweep: no layers");
  const std::size_t n = labels.size();
  for (const auto& [layer, table] : layer_tables) {
    require(table.n_frames == n,
            "layer_sweep: layer " + std::to_string(layer) +
                " row count does not match the utterance set");
  }

  LayerSweepResult out;
  for (const auto& [layer, table] : layer_tables) {
    const SplitDatasets ds = make_datasets(table, labels, split);
    const GridSearchOutcome g =
        grid_search(ds.train, ds.val, ds.test, n_classes, grid, epochs,
                    derive_seed(seed, "layer", static_cast<std::uint64_t>(layer)),
                    threads);
    LayerSweepEntry e;
    e.layer = layer;
    e.val_uar = g.table[g.best_index].val_uar;
    e.test_uar = g.test_report.uar;
    e.best_batch_size = g.table[g.best_index].batch_size;
    e.best_learning_rate = g.table[g.best_index].learning_rate;
    out.entries.push_back(e);
  }

  double lo = out.entries.front().val_uar, hi = lo;
  for (const auto& e : out.entries) {
    lo = std::min(lo, e.val_uar);
    hi = std::max(hi, e.val_uar);
  }
  out.degenerate_normalization = hi == lo;
  for (auto& e : out.entries) {
    e.normalized = out.degenerate_normalization ? 0.0 : (e.val_uar - lo) / (hi - lo);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.entries.size(); ++i) {
    if (out.entries[i].val_uar > out.entries[best].val_uar) best = i;
  }
  out.best_layer = out.entries[best].layer;
  return out;
}

void write_layer_sweep_csv(const LayerSweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "layer,val_uar,test_uar,normalized,best_batch_size,best_learning_rate\n";
  for (const auto& e : result.entries) {
    out << e.layer << ',' << format_double(e.val_uar) << ',' << format_double(e.test_uar)
        << ',' << format_double(e.normalized) << ',' << e.best_batch_size << ','
        << format_double(e.best_learning_rate) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<AudioBuffer> load_segments(const Manifest& manifest, double target_rate) {
  // load each referenced file once
  std::map<std::string, WavFile> cache;
  for (const auto& r : manifest.records()) {
    if (!cache.count(r.wav_path)) {
      WavFile wav = read_wav(r.wav_path);
      if (wav.source_channels > 1) {
        std::cerr << "warning: " << r.wav_path << ": averaged "
                  << wav.source_channels << " channels to mono\n";
      }
      cache.emplace(r.wav_path, std::move(wav));
    }
  }

  std::vector<AudioBuffer> segments(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& r = manifest.records()[i];
    const AudioBuffer& full = cache.at(r.wav_path).audio;
    const auto len = static_cast<long long>(full.samples.size());
    long long lo = std::llround(r.start_s * full.sample_rate);
    long long hi = std::llround(r.end_s * full.sample_rate);
    lo = std::clamp(lo, 0LL, len);
    hi = std::clamp(hi, 0LL, len);
    if (hi <= lo) {
      throw InvalidArgument("segment '" + r.id + "' lies outside its audio file");
    }
    AudioBuffer seg;
    seg.sample_rate = full.sample_rate;
    seg.samples.assign(full.samples.begin() + lo, full.samples.begin() + hi);
    segments[i] = target_rate > 0.0 ? resample(seg, target_rate) : std::move(seg);
  }
  return segments;
}

FrameMatrix featurize_c22(const Manifest& manifest, double target_rate, int threads) {
  require(manifest.size() > 0, "featurize_c22: empty manifest");
  const std::vector<AudioBuffer> segments = load_segments(manifest, target_rate);

  FrameMatrix table;
  table.n_frames = segments.size();
  table.frame_dim = 24;
  table.source_tag = "c22_24";
  table.data.resize(table.n_frames * table.frame_dim);

  parallel_for(segments.size(), threads, [&](std::size_t i) {
    const FeatureVector fv = c22_24(segments[i].samples);
    for (std::size_t d = 0; d < 24; ++d) {
      table.at(i, d) = static_cast<float>(fv.values[d]);
    }
  });
  return table;
}

FrameMatrix import_embeddings(const Manifest& manifest, const std::string& emb_dir,
                              int threads) {
  require(manifest.size() > 0, "import_embeddings: empty manifest");

  std::vector<FeatureVector> rows(manifest.size());
  std::vector<std::string> tags(manifest.size());
  parallel_for(manifest.size(), threads, [&](std::size_t i) {
    const auto path =
        (fs::path(emb_dir) / (manifest.records()[i].id + ".emb1")).string();
    const FrameMatrix frames = read_embedding_file(path);
    rows[i] = aggregate(frames);
    tags[i] = frames.source_tag;
  });

  FrameMatrix table = vectors_to_table(rows, "agg:" + tags.front());
  return table;
}

SplitDatasets make_datasets(const FrameMatrix& table, const std::vector<int>& labels,
                            const SplitAssignment& split) {
  require(table.n_frames == labels.size(),
          "make_datasets: table rows and labels differ in length");

  auto slice = [&](const std::vector<std::size_t>& idx) {
    Dataset d;
    d.x = Matrix(idx.size(), table.frame_dim);
    d.labels.resize(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      require(idx[r] < table.n_frames, "make_datasets: split index out of range");
      for (std::size_t c = 0; c < table.frame_dim; ++c) {
        d.x(r, c) = table.at(idx[r], c);
      }
      d.labels[r] = labels[idx[r]];
    }
    return d;
  };

  SplitDatasets out;
  out.train = slice(split.train);
  out.val = slice(split.val);
  out.test = slice(split.test);
  out.standardizer = Standardizer::fit(out.train.x);
  out.train.x = out.standardizer.apply(out.train.x);
  out.val.x = out.standardizer.apply(out.val.x);
  out.test.x = out.standardizer.apply(out.test.x);
  return out;
}

std::uint64_t fnv1a64_bytes(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

const std::vector<std::string> kConfigKeys = {
    "mode",          "task",         "manifest",      "features",
    "featurize",     "sample_rate",  "seed",          "threads",
    "out",           "classes",      "epochs",        "batch_sizes",
    "learning_rates", "batch_size",  "learning_rate", "stratified",
    "train_ratio",   "val_ratio",    "test_ratio",    "max_pairs",
    "mean_half",     "sim_split",    "layers_dir",    "window_len",
    "hop_len",
};

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

LabelVocabulary vocab_from_config(const KeyValueConfig& cfg) {
  const std::string classes = cfg.get_string_or("classes", "auto");
  if (classes == "auto") return marmoset_vocabulary();
  const auto n = parse_int(classes, "config key 'classes'");
  require(n >= 2, "config: classes must be >= 2");
  return generic_vocabulary(static_cast<int>(n));
}

std::vector<FeatureVector> similarity_features(const FrameMatrix& table,
                                               const std::string& mean_half_mode) {
  const FeatureScheme scheme = scheme_from_tag(table.source_tag);
  std::vector<FeatureVector> vecs = table_to_vectors(table, scheme);
  bool use_half = false;
  if (mean_half_mode == "on") {
    use_half = true;
  } else if (mean_half_mode == "auto") {
    use_half = scheme == FeatureScheme::kNeuralAgg;
  } else if (mean_half_mode != "off") {
    throw InvalidArgument("config: mean_half must be auto, on or off");
  }
  if (use_half) {
    for (auto& v : vecs) v = mean_half(v);
  }
  return vecs;
}

// Location and machine concerns (output path, worker count) stay out of the
// manifest and the hash: a rerun of the same experiment into another
// directory must produce the identical record.
bool environment_key(const std::string& key) { return key == "out" || key == "threads"; }

std::string serialize_config(const KeyValueConfig& cfg) {
  std::ostringstream ss;
  for (const auto& key : cfg.keys()) {
    if (environment_key(key)) continue;
    ss << key << " = " << cfg.get_string(key) << '\n';
  }
  return ss.str();
}

void write_run_manifest(const KeyValueConfig& cfg, const std::string& config_text,
                        const std::string& mode, const fs::path& out_dir,
                        const std::vector<std::string>& outputs) {
  std::ofstream out(out_dir / "run_manifest.txt", std::ios::binary);
  if (!out) throw IoError("cannot write run manifest");
  out << "tool_version = " << kVersion << '\n';
  out << "config_hash = " << hex64(fnv1a64_bytes(config_text)) << '\n';
  out << "mode = " << mode << '\n';
  out << "emb1_format_version = 1\n";
  out << "mlp1_format_version = 1\n";
  for (const auto& key : cfg.keys()) {
    if (environment_key(key)) continue;
    out << "config." << key << " = " << cfg.get_string(key) << '\n';
  }
  out << "outputs = ";
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i) out << ',';
    out << outputs[i];
  }
  out << '\n';
}

}  // namespace

std::string run_pipeline(const KeyValueConfig& config) {
  config.require_known_keys(kConfigKeys);

  const std::string mode = config.get_string_or("mode", "classify");
  const std::string out_dir_str = config.get_string("out");
  const auto seed = config.get_u64_or("seed", 0);
  const int threads = static_cast<int>(config.get_int_or("threads", 1));
  const std::string manifest_path = config.get_string("manifest");

  // fail fast on inputs before any compute
  require(fs::exists(manifest_path), "input missing: " + manifest_path);
  const std::string featurize_kind = config.get_string_or("featurize", "none");
  std::string features_path;
  if (featurize_kind == "none" && mode != "spectra") {
    if (mode != "layer-sweep") {
      features_path = config.get_string("features");
      require(fs::exists(features_path), "input missing: " + features_path);
    }
  } else if (featurize_kind != "none" && featurize_kind != "c22") {
    throw InvalidArgument("config: featurize must be none or c22");
  }
  std::string layers_dir;
  if (mode == "layer-sweep") {
    layers_dir = config.get_string("layers_dir");
    require(fs::is_directory(layers_dir), "input missing: " + layers_dir);
  }

  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);
  std::vector<std::string> outputs;

  const Manifest manifest = load_manifest(manifest_path, vocab_from_config(config));
  const Task task = parse_task(config.get_string_or("task", "ctid"));
  const std::vector<int> labels = manifest_labels(manifest, task);
  const int n_classes = task_n_classes(manifest, task);

  SplitRatios ratios;
  ratios.train = config.get_double_or("train_ratio", 0.7);
  ratios.val = config.get_double_or("val_ratio", 0.2);
  ratios.test = config.get_double_or("test_ratio", 0.1);

  const double sample_rate = config.get_double_or("sample_rate", 0.0);

  if (mode == "spectra") {
    LogMelConfig spec_cfg;
    spec_cfg.sample_rate = sample_rate > 0.0 ? sample_rate : 32000.0;
    spec_cfg.window_len = static_cast<std::size_t>(config.get_int_or("window_len", 1024));
    spec_cfg.hop_len = static_cast<std::size_t>(config.get_int_or("hop_len", 320));
    spec_cfg.fmax = spec_cfg.sample_rate / 2.0;

    const std::vector<AudioBuffer> segments = load_segments(manifest, sample_rate);
    for (int c = 0; c < manifest.vocab().n_call_types(); ++c) {
      std::vector<AudioBuffer> class_segments;
      for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (manifest.records()[i].call_type == c) class_segments.push_back(segments[i]);
      }
      if (class_segments.empty()) continue;
      const ClassSpectrum cs = mean_spectrum(class_segments, c, spec_cfg);
      const std::string name = "spectrum_class_" + std::to_string(c) + ".csv";
      write_class_spectrum_csv(cs, (out_dir / name).string());
      outputs.push_back(name);
    }
    write_run_manifest(config, serialize_config(config), mode, out_dir, outputs);
    return out_dir.string();
  }

  // feature table
  FrameMatrix table;
  if (featurize_kind == "c22") {
    table = featurize_c22(manifest, sample_rate, threads);
    write_embedding_file(table, (out_dir / "features.emb1").string());
    outputs.push_back("features.emb1");
  } else if (mode != "layer-sweep") {
    table = read_embedding_file(features_path);
    require(table.n_frames == manifest.size(),
            "feature table rows do not match manifest records");
  }

  const SplitAssignment assignment =
      split(manifest, ratios, derive_seed(seed, "split"),
            config.get_bool_or("stratified", false));

  GridSpec grid;
  {
    std::vector<long long> bs;
    for (int b : grid.batch_sizes) bs.push_back(b);
    bs = config.get_int_list_or("batch_sizes", bs);
    grid.batch_sizes.clear();
    for (long long b : bs) grid.batch_sizes.push_back(static_cast<int>(b));
    grid.learning_rates =
        config.get_double_list_or("learning_rates", grid.learning_rates);
  }
  const int epochs = static_cast<int>(config.get_int_or("epochs", 30));

  if (mode == "classify") {
    const SplitDatasets ds = make_datasets(table, labels, assignment);

    const int single_batch = static_cast<int>(config.get_int_or("batch_size", 0));
    const double single_lr = config.get_double_or("learning_rate", 0.0);
    if (single_batch > 0 || single_lr > 0.0) {
      require(single_batch > 0 && single_lr > 0.0,
              "config: single-run training needs both batch_size and learning_rate");
      grid.batch_sizes = {single_batch};
      grid.learning_rates = {single_lr};
    }

    const GridSearchOutcome outcome = grid_search(
        ds.train, ds.val, ds.test, n_classes, grid, epochs, seed, threads);

    write_grid_results_csv(outcome.table, (out_dir / "results.csv").string());
    outputs.push_back("results.csv");
    save_model(outcome.best_run.best_model, (out_dir / "model.mlp1").string());
    outputs.push_back("model.mlp1");

    {
      std::ofstream hist(out_dir / "history.csv", std::ios::binary);
      hist << "epoch,train_loss,val_uar,lr\n";
      for (const auto& e : outcome.best_run.history) {
        hist << e.epoch << ',' << format_double(e.train_loss) << ','
             << format_double(e.val_uar) << ',' << format_double(e.lr) << '\n';
      }
      outputs.push_back("history.csv");
    }

    write_confusion_csv(outcome.test_report, (out_dir / "confusion.csv").string());
    outputs.push_back("confusion.csv");

    {
      std::ofstream rep(out_dir / "report.txt", std::ios::binary);
      rep << "task = " << task_name(task) << '\n';
      rep << "n_classes = " << n_classes << '\n';
      rep << "n_train = " << ds.train.labels.size() << '\n';
      rep << "n_val = " << ds.val.labels.size() << '\n';
      rep << "n_test = " << ds.test.labels.size() << '\n';
      rep << "best_batch_size = " << outcome.table[outcome.best_index].batch_size << '\n';
      rep << "best_learning_rate = "
          << format_double(outcome.table[outcome.best_index].learning_rate) << '\n';
      rep << "best_val_uar = " << format_double(outcome.best_run.best_val_uar) << '\n';
      rep << "best_epoch = " << outcome.best_run.best_epoch << '\n';
      rep << "test_uar = " << format_double(outcome.test_report.uar) << '\n';
      outputs.push_back("report.txt");
    }
  } else if (mode == "similarity") {
    const std::string sim_split = config.get_string_or("sim_split", "train");
    std::vector<std::size_t> indices;
    if (sim_split == "train") {
      indices = assignment.train;
    } else if (sim_split == "all") {
      indices.resize(manifest.size());
      for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    } else {
      throw InvalidArgument("config: sim_split must be train or all");
    }

    const std::vector<FeatureVector> all_vecs =
        similarity_features(table, config.get_string_or("mean_half", "auto"));
    std::vector<FeatureVector> vecs;
    std::vector<int> vec_labels;
    vecs.reserve(indices.size());
    for (std::size_t i : indices) {
      vecs.push_back(all_vecs[i]);
      vec_labels.push_back(labels[i]);
    }

    const ClassDistanceMatrix matrix = class_distance_matrix(vecs, vec_labels);
    write_distance_matrix_csv(matrix, (out_dir / "distance_matrix.csv").string());
    outputs.push_back("distance_matrix.csv");

    const auto max_pairs = config.get_u64_or("max_pairs", 1000000);
    const DistanceDistribution dist = distance_distribution(
        vecs, vec_labels, max_pairs, derive_seed(seed, "pairs"));
    write_distance_distribution_csv(dist, table.source_tag,
                                    (out_dir / "distances.csv").string());
    outputs.push_back("distances.csv");

    {
      std::ofstream rep(out_dir / "report.txt", std::ios::binary);
      rep << "task = " << task_name(task) << '\n';
      rep << "scheme = " << table.source_tag << '\n';
      rep << "n_vectors = " << vecs.size() << '\n';
      rep << "total_pairs = " << dist.total_pairs << '\n';
      rep << "sampled_pairs = " << dist.distances.size() << '\n';
      rep << "median = " << format_double(dist.median) << '\n';
      rep << "q1 = " << format_double(dist.q1) << '\n';
      rep << "q3 = " << format_double(dist.q3) << '\n';
      outputs.push_back("report.txt");
    }
  } else if (mode == "layer-sweep") {
    std::map<int, FrameMatrix> layer_tables;
    for (const auto& entry : fs::directory_iterator(layers_dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("layer_", 0) != 0 || entry.path().extension() != ".emb1") continue;
      const std::string digits = entry.path().stem().string().substr(6);
      const int layer = static_cast<int>(parse_int(digits, "layer file " + name));
      layer_tables.emplace(layer, read_embedding_file(entry.path().string()));
    }
    require(!layer_tables.empty(),
            "layer-sweep: no layer_<k>.emb1 tables in " + layers_dir);

    const LayerSweepResult result = layer_sweep(layer_tables, labels, assignment,
                                                n_classes, grid, epochs, seed, threads);
    write_layer_sweep_csv(result, (out_dir / "layer_sweep.csv").string());
    outputs.push_back("layer_sweep.csv");

    {
      std::ofstream rep(out_dir / "report.txt", std::ios::binary);
      rep << "task = " << task_name(task) << '\n';
      rep << "n_layers = " << result.entries.size() << '\n';
      rep << "best_layer = " << result.best_layer << '\n';
      rep << "degenerate_normalization = "
          << (result.degenerate_normalization ? "true" : "false") << '\n';
      outputs.push_back("report.txt");
    }
  } else {
    throw InvalidArgument("config: unknown mode '" + mode + "'");
  }

  write_run_manifest(config, serialize_config(config), mode, out_dir, outputs);
  return out_dir.string();
}

std::string run_pipeline_file(const std::string& config_path) {
  return run_pipeline(KeyValueConfig::parse_file(config_path));
}

}  // namespace mvox
