// tools/mvox_main.cpp

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

// Command-line front end: manifest/WAV ingestion, feature tables, similarity
// analysis, classifier training, grid search, layer sweeps and synthetic
// fixtures, all driven by flags or a key/value config file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mvox/config.hpp"
#include "mvox/corpus.hpp"
#include "mvox/csv.hpp"
#include "mvox/dsp.hpp"
#include "mvox/embeddings.hpp"
#include "mvox/harness.hpp"
#include "mvox/version.hpp"
#include "mvox/wav.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  int threads = 1;
};

// Flags override config-file keys of the same meaning.
mvox::KeyValueConfig base_config(const GlobalOpts& g) {
  mvox::KeyValueConfig cfg;
  if (!g.config_path.empty()) cfg = mvox::KeyValueConfig::parse_file(g.config_path);
  if (g.seed_set) cfg.set("seed", std::to_string(g.seed));
  if (!g.out.empty()) cfg.set("out", g.out);
  if (g.threads != 1 || !cfg.has("threads")) cfg.set("threads", std::to_string(g.threads));
  return cfg;
}

void add_global_opts(CLI::App* app, GlobalOpts& g) {
  app->add_option("--config", g.config_path, "key/value config file");
  app->add_option("--seed", g.seed, "experiment seed")->each([&](const std::string&) {
    g.seed_set = true;
  });
  app->add_option("--out", g.out, "output directory");
  app->add_option("--threads", g.threads, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"marmoset vocalization analysis toolkit"};
  app.set_version_flag("--version", mvox::kVersion);
  app.require_subcommand(1);

  GlobalOpts g;

  // featurize: manifest WAVs -> c22_24 feature table
  auto* cmd_featurize = app.add_subcommand("featurize", "compute feature table from WAVs");
  add_global_opts(cmd_featurize, g);
  std::string manifest_path, table_path;
  double sample_rate = 0.0;
  cmd_featurize->add_option("--manifest", manifest_path, "manifest CSV")->required();
  cmd_featurize->add_option("--table", table_path, "output feature table (EMB1)")
      ->required();
  cmd_featurize->add_option("--sample-rate", sample_rate,
                            "resample target in Hz (0 keeps native)");

  // import-embeddings: per-utterance EMB1 frame files -> aggregated table
  auto* cmd_import =
      app.add_subcommand("import-embeddings", "aggregate frame-level EMB1 files");
  add_global_opts(cmd_import, g);
  std::string emb_dir;
  cmd_import->add_option("--manifest", manifest_path, "manifest CSV")->required();
  cmd_import->add_option("--emb-dir", emb_dir, "directory with <id>.emb1 files")
      ->required();
  cmd_import->add_option("--table", table_path, "output feature table (EMB1)")
      ->required();

  // pipeline-backed subcommands
  auto* cmd_similarity =
      app.add_subcommand("similarity", "class distance matrix and distance distribution");
  auto* cmd_train = app.add_subcommand("train", "train one classifier configuration");
  auto* cmd_grid = app.add_subcommand("grid-search", "hyperparameter grid search");
  auto* cmd_sweep = app.add_subcommand("layer-sweep", "per-layer grid-searched UAR");
  auto* cmd_spectra = app.add_subcommand("spectra", "per-class mean spectra CSVs");
  std::string features_path, task = "ctid", layers_dir, classes = "auto";
  int batch_size = 0, epochs = 30;
  double learning_rate = 0.0;
  for (CLI::App* c : {cmd_similarity, cmd_train, cmd_grid, cmd_sweep, cmd_spectra}) {
    add_global_opts(c, g);
    c->add_option("--manifest", manifest_path, "manifest CSV");
    c->add_option("--task", task, "ctid or clid");
    c->add_option("--classes", classes, "auto or explicit class count");
  }
  for (CLI::App* c : {cmd_similarity, cmd_train, cmd_grid}) {
    c->add_option("--features", features_path, "feature table (EMB1)");
  }
  cmd_train->add_option("--batch-size", batch_size, "batch size");
  cmd_train->add_option("--lr", learning_rate, "learning rate");
  for (CLI::App* c : {cmd_train, cmd_grid, cmd_sweep}) {
    c->add_option("--epochs", epochs, "training epochs");
  }
  cmd_sweep->add_option("--layers-dir", layers_dir, "directory with layer_<k>.emb1");
  cmd_spectra->add_option("--sample-rate", sample_rate,
                          "resample target in Hz (0 keeps native)");

  // fixture: synthetic corpora
  auto* cmd_fixture = app.add_subcommand("fixture", "generate a synthetic corpus");
  add_global_opts(cmd_fixture, g);
  int fx_classes = 3, fx_per_class = 100, fx_dim = 24;
  double fx_separation = 10.0;
  bool fx_audio = false;
  double fx_rate = 32000.0, fx_duration = 0.5, fx_band_lo = 5000.0, fx_band_step = 800.0;
  cmd_fixture->add_option("--classes", fx_classes, "number of classes");
  cmd_fixture->add_option("--per-class", fx_per_class, "records per class");
  cmd_fixture->add_option("--dim", fx_dim, "feature dimension");
  cmd_fixture->add_option("--separation", fx_separation, "cluster separation");
  cmd_fixture->add_flag("--audio", fx_audio, "write WAV fixtures instead of features");
  cmd_fixture->add_option("--rate", fx_rate, "audio fixture sample rate");
  cmd_fixture->add_option("--duration", fx_duration, "audio fixture seconds per segment");
  cmd_fixture->add_option("--band-lo", fx_band_lo, "first class tone frequency");
  cmd_fixture->add_option("--band-step", fx_band_step, "tone frequency step per class");

  // report: print a run directory's report
  auto* cmd_report = app.add_subcommand("report", "print a run's report");
  std::string run_dir;
  cmd_report->add_option("--run", run_dir, "run output directory")->required();

  // run: full configured pipeline
  auto* cmd_run = app.add_subcommand("run", "execute a configured pipeline");
  add_global_opts(cmd_run, g);

  CLI11_PARSE(app, argc, argv);

  try {
    auto pipeline = [&](const std::string& mode) {
      mvox::KeyValueConfig cfg = base_config(g);
      cfg.set("mode", mode);
      if (!manifest_path.empty()) cfg.set("manifest", manifest_path);
      if (!features_path.empty()) cfg.set("features", features_path);
      if (!layers_dir.empty()) cfg.set("layers_dir", layers_dir);
      if (cmd_train->parsed() && batch_size > 0)
        cfg.set("batch_size", std::to_string(batch_size));
      if (cmd_train->parsed() && learning_rate > 0.0)
        cfg.set("learning_rate", mvox::format_double(learning_rate));
      if (task != "ctid" || !cfg.has("task")) cfg.set("task", task);
      if (classes != "auto" || !cfg.has("classes")) cfg.set("classes", classes);
      if (sample_rate > 0.0) cfg.set("sample_rate", mvox::format_double(sample_rate));
      if (epochs != 30 || !cfg.has("epochs")) cfg.set("epochs", std::to_string(epochs));
      const std::string dir = mvox::run_pipeline(cfg);
      std::cout << "run complete: " << dir << "\n";
    };

    if (cmd_featurize->parsed()) {
      const mvox::KeyValueConfig cfg = base_config(g);
      const auto manifest = mvox::load_manifest(manifest_path);
      const auto table = mvox::featurize_c22(
          manifest, sample_rate, static_cast<int>(cfg.get_int_or("threads", 1)));
      mvox::write_embedding_file(table, table_path);
      std::cout << "wrote " << table.n_frames << " x " << table.frame_dim
                << " feature table: " << table_path << "\n";
    } else if (cmd_import->parsed()) {
      const mvox::KeyValueConfig cfg = base_config(g);
      const auto manifest = mvox::load_manifest(manifest_path);
      const auto table = mvox::import_embeddings(
          manifest, emb_dir, static_cast<int>(cfg.get_int_or("threads", 1)));
      mvox::write_embedding_file(table, table_path);
      std::cout << "wrote " << table.n_frames << " x " << table.frame_dim
                << " feature table: " << table_path << "\n";
    } else if (cmd_similarity->parsed()) {
      pipeline("similarity");
    } else if (cmd_train->parsed()) {
      pipeline("classify");
    } else if (cmd_grid->parsed()) {
      pipeline("classify");
    } else if (cmd_sweep->parsed()) {
      pipeline("layer-sweep");
    } else if (cmd_spectra->parsed()) {
      pipeline("spectra");
    } else if (cmd_fixture->parsed()) {
      const mvox::KeyValueConfig cfg = base_config(g);
      const std::string out = cfg.get_string("out");
      fs::create_directories(out);
      if (fx_audio) {
        mvox::AudioFixtureSpec spec;
        spec.n_classes = fx_classes;
        spec.n_per_class = fx_per_class;
        spec.sample_rate = fx_rate;
        spec.duration_s = fx_duration;
        spec.band_lo_hz = fx_band_lo;
        spec.band_step_hz = fx_band_step;
        spec.seed = cfg.get_u64_or("seed", 0);
        const auto manifest =
            mvox::synth_audio_fixture(spec, (fs::path(out) / "wav").string());
        mvox::save_manifest(manifest, (fs::path(out) / "manifest.csv").string());
        std::cout << "wrote audio fixture (" << manifest.size() << " segments): " << out
                  << "\n";
      } else {
        mvox::FixtureSpec spec;
        spec.n_classes = fx_classes;
        spec.n_per_class = fx_per_class;
        spec.feature_dim = fx_dim;
        spec.cluster_separation = fx_separation;
        spec.seed = cfg.get_u64_or("seed", 0);
        const auto fixture = mvox::synth_fixture(spec);
        mvox::save_manifest(fixture.manifest, (fs::path(out) / "manifest.csv").string());
        mvox::write_embedding_file(fixture.features,
                                   (fs::path(out) / "features.emb1").string());
        std::cout << "wrote fixture (" << fixture.manifest.size() << " records): " << out
                  << "\n";
      }
    } else if (cmd_report->parsed()) {
      const fs::path report = fs::path(run_dir) / "report.txt";
      if (!fs::exists(report)) {
        throw mvox::IoError("no report.txt in " + run_dir);
      }
      std::ifstream in(report);
      std::cout << in.rdbuf();
      const fs::path results = fs::path(run_dir) / "results.csv";
      if (fs::exists(results)) {
        std::cout << "\n[grid results]\n";
        std::ifstream rin(results);
        std::cout << rin.rdbuf();
      }
    } else if (cmd_run->parsed()) {
      mvox::KeyValueConfig cfg = base_config(g);
      const std::string dir = mvox::run_pipeline(cfg);
      std::cout << "run complete: " << dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
