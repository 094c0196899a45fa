// core/src/corpus.cpp

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

#include "mvox/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"
#include "mvox/rng.hpp"
#include "mvox/wav.hpp"

namespace mvox {

namespace {

constexpr const char* kManifestHeader = "id,wav_path,start_s,end_s,call_type,caller";

}  // namespace

LabelVocabulary marmoset_vocabulary() {
  LabelVocabulary v;
  v.call_type_names = {"Peep (pre-phee)", "Phee",       "Twitter",  "Trill",
                       "Trillphee",       "Tsik Tse",   "Egg",      "Pheecry (cry)",
                       "TrllTwitter",     "Pheetwitter", "Peep"};
  v.n_callers = 10;
  return v;
}

LabelVocabulary generic_vocabulary(int n_classes) {
  require(n_classes >= 1, "generic_vocabulary: need at least one class");
  LabelVocabulary v;
  v.call_type_names.reserve(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) {
    v.call_type_names.push_back("class_" + std::to_string(c));
  }
  v.n_callers = n_classes;
  return v;
}

void Manifest::add(SegmentRecord record) {
  require(record.start_s >= 0.0, "segment '" + record.id + "': start_s must be >= 0");
  require(record.end_s > record.start_s,
          "segment '" + record.id + "': end_s must exceed start_s");
  if (record.call_type < 0 || record.call_type >= vocab_.n_call_types()) {
    throw InvalidArgument("segment '" + record.id + "': call_type " +
                          std::to_string(record.call_type) + " out of range [0, " +
                          std::to_string(vocab_.n_call_types() - 1) + "]");
  }
  if (record.caller < 0 || record.caller >= vocab_.n_callers) {
    throw InvalidArgument("segment '" + record.id + "': caller " +
                          std::to_string(record.caller) + " out of range [0, " +
                          std::to_string(vocab_.n_callers - 1) + "]");
  }
  if (!ids_.insert(record.id).second) {
    throw InvalidArgument("duplicate segment id '" + record.id + "'");
  }
  records_.push_back(std::move(record));
}

std::size_t Manifest::tally_call_type(int call_type) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [&](const SegmentRecord& r) { return r.call_type == call_type; }));
}

std::size_t Manifest::tally_caller(int caller) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [&](const SegmentRecord& r) { return r.caller == caller; }));
}

Manifest load_manifest(const std::string& path, LabelVocabulary vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + path);

  Manifest manifest(std::move(vocab));
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(path + ": empty file, expected header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader) {
    throw ParseError(path + ":1: bad header, expected '" +
                     std::string(kManifestHeader) + "'");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    const std::string ctx = path + ":" + std::to_string(line_no);
    if (fields.size() != 6) {
      throw ParseError(ctx + ": expected 6 fields, found " +
                       std::to_string(fields.size()));
    }
    SegmentRecord r;
    r.id = fields[0];
    r.wav_path = fields[1];
    r.start_s = parse_double(fields[2], ctx);
    r.end_s = parse_double(fields[3], ctx);
    r.call_type = static_cast<int>(parse_int(fields[4], ctx));
    r.caller = static_cast<int>(parse_int(fields[5], ctx));
    try {
      manifest.add(std::move(r));
    } catch (const Error& e) {
      throw ParseError(ctx + ": " + e.what());
    }
  }
  return manifest;
}

void save_manifest(const Manifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kManifestHeader << '\n';
  for (const auto& r : manifest.records()) {
    out << r.id << ',' << r.wav_path << ',' << format_double(r.start_s) << ','
        << format_double(r.end_s) << ',' << r.call_type << ',' << r.caller << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

// Applies the floor/floor/remainder rule to one index pool, consuming them
// in permuted order.
// floor of ratio*n in real arithmetic; the nudge keeps products like
// 0.7*90 (which lands just under 63 in binary) on the intended side
std::size_t floor_share(double ratio, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(n) + 1e-9));
}

void cut_pool(std::vector<std::size_t>& pool, SplitRatios ratios, Rng& rng,
              SplitAssignment& out) {
  rng.shuffle(pool);
  const auto n = pool.size();
  const std::size_t n_train = floor_share(ratios.train, n);
  const std::size_t n_val = floor_share(ratios.val, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n_train) {
      out.train.push_back(pool[i]);
    } else if (i < n_train + n_val) {
      out.val.push_back(pool[i]);
    } else {
      out.test.push_back(pool[i]);
    }
  }
}

}  // namespace

SplitAssignment split(const Manifest& manifest, SplitRatios ratios, std::uint64_t seed,
                      bool stratified) {
  require(manifest.size() > 0, "split: manifest is empty");
  const double sum = ratios.train + ratios.val + ratios.test;
  require(std::abs(sum - 1.0) <= 1e-9, "split: ratios must sum to 1");
  require(ratios.train >= 0.0 && ratios.val >= 0.0 && ratios.test >= 0.0,
          "split: ratios must be nonnegative");

  SplitAssignment out;
  out.seed = seed;
  out.ratios = ratios;
  Rng rng(seed);

  if (!stratified) {
    std::vector<std::size_t> pool(manifest.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    cut_pool(pool, ratios, rng, out);
  } else {
    const int n_classes = manifest.vocab().n_call_types();
    for (int c = 0; c < n_classes; ++c) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (manifest.records()[i].call_type == c) pool.push_back(i);
      }
      if (!pool.empty()) cut_pool(pool, ratios, rng, out);
    }
  }

  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

void FixtureSpec::validate() const {
  require(n_classes >= 2, "FixtureSpec: need at least two classes");
  require(n_per_class >= 1, "FixtureSpec: need at least one record per class");
  require(feature_dim >= 1, "FixtureSpec: feature_dim must be >= 1");
  require(cluster_separation >= 0.0, "FixtureSpec: separation must be nonnegative");
}

Fixture synth_fixture(const FixtureSpec& spec) {
  spec.validate();
  const std::size_t n =
      static_cast<std::size_t>(spec.n_classes) * static_cast<std::size_t>(spec.n_per_class);

  Fixture fx;
  fx.features.n_frames = n;
  fx.features.frame_dim = static_cast<std::size_t>(spec.feature_dim);
  fx.features.source_tag = "fixture";
  fx.features.data.resize(n * fx.features.frame_dim);
  fx.labels.resize(n);
  fx.manifest = Manifest(generic_vocabulary(spec.n_classes));

  Rng rng(spec.seed);
  for (std::size_t r = 0; r < n; ++r) {
    const int cls = static_cast<int>(r / static_cast<std::size_t>(spec.n_per_class));
    const std::size_t axis =
        static_cast<std::size_t>(cls) % fx.features.frame_dim;
    fx.labels[r] = cls;
    for (std::size_t d = 0; d < fx.features.frame_dim; ++d) {
      double v = rng.gaussian();
      if (d == axis) v += spec.cluster_separation;
      fx.features.at(r, d) = static_cast<float>(v);
    }

    SegmentRecord rec;
    rec.id = "fx" + std::to_string(r);
    rec.wav_path = rec.id + ".wav";
    rec.start_s = 0.0;
    rec.end_s = 1.0;
    rec.call_type = cls;
    rec.caller = cls;
    fx.manifest.add(std::move(rec));
  }
  return fx;
}

Manifest synth_audio_fixture(const AudioFixtureSpec& spec, const std::string& out_dir) {
  require(spec.n_classes >= 2, "AudioFixtureSpec: need at least two classes");
  require(spec.n_per_class >= 1, "AudioFixtureSpec: need records per class");
  require(spec.sample_rate > 0.0 && spec.duration_s > 0.0,
          "AudioFixtureSpec: rate and duration must be positive");
  const double top_hz =
      spec.band_lo_hz + spec.band_step_hz * (spec.n_classes - 1);
  require(top_hz < spec.sample_rate / 2.0,
          "AudioFixtureSpec: class band exceeds Nyquist");

  std::filesystem::create_directories(out_dir);
  Manifest manifest(generic_vocabulary(spec.n_classes));
  Rng rng(spec.seed);

  const auto n_samples =
      static_cast<std::size_t>(std::llround(spec.sample_rate * spec.duration_s));
  const double two_pi = 2.0 * 3.141592653589793;

  int idx = 0;
  for (int c = 0; c < spec.n_classes; ++c) {
    const double tone_hz = spec.band_lo_hz + spec.band_step_hz * c;
    for (int k = 0; k < spec.n_per_class; ++k, ++idx) {
      const double phase1 = rng.uniform(0.0, two_pi);
      const double phase2 = rng.uniform(0.0, two_pi);

      AudioBuffer audio;
      audio.sample_rate = spec.sample_rate;
      audio.samples.resize(n_samples);
      for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / spec.sample_rate;
        audio.samples[i] = 0.3 * std::sin(two_pi * spec.common_tone_hz * t + phase1) +
                           0.3 * std::sin(two_pi * tone_hz * t + phase2) +
                           spec.noise_level * rng.gaussian();
      }

      SegmentRecord rec;
      rec.id = "afx" + std::to_string(idx);
      rec.wav_path = (std::filesystem::path(out_dir) / (rec.id + ".wav")).string();
      rec.start_s = 0.0;
      rec.end_s = spec.duration_s;
      rec.call_type = c;
      rec.caller = c;
      write_wav(rec.wav_path, audio);
      manifest.add(std::move(rec));
    }
  }
  return manifest;
}

}  // namespace mvox
