// core/include/mvox/corpus.hpp

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

#ifndef MVOX_CORPUS_HPP
#define MVOX_CORPUS_HPP

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "mvox/embeddings.hpp"

namespace mvox {

// One labeled vocalization segment.
struct SegmentRecord {
  std::string id;
  std::string wav_path;
  double start_s = 0.0;
  double end_s = 0.0;
  int call_type = 0;
  int caller = 0;
};

// Label vocabulary for a manifest. The default targets the marmoset corpus
// this toolkit was built around: 11 call types, 10 callers.
struct LabelVocabulary {
  std::vector<std::string> call_type_names;
  int n_callers = 10;

  int n_call_types() const { return static_cast<int>(call_type_names.size()); }
};

LabelVocabulary marmoset_vocabulary();

// Generic vocabulary for synthetic corpora: class labels mirror callers.
LabelVocabulary generic_vocabulary(int n_classes);

class Manifest {
 public:
  Manifest() : vocab_(marmoset_vocabulary()) {}
  explicit Manifest(LabelVocabulary vocab) : vocab_(std::move(vocab)) {}

  // Validates bounds and id uniqueness.
  void add(SegmentRecord record);

  const std::vector<SegmentRecord>& records() const { return records_; }
  const LabelVocabulary& vocab() const { return vocab_; }
  std::size_t size() const { return records_.size(); }

  std::size_t tally_call_type(int call_type) const;
  std::size_t tally_caller(int caller) const;

 private:
  LabelVocabulary vocab_;
  std::vector<SegmentRecord> records_;
  std::unordered_set<std::string> ids_;
};

// CSV with header "id,wav_path,start_s,end_s,call_type,caller".
Manifest load_manifest(const std::string& path,
                       LabelVocabulary vocab = marmoset_vocabulary());
void save_manifest(const Manifest& manifest, const std::string& path);

struct SplitRatios {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;
};

// Disjoint index sets covering [0, N). Sizes follow floor/floor/remainder.
struct SplitAssignment {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
  SplitRatios ratios;
};

// Random split of record indices: a seed-keyed uniform permutation cut at
// floor(train*N) and floor(val*N). `stratified` applies the same rule per
// call-type class before merging (off by default).
SplitAssignment split(const Manifest& manifest, SplitRatios ratios,
                      std::uint64_t seed, bool stratified = false);

// Synthetic desk-scale stand-in corpus: per-class Gaussian clusters with
// the class mean offset along a distinct axis.
struct FixtureSpec {
  int n_classes = 3;
  int n_per_class = 100;
  int feature_dim = 24;
  double cluster_separation = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Fixture {
  FrameMatrix features;     // rows = records, aligned with manifest order
  std::vector<int> labels;  // == call_type == caller of each record
  Manifest manifest;
};

Fixture synth_fixture(const FixtureSpec& spec);

// Audio flavor of the fixture: each class carries a tone in its own band
// plus a common low tone and noise floor. Class bands start at
// band_lo_hz and advance by band_step_hz per class.
struct AudioFixtureSpec {
  int n_classes = 3;
  int n_per_class = 40;
  double sample_rate = 32000.0;
  double duration_s = 0.5;
  double band_lo_hz = 5000.0;
  double band_step_hz = 800.0;
  double common_tone_hz = 400.0;
  double noise_level = 0.05;
  std::uint64_t seed = 0;
};

// Writes one WAV per segment under out_dir and returns the manifest
// (wav_path entries are relative to out_dir's parent usage; they are the
// concrete written paths).
Manifest synth_audio_fixture(const AudioFixtureSpec& spec, const std::string& out_dir);

}  // namespace mvox

#endif  // MVOX_CORPUS_HPP
