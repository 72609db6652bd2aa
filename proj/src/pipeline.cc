// lmaug/pipeline.cc

// Copyright 2026  lmaug authors
//
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

#include "lmaug/pipeline.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lmaug/error.h"
#include "lmaug/rescore.h"

namespace lmaug {

namespace fs = std::filesystem;

Arm ParseArm(const std::string &name) {
  if (name == "baseline_decode") return Arm::kBaselineDecode;
  if (name == "owalm_decode") return Arm::kOwalmDecode;
  if (name == "full_aug_decode") return Arm::kFullAugDecode;
  if (name == "rescore_after_baseline") return Arm::kRescoreAfterBaseline;
  if (name == "rescore_after_owalm") return Arm::kRescoreAfterOwalm;
  throw std::invalid_argument("unknown arm '" + name + "'");
}

std::string ArmName(Arm arm) {
  switch (arm) {
    case Arm::kBaselineDecode: return "baseline_decode";
    case Arm::kOwalmDecode: return "owalm_decode";
    case Arm::kFullAugDecode: return "full_aug_decode";
    case Arm::kRescoreAfterBaseline: return "rescore_after_baseline";
    case Arm::kRescoreAfterOwalm: return "rescore_after_owalm";
  }
  return "unknown";
}

std::vector<Arm> AllArms() {
  return {Arm::kBaselineDecode, Arm::kOwalmDecode, Arm::kFullAugDecode,
          Arm::kRescoreAfterBaseline, Arm::kRescoreAfterOwalm};
}

ExperimentConfig ExperimentConfig::FromJson(const std::string &text,
                                            const std::string &base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("experiment config must be a JSON object");
  ExperimentConfig c;
  auto path = [&](const char *key, std::string *out) {
    if (!j.contains(key)) return;
    fs::path p = j.at(key).get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
    *out = p.string();
  };
  try {
    path("train", &c.train_path);
    path("larger", &c.larger_path);
    path("test", &c.test_path);
    path("output_dir", &c.output_dir);
    if (j.contains("synthetic"))
      c.synthetic = SyntheticSpec::FromJson(j.at("synthetic").dump());
    if (j.contains("order")) j.at("order").get_to(c.order);
    if (j.contains("beta_base")) j.at("beta_base").get_to(c.beta_base);
    if (j.contains("beta_larger")) j.at("beta_larger").get_to(c.beta_larger);
    if (j.contains("beta_oot")) j.at("beta_oot").get_to(c.beta_oot);
    if (j.contains("selections"))
      c.selections = j.at("selections").get<std::vector<std::string>>();
    if (j.contains("selection_fraction"))
      j.at("selection_fraction").get_to(c.selection_fraction);
    if (j.contains("selection_seed"))
      j.at("selection_seed").get_to(c.selection_seed);
    if (j.contains("entropy_joint"))
      j.at("entropy_joint").get_to(c.entropy_joint);
    if (j.contains("decode")) {
      const auto &d = j.at("decode");
      DecodeSimConfig &s = c.decode;
      if (d.contains("k_confusions")) d.at("k_confusions").get_to(s.k_confusions);
      if (d.contains("edit_threshold"))
        d.at("edit_threshold").get_to(s.edit_threshold);
      if (d.contains("acoustic_scale"))
        d.at("acoustic_scale").get_to(s.acoustic_scale);
      if (d.contains("allow_splits")) d.at("allow_splits").get_to(s.allow_splits);
      if (d.contains("split_cost")) d.at("split_cost").get_to(s.split_cost);
      if (d.contains("beam")) d.at("beam").get_to(s.beam);
      if (d.contains("seed")) d.at("seed").get_to(s.seed);
    }
    if (j.contains("am_scale")) j.at("am_scale").get_to(c.am_scale);
    if (j.contains("lm_scale")) j.at("lm_scale").get_to(c.lm_scale);
    if (j.contains("arms")) {
      c.arms.clear();
      for (const auto &a : j.at("arms")) c.arms.push_back(ParseArm(a));
    }
    if (j.contains("merge_agglutination"))
      j.at("merge_agglutination").get_to(c.merge_agglutination);
    if (j.contains("merge_reference"))
      j.at("merge_reference").get_to(c.merge_reference);
    if (j.contains("lexicon_extension"))
      j.at("lexicon_extension").get_to(c.lexicon_extension);
    if (j.contains("write_lattices"))
      j.at("write_lattices").get_to(c.write_lattices);
    if (j.contains("threads")) j.at("threads").get_to(c.threads);
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  if (c.arms.empty()) throw std::invalid_argument("no arms configured");
  if (c.selections.empty())
    throw std::invalid_argument("no selections configured");
  if (!c.synthetic &&
      (c.train_path.empty() || c.larger_path.empty() || c.test_path.empty()))
    throw std::invalid_argument(
        "config needs train, larger and test paths or a synthetic spec");
  for (const std::string *p : {&c.train_path, &c.larger_path, &c.test_path})
    if (!c.synthetic && !fs::exists(*p))
      throw std::invalid_argument("no such file: " + *p);
  return c;
}

const ArmResult *ExperimentResult::Find(const std::string &selection,
                                        Arm arm) const {
  for (const ArmResult &r : arms)
    if (r.selection == selection && r.arm == arm && r.error.empty()) return &r;
  return nullptr;
}

namespace {

// Applies fn(i) for i in [0, n) on up to `threads` workers.  Results must be
// written to per-index slots by fn, so output order never depends on timing.
template <class Fn>
void ParallelFor(std::size_t n, int threads, Fn fn) {
  std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread &t : pool) t.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

Vocabulary ModelVocabulary(const BackoffModel &lm) {
  Vocabulary v;
  for (const std::string &w : lm.PredictedWords())
    if (w != kEos && w != kUnk) v.Add(w);
  return v;
}

struct Lms {
  const BackoffModel *decode = nullptr;
  const BackoffModel *rescore = nullptr;  // null: no rescoring
};

struct Decoded {
  std::vector<Lattice> lattices;
  Corpus hyps;
};

Decoded DecodeAll(const Corpus &test, const BackoffModel &decode_lm,
                  const BackoffModel *rescore_lm,
                  const std::vector<std::string> &extra_lexicon,
                  const ExperimentConfig &cfg) {
  DecodeSimulator sim(decode_lm, cfg.decode, extra_lexicon);
  Decoded out;
  out.lattices.resize(test.size());
  out.hyps.resize(test.size());
  ParallelFor(test.size(), cfg.threads, [&](std::size_t u) {
    Lattice lat = sim.Decode(test[u], "utt" + std::to_string(u));
    if (rescore_lm != nullptr) lat = Rescore(lat, *rescore_lm);
    out.hyps[u] = BestPath(lat, cfg.am_scale, cfg.lm_scale).words;
    out.lattices[u] = std::move(lat);
  });
  return out;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig &cfg,
                               const Corpus &train, const Corpus &larger,
                               const Corpus &test) {
  ExperimentResult result;
  if (train.empty() || test.empty())
    throw std::invalid_argument("training and test corpora must be nonempty");

  const Vocabulary train_vocab = BuildVocabulary(train);
  const Vocabulary larger_vocab = BuildVocabulary(larger);
  std::size_t test_tokens = 0, test_oov = 0;
  for (const Sentence &s : test)
    for (const std::string &w : s) {
      ++test_tokens;
      if (!train_vocab.Contains(w)) ++test_oov;
    }
  result.test_oov_rate =
      test_tokens ? static_cast<double>(test_oov) / test_tokens : 0.0;

  MixtureComponent base =
      MakeComponent("train", train, cfg.order, cfg.beta_base);
  OotReport oot = ComputeOot(train_vocab, larger);
  result.oot_words = oot.oot_words.size();
  MergedModel owalm = BuildOwalm(base, oot, cfg.beta_oot);
  result.models["baseline"] = ComputeModelStats(base.model);
  result.models["owalm"] = ComputeModelStats(owalm.model);

  const std::vector<std::string> extension = larger_vocab.Words();
  const EvalOptions eval_base{cfg.merge_agglutination, cfg.merge_reference,
                              nullptr};

  // Decodes that do not depend on the augmentation corpus are shared by all
  // selections.
  std::optional<Decoded> base_decoded, owalm_decoded;
  std::optional<Decoded> base_decoded_ext, owalm_decoded_ext;
  auto decode_cached = [&](std::optional<Decoded> *slot,
                           const BackoffModel &lm, bool extended) {
    if (!*slot)
      *slot = DecodeAll(test, lm, nullptr,
                        extended ? extension : std::vector<std::string>(), cfg);
    return &**slot;
  };

  for (const std::string &selection : cfg.selections) {
    // Augmentation corpus for this selection.
    std::optional<MergedModel> full;
    std::string full_error;
    try {
      Corpus aug;
      if (selection == "none") {
        aug = larger;
      } else {
        if (larger.empty())
          throw std::invalid_argument("selection needs a larger corpus");
        SelectionConfig sc;
        sc.method = ParseSelectionMethod(selection);
        sc.fraction = cfg.selection_fraction;
        sc.seed = cfg.selection_seed;
        sc.entropy_joint = cfg.entropy_joint;
        SelectionInputs in;
        MixtureComponent wiki =
            MakeComponent("larger", larger, 3, cfg.beta_larger);
        MixtureComponent base3 =
            MakeComponent("train", train, 3, cfg.beta_base);
        std::vector<MixtureComponent> comps = {base3, wiki};
        MergedModel d = CountMerge(comps, 3);
        NGramCountTable augmented = base3.counts;
        augmented.Merge(wiki.counts);
        DeltaLikelihoodScorer delta(larger, base3.counts, augmented);
        in.in_domain = &d.model;
        in.general = &wiki.model;
        in.target = &base3.model;
        in.delta = &delta;
        for (const ScoredSentence &s : SelectSentences(larger, sc, in))
          aug.push_back(s.sentence);
      }
      std::vector<MixtureComponent> comps = {
          base, MakeComponent("larger", aug, cfg.order, cfg.beta_larger)};
      full = CountMerge(comps, cfg.order);
      result.models["full_aug:" + selection] = ComputeModelStats(full->model);
    } catch (const std::exception &e) {
      full_error = e.what();
    }

    for (Arm arm : cfg.arms) {
      ArmResult r;
      r.selection = selection;
      r.arm = arm;
      try {
        bool needs_full = arm == Arm::kFullAugDecode ||
                          arm == Arm::kRescoreAfterBaseline ||
                          arm == Arm::kRescoreAfterOwalm;
        if (needs_full && !full)
          throw Error("building the augmented LM failed: " + full_error);
        const BackoffModel *decode_lm = nullptr;
        const BackoffModel *final_lm = nullptr;
        switch (arm) {
          case Arm::kBaselineDecode:
            decode_lm = final_lm = &base.model;
            break;
          case Arm::kOwalmDecode:
            decode_lm = final_lm = &owalm.model;
            break;
          case Arm::kFullAugDecode:
            decode_lm = final_lm = &full->model;
            break;
          case Arm::kRescoreAfterBaseline:
            decode_lm = &base.model;
            final_lm = &full->model;
            break;
          case Arm::kRescoreAfterOwalm:
            decode_lm = &owalm.model;
            final_lm = &full->model;
            break;
        }
        r.decode_lm_entries = decode_lm->NumEntries();
        r.final_lm_entries = final_lm->NumEntries();
        const Vocabulary merge_vocab = ModelVocabulary(*final_lm);
        EvalOptions opts = eval_base;
        opts.merge_vocab = &merge_vocab;

        auto run = [&](bool extended) {
          Decoded d;
          if (arm == Arm::kBaselineDecode || arm == Arm::kOwalmDecode) {
            std::optional<Decoded> *slot =
                arm == Arm::kBaselineDecode
                    ? (extended ? &base_decoded_ext : &base_decoded)
                    : (extended ? &owalm_decoded_ext : &owalm_decoded);
            d = *decode_cached(slot, *decode_lm, extended);
          } else {
            d = DecodeAll(test, *decode_lm,
                          final_lm == decode_lm ? nullptr : final_lm,
                          extended ? extension : std::vector<std::string>(),
                          cfg);
          }
          return d;
        };
        Decoded d = run(false);
        r.report = Evaluate(test, d.hyps, train_vocab, opts);
        if (cfg.write_lattices) r.lattices = std::move(d.lattices);
        if (cfg.lexicon_extension) {
          Decoded e = run(true);
          Vocabulary ext_vocab = merge_vocab;
          for (const std::string &w : extension) ext_vocab.Add(w);
          EvalOptions ext_opts = opts;
          ext_opts.merge_vocab = &ext_vocab;
          r.wer_lexicon_extended =
              Evaluate(test, e.hyps, train_vocab, ext_opts).wer;
        }
      } catch (const std::exception &e) {
        r.error = e.what();
      }
      result.arms.push_back(std::move(r));
    }
  }
  return result;
}

ExperimentResult RunExperiment(const ExperimentConfig &cfg) {
  Corpus train, larger, test;
  if (cfg.synthetic) {
    SyntheticData data = GenerateSynthetic(*cfg.synthetic);
    train = std::move(data.train);
    larger = std::move(data.larger);
    test = std::move(data.test);
  } else {
    train = ReadCorpusFile(cfg.train_path);
    larger = ReadCorpusFile(cfg.larger_path);
    test = ReadCorpusFile(cfg.test_path);
  }
  ExperimentResult result = RunExperiment(cfg, train, larger, test);
  if (!cfg.output_dir.empty()) {
    WriteReports(result, cfg, cfg.output_dir);
    if (cfg.synthetic) {
      WriteCorpusFile((fs::path(cfg.output_dir) / "train.txt").string(), train);
      WriteCorpusFile((fs::path(cfg.output_dir) / "larger.txt").string(),
                      larger);
      WriteCorpusFile((fs::path(cfg.output_dir) / "test.txt").string(), test);
    }
  }
  return result;
}

namespace {

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string ReportCsv(const ExperimentResult &result) {
  std::ostringstream os;
  os << "selection,arm,status,wer,oov_recognized,iv_recognized,"
        "wer_lexicon_extended,S,D,I,N,oov_total,oov_correct,iv_total,"
        "iv_correct,decode_lm_entries,final_lm_entries\n";
  for (const ArmResult &r : result.arms) {
    os << r.selection << ',' << ArmName(r.arm) << ',';
    if (!r.error.empty()) {
      os << "error,,,,,,,,,,,,,,\n";
      continue;
    }
    const EvalCounts &c = r.report.counts;
    os << "ok," << Fixed(r.report.wer) << ',' << Fixed(r.report.oov_recognized)
       << ',' << Fixed(r.report.iv_recognized) << ','
       << (r.wer_lexicon_extended ? Fixed(*r.wer_lexicon_extended) : "") << ','
       << c.substitutions << ',' << c.deletions << ',' << c.insertions << ','
       << c.ref_tokens << ',' << c.oov_total << ',' << c.oov_correct << ','
       << c.iv_total << ',' << c.iv_correct << ',' << r.decode_lm_entries
       << ',' << r.final_lm_entries << '\n';
  }
  return os.str();
}

std::string ReportJson(const ExperimentResult &result) {
  nlohmann::ordered_json j;
  j["test_oov_rate"] = result.test_oov_rate;
  j["oot_words"] = result.oot_words;
  nlohmann::ordered_json models = nlohmann::ordered_json::object();
  for (const auto &[name, stats] : result.models)
    models[name] = nlohmann::ordered_json::parse(ModelStatsJson(stats));
  j["models"] = models;
  nlohmann::ordered_json arms = nlohmann::ordered_json::array();
  for (const ArmResult &r : result.arms) {
    nlohmann::ordered_json a;
    a["selection"] = r.selection;
    a["arm"] = ArmName(r.arm);
    if (!r.error.empty()) {
      a["error"] = r.error;
    } else {
      a["report"] = nlohmann::ordered_json::parse(EvalReportJson(r.report));
      if (r.wer_lexicon_extended)
        a["wer_lexicon_extended"] = *r.wer_lexicon_extended;
      a["decode_lm_entries"] = r.decode_lm_entries;
      a["final_lm_entries"] = r.final_lm_entries;
    }
    arms.push_back(a);
  }
  j["arms"] = arms;
  return j.dump(2);
}

void WriteReports(const ExperimentResult &result, const ExperimentConfig &cfg,
                  const std::string &dir) {
  fs::create_directories(dir);
  auto write = [&](const std::string &name, const std::string &text) {
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw Error("cannot write " + (fs::path(dir) / name).string());
    os << text;
  };
  write("report.csv", ReportCsv(result));
  write("report.json", ReportJson(result) + "\n");
  for (const ArmResult &r : result.arms) {
    if (!r.error.empty()) continue;
    std::string stem = r.selection + "." + ArmName(r.arm);
    std::ostringstream hyp, align;
    WriteCorpus(hyp, r.report.hyps);
    WriteAlignmentDump(align, r.report);
    write(stem + ".hyp", hyp.str());
    write(stem + ".align", align.str());
    write(stem + ".json", EvalReportJson(r.report) + "\n");
    if (cfg.write_lattices) {
      std::ostringstream lats;
      for (const Lattice &lat : r.lattices) WriteLattice(lats, lat);
      write(stem + ".lat", lats.str());
    }
  }
}

}  // namespace lmaug
