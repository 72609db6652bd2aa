// lmaug/lmaug.cc

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

// Command-line front end: one subcommand per toolkit stage plus `run`, which
// drives a whole experiment from a JSON config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lmaug/arpa.h"
#include "lmaug/decode-sim.h"
#include "lmaug/error.h"
#include "lmaug/lm-combine.h"
#include "lmaug/metrics.h"
#include "lmaug/pipeline.h"
#include "lmaug/rescore.h"
#include "lmaug/synthetic.h"
#include "lmaug/text-select.h"
#include "lmaug/witten-bell.h"

namespace fs = std::filesystem;
using namespace lmaug;

namespace {

std::string Slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void Spit(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << text;
}

// Corpus from a file: already tokenized, or raw text run through a policy.
Corpus LoadText(const std::string &path, const std::string &policy) {
  if (policy.empty()) return ReadCorpusFile(path);
  NormalizationPolicy p = fs::exists(policy)
                              ? NormalizationPolicy::FromJson(Slurp(policy))
                              : NormalizationPolicy::Named(policy);
  return NormalizeText(Slurp(path), p);
}

void MaybeStats(const BackoffModel &m, bool print, const std::string &out) {
  std::string json = ModelStatsJson(ComputeModelStats(m));
  if (print) std::cout << json << '\n';
  if (!out.empty()) Spit(out, json + "\n");
}

std::vector<Lattice> LoadLattices(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return ReadLattices(is);
}

void AddDecodeOptions(CLI::App *app, DecodeSimConfig *cfg) {
  app->add_option("--k-confusions", cfg->k_confusions);
  app->add_option("--edit-threshold", cfg->edit_threshold);
  app->add_option("--acoustic-scale", cfg->acoustic_scale);
  app->add_option("--allow-splits", cfg->allow_splits);
  app->add_option("--split-cost", cfg->split_cost);
  app->add_option("--beam", cfg->beam);
  app->add_option("--seed", cfg->seed);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"lmaug: LM augmentation, lattice rescoring and scoring"};
  app.require_subcommand(1);

  // train-lm
  std::string text, policy, out, stats_out, lm_path;
  int order = 3;
  bool stats = false, unpadded = false;
  auto *train = app.add_subcommand("train-lm", "Witten-Bell n-gram LM");
  train->add_option("--text", text, "training corpus")->required();
  train->add_option("--policy", policy,
                    "normalize raw text: latin|telugu|kannada|policy.json");
  train->add_option("--order", order);
  train->add_option("--out", out, "output ARPA")->required();
  train->add_flag("--unpadded", unpadded, "count without sentence markers");
  train->add_flag("--stats", stats, "print model-size statistics");
  train->add_option("--stats-out", stats_out);

  // merge-lm
  std::vector<std::string> texts, lms;
  std::vector<double> betas, weights;
  auto *merge = app.add_subcommand("merge-lm", "count merge or linear mix");
  merge->add_option("--text", texts, "component corpora (count merge)");
  merge->add_option("--beta", betas, "one beta per component");
  merge->add_option("--lm", lms, "component ARPA models (linear mix)");
  merge->add_option("--weight", weights, "one weight per ARPA model");
  merge->add_option("--order", order);
  merge->add_option("--out", out)->required();
  merge->add_flag("--stats", stats);
  merge->add_option("--stats-out", stats_out);

  // build-owalm
  std::string train_path, larger_path;
  double beta_oot = 1.0, beta_base = 1.0;
  auto *owalm = app.add_subcommand("build-owalm", "baseline + OOT unigrams");
  owalm->add_option("--train", train_path)->required();
  owalm->add_option("--larger", larger_path)->required();
  owalm->add_option("--order", order);
  owalm->add_option("--beta-base", beta_base);
  owalm->add_option("--beta-oot", beta_oot);
  owalm->add_option("--out", out)->required();
  owalm->add_flag("--stats", stats);
  owalm->add_option("--stats-out", stats_out);

  // select
  std::string method = "random", tsv, base_lm, aug_lm, general_lm;
  double fraction = 0.5;
  std::uint64_t seed = 0;
  bool entropy_joint = false;
  auto *select = app.add_subcommand("select", "rank and select sentences");
  select->add_option("--method", method,
                     "contrastive|delta_likelihood|entropy|random");
  select->add_option("--fraction", fraction);
  select->add_option("--seed", seed);
  select->add_option("--train", train_path, "in-domain training text");
  select->add_option("--larger", larger_path, "candidate sentences")
      ->required();
  select->add_option("--base-lm", base_lm, "target LM for entropy");
  select->add_option("--aug-lm", aug_lm, "train+larger LM for contrastive");
  select->add_option("--general-lm", general_lm, "larger-corpus LM");
  select->add_flag("--entropy-joint", entropy_joint);
  select->add_option("--out", out, "selected sentences")->required();
  select->add_option("--tsv", tsv, "rank, score, sentence");

  // synth
  std::string spec_path;
  auto *synth = app.add_subcommand("synth", "generate synthetic corpora");
  synth->add_option("--spec", spec_path, "JSON spec (defaults if absent)");
  synth->add_option("--out", out, "output directory")->required();

  // decode-sim
  std::string refs_path, extra_lexicon, hyps_path;
  DecodeSimConfig dcfg;
  auto *decode = app.add_subcommand("decode-sim", "simulated decoding");
  decode->add_option("--refs", refs_path)->required();
  decode->add_option("--lm", lm_path)->required();
  decode->add_option("--extra-lexicon", extra_lexicon, "one word per line");
  decode->add_option("--out", out, "lattice file")->required();
  decode->add_option("--hyps", hyps_path, "best-path transcripts");
  AddDecodeOptions(decode, &dcfg);

  // rescore
  std::string lattices;
  auto *rescore = app.add_subcommand("rescore", "replace lattice LM costs");
  rescore->add_option("--lattices", lattices, "directory or file")->required();
  rescore->add_option("--lm", lm_path)->required();
  rescore->add_option("--out", out, "output directory")->required();

  // best-path
  double am_scale = 1.0, lm_scale = 1.0;
  auto *best = app.add_subcommand("best-path", "one-best transcripts");
  best->add_option("--lattices", lattices, "lattice file")->required();
  best->add_option("--am-scale", am_scale);
  best->add_option("--lm-scale", lm_scale);
  best->add_option("--out", out)->required();

  // score
  std::string base_vocab, merge_vocab, json_out, align_out;
  bool merge_agg = false, hyp_only = false;
  auto *score = app.add_subcommand("score", "WER and OOV/IV recognition");
  score->add_option("--refs", refs_path)->required();
  score->add_option("--hyps", hyps_path)->required();
  score->add_option("--base-vocab", base_vocab, "text whose words are IV")
      ->required();
  score->add_flag("--merge-agglutination", merge_agg);
  score->add_option("--merge-vocab", merge_vocab,
                    "text whose words may be formed by merging");
  score->add_flag("--merge-hyp-only", hyp_only,
                  "do not merge the references");
  score->add_option("--json", json_out);
  score->add_option("--align", align_out);

  // run
  std::string config;
  int threads = 0;
  auto *run = app.add_subcommand("run", "full experiment from JSON config");
  run->add_option("--config", config)->required();
  run->add_option("--out", out, "overrides output_dir");
  run->add_option("--threads", threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      CountOptions opts;
      opts.pad_sentences = !unpadded;
      BackoffModel m =
          TrainWittenBell(CountNGrams(LoadText(text, policy), order, opts));
      WriteArpaFile(out, m);
      MaybeStats(m, stats, stats_out);
    } else if (*merge) {
      MergedModel m;
      if (!texts.empty()) {
        if (!betas.empty() && betas.size() != texts.size())
          throw std::invalid_argument("need one --beta per --text");
        std::vector<MixtureComponent> comps;
        for (std::size_t i = 0; i < texts.size(); ++i)
          comps.push_back(MakeComponent(texts[i], ReadCorpusFile(texts[i]),
                                        order,
                                        betas.empty() ? 1.0 : betas[i]));
        m = CountMerge(comps, order);
      } else {
        if (lms.size() != weights.size() || lms.empty())
          throw std::invalid_argument("need --text, or --lm with --weight");
        std::vector<BackoffModel> models;
        for (const std::string &p : lms) models.push_back(ReadArpaFile(p));
        m = LinearInterpolate(models, weights);
      }
      if (!m.status.empty()) std::cerr << "warning: " << m.status << '\n';
      WriteArpaFile(out, m.model);
      MaybeStats(m.model, stats, stats_out);
    } else if (*owalm) {
      Corpus tr = ReadCorpusFile(train_path);
      MixtureComponent base = MakeComponent("train", tr, order, beta_base);
      OotReport oot = ComputeOot(BuildVocabulary(tr),
                                 ReadCorpusFile(larger_path));
      MergedModel m = BuildOwalm(base, oot, beta_oot);
      if (!m.status.empty()) std::cerr << "warning: " << m.status << '\n';
      WriteArpaFile(out, m.model);
      MaybeStats(m.model, stats, stats_out);
    } else if (*select) {
      Corpus larger = ReadCorpusFile(larger_path);
      SelectionConfig sc;
      sc.method = ParseSelectionMethod(method);
      sc.fraction = fraction;
      sc.seed = seed;
      sc.entropy_joint = entropy_joint;
      SelectionInputs in;
      std::optional<BackoffModel> target, d, b;
      std::optional<MixtureComponent> tr_comp, wiki;
      std::optional<NGramCountTable> augmented;
      std::optional<DeltaLikelihoodScorer> delta;
      if (!train_path.empty()) {
        tr_comp = MakeComponent("train", ReadCorpusFile(train_path), 3);
        wiki = MakeComponent("larger", larger, 3);
      }
      auto need_texts = [&]() {
        if (!tr_comp)
          throw std::invalid_argument(method + " selection needs --train");
      };
      if (sc.method == SelectionMethod::kEntropy) {
        if (!base_lm.empty()) {
          target = ReadArpaFile(base_lm);
        } else {
          need_texts();
          target = tr_comp->model;
        }
        in.target = &*target;
      } else if (sc.method == SelectionMethod::kContrastive) {
        if (!aug_lm.empty()) {
          d = ReadArpaFile(aug_lm);
        } else {
          need_texts();
          std::vector<MixtureComponent> comps = {*tr_comp, *wiki};
          d = CountMerge(comps, 3).model;
        }
        if (!general_lm.empty()) {
          b = ReadArpaFile(general_lm);
        } else {
          b = wiki ? wiki->model
                   : TrainWittenBell(CountNGrams(larger, 3));
        }
        in.in_domain = &*d;
        in.general = &*b;
      } else if (sc.method == SelectionMethod::kDeltaLikelihood) {
        need_texts();
        augmented = tr_comp->counts;
        augmented->Merge(wiki->counts);
        delta.emplace(larger, tr_comp->counts, *augmented);
        in.delta = &*delta;
      }
      std::vector<ScoredSentence> sel = SelectSentences(larger, sc, in);
      Corpus chosen;
      for (const ScoredSentence &s : sel) chosen.push_back(s.sentence);
      WriteCorpusFile(out, chosen);
      if (!tsv.empty()) {
        std::ofstream os(tsv);
        WriteSelectionTsv(os, sel);
      }
    } else if (*synth) {
      SyntheticSpec spec = spec_path.empty()
                               ? SyntheticSpec()
                               : SyntheticSpec::FromJson(Slurp(spec_path));
      SyntheticData data = GenerateSynthetic(spec);
      fs::create_directories(out);
      WriteCorpusFile((fs::path(out) / "train.txt").string(), data.train);
      WriteCorpusFile((fs::path(out) / "larger.txt").string(), data.larger);
      WriteCorpusFile((fs::path(out) / "test.txt").string(), data.test);
      std::printf("test OOV rate %.4f, larger-corpus coverage of OOV types "
                  "%.4f\n",
                  data.achieved_oov_rate, data.larger_coverage);
    } else if (*decode) {
      BackoffModel lm = ReadArpaFile(lm_path);
      std::vector<std::string> extra;
      if (!extra_lexicon.empty())
        for (const Sentence &s : ReadCorpusFile(extra_lexicon))
          extra.insert(extra.end(), s.begin(), s.end());
      DecodeSimulator sim(lm, dcfg, extra);
      Corpus refs = ReadCorpusFile(refs_path), hyps;
      std::ofstream os(out);
      if (!os) throw Error("cannot write " + out);
      for (std::size_t u = 0; u < refs.size(); ++u) {
        Lattice lat = sim.Decode(refs[u], "utt" + std::to_string(u));
        WriteLattice(os, lat);
        hyps.push_back(BestPath(lat).words);
      }
      if (!hyps_path.empty()) WriteCorpusFile(hyps_path, hyps);
    } else if (*rescore) {
      BackoffModel lm = ReadArpaFile(lm_path);
      std::vector<fs::path> files;
      if (fs::is_directory(lattices)) {
        for (const auto &e : fs::directory_iterator(lattices))
          if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
      } else {
        files.push_back(lattices);
      }
      fs::create_directories(out);
      for (const fs::path &f : files) {
        std::ofstream os(fs::path(out) / f.filename());
        for (const Lattice &lat : LoadLattices(f.string()))
          WriteLattice(os, Rescore(lat, lm));
      }
    } else if (*best) {
      Corpus hyps;
      for (const Lattice &lat : LoadLattices(lattices))
        hyps.push_back(BestPath(lat, am_scale, lm_scale).words);
      WriteCorpusFile(out, hyps);
    } else if (*score) {
      Vocabulary bv = BuildVocabulary(ReadCorpusFile(base_vocab));
      std::optional<Vocabulary> mv;
      if (!merge_vocab.empty())
        mv = BuildVocabulary(ReadCorpusFile(merge_vocab));
      EvalOptions opts;
      opts.merge_agglutination = merge_agg;
      opts.merge_reference = !hyp_only;
      opts.merge_vocab = mv ? &*mv : nullptr;
      // Keep blank lines aligned: hypotheses may legitimately be empty.
      auto read_lines = [](const std::string &p) {
        std::ifstream is(p);
        if (!is) throw Error("cannot open " + p);
        Corpus c;
        std::string line;
        while (std::getline(is, line)) {
          std::istringstream ls(line);
          Sentence s;
          std::string t;
          while (ls >> t) s.push_back(t);
          c.push_back(std::move(s));
        }
        return c;
      };
      EvalReport r = Evaluate(read_lines(refs_path), read_lines(hyps_path),
                              bv, opts);
      std::string json = EvalReportJson(r);
      std::cout << json << '\n';
      if (!json_out.empty()) Spit(json_out, json + "\n");
      if (!align_out.empty()) {
        std::ofstream os(align_out);
        WriteAlignmentDump(os, r);
      }
    } else if (*run) {
      ExperimentConfig cfg = ExperimentConfig::FromJson(
          Slurp(config), fs::path(config).parent_path().string());
      if (!out.empty()) cfg.output_dir = out;
      if (threads > 0) cfg.threads = threads;
      ExperimentResult r = RunExperiment(cfg);
      std::cout << ReportCsv(r);
      int failures = 0;
      for (const ArmResult &a : r.arms)
        if (!a.error.empty()) {
          std::cerr << a.selection << '/' << ArmName(a.arm)
                    << " failed: " << a.error << '\n';
          ++failures;
        }
      return failures ? 2 : 0;
    }
  } catch (const DecodingError &e) {
    std::cerr << "error: " << e.what() << " (byte " << e.ByteOffset() << ")\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
