// Copyright 2026 The authorprof Authors.
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

#include "authorprof/cli.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "authorprof/errors.h"
#include "authorprof/model_io.h"
#include "test_util.h"

namespace authorprof {
namespace {

namespace fs = std::filesystem;
using testing::read_text;
using testing::TempDir;
using testing::write_text;

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "authorprof");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the last CSV column (train_time_ms).
std::string without_timing(const std::string &csv) {
  std::string out;
  for (const auto &line : lines_of(csv)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(run({"synth", "--out", corpus_dir().string(), "--authors", "60", "--tweets", "30",
                   "--seed", "4"}),
              0);
  }
  fs::path corpus_dir() const { return tmp_ / "corpus"; }
  TempDir tmp_;
};

TEST_F(CliTest, SynthWritesXmlAndTruth) {
  std::size_t xml = 0;
  for (const auto &e : fs::directory_iterator(corpus_dir())) xml += e.path().extension() == ".xml";
  EXPECT_EQ(xml, 60u);
  EXPECT_EQ(lines_of(read_text(corpus_dir() / "truth.txt")).size(), 60u);

  const Corpus loaded = load_corpus(corpus_dir(), corpus_dir() / "truth.txt");
  EXPECT_EQ(loaded, generate_synthetic_corpus(make_synth_spec(60, 30, Language::kEn, 3, 0.3, 4)));

  ASSERT_EQ(run({"synth", "--out", (tmp_ / "again").string(), "--authors", "60", "--tweets", "30",
                 "--seed", "4"}),
            0);
  for (const auto &e : fs::directory_iterator(corpus_dir())) {
    EXPECT_EQ(read_text(e.path()), read_text(tmp_ / "again" / e.path().filename()));
  }
}

TEST_F(CliTest, TrainPredictRoundTrip) {
  const fs::path model = tmp_ / "model.txt";
  ASSERT_EQ(run({"train", "--corpus", corpus_dir().string(), "--model", model.string()}), 0);
  const std::string saved = read_text(model);
  std::ostringstream resaved;
  write_model(resaved, load_model(model));
  EXPECT_EQ(resaved.str(), saved);
  EXPECT_EQ(saved.rfind("authorprof-model 1\nconfig min_df 10 c 0x1p+0 gamma auto folds 10 seed 0\n", 0), 0u);

  const fs::path preds = tmp_ / "pred.txt";
  ASSERT_EQ(run({"predict", "--corpus", corpus_dir().string(), "--model", model.string(), "--out",
                 preds.string()}),
            0);
  const auto predicted = parse_truth_file(preds);
  const auto truth = parse_truth_file(corpus_dir() / "truth.txt");
  ASSERT_EQ(predicted.size(), truth.size());
  EXPECT_TRUE(std::is_sorted(predicted.begin(), predicted.end(),
                             [](const auto &a, const auto &b) { return a.author_id < b.author_id; }));
  std::map<std::string, TruthLabel> by_id;
  for (const auto &t : truth) by_id[t.author_id] = t;
  for (const auto &p : predicted) EXPECT_EQ(p, by_id.at(p.author_id));
}

TEST_F(CliTest, PredictHandlesOutOfVocabularyAuthors) {
  const fs::path model = tmp_ / "model.txt";
  ASSERT_EQ(run({"train", "--corpus", corpus_dir().string(), "--model", model.string()}), 0);
  const fs::path unseen = tmp_ / "unseen";
  fs::create_directories(unseen);
  write_text(unseen / "zzz.xml",
             "<author lang=\"en\"><documents><document>qqq rrr sss</document></documents></author>");
  const fs::path preds = tmp_ / "pred.txt";
  ASSERT_EQ(run({"predict", "--corpus", unseen.string(), "--model", model.string(), "--out",
                 preds.string()}),
            0);
  const auto predicted = parse_truth_file(preds);
  ASSERT_EQ(predicted.size(), 1u);
  EXPECT_EQ(predicted[0].author_id, "zzz");

  write_text(unseen / "zzz.xml",
             "<author lang=\"pt\"><documents><document>x</document></documents></author>");
  EXPECT_EQ(run({"predict", "--corpus", unseen.string(), "--model", model.string(), "--out",
                 preds.string()}),
            2);
}

TEST_F(CliTest, EmptyVocabularyExitsNonzero) {
  ::testing::internal::CaptureStderr();
  const int code = run({"train", "--corpus", corpus_dir().string(), "--model",
                        (tmp_ / "m").string(), "--min-df", "100000"});
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("empty vocabulary"), std::string::npos);
  EXPECT_EQ(std::count(err.begin(), err.end(), '\n'), 1);
  EXPECT_FALSE(fs::exists(tmp_ / "m"));
}

TEST_F(CliTest, EvaluateCsvShapeAndDeterminism) {
  const fs::path a = tmp_ / "a.csv", b = tmp_ / "b.csv";
  ASSERT_EQ(run({"evaluate", "--corpus", corpus_dir().string(), "--folds", "5", "--min-df", "3",
                 "--out", a.string()}),
            0);
  ASSERT_EQ(run({"evaluate", "--corpus", corpus_dir().string(), "--folds", "5", "--min-df", "3",
                 "--out", b.string()}),
            0);
  const auto rows = lines_of(read_text(a));
  ASSERT_EQ(rows.size(), 1u + 2 * (5 + 1));
  EXPECT_EQ(rows[0], kEvalCsvHeader);
  EXPECT_EQ(std::count_if(rows.begin(), rows.end(),
                          [](const std::string &r) { return r.find(",mean,") != std::string::npos; }),
            2);
  EXPECT_EQ(without_timing(read_text(a)), without_timing(read_text(b)));
}

TEST_F(CliTest, SweepEmitsOneSummaryPerMinDf) {
  const fs::path out = tmp_ / "sweep.csv";
  ASSERT_EQ(run({"sweep", "--corpus", corpus_dir().string(), "--folds", "3", "--df-range", "2..6",
                 "--out", out.string()}),
            0);
  const auto rows = lines_of(read_text(out));
  EXPECT_EQ(rows.size(), 1u + 2 * 5 * (3 + 1));
}

TEST_F(CliTest, ReportRanksSignalTokensFirst) {
  const fs::path out = tmp_ / "report.csv";
  ASSERT_EQ(run({"report", "--corpus", corpus_dir().string(), "--top-k", "20", "--out",
                 out.string()}),
            0);
  const auto rows = lines_of(read_text(out));
  EXPECT_EQ(rows[0], "language,task,section,class,rank,term,count");
  std::map<std::string, int> per_class;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream in(rows[i]);
    for (std::string cell; std::getline(in, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 7u);
    if (f[2] != "top") continue;
    ++per_class[f[1] + "/" + f[3]];
    // Ten signal tokens per class, each far more frequent in-class than any
    // background token.
    if (f[1] == "gender" && std::stoi(f[4]) <= 10) {
      EXPECT_EQ(f[5].rfind(f[3] + "_sig", 0), 0u) << rows[i];
    }
  }
  for (const auto &[cls, n] : per_class) EXPECT_LE(n, 20) << cls;
  EXPECT_EQ(per_class.size(), 2u + 3u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"evaluate", "--corpus", corpus_dir().string(), "--gamma", "fast"}), 1);
  EXPECT_EQ(run({"evaluate", "--corpus", corpus_dir().string(), "--gamma", "-1"}), 1);
  EXPECT_EQ(run({"sweep", "--corpus", corpus_dir().string(), "--df-range", "9..3"}), 1);
  EXPECT_EQ(run({"train", "--corpus", corpus_dir().string()}), 1);
  const fs::path bare = tmp_ / "bare";
  fs::create_directories(bare);
  for (const auto &e : fs::directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".xml") fs::copy_file(e.path(), bare / e.path().filename());
  }
  EXPECT_EQ(run({"train", "--corpus", bare.string(), "--model", (tmp_ / "m").string()}), 1);
}

TEST_F(CliTest, StratificationFailureIsDataError) {
  EXPECT_EQ(run({"evaluate", "--corpus", corpus_dir().string(), "--folds", "50", "--out",
                 (tmp_ / "x.csv").string()}),
            2);
}

TEST(CliDefaults, MatchReferenceOperatingPoint) {
  const char *argv[] = {"authorprof", "evaluate", "--corpus", "somewhere"};
  const auto config = parse_command_line(4, argv);
  ASSERT_TRUE(config.has_value());
  EXPECT_EQ(config->min_df, 10u);
  EXPECT_EQ(config->c, 1.0);
  EXPECT_TRUE(config->gamma.is_auto());
  EXPECT_EQ(config->folds, 10u);
  EXPECT_EQ(config->seed, 0u);
  EXPECT_EQ(config->df_range.first, 2u);
  EXPECT_EQ(config->df_range.last, 25u);
  EXPECT_EQ(config->top_k, 20u);
}

TEST(CliLayout, PerLanguageSubdirectories) {
  TempDir tmp;
  for (auto [lang, code] : {std::pair{Language::kPt, "pt"}, std::pair{Language::kAr, "ar"}}) {
    RunConfig config;
    config.command = Command::kSynth;
    config.output_path = tmp / code;
    config.authors = 24;
    config.tweets = 10;
    config.varieties = 2;
    config.language = lang;
    cmd_synth(config);
  }
  RunConfig config;
  config.corpus_dir = tmp.path();
  const auto corpora = load_corpora(config, true);
  ASSERT_EQ(corpora.size(), 2u);
  EXPECT_EQ(corpora[0].language(), Language::kAr);
  EXPECT_EQ(corpora[1].language(), Language::kPt);
  EXPECT_EQ(run({"evaluate", "--corpus", tmp.path().string(), "--folds", "3", "--min-df", "2",
                 "--out", (tmp / "e.csv").string()}),
            0);
  EXPECT_EQ(lines_of(read_text(tmp / "e.csv")).size(), 1u + 4 * 4);
}

}  // namespace
}  // namespace authorprof
