// Copyright 2026 The TriGAN Authors.
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


#include "trigan/data.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

namespace trigan::data {
namespace {

namespace fs = std::filesystem;

GaussianClassSpec toy_spec() {
  return {Eigen::Vector2d(2.0, 2.0), Eigen::Vector2d(-2.0, -2.0), 1.0};
}

ClaimCorpus parse(const std::string& text) {
  std::istringstream in(text);
  return parse_claims(in);
}

TEST(GaussianMixture, EmptyAndDeterministic) {
  EXPECT_TRUE(gaussian_mixture(0, toy_spec(), 1).empty());
  EXPECT_EQ(gaussian_mixture(50, toy_spec(), 3), gaussian_mixture(50, toy_spec(), 3));
  EXPECT_FALSE(gaussian_mixture(50, toy_spec(), 3) == gaussian_mixture(50, toy_spec(), 4));
}

TEST(GaussianMixture, ClassMeansConverge) {
  const LabeledDataset ds = gaussian_mixture(5000, toy_spec(), 1);
  EXPECT_EQ(ds.count(1), 5000u);
  EXPECT_EQ(ds.count(0), 5000u);
  const Eigen::VectorXd pos = ds.features(1).colwise().mean();
  const Eigen::VectorXd neg = ds.features(0).colwise().mean();
  EXPECT_LE((pos - Eigen::Vector2d(2.0, 2.0)).cwiseAbs().maxCoeff(), 0.1);
  EXPECT_LE((neg - Eigen::Vector2d(-2.0, -2.0)).cwiseAbs().maxCoeff(), 0.1);
}

TEST(GaussianMixture, RejectsBadSpecs) {
  GaussianClassSpec s = toy_spec();
  s.covariance_scale = 0.0;
  EXPECT_THROW(gaussian_mixture(10, s, 1), std::invalid_argument);
  s = toy_spec();
  s.mean_negative = Eigen::Vector3d::Zero();
  EXPECT_THROW(gaussian_mixture(10, s, 1), std::invalid_argument);
  EXPECT_THROW(gaussian_mixture(-1, toy_spec(), 1), std::invalid_argument);
}

TEST(Dataset, RejectsInconsistentSamples) {
  LabeledDataset ds(2);
  EXPECT_THROW(ds.add({Eigen::Vector3d::Zero(), 1}), std::invalid_argument);
  EXPECT_THROW(ds.add({Eigen::Vector2d::Zero(), 2}), std::invalid_argument);
  EXPECT_THROW(ds.add({Eigen::Vector2d(std::nan(""), 0.0), 1}), std::invalid_argument);
}

TEST(Claims, SkipsThirdLabelAndCounts) {
  const ClaimCorpus c = parse(
      R"({"claim": "a", "evidence": ["e1"], "label": "SUPPORTS"})"
      "\n"
      R"({"claim": "b", "evidence": ["e2"], "label": "supports"})"
      "\n"
      R"({"claim": "c", "evidence": ["e3"], "label": "REFUTES"})"
      "\n"
      R"({"claim": "d", "evidence": [], "label": "NOT ENOUGH INFO"})"
      "\n");
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_EQ(c.skipped_other_label, 1);
  EXPECT_EQ(c.records[2].label, ClaimLabel::kRefuted);
  EXPECT_TRUE(c.rejected.empty());
}

TEST(Claims, TetrisRecord) {
  const ClaimCorpus c = parse(
      R"({"claim": "Tetris has sold millions of physical copies.", )"
      R"("evidence": ["It was announced that Tetris has sold more than 170 million copies."], )"
      R"("label": "True"})");
  ASSERT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.records[0].label, ClaimLabel::kSupported);
  EXPECT_EQ(c.records[0].evidence.size(), 1u);
}

TEST(Claims, EmptyInput) {
  const ClaimCorpus c = parse("");
  EXPECT_TRUE(c.records.empty());
  EXPECT_EQ(c.skipped_other_label, 0);
}

TEST(Claims, MalformedLineNamesLineNumber) {
  try {
    parse(R"({"claim": "a", "evidence": ["e"], "label": "SUPPORTS"})"
          "\n{not json\n");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse(R"({"claim": "a", "evidence": ["e"]})"), std::runtime_error);
  EXPECT_THROW(parse(R"({"claim": "a", "evidence": [3], "label": "REFUTES"})"), std::runtime_error);
}

TEST(Claims, KeptRecordWithoutEvidenceIsRejected) {
  const ClaimCorpus c = parse(R"({"claim": "a", "evidence": [], "label": "REFUTES"})");
  EXPECT_TRUE(c.records.empty());
  ASSERT_EQ(c.rejected.size(), 1u);
  EXPECT_EQ(c.rejected[0].line, 1);
}

TEST(Pairs, OnePairPerEvidence) {
  const std::vector<ClaimRecord> recs = {
      {"c1", {"a", "b", "c"}, ClaimLabel::kSupported},
      {"c2", {"d"}, ClaimLabel::kRefuted},
      {"c3", {"e", "f"}, ClaimLabel::kSupported},
  };
  const std::vector<ClaimEvidencePair> pairs = make_pairs(recs);
  ASSERT_EQ(pairs.size(), 6u);
  EXPECT_EQ(pairs[0].text, std::string("c1") + kPairSeparator + "a");
  EXPECT_EQ(pairs[2].text, std::string("c1") + kPairSeparator + "c");
  EXPECT_EQ(pairs[3].label, 0);
  EXPECT_EQ(pairs[5].text, std::string("c3") + kPairSeparator + "f");
  for (int i : {0, 1, 2, 4, 5}) EXPECT_EQ(pairs[i].label, 1);
}

TEST(Pairs, SmallCardinalities) {
  EXPECT_EQ(make_pairs({{"c", {"e"}, ClaimLabel::kRefuted}}).size(), 1u);
  EXPECT_EQ(make_pairs({{"c", {"e1", "e2"}, ClaimLabel::kRefuted},
                        {"d", {"e3"}, ClaimLabel::kSupported}})
                .size(),
            3u);
}

TEST(Embedding, UnitNormAndDeterministic) {
  const Eigen::VectorXd a = embed_text("Tetris has sold millions [SEP] of copies", 64, 1);
  EXPECT_NEAR(a.norm(), 1.0, 1e-9);
  EXPECT_EQ(a, embed_text("Tetris has sold millions [SEP] of copies", 64, 1));
  EXPECT_EQ(a, embed_text("tetris HAS sold, millions sep of copies!", 64, 1));
  EXPECT_THROW(embed_text("x", 4, 1), std::invalid_argument);
}

TEST(Embedding, EmptyTextIsFlagged) {
  const EmbeddedPairs e = embed_pairs({{"", 1}, {"hello world", 0}}, 16, 1);
  EXPECT_TRUE(e.dataset[0].features.isZero(0.0));
  EXPECT_EQ(e.empty_text_rows, (std::vector<size_t>{0}));
  EXPECT_NEAR(e.dataset[1].features.norm(), 1.0, 1e-9);
}

TEST(Priors, CorpusCounts) {
  const Priors p = class_priors(80035, 29775);
  EXPECT_NEAR(p.pi_p, 80035.0 / 109810.0, 1e-15);
  EXPECT_NEAR(p.pi_p, 0.7288498315271833, 1e-12);
  EXPECT_NEAR(p.pi_p + p.pi_n, 1.0, 1e-15);
}

TEST(Priors, BalancedAndDegenerate) {
  const Priors p = class_priors(gaussian_mixture(10, toy_spec(), 1));
  EXPECT_DOUBLE_EQ(p.pi_p, 0.5);
  EXPECT_DOUBLE_EQ(p.pi_n, 0.5);
  EXPECT_THROW(class_priors(5, 0), std::invalid_argument);
  EXPECT_THROW(class_priors(LabeledDataset(2)), std::invalid_argument);
}

TEST(Split, SizesAndDisjointness) {
  const LabeledDataset ds = gaussian_mixture(500, toy_spec(), 2);
  const Split s = split(ds, {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(s.train.size(), 800u);
  EXPECT_EQ(s.validation.size(), 100u);
  EXPECT_EQ(s.test.size(), 100u);
  std::set<std::pair<double, double>> seen;
  for (const LabeledDataset* part : {&s.train, &s.validation, &s.test})
    for (const Sample& x : part->samples()) seen.insert({x.features(0), x.features(1)});
  EXPECT_EQ(seen.size(), 1000u);
  const Split again = split(ds, {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(again.train, s.train);
  EXPECT_EQ(again.test, s.test);
}

TEST(Split, AllTrainAndRounding) {
  const LabeledDataset ds = gaussian_mixture(5, toy_spec(), 2);
  EXPECT_EQ(split(ds, {1.0, 0.0, 0.0}, 1).train.size(), 10u);
  const Split s = split(ds, {0.5, 0.25, 0.25}, 1);
  EXPECT_EQ(s.validation.size(), 2u);
  EXPECT_EQ(s.test.size(), 2u);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_THROW(split(ds, {0.5, 0.5, 0.5}, 1), std::invalid_argument);
  EXPECT_THROW(split(ds, {1.2, -0.1, -0.1}, 1), std::invalid_argument);
}

TEST(Csv, RoundTripIsExact) {
  const fs::path dir = fs::temp_directory_path() / "trigan_data_test";
  fs::create_directories(dir);
  const LabeledDataset ds = gaussian_mixture(20, toy_spec(), 5);
  save_dataset_csv(ds, dir / "ds.csv");
  EXPECT_EQ(load_dataset_csv(dir / "ds.csv"), ds);
  {
    std::ofstream f(dir / "bad.csv");
    f << "label,f_0\n1,abc\n";
  }
  EXPECT_THROW(load_dataset_csv(dir / "bad.csv"), std::runtime_error);
  EXPECT_THROW(load_dataset_csv(dir / "missing.csv"), std::runtime_error);
}

}  // namespace
}  // namespace trigan::data
