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

#include <algorithm>
#include <cstdio>
#include <set>

#include "authorprof/errors.h"
#include "authorprof/eval.h"
#include "authorprof/random.h"

namespace authorprof {
namespace {

void check_signals(const std::vector<std::string> &classes,
                   const std::map<std::string, ClassSignal> &signals, std::string_view what) {
  if (classes.empty()) {
    throw Error(ErrorCode::kParameter, std::string(what) + " class list is empty");
  }
  for (const auto &cls : classes) {
    auto it = signals.find(cls);
    if (it == signals.end()) {
      throw Error(ErrorCode::kParameter, "no signal for " + std::string(what) + " class '" + cls + "'");
    }
    if (!(it->second.rate > 0.0 && it->second.rate <= 1.0)) {
      throw Error(ErrorCode::kParameter, "signal rate of '" + cls + "' must be in (0, 1]");
    }
    if (it->second.tokens.empty()) {
      throw Error(ErrorCode::kParameter, "class '" + cls + "' has no signal tokens");
    }
  }
}

void validate(const SynthSpec &spec) {
  if (spec.n_authors == 0 || spec.tweets_per_author == 0 || spec.tokens_per_tweet == 0) {
    throw Error(ErrorCode::kParameter, "synthetic corpus sizes must be positive");
  }
  if (spec.shared_vocab_size == 0) {
    throw Error(ErrorCode::kParameter, "shared vocabulary must be non-empty");
  }
  for (const auto &g : spec.gender_classes) parse_gender(g);
  for (const auto &v : spec.variety_classes) {
    if (!is_known_variety(spec.language, v)) {
      throw Error(ErrorCode::kParameter, "'" + v + "' is not a " +
                                             std::string(language_code(spec.language)) + " variety");
    }
  }
  check_signals(spec.gender_classes, spec.gender_signal, "gender");
  check_signals(spec.variety_classes, spec.variety_signal, "variety");
}

std::string token_stem(const std::string &cls) {
  std::string out = cls;
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

}  // namespace

SynthSpec make_synth_spec(std::size_t n_authors, std::size_t tweets_per_author,
                          Language language, std::size_t n_varieties, double signal_rate,
                          std::uint64_t seed, std::size_t signal_tokens) {
  const auto &varieties = language_varieties(language);
  if (n_varieties < 1 || n_varieties > varieties.size()) {
    throw Error(ErrorCode::kParameter,
                std::string(language_code(language)) + " has " +
                    std::to_string(varieties.size()) + " varieties");
  }
  SynthSpec spec;
  spec.n_authors = n_authors;
  spec.tweets_per_author = tweets_per_author;
  spec.language = language;
  spec.seed = seed;
  spec.variety_classes.assign(varieties.begin(),
                              varieties.begin() + static_cast<std::ptrdiff_t>(n_varieties));
  const auto fill = [&](const std::vector<std::string> &classes,
                        std::map<std::string, ClassSignal> &signals) {
    for (const auto &cls : classes) {
      ClassSignal s;
      s.rate = signal_rate;
      for (std::size_t i = 0; i < signal_tokens; ++i) {
        s.tokens.push_back(token_stem(cls) + "_sig" + std::to_string(i));
      }
      signals[cls] = std::move(s);
    }
  };
  fill(spec.gender_classes, spec.gender_signal);
  fill(spec.variety_classes, spec.variety_signal);
  return spec;
}

Corpus generate_synthetic_corpus(const SynthSpec &spec) {
  validate(spec);
  Rng rng(spec.seed);

  // Cumulative 1/(rank + 10) weights over the background vocabulary. The
  // shifted head keeps every background word rarer than any signal token.
  std::vector<double> cdf(spec.shared_vocab_size);
  double total = 0.0;
  for (std::size_t r = 0; r < cdf.size(); ++r) {
    total += 1.0 / static_cast<double>(r + 11);
    cdf[r] = total;
  }
  for (double &c : cdf) c /= total;

  std::set<std::string> ids;
  std::vector<std::string> id_order;
  while (id_order.size() < spec.n_authors) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(rng.next()));
    if (ids.insert(buf).second) id_order.emplace_back(buf);
  }

  std::vector<AuthorRecord> authors;
  std::vector<TruthLabel> labels;
  for (std::size_t a = 0; a < spec.n_authors; ++a) {
    const std::string &gender = spec.gender_classes[a % spec.gender_classes.size()];
    const std::string &variety = spec.variety_classes[a % spec.variety_classes.size()];
    const ClassSignal &gs = spec.gender_signal.at(gender);
    const ClassSignal &vs = spec.variety_signal.at(variety);
    std::vector<std::string> tweets;
    tweets.reserve(spec.tweets_per_author);
    for (std::size_t t = 0; t < spec.tweets_per_author; ++t) {
      std::string tweet;
      for (std::size_t w = 0; w < spec.tokens_per_tweet; ++w) {
        if (w > 0) tweet += ' ';
        if (rng.uniform() < gs.rate) {
          tweet += gs.tokens[rng.below(gs.tokens.size())];
        } else if (rng.uniform() < vs.rate) {
          tweet += vs.tokens[rng.below(vs.tokens.size())];
        } else {
          const double u = rng.uniform();
          const auto r = static_cast<std::size_t>(
              std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
          tweet += 'w';
          tweet += std::to_string(std::min(r, cdf.size() - 1));
        }
      }
      tweets.push_back(std::move(tweet));
    }
    authors.emplace_back(id_order[a], spec.language, std::move(tweets));
    labels.push_back({id_order[a], parse_gender(gender), variety});
  }
  return Corpus::create(std::move(authors), std::move(labels));
}

}  // namespace authorprof
