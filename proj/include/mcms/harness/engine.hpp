// Copyright 2026 the mcms authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCMS_HARNESS_ENGINE_HPP_
#define MCMS_HARNESS_ENGINE_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcms/search/mcts.hpp"
#include "mcms/search/sampling.hpp"
#include "mcms/search/star.hpp"

namespace mcms {

// Engine configuration string: "kind" or "kind:key=val,key=val".
// Kinds: exp, star1, star2, expss, star1ss, star2ss, uct, random.
// Keys:  c (sample width), seed, tt (0/1), c1, dr, c2, alpha, dpw (0/1).
// Unset keys fall back to per-game tuned defaults.
struct EngineSpec {
  std::string kind;
  std::map<std::string, double> params;
  std::string raw;

  bool has(const std::string& k) const { return params.count(k) != 0; }
  double get(const std::string& k, double fallback) const {
    auto it = params.find(k);
    return it == params.end() ? fallback : it->second;
  }
};

inline EngineSpec parse_engine_spec(const std::string& text) {
  static const char* kKinds[] = {"exp",    "star1",   "star2",  "expss",
                                 "star1ss", "star2ss", "uct",    "random"};
  static const char* kKeys[] = {"c",  "seed", "tt",  "c1",
                                "dr", "c2",   "alpha", "dpw"};
  EngineSpec spec;
  spec.raw = text;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  bool known = false;
  for (const char* k : kKinds) known = known || spec.kind == k;
  MCMS_CHECK(known, "unknown engine kind in spec: " + text);
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    MCMS_CHECK(eq != std::string::npos && eq > 0 && eq + 1 < item.size(),
               "bad key=value item in engine spec: " + text);
    const std::string key = item.substr(0, eq);
    bool key_known = false;
    for (const char* k : kKeys) key_known = key_known || key == k;
    MCMS_CHECK(key_known, "unknown engine parameter '" + key + "' in: " + text);
    std::size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      MCMS_CHECK(false, "bad numeric value in engine spec: " + text);
    }
    MCMS_CHECK(used == item.size() - eq - 1,
               "bad numeric value in engine spec: " + text);
    spec.params[key] = val;
    pos = comma + 1;
  }
  return spec;
}

// Self-play-tuned per-game defaults: sample widths for the Monte Carlo
// *-engines and the UCT/DPW constants.
struct TunedDefaults {
  int c_expss, c_star1ss, c_star2ss;
  double c1;
  int dr;
  double c2;
  double alpha;
};

inline TunedDefaults tuned_defaults(const std::string& game_name) {
  if (game_name == "pig") return {20, 25, 18, 50.0, 0, 5.0, 0.2};
  if (game_name == "ewn") return {1, 1, 2, 200.0, 100, 4.0, 0.25};
  if (game_name == "cantstop") return {25, 30, 15, 50.0, 10, 25.0, 0.3};
  if (game_name == "ra") return {5, 5, 2, 50.0, 0, 2.0, 0.1};
  return {10, 10, 10, 50.0, 0, 5.0, 0.2};
}

// A configured player: stateless across games except through new_game().
template <Game G>
class Engine {
 public:
  virtual ~Engine() = default;
  virtual const std::string& name() const = 0;
  // Prepares for one game. Seat-keyed seeds make self-play exactly
  // symmetric under seat swaps; also drops any transposition state.
  virtual void new_game(std::uint64_t game_seed) = 0;
  virtual SearchResult<typename G::Action> choose(
      const typename G::State& s, const DepthBudget& budget,
      std::uint64_t move_salt) = 0;
};

template <Game G>
class ClassicStarEngine : public Engine<G> {
 public:
  ClassicStarEngine(const EngineSpec& spec, PruneKind prune)
      : name_(spec.raw) {
    typename ClassicStarSearch<G>::Options opt;
    opt.prune = prune;
    opt.use_tt = spec.get("tt", 1.0) != 0.0;
    search_ = std::make_unique<ClassicStarSearch<G>>(opt,
                                                     FullOutcomeSource<G>{});
  }
  const std::string& name() const override { return name_; }
  void new_game(std::uint64_t) override { search_->clear_tt(); }
  SearchResult<typename G::Action> choose(const typename G::State& s,
                                          const DepthBudget& budget,
                                          std::uint64_t move_salt) override {
    return search_->search(s, budget, move_salt);
  }

 private:
  std::string name_;
  std::unique_ptr<ClassicStarSearch<G>> search_;
};

template <Game G>
class SampledStarEngine : public Engine<G> {
 public:
  SampledStarEngine(const EngineSpec& spec, PruneKind prune, int default_c)
      : name_(spec.raw),
        base_seed_(static_cast<std::uint64_t>(spec.get("seed", 0.0))) {
    const int width = static_cast<int>(spec.get("c", default_c));
    MCMS_CHECK(width >= 1, "sample width must be >= 1: " + spec.raw);
    typename SampledStarSearch<G>::Options opt;
    opt.prune = prune;
    opt.use_tt = spec.get("tt", 1.0) != 0.0;
    opt.seed = base_seed_;
    search_ = std::make_unique<SampledStarSearch<G>>(
        opt, SampledOutcomeSource<G>{width});
  }
  const std::string& name() const override { return name_; }
  void new_game(std::uint64_t game_seed) override {
    search_->set_seed(mix64(base_seed_, game_seed));
    search_->clear_tt();
  }
  SearchResult<typename G::Action> choose(const typename G::State& s,
                                          const DepthBudget& budget,
                                          std::uint64_t move_salt) override {
    return search_->search(s, budget, move_salt);
  }

 private:
  std::string name_;
  std::uint64_t base_seed_;
  std::unique_ptr<SampledStarSearch<G>> search_;
};

template <Game G>
class UctEngine : public Engine<G> {
 public:
  explicit UctEngine(const EngineSpec& spec)
      : name_(spec.raw),
        base_seed_(static_cast<std::uint64_t>(spec.get("seed", 0.0))) {
    const TunedDefaults d = tuned_defaults(G::name());
    opt_.c1 = spec.get("c1", d.c1);
    opt_.rollout_len = static_cast<int>(spec.get("dr", d.dr));
    opt_.dpw = spec.get("dpw", 1.0) != 0.0;
    opt_.c2 = spec.get("c2", d.c2);
    opt_.alpha = spec.get("alpha", d.alpha);
    opt_.seed = base_seed_;
    search_ = std::make_unique<MctsSearch<G>>(opt_);
  }
  const std::string& name() const override { return name_; }
  void new_game(std::uint64_t game_seed) override {
    search_->set_seed(mix64(base_seed_, game_seed));
  }
  SearchResult<typename G::Action> choose(const typename G::State& s,
                                          const DepthBudget& budget,
                                          std::uint64_t move_salt) override {
    return search_->search(s, budget, move_salt);
  }

 private:
  std::string name_;
  std::uint64_t base_seed_;
  typename MctsSearch<G>::Options opt_;
  std::unique_ptr<MctsSearch<G>> search_;
};

// Uniform-random legal action; the weakest baseline.
template <Game G>
class RandomEngine : public Engine<G> {
 public:
  explicit RandomEngine(const EngineSpec& spec)
      : name_(spec.raw),
        base_seed_(static_cast<std::uint64_t>(spec.get("seed", 0.0))),
        game_seed_(base_seed_) {}
  const std::string& name() const override { return name_; }
  void new_game(std::uint64_t game_seed) override {
    game_seed_ = mix64(base_seed_, game_seed);
  }
  SearchResult<typename G::Action> choose(const typename G::State& s,
                                          const DepthBudget&,
                                          std::uint64_t move_salt) override {
    std::vector<typename G::Action> actions;
    G::legal_actions(s, actions);
    Rng rng(mix64(game_seed_, move_salt, G::state_key(s)));
    SearchResult<typename G::Action> r;
    r.best_action_index =
        static_cast<int>(rng.next_below(actions.size()));
    r.best_action = actions[r.best_action_index];
    r.value = 0.0;
    r.completed_depth = 0;
    return r;
  }

 private:
  std::string name_;
  std::uint64_t base_seed_;
  std::uint64_t game_seed_;
};

template <Game G>
std::unique_ptr<Engine<G>> make_engine(const EngineSpec& spec) {
  const TunedDefaults d = tuned_defaults(G::name());
  if (spec.kind == "exp") {
    return std::make_unique<ClassicStarEngine<G>>(spec, PruneKind::kNone);
  }
  if (spec.kind == "star1") {
    return std::make_unique<ClassicStarEngine<G>>(spec, PruneKind::kStar1);
  }
  if (spec.kind == "star2") {
    return std::make_unique<ClassicStarEngine<G>>(spec, PruneKind::kStar2);
  }
  if (spec.kind == "expss") {
    return std::make_unique<SampledStarEngine<G>>(spec, PruneKind::kNone,
                                                  d.c_expss);
  }
  if (spec.kind == "star1ss") {
    return std::make_unique<SampledStarEngine<G>>(spec, PruneKind::kStar1,
                                                  d.c_star1ss);
  }
  if (spec.kind == "star2ss") {
    return std::make_unique<SampledStarEngine<G>>(spec, PruneKind::kStar2,
                                                  d.c_star2ss);
  }
  if (spec.kind == "uct") return std::make_unique<UctEngine<G>>(spec);
  if (spec.kind == "random") return std::make_unique<RandomEngine<G>>(spec);
  MCMS_CHECK(false, "unknown engine kind: " + spec.kind);
  return nullptr;
}

template <Game G>
std::unique_ptr<Engine<G>> make_engine(const std::string& spec_text) {
  return make_engine<G>(parse_engine_spec(spec_text));
}

}  // namespace mcms

#endif  // MCMS_HARNESS_ENGINE_HPP_
