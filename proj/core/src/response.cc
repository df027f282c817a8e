// Copyright 2026 The teamcorr Authors
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

#include "response.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "teamcorr/layout.h"

namespace teamcorr::internal {
namespace {

constexpr double kTol = 1e-10;

struct Kernel {
  std::vector<double> reward;  // responding team's expected reward per action
  std::vector<std::vector<std::pair<int, double>>> successors;
};

struct Node {
  int state = 0;
  int entry = 0;  // opponent mixture entry
  std::uint64_t key = 0;
  int kernel = 0;
};

struct Layer {
  std::vector<Node> nodes;
  std::unordered_map<std::int64_t, int> index;
};

class Model {
 public:
  Model(const ResponseProblem& p, std::int64_t num_actions)
      : p_(p),
        layout_(p.game->layout()),
        entries_(static_cast<int>(p.opponent->policies.size())),
        num_actions_(num_actions) {
    Build();
  }

  int horizon() const { return static_cast<int>(layers_.size()); }

  double Optimal(std::vector<std::vector<std::vector<int>>>* optimal) {
    std::vector<std::vector<double>> value(layers_.size());
    optimal->assign(layers_.size(), {});
    for (int t = horizon() - 1; t >= 0; --t) {
      const Layer& layer = layers_[t];
      value[t].resize(layer.nodes.size());
      (*optimal)[t].resize(layer.nodes.size());
      for (std::size_t i = 0; i < layer.nodes.size(); ++i) {
        std::vector<double> q(num_actions_);
        double best = -1e300;
        for (std::int64_t a = 0; a < num_actions_; ++a) {
          q[a] = Q(t, layer.nodes[i], static_cast<int>(a), value);
          best = std::max(best, q[a]);
        }
        for (std::int64_t a = 0; a < num_actions_; ++a) {
          if (q[a] >= best - kTol) (*optimal)[t][i].push_back(static_cast<int>(a));
        }
        value[t][i] = best;
      }
    }
    return InitialValue(value);
  }

  // Forward pass restricted to optimal actions; intersects the optimal sets
  // seen at each observation. Returns false if some observation has none.
  bool Consistent(const std::vector<std::vector<std::vector<int>>>& optimal,
                  std::map<std::uint64_t, std::vector<int>>* common) const {
    std::vector<std::vector<char>> reached(layers_.size());
    for (std::size_t t = 0; t < layers_.size(); ++t) {
      reached[t].assign(layers_[t].nodes.size(), 0);
    }
    for (const auto& [node, mass] : initial_) {
      if (mass > 0.0) reached[0][node] = 1;
    }
    for (int t = 0; t < horizon(); ++t) {
      for (std::size_t i = 0; i < layers_[t].nodes.size(); ++i) {
        if (!reached[t][i]) continue;
        const Node& node = layers_[t].nodes[i];
        const auto& opt = optimal[t][i];
        auto it = common->find(node.key);
        if (it == common->end()) {
          common->emplace(node.key, opt);
        } else {
          std::vector<int> both;
          std::set_intersection(it->second.begin(), it->second.end(),
                                opt.begin(), opt.end(),
                                std::back_inserter(both));
          if (both.empty()) return false;
          it->second = std::move(both);
        }
        if (t + 1 >= horizon()) continue;
        for (int a : opt) {
          for (const auto& [s, prob] : kernels_[node.kernel].successors[a]) {
            if (prob <= 0.0) continue;
            const auto found = layers_[t + 1].index.find(Hidden(s, node.entry));
            if (found != layers_[t + 1].index.end()) {
              reached[t + 1][found->second] = 1;
            }
          }
        }
      }
    }
    return true;
  }

  double Evaluate(const ActionMap& policy) const {
    std::vector<double> mass(layers_.empty() ? 0 : layers_[0].nodes.size(), 0.0);
    for (const auto& [node, m] : initial_) mass[node] += m;
    double total = 0.0;
    double discount = 1.0;
    for (int t = 0; t < horizon(); ++t) {
      std::vector<double> next(
          t + 1 < horizon() ? layers_[t + 1].nodes.size() : 0, 0.0);
      for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] == 0.0) continue;
        const Node& node = layers_[t].nodes[i];
        const int a = policy.at(node.key);
        const Kernel& k = kernels_[node.kernel];
        total += discount * mass[i] * k.reward[a];
        if (next.empty()) continue;
        for (const auto& [s, prob] : k.successors[a]) {
          const auto found = layers_[t + 1].index.find(Hidden(s, node.entry));
          if (found != layers_[t + 1].index.end()) {
            next[found->second] += mass[i] * prob;
          }
        }
      }
      mass = std::move(next);
      discount *= p_.game->discount();
    }
    return total;
  }

  // Every observation key with the layers it appears in.
  std::map<std::uint64_t, std::vector<int>> KeyLayers() const {
    std::map<std::uint64_t, std::vector<int>> out;
    for (int t = 0; t < horizon(); ++t) {
      for (const Node& node : layers_[t].nodes) {
        auto& ls = out[node.key];
        if (ls.empty() || ls.back() != t) ls.push_back(t);
      }
    }
    return out;
  }

  // Backward improvement sweeps. Valid when every observation lives in a
  // single layer: occupancy of layer t depends only on earlier layers, so
  // choosing each observation's action against the current occupancy and the
  // already-updated future is an exact improvement step.
  double LayeredAscent(ActionMap* policy) {
    std::vector<std::vector<double>> value(layers_.size());
    for (int iter = 0; iter < 1000; ++iter) {
      const auto mass = Occupancy(*policy);
      bool changed = false;
      for (int t = horizon() - 1; t >= 0; --t) {
        const Layer& layer = layers_[t];
        value[t].assign(layer.nodes.size(), 0.0);
        std::map<std::uint64_t, std::vector<int>> groups;
        for (std::size_t i = 0; i < layer.nodes.size(); ++i) {
          groups[layer.nodes[i].key].push_back(static_cast<int>(i));
        }
        for (const auto& [key, members] : groups) {
          std::vector<double> score(num_actions_, 0.0);
          for (std::int64_t a = 0; a < num_actions_; ++a) {
            for (int i : members) {
              if (mass[t][i] == 0.0) continue;
              score[a] += mass[t][i] *
                          Q(t, layer.nodes[i], static_cast<int>(a), value);
            }
          }
          int& current = (*policy)[key];
          const double best = *std::max_element(score.begin(), score.end());
          if (score[current] < best - kTol) {
            current = static_cast<int>(
                std::find_if(score.begin(), score.end(),
                             [&](double s) { return s >= best - kTol; }) -
                score.begin());
            changed = true;
          }
          for (int i : members) {
            value[t][i] = Q(t, layer.nodes[i], current, value);
          }
        }
      }
      if (!changed) break;
    }
    return Evaluate(*policy);
  }

  // Observation-wise coordinate ascent with exact evaluation.
  double CoordinateAscent(ActionMap* policy) const {
    double best = Evaluate(*policy);
    for (int pass = 0; pass < 100; ++pass) {
      bool changed = false;
      for (auto& [key, action] : *policy) {
        const int keep = action;
        int choice = keep;
        for (std::int64_t a = 0; a < num_actions_; ++a) {
          if (a == keep) continue;
          action = static_cast<int>(a);
          const double v = Evaluate(*policy);
          if (v > best + kTol) {
            best = v;
            choice = static_cast<int>(a);
          }
        }
        action = choice;
        changed |= choice != keep;
      }
      if (!changed) break;
    }
    return best;
  }

 private:
  std::int64_t Hidden(int state, int entry) const {
    return static_cast<std::int64_t>(state) * entries_ + entry;
  }

  double Q(int t, const Node& node, int a,
           const std::vector<std::vector<double>>& value) const {
    const Kernel& k = kernels_[node.kernel];
    double q = k.reward[a];
    if (t + 1 >= horizon()) return q;
    double future = 0.0;
    for (const auto& [s, prob] : k.successors[a]) {
      const auto found = layers_[t + 1].index.find(Hidden(s, node.entry));
      if (found != layers_[t + 1].index.end()) {
        future += prob * value[t + 1][found->second];
      }
    }
    return q + p_.game->discount() * future;
  }

  double InitialValue(const std::vector<std::vector<double>>& value) const {
    double total = 0.0;
    for (const auto& [node, mass] : initial_) total += mass * value[0][node];
    return total;
  }

  std::vector<std::vector<double>> Occupancy(const ActionMap& policy) const {
    std::vector<std::vector<double>> mass(layers_.size());
    for (std::size_t t = 0; t < layers_.size(); ++t) {
      mass[t].assign(layers_[t].nodes.size(), 0.0);
    }
    if (layers_.empty()) return mass;
    for (const auto& [node, m] : initial_) mass[0][node] += m;
    for (int t = 0; t + 1 < horizon(); ++t) {
      for (std::size_t i = 0; i < mass[t].size(); ++i) {
        if (mass[t][i] == 0.0) continue;
        const Node& node = layers_[t].nodes[i];
        const int a = policy.at(node.key);
        for (const auto& [s, prob] : kernels_[node.kernel].successors[a]) {
          const auto found = layers_[t + 1].index.find(Hidden(s, node.entry));
          if (found != layers_[t + 1].index.end()) {
            mass[t + 1][found->second] += mass[t][i] * prob;
          }
        }
      }
    }
    return mass;
  }

  int AddNode(int t, int state, int entry) {
    Layer& layer = layers_[t];
    const std::int64_t h = Hidden(state, entry);
    const auto found = layer.index.find(h);
    if (found != layer.index.end()) return found->second;
    Node node;
    node.state = state;
    node.entry = entry;
    node.key = AgentKey(p_, state);
    const auto cached = kernel_index_.find(h);
    if (cached != kernel_index_.end()) {
      node.kernel = cached->second;
    } else {
      node.kernel = static_cast<int>(kernels_.size());
      kernels_.push_back(BuildKernel(state, entry));
      kernel_index_.emplace(h, node.kernel);
    }
    layer.nodes.push_back(node);
    layer.index.emplace(h, static_cast<int>(layer.nodes.size()) - 1);
    return static_cast<int>(layer.nodes.size()) - 1;
  }

  void Build() {
    const StochasticTeamGame& g = *p_.game;
    layers_.resize(p_.horizon);
    for (const Outcome& o : g.initial_distribution()) {
      if (o.probability <= 0.0 || g.terminal(o.state)) continue;
      for (int k = 0; k < entries_; ++k) {
        const double w = p_.opponent->weights[k];
        if (w <= 0.0) continue;
        initial_.emplace_back(AddNode(0, o.state, k), o.probability * w);
      }
    }
    for (int t = 0; t + 1 < p_.horizon; ++t) {
      expanded_ = 0;
      for (std::size_t i = 0; i < layers_[t].nodes.size(); ++i) {
        const Node node = layers_[t].nodes[i];
        const Kernel& k = kernels_[node.kernel];
        std::vector<int> next;
        for (const auto& succ : k.successors) {
          for (const auto& [s, prob] : succ) {
            if (prob > 0.0 && !g.terminal(s)) next.push_back(s);
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (int s : next) AddNode(t + 1, s, node.entry);
      }
    }
    while (!layers_.empty() && layers_.back().nodes.empty()) layers_.pop_back();
  }

  Kernel BuildKernel(int state, int entry) {
    const StochasticTeamGame& g = *p_.game;
    const Team team = p_.team;
    const Team other = Other(team);
    const int n = layout_.team_size(team);
    const double sign = Sign(team);

    // Teammate action profiles (member mode) with their probabilities.
    std::vector<std::pair<JointAction, double>> mates{{JointAction(n, 0), 1.0}};
    if (p_.agent == AgentKind::kMember) {
      const auto obs = g.TeamObservations(state, team);
      for (int m = 0; m < n; ++m) {
        if (m == p_.member) continue;
        const auto dist = p_.teammates->member(m).distribution(obs[m]);
        std::vector<std::pair<JointAction, double>> grown;
        for (const auto& [partial, q] : mates) {
          for (std::size_t a = 0; a < dist.size(); ++a) {
            if (dist[a] <= 0.0) continue;
            JointAction next = partial;
            next[m] = static_cast<int>(a);
            grown.emplace_back(std::move(next), q * dist[a]);
          }
        }
        mates = std::move(grown);
      }
    }
    std::vector<std::pair<JointAction, double>> opp;
    for (const auto& [j, q] : p_.opponent->policies[entry].Support(
             layout_, other, g.TeamObservations(state, other))) {
      opp.emplace_back(layout_.DecodeJoint(other, j), q);
    }
    expanded_ += num_actions_ * static_cast<std::int64_t>(mates.size() * opp.size());
    if (expanded_ > p_.step_bound) {
      throw BoundError("best response expands more than " +
                       std::to_string(p_.step_bound) +
                       " state/joint-action pairs in one step");
    }

    Kernel k;
    k.reward.assign(num_actions_, 0.0);
    k.successors.resize(num_actions_);
    std::vector<int> actions(layout_.num_players());
    const int offset1 = team == Team::kFirst ? 0 : layout_.team_size(Team::kFirst);
    const int offset2 = team == Team::kFirst ? n : 0;
    for (std::int64_t a = 0; a < num_actions_; ++a) {
      std::map<int, double> succ;
      for (const auto& [mate, q1] : mates) {
        JointAction own = mate;
        switch (p_.agent) {
          case AgentKind::kMember:
            own[p_.member] = static_cast<int>(a);
            break;
          case AgentKind::kTeam:
            own = layout_.DecodeJoint(team, a);
            break;
          case AgentKind::kShared:
            std::fill(own.begin(), own.end(), static_cast<int>(a));
            break;
        }
        std::copy(own.begin(), own.end(), actions.begin() + offset1);
        for (const auto& [theirs, q2] : opp) {
          std::copy(theirs.begin(), theirs.end(), actions.begin() + offset2);
          const StepResult step = g.Step(state, actions);
          const double q = q1 * q2;
          k.reward[a] += q * sign * step.reward;
          for (const Outcome& o : step.outcomes) {
            if (o.probability > 0.0) succ[o.state] += q * o.probability;
          }
        }
      }
      k.successors[a].assign(succ.begin(), succ.end());
    }
    return k;
  }

  const ResponseProblem& p_;
  const TeamLayout& layout_;
  int entries_;
  std::int64_t num_actions_;
  std::vector<Layer> layers_;
  std::vector<Kernel> kernels_;
  std::unordered_map<std::int64_t, int> kernel_index_;
  std::vector<std::pair<int, double>> initial_;  // layer-0 node, mass
  std::int64_t expanded_ = 0;
};

}  // namespace

std::uint64_t AgentKey(const ResponseProblem& problem, int state) {
  const StochasticTeamGame& g = *problem.game;
  const TeamLayout& layout = g.layout();
  if (problem.agent != AgentKind::kTeam) {
    const int member = problem.agent == AgentKind::kMember ? problem.member : 0;
    return static_cast<std::uint64_t>(
        g.observation(state, layout.player_index(problem.team, member)));
  }
  std::uint64_t key = 0;
  for (int m = 0; m < layout.team_size(problem.team); ++m) {
    const int player = layout.player_index(problem.team, m);
    key = key * static_cast<std::uint64_t>(g.num_observations(player)) +
          static_cast<std::uint64_t>(g.observation(state, player));
  }
  return key;
}

bool SharedObservations(const StochasticTeamGame& game, Team team) {
  const TeamLayout& layout = game.layout();
  for (int s = 0; s < game.num_states(); ++s) {
    const int first = game.observation(s, layout.player_index(team, 0));
    for (int m = 1; m < layout.team_size(team); ++m) {
      if (game.observation(s, layout.player_index(team, m)) != first) {
        return false;
      }
    }
  }
  return true;
}

ResponseResult SolveResponse(
    const ResponseProblem& problem,
    const std::function<int(std::uint64_t)>& preferred) {
  const TeamLayout& layout = problem.game->layout();
  std::int64_t num_actions = 0;
  switch (problem.agent) {
    case AgentKind::kMember:
      num_actions = layout.action_count(problem.team, problem.member);
      break;
    case AgentKind::kTeam:
      num_actions = layout.num_joint_actions(problem.team);
      break;
    case AgentKind::kShared:
      num_actions = layout.action_count(problem.team, 0);
      break;
  }
  problem.opponent->Validate();
  Model model(problem, num_actions);

  ResponseResult result;
  std::vector<std::vector<std::vector<int>>> optimal;
  const double optimum = model.Optimal(&optimal);
  std::map<std::uint64_t, std::vector<int>> common;
  if (model.Consistent(optimal, &common)) {
    for (const auto& [key, actions] : common) {
      const int want = preferred(key);
      result.actions[key] =
          std::binary_search(actions.begin(), actions.end(), want)
              ? want
              : actions.front();
    }
    result.value = optimum;
    return result;
  }

  // No observation-based policy attains the state-based optimum; fall back to
  // monotone local search from the preferred actions.
  result.exact = false;
  const auto key_layers = model.KeyLayers();
  bool layered = true;
  for (const auto& [key, layers] : key_layers) {
    result.actions[key] = preferred(key);
    layered &= layers.size() == 1;
  }
  result.value = layered ? model.LayeredAscent(&result.actions)
                         : model.CoordinateAscent(&result.actions);
  return result;
}

}  // namespace teamcorr::internal
