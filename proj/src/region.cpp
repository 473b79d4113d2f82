#include "bernoulli/region.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace bernoulli {

Region box_region(const AxisBox& box) {
  Region region;
  region.dim = static_cast<unsigned>(box.dim());
  region.bbox_lo = box.lo();
  region.bbox_hi = box.hi();
  for (unsigned j = 0; j < region.dim; ++j) {
    std::vector<int> normal(region.dim, 0);
    normal[j] = -1;
    region.constraints.push_back({normal, -box.lo()[j]});
    normal[j] = 1;
    region.constraints.push_back({normal, box.hi()[j]});
  }
  return region;
}

Region l1_ball_region(const RationalVector& center, const Rational& radius) {
  Region region;
  region.dim = static_cast<unsigned>(center.size());
  for (const auto& c : center) {
    region.bbox_lo.push_back(c - radius);
    region.bbox_hi.push_back(c + radius);
  }
  const std::size_t corners = std::size_t{1} << region.dim;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    HalfSpace h;
    h.normal.resize(region.dim);
    h.offset = radius;
    for (unsigned j = 0; j < region.dim; ++j) {
      h.normal[j] = (mask >> j) & 1U ? -1 : 1;
      h.offset += h.normal[j] * center[j];
    }
    region.constraints.push_back(std::move(h));
  }
  return region;
}

namespace {

// normal . t <= c in the coordinates t in [0, 1)^N of the current cube.
struct Constraint {
  std::vector<int> normal;
  Rational c;
};

enum class StateKind { Empty, Full, Partial };

int normal_min(const std::vector<int>& n) {
  int v = 0;
  for (int x : n) v += std::min(x, 0);
  return v;
}

int normal_max(const std::vector<int>& n) {
  int v = 0;
  for (int x : n) v += std::max(x, 0);
  return v;
}

// Drops constraints that hold on the whole cube, detects empty states and
// merges parallel constraints. Leaves the list sorted.
StateKind normalize(std::vector<Constraint>& cons) {
  std::vector<Constraint> kept;
  kept.reserve(cons.size());
  for (auto& con : cons) {
    if (con.c >= normal_max(con.normal)) continue;
    if (con.c <= normal_min(con.normal)) return StateKind::Empty;
    kept.push_back(std::move(con));
  }
  std::sort(kept.begin(), kept.end(), [](const Constraint& a, const Constraint& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.c < b.c;
  });
  std::vector<Constraint> merged;
  merged.reserve(kept.size());
  for (auto& con : kept) {
    if (!merged.empty() && merged.back().normal == con.normal) continue;
    merged.push_back(std::move(con));
  }
  cons = std::move(merged);
  return cons.empty() ? StateKind::Full : StateKind::Partial;
}

std::string state_key(const std::vector<Constraint>& cons) {
  std::string key;
  for (const auto& con : cons) {
    for (int x : con.normal) key.push_back(static_cast<char>('1' + x));
    key.push_back(':');
    key += con.c.get_str();
    key.push_back(';');
  }
  return key;
}

// Denominators with a long period under multiplication by p blow up the state space.
constexpr std::size_t kMaxStates = 20000;

class RegionSolver {
 public:
  explicit RegionSolver(const Measure& measure) : measure_(measure) {
    const unsigned n = measure.dim();
    digits_.resize(measure.child_count(), std::vector<int>(n));
    for (std::size_t i = 0; i < measure.child_count(); ++i) {
      for (unsigned j = 0; j < n; ++j) digits_[i][j] = static_cast<int>(measure.digit(i, j));
    }
  }

  Rational value(std::vector<Constraint> cons) {
    switch (normalize(cons)) {
      case StateKind::Empty: return Rational(0);
      case StateKind::Full: return Rational(1);
      case StateKind::Partial: break;
    }
    std::string key = state_key(cons);
    if (auto hit = measure_.region_cache().find(key)) return *hit;
    const int id = node_for(std::move(cons), std::move(key));
    strong_connect(id);
    return nodes_[id].value;
  }

 private:
  struct Node {
    std::vector<Constraint> cons;
    std::string key;
    int index = -1;
    int lowlink = -1;
    bool on_stack = false;
    bool solved = false;
    Rational constant;
    std::vector<std::pair<int, Rational>> edges;
    Rational value;
  };

  int node_for(std::vector<Constraint> cons, std::string key) {
    auto [it, inserted] = ids_.try_emplace(key, static_cast<int>(nodes_.size()));
    if (inserted) {
      if (nodes_.size() >= kMaxStates) throw Error(ErrorCode::GenerationTooLarge, "region state space too large");
      Node node;
      node.cons = std::move(cons);
      node.key = std::move(key);
      nodes_.push_back(std::move(node));
    }
    return it->second;
  }

  void expand(int id) {
    const unsigned p = measure_.p();
    std::unordered_map<int, Rational> weights;
    Rational constant(0);
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      std::vector<Constraint> child = nodes_[id].cons;
      for (auto& con : child) {
        int dot = 0;
        for (std::size_t j = 0; j < con.normal.size(); ++j) dot += con.normal[j] * digits_[i][j];
        con.c = Rational(p) * con.c - dot;
      }
      const Rational& prob = measure_.probability(i);
      switch (normalize(child)) {
        case StateKind::Empty: continue;
        case StateKind::Full: constant += prob; continue;
        case StateKind::Partial: break;
      }
      std::string key = state_key(child);
      if (auto local = ids_.find(key); local != ids_.end() && nodes_[local->second].solved) {
        constant += prob * nodes_[local->second].value;
        continue;
      }
      if (auto hit = measure_.region_cache().find(key)) {
        constant += prob * *hit;
        continue;
      }
      const int child_id = node_for(std::move(child), std::move(key));
      weights[child_id] += prob;
    }
    nodes_[id].constant = constant;
    nodes_[id].edges.assign(weights.begin(), weights.end());
    std::sort(nodes_[id].edges.begin(), nodes_[id].edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  void strong_connect(int v) {
    nodes_[v].index = nodes_[v].lowlink = counter_++;
    stack_.push_back(v);
    nodes_[v].on_stack = true;
    expand(v);
    for (std::size_t e = 0; e < nodes_[v].edges.size(); ++e) {
      const int w = nodes_[v].edges[e].first;
      if (nodes_[w].index < 0) {
        strong_connect(w);
        nodes_[v].lowlink = std::min(nodes_[v].lowlink, nodes_[w].lowlink);
      } else if (nodes_[w].on_stack) {
        nodes_[v].lowlink = std::min(nodes_[v].lowlink, nodes_[w].index);
      }
    }
    if (nodes_[v].lowlink != nodes_[v].index) return;

    std::vector<int> component;
    int w = -1;
    do {
      w = stack_.back();
      stack_.pop_back();
      nodes_[w].on_stack = false;
      component.push_back(w);
    } while (w != v);
    solve_component(component);
  }

  void solve_component(const std::vector<int>& component) {
    const std::size_t n = component.size();
    std::unordered_map<int, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) position[component[i]] = i;

    // (I - W) x = b over the component; edges leaving it point at solved nodes.
    std::vector<RationalVector> a(n, RationalVector(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      const Node& node = nodes_[component[i]];
      a[i][i] = 1;
      a[i][n] = node.constant;
      for (const auto& [target, weight] : node.edges) {
        if (auto it = position.find(target); it != position.end()) {
          a[i][it->second] -= weight;
        } else {
          a[i][n] += weight * nodes_[target].value;
        }
      }
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
      if (pivot == n) throw Error(ErrorCode::SingularSystem, "region state system is singular");
      std::swap(a[pivot], a[col]);
      const Rational inv = Rational(1) / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[col][k] *= inv;
      for (std::size_t row = 0; row < n; ++row) {
        if (row == col || sgn(a[row][col]) == 0) continue;
        const Rational f = a[row][col];
        for (std::size_t k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Node& node = nodes_[component[i]];
      node.value = a[i][n];
      node.solved = true;
      measure_.region_cache().insert(node.key, node.value);
    }
  }

  const Measure& measure_;
  std::vector<std::vector<int>> digits_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, int> ids_;
  std::vector<int> stack_;
  int counter_ = 0;
};

}  // namespace

Rational region_measure(const Measure& measure, const Region& region, std::size_t max_unit_cells) {
  if (region.dim != measure.dim()) throw Error(ErrorCode::DimensionMismatch, "region and measure differ in dimension");
  const Rational half(1, 2);
  std::vector<long long> first(region.dim), count(region.dim);
  std::size_t cells = 1;
  for (unsigned j = 0; j < region.dim; ++j) {
    first[j] = to_int64(floor(region.bbox_lo[j] + half));
    const long long last = to_int64(ceil(region.bbox_hi[j] + half)) - 1;
    count[j] = std::max(0LL, last - first[j] + 1);
    cells *= static_cast<std::size_t>(count[j]);
    if (cells > max_unit_cells) throw Error(ErrorCode::GenerationTooLarge, "region spans too many unit cells");
  }
  if (cells == 0) return Rational(0);

  RegionSolver solver(measure);
  Rational total(0);
  std::vector<long long> z(first);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::vector<Constraint> cons;
    cons.reserve(region.constraints.size());
    for (const auto& h : region.constraints) {
      Rational shift(0);
      for (unsigned j = 0; j < region.dim; ++j) shift += h.normal[j] * (Rational(static_cast<long>(z[j])) - half);
      cons.push_back({h.normal, h.offset - shift});
    }
    total += solver.value(std::move(cons));
    for (unsigned j = region.dim; j-- > 0;) {
      if (++z[j] < first[j] + count[j]) break;
      z[j] = first[j];
    }
  }
  return total;
}

}  // namespace bernoulli
