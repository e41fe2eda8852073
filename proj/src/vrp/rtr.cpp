// Record-to-record travel for the capacitated VRP.
//
// Each loop runs one uphill pass, where every node applies its best move as
// long as the resulting cost stays below record * (1 + deviation), followed
// by a downhill phase of strictly improving moves until a local optimum is
// reached. The record is the best cost seen at the end of a downhill phase.
// The search stops after maxNonImproving loops without a new record.

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "model/errors.hpp"
#include "vrp/routing.hpp"

namespace irp::vrp {

namespace {

constexpr double kImproveEps = 1e-9;
constexpr int kMaxLoops = 1000;

enum class MoveKind {
  RelocateAfter,   // a goes right after b
  RelocateBefore,  // a goes right before b
  Swap,
  ReverseBetween,  // intra: reverse the segment strictly after a up to b
  ReverseSpan,     // intra: reverse the segment from a to b inclusive
  SegmentAfter,    // intra or-opt: segment starting at a moved after b
  SegmentAfterRev,
  TailExchange,    // inter 2-opt*: a->next(b), b->next(a)
  HeadReverse,     // inter 2-opt*: a->b, next(a)->next(b)
  NewRoute,        // a alone on a fresh vehicle
};

struct Move {
  double delta = std::numeric_limits<double>::infinity();
  MoveKind kind = MoveKind::RelocateAfter;
  int a = 0;
  int b = 0;
  int segLen = 1;

  bool valid() const { return delta < std::numeric_limits<double>::infinity(); }
};

// Nodes are 1..m (stop k is node k+1); node 0 is the depot.
class RtrSearch {
public:
  RtrSearch(const RoutingProblem& p, const DistanceMatrix& dist, const RtrParams& params)
      : p_(p), d_(dist), params_(params) {
    const int m = static_cast<int>(p.stops.size());
    nodeLoad_.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int k = 0; k < m; ++k) nodeLoad_[k + 1] = p.stops[k].load;
    routeOf_.assign(static_cast<std::size_t>(m) + 1, -1);
    posOf_.assign(static_cast<std::size_t>(m) + 1, -1);

    const int k = std::min(params.neighborCount, m - 1);
    neighbors_.resize(static_cast<std::size_t>(m) + 1);
    for (int a = 1; a <= m; ++a) {
      std::vector<int> others;
      for (int b = 1; b <= m; ++b) {
        if (b != a) others.push_back(b);
      }
      std::stable_sort(others.begin(), others.end(),
                       [&](int x, int y) { return d_(a, x) < d_(a, y); });
      others.resize(static_cast<std::size_t>(std::max(k, 0)));
      neighbors_[a] = std::move(others);
    }
  }

  void load(const std::vector<std::vector<int>>& byIndex) {
    routes_.clear();
    for (const auto& r : byIndex) {
      auto& seq = routes_.emplace_back();
      for (int k : r) seq.push_back(k + 1);
    }
    reindex();
  }

  std::vector<std::vector<int>> byIndex() const {
    std::vector<std::vector<int>> out;
    for (const auto& r : routes_) {
      auto& seq = out.emplace_back();
      for (int node : r) seq.push_back(node - 1);
    }
    return out;
  }

  double cost() const { return cost_; }

  // Applies each node's best move if it keeps the cost under threshold.
  void uphillPass(const std::vector<int>& order, double threshold) {
    for (int a : order) {
      const Move mv = bestMove(a);
      if (mv.valid() && cost_ + mv.delta < threshold) apply(mv);
    }
  }

  void downhill(const std::vector<int>& order) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a : order) {
        const Move mv = bestMove(a);
        if (mv.valid() && mv.delta < -kImproveEps * std::max(1.0, cost_)) {
          apply(mv);
          improved = true;
        }
      }
    }
  }

private:
  int prevOf(int node) const {
    const auto& r = routes_[routeOf_[node]];
    const int pos = posOf_[node];
    return pos == 0 ? 0 : r[pos - 1];
  }
  int nextOf(int node) const {
    const auto& r = routes_[routeOf_[node]];
    const auto pos = static_cast<std::size_t>(posOf_[node]);
    return pos + 1 == r.size() ? 0 : r[pos + 1];
  }

  double routeLength(const std::vector<int>& seq) const {
    double len = 0.0;
    int prev = 0;
    for (int node : seq) {
      len += d_(prev, node);
      prev = node;
    }
    return len + d_(prev, 0);
  }

  void reindex() {
    routes_.erase(std::remove_if(routes_.begin(), routes_.end(),
                                 [](const auto& r) { return r.empty(); }),
                  routes_.end());
    loads_.assign(routes_.size(), 0);
    lengths_.assign(routes_.size(), 0.0);
    cost_ = 0.0;
    for (std::size_t r = 0; r < routes_.size(); ++r) {
      for (std::size_t pos = 0; pos < routes_[r].size(); ++pos) {
        const int node = routes_[r][pos];
        routeOf_[node] = static_cast<int>(r);
        posOf_[node] = static_cast<int>(pos);
        loads_[r] += nodeLoad_[node];
      }
      lengths_[r] = routeLength(routes_[r]);
      cost_ += lengths_[r];
    }
  }

  Quantity prefixLoad(int r, int pos) const {
    Quantity sum = 0;
    for (int k = 0; k <= pos; ++k) sum += nodeLoad_[routes_[r][k]];
    return sum;
  }

  // Builds the new sequence of a single route for an intra-route move.
  // Returns false when the move is a no-op or not applicable.
  bool buildIntra(const Move& mv, std::vector<int>& out) const {
    const auto& seq = routes_[routeOf_[mv.a]];
    const int pa = posOf_[mv.a];
    const int pb = posOf_[mv.b];
    out = seq;
    switch (mv.kind) {
      case MoveKind::RelocateAfter:
      case MoveKind::RelocateBefore: {
        if (mv.kind == MoveKind::RelocateAfter && pa == pb + 1) return false;
        if (mv.kind == MoveKind::RelocateBefore && pa + 1 == pb) return false;
        out.erase(out.begin() + pa);
        auto it = std::find(out.begin(), out.end(), mv.b);
        if (mv.kind == MoveKind::RelocateAfter) ++it;
        out.insert(it, mv.a);
        return true;
      }
      case MoveKind::Swap:
        std::swap(out[pa], out[pb]);
        return true;
      case MoveKind::ReverseBetween: {
        const int lo = std::min(pa, pb);
        const int hi = std::max(pa, pb);
        if (hi - lo < 2) return false;
        std::reverse(out.begin() + lo + 1, out.begin() + hi + 1);
        return true;
      }
      case MoveKind::ReverseSpan: {
        const int lo = std::min(pa, pb);
        const int hi = std::max(pa, pb);
        std::reverse(out.begin() + lo, out.begin() + hi + 1);
        return true;
      }
      case MoveKind::SegmentAfter:
      case MoveKind::SegmentAfterRev: {
        const int len = mv.segLen;
        if (pa + len > static_cast<int>(seq.size())) return false;
        if (pb >= pa - 1 && pb < pa + len) return false;
        std::vector<int> seg(out.begin() + pa, out.begin() + pa + len);
        if (mv.kind == MoveKind::SegmentAfterRev) std::reverse(seg.begin(), seg.end());
        out.erase(out.begin() + pa, out.begin() + pa + len);
        auto it = std::find(out.begin(), out.end(), mv.b);
        out.insert(it + 1, seg.begin(), seg.end());
        return true;
      }
      default:
        return false;
    }
  }

  double intraDelta(const Move& mv) {
    if (!buildIntra(mv, scratch_)) return std::numeric_limits<double>::infinity();
    return routeLength(scratch_) - lengths_[routeOf_[mv.a]];
  }

  double interDelta(const Move& mv) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int a = mv.a;
    const int b = mv.b;
    const int ra = routeOf_[a];
    const int rb = routeOf_[b];
    const int pa = prevOf(a), na = nextOf(a);
    const Quantity cap = p_.vehicleCap;
    const Quantity la = nodeLoad_[a], lb = nodeLoad_[b];
    const double removeA = d_(pa, a) + d_(a, na) - d_(pa, na);

    switch (mv.kind) {
      case MoveKind::RelocateAfter: {
        if (loads_[rb] + la > cap) return inf;
        const int nb = nextOf(b);
        return d_(b, a) + d_(a, nb) - d_(b, nb) - removeA;
      }
      case MoveKind::RelocateBefore: {
        if (loads_[rb] + la > cap) return inf;
        const int pb = prevOf(b);
        return d_(pb, a) + d_(a, b) - d_(pb, b) - removeA;
      }
      case MoveKind::Swap: {
        if (loads_[ra] - la + lb > cap || loads_[rb] - lb + la > cap) return inf;
        const int pb = prevOf(b), nb = nextOf(b);
        return d_(pa, b) + d_(b, na) - d_(pa, a) - d_(a, na) + d_(pb, a) + d_(a, nb) -
               d_(pb, b) - d_(b, nb);
      }
      case MoveKind::TailExchange: {
        const Quantity headA = prefixLoad(ra, posOf_[a]);
        const Quantity headB = prefixLoad(rb, posOf_[b]);
        if (headA + (loads_[rb] - headB) > cap || headB + (loads_[ra] - headA) > cap) return inf;
        const int nb = nextOf(b);
        return d_(a, nb) + d_(b, na) - d_(a, na) - d_(b, nb);
      }
      case MoveKind::HeadReverse: {
        const Quantity headA = prefixLoad(ra, posOf_[a]);
        const Quantity headB = prefixLoad(rb, posOf_[b]);
        if (headA + headB > cap || (loads_[ra] - headA) + (loads_[rb] - headB) > cap) return inf;
        const int nb = nextOf(b);
        return d_(a, b) + d_(na, nb) - d_(a, na) - d_(b, nb);
      }
      default:
        return inf;
    }
  }

  void consider(Move& best, Move mv) {
    const bool intra = mv.kind != MoveKind::NewRoute && routeOf_[mv.a] == routeOf_[mv.b];
    mv.delta = intra ? intraDelta(mv) : interDelta(mv);
    if (mv.delta < best.delta) best = mv;
  }

  Move bestMove(int a) {
    Move best;
    const bool aloneInRoute = routes_[routeOf_[a]].size() == 1;
    for (int b : neighbors_[a]) {
      const bool intra = routeOf_[a] == routeOf_[b];
      consider(best, {0.0, MoveKind::RelocateAfter, a, b});
      consider(best, {0.0, MoveKind::RelocateBefore, a, b});
      consider(best, {0.0, MoveKind::Swap, a, b});
      if (intra) {
        consider(best, {0.0, MoveKind::ReverseBetween, a, b});
        consider(best, {0.0, MoveKind::ReverseSpan, a, b});
        for (int len = 2; len <= 3; ++len) {
          consider(best, {0.0, MoveKind::SegmentAfter, a, b, len});
          consider(best, {0.0, MoveKind::SegmentAfterRev, a, b, len});
        }
      } else {
        consider(best, {0.0, MoveKind::TailExchange, a, b});
        consider(best, {0.0, MoveKind::HeadReverse, a, b});
      }
    }
    if (!aloneInRoute) {
      Move mv{0.0, MoveKind::NewRoute, a, a};
      const int pa = prevOf(a), na = nextOf(a);
      mv.delta = 2.0 * d_(0, a) - (d_(pa, a) + d_(a, na) - d_(pa, na));
      if (mv.delta < best.delta) best = mv;
    }
    return best;
  }

  void apply(const Move& mv) {
    const int a = mv.a;
    const int b = mv.b;
    const int ra = routeOf_[a];
    if (mv.kind == MoveKind::NewRoute) {
      auto& seq = routes_[ra];
      seq.erase(seq.begin() + posOf_[a]);
      routes_.push_back({a});
      reindex();
      return;
    }
    const int rb = routeOf_[b];
    if (ra == rb) {
      std::vector<int> out;
      if (buildIntra(mv, out)) routes_[ra] = std::move(out);
      reindex();
      return;
    }

    auto& A = routes_[ra];
    auto& B = routes_[rb];
    const int pa = posOf_[a];
    const int pb = posOf_[b];
    switch (mv.kind) {
      case MoveKind::RelocateAfter:
        A.erase(A.begin() + pa);
        B.insert(B.begin() + pb + 1, a);
        break;
      case MoveKind::RelocateBefore:
        A.erase(A.begin() + pa);
        B.insert(B.begin() + pb, a);
        break;
      case MoveKind::Swap:
        std::swap(A[pa], B[pb]);
        break;
      case MoveKind::TailExchange: {
        std::vector<int> newA(A.begin(), A.begin() + pa + 1);
        newA.insert(newA.end(), B.begin() + pb + 1, B.end());
        std::vector<int> newB(B.begin(), B.begin() + pb + 1);
        newB.insert(newB.end(), A.begin() + pa + 1, A.end());
        A = std::move(newA);
        B = std::move(newB);
        break;
      }
      case MoveKind::HeadReverse: {
        std::vector<int> newA(A.begin(), A.begin() + pa + 1);
        newA.insert(newA.end(), std::make_reverse_iterator(B.begin() + pb + 1),
                    std::make_reverse_iterator(B.begin()));
        std::vector<int> newB(A.rbegin(), std::make_reverse_iterator(A.begin() + pa + 1));
        newB.insert(newB.end(), B.begin() + pb + 1, B.end());
        A = std::move(newA);
        B = std::move(newB);
        break;
      }
      default:
        throw InvariantError("unexpected inter-route move kind");
    }
    reindex();
  }

  const RoutingProblem& p_;
  const DistanceMatrix& d_;
  RtrParams params_;
  std::vector<Quantity> nodeLoad_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> routes_;
  std::vector<Quantity> loads_;
  std::vector<double> lengths_;
  std::vector<int> routeOf_;
  std::vector<int> posOf_;
  std::vector<int> scratch_;
  double cost_ = 0.0;
};

}  // namespace

RoutingSolution rtrImprove(const RoutingProblem& p, const RoutingSolution& start,
                           std::uint64_t seed, const RtrParams& params) {
  p.check();
  if (!isFeasible(p, start)) throw ContractError("RTR start solution is infeasible");
  if (params.deviation < 0.0 || params.maxNonImproving < 1 || params.neighborCount < 1) {
    throw ContractError("invalid RTR parameters");
  }
  if (p.stops.size() < 2) return start;

  const DistanceMatrix dist(p);
  RtrSearch search(p, dist, params);
  search.load(routesByIndex(p, start));

  double record = start.totalDistance;
  std::vector<std::vector<int>> best;

  std::vector<int> order(p.stops.size());
  std::iota(order.begin(), order.end(), 1);
  std::mt19937_64 rng(seed);

  int nonImproving = 0;
  for (int loop = 0; loop < kMaxLoops && nonImproving < params.maxNonImproving; ++loop) {
    std::shuffle(order.begin(), order.end(), rng);
    search.uphillPass(order, record * (1.0 + params.deviation));
    search.downhill(order);
    if (search.cost() < record - kImproveEps * std::max(1.0, record)) {
      record = search.cost();
      best = search.byIndex();
      nonImproving = 0;
    } else {
      ++nonImproving;
    }
  }

  if (best.empty()) return start;
  return makeSolution(p, dist, best);
}

}  // namespace irp::vrp
