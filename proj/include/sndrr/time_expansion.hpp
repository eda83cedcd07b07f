#ifndef SNDRR_TIME_EXPANSION_HPP
#define SNDRR_TIME_EXPANSION_HPP

#include <iosfwd>
#include <tuple>
#include <vector>

#include "sndrr/instance.hpp"

namespace sndrr {

struct TimedNode {
    NodeId node = 0;
    int time = 0;

    friend bool operator==(const TimedNode& a, const TimedNode& b) {
        return a.node == b.node && a.time == b.time;
    }
    friend bool operator<(const TimedNode& a, const TimedNode& b) {
        return std::tie(a.node, a.time) < std::tie(b.node, b.time);
    }
};

enum class TimedArcKind { movement, holdover };

struct TimedArc {
    TimedNode tail;
    TimedNode head;
    TimedArcKind kind = TimedArcKind::movement;
    ArcId flat_arc = -1;  // movement arcs only

    friend bool operator==(const TimedArc& a, const TimedArc& b) {
        return a.tail == b.tail && a.head == b.head && a.kind == b.kind && a.flat_arc == b.flat_arc;
    }
    friend bool operator<(const TimedArc& a, const TimedArc& b) {
        return std::tie(a.flat_arc, a.tail, a.head) < std::tie(b.flat_arc, b.tail, b.head);
    }
};

// A timed arc underestimates its transit when the head copy was rounded down.
inline bool is_short(const TimedArc& arc, const FlatNetwork& network) {
    return arc.kind == TimedArcKind::movement &&
           arc.head.time < arc.tail.time + network.arc(arc.flat_arc).transit;
}

// Partially time-expanded network. The per-node time sets are the source of
// truth; movement arcs are always exactly those forced by the arc-copy rule
//   head time = max{r <= tail time + transit : (head node, r) present},
// and holdover arcs connect consecutive copies. Every node carries time 0 so
// the rule is well defined for every departure.
class PartialNetwork {
public:
    PartialNetwork() = default;

    static PartialNetwork build(const FlatNetwork& network, int horizon,
                                std::vector<std::vector<int>> times);
    static PartialNetwork build_full(const FlatNetwork& network, int horizon);

    const FlatNetwork& network() const { return *network_; }
    int horizon() const { return horizon_; }

    const std::vector<int>& times(NodeId v) const { return times_[static_cast<std::size_t>(v)]; }
    bool has_time(NodeId v, int t) const;
    // Largest present time <= t at v (>= 0 always, since time 0 is present).
    int floor_time(NodeId v, int t) const;

    // Movement copies of flat arc a as (tail time, head time), sorted by tail.
    const std::vector<std::pair<int, int>>& movements(ArcId a) const {
        return moves_[static_cast<std::size_t>(a)];
    }

    // Inserts one timed node and restores the arc-copy rule incrementally,
    // touching only arcs incident to `v`. Throws on duplicates / range.
    void refine(NodeId v, int t);

    long long num_timed_nodes() const;
    long long num_movement_arcs() const;
    long long num_holdover_arcs() const;

    std::vector<TimedArc> movement_arc_list() const;
    std::vector<TimedArc> holdover_arc_list() const;

    // Full recomputation from the time sets; testing oracle for refine().
    PartialNetwork rebuilt() const;
    bool same_arcs_as(const PartialNetwork& other) const;

    // Text dump: per-node time sets and derived arcs with a `short` flag.
    void dump(std::ostream& out) const;

private:
    const FlatNetwork* network_ = nullptr;
    int horizon_ = 0;
    std::vector<std::vector<int>> times_;
    std::vector<std::vector<std::pair<int, int>>> moves_;  // per flat arc

    void recompute_arcs_for(ArcId a);
};

// The minimal time sets: (o_k, r_k), (d_k, l_k), and (v, 0), (v, T) for all v.
std::vector<std::vector<int>> initial_timed_nodes(const Instance& instance);

// Movement-arc image under the rounding map: tail rounds down to a present
// time, then the head rounds down from (rounded tail) + transit.
TimedArc map_mu(const TimedArc& full_arc, const PartialNetwork& partial);

// A path in a time-expanded network, stored as its ordered arcs.
struct Trajectory {
    int commodity = -1;
    std::vector<TimedArc> arcs;

    bool empty() const { return arcs.empty(); }
    TimedNode source() const { return arcs.front().tail; }
    TimedNode sink() const { return arcs.back().head; }
    std::vector<TimedArc> movement_arcs() const;
    // Node sequence of the flat projection (movement arcs only).
    std::vector<NodeId> flat_path() const;
};

// Consecutive arcs must chain head-to-tail; movement arcs must stay inside
// the commodity subgraph and the [release, deadline] window.
bool trajectory_well_formed(const Trajectory& trajectory);
bool trajectory_feasible(const Trajectory& trajectory, const Instance& instance);

// Image of a full-network trajectory: movement arcs mapped through map_mu,
// holdovers re-inserted (well defined by the tail-monotonicity argument).
Trajectory map_trajectory(const Trajectory& trajectory, const PartialNetwork& partial);

}  // namespace sndrr

#endif  // SNDRR_TIME_EXPANSION_HPP
