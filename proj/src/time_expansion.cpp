#include "sndrr/time_expansion.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace sndrr {

PartialNetwork PartialNetwork::build(const FlatNetwork& network, int horizon,
                                     std::vector<std::vector<int>> times) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (static_cast<int>(times.size()) != network.num_nodes()) {
        throw std::invalid_argument("one time set required per node");
    }
    PartialNetwork partial;
    partial.network_ = &network;
    partial.horizon_ = horizon;
    partial.times_ = std::move(times);
    for (auto& set : partial.times_) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty() || set.front() != 0) throw std::invalid_argument("every node needs time 0");
        if (set.back() > horizon) throw std::invalid_argument("timed node beyond horizon");
    }
    partial.moves_.assign(static_cast<std::size_t>(network.num_arcs()), {});
    for (ArcId a = 0; a < network.num_arcs(); ++a) partial.recompute_arcs_for(a);
    return partial;
}

PartialNetwork PartialNetwork::build_full(const FlatNetwork& network, int horizon) {
    std::vector<std::vector<int>> times(static_cast<std::size_t>(network.num_nodes()));
    for (auto& set : times) {
        set.resize(static_cast<std::size_t>(horizon) + 1);
        for (int t = 0; t <= horizon; ++t) set[static_cast<std::size_t>(t)] = t;
    }
    return build(network, horizon, std::move(times));
}

bool PartialNetwork::has_time(NodeId v, int t) const {
    const auto& set = times_[static_cast<std::size_t>(v)];
    return std::binary_search(set.begin(), set.end(), t);
}

int PartialNetwork::floor_time(NodeId v, int t) const {
    const auto& set = times_[static_cast<std::size_t>(v)];
    auto it = std::upper_bound(set.begin(), set.end(), t);
    if (it == set.begin()) throw std::logic_error("no timed copy at or below requested time");
    return *std::prev(it);
}

void PartialNetwork::recompute_arcs_for(ArcId a) {
    const Arc& arc = network_->arc(a);
    auto& copies = moves_[static_cast<std::size_t>(a)];
    copies.clear();
    for (int t : times_[static_cast<std::size_t>(arc.tail)]) {
        if (t + arc.transit > horizon_) break;
        copies.emplace_back(t, floor_time(arc.head, t + arc.transit));
    }
}

void PartialNetwork::refine(NodeId v, int t) {
    // (0, T]: auxiliary copies need not carry time T, so lengthening a short
    // arc may legitimately land exactly on the horizon.
    if (t <= 0 || t > horizon_) throw std::invalid_argument("refine time out of range");
    auto& set = times_[static_cast<std::size_t>(v)];
    auto it = std::lower_bound(set.begin(), set.end(), t);
    if (it != set.end() && *it == t) throw std::invalid_argument("timed node already present");
    set.insert(it, t);

    // New departures out of (v, t).
    for (ArcId a : network_->out_arcs(v)) {
        const Arc& arc = network_->arc(a);
        if (t + arc.transit > horizon_) continue;
        auto& copies = moves_[static_cast<std::size_t>(a)];
        const auto pos = std::lower_bound(copies.begin(), copies.end(), std::make_pair(t, 0));
        copies.insert(pos, {t, floor_time(arc.head, t + arc.transit)});
    }
    // Heads landing at v may now round to the new copy.
    for (ArcId a : network_->in_arcs(v)) {
        const Arc& arc = network_->arc(a);
        for (auto& [tail_time, head_time] : moves_[static_cast<std::size_t>(a)]) {
            if (head_time < t && tail_time + arc.transit >= t) head_time = t;
        }
    }
}

long long PartialNetwork::num_timed_nodes() const {
    long long count = 0;
    for (const auto& set : times_) count += static_cast<long long>(set.size());
    return count;
}

long long PartialNetwork::num_movement_arcs() const {
    long long count = 0;
    for (const auto& copies : moves_) count += static_cast<long long>(copies.size());
    return count;
}

long long PartialNetwork::num_holdover_arcs() const {
    long long count = 0;
    for (const auto& set : times_) count += static_cast<long long>(set.size()) - 1;
    return count;
}

std::vector<TimedArc> PartialNetwork::movement_arc_list() const {
    std::vector<TimedArc> arcs;
    for (ArcId a = 0; a < network_->num_arcs(); ++a) {
        const Arc& arc = network_->arc(a);
        for (const auto& [t, h] : moves_[static_cast<std::size_t>(a)]) {
            arcs.push_back({{arc.tail, t}, {arc.head, h}, TimedArcKind::movement, a});
        }
    }
    return arcs;
}

std::vector<TimedArc> PartialNetwork::holdover_arc_list() const {
    std::vector<TimedArc> arcs;
    for (NodeId v = 0; v < network_->num_nodes(); ++v) {
        const auto& set = times_[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i + 1 < set.size(); ++i) {
            arcs.push_back({{v, set[i]}, {v, set[i + 1]}, TimedArcKind::holdover, -1});
        }
    }
    return arcs;
}

PartialNetwork PartialNetwork::rebuilt() const { return build(*network_, horizon_, times_); }

bool PartialNetwork::same_arcs_as(const PartialNetwork& other) const {
    return times_ == other.times_ && moves_ == other.moves_;
}

void PartialNetwork::dump(std::ostream& out) const {
    for (NodeId v = 0; v < network_->num_nodes(); ++v) {
        out << "node " << v << " times:";
        for (int t : times_[static_cast<std::size_t>(v)]) out << " " << t;
        out << "\n";
    }
    for (ArcId a = 0; a < network_->num_arcs(); ++a) {
        const Arc& arc = network_->arc(a);
        for (const auto& [t, h] : moves_[static_cast<std::size_t>(a)]) {
            out << "arc " << a << " (" << arc.tail << "," << t << ")->(" << arc.head << "," << h << ")";
            if (h < t + arc.transit) out << " short";
            out << "\n";
        }
    }
}

std::vector<std::vector<int>> initial_timed_nodes(const Instance& instance) {
    std::vector<std::vector<int>> times(static_cast<std::size_t>(instance.network.num_nodes()));
    for (NodeId v = 0; v < instance.network.num_nodes(); ++v) {
        times[static_cast<std::size_t>(v)] = {0, instance.horizon};
    }
    for (const Commodity& k : instance.commodities) {
        times[static_cast<std::size_t>(k.origin)].push_back(k.release);
        times[static_cast<std::size_t>(k.dest)].push_back(k.deadline);
    }
    for (auto& set : times) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return times;
}

TimedArc map_mu(const TimedArc& full_arc, const PartialNetwork& partial) {
    if (full_arc.kind != TimedArcKind::movement) {
        throw std::invalid_argument("map_mu expects a movement arc");
    }
    const Arc& arc = partial.network().arc(full_arc.flat_arc);
    const int tail_time = partial.floor_time(arc.tail, full_arc.tail.time);
    const int head_time = partial.floor_time(arc.head, tail_time + arc.transit);
    return {{arc.tail, tail_time}, {arc.head, head_time}, TimedArcKind::movement, full_arc.flat_arc};
}

std::vector<TimedArc> Trajectory::movement_arcs() const {
    std::vector<TimedArc> result;
    for (const TimedArc& arc : arcs) {
        if (arc.kind == TimedArcKind::movement) result.push_back(arc);
    }
    return result;
}

std::vector<NodeId> Trajectory::flat_path() const {
    std::vector<NodeId> path;
    for (const TimedArc& arc : arcs) {
        if (arc.kind != TimedArcKind::movement) continue;
        if (path.empty()) path.push_back(arc.tail.node);
        path.push_back(arc.head.node);
    }
    return path;
}

bool trajectory_well_formed(const Trajectory& trajectory) {
    for (std::size_t i = 0; i + 1 < trajectory.arcs.size(); ++i) {
        if (!(trajectory.arcs[i].head == trajectory.arcs[i + 1].tail)) return false;
    }
    for (const TimedArc& arc : trajectory.arcs) {
        if (arc.kind == TimedArcKind::holdover) {
            if (arc.tail.node != arc.head.node || arc.head.time <= arc.tail.time) return false;
        }
        // Movement arcs carry no tail/head time constraint: a rounded-down
        // head in a partial network may even precede the departure time.
    }
    return true;
}

bool trajectory_feasible(const Trajectory& trajectory, const Instance& instance) {
    if (!trajectory_well_formed(trajectory) || trajectory.empty()) return false;
    const Commodity& k = instance.commodities[static_cast<std::size_t>(trajectory.commodity)];
    if (trajectory.source().node != k.origin || trajectory.sink().node != k.dest) return false;
    if (trajectory.source().time < k.release || trajectory.sink().time > k.deadline) return false;
    for (const TimedArc& arc : trajectory.arcs) {
        if (arc.kind != TimedArcKind::movement) continue;
        if (!std::binary_search(k.subgraph.begin(), k.subgraph.end(), arc.flat_arc)) return false;
        const Arc& flat = instance.network.arc(arc.flat_arc);
        if (arc.head.time != arc.tail.time + flat.transit) return false;  // exact transit in D_T
    }
    return true;
}

Trajectory map_trajectory(const Trajectory& trajectory, const PartialNetwork& partial) {
    Trajectory mapped;
    mapped.commodity = trajectory.commodity;
    TimedNode at{-1, -1};
    for (const TimedArc& arc : trajectory.movement_arcs()) {
        const TimedArc image = map_mu(arc, partial);
        if (at.node >= 0) {
            if (image.tail.time < at.time) {
                throw std::logic_error("mapped trajectory would travel back in time");
            }
            if (image.tail.time > at.time) {
                mapped.arcs.push_back({at, image.tail, TimedArcKind::holdover, -1});
            }
        }
        mapped.arcs.push_back(image);
        at = image.head;
    }
    return mapped;
}

}  // namespace sndrr
