#include "sndrr/mip_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sndrr {

namespace {

std::vector<NodeId> subgraph_nodes(const FlatNetwork& net, const std::vector<ArcId>& arcs) {
    std::set<NodeId> nodes;
    for (ArcId a : arcs) {
        nodes.insert(net.arc(a).tail);
        nodes.insert(net.arc(a).head);
    }
    return {nodes.begin(), nodes.end()};
}

int ceil_trucks(double load, int capacity) {
    return static_cast<int>(std::ceil(load / capacity - 1e-9));
}

// Rows shared by every formulation, emitted in a fixed order: balance,
// capacity, optional transit budget. Capacity rows are keyed by flat timed
// arcs; `capacity_terms` carries the demand-weighted flow columns per key.
void add_rows_and_trucks(
    SndModel& model, const Instance& instance, const PartialNetwork& flat_network,
    const std::vector<std::vector<int>>& balance_nodes,
    const std::vector<const std::vector<int>*>& times_of_node,
    std::map<std::pair<ArcId, int>, std::vector<std::pair<int, double>>>& capacity_terms,
    bool with_budget, const std::vector<std::vector<std::pair<int, double>>>& budget_terms) {
    const FlatNetwork& flat = flat_network.network();

    // Truck columns over the flat timed movement arcs.
    double total_demand = 0.0;
    for (const Commodity& k : instance.commodities) total_demand += k.demand;
    for (ArcId a = 0; a < flat.num_arcs(); ++a) {
        const Arc& arc = flat.arc(a);
        // Valid truck bound: no timed arc ever carries more than all demand.
        const double max_trucks = std::floor(total_demand / arc.capacity) + 1.0;
        for (const auto& [t, h] : flat_network.movements(a)) {
            model.truck_vars.push_back({a, t, h});
            model.lp.add_col(0.0, max_trucks, arc.fixed_cost, /*is_integer=*/true);
        }
    }

    // Balance rows, one per commodity and timed node of its subgraph.
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        std::map<std::pair<NodeId, int>, std::vector<std::pair<int, double>>> rows;
        for (NodeId v : balance_nodes[ki]) {
            for (int t : *times_of_node[static_cast<std::size_t>(v)]) rows[{v, t}];
        }
        for (int col = 0; col < static_cast<int>(model.flow_vars.size()); ++col) {
            const FlowVarInfo& info = model.flow_vars[static_cast<std::size_t>(col)];
            if (info.commodity != static_cast<int>(ki)) continue;
            rows[{info.tail_node, info.tail_time}].emplace_back(col, 1.0);
            rows[{info.head_node, info.head_time}].emplace_back(col, -1.0);
        }
        for (auto& [key, entries] : rows) {
            double rhs = 0.0;
            const TimedNode node{key.first, key.second};
            if (node == model.sources[ki]) rhs += 1.0;
            if (node == model.sinks[ki]) rhs -= 1.0;
            model.lp.add_row(rhs, rhs, std::move(entries));
            ++model.balance_rows;
        }
    }

    // Capacity rows in (flat arc, departure) order.
    int truck_index = 0;
    for (ArcId a = 0; a < flat.num_arcs(); ++a) {
        const Arc& arc = flat.arc(a);
        for (const auto& [t, h] : flat_network.movements(a)) {
            std::vector<std::pair<int, double>> entries;
            auto it = capacity_terms.find({a, t});
            if (it != capacity_terms.end()) entries = std::move(it->second);
            entries.emplace_back(model.truck_col(truck_index), -static_cast<double>(arc.capacity));
            model.lp.add_row(-kInfinity, 0.0, std::move(entries));
            ++model.capacity_rows;
            ++truck_index;
        }
    }

    if (with_budget) {
        for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
            const Commodity& k = instance.commodities[ki];
            model.lp.add_row(-kInfinity, k.deadline - k.release, budget_terms[ki]);
            ++model.budget_rows;
        }
    }
}

SndModel build_flat_model(const Instance& instance, const PartialNetwork& partial, bool with_budget,
                          ModelKind kind) {
    SndModel model;
    model.kind = kind;
    const FlatNetwork& net = instance.network;

    std::map<std::pair<ArcId, int>, std::vector<std::pair<int, double>>> capacity_terms;
    std::vector<std::vector<std::pair<int, double>>> budget_terms(instance.commodities.size());
    std::vector<std::vector<int>> balance_nodes(instance.commodities.size());

    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        const Commodity& k = instance.commodities[ki];
        model.sources.push_back({k.origin, k.release});
        model.sinks.push_back({k.dest, k.deadline});
        balance_nodes[ki] = subgraph_nodes(net, k.subgraph);
        for (ArcId a : k.subgraph) {
            const Arc& arc = net.arc(a);
            for (const auto& [t, h] : partial.movements(a)) {
                FlowVarInfo info{static_cast<int>(ki), a, arc.tail, t, arc.head, h};
                const int col = model.lp.add_col(0.0, 1.0, arc.var_cost * k.demand, true);
                model.flow_vars.push_back(info);
                capacity_terms[{a, t}].emplace_back(col, k.demand);
                budget_terms[ki].emplace_back(col, static_cast<double>(arc.transit));
            }
        }
        for (NodeId v : balance_nodes[ki]) {
            const auto& times = partial.times(v);
            for (std::size_t i = 0; i + 1 < times.size(); ++i) {
                FlowVarInfo info{static_cast<int>(ki), -1, v, times[i], v, times[i + 1]};
                model.lp.add_col(0.0, 1.0, 0.0, true);
                model.flow_vars.push_back(info);
            }
        }
    }

    std::vector<const std::vector<int>*> times_of_node;
    for (NodeId v = 0; v < net.num_nodes(); ++v) times_of_node.push_back(&partial.times(v));
    add_rows_and_trucks(model, instance, partial, balance_nodes, times_of_node, capacity_terms,
                        with_budget, budget_terms);
    return model;
}

SndModel build_aux_model(const Instance& instance, const AuxGraph& aux,
                         const PartialNetwork& aux_partial, const PartialNetwork& projection,
                         const std::vector<AuxCommodity>& mapped, bool with_budget, ModelKind kind) {
    SndModel model;
    model.kind = kind;
    model.aux = &aux;

    std::map<std::pair<ArcId, int>, std::vector<std::pair<int, double>>> capacity_terms;
    std::vector<std::vector<std::pair<int, double>>> budget_terms(instance.commodities.size());
    std::vector<std::vector<int>> balance_nodes(instance.commodities.size());

    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        const Commodity& k = instance.commodities[ki];
        model.sources.push_back({mapped[ki].origin, k.release});
        model.sinks.push_back({mapped[ki].dest, k.deadline});
        balance_nodes[ki] = mapped[ki].nodes;
        for (ArcId e : mapped[ki].arcs) {
            const Arc& arc = aux.graph().arc(e);
            const ArcId flat_arc = aux.flat_arc(e);
            for (const auto& [t, h] : aux_partial.movements(e)) {
                FlowVarInfo info{static_cast<int>(ki), e, arc.tail, t, arc.head, h};
                const int col = model.lp.add_col(0.0, 1.0, arc.var_cost * k.demand, true);
                model.flow_vars.push_back(info);
                capacity_terms[{flat_arc, t}].emplace_back(col, k.demand);
                budget_terms[ki].emplace_back(col, static_cast<double>(arc.transit));
            }
        }
        for (NodeId u : mapped[ki].nodes) {
            const auto& times = aux_partial.times(u);
            for (std::size_t i = 0; i + 1 < times.size(); ++i) {
                FlowVarInfo info{static_cast<int>(ki), -1, u, times[i], u, times[i + 1]};
                model.lp.add_col(0.0, 1.0, 0.0, true);
                model.flow_vars.push_back(info);
            }
        }
    }

    std::vector<const std::vector<int>*> times_of_node;
    for (NodeId u = 0; u < aux.num_aux_nodes(); ++u) times_of_node.push_back(&aux_partial.times(u));
    add_rows_and_trucks(model, instance, projection, balance_nodes, times_of_node, capacity_terms,
                        with_budget, budget_terms);
    return model;
}

}  // namespace

long SndModel::movement_flow_vars() const {
    long count = 0;
    for (const FlowVarInfo& info : flow_vars) {
        if (info.arc >= 0) ++count;
    }
    return count;
}

SndModel build_full_model(const Instance& instance) {
    const PartialNetwork full = PartialNetwork::build_full(instance.network, instance.horizon);
    return build_flat_model(instance, full, /*with_budget=*/false, ModelKind::full_flat);
}

SndModel build_partial_model(const Instance& instance, const PartialNetwork& partial) {
    return build_flat_model(instance, partial, /*with_budget=*/true, ModelKind::partial_flat);
}

SndModel build_full_aux_model(const Instance& instance, const AuxGraph& aux) {
    const PartialNetwork aux_full = PartialNetwork::build_full(aux.graph(), instance.horizon);
    const PartialNetwork projection = project_to_flat(aux, aux_full);
    std::vector<AuxCommodity> mapped;
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        mapped.push_back(map_commodity_subgraph(aux, instance, static_cast<int>(ki)));
    }
    return build_aux_model(instance, aux, aux_full, projection, mapped, /*with_budget=*/false,
                           ModelKind::full_aux);
}

SndModel build_aux_partial_model(const Instance& instance, const AuxGraph& aux,
                                 const PartialNetwork& aux_partial,
                                 const PartialNetwork& projection,
                                 const ConsolidationClasses& classes,
                                 const std::vector<AuxCommodity>& mapped) {
    // The consolidation classes are definitionally the (flat arc, departure)
    // buckets the builder derives from the aux movement arcs; they are passed
    // in so the caller can reuse them for the upper-bound step.
    (void)classes;
    return build_aux_model(instance, aux, aux_partial, projection, mapped, /*with_budget=*/true,
                           ModelKind::partial_aux);
}

std::vector<std::string> SndModel::column_names() const {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(lp.num_cols()));
    const auto node_name = [this](NodeId v) {
        if (aux != nullptr) return aux->aux_node_name(v);
        std::ostringstream s;
        s << "v" << v;
        return s.str();
    };
    for (const FlowVarInfo& info : flow_vars) {
        std::ostringstream s;
        s << "x_k" << info.commodity << "_" << node_name(info.tail_node) << "_t" << info.tail_time
          << "_" << node_name(info.head_node) << "_t" << info.head_time;
        names.push_back(s.str());
    }
    for (const TruckVarInfo& info : truck_vars) {
        std::ostringstream s;
        s << "y_a" << info.flat_arc << "_t" << info.tail_time;
        names.push_back(s.str());
    }
    return names;
}

std::vector<std::string> SndModel::row_names() const {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(lp.num_rows()));
    for (int i = 0; i < balance_rows; ++i) {
        std::ostringstream s;
        s << "bal" << i;
        names.push_back(s.str());
    }
    for (int i = 0; i < capacity_rows; ++i) {
        std::ostringstream s;
        s << "cap_a" << truck_vars[static_cast<std::size_t>(i)].flat_arc << "_t"
          << truck_vars[static_cast<std::size_t>(i)].tail_time;
        names.push_back(s.str());
    }
    for (int i = 0; i < budget_rows; ++i) {
        std::ostringstream s;
        s << "budget_k" << i;
        names.push_back(s.str());
    }
    return names;
}

void SndModel::write_lp(std::ostream& out) const { write_lp_format(lp, column_names(), row_names(), out); }

std::vector<Trajectory> extract_trajectories(const SndModel& model, const Instance& instance,
                                             const std::vector<double>& solution) {
    std::vector<Trajectory> trajectories;
    std::vector<char> used(model.flow_vars.size(), 0);
    std::vector<char> visited(model.flow_vars.size(), 0);
    for (std::size_t col = 0; col < model.flow_vars.size(); ++col) {
        const double v = solution[col];
        if (std::abs(v - std::round(v)) > kIntegralityTol) {
            throw std::runtime_error("extract_trajectories: fractional flow value");
        }
        used[col] = std::round(v) > 0.5 ? 1 : 0;
    }

    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        // Outgoing used arcs per timed node, smallest column first.
        std::map<std::pair<NodeId, int>, std::vector<int>> outgoing;
        for (std::size_t col = 0; col < model.flow_vars.size(); ++col) {
            if (!used[col]) continue;
            const FlowVarInfo& info = model.flow_vars[col];
            if (info.commodity != static_cast<int>(ki)) continue;
            outgoing[{info.tail_node, info.tail_time}].push_back(static_cast<int>(col));
        }
        Trajectory trajectory;
        trajectory.commodity = static_cast<int>(ki);
        TimedNode at = model.sources[ki];
        const TimedNode sink = model.sinks[ki];
        while (!(at == sink)) {
            auto it = outgoing.find({at.node, at.time});
            if (it == outgoing.end() || it->second.empty()) {
                throw std::runtime_error("extract_trajectories: flow is disconnected");
            }
            const int col = it->second.front();
            it->second.erase(it->second.begin());
            visited[static_cast<std::size_t>(col)] = 1;
            const FlowVarInfo& info = model.flow_vars[static_cast<std::size_t>(col)];
            const TimedArcKind kind =
                info.arc >= 0 ? TimedArcKind::movement : TimedArcKind::holdover;
            trajectory.arcs.push_back({{info.tail_node, info.tail_time},
                                       {info.head_node, info.head_time},
                                       kind,
                                       info.arc});
            at = {info.head_node, info.head_time};
        }
        trajectories.push_back(std::move(trajectory));
    }
    for (std::size_t col = 0; col < model.flow_vars.size(); ++col) {
        if (used[col] && !visited[col]) {
            throw std::runtime_error("extract_trajectories: leftover flow outside any trajectory");
        }
    }
    return trajectories;
}

namespace {

double price_keyed_trajectories(const Instance& instance,
                                const std::vector<Trajectory>& trajectories,
                                const AuxGraph* aux) {
    const FlatNetwork& flat = instance.network;
    double variable_cost = 0.0;
    std::map<std::pair<ArcId, int>, double> loads;
    for (const Trajectory& trajectory : trajectories) {
        const Commodity& k = instance.commodities[static_cast<std::size_t>(trajectory.commodity)];
        for (const TimedArc& arc : trajectory.arcs) {
            if (arc.kind != TimedArcKind::movement) continue;
            const ArcId flat_arc = aux != nullptr ? aux->flat_arc(arc.flat_arc) : arc.flat_arc;
            variable_cost += flat.arc(flat_arc).var_cost * k.demand;
            loads[{flat_arc, arc.tail.time}] += k.demand;
        }
    }
    double fixed_cost = 0.0;
    for (const auto& [key, load] : loads) {
        const Arc& arc = flat.arc(key.first);
        fixed_cost += arc.fixed_cost * ceil_trucks(load, arc.capacity);
    }
    return variable_cost + fixed_cost;
}

}  // namespace

double reprice_trajectories(const SndModel& model, const Instance& instance,
                            const std::vector<Trajectory>& trajectories) {
    return price_keyed_trajectories(instance, trajectories, model.aux);
}

double price_flat_trajectories(const Instance& instance,
                               const std::vector<Trajectory>& trajectories) {
    return price_keyed_trajectories(instance, trajectories, nullptr);
}

}  // namespace sndrr
