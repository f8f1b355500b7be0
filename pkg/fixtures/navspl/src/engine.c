/* Routing engine: shortest-path search over the road graph. */
#include "engine.h"

#ifdef ENGINE
/* Road network as an adjacency list; nodes are junctions, edges are segments. */
struct road_graph {
    struct junction *junctions;
    struct segment *segments;
    int junction_count;
    int segment_count;
};

void engine_graph_load(struct engine_state *engine, const char *graph_path) {
    graph_reader_open(graph_path);
    engine->graph.junction_count = graph_reader_junctions(&engine->graph.junctions);
    engine->graph.segment_count = graph_reader_segments(&engine->graph.segments);
    graph_reader_close();
}

/* Dijkstra search seeded from the current position. */
struct route *engine_compute_route(struct engine_state *engine,
                                   struct position origin,
                                   struct position destination) {
    struct route *route = route_alloc(engine->graph.junction_count);
    heap_reset(&engine->frontier);
    heap_push(&engine->frontier, junction_near(origin), 0.0);
    while (!heap_empty(&engine->frontier)) {
        struct junction *junction = heap_pop(&engine->frontier);
        if (junction_matches(junction, destination)) {
            route_backtrack(route, junction);
            break;
        }
        engine_relax_segments(engine, junction);
    }
    route_finalize(route);
    return route;
}

void engine_relax_segments(struct engine_state *engine, struct junction *junction) {
    for (int i = 0; i < junction->segment_count; i++) {
        struct segment *segment = junction->segments[i];
        double cost = junction->cost + segment_travel_cost(segment);
        if (cost < segment->target->cost) {
            segment->target->cost = cost;
            segment->target->previous = junction;
            heap_push(&engine->frontier, segment->target, cost);
        }
    }
}

double segment_travel_cost(const struct segment *segment) {
    double cost = segment->length / segment->speed_limit;
#ifdef NAV_TRAFFIC
    /* Congestion stretches the estimated travel time per segment. */
    cost *= traffic_delay_factor(segment);
#endif
    return cost;
}

void engine_reroute(struct engine_state *engine, struct route *route) {
    route_invalidate(route);
    engine->reroute_count++;
    engine_compute_route(engine, position_current(), route_destination(route));
}
#endif
