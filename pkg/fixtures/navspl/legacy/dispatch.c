/* Delivery dispatch: route vans between depots and stops. */
#include "dispatch.h"

struct route *dispatch_plan_route(struct depot *depot, struct stop *stops, int stop_count) {
    struct route *route = route_alloc(stop_count + 2);
    route_set_origin(route, depot->position);
    for (int i = 0; i < stop_count; i++) {
        route_append_stop(route, &stops[i]);
    }
    route_optimize(route);
    return route;
}

void dispatch_reroute_van(struct van *van, struct route *route) {
    route_invalidate(route);
    dispatch_plan_route(van->depot, van->stops, van->stop_count);
    van->reroute_count++;
}

double dispatch_route_cost(const struct route *route) {
    double cost = 0.0;
    for (int i = 0; i < route->segment_count; i++) {
        cost += segment_length(route->segments[i]) / segment_speed(route->segments[i]);
    }
    return cost;
}
