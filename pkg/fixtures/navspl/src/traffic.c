/* Traffic feed: incidents and congestion estimates. */
#include "traffic.h"

#ifdef NAV_TRAFFIC
struct incident_feed {
    struct incident *incidents;
    int incident_count;
    long last_update;
};

void traffic_feed_poll(struct traffic_state *traffic) {
    feed_request(&traffic->feed, traffic->region);
    traffic->feed.incident_count = feed_parse_incidents(&traffic->feed);
    traffic->feed.last_update = clock_now();
    congestion_model_update(&traffic->congestion, &traffic->feed);
}

/* Delay factor >= 1.0; congestion on the segment stretches travel time. */
double traffic_delay_factor(const struct segment *segment) {
    struct congestion_sample sample;
    if (!congestion_lookup(segment->id, &sample)) {
        return 1.0;
    }
    return 1.0 + sample.delay_ratio;
}

void traffic_submit_probe(const struct traffic_probe *probe) {
    probe_queue_push(probe);
    if (probe_queue_full()) {
        probe_queue_upload();
    }
}

void traffic_report_incident(struct traffic_state *traffic, struct incident *incident) {
    incident->reported_at = clock_now();
    feed_append_incident(&traffic->feed, incident);
    congestion_model_update(&traffic->congestion, &traffic->feed);
}
#endif
