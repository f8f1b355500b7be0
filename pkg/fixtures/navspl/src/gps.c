/* GPS receiver handling: satellites, fixes and waypoints. */
#include "gps.h"

#ifdef NAV_GPS
struct satellite_view {
    int satellite_count;
    double signal_strength[GPS_MAX_SATELLITES];
};

int gps_receiver_open(struct gps_receiver *receiver) {
    receiver->fix_valid = 0;
    receiver->satellite_view.satellite_count = 0;
    return gps_channel_open(&receiver->channel);
}

/* A fix needs four satellites; fall back to the last known position. */
int gps_acquire_fix(struct gps_receiver *receiver, struct position *position) {
    gps_scan_satellites(&receiver->satellite_view);
    if (receiver->satellite_view.satellite_count < 4) {
        position_copy(position, &receiver->last_position);
        return GPS_NO_FIX;
    }
    receiver->fix_valid = 1;
    position->latitude = gps_solve_latitude(&receiver->satellite_view);
    position->longitude = gps_solve_longitude(&receiver->satellite_view);
    position_copy(&receiver->last_position, position);
    return GPS_FIX_OK;
}

void gps_track_waypoint(struct gps_receiver *receiver, struct waypoint *waypoint) {
    struct position position;
    if (gps_acquire_fix(receiver, &position) != GPS_FIX_OK) {
        return;
    }
    waypoint->distance = position_distance(&position, &waypoint->position);
    waypoint->bearing = position_bearing(&position, &waypoint->position);
    if (waypoint->distance < waypoint->arrival_radius) {
        waypoint_mark_reached(waypoint);
    }
}

#ifdef NAV_TRAFFIC
/* Traffic probes piggyback on the positioning stream. */
void gps_report_probe(struct gps_receiver *receiver) {
    struct traffic_probe probe;
    probe.position = receiver->last_position;
    probe.speed = receiver->speed;
    traffic_submit_probe(&probe);
}
#endif

void gps_receiver_close(struct gps_receiver *receiver) {
    gps_channel_close(&receiver->channel);
    receiver->fix_valid = 0;
}
#endif
