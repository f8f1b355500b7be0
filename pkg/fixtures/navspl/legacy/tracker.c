/* Fleet tracker: the delivery app's positioning core. */
#include "tracker.h"

int tracker_poll_position(struct tracker *tracker) {
    tracker_scan_satellites(&tracker->view);
    if (tracker->view.satellite_count < 4) {
        return TRACKER_NO_FIX;
    }
    tracker->position.latitude = solve_latitude(&tracker->view);
    tracker->position.longitude = solve_longitude(&tracker->view);
    tracker->fix_valid = 1;
    return TRACKER_FIX_OK;
}

void tracker_log_waypoint(struct tracker *tracker, struct waypoint *waypoint) {
    waypoint->distance = position_distance(&tracker->position, &waypoint->position);
    waypoint->bearing = position_bearing(&tracker->position, &waypoint->position);
    waypoint_append_log(waypoint);
}

void tracker_signal_report(struct tracker *tracker) {
    signal_strength_sample(&tracker->view);
    antenna_status_check(&tracker->antenna);
}
