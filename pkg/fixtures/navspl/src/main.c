/* NavSPL entry point: wires the platform together. */
#include "nav.h"
#include "engine.h"
#include "map.h"

static struct nav_context global_context;

int nav_boot(struct nav_options *options) {
    nav_context_init(&global_context, options);
    nav_log_open(options->log_path);
    nav_settings_load(&global_context.settings);
    return nav_dispatch_loop(&global_context);
}

#ifdef ENGINE
/* The routing engine starts before any consumer of routes. */
static int engine_boot(struct nav_context *context) {
    engine_state_reset(&context->engine);
    engine_graph_load(&context->engine, context->settings.graph_path);
    engine_heap_prepare(&context->engine.frontier);
    return engine_worker_start(&context->engine);
}
#endif

#ifdef NAV_GPS
static int gps_boot(struct nav_context *context) {
    gps_receiver_open(&context->receiver);
    gps_antenna_check(&context->receiver);
    return gps_almanac_load(&context->receiver);
}
#endif

int nav_start(struct nav_context *context) {
    int status = 0;
#ifdef ENGINE
    status = engine_boot(context);
    if (status != 0) {
        return status;
    }
#endif
#ifdef NAV_GPS
    status = gps_boot(context);
    if (status != 0) {
        return status;
    }
#endif
    nav_dispatch_ready(context);
    return status;
}

void nav_shutdown(struct nav_context *context) {
    nav_settings_save(&context->settings);
    nav_log_close();
    nav_context_free(context);
}
