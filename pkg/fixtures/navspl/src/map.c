/* Map rendering: tiles, layers and the viewport. */
#include "map.h"

#ifdef MAP_CORE
struct viewport {
    struct position center;
    int zoom_level;
    int width;
    int height;
};

void map_render_frame(struct map_state *map, struct viewport *viewport) {
    struct tile_range range = tile_range_for(viewport);
    for (int x = range.min_x; x <= range.max_x; x++) {
        for (int y = range.min_y; y <= range.max_y; y++) {
            struct tile *tile = map_fetch_tile(map, x, y, viewport->zoom_level);
            tile_draw(tile, viewport);
        }
    }
    map_render_layers(map, viewport);
}

void map_render_layers(struct map_state *map, struct viewport *viewport) {
    layer_draw(&map->route_layer, viewport);
    layer_draw(&map->label_layer, viewport);
#ifdef NAV_TRAFFIC
    /* The congestion overlay sits above roads but under labels. */
    traffic_layer_draw(&map->traffic_layer, viewport);
#endif
}

struct tile *map_fetch_tile(struct map_state *map, int x, int y, int zoom) {
#if defined(NAV_OFFLINE)
    struct tile *cached = tile_cache_lookup(&map->tile_cache, x, y, zoom);
    if (cached != NULL) {
        return cached;
    }
    return tile_cache_placeholder(&map->tile_cache);
#endif
#ifndef NAV_OFFLINE
    return tile_download(map->tile_server, x, y, zoom);
#endif
}

void map_set_zoom(struct map_state *map, struct viewport *viewport, int zoom_level) {
    viewport->zoom_level = clamp(zoom_level, MAP_MIN_ZOOM, MAP_MAX_ZOOM);
    map_invalidate(map);
}
#endif

#ifdef NAV_OFFLINE
/* Offline storage: prefetch tiles for a region onto local storage. */
void offline_prefetch_region(struct tile_cache *cache, struct region region) {
    struct tile_range range = tile_range_for_region(&region);
    for (int zoom = region.min_zoom; zoom <= region.max_zoom; zoom++) {
        cache_reserve(cache, tile_range_count(&range));
        offline_download_range(cache, &range, zoom);
    }
    cache_flush(cache);
}

int offline_cache_evict(struct tile_cache *cache, long needed_bytes) {
    long freed = 0;
    while (freed < needed_bytes && cache->entry_count > 0) {
        freed += cache_evict_oldest(cache);
    }
    return freed >= needed_bytes;
}
#endif
