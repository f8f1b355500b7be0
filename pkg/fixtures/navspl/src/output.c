/* Guidance output: spoken prompts and the on-screen display. */
#include "output.h"

#ifdef NAV_VOICE
/* Spoken guidance: template prompts filled with maneuver details. */
void voice_announce_maneuver(struct voice_state *voice, struct maneuver *maneuver) {
    struct prompt prompt;
    prompt_select_template(&prompt, maneuver->kind);
    prompt_fill_distance(&prompt, maneuver->distance);
    prompt_fill_street(&prompt, maneuver->street_name);
    speech_synthesize(&voice->speech, &prompt);
    speech_play(&voice->speech);
}

void voice_set_language(struct voice_state *voice, const char *language) {
    speech_load_voice(&voice->speech, language);
    prompt_table_load(language);
}

void voice_mute(struct voice_state *voice) {
    speech_stop(&voice->speech);
    voice->muted = 1;
}
#endif

#ifdef NAV_DISPLAY
/* Screen drawing: widgets composited into the frame buffer. */
void display_draw_frame(struct display_state *display) {
    screen_clear(&display->screen);
    widget_draw(&display->speed_widget, &display->screen);
    widget_draw(&display->arrow_widget, &display->screen);
    widget_draw(&display->progress_widget, &display->screen);
    screen_present(&display->screen);
}

void display_set_brightness(struct display_state *display, int brightness) {
    display->brightness = clamp(brightness, 0, DISPLAY_MAX_BRIGHTNESS);
    screen_backlight(&display->screen, display->brightness);
}

#ifdef NAV_VOICE
/* When both outputs exist the screen mirrors each spoken prompt. */
void display_show_prompt(struct display_state *display, const struct prompt *prompt) {
    widget_set_text(&display->prompt_widget, prompt_text(prompt));
    widget_draw(&display->prompt_widget, &display->screen);
}
#endif
#endif

void output_flush_all(struct output_state *output) {
    output->flush_count++;
    output_queue_drain(&output->queue);
}
