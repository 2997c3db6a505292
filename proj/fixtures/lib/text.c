#include <stdio.h>
#include <string.h>

#include "fixture.h"
#include "oracle.h"

static const struct {
    uint64_t layout;
    const char *name;
} layout_names[] = {
    { 0x4, "mono" },
    { 0x3, "stereo" },
    { 0xb, "2.1" },
    { 0x33, "quad" },
};

/**
 * Append a description of a channel layout to a bprint buffer.
 *
 * If nb_channels is not positive the count is taken from the layout.
 */
void bprint_channel_layout(struct bprint *bp, int nb_channels, uint64_t channel_layout)
{
    ORACLE_ENTRY(bprint_channel_layout, bp, nb_channels, channel_layout);
    const char *name = NULL;
    int bits = 0;
    for (uint64_t m = channel_layout; m; m &= m - 1)
        bits++;
    const int channels = nb_channels > 0 ? nb_channels : bits;
    for (size_t i = 0; i < sizeof(layout_names) / sizeof(layout_names[0]); i++) {
        if (layout_names[i].layout == channel_layout && channels == bits) {
            name = layout_names[i].name;
            break;
        }
    }
    int n;
    if (name)
        n = snprintf(bp->str + bp->len, bp->size - bp->len, "%s", name);
    else
        n = snprintf(bp->str + bp->len, bp->size - bp->len, "%d channels", channels);
    if (n > 0)
        bp->len += (unsigned)n < bp->size - bp->len ? (unsigned)n : bp->size - bp->len - 1;
    ORACLE_EXIT(bprint_channel_layout, bp, nb_channels, channel_layout);
}

/**
 * Lower-case English name of a color, or "?" for values outside the enum.
 */
const char *color_name(enum color c)
{
    ORACLE_ENTRY(color_name, c);
    switch (c) {
    case COLOR_RED:
        ORACLE_RETURN(color_name, "red", c);
    case COLOR_GREEN:
        ORACLE_RETURN(color_name, "green", c);
    case COLOR_BLUE:
        ORACLE_RETURN(color_name, "blue", c);
    }
    ORACLE_RETURN(color_name, "?", c);
}

size_t count_char(const char *s, char c)
{
    ORACLE_ENTRY(count_char, s, c);
    size_t n = 0;
    for (const char *p = strchr(s, c); p; p = strchr(p + 1, c))
        n++;
    ORACLE_RETURN(count_char, n, s, c);
}
