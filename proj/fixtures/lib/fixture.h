#ifndef FIXTURE_H
#define FIXTURE_H

#include <stddef.h>
#include <stdint.h>

struct bprint {
    char *str;
    unsigned len;
    unsigned size;
};

enum color { COLOR_RED, COLOR_GREEN, COLOR_BLUE };

struct pair {
    int first;
    int second;
};

struct point {
    int x;
    int y;
};

struct extent {
    int w;
    int h;
};

struct rect {
    struct point origin;
    struct extent size;
};

union number {
    int32_t i;
    float f;
    unsigned char bytes[4];
};

struct node {
    int value;
    struct node *next;
};

int gcd(int a, int b);
int clamp(int x, int lo, int hi);
double scale(double x, unsigned int factor);
double lerp(double a, double b, double t);

void bprint_channel_layout(struct bprint *bp, int nb_channels, uint64_t channel_layout);
const char *color_name(enum color c);
size_t count_char(const char *s, char c);

struct pair make_pair(int first, int second);
long rect_area(const struct rect *r);
int sum_triple(const int (*values)[3]);
float number_as_float(union number n);
int list_length(const struct node *head, int limit);

#endif
