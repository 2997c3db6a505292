/* Ground-truth logger linked into the oracle build of the fixture library.
   Each line is function,event,call_seq,param,value with values spelled the
   way the I/O table shows them. */

#include <inttypes.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "oracle_log.h"

/* Pointer hops followed, matching the tracer's default. */
#define MAX_DEPTH 3

static FILE *truth_log(void)
{
    static FILE *log;
    if (!log) {
        const char *path = getenv("FIXTURE_TRUTH_LOG");
        log = path ? fopen(path, "w") : NULL;
        if (!log)
            log = stderr;
        setvbuf(log, NULL, _IOLBF, 0);
    }
    return log;
}

unsigned long oracle_enter(const char *function)
{
    static struct {
        const char *name;
        unsigned long calls;
    } counters[32];
    for (size_t i = 0; i < sizeof counters / sizeof counters[0]; i++) {
        if (!counters[i].name)
            counters[i].name = function;
        if (strcmp(counters[i].name, function) == 0)
            return ++counters[i].calls;
    }
    abort();
}

static const char *current_fn;
static const char *current_event;
static unsigned long current_seq;

static void begin(const char *fn, unsigned long seq, const char *event)
{
    current_fn = fn;
    current_seq = seq;
    current_event = event;
}

static void row(const char *param, const char *fmt, ...) __attribute__((format(printf, 2, 3)));

#include <stdarg.h>

static void row(const char *param, const char *fmt, ...)
{
    FILE *log = truth_log();
    fprintf(log, "%s,%s,%lu,%s,", current_fn, current_event, current_seq, param);
    va_list ap;
    va_start(ap, fmt);
    vfprintf(log, fmt, ap);
    va_end(ap);
    fputc('\n', log);
}

static void char_row(const char *param, int numeric, unsigned char byte)
{
    char lit[8];
    switch (byte) {
    case '\a': strcpy(lit, "\\a"); break;
    case '\b': strcpy(lit, "\\b"); break;
    case '\f': strcpy(lit, "\\f"); break;
    case '\n': strcpy(lit, "\\n"); break;
    case '\r': strcpy(lit, "\\r"); break;
    case '\t': strcpy(lit, "\\t"); break;
    case '\v': strcpy(lit, "\\v"); break;
    case '\\': strcpy(lit, "\\\\"); break;
    case '\'': strcpy(lit, "\\'"); break;
    default:
        if (byte < 0x20 || byte >= 0x7f)
            snprintf(lit, sizeof lit, "\\%03o", byte);
        else
            snprintf(lit, sizeof lit, "%c", byte);
    }
    row(param, "%d '%s'", numeric, lit);
}

static void string_row(const char *param, const char *s)
{
    if (s)
        row(param, "\"%s\"", s);
    else
        row(param, "NULL");
}

static const char *enum_text(enum color c, char *buf, size_t n)
{
    switch (c) {
    case COLOR_RED: return "COLOR_RED";
    case COLOR_GREEN: return "COLOR_GREEN";
    case COLOR_BLUE: return "COLOR_BLUE";
    }
    snprintf(buf, n, "unknown(%d)", (int)c);
    return buf;
}

void oracle_args_gcd(unsigned long seq, const char *event, int a, int b)
{
    begin("gcd", seq, event);
    row("a", "%d", a);
    row("b", "%d", b);
}

int oracle_return_gcd(unsigned long seq, int ret, int a, int b)
{
    oracle_args_gcd(seq, "exit", a, b);
    row("return", "%d", ret);
    return ret;
}

void oracle_args_clamp(unsigned long seq, const char *event, int x, int lo, int hi)
{
    begin("clamp", seq, event);
    row("x", "%d", x);
    row("lo", "%d", lo);
    row("hi", "%d", hi);
}

int oracle_return_clamp(unsigned long seq, int ret, int x, int lo, int hi)
{
    oracle_args_clamp(seq, "exit", x, lo, hi);
    row("return", "%d", ret);
    return ret;
}

void oracle_args_scale(unsigned long seq, const char *event, double x, unsigned int factor)
{
    begin("scale", seq, event);
    row("x", "%.17g", x);
    row("factor", "%u", factor);
}

double oracle_return_scale(unsigned long seq, double ret, double x, unsigned int factor)
{
    oracle_args_scale(seq, "exit", x, factor);
    row("return", "%.17g", ret);
    return ret;
}

void oracle_args_lerp(unsigned long seq, const char *event, double a, double b, double t)
{
    begin("lerp", seq, event);
    row("a", "%.17g", a);
    row("b", "%.17g", b);
    row("t", "%.17g", t);
}

double oracle_return_lerp(unsigned long seq, double ret, double a, double b, double t)
{
    oracle_args_lerp(seq, "exit", a, b, t);
    row("return", "%.17g", ret);
    return ret;
}

void oracle_args_bprint_channel_layout(unsigned long seq, const char *event,
                                       const struct bprint *bp, int nb_channels,
                                       uint64_t channel_layout)
{
    begin("bprint_channel_layout", seq, event);
    if (bp) {
        row("bp", "[memory addr.]");
        string_row("bp->str", bp->str);
        row("bp->len", "%u", bp->len);
        row("bp->size", "%u", bp->size);
    } else {
        row("bp", "NULL");
    }
    row("nb_channels", "%d", nb_channels);
    row("channel_layout", "%" PRIu64, channel_layout);
}

void oracle_args_color_name(unsigned long seq, const char *event, enum color c)
{
    char buf[32];
    begin("color_name", seq, event);
    row("c", "%s", enum_text(c, buf, sizeof buf));
}

const char *oracle_return_color_name(unsigned long seq, const char *ret, enum color c)
{
    oracle_args_color_name(seq, "exit", c);
    string_row("return", ret);
    return ret;
}

void oracle_args_count_char(unsigned long seq, const char *event, const char *s, char c)
{
    begin("count_char", seq, event);
    string_row("s", s);
    char_row("c", c, (unsigned char)c);
}

size_t oracle_return_count_char(unsigned long seq, size_t ret, const char *s, char c)
{
    oracle_args_count_char(seq, "exit", s, c);
    row("return", "%zu", ret);
    return ret;
}

void oracle_args_make_pair(unsigned long seq, const char *event, int first, int second)
{
    begin("make_pair", seq, event);
    row("first", "%d", first);
    row("second", "%d", second);
}

struct pair oracle_return_make_pair(unsigned long seq, struct pair ret, int first, int second)
{
    oracle_args_make_pair(seq, "exit", first, second);
    row("return", "{...}");
    row("return.first", "%d", ret.first);
    row("return.second", "%d", ret.second);
    return ret;
}

void oracle_args_rect_area(unsigned long seq, const char *event, const struct rect *r)
{
    begin("rect_area", seq, event);
    if (!r) {
        row("r", "NULL");
        return;
    }
    row("r", "[memory addr.]");
    row("r->origin", "{...}");
    row("r->origin.x", "%d", r->origin.x);
    row("r->origin.y", "%d", r->origin.y);
    row("r->size", "{...}");
    row("r->size.w", "%d", r->size.w);
    row("r->size.h", "%d", r->size.h);
}

long oracle_return_rect_area(unsigned long seq, long ret, const struct rect *r)
{
    oracle_args_rect_area(seq, "exit", r);
    row("return", "%ld", ret);
    return ret;
}

void oracle_args_sum_triple(unsigned long seq, const char *event, const int (*values)[3])
{
    begin("sum_triple", seq, event);
    if (!values) {
        row("values", "NULL");
        return;
    }
    row("values", "[memory addr.]");
    row("(*values)[0]", "%d", (*values)[0]);
}

int oracle_return_sum_triple(unsigned long seq, int ret, const int (*values)[3])
{
    oracle_args_sum_triple(seq, "exit", values);
    row("return", "%d", ret);
    return ret;
}

void oracle_args_number_as_float(unsigned long seq, const char *event, union number n)
{
    begin("number_as_float", seq, event);
    row("n", "%" PRId32, n.i);
    row("n.f", "%.9g", (double)n.f);
    char_row("n.bytes[0]", n.bytes[0], n.bytes[0]);
}

float oracle_return_number_as_float(unsigned long seq, float ret, union number n)
{
    oracle_args_number_as_float(seq, "exit", n);
    row("return", "%.9g", (double)ret);
    return ret;
}

/* Mirrors the tracer's walk: stop after MAX_DEPTH hops or at a node seen
   earlier in the same value. */
static void node_rows(const char *path, const struct node *p, int hops,
                      const struct node **seen, int nseen)
{
    char name[256];
    if (!p) {
        row(path, "NULL");
        return;
    }
    row(path, "[memory addr.]");
    if (hops >= MAX_DEPTH)
        return;
    for (int i = 0; i < nseen; i++) {
        if (seen[i] == p)
            return;
    }
    seen[nseen++] = p;
    snprintf(name, sizeof name, "%s->value", path);
    row(name, "%d", p->value);
    snprintf(name, sizeof name, "%s->next", path);
    node_rows(name, p->next, hops + 1, seen, nseen);
}

void oracle_args_list_length(unsigned long seq, const char *event, const struct node *head,
                             int limit)
{
    const struct node *seen[MAX_DEPTH + 1];
    begin("list_length", seq, event);
    node_rows("head", head, 0, seen, 0);
    row("limit", "%d", limit);
}

int oracle_return_list_length(unsigned long seq, int ret, const struct node *head, int limit)
{
    oracle_args_list_length(seq, "exit", head, limit);
    row("return", "%d", ret);
    return ret;
}
