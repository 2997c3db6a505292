#ifndef FIXTURE_ORACLE_LOG_H
#define FIXTURE_ORACLE_LOG_H

#include "../lib/fixture.h"

unsigned long oracle_enter(const char *function);

void oracle_args_gcd(unsigned long seq, const char *event, int a, int b);
int oracle_return_gcd(unsigned long seq, int ret, int a, int b);
void oracle_args_clamp(unsigned long seq, const char *event, int x, int lo, int hi);
int oracle_return_clamp(unsigned long seq, int ret, int x, int lo, int hi);
void oracle_args_scale(unsigned long seq, const char *event, double x, unsigned int factor);
double oracle_return_scale(unsigned long seq, double ret, double x, unsigned int factor);
void oracle_args_lerp(unsigned long seq, const char *event, double a, double b, double t);
double oracle_return_lerp(unsigned long seq, double ret, double a, double b, double t);

void oracle_args_bprint_channel_layout(unsigned long seq, const char *event,
                                       const struct bprint *bp, int nb_channels,
                                       uint64_t channel_layout);
void oracle_args_color_name(unsigned long seq, const char *event, enum color c);
const char *oracle_return_color_name(unsigned long seq, const char *ret, enum color c);
void oracle_args_count_char(unsigned long seq, const char *event, const char *s, char c);
size_t oracle_return_count_char(unsigned long seq, size_t ret, const char *s, char c);

void oracle_args_make_pair(unsigned long seq, const char *event, int first, int second);
struct pair oracle_return_make_pair(unsigned long seq, struct pair ret, int first, int second);
void oracle_args_rect_area(unsigned long seq, const char *event, const struct rect *r);
long oracle_return_rect_area(unsigned long seq, long ret, const struct rect *r);
void oracle_args_sum_triple(unsigned long seq, const char *event, const int (*values)[3]);
int oracle_return_sum_triple(unsigned long seq, int ret, const int (*values)[3]);
void oracle_args_number_as_float(unsigned long seq, const char *event, union number n);
float oracle_return_number_as_float(unsigned long seq, float ret, union number n);
void oracle_args_list_length(unsigned long seq, const char *event, const struct node *head,
                             int limit);
int oracle_return_list_length(unsigned long seq, int ret, const struct node *head, int limit);

#endif
