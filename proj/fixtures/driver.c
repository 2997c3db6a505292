/* Exercises the fixture library the way a test suite would. Output depends
   only on the calls below. */

#include <stdio.h>

#include "lib/fixture.h"

static void show_layout(int nb_channels, uint64_t layout)
{
    char buf[64] = "";
    struct bprint bp = { buf, 0, sizeof buf };
    bprint_channel_layout(&bp, nb_channels, layout);
    printf("layout %d/%#llx: %s (%u)\n", nb_channels, (unsigned long long)layout, bp.str, bp.len);
}

int main(void)
{
    printf("gcd(12, 8) = %d\n", gcd(12, 8));
    printf("gcd(0, 5) = %d\n", gcd(0, 5));
    printf("gcd(1, 3) = %d\n", gcd(1, 3));

    printf("scale(0.1, 3) = %.17g\n", scale(0.1, 3));
    printf("scale(2.5, 4) = %.17g\n", scale(2.5, 4));
    printf("scale(-1.25, 0) = %.17g\n", scale(-1.25, 0));

    show_layout(-1, 0x3);
    show_layout(1, 0x4);
    show_layout(6, 0x0);

    printf("color %s %s %s %s\n", color_name(COLOR_GREEN), color_name(COLOR_RED),
           color_name(COLOR_BLUE), color_name((enum color)7));

    printf("count 'o' = %zu\n", count_char("hello world", 'o'));
    printf("count 'x' = %zu\n", count_char("", 'x'));
    printf("count '\\'' = %zu\n", count_char("it's", '\''));

    struct pair p = make_pair(3, 4);
    struct pair q = make_pair(-1, 0);
    printf("pairs (%d, %d) (%d, %d)\n", p.first, p.second, q.first, q.second);

    struct rect r = { { 1, 2 }, { 3, 4 } };
    struct rect flat = { { -5, 0 }, { 7, -2 } };
    printf("areas %ld %ld\n", rect_area(&r), rect_area(&flat));

    const int triple[3] = { 7, 8, 9 };
    printf("sum_triple = %d\n", sum_triple(&triple));

    union number one = { .i = 0x3f800000 };
    union number odd = { .i = 0x41424344 };
    printf("floats %.9g %.9g\n", number_as_float(one), number_as_float(odd));

    struct node loop = { 1, NULL };
    loop.next = &loop;
    struct node d = { 40, NULL };
    struct node c = { 30, &d };
    struct node b = { 20, &c };
    struct node a = { 10, &b };
    printf("lengths %d %d %d %d\n", list_length(&loop, 5), list_length(&b, 10),
           list_length(&a, 10), list_length(NULL, 1));
    return 0;
}
