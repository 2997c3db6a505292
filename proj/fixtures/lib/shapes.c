#include <string.h>

#include "fixture.h"
#include "oracle.h"

/** Build a pair from its two members. */
struct pair make_pair(int first, int second)
{
    ORACLE_ENTRY(make_pair, first, second);
    struct pair p = { first, second };
    ORACLE_RETURN(make_pair, p, first, second);
}

/** Area covered by a rectangle; negative extents give a negative area. */
long rect_area(const struct rect *r)
{
    ORACLE_ENTRY(rect_area, r);
    ORACLE_RETURN(rect_area, (long)r->size.w * r->size.h, r);
}

int sum_triple(const int (*values)[3])
{
    ORACLE_ENTRY(sum_triple, values);
    ORACLE_RETURN(sum_triple, (*values)[0] + (*values)[1] + (*values)[2], values);
}

float number_as_float(union number n)
{
    ORACLE_ENTRY(number_as_float, n);
    float f;
    memcpy(&f, n.bytes, sizeof f);
    ORACLE_RETURN(number_as_float, f, n);
}

/* Stops at limit so a cyclic list terminates. */
int list_length(const struct node *head, int limit)
{
    ORACLE_ENTRY(list_length, head, limit);
    int n = 0;
    for (const struct node *p = head; p && n < limit; p = p->next)
        n++;
    ORACLE_RETURN(list_length, n, head, limit);
}
