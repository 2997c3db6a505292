#include "fixture.h"
#include "oracle.h"

/**
 * Greatest common divisor of two non-negative integers.
 *
 * Uses Euclid's algorithm; gcd(0, 0) is 0.
 */
int gcd(int a, int b)
{
    ORACLE_ENTRY(gcd, a, b);
    if (b == 0)
        ORACLE_RETURN(gcd, a, a, b);
    ORACLE_RETURN(gcd, gcd(b, a % b), a, b);
}

/** Limit x to the closed range [lo, hi]. */
int clamp(int x, int lo, int hi)
{
    ORACLE_ENTRY(clamp, x, lo, hi);
    if (x < lo)
        ORACLE_RETURN(clamp, lo, x, lo, hi);
    if (x > hi)
        ORACLE_RETURN(clamp, hi, x, lo, hi);
    ORACLE_RETURN(clamp, x, x, lo, hi);
}

/**
 * @brief Multiply a sample by an integer gain. A gain of zero mutes it.
 */
double scale(double x, unsigned int factor)
{
    ORACLE_ENTRY(scale, x, factor);
    ORACLE_RETURN(scale, x * factor, x, factor);
}

/** Linear interpolation between a and b at position t. */
double lerp(double a, double b, double t)
{
    ORACLE_ENTRY(lerp, a, b, t);
    ORACLE_RETURN(lerp, a + (b - a) * t, a, b, t);
}
