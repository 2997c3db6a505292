#include <stdio.h>

int use_a(int x);

static int helper(int x)
{
    return x * 2;
}

int main(void)
{
    printf("%d %d\n", use_a(1), helper(5));
    return 0;
}
