/* Small driver for tracer tests; argv[1] picks the scenario. */

#include <signal.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/wait.h>
#include <unistd.h>

int gcd(int a, int b)
{
    while (b != 0) {
        int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int overwrite(int x)
{
    x = 99;
    return x;
}

/* Returns its argument after recursing that deep, so each exit can be
   matched to its own entry. */
int echo_depth(int n)
{
    if (n <= 0)
        return 0;
    return echo_depth(n - 1) + 1 == n ? n : -1;
}

void explode(int code)
{
    printf("exploding with %d\n", code);
    fflush(stdout);
    abort();
}

void spin(void)
{
    for (;;)
        pause();
}

static volatile sig_atomic_t got_signal;

static void on_usr1(int sig)
{
    got_signal = sig;
}

int raise_inside(int sig)
{
    raise(sig);
    return got_signal;
}

int main(int argc, char **argv)
{
    const char *mode = argc > 1 ? argv[1] : "once";
    if (strcmp(mode, "once") == 0) {
        printf("%d\n", gcd(12, 8));
    } else if (strcmp(mode, "thrice") == 0) {
        printf("%d %d %d\n", gcd(12, 8), gcd(9, 6), gcd(7, 5));
    } else if (strcmp(mode, "overwrite") == 0) {
        printf("%d\n", overwrite(5));
    } else if (strcmp(mode, "recurse") == 0) {
        printf("%d\n", echo_depth(5));
    } else if (strcmp(mode, "crash") == 0) {
        printf("%d\n", gcd(4, 2));
        explode(3);
    } else if (strcmp(mode, "fail") == 0) {
        printf("%d\n", gcd(4, 2));
        return 1;
    } else if (strcmp(mode, "sleep") == 0) {
        printf("%d\n", gcd(4, 2));
        fflush(stdout);
        spin();
    } else if (strcmp(mode, "signal") == 0) {
        signal(SIGUSR1, on_usr1);
        printf("%d\n", raise_inside(SIGUSR1));
    } else if (strcmp(mode, "fork") == 0) {
        fflush(stdout);
        pid_t child = fork();
        if (child == 0) {
            printf("child %d\n", gcd(10, 4));
            fflush(stdout);
            _exit(0);
        }
        int status = 0;
        waitpid(child, &status, 0);
        printf("parent %d\n", gcd(21, 14));
    } else if (strcmp(mode, "args") == 0) {
        for (int i = 2; i < argc; i++)
            printf("%s\n", argv[i]);
    } else {
        fprintf(stderr, "unknown mode %s\n", mode);
        return 2;
    }
    return 0;
}
