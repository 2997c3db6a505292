#include <pthread.h>
#include <stdio.h>

int square(int x)
{
    return x * x;
}

static void *worker(void *arg)
{
    int base = *(int *)arg;
    long sum = 0;
    for (int i = 0; i < 50; i++)
        sum += square(base + i);
    return (void *)sum;
}

int main(void)
{
    pthread_t t[4];
    int bases[4] = { 0, 100, 200, 300 };
    for (int i = 0; i < 4; i++)
        pthread_create(&t[i], NULL, worker, &bases[i]);
    long total = 0;
    for (int i = 0; i < 4; i++) {
        void *r;
        pthread_join(t[i], &r);
        total += (long)r;
    }
    printf("%ld\n", total);
    return 0;
}
