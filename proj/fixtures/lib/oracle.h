#ifndef FIXTURE_ORACLE_H
#define FIXTURE_ORACLE_H

/* Truth-log hooks. They vanish unless FIXTURE_ORACLE is defined, so the
   traced build and the oracle build share every line of library code. */

#ifdef FIXTURE_ORACLE
#include "../oracle/oracle_log.h"
#define ORACLE_ENTRY(fn, ...) \
    const unsigned long oracle_seq = oracle_enter(#fn); \
    oracle_args_##fn(oracle_seq, "entry", __VA_ARGS__)
#define ORACLE_RETURN(fn, value, ...) \
    return oracle_return_##fn(oracle_seq, (value), __VA_ARGS__)
#define ORACLE_EXIT(fn, ...) oracle_args_##fn(oracle_seq, "exit", __VA_ARGS__)
#else
#define ORACLE_ENTRY(fn, ...) ((void)0)
#define ORACLE_RETURN(fn, value, ...) return (value)
#define ORACLE_EXIT(fn, ...) ((void)0)
#endif

#endif
