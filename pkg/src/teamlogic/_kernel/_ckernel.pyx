# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernel: byte tables over all subteams of k members."""
from libc.stdlib cimport malloc, free, calloc
from libc.stdint cimport uint8_t, uint64_t

cdef enum:
    LIT = 0
    BOT = 1
    DEP = 2
    AND = 3
    TENSOR = 4
    OR = 5
    IMPL = 6


def denote_program(ops, a0, a1, lits, compat, int k):
    cdef Py_ssize_t nodes = len(ops)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << k
    cdef uint64_t full = ((<uint64_t>1) << k) - 1
    cdef uint8_t **tables = <uint8_t **>calloc(nodes, sizeof(uint8_t *))
    cdef uint64_t *row = <uint64_t *>malloc(k * sizeof(uint64_t) + 8)
    cdef uint8_t *t
    cdef uint8_t *l
    cdef uint8_t *r
    cdef Py_ssize_t node, x, y, rest, i
    cdef int op, low
    cdef uint64_t lit
    if tables == NULL or row == NULL:
        raise MemoryError()
    try:
        for node in range(nodes):
            t = <uint8_t *>malloc(size)
            if t == NULL:
                raise MemoryError()
            tables[node] = t
            op = ops[node]
            if op == LIT:
                lit = lits[node]
                for x in range(size):
                    t[x] = (x & ~lit) == 0
            elif op == BOT:
                t[0] = 1
                for x in range(1, size):
                    t[x] = 0
            elif op == DEP:
                for i in range(k):
                    row[i] = compat[node * k + i]
                t[0] = 1
                for x in range(1, size):
                    low = 0
                    while not (x >> low) & 1:
                        low += 1
                    rest = x ^ ((<Py_ssize_t>1) << low)
                    t[x] = t[rest] and (rest & ~row[low]) == 0
            elif op == AND or op == OR or op == TENSOR or op == IMPL:
                l = tables[<Py_ssize_t>a0[node]]
                r = tables[<Py_ssize_t>a1[node]]
                if op == AND:
                    for x in range(size):
                        t[x] = l[x] & r[x]
                elif op == OR:
                    for x in range(size):
                        t[x] = l[x] | r[x]
                elif op == TENSOR:
                    for x in range(size):
                        t[x] = 0
                        y = x
                        while True:
                            if l[y] and r[x ^ y]:
                                t[x] = 1
                                break
                            if y == 0:
                                break
                            y = (y - 1) & x
                else:
                    # t[x] = 1 iff no subset of x satisfies l but not r
                    for x in range(size):
                        t[x] = l[x] and not r[x]
                    for i in range(k):
                        for x in range(size):
                            if (x >> i) & 1 and t[x ^ ((<Py_ssize_t>1) << i)]:
                                t[x] = 1
                    for x in range(size):
                        t[x] = not t[x]
            else:
                raise ValueError(f"unknown opcode {op}")
        t = tables[nodes - 1]
        packed = bytearray((size + 7) // 8)
        for x in range(size):
            if t[x]:
                packed[x >> 3] |= 1 << (x & 7)
        return int.from_bytes(packed, "little")
    finally:
        for node in range(nodes):
            if tables[node] != NULL:
                free(tables[node])
        free(tables)
        free(row)
