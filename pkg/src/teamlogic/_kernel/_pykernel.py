"""Pure-Python evaluation kernel.

A table is a Python int used as a bitset over subteams: bit ``X`` is set
when the member subset ``X`` (a k-bit mask) satisfies the node.  Every
connective becomes a handful of big-integer operations.
"""
from functools import lru_cache

LIT, BOT, DEP, AND, TENSOR, OR, IMPL = range(7)


@lru_cache(maxsize=None)
def _without_bit(k: int, i: int) -> int:
    """Bitset of the subsets X (of k members) that do not contain member i."""
    block = (1 << (1 << i)) - 1
    period = 1 << (i + 1)
    out = 0
    for start in range(0, 1 << k, period):
        out |= block << start
    return out


@lru_cache(maxsize=None)
def _universe(k: int) -> int:
    return (1 << (1 << k)) - 1


def _subsets_of(mask: int, k: int) -> int:
    t = 1
    for i in range(k):
        if mask >> i & 1:
            t |= t << (1 << i)
    return t


def _up_closure(t: int, k: int) -> int:
    for i in range(k):
        t |= (t & _without_bit(k, i)) << (1 << i)
    return t


def _maximal(t: int, k: int) -> int:
    ext = 0
    for i in range(k):
        ext |= (t & ~_without_bit(k, i)) >> (1 << i)
    return t & ~ext


def denote_program(ops, a0, a1, lits, compat, k: int) -> int:
    full = (1 << k) - 1
    universe = _universe(k)
    tables = []
    for node, op in enumerate(ops):
        if op == LIT:
            t = _subsets_of(lits[node], k)
        elif op == BOT:
            t = 1
        elif op == DEP:
            row = compat[node * k:(node + 1) * k]
            bad = 0
            for m in range(k):
                clash = ~row[m] & full & ~((1 << (m + 1)) - 1)
                while clash:
                    low = clash & -clash
                    bad |= 1 << ((1 << m) | low)
                    clash ^= low
            t = universe & ~_up_closure(bad, k)
        elif op == AND:
            t = tables[a0[node]] & tables[a1[node]]
        elif op == OR:
            t = tables[a0[node]] | tables[a1[node]]
        elif op == IMPL:
            bad = tables[a0[node]] & ~tables[a1[node]]
            t = universe & ~_up_closure(bad, k)
        elif op == TENSOR:
            left, right = tables[a0[node]], tables[a1[node]]
            # X = W + Z with W inside a maximal left team Y and Z a right team
            # disjoint from Y; downward closure makes this exhaustive
            t = 0
            peaks = _maximal(left, k)
            while peaks:
                low = peaks & -peaks
                y = low.bit_length() - 1
                peaks ^= low
                part = right & _subsets_of(full & ~y, k)
                for i in range(k):
                    if y >> i & 1:
                        part |= (part & _without_bit(k, i)) << (1 << i)
                t |= part
        else:
            raise ValueError(f"unknown opcode {op}")
        tables.append(t)
    return tables[-1]
