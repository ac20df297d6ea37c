"""Independent brute-force oracles used to cross-check classification results.

These deliberately avoid the library's enumeration path: candidate maps are
generated from scratch over n-th roots of unity (as integer exponents mod n)
and validated against the defining axioms on the full multiplication table.
"""

import itertools
import math


def _elements(factors):
    return list(itertools.product(*(range(d) for d in factors)))


def _add(a, b, factors):
    return tuple((x + y) % d for x, y, d in zip(a, b, factors))


def brute_force_bicharacter_tables(factors):
    """All bicharacter tables of Z_{d1} x ... x Z_{dr}, found by assigning an
    arbitrary n-th root of unity to every generator pair, extending
    bilinearly, and keeping the assignments whose full table satisfies both
    multiplicativity axioms.  Tables are dicts (g, h) -> exponent mod n."""
    els = _elements(factors)
    n = math.prod(factors)
    r = len(factors)
    gens = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    tables = set()
    for assignment in itertools.product(range(n), repeat=r * r):
        gen_exp = {
            (gens[i], gens[j]): assignment[i * r + j]
            for i in range(r)
            for j in range(r)
        }
        table = {}
        for a in els:
            for b in els:
                e = 0
                for i in range(r):
                    for j in range(r):
                        e += gen_exp[(gens[i], gens[j])] * a[i] * b[j]
                table[(a, b)] = e % n
        if _is_bicharacter(table, els, factors, n):
            tables.add(tuple(sorted(table.items())))
    return [dict(t) for t in sorted(tables)]


def brute_force_full_table_search(factors):
    """Bicharacter tables found by brute force over ALL value assignments on
    G x G (not just generator pairs).  Only feasible for tiny groups."""
    els = _elements(factors)
    n = math.prod(factors)
    pairs = [(a, b) for a in els for b in els]
    found = set()
    for values in itertools.product(range(n), repeat=len(pairs)):
        table = dict(zip(pairs, values))
        if _is_bicharacter(table, els, factors, n):
            found.add(tuple(sorted(table.items())))
    return [dict(t) for t in sorted(found)]


def _is_bicharacter(table, els, factors, n):
    for a in els:
        for b in els:
            for c in els:
                if (table[(_add(a, b, factors), c)] - table[(a, c)] - table[(b, c)]) % n:
                    return False
                if (table[(a, _add(b, c, factors))] - table[(a, b)] - table[(a, c)]) % n:
                    return False
    return True


def is_skew_table(table, factors, n):
    return all((table[(a, b)] + table[(b, a)]) % n == 0 for (a, b) in table)
