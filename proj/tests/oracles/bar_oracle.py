#!/usr/bin/env python3
"""Brute-force Schur multiplier oracle.

Builds the normalized bar complex C3 -> C2 -> C1 with trivial integer
coefficients directly from a multiplication rule and reads H2 off a plain
Smith normal form written here from scratch. Shares no code with the C++
library; its output is frozen into tests/unit/group_homology_test.cpp and the acceptance suite.
"""
import itertools
import sys


def cyclic(n):
    els = list(range(n))
    return els, (lambda a, b: (a + b) % n), 0


def product(g1, g2):
    e1, m1, i1 = g1
    e2, m2, i2 = g2
    els = [(a, b) for a in e1 for b in e2]
    return els, (lambda x, y: (m1(x[0], y[0]), m2(x[1], y[1]))), (i1, i2)


def perm_group(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    comp = lambda p, q: tuple(q[p[i]] for i in range(n))  # p then q
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = comp(x, tuple(g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen), comp, ident


def snf_diagonal(rows, ncols):
    """Invariant factors of an integer matrix given as list of dict rows."""
    m = [[r.get(j, 0) for j in range(ncols)] for r in rows]
    m = [r for r in m if any(r)]
    diag = []
    t = 0
    nrows = len(m)
    while True:
        # pick smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            p = m[t][t]
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // p
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        changed = True
                        break
            if changed:
                continue
            p = m[t][t]
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // p
                    if q:
                        for r in m:
                            r[j] -= q * r[t]
                    if m[t][j]:
                        for r in m:
                            r[t], r[j] = r[j], r[t]
                        changed = True
                        break
            if changed:
                continue
            # divisibility fix-up
            p = m[t][t]
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                m[t] = [a + b for a, b in zip(m[t], m[bad])]
                continue
            break
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def schur(group):
    els, mul, e = group
    nt = [x for x in els if x != e]
    idx2 = {p: k for k, p in enumerate(itertools.product(nt, nt))}
    idx1 = {x: k for k, x in enumerate(nt)}

    def add(d, key, table, c):
        if key in table:
            k = table[key]
            d[k] = d.get(k, 0) + c

    # d2[g|h] = [h] - [gh] + [g]
    rank_c2 = len(idx2)
    d2_rows = []
    for g, h in itertools.product(nt, nt):
        d = {}
        add(d, h, idx1, 1)
        add(d, mul(g, h), idx1, -1)
        add(d, g, idx1, 1)
        d2_rows.append({k: v for k, v in d.items() if v})
    d3_rows = []
    for g, h, k in itertools.product(nt, nt, nt):
        d = {}
        add(d, (h, k), idx2, 1)
        add(d, (mul(g, h), k), idx2, -1)
        add(d, (g, mul(h, k)), idx2, 1)
        add(d, (g, h), idx2, -1)
        d3_rows.append({kk: v for kk, v in d.items() if v})
    # sanity: d3 * d2 == 0
    for r in d3_rows:
        acc = {}
        for k2, c in r.items():
            for k1, c1 in d2_rows[k2].items():
                acc[k1] = acc.get(k1, 0) + c * c1
        assert not any(acc.values())
    rank_d2 = len([x for x in snf_diagonal(d2_rows, len(idx1)) if x])
    f3 = snf_diagonal(d3_rows, rank_c2)
    rank_d3 = len([x for x in f3 if x])
    free = rank_c2 - rank_d2 - rank_d3
    torsion = sorted(x for x in f3 if x > 1)
    return free, torsion


def main():
    s3 = perm_group([(1, 0, 2), (1, 2, 0)])
    q8 = None
    d4 = perm_group([(1, 2, 3, 0), (3, 2, 1, 0)])
    a4 = perm_group([(1, 2, 0, 3), (1, 0, 3, 2)])
    cases = [("Z/%d" % n, cyclic(n)) for n in range(1, 9)]
    cases += [
        ("Z/2xZ/2", product(cyclic(2), cyclic(2))),
        ("Z/3xZ/3", product(cyclic(3), cyclic(3))),
        ("Z/2xZ/4", product(cyclic(2), cyclic(4))),
        ("S3", s3),
        ("D4", d4),
    ]
    if "--a4" in sys.argv:
        cases.append(("A4", a4))
    for name, g in cases:
        free, tors = schur(g)
        print(name, "free=%d" % free, "torsion=%s" % tors)


if __name__ == "__main__":
    main()
