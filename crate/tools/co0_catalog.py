#!/usr/bin/env python3
"""Regenerate crates/gdh/data/leech.json and co0_frame_shapes.json.

The Leech lattice is built from the extended binary Golay code (quadratic
residue construction mod 23, coordinate 23 is the point at infinity) and
reduced to a row Hermite normal form.  Co0 is generated by M24 (four
permutations), a sign change on an octad and the sextet element xi.  Random
products of the generators and all their powers (and negatives) are sampled
until every frame shape has been seen; 160 shapes is the known total.

Requires numpy and sympy.  Usage: python3 tools/co0_catalog.py [iterations]
"""
import json
import os
import random
import sys
from fractions import Fraction

import numpy as np
from sympy import Matrix, Rational, eye, zeros
from sympy.matrices.normalforms import hermite_normal_form

P = 23
INF = 23
QR = sorted({(x * x) % P for x in range(1, P)})
NQR = [x for x in range(1, P) if x not in QR]
DATA = os.path.join(os.path.dirname(__file__), "..", "crates", "gdh", "data")


def mask(s):
    m = 0
    for i in s:
        m |= 1 << i
    return m


def span(vecs):
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def golay_basis():
    gens = []
    for s in range(P):
        w = {(x + s) % P for x in NQR}
        if len(w) % 2:
            w.add(INF)
        gens.append(mask(w))
    gens.append(mask(range(24)))
    basis = span(gens)
    assert len(basis) == 12
    return basis


def all_words(basis):
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return words


def m24_generators():
    inv = lambda x: pow(x, P - 2, P)

    def dl(i):
        if i in (INF, 0):
            return i
        if i in QR:
            return (pow(i, 3, P) * inv(9)) % P
        return (9 * pow(i, 3, P)) % P

    alpha = [INF if i == INF else (i + 1) % P for i in range(24)]
    beta = [INF if i == INF else (2 * i) % P for i in range(24)]
    gamma = [0 if i == INF else (INF if i == 0 else (-inv(i)) % P) for i in range(24)]
    delta = [dl(i) for i in range(24)]
    return [alpha, beta, gamma, delta]


def leech_basis(code):
    gens = [[2 if b >> i & 1 else 0 for i in range(24)] for b in code]
    for i in range(23):
        v = [0] * 24
        v[i], v[i + 1] = 4, -4
        gens.append(v)
    v = [0] * 24
    v[0] = v[1] = 4
    gens.append(v)
    gens.append([-3] + [1] * 23)
    h = hermite_normal_form(Matrix(gens).T).T
    rows = [list(map(int, r)) for r in h.tolist() if any(r)]
    b = Matrix(rows)
    g = b * b.T / 8
    assert len(rows) == 24 and g.det() == 1
    assert all(x.is_integer for x in g) and all(g[i, i] % 2 == 0 for i in range(24))
    return rows


def mobius(n):
    r, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            r = -r
        d += 1
    return -r if n > 1 else r


def int_kernel(a):
    """Saturated integer basis of {c : c a = 0}."""
    n, ncols = a.shape
    rows = [[int(x) for x in a[i]] + [int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, n) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, n):
                if rows[i][col]:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    done = done and rows[i][col] == 0
            if done:
                r += 1
                break
    return [row[ncols:] for row in rows[r:]]


def main():
    iterations = int(sys.argv[1]) if len(sys.argv) > 1 else 12000
    code = golay_basis()
    words = all_words(code)
    rows = leech_basis(code)
    bm = Matrix(rows)
    binv = bm.inv()
    g8 = np.array((bm * bm.T / 8).tolist(), dtype=np.int64)
    ident = np.eye(24, dtype=np.int64)

    def to_lat(g):
        m = bm * g.T * binv
        assert all(x.is_integer for x in m)
        return np.array(m.tolist(), dtype=np.int64)

    def permmat(pm):
        g = zeros(24, 24)
        for i in range(24):
            g[pm[i], i] = 1
        return g

    def eps(w):
        g = eye(24)
        for i in range(24):
            if w >> i & 1:
                g[i, i] = -1
        return g

    octads = [w for w in words if bin(w).count("1") == 8]
    t1 = {0, 1, 2, 3}
    tetrads, used = [t1], set(t1)
    for p in range(24):
        if p in used:
            continue
        m = mask(t1 | {p})
        o = next(w for w in octads if w & m == m)
        t = {i for i in range(24) if o >> i & 1} - t1
        tetrads.append(t)
        used |= t
    xi = zeros(24, 24)
    for t in tetrads:
        for a in t:
            for b in t:
                xi[a, b] = Rational(1, 2) - (1 if a == b else 0)
    gens = [to_lat(permmat(g)) for g in m24_generators()]
    gens += [to_lat(eps(octads[0])), to_lat(eps(mask(tetrads[0])) * xi)]

    def order(m):
        p, k = m.copy(), 1
        while not (p == ident).all():
            p, k = p @ m, k + 1
            assert k <= 200
        return k

    def frame(m):
        n = order(m)
        pw = [ident]
        for _ in range(n):
            pw.append(pw[-1] @ m)
        tr = {k: int(np.trace(pw[k])) for k in range(1, n + 1)}
        shape = {}
        for t in range(1, n + 1):
            if n % t:
                continue
            s = sum(mobius(t // d) * tr[d] for d in range(1, t + 1) if t % d == 0)
            assert s % t == 0
            if s:
                shape[t] = s // t
        dbl = False
        if n % 2 == 0:
            x = pw[n // 2] @ g8
            dbl = any(x[i, i] % 2 for i in range(24))
        return n, tuple(sorted(shape.items())), dbl

    random.seed(1)
    state = [g.copy() for g in gens] * 2
    acc = ident.copy()
    reps = {}
    for it in range(iterations):
        i, j = random.sample(range(len(state)), 2)
        state[i] = state[i] @ state[j] if random.random() < 0.5 else state[j] @ state[i]
        acc = acc @ state[i]
        if it < 50:
            continue
        n = order(acc)
        p = ident.copy()
        for k in range(1, n + 1):
            p = p @ acc
            if n % k == 0:
                for x in (p, -p):
                    m, sh, d = frame(x)
                    if sh not in reps:
                        reps[sh] = (x.copy(), m, d)
    out = []
    for sh, (x, m, d) in sorted(reps.items(), key=lambda kv: (kv[1][1], kv[0])):
        ker = int_kernel(x - ident)
        det = int((Matrix(ker) * Matrix(g8.tolist()) * Matrix(ker).T).det()) if ker else 1
        prod = Fraction(1)
        for t, b in sh:
            prod *= Fraction(t) ** b
        out.append({
            "shape": " ".join(f"{t}^{b}" if b != 1 else f"{t}" for t, b in sh),
            "order": m,
            "doubling": bool(d),
            "lifted_order": m * (2 if d else 1),
            "fixed_rank": len(ker),
            "fixed_det": det,
            "defect_sq": str(prod / det),
        })
    print(f"{len(out)} frame shapes", file=sys.stderr)
    with open(os.path.join(DATA, "co0_frame_shapes.json"), "w") as f:
        json.dump(out, f, indent=1)
    with open(os.path.join(DATA, "leech.json"), "w") as f:
        body = ",\n".join("    [" + ", ".join(f"[{x}, 1]" for x in r) + "]" for r in rows)
        f.write('{\n  "rank": 24,\n  "ambient": 24,\n  "form_scale": "1/8",\n  "basis": [\n' + body + "\n  ]\n}\n")


if __name__ == "__main__":
    main()
