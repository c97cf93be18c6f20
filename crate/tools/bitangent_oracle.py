"""Independent sympy computation of the Riemann construction.

Usage: python3 tools/bitangent_oracle.py INPUT.json OUTPUT.json

Solves the four u-equations together as one overdetermined system,
expands the quartic from the product of the four sign choices, builds the
28 lines and checks each restriction is a perfect square with sympy's
factorization. The output is used as a regression fixture by the Rust tests.
"""
import itertools
import json
import sys

import sympy as sp

t = sp.symbols("t0 t1 t2")
s_, r_ = sp.symbols("s r")


def main(inp, outp):
    raw = json.load(open(inp))["a"]
    a = [[sp.Rational(x) for x in row] for row in raw]  # a[j][i-1] = a_{j i}
    A = lambda j, i: a[j][i - 1]

    lam = sp.symbols("l1:4")
    eqs = [sum(lam[i - 1] / A(j, i) for i in (1, 2, 3)) + 1 for j in range(3)]
    lam = [sp.solve(eqs, lam, dict=True)[0][x] for x in lam]

    k = sp.symbols("k1:4")
    eqs = [sum(lam[i - 1] * A(j, i) * k[i - 1] for i in (1, 2, 3)) + 1 for j in range(3)]
    k = [sp.solve(eqs, k, dict=True)[0][x] for x in k]

    c = sp.symbols("c0:9")
    u = [sum(c[3 * m + n] * t[n] for n in range(3)) for m in range(3)]
    exprs = [sum(u) + sum(t)]
    for i in (1, 2, 3):
        exprs.append(
            sum(u[m] / A(m, i) for m in range(3)) + k[i - 1] * sum(A(m, i) * t[m] for m in range(3))
        )
    lin = []
    for e in exprs:
        poly = sp.Poly(sp.expand(e), *t)
        lin += [poly.coeff_monomial(x) for x in t]
    sol = sp.solve(lin, c, dict=True)
    assert len(sol) == 1 and len(sol[0]) == 9, "u-system not uniquely solvable"
    u = [sp.expand(x.subs(sol[0])) for x in u]

    x, y, z = sp.symbols("x y z")
    prod = sp.expand((x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z))
    prod = prod.subs({x**4: sp.Symbol("X") ** 2, y**4: sp.Symbol("Y") ** 2, z**4: sp.Symbol("Z") ** 2})
    prod = prod.subs({x**2: sp.Symbol("X"), y**2: sp.Symbol("Y"), z**2: sp.Symbol("Z")})
    F = sp.expand(-prod.subs({"X": t[0] * u[0], "Y": t[1] * u[1], "Z": t[2] * u[2]}))
    Fp = sp.Poly(F, *t)
    mons = [(a_, b_, 4 - a_ - b_) for a_ in range(4, -1, -1) for b_ in range(4 - a_, -1, -1)]
    coeffs = [Fp.coeff_monomial(t[0] ** e[0] * t[1] ** e[1] * t[2] ** e[2]) for e in mons]

    lines = [t[0], t[1], t[2], t[0] + t[1] + t[2]]
    lines += [sum(A(m, i) * t[m] for m in range(3)) for i in (1, 2, 3)]
    lines += list(u)
    lines += [u[0] + t[1] + t[2], t[0] + u[1] + t[2], t[0] + t[1] + u[2]]
    for m in range(3):
        o = [n for n in range(3) if n != m]
        lines += [u[m] / A(m, i) + k[i - 1] * sum(A(n, i) * t[n] for n in o) for i in (1, 2, 3)]
    D = lambda i, m: 1 - k[i - 1] * sp.prod([A(n, i) for n in range(3) if n != m])
    lines += [sum(t[m] / D(i, m) for m in range(3)) for i in (1, 2, 3)]
    lines += [sum(u[m] / (A(m, i) * D(i, m)) for m in range(3)) for i in (1, 2, 3)]
    lines = [sp.Poly(sp.expand(l), *t) for l in lines]
    vecs = [[l.coeff_monomial(x) for x in t] for l in lines]

    tangency = []
    for v in vecs:
        # parametrize the line by two points
        M = sp.Matrix([v])
        ns = M.nullspace()
        p, q = ns[0], ns[1]
        sub = {t[m]: p[m] * s_ + q[m] * r_ for m in range(3)}
        g = sp.Poly(sp.expand(F.subs(sub, simultaneous=True)), s_, r_)
        _, facs = sp.factor_list(g.as_expr())
        ok = all(e % 2 == 0 for _, e in facs)
        tangency.append("square" if ok else "not-square")

    triples = []
    for i, j, l in itertools.combinations(range(28), 3):
        if sp.Matrix([vecs[i], vecs[j], vecs[l]]).det() == 0:
            triples.append([i, j, l])

    out = {
        "a": raw,
        "lambda": [str(x) for x in lam],
        "k": [str(x) for x in k],
        "u": [[str(sp.Poly(x, *t).coeff_monomial(y)) for y in t] for x in u],
        "quartic": [str(x) for x in coeffs],
        "lines": [[str(x) for x in v] for v in vecs],
        "restriction": tangency,
        "concurrent_triples": triples,
    }
    json.dump(out, open(outp, "w"), indent=1)
    print(out["k"], tangency.count("square"), len(triples))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
