"""Writes A6 = PSL(2,9) and Aut(A6) = PΓL(2,9) as permutation groups on the
projective line over F9, plus an outer action of Z2xZ2 realizing Out(A6)."""
import json
import sys
from pathlib import Path

# F9 = F3[i], i^2 = -1; a + b*i is stored as a + 3*b; infinity is point 9.
INF = 9


def el(a, b):
    return a % 3 + 3 * (b % 3)


def add(x, y):
    return el(x % 3 + y % 3, x // 3 + y // 3)


def mul(x, y):
    a, b, c, d = x % 3, x // 3, y % 3, y // 3
    return el(a * c - b * d, a * d + b * c)


def inv(x):
    return next(y for y in range(9) if mul(x, y) == 1)


def neg(x):
    return mul(x, el(2, 0))


def frob(x):
    return mul(x, mul(x, x))


def mobius(a, b, c, d):
    def f(x):
        if x == INF:
            return INF if c == 0 else mul(a, inv(c))
        num = add(mul(a, x), b)
        den = add(mul(c, x), d)
        return INF if den == 0 else mul(num, inv(den))
    return [f(x) for x in range(10)]


def cycles(p):
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        c, x = [s], p[s]
        seen.add(s)
        while x != s:
            seen.add(x)
            c.append(x)
            x = p[x]
        out.append(c)
    return out


def label(p):
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p)) or "()"


def then(p, q):
    return [q[p[x]] for x in range(len(p))]


def closure(gens):
    ident = list(range(10))
    seen = {tuple(ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = then(p, g)
                if tuple(q) not in seen:
                    seen.add(tuple(q))
                    nxt.append(q)
        frontier = nxt
    return [list(p) for p in seen]


one, zero = el(1, 0), el(0, 0)
omega = el(1, 1)  # order 8
t = mobius(one, one, zero, one)
m = mobius(mul(omega, omega), zero, zero, one)
s = mobius(zero, neg(one), one, zero)
d = mobius(omega, zero, zero, one)
fr = [INF if x == INF else frob(x) for x in range(10)]

a6_gens = [t, m, s]
aut_gens = [t, d, s, fr]
a6 = closure(a6_gens)
aut = closure(aut_gens)
assert len(a6) == 360 and len(aut) == 1440, (len(a6), len(aut))


def entry(name, gens, notes):
    return {
        "name": name,
        "kind": "perm",
        "degree": 10,
        "generators": [cycles(g) for g in gens],
        "notes": notes,
    }


def conj_table(a):
    ai = [0] * 10
    for i, x in enumerate(a):
        ai[x] = i
    return {label(h): label(then(then(ai, h), a)) for h in a6}


# Representatives of the three nontrivial outer classes: PGL, PΣL, M10.
reps = {"(0,0)": list(range(10)), "(0,1)": d, "(1,0)": fr, "(1,1)": then(d, fr)}
psi = {
    "H": "A6",
    "K": "Z2xZ2",
    "psi": {k: conj_table(a) for k, a in reps.items()},
}

out = Path(sys.argv[1] if len(sys.argv) > 1 else "catalog")
out.mkdir(exist_ok=True)
(out / "A6.json").write_text(json.dumps(entry("A6", a6_gens, "PSL(2,9) on the projective line over F9")) + "\n")
(out / "AutA6.json").write_text(json.dumps(entry("AutA6", aut_gens, "PΓL(2,9), the automorphism group of A6")) + "\n")
(out / "psi_A6_out.json").write_text(json.dumps(psi) + "\n")
