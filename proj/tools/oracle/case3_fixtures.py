#!/usr/bin/env python3
"""Independent sympy oracle for the dim n' = 3 fixture files.

Regenerate with:  python3 tools/oracle/case3_fixtures.py fixtures/
Computes, for each coframe, the matrices M_ij = <sigma_i, d e^{j+4}> and the
Gram matrices S_pm of the (anti-)self-dual parts on <e1..e4>, plus the torsion
verdicts of the induced G2-structure.
"""
import json
import sys
from pathlib import Path

import sympy as sp

F = sp.symbols("f1:8")


def canon(idx):
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return None, 0
    s = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                s = -s
    return tuple(idx), s


def add(f, k, c):
    v = sp.simplify(f.get(k, 0) + c)
    if v == 0:
        f.pop(k, None)
    else:
        f[k] = v


def wedge(a, b):
    r = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k, s = canon(ka + kb)
            if k is not None:
                add(r, k, s * ca * cb)
    return r


def pull(form, C):
    """form written in the e-basis, e^i = sum_j C[i][j] f^j; returns the f-basis form"""
    r = {}
    for k, c in form.items():
        t = {(): c}
        for i in k:
            t = wedge(t, {(j + 1,): C[i - 1][j] for j in range(7) if C[i - 1][j] != 0})
        for kk, cc in t.items():
            add(r, kk, cc)
    return r


def d(diffs, form):
    r = {}
    for k, c in form.items():
        for p in range(len(k)):
            t = {(): c * (-1) ** p}
            for q, j in enumerate(k):
                t = wedge(t, diffs[j - 1] if q == p else {(j,): 1})
            for kk, cc in t.items():
                add(r, kk, cc)
    return r


PHI = {(1, 2, 7): 1, (3, 4, 7): 1, (5, 6, 7): 1, (1, 3, 5): 1, (1, 4, 6): -1, (2, 3, 6): -1, (2, 4, 5): -1}
SPHI = {(1, 2, 3, 4): 1, (1, 2, 5, 6): 1, (3, 4, 5, 6): 1, (1, 3, 6, 7): 1, (1, 4, 5, 7): 1, (2, 3, 5, 7): 1,
        (2, 4, 6, 7): -1}
SIGMA = [{(1, 3): 1, (2, 4): -1}, {(1, 4): -1, (2, 3): -1}, {(1, 2): 1, (3, 4): 1}]


def algebra(spec):
    out = [{} for _ in range(7)]
    for k, terms in spec.items():
        for (i, j), c in terms:
            out[k - 1][(i, j)] = sp.Integer(c)
    return out


def coframe(rows):
    C = []
    for r in rows:
        e = sp.sympify(r, locals={f"f{i+1}": F[i] for i in range(7)})
        C.append([sp.simplify(sp.diff(e, F[j])) for j in range(7)])
    return C


def ip(a, b):
    return sp.simplify(sum(c * b.get(k, 0) for k, c in a.items()))


def hodge4(a):
    r = {}
    for k, c in a.items():
        comp = tuple(sorted(set(range(1, 5)) - set(k)))
        _, s = canon(k + comp)
        add(r, comp, s * c)
    return r


def alphas(diffs, C):
    Ci = sp.Matrix(C).inv().T.tolist()  # f^i = sum_j Ci[i][j] e^j
    out = []
    for j in range(3):
        de = {}
        for k, c in enumerate(C[j + 4]):
            if c != 0:
                for kk, cc in diffs[k].items():
                    add(de, kk, c * cc)
        a = pull(de, Ci)
        assert all(max(k) <= 4 for k in a), "d e^{j+4} must live on <e1..e4>"
        out.append(a)
    return out


def s(x):
    return str(sp.nsimplify(sp.simplify(x)))


def matrices(diffs, C):
    al = alphas(diffs, C)
    M = [[s(ip(SIGMA[i], al[j])) for j in range(3)] for i in range(3)]
    res = {"M": M}
    for name, sg in (("plus", 1), ("minus", -1)):
        parts = []
        for a in al:
            h = hodge4(a)
            r = {}
            for k, c in a.items():
                add(r, k, c / 2)
            for k, c in h.items():
                add(r, k, sg * c / 2)
            parts.append(r)
        S = sp.Matrix(3, 3, lambda i, j: sp.nsimplify(ip(parts[i], parts[j])))
        res["S_" + name] = [[s(S[i, j]) for j in range(3)] for i in range(3)]
        res["tr2_" + name] = s(S.trace() ** 2)
        res["twotr_" + name] = s(2 * (S * S).trace())
    return res


def torsion(diffs, C):
    P = pull(PHI, C)
    Sp = pull(SPHI, C)
    dS = d(diffs, Sp)
    top = wedge(d(diffs, P), P).get((1, 2, 3, 4, 5, 6, 7), 0)
    tau0 = sp.simplify(top / (7 * sp.Matrix(C).det()))
    return {"coclosed": len(dS) == 0, "tau0": s(tau0), "purely_coclosed": len(dS) == 0 and tau0 == 0}


def std(*subs):
    rows = [f"f{i}" for i in range(1, 8)]
    for i, v in subs:
        rows[i - 1] = v
    return rows


CASES = {
    "n6_3+R": ({5: [((1, 2), 1)], 6: [((1, 3), 1)], 7: [((2, 3), 1)]},
               std(), std((5, "f6"), (6, "2*f7"), (7, "f5"))),
    "n7_3_A": ({5: [((1, 2), 1)], 6: [((2, 3), 1)], 7: [((2, 4), 1)]},
               std(), std((5, "f7"), (6, "f6"), (7, "2*f5"))),
    "n7_3_B": ({5: [((1, 2), 1)], 6: [((2, 3), 1)], 7: [((3, 4), 1)]},
               std((6, "f6/sqrt(2)")), std((5, "f5-f7"), (6, "2*f6"), (7, "f5+f7"))),
    "n7_3_B1": ({5: [((1, 2), 1), ((3, 4), -1)], 6: [((1, 3), 1), ((2, 4), 1)], 7: [((1, 4), 1)]},
                std(), std((1, "-f1"), (5, "f6"), (6, "4*f7"), (7, "f5"))),
    "n7_3_C": ({5: [((1, 2), 1), ((3, 4), 1)], 6: [((2, 3), 1)], 7: [((2, 4), 1)]},
               std((7, "2*f7")), std((5, "f7"), (6, "f6"), (7, "f5"))),
    "n7_3_D": ({5: [((1, 2), 1), ((3, 4), 1)], 6: [((1, 3), 1)], 7: [((2, 4), 1)]},
               std(), std((5, "(f7-f6)/sqrt(2)"), (6, "(f7+f6)/sqrt(2)"), (7, "f5/sqrt(2)"))),
    "n7_3_D1": ({5: [((1, 2), 1), ((3, 4), -1)], 6: [((1, 3), 1), ((2, 4), 1)], 7: [((1, 4), 1), ((2, 3), -1)]},
                std((1, "2*f1")), std()),
}

SLUG = {"n6_3+R": "n6_3"}


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (spec, rows_b, rows_c) in CASES.items():
        diffs = algebra(spec)
        doc = {"algebra": name, "coframe": rows_c, "coframes": {}}
        for label, rows in (("B", rows_b), ("C", rows_c)):
            C = coframe(rows)
            entry = {"rows": rows}
            entry.update(matrices(diffs, C))
            entry.update(torsion(diffs, C))
            doc["coframes"][label] = entry
        slug = SLUG.get(name, name)
        (out / f"case3_{slug}.json").write_text(json.dumps(doc, indent=2) + "\n")

    # (a, b, c) family on n7_3_A
    a, b, c = sp.symbols("a b c")
    diffs = algebra(CASES["n7_3_A"][0])
    rows = ["f1", "f2", "f3", "a*f7", "f4", "-b*f6", "c*f5"]
    C = [[sp.diff(sp.sympify(r, locals={**{f"f{i+1}": F[i] for i in range(7)}, "a": a, "b": b, "c": c}), F[j])
          for j in range(7)] for r in rows]
    t = torsion(diffs, C)
    doc = {"algebra": "n7_3_A", "params": ["a", "b", "c"], "coframe": rows,
           "coclosed": t["coclosed"], "tau0": str(sp.factor(sp.sympify(t["tau0"])))}
    (out / "example_abc.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
