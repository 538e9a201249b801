#!/usr/bin/env python3
"""Regenerates the built-in corpus under data/.

Tables are written row-major with the first argument most significant.
Run from anywhere: python3 tools/gen_corpus.py
"""

import itertools
import json
import re
from fractions import Fraction
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"


def table(n, arity, fn):
    return [fn(*args) for args in itertools.product(range(n), repeat=arity)]


def algebra(name, labels, ops):
    n = len(labels)
    sig, tables = [], {}
    for op_name, arity, fn in ops:
        sig.append({"name": op_name, "arity": arity})
        tables[op_name] = [fn()] if arity == 0 else table(n, arity, fn)
    return {"name": name, "size": n, "element_labels": labels,
            "signature": sig, "operations": tables}


def write(kind, name, doc):
    path = DATA / kind / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(doc, ensure_ascii=False, indent=1)
    # flat lists of scalars on one line
    text = re.sub(r"\[([^\[\]{}]*)\]",
                  lambda m: "[" + ", ".join(s.strip() for s in m.group(1).split(",")
                                            if s.strip()) + "]", text)
    path.write_text(text + "\n")


def lattice_ops(leq, n):
    def meet(a, b):
        lower = [c for c in range(n) if leq(c, a) and leq(c, b)]
        return next(c for c in lower if all(leq(d, c) for d in lower))

    def join(a, b):
        upper = [c for c in range(n) if leq(a, c) and leq(b, c)]
        return next(c for c in upper if all(leq(c, d) for d in upper))

    return meet, join


def algebras():
    # weak Kleene: labels 0, 1, ½; join of the chain 0 < 1 < ½
    wk_neg = [1, 0, 2]
    write("algebras", "WK3", algebra("WK3", ["0", "1", "½"], [
        ("or", 2, max),
        ("neg", 1, lambda a: wk_neg[a]),
    ]))
    write("algebras", "WK3c", algebra("WK3c", ["0", "1", "½"], [
        ("or", 2, max),
        ("neg", 1, lambda a: wk_neg[a]),
        ("zero", 0, lambda: 0),
        ("one", 0, lambda: 1),
    ]))

    def kleene(name, labels, leq, neg):
        n = len(labels)
        meet, join = lattice_ops(leq, n)
        return algebra(name, labels, [
            ("and", 2, meet), ("or", 2, join), ("neg", 1, lambda a: neg[a]),
            ("zero", 0, lambda: 0), ("one", 0, lambda: n - 1),
        ])

    write("algebras", "K3", kleene("K3", ["0", "½", "1"], lambda a, b: a <= b, [2, 1, 0]))
    dm_leq = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    write("algebras", "DM4", kleene("DM4", ["0", "n", "b", "1"],
                                    lambda a, b: a == b or (a, b) in dm_leq, [3, 1, 2, 0]))

    def bounded_lattice(name, labels, covers):
        n = len(labels)
        order = {(a, a) for a in range(n)} | set(covers)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(order), repeat=2):
                if b == c and (a, d) not in order:
                    order.add((a, d))
                    changed = True
        meet, join = lattice_ops(lambda a, b: (a, b) in order, n)
        return algebra(name, labels, [
            ("and", 2, meet), ("or", 2, join),
            ("zero", 0, lambda: 0), ("one", 0, lambda: n - 1),
        ])

    write("algebras", "M3", bounded_lattice(
        "M3", ["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
    write("algebras", "B4", bounded_lattice(
        "B4", ["0", "a", "b", "1"], [(0, 1), (0, 2), (1, 3), (2, 3)]))

    # Łukasiewicz chains on {0, 1/(m-1), ..., 1}
    for m in range(2, 6):
        vals = [Fraction(i, m - 1) for i in range(m)]
        idx = {v: i for i, v in enumerate(vals)}
        nice = {Fraction(1, 2): "½", Fraction(1, 3): "⅓", Fraction(2, 3): "⅔",
                Fraction(1, 4): "¼", Fraction(3, 4): "¾"}
        labels = [nice.get(v, str(v)) for v in vals]
        write("algebras", f"L{m}", algebra(f"L{m}", labels, [
            ("fusion", 2, lambda a, b: idx[max(Fraction(0), vals[a] + vals[b] - 1)]),
            ("imp", 2, lambda a, b: idx[min(Fraction(1), 1 - vals[a] + vals[b])]),
            ("neg", 1, lambda a: idx[1 - vals[a]]),
            ("and", 2, min), ("or", 2, max),
            ("zero", 0, lambda: 0), ("one", 0, lambda: m - 1),
        ]))

    # complex algebras of chain frames w0 -> w1 -> ... (successor relation)
    for m in range(1, 6):
        n = 1 << m
        full = n - 1

        def box(x, m=m):
            out = 0
            for w in range(m):
                if w == m - 1 or (x >> (w + 1)) & 1:
                    out |= 1 << w
            return out

        labels = ["{" + ",".join(str(w) for w in range(m) if (x >> w) & 1) + "}"
                  for x in range(n)]
        write("algebras", f"ch{m}", algebra(f"ch{m}", labels, [
            ("and", 2, lambda a, b: a & b), ("or", 2, lambda a, b: a | b),
            ("neg", 1, lambda a, full=full: full ^ a),
            ("zero", 0, lambda: 0), ("one", 0, lambda full=full: full),
            ("box", 1, box),
        ]))

    # box_n(x1..xn, y) = 1 if y is among the x_i, else 0
    write("algebras", "box5", algebra("box5", ["0", "1", "a1", "a2", "b"], [
        ("one", 0, lambda: 1),
        ("box1", 2, lambda x1, y: 1 if y == x1 else 0),
        ("box2", 3, lambda x1, x2, y: 1 if y in (x1, x2) else 0),
    ]))

    f_tab, g_tab = [0, 1, 0], [0, 1, 1]
    write("algebras", "fepbad", algebra("fepbad", ["0", "1", "2"], [
        ("c", 0, lambda: 0),
        ("f", 1, lambda a: f_tab[a]),
        ("g", 1, lambda a: g_tab[a]),
    ]))


def rules(*rs):
    return {"kind": "rules",
            "rules": [{"premises": list(p), "conclusion": c} for p, c in rs]}


def matrices(*ms, bound=None):
    doc = {"kind": "matrices",
           "matrices": [{"algebra": a, "designated": d} for a, d in ms]}
    if bound is not None:
        doc["variable_bound"] = bound
    return doc


def logics():
    wk_and = "(neg (or (neg x) (neg y)))"
    write("logics", "PWK", rules(
        ([], "(or x (neg x))"),
        (["x"], "(or x y)"),
        (["x", "y"], wk_and),
    ))
    write("logics", "PWKM", matrices(("WK3", [1, 2])))
    write("logics", "KL", matrices(("K3", [2])))
    write("logics", "LP", matrices(("K3", [1, 2])))
    write("logics", "ETL", matrices(("DM4", [3])))
    order = [([], "one"), (["x", "y"], "(and x y)"), (["x"], "(or x y)")]
    write("logics", "ORDER", rules(*order))
    write("logics", "KG", rules(*order, (["x"], "(box x)")))
    write("logics", "LUK", rules(
        ([], "(imp x (imp y x))"),
        ([], "(imp (imp x y) (imp (imp y z) (imp x z)))"),
        ([], "(imp (imp (imp x y) y) (imp (imp y x) x))"),
        ([], "(imp (imp (neg x) (neg y)) (imp y x))"),
        (["x", "(imp x y)"], "y"),
    ))
    write("logics", "ONE", rules(([], "one")))
    write("logics", "ID", rules())
    write("logics", "FEPBAD", rules((["(f y)"], "(g y)")))


def classes():
    write("classes", "alpha12", {"kind": "axioms", "equations": [
        ["(box1 x1 x1)", "one"],
        ["(box2 x1 x2 x1)", "one"],
        ["(box2 x1 x2 x2)", "one"],
    ]})
    write("classes", "wk3-q", {"kind": "generators", "algebras": ["WK3"]})
    write("classes", "k3-q", {"kind": "generators", "algebras": ["K3"]})
    write("classes", "pwk-quasi", {"kind": "axioms", "quasi": [
        {"if": [["x", "(neg x)"], ["y", "(neg y)"]], "then": ["x", "y"]},
    ]})
    write("classes", "all", {"kind": "axioms"})
    write("classes", "trivial", {"kind": "axioms", "equations": [["x", "y"]]})


def candidates():
    wk_and = {"and": {"params": ["u", "v"], "body": "(neg (or (neg u) (neg v)))"}}
    lattice_units = {"and": "one", "or": "zero"}
    write("candidates", "kl-global", {
        "variant": "global", "n_max": 3,
        "template": {"leq": "join", "units": lattice_units, "sets": [
            {"equations": ["(leq (fold and _) (or (fold or (neg _)) y))"]}]},
    })
    write("candidates", "lp-global", {
        "variant": "global", "n_max": 3,
        "families": {"0": [["(leq (neg y) y)"]]},
        "template": {"leq": "join", "units": lattice_units, "sets": [
            {"equations": ["(leq (and (fold and _) (neg y)) y)"]}]},
    })
    write("candidates", "pwk-local", {
        "variant": "local", "n_max": 3,
        "template": {"leq": "join", "abbrev": wk_and, "sets": [
            {"equations": [["y", "(or y (neg y))"]]},
            {"equations": ["(leq (fold and _) y)"], "over": "subsets"}]},
    })
    box_step = {"bstep": {"params": ["u", "w"], "body": "(and u (box w))"}}
    write("candidates", "kg-local", {
        "variant": "local", "n_max": 2,
        "template": {"leq": "meet", "units": lattice_units, "abbrev": box_step, "sets": [
            {"equations": ["(leq (iter k bstep (fold and _)) y)"],
             "index": {"k": [0, 1, 2, 3, 4]}}]},
    })
    for k in range(4):
        write("candidates", f"kg-global-k{k}", {
            "variant": "global", "n_max": 1,
            "template": {"leq": "meet", "units": lattice_units, "abbrev": box_step, "sets": [
                {"equations": [f"(leq (iter {k} bstep (fold and _)) y)"]}]},
        })
    for name, fold in (("luk-and-local", "and"), ("luk-fusion-local", "fusion")):
        write("candidates", name, {
            "variant": "local", "n_max": 3,
            "template": {"leq": "meet", "units": {"and": "one", "fusion": "one"}, "sets": [
                {"equations": [f"(leq (iter k fusion one (fold {fold} _)) y)"],
                 "index": {"k": [0, 1, 2, 3, 4]}}]},
        })
    for k in range(4):
        write("candidates", f"luk-global-k{k}", {
            "variant": "global", "n_max": 1,
            "template": {"leq": "meet", "units": {"and": "one"}, "sets": [
                {"equations": [f"(leq (iter {k} fusion one (fold and _)) y)"]}]},
        })
    write("candidates", "one-identity", {
        "variant": "local", "n_max": 1,
        "families": {"0": [[["y", "one"]]], "1": [[["x1", "y"]], [["y", "one"]]]},
    })
    write("candidates", "wk3-top", {
        "variant": "local", "n_max": 0, "families": {"0": [[["y", "one"]]]}})
    write("candidates", "wk3-excluded-middle", {
        "variant": "local", "n_max": 0, "families": {"0": [[["(or y (neg y))", "y"]]]}})


def testbeds():
    write("testbeds", "k3-isp", {"generators": ["K3"], "arity": 2, "subalgebras": True})
    write("testbeds", "wk3-isp", {"generators": ["WK3"], "arity": 2, "subalgebras": True})
    write("testbeds", "wk3", {"algebras": ["WK3"]})
    write("testbeds", "wk3c", {"algebras": ["WK3c"]})
    write("testbeds", "modal-chains", {"algebras": ["ch1", "ch2", "ch3", "ch4"]})
    write("testbeds", "modal-chains-5", {"algebras": ["ch1", "ch2", "ch3", "ch4", "ch5"]})
    write("testbeds", "luk-chains", {"algebras": ["L3", "L4", "L5"]})
    write("testbeds", "luk-chains-2", {"algebras": ["L2", "L3", "L4", "L5"]})
    write("testbeds", "lattices", {"algebras": ["M3", "B4"]})
    write("testbeds", "fepbad", {"algebras": ["fepbad"]})
    write("testbeds", "box5", {"algebras": ["box5"]})


if __name__ == "__main__":
    algebras()
    logics()
    classes()
    candidates()
    testbeds()
