"""The twelve acceptance criteria; each test prints one PASS/FAIL line with its timing.

Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""
import os
import subprocess
import sys
import time

import pytest

from cubar.chain import Z2, ZZ
from cubar.cli import RunConfig, run, to_json
from cubar.spaces import resolve
from cubar.suites import SuiteContext, run_suite

SPACES = ("sphere2", "sphere3", "wedge22")


def _suite(name, space, degree, ring=ZZ, seed=7):
    return run_suite(name, SuiteContext(resolve(space), degree, ring, seed))


def _failures(report):
    return {k: v for k, v in report["checks"].items() if v["failures"]}


def _line(number, title, ok, seconds, budget, detail=""):
    status = "PASS" if ok and seconds < budget else "FAIL"
    return f"criterion {number:2d} {status}  {title}  ({seconds:.1f}s / {budget}s){'  ' + detail if detail else ''}"


def _report(capsys, number, title, ok, seconds, budget, detail=""):
    line = _line(number, title, ok, seconds, budget, detail)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, detail
    assert seconds < budget, f"took {seconds:.1f}s, budget {budget}s"


def _suites_on_spaces(name, degree, spaces=SPACES, rings=(ZZ,)):
    bad = {}
    for space in spaces:
        for ring in rings:
            f = _failures(_suite(name, space, degree, ring))
            if f:
                bad[f"{space}/{ring}"] = f
    return bad


# ----------------------------------------------------------------------------

def criterion_1():
    bad = _suites_on_spaces("d-squared", 6)
    return not bad, repr(bad) if bad else "10 complexes x 3 spaces"


def criterion_2():
    bad = _suites_on_spaces("chain-identifications", 6)
    return not bad, repr(bad) if bad else "(i)-(iii) x 3 spaces"


def criterion_3():
    from cubar.chain import homology_table
    from cubar.cubical import normalized_cubical_chains
    from cubar.loop_path import loop_functor
    expected = {"sphere2": (6, [1] * 7), "sphere3": (6, [1, 0, 1, 0, 1, 0, 1]),
                "wedge22": (5, [2 ** k for k in range(6)])}
    got = {}
    for space, (n, want) in expected.items():
        hom = homology_table(normalized_cubical_chains(loop_functor(resolve(space).simplicial, n + 1)),
                             ZZ, range(n + 1))
        got[space] = ([h.betti for h in hom], any(h.torsion for h in hom))
    ok = all(got[s] == (w, False) for s, (_, w) in expected.items())
    return ok, "; ".join(f"{s}: {','.join(map(str, b))}" for s, (b, _) in got.items())


def criterion_4():
    from cubar.chain import homology_table
    from cubar.cubical import normalized_cubical_chains
    from cubar.loop_path import path_functor
    bad = {}
    for space in SPACES:
        hom = homology_table(normalized_cubical_chains(path_functor(resolve(space).simplicial, 6)), ZZ, range(6))
        got = [(h.betti, h.torsion) for h in hom]
        if got != [(1, ())] + [(0, ())] * 5:
            bad[space] = got
    return not bad, repr(bad) if bad else "H_0 = Z, H_1..H_5 = 0 on 3 spaces"


def criterion_5():
    bad = _suites_on_spaces("diagonals", 6)
    return not bad, repr(bad) if bad else "coassociative, counital, chain map, algebra map, Baues = Serre"


def criterion_6():
    bad = _suites_on_spaces("twisting", 6)
    return not bad, repr(bad) if bad else "Brown's condition holds; perturbed controls detected"


def criterion_7():
    bad = _suites_on_spaces("hga", 5, rings=(ZZ, Z2))
    return not bad, repr(bad) if bad else "axioms and identities over Z and Z/2; cup-1 oracle on the 3-simplex"


def criterion_8():
    from cubar.hga import associativity_failures, exhaustive_triples, leibniz_failures, random_tuples
    from cubar.models import suspension_model_from_json
    bad = _suites_on_spaces("twisted-products", 6)
    models = 0
    for k in (0, 1, 2):
        table = {"HY": {"0": 1, "2": 1}, "HZ": {"0": 1, "2": 1}, "fstar": {"z2": [["y2", k]]} if k else {}}
        T = suspension_model_from_json(table, 6).algebra
        triples = random_tuples(T, 200, 3, seed=7)
        f = (associativity_failures(T, triples) + associativity_failures(T, exhaustive_triples(T, 4))
             + leibniz_failures(T, random_tuples(T, 200, 2, seed=7)))
        models += 1
        if f or len(triples) < 200:
            bad[f"suspension k={k}"] = f[:3]
    f = _failures(_suite("twisted-products", "suspended_rp2", 6, Z2))
    if f:
        bad["suspended_rp2/Z2"] = f
    return not bad, repr(bad) if bad else "path and suspension models on 3 spaces, 3 table models, S(RP^2) mod 2"


def criterion_9():
    rep = _suite("acyclic-bar", "sphere3", 6, Z2, seed=7)
    return rep["ok"], f"{rep['info']['random_triples']} seeded triples" if rep["ok"] else repr(_failures(rep))


def criterion_10():
    rep = _suite("triangulation", "sphere3", 4)
    counts = rep["info"]["top_simplices"]
    return rep["ok"], (f"top simplices {','.join(str(counts[k]) for k in sorted(counts))}; I2, I3, Omega S3 trunc 4"
                       if rep["ok"] else repr(_failures(rep)))


def criterion_11():
    rep = _suite("suspension", "sphere2", 6)
    ranks = {k: v for k, v in rep["info"].items() if k.endswith("_ranks")}
    return rep["ok"], ("; ".join(f"{k[:-6]}: {','.join(map(str, v))}" for k, v in ranks.items())
                       if rep["ok"] else repr(_failures(rep)))


def criterion_12():
    # separate interpreters with different hash seeds, and the in-process worker-pool path
    cmd = [sys.executable, "-m", "cubar.cli", "verify", "--space", "sphere2", "--seed", "7", "--format", "json"]
    outs = []
    for hs in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hs)
        outs.append(subprocess.run(cmd, env=env, capture_output=True, check=False).stdout)
    a = to_json(run(RunConfig("verify", space="sphere3", seed=7, jobs=1))[1])
    b = to_json(run(RunConfig("verify", space="sphere3", seed=7, jobs=3))[1])
    ok = outs[0] == outs[1] and bool(outs[0]) and a == b
    return ok, f"{len(outs[0])} bytes identical across runs" if ok else "reports differ"


CRITERIA = [
    (1, "d^2 = 0 on every construction", criterion_1, 30),
    (2, "chain identifications (i)-(iii)", criterion_2, 60),
    (3, "loop-space homology", criterion_3, 60),
    (4, "path-space acyclicity", criterion_4, 60),
    (5, "Serre/Baues diagonal suite", criterion_5, 60),
    (6, "twisting-cochain suite", criterion_6, 30),
    (7, "homotopy G-algebra axioms", criterion_7, 120),
    (8, "twisted products: associativity and Leibniz", criterion_8, 120),
    (9, "acyclic bar product associative", criterion_9, 30),
    (10, "triangulation of cubes", criterion_10, 60),
    (11, "suspension small model", criterion_11, 30),
    (12, "determinism", criterion_12, 120),
]


@pytest.mark.parametrize("number,title,check,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, budget, capsys):
    t = time.perf_counter()
    ok, detail = check()
    _report(capsys, number, title, ok, time.perf_counter() - t, budget, detail)


if __name__ == "__main__":
    failed = 0
    for number, title, check, budget in CRITERIA:
        t = time.perf_counter()
        ok, detail = check()
        dt = time.perf_counter() - t
        print(_line(number, title, ok, dt, budget, detail), flush=True)
        failed += not (ok and dt < budget)
    sys.exit(1 if failed else 0)
