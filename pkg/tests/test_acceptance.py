"""Acceptance criteria 1-8. Each prints one PASS/FAIL line with its runtime.

Run alone with `pytest tests/test_acceptance.py -s` or `python3 tests/test_acceptance.py`.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import DISCS, random_form  # noqa: E402
from gausscomp.classgroup import (  # noqa: E402
    NARROW,
    WIDE,
    check_group_table,
    class_group,
    class_of,
    compose,
    dirichlet_compose,
    fundamental_unit,
)
from gausscomp.clifford import clifford, norm_form  # noqa: E402
from gausscomp.errors import ValidationError  # noqa: E402
from gausscomp.forms import flip_orientation, proper_equivalent  # noqa: E402
from gausscomp.hecke import eigenforms, eigenvalue, hecke_operator, is_prime, omf_space  # noqa: E402
from gausscomp.rings import (  # noqa: E402
    GoodFrameModule,
    dual,
    is_pseudoregular,
    mat_det,
    mat_trace,
    trace_norm,
)
from gausscomp.universal import (  # noqa: E402
    verify_canonical_orientation,
    verify_norm_multiplicativity,
    verify_trace_criterion,
)
from test_forms import brute_force_reduced_count  # noqa: E402


def criterion_1():
    rng = random.Random(1)
    for _ in range(10**4):
        f = random_form(rng, 10**6)
        if norm_form(clifford(f).module) != f:
            return False, f"round trip failed at {f}"
    return True, "10^4 random primitive forms, |coeff| <= 10^6"


def criterion_2():
    reports = [verify_norm_multiplicativity(), verify_trace_criterion(), verify_canonical_orientation()]
    bad = [r.name for r in reports if not r.ok]
    return not bad, "all difference polynomials are 0" if not bad else f"nonzero: {bad}"


def criterion_3():
    pairs = 0
    for D in DISCS:
        reps = class_group(D, NARROW).reps
        for f in reps:
            for g in reps:
                pairs += 1
                if not proper_equivalent(compose(f, g), dirichlet_compose(f, g)):
                    return False, f"D={D}: {f} * {g} disagrees"
    return True, f"{pairs} class pairs over {len(DISCS)} discriminants"


def criterion_4():
    for D, h in [(-4, 1), (-23, 3), (-47, 5), (-71, 7), (-163, 1)]:
        got = class_group(D).order
        if got != h or brute_force_reduced_count(D) != h:
            return False, f"h({D}) = {got}, expected {h}"
    if (class_group(12, NARROW).order, class_group(12, WIDE).order) != (2, 1):
        return False, "h+(12), h(12) != 2, 1"
    if fundamental_unit(12)[2] != 1:
        return False, "fundamental unit of 12 should have norm +1"
    if class_group(229, NARROW).order != class_group(229, WIDE).order or fundamental_unit(229)[2] != -1:
        return False, "h+(229) != h(229) or unit norm != -1"
    return True, "h(-4,-23,-47,-71,-163) = 1,3,5,7,1; h+(12)=2, h(12)=1; h+(229)=h(229)"


def criterion_5():
    count = 0
    for D in DISCS:
        for variant in (WIDE, NARROW):
            G = class_group(D, variant)
            problems = check_group_table(G.table)
            if problems:
                return False, f"D={D} {variant}: {problems[:2]}"
            for i, f in enumerate(G.reps):
                if class_of(flip_orientation(f), G) != G.inverse(i):
                    return False, f"inverse of {f} is not its flip"
            count += 1
    return True, f"{count} tables: identity, inverses, associativity, [(a,-b,c)] = [(a,b,c)]^-1"


def criterion_6():
    space = omf_space(-23)
    n = space.dimension
    ops = []
    for p in range(2, 101):
        if not is_prime(p):
            continue
        try:
            ops.append(hecke_operator(space, p))
        except ValidationError:
            continue
    for T in ops:
        M = T.matrix
        if any(sorted(row) != [0] * (n - 1) + [1] for row in M) or \
                any(sum(M[i][j] for i in range(n)) != 1 for j in range(n)):
            return False, f"T_{T.prime} is not a permutation matrix"
        for U in ops:
            if [T.perm[U.perm[i]] for i in range(n)] != [U.perm[T.perm[i]] for i in range(n)]:
                return False, f"T_{T.prime} and T_{U.prime} do not commute"
    chars = eigenforms(space)
    for chi in chars:
        for T in ops:
            eigenvalue(chi, T)  # raises unless T chi == chi([P]) chi exactly
    T2 = next(T for T in ops if T.prime == 2)
    if sorted(eigenvalue(chi, T2) for chi in chars) != [0, 1, 2]:
        return False, "T_2 eigenvalues are not {1, z3, z3^2}"
    return True, f"{len(ops)} operators at p <= 100; T_2 eigenvalues 1, z3, z3^2"


def criterion_7():
    rng = random.Random(7)
    frames = 0
    while frames < 10**3:
        a, b, c = (rng.randint(-10**6, 10**6) for _ in range(3))
        I = GoodFrameModule.from_frame(a, b, c)
        if I.ring.disc == 0 or I.ring.n == 0:
            continue
        frames += 1
        for M in (I, dual(I)):
            if not is_pseudoregular(M.ring, M.matrix):
                return False, f"{M} is not pseudoregular"
            for _ in range(100):
                u = (rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
                A = M.action(u)
                if (mat_trace(A), mat_det(A)) != trace_norm(M.ring, u):
                    return False, f"char poly mismatch for {M}, u={u}"
    return True, "10^3 frames and their duals x 100 elements"


def criterion_8():
    rng = random.Random(8)
    for _ in range(10**4):
        f = random_form(rng, 10**6)
        if clifford(f).ring.disc != f.disc:
            return False, f"disc mismatch at {f}"
    diffs = verify_canonical_orientation().differences
    key = "(t^2 - 4n) - (b^2 - 4ac) at (t, n) = (b, ac)"
    if not diffs[key].is_zero():
        return False, "symbolic disc identity failed"
    return True, "10^4 random forms and the symbolic identity t^2 - 4n = b^2 - 4ac"


CRITERIA = [
    (1, "round-trip exactness", criterion_1, 5.0),
    (2, "symbolic certificates", criterion_2, 1.0),
    (3, "Clifford compose = Dirichlet oracle", criterion_3, 10.0),
    (4, "class numbers, narrow vs wide", criterion_4, 10.0),
    (5, "group axioms and inverse law", criterion_5, None),
    (6, "Hecke suite, D = -23", criterion_6, 5.0),
    (7, "pseudoregularity of frames and duals", criterion_7, None),
    (8, "discriminant preservation", criterion_8, None),
]


def run_criterion(number, name, fn, budget):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # report, then let pytest see the failure
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and budget is not None and elapsed > budget:
        ok, detail = False, f"{detail}; took {elapsed:.2f}s > {budget}s"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({elapsed:.2f}s) - {detail}"
    return ok, line


@pytest.mark.parametrize("number,name,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, budget, capsys):
    ok, line = run_criterion(number, name, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
