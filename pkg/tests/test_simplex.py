import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from plogic.simplex import Constraint, LinearProgram, UnboundedError, lp_solve


def lp(n, rows, objective):
    return LinearProgram(
        n,
        tuple(Constraint(tuple(F(c) for c in coeffs), lo, hi) for coeffs, lo, hi in rows),
        tuple(F(c) for c in objective),
    )


def test_examples():
    simplex_eq = ((1, 1), F(1), F(1))
    assert lp_solve(lp(2, [simplex_eq], (0, 1)), "max").value == 1
    assert lp_solve(lp(2, [simplex_eq, ((0, 1), None, F(1, 2))], (0, 1)), "max").value == F(1, 2)
    infeasible = lp(2, [simplex_eq, ((1, 0), F(3, 4), None), ((0, 1), F(3, 4), None)], (0, 1))
    assert lp_solve(infeasible, "min") is None
    assert lp_solve(infeasible, "max") is None


def test_unbounded_detected():
    with pytest.raises(UnboundedError):
        lp_solve(lp(2, [((1, -1), None, F(1))], (1, 0)), "max")


def test_redundant_equalities():
    rows = [((1, 1, 1), F(1), F(1)), ((2, 2, 2), F(2), F(2)), ((1, 0, 0), F(1, 3), F(1, 3))]
    res = lp_solve(lp(3, rows, (0, 1, 0)), "max")
    assert res.value == F(2, 3)
    assert res.x == (F(1, 3), F(2, 3), F(0))


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule.
    rows = [
        ((F(1, 4), -60, F(-1, 25), 9), None, F(0)),
        ((F(1, 2), -90, F(-1, 50), 3), None, F(0)),
        ((0, 0, 1, 0), None, F(1)),
    ]
    res = lp_solve(lp(4, rows, (F(-3, 4), 150, F(-1, 50), 6)), "min")
    assert res.value == F(-1, 20)


def _solve_square(a, b):
    n = len(a)
    m = [list(r) + [v] for r, v in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def brute_force(problem: LinearProgram, direction):
    """Best vertex over all choices of n tight constraints (exact, tiny LPs only)."""
    n = problem.n_vars
    planes = [(tuple(F(int(j == i)) for j in range(n)), F(0)) for i in range(n)]
    for c in problem.constraints:
        for bound in (c.lo, c.hi):
            if bound is not None:
                planes.append((c.coeffs, bound))

    def feasible(x):
        if any(v < 0 for v in x):
            return False
        for c in problem.constraints:
            s = sum(a * v for a, v in zip(c.coeffs, x))
            if (c.lo is not None and s < c.lo) or (c.hi is not None and s > c.hi):
                return False
        return True

    best = None
    for combo in itertools.combinations(planes, n):
        x = _solve_square([p[0] for p in combo], [p[1] for p in combo])
        if x is None or not feasible(x):
            continue
        val = sum(c * v for c, v in zip(problem.objective, x))
        if best is None or (val < best if direction == "min" else val > best):
            best = val
    return best


def random_bounded_lp(rng, n, m):
    rows = [((1,) * n, F(1), F(1))]
    for _ in range(m):
        coeffs = tuple(rng.randint(0, 1) for _ in range(n))
        den = rng.randint(1, 10)
        a, b = sorted((rng.randint(0, den), rng.randint(0, den)))
        kind = rng.random()
        lo, hi = F(a, den), F(b, den)
        if kind < 0.2:
            lo = None
        elif kind < 0.4:
            hi = None
        elif kind < 0.5:
            hi = lo
        rows.append((coeffs, lo, hi))
    obj = tuple(rng.randint(-3, 3) for _ in range(n))
    return lp(n, rows, obj)


@pytest.mark.parametrize("seed", range(40))
def test_against_vertex_enumeration(seed):
    rng = random.Random(seed)
    problem = random_bounded_lp(rng, rng.randint(2, 4), rng.randint(1, 3))
    for direction in ("min", "max"):
        res = lp_solve(problem, direction)
        expected = brute_force(problem, direction)
        if expected is None:
            assert res is None
        else:
            assert res.value == expected


def _check_point(problem, res):
    assert all(v >= 0 for v in res.x)
    for c in problem.constraints:
        s = sum(a * v for a, v in zip(c.coeffs, res.x))
        assert c.lo is None or s >= c.lo
        assert c.hi is None or s <= c.hi
    assert sum(a * v for a, v in zip(problem.objective, res.x)) == res.value


@pytest.mark.parametrize("seed", range(40))
def test_against_scipy(seed):
    rng = random.Random(1000 + seed)
    problem = random_bounded_lp(rng, rng.randint(4, 16), rng.randint(2, 6))
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for c in problem.constraints:
        row = [float(v) for v in c.coeffs]
        if c.lo is not None and c.lo == c.hi:
            a_eq.append(row)
            b_eq.append(float(c.lo))
            continue
        if c.hi is not None:
            a_ub.append(row)
            b_ub.append(float(c.hi))
        if c.lo is not None:
            a_ub.append([-v for v in row])
            b_ub.append(-float(c.lo))
    for direction, sign in (("min", 1), ("max", -1)):
        ref = linprog(
            sign * np.array([float(v) for v in problem.objective]),
            A_ub=np.array(a_ub) if a_ub else None, b_ub=b_ub or None,
            A_eq=np.array(a_eq), b_eq=b_eq, bounds=(0, None), method="highs",
        )
        res = lp_solve(problem, direction)
        if ref.status == 2:
            assert res is None
            continue
        assert ref.status == 0
        assert res is not None
        _check_point(problem, res)
        assert float(res.value) == pytest.approx(sign * ref.fun, abs=1e-9)


def test_exact_and_repeatable():
    rng = random.Random(3)
    problem = random_bounded_lp(rng, 12, 5)
    first = lp_solve(problem, "max")
    for _ in range(3):
        again = lp_solve(problem, "max")
        assert again == first
