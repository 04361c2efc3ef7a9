"""The two classical counterexamples, with their expected verdicts baked in.

``cyclic-nilpotents``: A_i = e_i e_{i+1}^T (indices mod n, here n = 4). Each
A_i is triangularizable and D(A_i A_j) = 0 for all i, j, yet the family is
not simultaneously triangularizable: S = sum A_i satisfies S^n = I.

``signed-square-zero``: a 4x4 pair A, B with A^2 = B^2 = AB = BA = 0 and
zero diagonals, one of them with negative entries. |A| + B has zero diagonal
but characteristic polynomial x^4 - 4x^2, so it is not nilpotent.

The matrices can be exported to JSON and read back (possibly edited) to
exercise the checks against altered data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .diagonal import atomic_diagonal
from .errors import LatticeTriError, NegativeEntryError
from .exact import Matrix, char_poly, is_nilpotent
from .semigroup import (
    diag_commutator_condition,
    generate_closure,
    quasinilpotent_semigroup_check,
    semigroup_pipeline,
)
from .triangular import criteria_equivalence


def cyclic_generators(n: int = 4) -> list[Matrix]:
    gens = []
    for i in range(n):
        gens.append(Matrix.outer([int(k == i) for k in range(n)], [int(k == (i + 1) % n) for k in range(n)]))
    return gens


SIGNED_A = Matrix([[0, 0, 1, -1], [0, 0, -1, 1], [0, 0, 0, 0], [0, 0, 0, 0]])
SIGNED_B = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 1, 0, 0], [1, 1, 0, 0]])


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class FixtureResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def diff(self) -> list[str]:
        return [f"{c.name}: expected {c.expected!r}, got {c.actual!r}" for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "expected": c.expected, "actual": c.actual}
                for c in self.checks
            ],
        }


def _criteria_triple(m: Matrix) -> list[bool]:
    try:
        r = criteria_equivalence(m)
    except NegativeEntryError:
        return ["negative"]
    return [r.structural, r.nilpotent_offdiag, r.charpoly_diag]


def run_cyclic(data: dict[str, Matrix]) -> FixtureResult:
    gens = [data[k] for k in sorted(data)]
    n = gens[0].n
    res = FixtureResult("cyclic-nilpotents")
    add = res.checks.append

    add(Check("generators pass all three criteria", True,
              all(_criteria_triple(g) == [True, True, True] for g in gens)))
    add(Check("D(A_i A_j) = 0 for all ordered pairs", True,
              all(atomic_diagonal(a @ b).is_zero() for a in gens for b in gens)))
    s = gens[0]
    for g in gens[1:]:
        s = s + g
    add(Check("S^n = I", True, s ** n == Matrix.identity(n)))
    add(Check("S nilpotent", False, is_nilpotent(s)))
    add(Check("S criteria (a, b, c)", [False, False, False], _criteria_triple(s)))

    add(Check("depth-1 diagonal condition", True, diag_commutator_condition(generate_closure(gens, 1)).holds))
    closure = generate_closure(gens, n)
    e00 = Matrix.outer([int(k == 0) for k in range(n)], [int(k == 0) for k in range(n)])
    product = gens[0]
    for g in gens[1:]:
        product = product @ g
    add(Check("A_1 A_2 ... A_n = e_1 e_1^T in the depth-n closure", True,
              product == e00 and e00 in closure.matrices))

    verdict = semigroup_pipeline(gens, n)
    add(Check("each closure element triangularizable", True, verdict.each_triangularizable))
    add(Check("commonly triangularizable", False, verdict.commonly_triangularizable))
    pair = verdict.counterexample_pair
    add(Check("counterexample pair with words of length <= n", True,
              pair is not None and max(len(w) for w in pair) <= n))

    full = generate_closure(gens, n + 2)
    add(Check("closure exhausted", True, full.complete))
    add(Check("all closure elements nilpotent", False, quasinilpotent_semigroup_check(full)))
    return res


def run_signed(data: dict[str, Matrix]) -> FixtureResult:
    a, b = data["A"], data["B"]
    n = a.n
    res = FixtureResult("signed-square-zero")
    add = res.checks.append
    zero = Matrix.zeros(n)

    add(Check("A^2 = B^2 = AB = BA = 0", True, all((x @ y).is_zero() for x in (a, b) for y in (a, b))))
    add(Check("D(A) = D(B) = 0", True, atomic_diagonal(a).is_zero() and atomic_diagonal(b).is_zero()))
    try:
        semigroup_pipeline([a, b], 2)
        rejected = False
    except NegativeEntryError:
        rejected = True
    add(Check("signed generators rejected", True, rejected))

    m = a.abs() + b
    add(Check("|A| + B has zero diagonal", True, atomic_diagonal(m).is_zero()))
    add(Check("char poly of |A| + B", "x^4 - 4*x^2", str(char_poly(m))))
    add(Check("|A| + B nilpotent", False, is_nilpotent(m)))
    add(Check("|A| + B criteria (a, b, c)", [False, False, False], _criteria_triple(m)))

    companion = [zero, a.abs(), b]
    add(Check("D = 0 on 0, |A|, B", True, all(atomic_diagonal(x).is_zero() for x in companion)))
    add(Check("0, |A|, B each triangularizable", True,
              all(_criteria_triple(x) == [True, True, True] for x in companion)))
    verdict = semigroup_pipeline(companion, 2)
    add(Check("semigroup of 0, |A|, B commonly triangularizable", False, verdict.commonly_triangularizable))
    return res


def default_data() -> dict[str, dict[str, Matrix]]:
    return {
        "cyclic-nilpotents": {f"A{i + 1}": g for i, g in enumerate(cyclic_generators(4))},
        "signed-square-zero": {"A": SIGNED_A, "B": SIGNED_B},
    }


FIXTURES: dict[str, Callable[[dict[str, Matrix]], FixtureResult]] = {
    "cyclic-nilpotents": run_cyclic,
    "signed-square-zero": run_signed,
}


def export_fixtures(directory: Path) -> list[Path]:
    written = []
    for name, mats in default_data().items():
        d = Path(directory) / name
        d.mkdir(parents=True, exist_ok=True)
        for key, m in mats.items():
            path = d / f"{key}.json"
            path.write_text(json.dumps(m.to_json(), indent=2) + "\n", encoding="utf-8")
            written.append(path)
    return written


def load_fixture_data(directory: Path | None) -> dict[str, dict[str, Matrix]]:
    data = default_data()
    if directory is None:
        return data
    for name, mats in data.items():
        for key in list(mats):
            path = Path(directory) / name / f"{key}.json"
            if path.exists():
                mats[key] = Matrix.from_json(json.loads(path.read_text(encoding="utf-8")))
    return data


def run_fixtures(directory: Path | None = None, names: list[str] | None = None) -> list[FixtureResult]:
    data = load_fixture_data(directory)
    results = []
    for name in names or list(FIXTURES):
        try:
            results.append(FIXTURES[name](data[name]))
        except LatticeTriError as exc:
            results.append(FixtureResult(name, [Check("runs without error", "ok", f"{type(exc).__name__}: {exc}")]))
    return results
