"""Instance enumerators and the named property-suite registry.

Enumerators are exhaustive, duplicate-free and deterministically ordered;
their totals are cross-checked against independent counting formulas.
Suites bind one named assertion each to an executable check over
enumerated or seeded instances.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List

from .algebra import DEFAULT_SEED, finite_algebra
from .errors import InputError, InvariantViolation
from .topology import FiniteSpace, space_from_preorder

MAX_ENUM_SIZE = 5
MAX_TOPOLOGY_SIZE = 4

#: labeled topologies on 1..4 points
TOPOLOGY_COUNTS = {1: 1, 2: 4, 3: 29, 4: 355}


def _point_names(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(n))


def all_topologies(n: int) -> Iterator[FiniteSpace]:
    """Every topology on n labeled points, via reflexive transitive relations."""
    if not 1 <= n <= MAX_TOPOLOGY_SIZE:
        raise InputError(f"topology enumeration capped at {MAX_TOPOLOGY_SIZE} points")
    names = _point_names(n)
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for mask in range(1 << len(offdiag)):
        rel = {(i, i) for i in range(n)}
        for k, pair in enumerate(offdiag):
            if mask >> k & 1:
                rel.add(pair)
        if any(
            (x, z) not in rel
            for x, y in rel for y2, z in rel if y == y2
        ):
            continue
        count += 1
        yield space_from_preorder(names, rel)
    if count != TOPOLOGY_COUNTS[n]:
        raise InvariantViolation(
            f"topology count for n={n}: got {count}, expected {TOPOLOGY_COUNTS[n]}"
        )


def all_contact_relations(n: int) -> Iterator[frozenset]:
    """Every reflexive symmetric atom relation on n atoms, as ordered-pair sets."""
    if not 1 <= n <= MAX_ENUM_SIZE:
        raise InputError(f"contact enumeration capped at {MAX_ENUM_SIZE} atoms")
    pairs = list(itertools.combinations(range(n), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        rel = {(i, i) for i in range(n)}
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                rel.add((i, j))
                rel.add((j, i))
        count += 1
        yield frozenset(rel)
    if count != 1 << (n * (n - 1) // 2):
        raise InvariantViolation("contact relation count mismatch")


def all_dual_maps(n: int, m: int) -> Iterator[tuple]:
    """Every dual point map for a Boolean homomorphism P(n) -> P(m).

    A hom into the powerset on m atoms is determined by sending each of the
    m codomain atoms to one of the n domain atoms: n**m maps.
    """
    if not (1 <= n <= MAX_ENUM_SIZE and 1 <= m <= MAX_ENUM_SIZE):
        raise InputError(f"hom enumeration capped at {MAX_ENUM_SIZE} atoms")
    count = 0
    for d in itertools.product(range(n), repeat=m):
        count += 1
        yield d
    if count != n ** m:
        raise InvariantViolation("dual map count mismatch")


def all_lcas(n: int):
    """Every (atom relation, ideal generator) pair on n atoms."""
    from .algebra import FiniteElement, Ideal
    from .contact import LocalContactAlgebra, make_contact

    if not 1 <= n <= MAX_ENUM_SIZE:
        raise InputError(f"lca enumeration capped at {MAX_ENUM_SIZE} atoms")
    A = finite_algebra(n)
    for rel in all_contact_relations(n):
        ca = make_contact(A, rel)
        for gen_bits in range(1 << n):
            yield LocalContactAlgebra(ca, Ideal(A, FiniteElement(gen_bits, n)))


def all_comma_candidates(n: int):
    """Candidate comma objects over P(n): Z is every ultrafilter and p runs
    over all surjections onto smaller discrete spaces.  Only the bijections
    survive validation; the rest exercise the rejection paths."""
    from .duality import comma_candidate

    if not 1 <= n <= MAX_ENUM_SIZE:
        raise InputError(f"comma enumeration capped at {MAX_ENUM_SIZE} atoms")
    for m in range(1, n + 1):
        for assignment in itertools.product(range(m), repeat=n):
            if set(assignment) != set(range(m)):
                continue
            yield comma_candidate(n, assignment, m)


ENUMERATOR_KINDS = {
    "topologies": (all_topologies, MAX_TOPOLOGY_SIZE),
    "contact_relations": (all_contact_relations, MAX_ENUM_SIZE),
    "lcas": (all_lcas, MAX_ENUM_SIZE),
    "comma_objects": (all_comma_candidates, MAX_ENUM_SIZE),
}


def enumerate_instances(kind: str, *sizes: int):
    """Dispatch an enumerator by kind name; sizes beyond the cap are input errors."""
    if kind == "boolean_homs":
        return all_dual_maps(*sizes)
    if kind not in ENUMERATOR_KINDS:
        raise InputError(f"unknown instance kind {kind!r}")
    fn, cap = ENUMERATOR_KINDS[kind]
    if any(s > cap for s in sizes):
        raise InputError(f"{kind} enumeration capped at {cap}")
    return fn(*sizes)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@dataclass
class SuiteResult:
    """Outcome of one named property suite."""

    suite_name: str
    statement: str
    instances_checked: int
    failures: List[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite_name,
            "statement": self.statement,
            "instances": self.instances_checked,
            "failures": self.failures,
            "elapsed_seconds": round(self.elapsed, 3),
            "passed": self.passed,
        }


class _Suite:
    def __init__(self, name: str, statement: str, body: Callable):
        self.name = name
        self.statement = statement
        self.body = body


_REGISTRY: Dict[str, _Suite] = {}


def register_suite(name: str, statement: str):
    def deco(fn):
        _REGISTRY[name] = _Suite(name, statement, fn)
        return fn
    return deco


def suite_names() -> tuple:
    return tuple(sorted(_REGISTRY))


def run_suite(name: str, seed: int = DEFAULT_SEED, max_size: int = 0) -> SuiteResult:
    """Run one registered suite.  ``max_size=0`` means the suite default."""
    if name not in _REGISTRY:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    suite = _REGISTRY[name]
    start = time.monotonic()
    checked, failures = suite.body(seed=seed, max_size=max_size)
    elapsed = time.monotonic() - start
    return SuiteResult(suite.name, suite.statement, checked, failures, elapsed)


def run_all(seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    return [run_suite(name, seed=seed) for name in suite_names()]


# suite bodies live next to the modules they exercise; importing them here
# fills the registry exactly once
from . import suites  # noqa: E402,F401  (registration side effect)
