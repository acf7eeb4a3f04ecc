"""Finite topological spaces, regular closed algebras and map predicates.

Point sets are bitmasks over the point tuple; closure and interior are
precomputed tables indexed by mask, which keeps the exhaustive sweeps over
all topologies on four labeled points fast.  Name-based views exist at the
edges for JSON and error messages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence

from .errors import HypothesisError, InputError, InvariantViolation


@dataclass(frozen=True)
class FiniteSpace:
    """A topology on a small tuple of named points, stored as open masks."""

    points: tuple
    opens: frozenset  # frozenset[int] of masks

    def __post_init__(self):
        if len(self.points) > 8:
            raise InputError("spaces are capped at 8 points")
        if len(set(self.points)) != len(self.points):
            raise InputError("point names must be distinct")
        full = self.full_mask
        if 0 not in self.opens or full not in self.opens:
            raise InputError("opens must contain the empty set and the whole set")
        for u in self.opens:
            if u & ~full:
                raise InputError("open set mentions unknown points")
            for v in self.opens:
                if u | v not in self.opens:
                    raise InputError(
                        f"opens not closed under union: missing {self.set_names(u | v)}"
                    )
                if u & v not in self.opens:
                    raise InputError(
                        f"opens not closed under intersection: missing {self.set_names(u & v)}"
                    )

    # -- mask helpers ---------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        index = {p: i for i, p in enumerate(self.points)}
        for name in names:
            if name not in index:
                raise InputError(f"unknown point {name!r}")
            mask |= 1 << index[name]
        return mask

    def set_names(self, mask: int) -> tuple:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def subsets(self):
        return range(self.full_mask + 1)

    # -- topology -------------------------------------------------------------

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full_mask & ~mask) in self.opens

    def closed_sets(self) -> tuple:
        return tuple(sorted(self.full_mask & ~u for u in self.opens))

    @property
    def _tables(self):
        # interior[m] = union of opens inside m; closure via complement
        cached = self.__dict__.get("_tables_cache")
        if cached is not None:
            return cached
        full = self.full_mask
        interior = []
        for m in range(full + 1):
            it = 0
            for u in self.opens:
                if u & ~m == 0:
                    it |= u
            interior.append(it)
        closure = [full & ~interior[full & ~m] for m in range(full + 1)]
        self.__dict__["_tables_cache"] = (tuple(closure), tuple(interior))
        return self.__dict__["_tables_cache"]

    def closure(self, mask: int) -> int:
        return self._tables[0][mask]

    def interior(self, mask: int) -> int:
        return self._tables[1][mask]


def make_space(points: Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    pts = tuple(points)
    index = {p: i for i, p in enumerate(pts)}
    masks = set()
    for u in opens:
        m = 0
        for name in u:
            if name not in index:
                raise InputError(f"unknown point {name!r} in an open set")
            m |= 1 << index[name]
        masks.add(m)
    return FiniteSpace(pts, frozenset(masks))


def discrete_space(points: Sequence[str]) -> FiniteSpace:
    pts = tuple(points)
    return FiniteSpace(pts, frozenset(range(1 << len(pts))))


def indiscrete_space(points: Sequence[str]) -> FiniteSpace:
    pts = tuple(points)
    return FiniteSpace(pts, frozenset({0, (1 << len(pts)) - 1}))


def sierpinski() -> FiniteSpace:
    return make_space(("a", "b"), [[], ["a"], ["a", "b"]])


def closure_interior(space: FiniteSpace, names: Iterable[str]) -> tuple:
    """Closure and interior of a point set, by name."""
    m = space.mask_of(names)
    return space.set_names(space.closure(m)), space.set_names(space.interior(m))


def space_from_preorder(points: Sequence[str], relation) -> FiniteSpace:
    """The topology whose opens are the up-sets of a reflexive transitive relation."""
    pts = tuple(points)
    n = len(pts)
    succ = [0] * n
    for x, y in relation:
        succ[x] |= 1 << y
    opens = set()
    for m in range(1 << n):
        up = 0
        for i in range(n):
            if m >> i & 1:
                up |= succ[i] | (1 << i)
        if up == m:
            opens.add(m)
    return FiniteSpace(pts, frozenset(opens))


# ---------------------------------------------------------------------------
# point maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointMap:
    """A total function between the points of two finite spaces."""

    domain: FiniteSpace
    codomain: FiniteSpace
    mapping: tuple  # mapping[i] = codomain point index of domain point i

    def __post_init__(self):
        if len(self.mapping) != len(self.domain.points):
            raise InputError("mapping must cover every domain point")
        if any(not 0 <= j < len(self.codomain.points) for j in self.mapping):
            raise InputError("mapping hits unknown codomain points")

    def __call__(self, name: str) -> str:
        i = self.domain.points.index(name)
        return self.codomain.points[self.mapping[i]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.mapping):
            if mask >> i & 1:
                out |= 1 << j
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.mapping):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def compose(self, inner: "PointMap") -> "PointMap":
        """self after inner."""
        if inner.codomain != self.domain:
            raise InputError("point maps do not compose")
        return PointMap(
            inner.domain, self.codomain,
            tuple(self.mapping[j] for j in inner.mapping),
        )


def point_map(domain: FiniteSpace, codomain: FiniteSpace, assignment: Dict[str, str]) -> PointMap:
    try:
        mapping = tuple(
            codomain.points.index(assignment[p]) for p in domain.points
        )
    except KeyError as e:
        raise InputError(f"map does not cover point {e.args[0]!r}")
    except ValueError:
        raise InputError("map hits a point outside the codomain")
    return PointMap(domain, codomain, mapping)


def identity_map(space: FiniteSpace) -> PointMap:
    return PointMap(space, space, tuple(range(len(space.points))))


@dataclass(frozen=True)
class MapReport:
    continuous: bool
    closed: bool
    surjective: bool
    irreducible: bool
    perfect: bool
    fibers_compact: bool
    dense_image: bool


def map_predicates(p: PointMap) -> MapReport:
    X, Y = p.domain, p.codomain
    continuous = all(p.preimage_mask(u) in X.opens for u in Y.opens)
    closed = all(Y.is_closed(p.image_mask(c)) for c in X.closed_sets())
    full_image = p.image_mask(X.full_mask)
    surjective = full_image == Y.full_mask
    irreducible = closed and surjective and not any(
        c != X.full_mask and p.image_mask(c) == Y.full_mask
        for c in X.closed_sets()
    )
    # at finite scale every fiber is compact, so perfect reduces to closed;
    # the flag is still recorded for a uniform report shape
    fibers_compact = True
    perfect = closed and fibers_compact
    dense_image = Y.closure(full_image) == Y.full_mask
    return MapReport(
        continuous, closed, surjective, irreducible, perfect,
        fibers_compact, dense_image,
    )


# ---------------------------------------------------------------------------
# regular closed algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularClosedAlgebra:
    """The Boolean algebra of regular closed sets of a finite space.

    Join is union, meet is cl(int(F & G)), complement is cl(X - F).
    """

    space: FiniteSpace
    carrier: tuple  # sorted masks

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.space.full_mask

    def join(self, f: int, g: int) -> int:
        return f | g

    def meet(self, f: int, g: int) -> int:
        return self.space.closure(self.space.interior(f & g))

    def complement(self, f: int) -> int:
        return self.space.closure(self.space.full_mask & ~f)

    def leq(self, f: int, g: int) -> bool:
        return f | g == g

    def big_join(self, items) -> int:
        out = 0
        for f in items:
            out |= f
        return out

    def atoms(self) -> tuple:
        """Minimal nonzero members."""
        out = []
        for f in self.carrier:
            if f == 0:
                continue
            if not any(g != 0 and g != f and self.leq(g, f) for g in self.carrier):
                out.append(f)
        return tuple(out)


def rc_algebra(space: FiniteSpace, verify: bool = True) -> RegularClosedAlgebra:
    """Enumerate the regular closed sets and install the Boolean operations.

    The Boolean axioms are re-proved on the carrier before returning.
    """
    carrier = tuple(
        m for m in space.subsets() if space.closure(space.interior(m)) == m
    )
    rc = RegularClosedAlgebra(space, carrier)
    if verify:
        _verify_boolean(rc)
    return rc


def _verify_boolean(rc: RegularClosedAlgebra) -> None:
    carrier = rc.carrier
    cset = set(carrier)
    if rc.bottom not in cset or rc.top not in cset:
        raise InvariantViolation("regular closed carrier misses 0 or 1")
    for f in carrier:
        if rc.complement(f) not in cset:
            raise InvariantViolation("carrier not closed under complement")
        if rc.join(f, rc.complement(f)) != rc.top:
            raise InvariantViolation("f v f* != 1 in regular closed algebra")
        if rc.meet(f, rc.complement(f)) != rc.bottom:
            raise InvariantViolation("f ^ f* != 0 in regular closed algebra")
        if rc.complement(rc.complement(f)) != f:
            raise InvariantViolation("double complement failed")
        for g in carrier:
            if rc.join(f, g) not in cset or rc.meet(f, g) not in cset:
                raise InvariantViolation("carrier not closed under join/meet")
            if rc.join(f, rc.meet(f, g)) != f or rc.meet(f, rc.join(f, g)) != f:
                raise InvariantViolation("absorption failed")
            if rc.complement(rc.join(f, g)) != rc.meet(rc.complement(f), rc.complement(g)):
                raise InvariantViolation("De Morgan failed")
            for h in carrier:
                if rc.meet(f, rc.join(g, h)) != rc.join(rc.meet(f, g), rc.meet(f, h)):
                    raise InvariantViolation("distributivity failed")


# ---------------------------------------------------------------------------
# Boolean isomorphisms between regular closed algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BooleanIso:
    """A verified Boolean isomorphism between two RC algebras, as mask tables."""

    source: RegularClosedAlgebra
    target: RegularClosedAlgebra
    forward: tuple  # pairs (source mask, target mask)
    backward: tuple

    def fwd(self, f: int) -> int:
        return dict(self.forward)[f]

    def bwd(self, g: int) -> int:
        return dict(self.backward)[g]


def _check_iso(src: RegularClosedAlgebra, dst: RegularClosedAlgebra,
               fwd: Dict[int, int], bwd: Dict[int, int], label: str) -> BooleanIso:
    for f in src.carrier:
        if fwd[f] not in set(dst.carrier):
            raise InvariantViolation(f"{label}: image leaves the target carrier")
        if bwd[fwd[f]] != f:
            raise InvariantViolation(f"{label}: backward(forward) != id at {f}")
        if fwd[src.complement(f)] != dst.complement(fwd[f]):
            raise InvariantViolation(f"{label}: complement not preserved")
        for g in src.carrier:
            if fwd[src.join(f, g)] != dst.join(fwd[f], fwd[g]):
                raise InvariantViolation(f"{label}: join not preserved")
            if fwd[src.meet(f, g)] != dst.meet(fwd[f], fwd[g]):
                raise InvariantViolation(f"{label}: meet not preserved")
    for g in dst.carrier:
        if fwd[bwd[g]] != g:
            raise InvariantViolation(f"{label}: forward(backward) != id at {g}")
    return BooleanIso(
        src, dst,
        tuple(sorted(fwd.items())), tuple(sorted(bwd.items())),
    )


def rho(p: PointMap) -> BooleanIso:
    """The image isomorphism RC(domain) -> RC(codomain) of a closed irreducible map.

    Forward is the direct image, backward is cl(p^{-1}(int(.))); both
    directions and the Boolean laws are re-proved per instance.
    """
    rep = map_predicates(p)
    if not rep.continuous:
        raise HypothesisError("continuous", "rho needs a continuous map")
    if not rep.closed:
        raise HypothesisError("closed", "rho needs a closed map")
    if not rep.irreducible:
        raise HypothesisError("irreducible", "rho needs an irreducible map")
    X, Y = p.domain, p.codomain
    rcx, rcy = rc_algebra(X), rc_algebra(Y)
    fwd = {h: p.image_mask(h) for h in rcx.carrier}
    bwd = {k: X.closure(p.preimage_mask(Y.interior(k))) for k in rcy.carrier}
    return _check_iso(rcx, rcy, fwd, bwd, "rho")


def subspace(space: FiniteSpace, names: Iterable[str]) -> FiniteSpace:
    sub = tuple(p for p in space.points if p in set(names))
    mask = space.mask_of(sub)
    reindex = {}
    j = 0
    for i, pt in enumerate(space.points):
        if mask >> i & 1:
            reindex[i] = j
            j += 1

    def shrink(m):
        out = 0
        for i, k in reindex.items():
            if m >> i & 1:
                out |= 1 << k
        return out

    opens = frozenset(shrink(u & mask) for u in space.opens)
    return FiniteSpace(sub, opens)


def dense_r_e(space: FiniteSpace, names: Iterable[str]) -> tuple:
    """The restriction/closure pair between RC(X) and RC(Y) for dense Y.

    Returns ``(sub, iso)`` where ``sub`` is the subspace on Y and ``iso``
    the verified Boolean isomorphism with forward F -> F & Y and backward
    G -> cl_X(G).
    """
    names = tuple(names)
    ymask = space.mask_of(names)
    if space.closure(ymask) != space.full_mask:
        raise HypothesisError("dense", f"cl({names}) is not the whole space")
    sub = subspace(space, names)
    rcx, rcy = rc_algebra(space), rc_algebra(sub)

    def shrink(m):
        out, j = 0, 0
        for i in range(len(space.points)):
            if ymask >> i & 1:
                if m >> i & 1:
                    out |= 1 << j
                j += 1
        return out

    def grow(m):
        out, j = 0, 0
        for i in range(len(space.points)):
            if ymask >> i & 1:
                if m >> j & 1:
                    out |= 1 << i
                j += 1
        return out

    fwd = {f: shrink(f & ymask) for f in rcx.carrier}
    bwd = {g: space.closure(grow(g)) for g in rcy.carrier}
    return sub, _check_iso(rcx, rcy, fwd, bwd, "dense r/e")


def quotient(space: FiniteSpace, classes: Sequence[Iterable[str]]) -> tuple:
    """The quotient by a partition, with the projection map."""
    blocks = [tuple(sorted(c, key=space.points.index)) for c in classes]
    seen = [p for b in blocks for p in b]
    if sorted(seen) != sorted(space.points) or len(seen) != len(set(seen)):
        raise InputError("classes must partition the points")
    blocks.sort(key=lambda b: space.points.index(b[0]))
    names = tuple("+".join(b) for b in blocks)
    assign = {}
    for j, b in enumerate(blocks):
        for pt in b:
            assign[pt] = j
    mapping = tuple(assign[pt] for pt in space.points)

    def preimage(vmask):
        out = 0
        for i, j in enumerate(mapping):
            if vmask >> j & 1:
                out |= 1 << i
        return out

    opens = frozenset(
        v for v in range(1 << len(names)) if preimage(v) in space.opens
    )
    q_space = FiniteSpace(names, opens)
    return q_space, PointMap(space, q_space, mapping)


@dataclass(frozen=True)
class SpaceReport:
    hausdorff: bool
    discrete: bool
    extremally_disconnected: bool
    regular_closed_count: int


def space_predicates(space: FiniteSpace) -> SpaceReport:
    n = len(space.points)
    hausdorff = True
    for i in range(n):
        for j in range(i + 1, n):
            if not any(
                u >> i & 1 and v >> j & 1 and u & v == 0
                for u in space.opens for v in space.opens
            ):
                hausdorff = False
    discrete = len(space.opens) == 1 << n
    ed = all(space.closure(u) in space.opens for u in space.opens)
    rc_count = len(rc_algebra(space, verify=False).carrier)
    # for finite spaces the two separation notions coincide
    if hausdorff != discrete:
        raise InvariantViolation("finite space hausdorff but not discrete")
    return SpaceReport(hausdorff, discrete, ed, rc_count)


def absolute(space: FiniteSpace) -> tuple:
    """The extremally disconnected perfect irreducible preimage of a
    Hausdorff finite space, built as the Stone dual of its RC algebra."""
    rep = space_predicates(space)
    if not rep.hausdorff:
        raise HypothesisError(
            "hausdorff", "absolute is defined for Hausdorff (= discrete) spaces"
        )
    rc = rc_algebra(space)
    atoms = rc.atoms()
    pts = []
    for atom_mask in atoms:
        meet_all = space.full_mask
        # the unique point in the intersection of the ultrafilter at this atom:
        # members are exactly the regular closed sets containing the atom
        members = [f for f in rc.carrier if rc.leq(atom_mask, f)]
        for f in members:
            meet_all &= f
        if bin(meet_all).count("1") != 1:
            raise HypothesisError(
                "unique_intersection_point",
                "an RC ultrafilter selects more than one point",
            )
        pts.append(space.set_names(meet_all)[0])
    ex = discrete_space(tuple(pts))
    pi = point_map(ex, space, {p: p for p in pts})
    pirep = map_predicates(pi)
    if not (pirep.perfect and pirep.irreducible and pirep.continuous):
        raise InvariantViolation("projective cover map failed its predicates")
    return ex, pi
