"""Boolean algebra carriers: finite powersets and the rational interval algebra.

Two backends share one operation surface:

* ``finite``: the powerset of ``n`` atoms (n <= 16), elements stored as
  bitmasks.  Atom ``i`` is bit ``i``.
* ``interval``: the regular closed subsets of the real line that are finite
  unions of closed intervals with rational endpoints, closed rays, the empty
  set and the whole line.  All arithmetic is exact (``fractions.Fraction``).

Join is set union (touching interval components merge, since the closure of
a union glues shared endpoints), meet is ``cl(int(a & b))`` which drops
isolated touching points, complement is the closure of the set complement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError, UnsupportedError

FINITE_ATOM_CAP = 16

#: Default seed for every sampled check in the library.
DEFAULT_SEED = 0xD0B0

Rat = Fraction
# Interval component bounds: None encodes -oo in the ``lo`` slot and +oo in
# the ``hi`` slot.
Bound = Optional[Fraction]


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Algebra:
    """A Boolean algebra carrier: ``finite`` powerset or ``interval``."""

    kind: str
    atom_count: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def bottom(self) -> "Element":
        if self.is_finite:
            return FiniteElement(0, self.atom_count)
        return IntervalElement(())

    @property
    def top(self) -> "Element":
        if self.is_finite:
            return FiniteElement((1 << self.atom_count) - 1, self.atom_count)
        return IntervalElement(((None, None),))

    def atom(self, i: int) -> "FiniteElement":
        if not self.is_finite:
            raise UnsupportedError("interval algebra is atomless")
        if not 0 <= i < self.atom_count:
            raise InputError(f"atom index {i} out of range 0..{self.atom_count - 1}")
        return FiniteElement(1 << i, self.atom_count)

    def element_from_atoms(self, atoms: Iterable[int]) -> "FiniteElement":
        bits = 0
        for i in atoms:
            if not 0 <= i < self.atom_count:
                raise InputError(f"atom index {i} out of range")
            bits |= 1 << i
        return FiniteElement(bits, self.atom_count)

    def elements(self) -> Iterator["FiniteElement"]:
        """All elements in bitmask order.  Finite backend only."""
        if not self.is_finite:
            raise UnsupportedError("cannot enumerate the interval algebra")
        for bits in range(1 << self.atom_count):
            yield FiniteElement(bits, self.atom_count)

    # -- operations ---------------------------------------------------------

    def _own(self, *elems: "Element") -> None:
        for e in elems:
            if self.is_finite:
                if not isinstance(e, FiniteElement) or e.width != self.atom_count:
                    raise InputError(f"element {e!r} does not belong to {self!r}")
            else:
                if not isinstance(e, IntervalElement):
                    raise InputError(f"element {e!r} does not belong to {self!r}")

    def join(self, a: "Element", b: "Element") -> "Element":
        self._own(a, b)
        if self.is_finite:
            return FiniteElement(a.bits | b.bits, self.atom_count)
        return IntervalElement(_canonical(a.components + b.components))

    def meet(self, a: "Element", b: "Element") -> "Element":
        self._own(a, b)
        if self.is_finite:
            return FiniteElement(a.bits & b.bits, self.atom_count)
        pieces = []
        for lo1, hi1 in a.components:
            for lo2, hi2 in b.components:
                lo = _bmax_lo(lo1, lo2)
                hi = _bmin_hi(hi1, hi2)
                if _lt(lo, hi):
                    pieces.append((lo, hi))
        return IntervalElement(_canonical(tuple(pieces)))

    def complement(self, a: "Element") -> "Element":
        self._own(a)
        if self.is_finite:
            return FiniteElement(a.bits ^ ((1 << self.atom_count) - 1), self.atom_count)
        comps = a.components
        if not comps:
            return self.top
        pieces = []
        first_lo = comps[0][0]
        if first_lo is not None:
            pieces.append((None, first_lo))
        for (_, hi), (lo, _) in zip(comps, comps[1:]):
            pieces.append((hi, lo))
        last_hi = comps[-1][1]
        if last_hi is not None:
            pieces.append((last_hi, None))
        return IntervalElement(tuple(pieces))

    def leq(self, a: "Element", b: "Element") -> bool:
        self._own(a, b)
        if self.is_finite:
            return a.bits | b.bits == b.bits
        return self.join(a, b) == b

    def big_join(self, elems: Iterable["Element"]) -> "Element":
        out = self.bottom
        for e in elems:
            out = self.join(out, e)
        return out

    def big_meet(self, elems: Iterable["Element"]) -> "Element":
        out = self.top
        for e in elems:
            out = self.meet(out, e)
        return out


def make_algebra(spec: Union[str, tuple, int]) -> Algebra:
    """Build an algebra from a backend descriptor.

    Accepts ``("finite", n)``, a bare atom count, or ``"interval"``.
    """
    if spec == "interval":
        return Algebra("interval")
    if isinstance(spec, int):
        spec = ("finite", spec)
    if isinstance(spec, tuple) and len(spec) == 2 and spec[0] == "finite":
        n = spec[1]
        if not isinstance(n, int) or not 1 <= n <= FINITE_ATOM_CAP:
            raise InputError(f"finite atom count must be 1..{FINITE_ATOM_CAP}, got {n!r}")
        return Algebra("finite", n)
    raise InputError(f"unknown algebra descriptor {spec!r}")


def finite_algebra(atom_count: int) -> Algebra:
    return make_algebra(("finite", atom_count))


def interval_algebra() -> Algebra:
    return Algebra("interval")


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteElement:
    """A subset of atoms, stored as a bitmask of the given width."""

    bits: int
    width: int

    @property
    def atoms(self) -> tuple:
        return tuple(i for i in range(self.width) if self.bits >> i & 1)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __repr__(self):
        return "{" + ",".join(str(i) for i in self.atoms) + "}" + f"@{self.width}"


@dataclass(frozen=True)
class IntervalElement:
    """A canonical finite union of closed components on the rational line.

    Components are ``(lo, hi)`` with ``lo`` either a Fraction or None (-oo)
    and ``hi`` a Fraction or None (+oo); they are sorted with strictly
    positive gaps between consecutive components.
    """

    components: tuple

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def is_bounded(self) -> bool:
        """True when no component is a ray (or the whole line)."""
        return all(lo is not None and hi is not None for lo, hi in self.components)

    def contains_point(self, x: Fraction) -> bool:
        for lo, hi in self.components:
            if (lo is None or lo <= x) and (hi is None or x <= hi):
                return True
        return False

    def __repr__(self):
        if not self.components:
            return "(empty)"
        def side(v, inf):
            return inf if v is None else str(v)
        return " | ".join(
            f"[{side(lo, '-oo')},{side(hi, '+oo')}]" for lo, hi in self.components
        )


def interval_element(components: Sequence[tuple]) -> IntervalElement:
    """Build an interval element from raw ``(lo, hi)`` pairs, canonicalizing.

    Numeric bounds may be ints or Fractions; None stands for the infinite
    end on its side.
    """
    pieces = []
    for lo, hi in components:
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if lo is not None and hi is not None and lo >= hi:
            raise InputError(f"component [{lo},{hi}] needs lo < hi")
        pieces.append((lo, hi))
    return IntervalElement(_canonical(tuple(pieces)))


def _lt(lo: Bound, hi: Bound) -> bool:
    """lo < hi where lo may be -oo (None) and hi may be +oo (None)."""
    if lo is None or hi is None:
        return True
    return lo < hi


def _bmax_lo(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _bmin_hi(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _lo_key(lo: Bound):
    return (0,) if lo is None else (1, lo)


def _canonical(pieces: tuple) -> tuple:
    """Sort components and merge any that overlap or touch."""
    if not pieces:
        return ()
    pieces = sorted(pieces, key=lambda c: _lo_key(c[0]))
    out = [pieces[0]]
    for lo, hi in pieces[1:]:
        plo, phi = out[-1]
        if phi is None or (lo is not None and lo > phi):
            # strictly positive gap: a new component (phi None means the
            # previous piece already swallows everything to +oo)
            if phi is None:
                continue
            out.append((lo, hi))
        else:
            new_hi = None if (phi is None or hi is None) else max(phi, hi)
            out[-1] = (plo, new_hi)
    return tuple(out)


# ---------------------------------------------------------------------------
# ultrafilters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteUltrafilter:
    """The principal ultrafilter at one atom: a is a member iff the atom is in a."""

    atom: int

    def __repr__(self):
        return f"u{self.atom}"


@dataclass(frozen=True)
class IntervalUltrafilter:
    """A representable ultrafilter of the interval algebra.

    ``point_left``/``point_right`` approach a rational point from one side;
    ``left_inf``/``right_inf`` are the two end-of-line ultrafilters.  The
    irrational-point ultrafilters exist abstractly but are not representable
    here.
    """

    side: str
    point: Optional[Fraction] = None

    def __post_init__(self):
        if self.side in ("point_left", "point_right"):
            if self.point is None:
                raise InputError("point ultrafilter needs a rational point")
        elif self.side in ("left_inf", "right_inf"):
            if self.point is not None:
                raise InputError("infinity ultrafilter takes no point")
        else:
            raise InputError(f"unknown ultrafilter side {self.side!r}")

    def __repr__(self):
        if self.side == "point_left":
            return f"u({self.point}-)"
        if self.side == "point_right":
            return f"u({self.point}+)"
        return "u(-oo)" if self.side == "left_inf" else "u(+oo)"


Ultrafilter = Union[FiniteUltrafilter, IntervalUltrafilter]


def principal_left(x) -> IntervalUltrafilter:
    return IntervalUltrafilter("point_left", Fraction(x))


def principal_right(x) -> IntervalUltrafilter:
    return IntervalUltrafilter("point_right", Fraction(x))


def left_infinity() -> IntervalUltrafilter:
    return IntervalUltrafilter("left_inf")


def right_infinity() -> IntervalUltrafilter:
    return IntervalUltrafilter("right_inf")


def uf_member(u: Ultrafilter, a) -> bool:
    """Decide ``a in u``.

    For a left point ultrafilter at x the member sets are those containing
    a closed interval [x - eps, x]; dually on the right.  The infinity
    ultrafilters contain exactly the sets including a ray on their side.
    """
    if isinstance(u, FiniteUltrafilter):
        if not isinstance(a, FiniteElement):
            raise InputError("finite ultrafilter needs a finite element")
        return bool(a.bits >> u.atom & 1)
    if not isinstance(a, IntervalElement):
        raise InputError("interval ultrafilter needs an interval element")
    if u.side == "point_left":
        x = u.point
        return any(
            (lo is None or lo < x) and (hi is None or x <= hi)
            for lo, hi in a.components
        )
    if u.side == "point_right":
        x = u.point
        return any(
            (lo is None or lo <= x) and (hi is None or x < hi)
            for lo, hi in a.components
        )
    if u.side == "left_inf":
        return any(lo is None for lo, _ in a.components)
    return any(hi is None for _, hi in a.components)


@dataclass(frozen=True)
class UltrafilterFamily:
    """The ultrafilters of an algebra.

    For the finite backend the family is exhaustive.  For the interval
    backend only the representable subfamily is available (rational point
    approaches plus the two infinities) and ``representable_only`` is True.
    """

    algebra: Algebra
    members: Optional[tuple]
    representable_only: bool

    def principal(self, x, side: str) -> IntervalUltrafilter:
        if self.algebra.is_finite:
            raise UnsupportedError("finite families enumerate members directly")
        return principal_left(x) if side == "left" else principal_right(x)


def ultrafilters(algebra: Algebra) -> UltrafilterFamily:
    if algebra.is_finite:
        members = tuple(FiniteUltrafilter(i) for i in range(algebra.atom_count))
        return UltrafilterFamily(algebra, members, representable_only=False)
    return UltrafilterFamily(algebra, None, representable_only=True)


def stone_epsilon(algebra: Algebra, a) -> frozenset:
    """The Stone set of ``a``: all ultrafilters containing it.

    Explicit on the finite backend; use :func:`uf_member` as the decision
    predicate on the interval backend.
    """
    if not algebra.is_finite:
        raise UnsupportedError("interval Stone sets are predicates; use uf_member")
    algebra._own(a)
    return frozenset(FiniteUltrafilter(i) for i in a.atoms)


def stone_unit(algebra: Algebra, point: int) -> FiniteUltrafilter:
    """The unit of Stone duality at a point of a finite discrete space."""
    if not algebra.is_finite:
        raise UnsupportedError("stone_unit is a finite-backend map")
    if not 0 <= point < algebra.atom_count:
        raise InputError(f"point {point} out of range")
    return FiniteUltrafilter(point)


# ---------------------------------------------------------------------------
# Boolean homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseAffine:
    """A piecewise affine monotone bijection of the line with rational data.

    ``breakpoints`` are k sorted Fractions splitting the line into k+1
    pieces; piece i applies ``x -> slopes[i] * x + offsets[i]``.  Slopes are
    all positive (increasing map) or all negative (decreasing map), and the
    pieces must agree at every breakpoint, so the map is a continuous
    bijection of the line.
    """

    breakpoints: tuple
    slopes: tuple
    offsets: tuple

    def __post_init__(self):
        bps, sl, off = self.breakpoints, self.slopes, self.offsets
        if len(sl) != len(bps) + 1 or len(off) != len(sl):
            raise InputError("need len(slopes) == len(offsets) == len(breakpoints)+1")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise InputError("breakpoints must be strictly increasing")
        if all(s > 0 for s in sl):
            pass
        elif all(s < 0 for s in sl):
            pass
        else:
            raise InputError("slopes must be all positive or all negative")
        for i, b in enumerate(bps):
            if sl[i] * b + off[i] != sl[i + 1] * b + off[i + 1]:
                raise InputError(f"pieces disagree at breakpoint {b}")

    @property
    def increasing(self) -> bool:
        return self.slopes[0] > 0

    def _piece_at(self, x: Fraction) -> int:
        i = 0
        while i < len(self.breakpoints) and x > self.breakpoints[i]:
            i += 1
        return i

    def __call__(self, x: Fraction) -> Fraction:
        i = self._piece_at(x)
        return self.slopes[i] * x + self.offsets[i]

    def inverse(self) -> "PiecewiseAffine":
        imgs = [self(b) for b in self.breakpoints]
        pairs = list(zip(self.slopes, self.offsets))
        if not self.increasing:
            imgs.reverse()
            pairs.reverse()
        inv = [(1 / s, -o / s) for s, o in pairs]
        return PiecewiseAffine(tuple(imgs), tuple(s for s, _ in inv), tuple(o for _, o in inv))

    def compose(self, inner: "PiecewiseAffine") -> "PiecewiseAffine":
        """self after inner: x -> self(inner(x))."""
        inv_inner = inner.inverse()
        bps = sorted(set(inner.breakpoints) | {inv_inner(b) for b in self.breakpoints})
        slopes, offsets = [], []
        # probe one interior point per piece; the breakpoint set is refined so
        # no piece interior crosses a breakpoint of either factor
        for i in range(len(bps) + 1):
            if not bps:
                p = Fraction(0)
            elif i == 0:
                p = bps[0] - 1
            elif i == len(bps):
                p = bps[-1] + 1
            else:
                p = Fraction(bps[i - 1] + bps[i], 2)
            ii = inner._piece_at(p)
            si, oi = inner.slopes[ii], inner.offsets[ii]
            jj = self._piece_at(si * p + oi)
            sj, oj = self.slopes[jj], self.offsets[jj]
            slopes.append(sj * si)
            offsets.append(sj * oi + oj)
        return PiecewiseAffine(tuple(bps), tuple(slopes), tuple(offsets))

    def map_element(self, a: IntervalElement) -> IntervalElement:
        def fwd(v):
            return None if v is None else self(v)

        pieces = []
        for lo, hi in a.components:
            if self.increasing:
                pieces.append((fwd(lo), fwd(hi)))
            else:
                pieces.append((fwd(hi), fwd(lo)))
        return IntervalElement(_canonical(tuple(pieces)))


def identity_piecewise() -> PiecewiseAffine:
    return PiecewiseAffine((), (Fraction(1),), (Fraction(0),))


@dataclass(frozen=True)
class BooleanHom:
    """A Boolean homomorphism between two carriers.

    Finite backend: represented by its Stone-dual point map ``dual_map``
    sending each codomain atom to a domain atom, so that applying the hom
    takes inverse images.  Interval backend: induced by a piecewise affine
    monotone bijection acting by image, which is a Boolean isomorphism of
    the interval algebra.
    """

    domain: Algebra
    codomain: Algebra
    dual_map: Optional[tuple] = None
    piecewise: Optional[PiecewiseAffine] = None

    def __post_init__(self):
        if self.domain.is_finite != self.codomain.is_finite:
            raise InputError("homomorphisms do not mix backends")
        if self.domain.is_finite:
            if self.dual_map is None or self.piecewise is not None:
                raise InputError("finite homs are given by dual_map")
            if len(self.dual_map) != self.codomain.atom_count:
                raise InputError("dual_map must list one domain atom per codomain atom")
            if any(not 0 <= i < self.domain.atom_count for i in self.dual_map):
                raise InputError("dual_map entries out of range")
        else:
            if self.piecewise is None or self.dual_map is not None:
                raise InputError("interval homs are given by a piecewise affine map")

    def apply(self, a):
        if self.domain.is_finite:
            self.domain._own(a)
            bits = 0
            for y, x in enumerate(self.dual_map):
                if a.bits >> x & 1:
                    bits |= 1 << y
            return FiniteElement(bits, self.codomain.atom_count)
        self.domain._own(a)
        return self.piecewise.map_element(a)

    def compose(self, inner: "BooleanHom") -> "BooleanHom":
        """self after inner (inner first)."""
        if inner.codomain != self.domain:
            raise InputError("homs do not compose: codomain/domain mismatch")
        if self.domain.is_finite:
            dual = tuple(inner.dual_map[y] for y in self.dual_map)
            return BooleanHom(inner.domain, self.codomain, dual_map=dual)
        return BooleanHom(
            inner.domain, self.codomain,
            piecewise=self.piecewise.compose(inner.piecewise),
        )

    def ult_preimage(self, u: Ultrafilter) -> Ultrafilter:
        """Transport an ultrafilter of the codomain back along the hom."""
        if self.domain.is_finite:
            if not isinstance(u, FiniteUltrafilter):
                raise InputError("expected a finite ultrafilter")
            if not 0 <= u.atom < self.codomain.atom_count:
                raise InputError("ultrafilter outside the codomain")
            return FiniteUltrafilter(self.dual_map[u.atom])
        if not isinstance(u, IntervalUltrafilter):
            raise InputError("expected an interval ultrafilter")
        g = self.piecewise
        if u.side in ("point_left", "point_right"):
            x = g.inverse()(u.point)
            if not isinstance(x, Fraction):
                raise UnsupportedError("transported ultrafilter is not representable")
            if g.increasing:
                return IntervalUltrafilter(u.side, x)
            flipped = "point_right" if u.side == "point_left" else "point_left"
            return IntervalUltrafilter(flipped, x)
        if g.increasing:
            return u
        return IntervalUltrafilter("right_inf" if u.side == "left_inf" else "left_inf")


def identity_hom(algebra: Algebra) -> BooleanHom:
    if algebra.is_finite:
        return BooleanHom(algebra, algebra, dual_map=tuple(range(algebra.atom_count)))
    return BooleanHom(algebra, algebra, piecewise=identity_piecewise())


def is_hom(phi: BooleanHom, seed: int = DEFAULT_SEED, samples: int = 200) -> bool:
    """Check the Boolean homomorphism laws.

    Exhaustive over all element pairs on the finite backend, seeded samples
    on the interval backend.
    """
    A, B = phi.domain, phi.codomain
    if phi.apply(A.bottom) != B.bottom or phi.apply(A.top) != B.top:
        return False
    if A.is_finite:
        pool = list(A.elements())
        pairs = ((a, b) for a in pool for b in pool)
    else:
        rng = random.Random(seed)
        pairs = [
            (random_interval_element(rng), random_interval_element(rng))
            for _ in range(samples)
        ]
    for a, b in pairs:
        if phi.apply(A.join(a, b)) != B.join(phi.apply(a), phi.apply(b)):
            return False
        if phi.apply(A.meet(a, b)) != B.meet(phi.apply(a), phi.apply(b)):
            return False
        if phi.apply(A.complement(a)) != B.complement(phi.apply(a)):
            return False
    return True


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """A (not necessarily proper) ideal of bounded elements.

    Finite backend: the principal ideal below ``generator``.  Interval
    backend: the fixed ideal of ray-free (bounded) elements, with
    ``generator`` None.
    """

    algebra: Algebra
    generator: Optional[FiniteElement] = None

    def __post_init__(self):
        if self.algebra.is_finite:
            if self.generator is None:
                raise InputError("finite ideals need a generator element")
            self.algebra._own(self.generator)
        elif self.generator is not None:
            raise InputError("the interval ideal is the fixed ray-free ideal")

    def contains(self, a) -> bool:
        if self.algebra.is_finite:
            return self.algebra.leq(a, self.generator)
        self.algebra._own(a)
        return a.is_bounded

    @property
    def is_whole(self) -> bool:
        return self.algebra.is_finite and self.generator == self.algebra.top

    def is_dense(self, seed: int = DEFAULT_SEED, samples: int = 100) -> bool:
        """Every nonzero element dominates a nonzero ideal member.

        Decided exhaustively on the finite backend.  On the interval backend
        the ray-free ideal is dense; a seeded witness check backs the
        constant answer by shrinking a component of each sample.
        """
        A = self.algebra
        if A.is_finite:
            for a in A.elements():
                if a.is_zero:
                    continue
                if not any(
                    self.contains(m) and not m.is_zero and A.leq(m, a)
                    for m in A.elements()
                ):
                    return False
            return True
        rng = random.Random(seed)
        for _ in range(samples):
            a = random_interval_element(rng)
            if a.is_zero:
                continue
            m = bounded_below(a)
            if m.is_zero or not self.contains(m) or not A.leq(m, a):
                return False
        return True


def ray_free_ideal(algebra: Algebra) -> Ideal:
    if algebra.is_finite:
        raise InputError("ray_free_ideal is interval-only")
    return Ideal(algebra)


def bounded_below(a: IntervalElement) -> IntervalElement:
    """A nonzero bounded element below ``a`` (bottom when a is empty)."""
    if a.is_zero:
        return IntervalElement(())
    lo, hi = a.components[0]
    if lo is not None and hi is not None:
        return IntervalElement(((lo, hi),))
    if lo is None and hi is None:
        return interval_element([(0, 1)])
    if lo is None:
        return interval_element([(hi - 1, hi)])
    return interval_element([(lo, lo + 1)])


# ---------------------------------------------------------------------------
# seeded samples on the interval backend
# ---------------------------------------------------------------------------

_GRID_DENOMS = (1, 2, 3, 4)


def random_rational(rng: random.Random, span: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(_GRID_DENOMS))


def random_interval_element(
    rng: random.Random, allow_rays: bool = True, max_components: int = 3
) -> IntervalElement:
    """A random canonical element drawn from a small rational grid.

    The grid is deliberately coarse so that independently drawn elements
    share endpoints often; touching configurations are the interesting ones
    for contact checks.
    """
    roll = rng.random()
    if roll < 0.05:
        return IntervalElement(())
    if roll < 0.08:
        return IntervalElement(((None, None),))
    pieces = []
    for _ in range(rng.randint(1, max_components)):
        p = random_rational(rng)
        q = random_rational(rng)
        if p == q:
            q = p + 1
        pieces.append((min(p, q), max(p, q)))
    if allow_rays and rng.random() < 0.2:
        p = random_rational(rng)
        pieces.append((None, p) if rng.random() < 0.5 else (p, None))
    return IntervalElement(_canonical(tuple(pieces)))


def random_principal_ultrafilter(rng: random.Random, span: int = 6) -> IntervalUltrafilter:
    """A random bounded representable ultrafilter on a coarse grid."""
    x = Fraction(rng.randint(-span, span), rng.choice((1, 2)))
    side = "point_left" if rng.random() < 0.5 else "point_right"
    return IntervalUltrafilter(side, x)
