"""Finitely generated abelian groups, presentations, and homomorphisms.

Iso types live in :class:`FinAbGroup` (invariant-factor normal form, so
structural equality is isomorphism).  Actual groups-with-elements live in
:class:`PresentedGroup` (a cokernel presentation Z^g / col-span(relations)),
with :class:`GroupHom` carrying maps between presentations.  The split matters:
homology *classes* and exactness questions need presentations, while reports
and tables only need iso types.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .matrix import (
    IntegerMatrix,
    in_column_lattice,
    invariant_factors,
    kernel_basis,
    column_lattice_basis,
    smith_normal_form,
    solve_columns,
)


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division (desk-scale inputs)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _normalize_torsion(coefficients: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders.

    Orders must be >= 2 (callers strip 0 and 1 first).  Standard recombination:
    split each order into prime powers, then zip the per-prime exponent lists
    from the largest down, so the last factor absorbs the largest power of
    every prime.

    >>> _normalize_torsion([2, 3])
    (6,)
    >>> _normalize_torsion([4, 6])
    (2, 12)
    >>> _normalize_torsion([])
    ()
    """
    by_prime: dict[int, list[int]] = {}
    for c in coefficients:
        if c < 2:
            raise ValueError("torsion coefficients must be >= 2")
        for p, e in _factorize(c).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    factors = []
    for slot in range(width):  # slot 0 takes the largest exponents
        d = 1
        for p, exps in by_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if slot < len(exps_sorted):
                d *= p ** exps_sorted[slot]
        factors.append(d)
    factors.reverse()  # ascending divisibility chain
    return tuple(factors)


class FinAbGroup:
    """Iso type of a finitely generated abelian group.

    `rank` free summands plus cyclic summands Z/torsion[i], where the torsion
    list is the invariant-factor chain: entries >= 2, each dividing the next.
    Two values compare equal exactly when the groups are isomorphic.

    >>> FinAbGroup(0, [2, 3])  # normalized on construction
    FinAbGroup(rank=0, torsion=(6,))
    >>> FinAbGroup(1, [15]) == FinAbGroup.from_cyclic_orders([3, 0, 5])
    True
    """

    __slots__ = ("rank", "torsion")

    def __init__(self, rank: int = 0, torsion: Iterable[int] = ()):
        if rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "torsion", _normalize_torsion(torsion))

    def __setattr__(self, name, value):
        raise AttributeError("FinAbGroup is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, q: int) -> "FinAbGroup":
        """Z/q, with Z/0 = Z and Z/1 = 0.

        >>> FinAbGroup.cyclic(0).rank, FinAbGroup.cyclic(1).is_trivial()
        (1, True)
        """
        if q < 0:
            raise ValueError("negative cyclic order")
        if q == 0:
            return cls(1, ())
        if q == 1:
            return cls(0, ())
        return cls(0, (q,))

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Direct sum of Z/q over the given orders (0 meaning Z, 1 dropped)."""
        rank = 0
        torsion = []
        for q in orders:
            if q < 0:
                raise ValueError("negative cyclic order")
            if q == 0:
                rank += 1
            elif q > 1:
                torsion.append(q)
        return cls(rank, torsion)

    @classmethod
    def from_json(cls, data: dict) -> "FinAbGroup":
        return cls(int(data["rank"]), [int(t) for t in data["torsion"]])

    # -- structure ---------------------------------------------------------

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.rank:
            return None
        return math.prod(self.torsion)

    def exponent(self) -> int:
        """Smallest e >= 1 with e*x = 0 for all torsion x (1 if torsion-free)."""
        return self.torsion[-1] if self.torsion else 1

    def summands(self) -> tuple[int, ...]:
        """Cyclic summand orders, 0 for each free summand: (0,)*rank + torsion."""
        return (0,) * self.rank + self.torsion

    def primary_decomposition(self) -> tuple[int, ...]:
        """Prime-power cyclic orders, sorted (prime ascending, power ascending).

        >>> FinAbGroup(0, [2, 12]).primary_decomposition()
        (2, 4, 3)
        """
        out = []
        primes: dict[int, list[int]] = {}
        for d in self.torsion:
            for p, e in _factorize(d).items():
                primes.setdefault(p, []).append(e)
        for p in sorted(primes):
            for e in sorted(primes[p]):
                out.append(p ** e)
        return tuple(out)

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.rank + other.rank, self.torsion + other.torsion)

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return self.direct_sum(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return self.rank == other.rank and self.torsion == other.torsion

    def __hash__(self) -> int:
        return hash((self.rank, self.torsion))

    def __repr__(self) -> str:
        return f"FinAbGroup(rank={self.rank}, torsion={self.torsion})"

    def __str__(self) -> str:
        return self.render()

    def render(self, primary: bool = False) -> str:
        """Human form: `Z^r (+) Z/d ...`, largest invariant factor first.

        >>> FinAbGroup(1, [3, 6]).render()
        'Z ⊕ Z/6 ⊕ Z/3'
        >>> FinAbGroup(0, [2, 12]).render(primary=True)
        'Z/2 ⊕ Z/4 ⊕ Z/3'
        >>> FinAbGroup.trivial().render()
        '0'
        """
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        cyclic = self.primary_decomposition() if primary else tuple(reversed(self.torsion))
        parts.extend(f"Z/{d}" for d in cyclic)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def group_of(m: IntegerMatrix) -> "FinAbGroup":
    """Iso type of the cokernel Z^rows / column-span(m).

    >>> group_of(IntegerMatrix.from_rows([[3]]))
    FinAbGroup(rank=0, torsion=(3,))
    >>> group_of(IntegerMatrix.zeros(2, 1)).rank
    2
    """
    factors = invariant_factors(m)
    return FinAbGroup(m.rows - len(factors), [d for d in factors if d >= 2])


def tensor(g: FinAbGroup, a: FinAbGroup) -> FinAbGroup:
    """Tensor product over Z, computed summand by summand.

    Z(x)Z = Z, Z(x)Z/q = Z/q, Z/d(x)Z/q = Z/gcd(d,q).

    >>> tensor(FinAbGroup.cyclic(4), FinAbGroup.cyclic(6))
    FinAbGroup(rank=0, torsion=(2,))
    """
    rank = g.rank * a.rank
    torsion: list[int] = []
    for q in a.torsion:
        torsion.extend([q] * g.rank)
    for d in g.torsion:
        torsion.extend([d] * a.rank)
    for d in g.torsion:
        for q in a.torsion:
            torsion.append(math.gcd(d, q))
    return FinAbGroup(rank, [t for t in torsion if t >= 2])


def tor1(g: FinAbGroup, a: FinAbGroup) -> FinAbGroup:
    """Tor_1 over Z: free summands contribute nothing, Tor(Z/d, Z/q) = Z/gcd(d,q).

    >>> tor1(FinAbGroup.free(1), FinAbGroup.cyclic(6)).is_trivial()
    True
    >>> tor1(FinAbGroup.cyclic(4), FinAbGroup.cyclic(6))
    FinAbGroup(rank=0, torsion=(2,))
    """
    torsion = [
        math.gcd(d, q) for d in g.torsion for q in a.torsion if math.gcd(d, q) >= 2
    ]
    return FinAbGroup(0, torsion)


def direct_sum(groups: Sequence[FinAbGroup]) -> FinAbGroup:
    """Direct sum of finitely many iso types (empty sum is trivial).

    >>> direct_sum([FinAbGroup.cyclic(2), FinAbGroup.cyclic(3)])
    FinAbGroup(rank=0, torsion=(6,))
    """
    rank = sum(g.rank for g in groups)
    torsion: list[int] = []
    for g in groups:
        torsion.extend(g.torsion)
    return FinAbGroup(rank, torsion)


class PresentedGroup:
    """Cokernel presentation: Z^generators / column-span(relations).

    `relations` is generators x r; its columns generate the relation subgroup.
    Unlike :class:`FinAbGroup` this carries actual elements (integer vectors
    of length `generators`), so homology classes and maps can live here.
    """

    __slots__ = ("generators", "relations", "_snf", "_group")

    def __init__(self, generators: int, relations: IntegerMatrix | None = None):
        if relations is None:
            relations = IntegerMatrix.zeros(generators, 0)
        if relations.rows != generators:
            raise ValueError(
                f"shape mismatch: {generators} generators, relations have {relations.rows} rows"
            )
        self.generators = generators
        self.relations = relations
        self._snf = None
        self._group = None

    @classmethod
    def free(cls, rank: int) -> "PresentedGroup":
        return cls(rank)

    @classmethod
    def trivial(cls) -> "PresentedGroup":
        return cls(0)

    @classmethod
    def cyclic(cls, q: int) -> "PresentedGroup":
        if q == 0:
            return cls(1)
        return cls(1, IntegerMatrix.from_rows([[q]]))

    @classmethod
    def from_diagonal(cls, orders: Sequence[int]) -> "PresentedGroup":
        """One generator per listed order q (0 meaning a free generator)."""
        n = len(orders)
        cols = [j for j, q in enumerate(orders) if q != 0]
        rel = IntegerMatrix(n, len(cols))
        for c, j in enumerate(cols):
            rel._rows[j][c] = orders[j]
        return cls(n, rel)

    def _smith(self):
        if self._snf is None:
            self._snf = smith_normal_form(self.relations, want_uinv=True)
        return self._snf

    def group(self) -> FinAbGroup:
        """Iso type of the presented group."""
        if self._group is None:
            self._group = group_of(self.relations)
        return self._group

    def canonical_form(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of the class of x; equal tuples iff equal classes.

        Coordinates with invariant factor 1 are dropped, torsion coordinates
        are reduced mod their factor, free coordinates pass through exactly.
        """
        if len(x) != self.generators:
            raise ValueError(
                f"shape mismatch: {self.generators} generators, element of length {len(x)}"
            )
        snf = self._smith()
        y = snf.U.mul_vector(list(x))
        diag = snf.diag
        out = []
        for i in range(self.generators):
            d = diag[i] if i < len(diag) else 0
            if d == 1:
                continue
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def is_zero_element(self, x: Sequence[int]) -> bool:
        return all(c == 0 for c in self.canonical_form(x))

    def elements(self, limit: int = 1_000_000):
        """All elements (as canonical generator vectors) of a finite group.

        Raises ValueError immediately on infinite groups or when the order
        exceeds `limit`; otherwise returns a deterministic iterator.
        """
        order = self.group().order()
        if order is None:
            raise ValueError("infinite group has no element enumeration")
        if order > limit:
            raise ValueError(f"group order {order} exceeds enumeration limit {limit}")
        snf = self._smith()
        diag = snf.diag
        dims = []
        for i in range(self.generators):
            d = diag[i] if i < len(diag) else 0
            dims.append(d)
        # x = Uinv @ y would need uinv; instead enumerate y directly and map
        # back through V-free coordinates: classes correspond to y mod diag.
        ranges = [range(d) if d > 1 else range(1) for d in dims]
        uinv = snf.uinv

        def _iterate():
            for combo in itertools.product(*ranges):
                yield uinv.mul_vector(list(combo))

        return _iterate()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PresentedGroup):
            return NotImplemented
        return self.generators == other.generators and self.relations == other.relations

    __hash__ = None

    def __repr__(self) -> str:
        return f"PresentedGroup(generators={self.generators}, relations={self.relations.rows}x{self.relations.cols})"


class GroupHom:
    """Homomorphism between presented groups, given on generators.

    `matrix` is target.generators x source.generators; compatibility (relations
    map into relations) is checked on construction.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: PresentedGroup, target: PresentedGroup, matrix: IntegerMatrix):
        if matrix.rows != target.generators or matrix.cols != source.generators:
            raise ValueError(
                f"shape mismatch: hom matrix {matrix.rows}x{matrix.cols} for "
                f"{source.generators} -> {target.generators} generators"
            )
        if source.relations.cols:
            image_of_relations = matrix.matmul(source.relations)
            if solve_columns(target.relations, image_of_relations) is None:
                raise ValueError("homomorphism does not respect relations")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def zero(cls, source: PresentedGroup, target: PresentedGroup) -> "GroupHom":
        return cls(source, target, IntegerMatrix.zeros(target.generators, source.generators))

    def apply(self, x: Sequence[int]) -> list[int]:
        return self.matrix.mul_vector(list(x))

    def is_zero(self) -> bool:
        """Is this the zero map of presented groups (not just the zero matrix)?"""
        if self.matrix.cols == 0:
            return True
        return solve_columns(self.target.relations, self.matrix) is not None

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.target != self.source:
            raise ValueError("mismatched node")
        return GroupHom(first.source, self.target, self.matrix.matmul(first.matrix))

    def __repr__(self) -> str:
        return f"GroupHom({self.source.generators} -> {self.target.generators})"


def middle_homology(f: GroupHom, g: GroupHom) -> FinAbGroup:
    """Iso type of ker(g)/im(f) at the node f.target = g.source.

    Works uniformly for infinite presented groups by lifting everything to
    lattices in Z^generators: the kernel of g is the preimage lattice
    {x : g(x) in relation span of g.target}, the image of f is spanned by
    f's generator images together with the node's own relations.

    >>> Z = PresentedGroup.free(1)
    >>> two = GroupHom(Z, Z, IntegerMatrix.from_rows([[2]]))
    >>> quot = GroupHom(Z, PresentedGroup.cyclic(2), IntegerMatrix.from_rows([[1]]))
    >>> middle_homology(two, quot).is_trivial()
    True
    """
    if f.target != g.source:
        raise ValueError("mismatched node")
    composite = g.matrix.matmul(f.matrix)
    if composite.cols and solve_columns(g.target.relations, composite) is None:
        raise ValueError("composite nonzero")
    node = g.source
    # Preimage lattice of g.target's relation span: project ker[G | R3] to x.
    augmented = IntegerMatrix.hstack([g.matrix, g.target.relations])
    full_kernel = kernel_basis(augmented)
    projection = IntegerMatrix.from_rows(
        [full_kernel._rows[i] for i in range(node.generators)], cols=full_kernel.cols
    )
    lattice = column_lattice_basis(projection)
    image_generators = IntegerMatrix.hstack([f.matrix, node.relations])
    coords = solve_columns(lattice, image_generators)
    if coords is None:  # impossible once the composite check passed
        raise AssertionError("image escapes the kernel lattice")
    return group_of(coords)
