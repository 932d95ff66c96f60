"""Free chain complexes over Z with validated boundaries, and their homology.

A complex built to max degree N carries boundary matrices up to ∂_N only, so
homology is *trusted* in degrees 0..N-1: H_N would need the missing ∂_{N+1}.
Degree-(N) queries fail loudly rather than report a group truncation could
falsify.

Integral homology works through one Smith decomposition of ∂_n (kernel basis
plus coordinates) and one of the relation matrix.  Homology with Z/q
coefficients never row-reduces over Z/q (not a field for composite q);
instead it works with integer lattices: the preimage lattice
K = {v : ∂v ∈ qZ} and the enlarged image B = im(∂) + qZ, both exact.
"""

from __future__ import annotations

from typing import Sequence

from .abelian import FinAbGroup, PresentedGroup
from .matrix import (
    IntegerMatrix,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
    solve_columns,
)


class FreeChainComplex:
    """Chain complex of free modules in degrees 0..max_degree.

    `boundaries[n]` maps degree n to degree n-1 and has shape
    dims[n-1] x dims[n]; `boundaries[0]` is the 0 x dims[0] zero map.
    `basis_labels`, when present, names the basis of each degree (used by
    groupoid nerves to tag tuples); labels are opaque to this module.

    `modulus` 0 means a complex over Z; q >= 1 means coefficients in Z/q with
    entries stored as canonical residues, where ∂∘∂ need only vanish mod q.
    """

    __slots__ = ("dims", "boundaries", "basis_labels", "modulus")

    def __init__(
        self,
        dims: Sequence[int],
        boundaries: Sequence[IntegerMatrix],
        basis_labels: Sequence[Sequence[object]] | None = None,
        modulus: int = 0,
    ):
        if modulus < 0:
            raise ValueError("negative modulus")
        self.dims = list(dims)
        self.boundaries = list(boundaries)
        self.basis_labels = [list(l) for l in basis_labels] if basis_labels is not None else None
        self.modulus = modulus
        self.validate()

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def validate(self) -> None:
        """Check shape coherence and ∂∘∂ = 0; raise ValueError otherwise."""
        if not self.dims:
            raise ValueError("shape mismatch: empty complex")
        if any(d < 0 for d in self.dims):
            raise ValueError("shape mismatch: negative dimension")
        if len(self.boundaries) != len(self.dims):
            raise ValueError(
                f"shape mismatch: {len(self.dims)} degrees but {len(self.boundaries)} boundary maps"
            )
        if self.boundaries[0].rows != 0 or self.boundaries[0].cols != self.dims[0]:
            raise ValueError("shape mismatch: boundary 0 must be 0 x dims[0]")
        for n in range(1, len(self.dims)):
            b = self.boundaries[n]
            if b.rows != self.dims[n - 1] or b.cols != self.dims[n]:
                raise ValueError(
                    f"shape mismatch: boundary {n} is {b.rows}x{b.cols}, "
                    f"expected {self.dims[n - 1]}x{self.dims[n]}"
                )
        if self.basis_labels is not None:
            if len(self.basis_labels) != len(self.dims) or any(
                len(l) != d for l, d in zip(self.basis_labels, self.dims)
            ):
                raise ValueError("shape mismatch: basis labels do not match dims")
        for n in range(2, len(self.dims)):
            square = self.boundaries[n - 1].matmul(self.boundaries[n])
            if self.modulus >= 1:
                square = square.mod(self.modulus)
            if not square.is_zero():
                witness = next(
                    j for j in range(square.cols) if any(square[i, j] for i in range(square.rows))
                )
                raise ValueError(
                    f"boundary square nonzero at degree {n}: column {witness} "
                    f"maps to {square.column(witness)}"
                )

    @classmethod
    def zero_boundaries(cls, dims: Sequence[int]) -> "FreeChainComplex":
        """Complex with the given dims and all-zero boundary maps."""
        dims = list(dims)
        boundaries = [IntegerMatrix.zeros(0, dims[0])]
        boundaries += [IntegerMatrix.zeros(dims[n - 1], dims[n]) for n in range(1, len(dims))]
        return cls(dims, boundaries)

    def to_json(self) -> dict:
        out = {
            "dims": list(self.dims),
            "boundaries": [b.entries for b in self.boundaries],
        }
        if self.modulus:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FreeChainComplex":
        dims = [int(d) for d in data["dims"]]
        raw = data["boundaries"]
        if len(raw) != len(dims):
            raise ValueError("shape mismatch: boundary count does not match dims")
        boundaries = [IntegerMatrix(0, dims[0], [int(x) for x in raw[0]])]
        for n in range(1, len(dims)):
            boundaries.append(
                IntegerMatrix(dims[n - 1], dims[n], [int(x) for x in raw[n]])
            )
        return cls(dims, boundaries, modulus=int(data.get("modulus", 0)))

    def __repr__(self) -> str:
        return f"FreeChainComplex(dims={self.dims})"


def shift_sum(complexes: Sequence[FreeChainComplex]) -> FreeChainComplex:
    """Degreewise direct sum with block-diagonal boundaries.

    All summands must share a truncation depth; homology of the sum is the
    direct sum of the homologies, degree by degree.
    """
    complexes = list(complexes)
    if not complexes:
        raise ValueError("empty direct sum of complexes")
    depth = complexes[0].max_degree
    if any(c.max_degree != depth for c in complexes):
        raise ValueError("mixed truncation depth")
    modulus = complexes[0].modulus
    if any(c.modulus != modulus for c in complexes):
        raise ValueError("modulus mismatch in direct sum")
    dims = [sum(c.dims[n] for c in complexes) for n in range(depth + 1)]
    boundaries = [
        IntegerMatrix.block_diag([c.boundaries[n] for c in complexes])
        for n in range(depth + 1)
    ]
    labels = None
    if all(c.basis_labels is not None for c in complexes):
        labels = [
            [(i, lab) for i, c in enumerate(complexes) for lab in c.basis_labels[n]]
            for n in range(depth + 1)
        ]
    return FreeChainComplex(dims, boundaries, labels, modulus=modulus)


class _Subquotient:
    """The group K/B for lattices B ⊆ K ⊆ Z^ambient, with class coordinates.

    `lattice` holds a basis of K as columns; `relation_coords` expresses the
    generators of B in that basis.  Smith reduction of the coordinate matrix
    yields a diagonal presentation whose generators with invariant factor 1
    are dropped; the rest become the returned cycle representatives.
    """

    __slots__ = ("ambient_dim", "lattice", "uw", "kept", "orders", "generators")

    def __init__(self, ambient_dim: int, lattice: IntegerMatrix, relation_coords: IntegerMatrix):
        self.ambient_dim = ambient_dim
        self.lattice = lattice
        snf = smith_normal_form(relation_coords, want_uinv=True)
        k = lattice.cols
        orders = [snf.diag[i] if i < len(snf.diag) else 0 for i in range(k)]
        self.uw = snf.U
        gen_matrix = lattice.matmul(snf.uinv)
        self.kept = [i for i in range(k) if orders[i] != 1]
        self.orders = [orders[i] for i in self.kept]
        self.generators = [gen_matrix.column(i) for i in self.kept]

    def presentation(self) -> PresentedGroup:
        return PresentedGroup.from_diagonal(self.orders)

    def group(self) -> FinAbGroup:
        return FinAbGroup.from_cyclic_orders(self.orders)

    def class_coords(self, chain: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a cycle's class over the kept generators.

        Torsion coordinates come reduced mod their order, free ones exact;
        two cycles are homologous iff their tuples agree.
        """
        if len(chain) != self.ambient_dim:
            raise ValueError(
                f"shape mismatch: chain of length {len(chain)} in ambient dimension {self.ambient_dim}"
            )
        x = solve_columns(self.lattice, IntegerMatrix.column_vector(chain))
        if x is None:
            raise ValueError("not a cycle")
        y = self.uw.mul_vector(x.column(0))
        return tuple(
            y[i] % self.orders[pos] if self.orders[pos] else y[i]
            for pos, i in enumerate(self.kept)
        )


class HomologyResult:
    """Homology in one degree: iso type, presentation, and representatives.

    `modulus` is 0 for integral homology and q >= 1 for Z/q coefficients.
    `cycle_reps[i]` is an integer chain whose class is the i-th generator of
    `presentation`; `class_coords` expresses any further cycle over those
    generators (raising "not a cycle" on non-cycles).
    """

    __slots__ = ("degree", "modulus", "group", "presentation", "cycle_reps", "_sq")

    def __init__(self, degree: int, modulus: int, sq: _Subquotient):
        self.degree = degree
        self.modulus = modulus
        self.group = sq.group()
        self.presentation = sq.presentation()
        self.cycle_reps = [list(g) for g in sq.generators]
        self._sq = sq

    def class_coords(self, chain: Sequence[int]) -> tuple[int, ...]:
        return self._sq.class_coords(chain)

    def same_class(self, chain_a: Sequence[int], chain_b: Sequence[int]) -> bool:
        return self.class_coords(chain_a) == self.class_coords(chain_b)

    def __repr__(self) -> str:
        coeff = "Z" if self.modulus == 0 else f"Z/{self.modulus}"
        return f"HomologyResult(degree={self.degree}, coefficients={coeff}, group={self.group})"


def _check_trusted(complex_: FreeChainComplex, n: int) -> None:
    if n < 0:
        raise ValueError("negative degree")
    if n > complex_.max_degree - 1:
        raise ValueError(
            f"degree exceeds trusted truncation: degree {n} needs boundary {n + 1}, "
            f"complex is truncated at {complex_.max_degree}"
        )


def homology_int(complex_: FreeChainComplex, n: int) -> HomologyResult:
    """Integral homology ker(∂_n)/im(∂_{n+1}) with generating representatives."""
    if complex_.modulus != 0:
        raise ValueError("integral homology needs a complex over Z, not Z/q")
    _check_trusted(complex_, n)
    boundary = complex_.boundaries[n]
    following = complex_.boundaries[n + 1]
    snf = smith_normal_form(boundary, want_vinv=True)
    r = snf.rank
    kernel = snf.V.submatrix_columns(range(r, boundary.cols))
    # Cycle coordinates are free: for a cycle w, (V^{-1} w) vanishes in the
    # first r rows, so im(∂_{n+1}) expressed in the kernel basis is just the
    # bottom rows of V^{-1} ∂_{n+1}.
    image_coords = snf.vinv.matmul(following)
    relation = IntegerMatrix.from_rows(
        [image_coords._rows[i] for i in range(r, boundary.cols)], cols=following.cols
    )
    sq = _Subquotient(complex_.dims[n], kernel, relation)
    return HomologyResult(n, 0, sq)


def homology_mod(complex_: FreeChainComplex, q: int, n: int) -> HomologyResult:
    """Homology with Z/q coefficients by the integer-lattice method.

    K = {v : ∂_n v ∈ qZ} (a full-rank lattice), B = im(∂_{n+1}) + qZ^{dims[n]};
    the result is K/B, always finite of exponent dividing q.  q = 0 falls back
    to integral homology; q = 1 yields the trivial group.
    """
    if q < 0:
        raise ValueError("negative modulus")
    if q == 0:
        return homology_int(complex_, n)
    if complex_.modulus not in (0, q):
        raise ValueError(
            f"modulus mismatch: complex over Z/{complex_.modulus}, homology over Z/{q}"
        )
    _check_trusted(complex_, n)
    boundary = complex_.boundaries[n]
    following = complex_.boundaries[n + 1]
    d_here = complex_.dims[n]
    d_below = complex_.dims[n - 1] if n >= 1 else 0
    augmented = IntegerMatrix.hstack(
        [boundary, IntegerMatrix.identity(d_below) * q]
    )
    full_kernel = kernel_basis(augmented)
    # The projection to the first d_here coordinates is injective on the
    # kernel lattice (the companion block is -∂v/q, determined by v), so the
    # projected columns are already a basis of K.
    lattice = IntegerMatrix.from_rows(
        [full_kernel._rows[i] for i in range(d_here)], cols=full_kernel.cols
    )
    enlarged_image = IntegerMatrix.hstack(
        [following, IntegerMatrix.identity(d_here) * q]
    )
    relation = solve_columns(lattice, enlarged_image)
    if relation is None:
        raise AssertionError("image lattice escapes the cycle lattice")
    sq = _Subquotient(d_here, lattice, relation)
    return HomologyResult(n, q, sq)


def homology_group(complex_: FreeChainComplex, n: int) -> FinAbGroup:
    """Iso type of integral H_n without representatives (sparse fast path).

    rank = dims[n] - rank ∂_n - rank ∂_{n+1}; torsion comes from the nonunit
    invariant factors of ∂_{n+1} (integer kernels are saturated, so the
    quotient's torsion is exactly the image's).
    """
    if complex_.modulus != 0:
        raise ValueError("integral homology needs a complex over Z, not Z/q")
    _check_trusted(complex_, n)
    factors_next = invariant_factors(complex_.boundaries[n + 1])
    rank_here = len(invariant_factors(complex_.boundaries[n]))
    free = complex_.dims[n] - rank_here - len(factors_next)
    return FinAbGroup(free, [d for d in factors_next if d >= 2])
