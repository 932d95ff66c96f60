"""Mayer–Vietoris machinery for two-set saturated covers of the unit space.

A cover of the units by saturated subsets U1, U2 splits every composable
tuple into one of the pieces (tuples never leave an orbit), giving a short
exact sequence of Moore complexes

    0 → C(G|U12) --to_pieces--> C(G|U1) ⊕ C(G|U2) --to_total--> C(G) → 0

where to_pieces sends an intersection tuple to (itself, -itself) and to_total
is extension by zero followed by summing.  The connecting map is the explicit
zig-zag: lift a cycle, take its boundary, read the unique preimage off the
intersection block, and return that class.  Everything here is verified by
exact matrix identities — chain-map squares, injectivity/surjectivity through
invariant factors, and lattice membership for boundary claims.
"""

from __future__ import annotations

import random
from typing import Sequence

from .abelian import FinAbGroup, GroupHom, PresentedGroup, middle_homology
from .chains import FreeChainComplex, HomologyResult, homology_int
from .groupoids import (
    DEFAULT_BUDGET,
    FiniteGroupoid,
    moore_complex,
    reduction,
    saturation_witness,
)
from .matrix import IntegerMatrix, in_column_lattice, invariant_factors, solve_columns


class MvDecomposition:
    """A validated two-set saturated cover with its three reductions."""

    __slots__ = (
        "ambient",
        "u1",
        "u2",
        "u12",
        "piece1",
        "piece2",
        "piece12",
        "arrows1",
        "arrows2",
        "arrows12",
    )

    def __init__(self, ambient: FiniteGroupoid, u1: tuple[int, ...], u2: tuple[int, ...]):
        self.ambient = ambient
        self.u1 = u1
        self.u2 = u2
        self.u12 = tuple(sorted(set(u1) & set(u2)))
        self.piece1 = reduction(ambient, u1)
        self.piece2 = reduction(ambient, u2)
        self.piece12 = reduction(ambient, self.u12)
        self.arrows1 = _kept_arrows(ambient, u1)
        self.arrows2 = _kept_arrows(ambient, u2)
        self.arrows12 = _kept_arrows(ambient, self.u12)

    def __repr__(self) -> str:
        return (
            f"MvDecomposition(units={len(self.ambient.units)}, "
            f"|U1|={len(self.u1)}, |U2|={len(self.u2)}, |U12|={len(self.u12)})"
        )


def _kept_arrows(g: FiniteGroupoid, members: Sequence[int]) -> list[int]:
    mem = frozenset(members)
    return [a for a in range(g.arrows) if g.source[a] in mem and g.range_[a] in mem]


def decompose(g: FiniteGroupoid, u1: Sequence[int], u2: Sequence[int]) -> MvDecomposition:
    """Validate a two-set cover: both sets saturated, union equal to all units."""
    u1 = tuple(sorted(set(u1)))
    u2 = tuple(sorted(set(u2)))
    unit_set = set(g.units)
    for name, members in (("U1", u1), ("U2", u2)):
        stray = [u for u in members if u not in unit_set]
        if stray:
            raise ValueError(f"{name} contains non-unit indices {stray}")
    missed = unit_set - set(u1) - set(u2)
    if missed:
        raise ValueError(f"cover fails: units {sorted(missed)} lie in neither U1 nor U2")
    for name, members in (("U1", u1), ("U2", u2)):
        witness = saturation_witness(g, members)
        if witness is not None:
            raise ValueError(f"{name} not saturated: arrow {witness} leaves the set")
    return MvDecomposition(g, u1, u2)


class MvChainSes:
    """The short exact sequence of Moore complexes for a decomposition.

    `to_pieces[n]` is the intersection-to-pieces map (second block negated),
    `to_total[n]` the pieces-to-ambient sum; both are verified chain maps and
    the sequence is verified exact degreewise on construction.  Basis
    correspondences (`piece1_to_ambient` etc.) give, per degree, the ambient
    column index of each piece basis tuple.
    """

    __slots__ = (
        "decomposition",
        "max_degree",
        "total_complex",
        "complex1",
        "complex2",
        "complex12",
        "to_pieces",
        "to_total",
        "piece1_to_ambient",
        "piece2_to_ambient",
        "intersection_to_piece1",
        "intersection_to_piece2",
        "_ambient_owners",
        "_homology",
    )

    def __init__(self, decomposition: MvDecomposition, max_degree: int, budget: int | None):
        d = decomposition
        self.decomposition = d
        self.max_degree = max_degree
        self.total_complex = moore_complex(d.ambient, max_degree, budget=budget)
        self.complex1 = moore_complex(d.piece1, max_degree, budget=budget)
        self.complex2 = moore_complex(d.piece2, max_degree, budget=budget)
        self.complex12 = moore_complex(d.piece12, max_degree, budget=budget)
        self.to_pieces = []
        self.to_total = []
        self.piece1_to_ambient = []
        self.piece2_to_ambient = []
        self.intersection_to_piece1 = []
        self.intersection_to_piece2 = []
        self._ambient_owners = []
        self._homology: dict[tuple[str, int], HomologyResult] = {}
        for n in range(max_degree + 1):
            self._build_degree(n)
        self._verify()

    # -- construction ------------------------------------------------------

    def _build_degree(self, n: int) -> None:
        d = self.decomposition
        ambient_labels = self.total_complex.basis_labels[n]
        ambient_pos = {t: i for i, t in enumerate(ambient_labels)}

        def translate(piece_labels, arrow_map):
            return [tuple(arrow_map[x] for x in t) for t in piece_labels]

        tuples1 = translate(self.complex1.basis_labels[n], d.arrows1)
        tuples2 = translate(self.complex2.basis_labels[n], d.arrows2)
        tuples12 = translate(self.complex12.basis_labels[n], d.arrows12)
        emb1 = [ambient_pos[t] for t in tuples1]
        emb2 = [ambient_pos[t] for t in tuples2]
        pos1 = {t: i for i, t in enumerate(tuples1)}
        pos2 = {t: i for i, t in enumerate(tuples2)}
        in1 = [pos1[t] for t in tuples12]
        in2 = [pos2[t] for t in tuples12]
        dim1, dim2, dim12 = len(tuples1), len(tuples2), len(tuples12)
        dim_total = len(ambient_labels)

        alpha = IntegerMatrix.zeros(dim1 + dim2, dim12)
        for j in range(dim12):
            alpha._rows[in1[j]][j] = 1
            alpha._rows[dim1 + in2[j]][j] = -1
        beta = IntegerMatrix.zeros(dim_total, dim1 + dim2)
        for i, p in enumerate(emb1):
            beta._rows[p][i] = 1
        for i, p in enumerate(emb2):
            beta._rows[p][dim1 + i] = 1

        owners: list[tuple[int | None, int | None]] = [(None, None)] * dim_total
        for i, p in enumerate(emb1):
            owners[p] = (i, None)
        for i, p in enumerate(emb2):
            owners[p] = (owners[p][0], i)
        if any(a is None and b is None for a, b in owners):
            raise AssertionError("ambient tuple not covered by either piece")

        self.to_pieces.append(alpha)
        self.to_total.append(beta)
        self.piece1_to_ambient.append(emb1)
        self.piece2_to_ambient.append(emb2)
        self.intersection_to_piece1.append(in1)
        self.intersection_to_piece2.append(in2)
        self._ambient_owners.append(owners)

    def _verify(self) -> None:
        """Exactness and chain-map identities; failure is an implementation bug."""
        for n in range(self.max_degree + 1):
            alpha, beta = self.to_pieces[n], self.to_total[n]
            dim12 = self.complex12.dims[n]
            dim_total = self.total_complex.dims[n]
            assert beta.matmul(alpha).is_zero(), f"composite nonzero in degree {n}"
            assert invariant_factors(alpha) == [1] * dim12, f"inclusion not split in degree {n}"
            assert invariant_factors(beta) == [1] * dim_total, f"sum not surjective in degree {n}"
            # split injective + rank count + zero composite force ker = im:
            # im(alpha) is a saturated sublattice of ker(beta) of full rank
            kernel_rank = beta.cols - dim_total
            assert kernel_rank == dim12, f"rank mismatch in degree {n}"
        for n in range(1, self.max_degree + 1):
            alpha, beta = self.to_pieces[n], self.to_total[n]
            boundary_pieces = IntegerMatrix.block_diag(
                [self.complex1.boundaries[n], self.complex2.boundaries[n]]
            )
            left = self.to_pieces[n - 1].matmul(self.complex12.boundaries[n])
            right = boundary_pieces.matmul(alpha)
            assert left == right, f"intersection map is not a chain map in degree {n}"
            left = self.total_complex.boundaries[n].matmul(beta)
            right = self.to_total[n - 1].matmul(boundary_pieces)
            assert left == right, f"sum map is not a chain map in degree {n}"

    # -- homology and lifts --------------------------------------------------

    def homology(self, part: str, n: int) -> HomologyResult:
        """Integral homology of one of "total", "piece1", "piece2", "piece12"."""
        key = (part, n)
        if key not in self._homology:
            complex_ = {
                "total": self.total_complex,
                "piece1": self.complex1,
                "piece2": self.complex2,
                "piece12": self.complex12,
            }[part]
            self._homology[key] = homology_int(complex_, n)
        return self._homology[key]

    def lift(self, n: int, chain: Sequence[int], rng: random.Random | None = None) -> list[int]:
        """A preimage of an ambient chain under to_total[n].

        The canonical lift restricts to the U1 piece and puts the remainder on
        the U2 piece; with an rng, coefficients of intersection tuples are
        split randomly instead (still an exact preimage).
        """
        dim1 = self.complex1.dims[n]
        dim2 = self.complex2.dims[n]
        if len(chain) != self.total_complex.dims[n]:
            raise ValueError("shape mismatch: chain length does not match ambient dimension")
        out = [0] * (dim1 + dim2)
        for p, x in enumerate(chain):
            own1, own2 = self._ambient_owners[n][p]
            if own1 is not None and own2 is not None and rng is not None:
                first = rng.randint(-3, 3)
                out[own1] += first
                out[dim1 + own2] += x - first
            elif x == 0:
                continue
            elif own1 is not None:
                out[own1] += x
            else:
                out[dim1 + own2] += x
        check = self.to_total[n].mul_vector(out)
        if check != list(chain):
            raise AssertionError("lift failed to project back to the chain")
        return out

    def connecting(
        self, n: int, cycle: Sequence[int], rng: random.Random | None = None
    ) -> "ConnectingResult":
        """Zig-zag connecting map on one ambient degree-n cycle.

        Lift the cycle, take the boundary of the lift, read the unique
        intersection chain mapping onto it, and report that chain's class in
        degree n-1 of the intersection piece (the trivial group for n = 0).
        """
        boundary = self.total_complex.boundaries[n]
        if any(x != 0 for x in boundary.mul_vector(list(cycle))):
            raise ValueError("not a cycle")
        if n == 0:
            self.lift(n, cycle, rng=rng)
            return ConnectingResult(degree=n, witness=[], coords=(), is_boundary=True)
        lifted = self.lift(n, cycle, rng=rng)
        dim1 = self.complex1.dims[n]
        b1 = self.complex1.boundaries[n].mul_vector(lifted[:dim1])
        b2 = self.complex2.boundaries[n].mul_vector(lifted[dim1:])
        in1 = self.intersection_to_piece1[n - 1]
        witness = [b1[in1[j]] for j in range(self.complex12.dims[n - 1])]
        # uniqueness + correctness: to_pieces must reproduce the boundary exactly
        expected = self.to_pieces[n - 1].mul_vector(witness)
        if expected != b1 + b2:
            raise AssertionError("boundary of the lift is not an intersection chain")
        h_below = self.homology("piece12", n - 1)
        coords = h_below.class_coords(witness)
        is_boundary = in_column_lattice(self.complex12.boundaries[n], witness)
        return ConnectingResult(degree=n, witness=witness, coords=coords, is_boundary=is_boundary)

    def cycle_lift(self, n: int, cycle: Sequence[int]) -> list[int]:
        """A preimage of the cycle under to_total that is itself a cycle.

        Exists exactly when the connecting class vanishes: correct the
        canonical lift by to_pieces of any chain bounding the witness.
        """
        result = self.connecting(n, cycle)
        lifted = self.lift(n, cycle)
        if n == 0:
            return lifted
        if not result.is_boundary:
            raise ValueError("cycle admits no cycle lift: connecting class is nonzero")
        filler = solve_columns(
            self.complex12.boundaries[n], IntegerMatrix.column_vector(result.witness)
        )
        assert filler is not None, "witness declared a boundary but no filler found"
        correction = self.to_pieces[n].mul_vector(filler.column(0))
        out = [a - b for a, b in zip(lifted, correction)]
        boundary_pieces = IntegerMatrix.block_diag(
            [self.complex1.boundaries[n], self.complex2.boundaries[n]]
        )
        if any(x != 0 for x in boundary_pieces.mul_vector(out)):
            raise AssertionError("corrected lift is not a cycle")
        if self.to_total[n].mul_vector(out) != list(cycle):
            raise AssertionError("corrected lift no longer projects to the cycle")
        return out


class ConnectingResult:
    """Output of the zig-zag: the intersection chain and its class."""

    __slots__ = ("degree", "witness", "coords", "is_boundary")

    def __init__(self, degree: int, witness: list[int], coords: tuple[int, ...], is_boundary: bool):
        self.degree = degree
        self.witness = witness
        self.coords = coords
        self.is_boundary = is_boundary

    @property
    def is_zero_class(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self) -> str:
        return f"ConnectingResult(degree={self.degree}, coords={self.coords})"


def chain_ses(
    decomposition: MvDecomposition, max_degree: int, budget: int | None = DEFAULT_BUDGET
) -> MvChainSes:
    return MvChainSes(decomposition, max_degree, budget)


def connecting(
    decomposition: MvDecomposition,
    n: int,
    cycle: Sequence[int],
    rng: random.Random | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> ConnectingResult:
    """Connecting class of one ambient cycle (builds the SES up to degree n)."""
    return chain_ses(decomposition, n, budget).connecting(n, cycle, rng=rng)


class LongExactSequence:
    """The homology long exact sequence of a decomposition, fully presented.

    `nodes` runs from degree N-1 down to 0 in blocks
    H_n(G|U12) → H_n(G|U1) ⊕ H_n(G|U2) → H_n(G) → H_{n-1}(G|U12) → …
    ending in the trivial group; `arrows[i]` maps nodes[i] to nodes[i+1].
    """

    __slots__ = ("nodes", "arrows", "ses")

    def __init__(self, nodes, arrows, ses: MvChainSes):
        self.nodes = nodes  # list of (label, PresentedGroup, FinAbGroup)
        self.arrows = arrows  # list of GroupHom
        self.ses = ses

    def verify_exactness(self) -> list[tuple[str, FinAbGroup]]:
        """middle_homology at every interior node (all must be trivial)."""
        out = []
        for i in range(1, len(self.nodes) - 1):
            label = self.nodes[i][0]
            out.append((label, middle_homology(self.arrows[i - 1], self.arrows[i])))
        return out

    def to_json(self) -> list[dict]:
        records = []
        for i, (label, _presentation, group) in enumerate(self.nodes):
            arrow = self.arrows[i] if i < len(self.arrows) else None
            records.append(
                {
                    "label": label,
                    "group": group.to_json(),
                    "map_matrix": [arrow.matrix.row(i) for i in range(arrow.matrix.rows)]
                    if arrow is not None
                    else [],
                }
            )
        return records


def _direct_sum_presentation(a: PresentedGroup, b: PresentedGroup) -> PresentedGroup:
    relations = IntegerMatrix.block_diag([a.relations, b.relations])
    return PresentedGroup(a.generators + b.generators, relations)


def long_exact_sequence(
    decomposition: MvDecomposition, max_degree: int, budget: int | None = DEFAULT_BUDGET
) -> LongExactSequence:
    """Assemble the long exact sequence in trusted degrees 0..N-1."""
    ses = chain_ses(decomposition, max_degree, budget)
    top = max_degree - 1
    h12 = [ses.homology("piece12", n) for n in range(top + 1)]
    h1 = [ses.homology("piece1", n) for n in range(top + 1)]
    h2 = [ses.homology("piece2", n) for n in range(top + 1)]
    ht = [ses.homology("total", n) for n in range(top + 1)]
    pair_nodes = [_direct_sum_presentation(h1[n].presentation, h2[n].presentation) for n in range(top + 1)]
    trivial_node = PresentedGroup.trivial()

    nodes = []
    arrows = []
    for n in range(top, -1, -1):
        dim1 = ses.complex1.dims[n]
        # to_pieces on homology
        cols = []
        for z in h12[n].cycle_reps:
            image = ses.to_pieces[n].mul_vector(z)
            c1 = h1[n].class_coords(image[:dim1])
            c2 = h2[n].class_coords(image[dim1:])
            cols.append(list(c1) + list(c2))
        alpha_matrix = IntegerMatrix.from_rows(
            [[col[i] for col in cols] for i in range(pair_nodes[n].generators)],
            cols=len(cols),
        )
        alpha_hom = GroupHom(h12[n].presentation, pair_nodes[n], alpha_matrix)
        # to_total on homology
        cols = []
        for z in h1[n].cycle_reps:
            padded = list(z) + [0] * ses.complex2.dims[n]
            cols.append(list(ht[n].class_coords(ses.to_total[n].mul_vector(padded))))
        for z in h2[n].cycle_reps:
            padded = [0] * dim1 + list(z)
            cols.append(list(ht[n].class_coords(ses.to_total[n].mul_vector(padded))))
        beta_matrix = IntegerMatrix.from_rows(
            [[col[i] for col in cols] for i in range(ht[n].presentation.generators)],
            cols=len(cols),
        )
        beta_hom = GroupHom(pair_nodes[n], ht[n].presentation, beta_matrix)
        # connecting on homology
        target = h12[n - 1].presentation if n >= 1 else trivial_node
        cols = [list(ses.connecting(n, z).coords) for z in ht[n].cycle_reps]
        delta_matrix = IntegerMatrix.from_rows(
            [[col[i] for col in cols] for i in range(target.generators)],
            cols=len(cols),
        )
        delta_hom = GroupHom(ht[n].presentation, target, delta_matrix)

        nodes.append((f"H_{n}(G|U12)", h12[n].presentation, h12[n].group))
        nodes.append(
            (
                f"H_{n}(G|U1) ⊕ H_{n}(G|U2)",
                pair_nodes[n],
                h1[n].group.direct_sum(h2[n].group),
            )
        )
        nodes.append((f"H_{n}(G)", ht[n].presentation, ht[n].group))
        arrows.extend([alpha_hom, beta_hom, delta_hom])
    nodes.append(("0", trivial_node, FinAbGroup.trivial()))
    return LongExactSequence(nodes, arrows, ses)
