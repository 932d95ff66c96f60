"""Universal-coefficient machinery: assemble H_n(G;A) from integral homology,
cross-validate against directly computed coefficient homology, check the
mod-q reduction map on representatives, and demonstrate why discreteness of
the coefficients matters (the Cantor-function obstruction).

The short exact sequence 0 → H_n⊗A → H_n(;A) → Tor(H_{n-1},A) → 0 splits, so
iso types can be compared by assembling the two outer terms.  The splitting
itself is never constructed — only the assembled iso type, the order equation,
and the image of the reduction map are observable here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .abelian import FinAbGroup, direct_sum, group_of, tensor, tor1
from .chains import FreeChainComplex, HomologyResult, homology_int, homology_mod
from .groupoids import FiniteGroupoid, moore_complex
from .matrix import IntegerMatrix, column_lattice_basis, solve_columns


@dataclass
class UctReport:
    """One degree of the universal-coefficient comparison."""

    degree: int
    integral_n: FinAbGroup
    integral_nminus1: FinAbGroup
    coefficient: FinAbGroup
    tensor_part: FinAbGroup
    tor_part: FinAbGroup
    assembled: FinAbGroup
    direct: FinAbGroup
    match: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "integral_n": self.integral_n.to_json(),
            "integral_n_minus_1": self.integral_nminus1.to_json(),
            "coefficient": self.coefficient.to_json(),
            "tensor_part": self.tensor_part.to_json(),
            "tor_part": self.tor_part.to_json(),
            "assembled": self.assembled.to_json(),
            "direct": self.direct.to_json(),
            "match": self.match,
        }


def uct_assemble(
    hn: FinAbGroup, hn_1: FinAbGroup, coefficients: FinAbGroup
) -> tuple[FinAbGroup, FinAbGroup, FinAbGroup]:
    """(tensor part, Tor part, their direct sum) for one degree.

    `hn_1` is the integral homology one degree below; for degree 0 pass the
    trivial group.
    """
    tensor_part = tensor(hn, coefficients)
    tor_part = tor1(hn_1, coefficients)
    return tensor_part, tor_part, tensor_part.direct_sum(tor_part)


def homology_with_coefficients(
    complex_: FreeChainComplex, coefficients: FinAbGroup, n: int
) -> FinAbGroup:
    """H_n of the complex with a finitely generated coefficient group.

    Decomposes A = Z^r ⊕ ⊕ Z/d and sums H_n(;Z)^r with the mod-d homologies;
    this is a chain-level splitting, not the universal-coefficient formula,
    so it is fair to cross-validate the latter against it.
    """
    parts: list[FinAbGroup] = []
    if coefficients.rank:
        integral = homology_int(complex_, n).group
        parts.extend([integral] * coefficients.rank)
    for d in coefficients.torsion:
        parts.append(homology_mod(complex_, d, n).group)
    return direct_sum(parts)


def uct_verify(
    groupoid: FiniteGroupoid,
    coefficients: FinAbGroup,
    max_degree: int,
    budget: int | None = None,
) -> list[UctReport]:
    """Universal-coefficient comparison for every trusted degree 0..N-1."""
    kwargs = {} if budget is None else {"budget": budget}
    complex_ = moore_complex(groupoid, max_degree, **kwargs)
    integral = [homology_int(complex_, n).group for n in range(max_degree)]
    reports = []
    for n in range(max_degree):
        below = integral[n - 1] if n >= 1 else FinAbGroup.trivial()
        tensor_part, tor_part, assembled = uct_assemble(integral[n], below, coefficients)
        direct = homology_with_coefficients(complex_, coefficients, n)
        reports.append(
            UctReport(
                degree=n,
                integral_n=integral[n],
                integral_nminus1=below,
                coefficient=coefficients,
                tensor_part=tensor_part,
                tor_part=tor_part,
                assembled=assembled,
                direct=direct,
                match=assembled == direct,
            )
        )
    return reports


@dataclass
class ModReductionReport:
    """Outcome of the representative-level mod-q reduction check."""

    degree: int
    modulus: int
    integral: FinAbGroup
    direct: FinAbGroup
    image: FinAbGroup
    tensor_part: FinAbGroup
    tor_part: FinAbGroup


def _subgroup_generated(ambient: HomologyResult, coord_vectors: Sequence[Sequence[int]]) -> FinAbGroup:
    """Iso type of the subgroup the coordinate vectors generate.

    The ambient group is presented diagonally (orders from the presentation),
    so the subgroup is span(vectors ∪ relations) / span(relations).
    """
    presentation = ambient.presentation
    relations = presentation.relations
    k = presentation.generators
    if not coord_vectors:
        return FinAbGroup.trivial()
    span = IntegerMatrix.hstack(
        [IntegerMatrix.from_rows([[v[i] for v in coord_vectors] for i in range(k)],
                                 cols=len(coord_vectors)), relations]
    )
    basis = column_lattice_basis(span)
    coords = solve_columns(basis, relations)
    if coords is None:
        raise AssertionError("relation lattice escapes its own span")
    return group_of(coords)


def mod_reduction_check(
    groupoid: FiniteGroupoid,
    q: int,
    n: int,
    seed: int = 0,
    budget: int | None = None,
) -> ModReductionReport:
    """Check the reduction-mod-q map on integral representatives.

    Every integral cycle representative is reduced mod q and located in
    H_n(;Z/q); well-definedness is probed by re-running on a boundary-shifted
    representative, and the subgroup the images generate must have the iso
    type of H_n(;Z) ⊗ Z/q.  Raises with a witness cycle when it does not.
    """
    if q < 1:
        raise ValueError("modulus must be >= 1")
    kwargs = {} if budget is None else {"budget": budget}
    complex_ = moore_complex(groupoid, n + 1, **kwargs)
    integral = homology_int(complex_, n)
    modular = homology_mod(complex_, q, n)
    rng = random.Random(seed)
    following = complex_.boundaries[n + 1]
    dim_above = complex_.dims[n + 1]
    images = []
    for z in integral.cycle_reps:
        coords = modular.class_coords(z)
        # well-definedness probes: shift by an integral boundary and by q
        shift = following.mul_vector([rng.randint(-2, 2) for _ in range(dim_above)])
        shifted = [a + b for a, b in zip(z, shift)]
        if modular.class_coords(shifted) != coords:
            raise ValueError(f"reduction map image mismatch: boundary shift moved the class of {z}")
        scaled = [a + q * rng.randint(-2, 2) for a in z]
        if modular.class_coords(scaled) != coords:
            raise ValueError(f"reduction map image mismatch: mod-q shift moved the class of {z}")
        images.append(list(coords))
    image_group = _subgroup_generated(modular, images)
    below = homology_int(complex_, n - 1).group if n >= 1 else FinAbGroup.trivial()
    tensor_part, tor_part, _ = uct_assemble(integral.group, below, FinAbGroup.cyclic(q))
    if image_group != tensor_part:
        raise ValueError(
            f"reduction map image mismatch: representatives {integral.cycle_reps} generate "
            f"{image_group}, expected {tensor_part}"
        )
    direct = modular.group
    direct_order = direct.order()
    image_order = image_group.order()
    tor_order = tor_part.order()
    if direct_order != image_order * tor_order:
        raise ValueError(
            f"reduction map image mismatch: order equation {direct_order} != "
            f"{image_order} * {tor_order}"
        )
    return ModReductionReport(
        degree=n,
        modulus=q,
        integral=integral.group,
        direct=direct,
        image=image_group,
        tensor_part=tensor_part,
        tor_part=tor_part,
    )


@dataclass
class CylinderRange:
    """Exact value range of the binary-digit sum over one level-k cylinder."""

    prefix: tuple[int, ...]
    low: Fraction
    high: Fraction

    @property
    def width(self) -> Fraction:
        return self.high - self.low


@dataclass
class CantorReport:
    level: int
    cylinders: list[CylinderRange]

    @property
    def all_widths_positive(self) -> bool:
        return all(c.width > 0 for c in self.cylinders)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "cylinders": [
                {
                    "prefix": list(c.prefix),
                    "low": str(c.low),
                    "high": str(c.high),
                    "width": str(c.width),
                }
                for c in self.cylinders
            ],
        }


def cantor_obstruction(level: int) -> CantorReport:
    """Exact cylinder ranges of x ↦ Σ 2^{-i} x_i on {0,1}^∞, at one level.

    On the cylinder fixing the first k binary digits the value runs over
    [base, base + 2^{-k}] exactly, so the function is constant on no cylinder:
    with real coefficients no finite sum of characteristic functions can
    represent it, which is the finite-precision form of the obstruction.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    out = []
    tail = Fraction(1, 2**level)  # Σ_{i > k} 2^{-i}
    for index in range(2**level):
        prefix = tuple((index >> (level - 1 - i)) & 1 for i in range(level))
        base = Fraction(index, 2**level)
        out.append(CylinderRange(prefix=prefix, low=base, high=base + tail))
    return CantorReport(level=level, cylinders=out)


def decompose_step_function(values: Sequence[int]) -> list[tuple[int, list[int]]]:
    """Write a level-k step function as a sum of value-weighted indicators.

    `values[c]` is the (integer, i.e. discrete-group) value on cylinder c; the
    result pairs each distinct nonzero value with the cylinders carrying it —
    exactly the finite decomposition available for discrete coefficients and
    impossible for the digit-sum function with real ones.
    """
    groups: dict[int, list[int]] = {}
    for c, v in enumerate(values):
        if v != 0:
            groups.setdefault(v, []).append(c)
    decomposition = sorted(groups.items())
    # verify reconstruction exactly
    rebuilt = [0] * len(values)
    for value, cylinders in decomposition:
        for c in cylinders:
            rebuilt[c] += value
    if rebuilt != list(values):
        raise AssertionError("step-function decomposition failed to reconstruct")
    return decomposition
