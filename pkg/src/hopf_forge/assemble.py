"""Bridge from definition files to verified algebra objects."""

from __future__ import annotations

from .definition import StructureDefinition
from .errors import StructureError
from .finalg import FinAlgebra, LinMap, build_algebra
from .mhopf import QGData, attach_coproduct
from .scalars import SC_ZERO


def algebra_from_definition(d: StructureDefinition) -> FinAlgebra:
    """Build and verify the underlying *-algebra of a definition.

    A declared unit is verified (build_algebra solves for the unit and the
    solved one must match); the star matrix is wrapped conjugate-linearly.
    """
    star = None
    if d.star is not None:
        star = LinMap([list(row) for row in d.star], conjugate_linear=True)
    alg = build_algebra(d.labels, d.mul, unit=None, star=star, name=d.name)
    if d.unit is not None and alg.unit != list(d.unit):
        raise StructureError(
            "declared unit of %r disagrees with the solved one" % d.name)
    return alg


def coproduct_map(d: StructureDefinition) -> LinMap:
    n = d.dim
    matrix = [[SC_ZERO] * n for _ in range(n * n)]
    for src in range(n):
        for (left, right), c in d.coproduct[src].items():
            matrix[left * n + right][src] = c
    return LinMap(matrix)


def build_qg(d: StructureDefinition) -> QGData:
    """Verified algebra with attached (morphism + coassociative) coproduct."""
    return attach_coproduct(algebra_from_definition(d), coproduct_map(d))


def definition_from_qg(qg: QGData, name: str,
                       description: str) -> StructureDefinition:
    """Serialize a verified quantum group back into a definition (the
    inverse of build_qg), so derived objects such as duals can be saved."""
    alg = qg.algebra
    n = alg.dim
    mul = {k: dict(v) for k, v in alg.mul.items()}
    coproduct = []
    for src in range(n):
        d = qg.delta(alg.basis(src))
        ent = {}
        for idx in range(n * n):
            if not d[idx].is_zero:
                ent[divmod(idx, n)] = d[idx]
        coproduct.append(ent)
    return StructureDefinition(
        name=name,
        description=description,
        labels=list(alg.labels),
        mul=mul,
        coproduct=coproduct,
        unit=list(alg.unit),
        star=[list(row) for row in alg.star.matrix]
        if alg.star is not None else None,
        counit=list(qg.counit) if qg.counit is not None else None,
        antipode=[list(row) for row in qg.antipode.matrix]
        if qg.antipode is not None else None,
        sub_bases={},
    )
