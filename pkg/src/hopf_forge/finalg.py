"""Finite-dimensional *-algebras given by structure constants.

A FinAlgebra stores a basis (labels), a sparse multiplication table, the
unit in coordinates, and optionally a conjugate-linear star map.  Elements
are coordinate vectors of Scalars.  build_algebra verifies associativity,
the unit laws (solving for the unit when it is not supplied), and the star
axioms, raising StructureError with a concrete witness on any violation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructureError
from .exactla import (gram_certificate, identity_matrix, invert, matmul,
                      matvec, rank, solve_affine)
from .scalars import SC_ONE, SC_ZERO, Scalar


@dataclass
class LinMap:
    """A (conjugate-)linear map in coordinates: v -> M v, or v -> M conj(v)."""

    matrix: list
    conjugate_linear: bool = False

    @staticmethod
    def identity(n: int) -> "LinMap":
        return LinMap(identity_matrix(n, SC_ONE, SC_ZERO))

    @staticmethod
    def from_images(images: list) -> "LinMap":
        """Build from the list of basis-vector images (image j = of e_j)."""
        n_out = len(images[0]) if images else 0
        return LinMap([[images[j][i] for j in range(len(images))]
                       for i in range(n_out)])

    @property
    def n_in(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def n_out(self) -> int:
        return len(self.matrix)

    def apply(self, v: list) -> list:
        if self.conjugate_linear:
            v = [x.conjugate() for x in v]
        return matvec(self.matrix, v)

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        g = other.matrix
        if self.conjugate_linear:
            g = [[x.conjugate() for x in row] for row in g]
        return LinMap(matmul(self.matrix, g),
                      self.conjugate_linear != other.conjugate_linear)

    def inverse(self) -> "LinMap":
        minv = invert(self.matrix)
        if minv is None:
            raise StructureError("map is not invertible")
        if self.conjugate_linear:
            minv = [[x.conjugate() for x in row] for row in minv]
        return LinMap(minv, self.conjugate_linear)

    def is_bijective(self) -> bool:
        return self.n_in == self.n_out and rank(self.matrix) == self.n_in

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.conjugate_linear == other.conjugate_linear
                and self.matrix == other.matrix)


def zero_vector(n: int) -> list:
    return [SC_ZERO] * n

def basis_vector(n: int, i: int) -> list:
    v = [SC_ZERO] * n
    v[i] = SC_ONE
    return v


def vec_add(u: list, v: list) -> list:
    return [x + y for x, y in zip(u, v)]


def vec_sub(u: list, v: list) -> list:
    return [x - y for x, y in zip(u, v)]


def vec_scale(c: Scalar, v: list) -> list:
    return [c * x for x in v]


def vec_is_zero(v: list) -> bool:
    return all(x.is_zero for x in v)


def apply_functional(phi: list, v: list) -> Scalar:
    acc = SC_ZERO
    for c, x in zip(phi, v):
        if not (c.is_zero or x.is_zero):
            acc = acc + c * x
    return acc


@dataclass
class FinAlgebra:
    """Associative unital algebra over the scalar field, by structure constants.

    mul maps a basis index pair (i, j) to the sparse expansion of e_i e_j
    as {k: coefficient}.  Absent pairs multiply to zero.
    """

    labels: list
    mul: dict
    unit: list
    star: LinMap | None = None
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> list:
        return basis_vector(self.dim, i)

    def multiply(self, x: list, y: list) -> list:
        out = [SC_ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi.is_zero:
                continue
            for j, yj in enumerate(y):
                if yj.is_zero:
                    continue
                ent = self.mul.get((i, j))
                if not ent:
                    continue
                c = xi * yj
                for k, coeff in ent.items():
                    out[k] = out[k] + c * coeff
        return out

    def apply_star(self, x: list) -> list:
        if self.star is None:
            raise StructureError("algebra %r has no star structure" % self.name)
        return self.star.apply(x)

    def left_mul_matrix(self, x: list) -> list:
        """Matrix of y -> x y."""
        cols = [self.multiply(x, self.basis(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def right_mul_matrix(self, x: list) -> list:
        """Matrix of y -> y x."""
        cols = [self.multiply(self.basis(j), x) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def format_element(self, x: list) -> str:
        terms = []
        for i, c in enumerate(x):
            if c.is_zero:
                continue
            if c.is_one:
                terms.append(self.labels[i])
            else:
                terms.append("(%s)*%s" % (c, self.labels[i]))
        return " + ".join(terms) if terms else "0"


def _check_associativity(alg: FinAlgebra) -> None:
    n = alg.dim
    for i in range(n):
        ei = alg.basis(i)
        for j in range(n):
            ej = alg.basis(j)
            left_ij = alg.multiply(ei, ej)
            for k in range(n):
                ek = alg.basis(k)
                lhs = alg.multiply(left_ij, ek)
                rhs = alg.multiply(ei, alg.multiply(ej, ek))
                if lhs != rhs:
                    raise StructureError(
                        "associativity fails at (%s, %s, %s): (ab)c = %s but a(bc) = %s"
                        % (alg.labels[i], alg.labels[j], alg.labels[k],
                           alg.format_element(lhs), alg.format_element(rhs)))


def _solve_unit(alg: FinAlgebra) -> list:
    n = alg.dim
    rows = []
    rhs = []
    for i in range(n):
        for k in range(n):
            # right unit law: e_i * u = e_i
            rows.append([alg.mul.get((i, j), {}).get(k, SC_ZERO) for j in range(n)])
            rhs.append(SC_ONE if k == i else SC_ZERO)
            # left unit law: u * e_i = e_i
            rows.append([alg.mul.get((j, i), {}).get(k, SC_ZERO) for j in range(n)])
            rhs.append(SC_ONE if k == i else SC_ZERO)
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        raise StructureError("algebra %r has no unit" % alg.name)
    if sol.dimension != 0:
        raise StructureError(
            "unit of algebra %r is not unique (solution space dimension %d)"
            % (alg.name, sol.dimension))
    return sol.particular


def _check_unit(alg: FinAlgebra) -> None:
    for i in range(alg.dim):
        ei = alg.basis(i)
        if alg.multiply(alg.unit, ei) != ei:
            raise StructureError(
                "left unit law fails at %s" % alg.labels[i])
        if alg.multiply(ei, alg.unit) != ei:
            raise StructureError(
                "right unit law fails at %s" % alg.labels[i])


def _check_star(alg: FinAlgebra) -> None:
    star = alg.star
    n = alg.dim
    if star.n_in != n or star.n_out != n:
        raise StructureError("star map has wrong shape")
    if not star.conjugate_linear:
        raise StructureError("star map must be conjugate-linear")
    twice = star.compose(star)
    if twice != LinMap.identity(n):
        raise StructureError("star is not an involution")
    for i in range(n):
        for j in range(n):
            lhs = star.apply(alg.multiply(alg.basis(i), alg.basis(j)))
            rhs = alg.multiply(star.apply(alg.basis(j)), star.apply(alg.basis(i)))
            if lhs != rhs:
                raise StructureError(
                    "star is not anti-multiplicative at (%s, %s): "
                    "star(ab) = %s but star(b) star(a) = %s"
                    % (alg.labels[i], alg.labels[j],
                       alg.format_element(lhs), alg.format_element(rhs)))
    if star.apply(alg.unit) != alg.unit:
        raise StructureError("star does not fix the unit")


def build_algebra(labels, mul, unit=None, star=None, name="") -> FinAlgebra:
    """Construct and fully verify a finite-dimensional (*-)algebra.

    When unit is None it is solved for from the unit laws and must be unique.
    star may be a LinMap or a raw matrix (then wrapped conjugate-linearly).
    """
    if star is not None and not isinstance(star, LinMap):
        star = LinMap(star, conjugate_linear=True)
    alg = FinAlgebra(list(labels), dict(mul), unit, star, name=name)
    _check_associativity(alg)
    if alg.unit is None:
        alg.unit = _solve_unit(alg)
    _check_unit(alg)
    if alg.star is not None:
        _check_star(alg)
    return alg


def tensor_algebra(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """Tensor product algebra; construction is componentwise so the axioms
    are inherited and not re-verified."""
    na, nb = a.dim, b.dim
    labels = ["%s(x)%s" % (la, lb) for la in a.labels for lb in b.labels]
    mul = {}
    for (i1, j1), ent1 in a.mul.items():
        for (i2, j2), ent2 in b.mul.items():
            out = {}
            for k1, c1 in ent1.items():
                for k2, c2 in ent2.items():
                    out[k1 * nb + k2] = c1 * c2
            mul[(i1 * nb + i2, j1 * nb + j2)] = out
    unit = [x * y for x in a.unit for y in b.unit]
    star = None
    if a.star is not None and b.star is not None:
        sa, sb = a.star.matrix, b.star.matrix
        m = [[SC_ZERO] * (na * nb) for _ in range(na * nb)]
        for i1 in range(na):
            for j1 in range(na):
                if sa[i1][j1].is_zero:
                    continue
                for i2 in range(nb):
                    for j2 in range(nb):
                        if not sb[i2][j2].is_zero:
                            m[i1 * nb + i2][j1 * nb + j2] = sa[i1][j1] * sb[i2][j2]
        star = LinMap(m, conjugate_linear=True)
    return FinAlgebra(labels, mul, unit, star,
                      name="%s(x)%s" % (a.name or "A", b.name or "B"))


def transform_basis(alg: FinAlgebra, p_cols: list, labels=None) -> FinAlgebra:
    """The same algebra in the basis f_j = sum_i P[i][j] e_i."""
    n = alg.dim
    pinv = invert(p_cols)
    if pinv is None:
        raise StructureError("basis transform matrix is singular")
    mul = {}
    for i in range(n):
        fi = [p_cols[t][i] for t in range(n)]
        for j in range(n):
            fj = [p_cols[t][j] for t in range(n)]
            prod = matvec(pinv, alg.multiply(fi, fj))
            ent = {k: c for k, c in enumerate(prod) if not c.is_zero}
            if ent:
                mul[(i, j)] = ent
    unit = matvec(pinv, alg.unit)
    star = None
    if alg.star is not None:
        pconj = [[x.conjugate() for x in row] for row in p_cols]
        star = LinMap(matmul(pinv, matmul(alg.star.matrix, pconj)),
                      conjugate_linear=True)
    new_labels = labels if labels is not None else ["f%d" % i for i in range(n)]
    return FinAlgebra(new_labels, mul, unit, star, name=alg.name)


def gram_matrix(alg: FinAlgebra, phi: list) -> list:
    """G[i][j] = phi(star(e_i) e_j)."""
    if alg.star is None:
        raise StructureError("Gram matrix needs a star structure")
    starred = [alg.apply_star(alg.basis(i)) for i in range(alg.dim)]
    return [[apply_functional(phi, alg.multiply(starred[i], alg.basis(j)))
             for j in range(alg.dim)] for i in range(alg.dim)]


def gram_psd(alg: FinAlgebra, phi: list, spec_points):
    """Positivity certificate for the sesquilinear form phi(star(a) b)."""
    g = gram_matrix(alg, phi)
    return g, gram_certificate(g, spec_points)
