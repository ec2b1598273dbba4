"""Hopf structure on finite-dimensional algebras: coproduct attachment,
T-map bijectivity, derived counit/antipode, star compatibility, sub-object
checks, grouplike projections.

The coproduct is a plain linear map A -> A(x)A (the unital finite shadow,
where the multiplier algebra of the tensor square is the tensor square
itself).  The counit and antipode are never taken on faith: they are solved
for from their defining laws and required to be unique; declared tables, when
present, are cross-checked against the solved ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CheckFailure, StructureError
from .exactla import rank as _rank
from .exactla import solve_affine
from .finalg import (FinAlgebra, LinMap, apply_functional, basis_vector,
                     build_algebra, tensor_algebra, vec_is_zero, zero_vector)
from .scalars import SC_ONE, SC_ZERO


def tensor_vec(x: list, y: list) -> list:
    """Coordinates of x(x)y in the tensor-square basis (i, j) -> i*len(y)+j."""
    out = []
    for xi in x:
        if xi.is_zero:
            out.extend([SC_ZERO] * len(y))
        else:
            out.extend([xi * yj for yj in y])
    return out


@dataclass
class QGData:
    """Algebra plus verified coproduct; counit and antipode once derived."""

    algebra: FinAlgebra
    coproduct: LinMap
    tensor_sq: FinAlgebra
    counit: list | None = None
    antipode: LinMap | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta(self, x: list) -> list:
        return self.coproduct.apply(x)

    def has_star(self) -> bool:
        return self.algebra.star is not None


def attach_coproduct(alg: FinAlgebra, coproduct: LinMap) -> QGData:
    """Verify the coproduct is an algebra morphism and coassociative.

    Unitality of the coproduct is deliberately not required here; it is
    re-examined with the T-maps, so that morphism-level acceptance and
    bijectivity-level rejection stay separate stages.
    """
    n = alg.dim
    if coproduct.n_in != n or coproduct.n_out != n * n:
        raise StructureError(
            "coproduct must map the %d-dim algebra into its tensor square" % n)
    tsq = tensor_algebra(alg, alg)
    qg = QGData(alg, coproduct, tsq)
    for i in range(n):
        di = coproduct.apply(alg.basis(i))
        for j in range(n):
            lhs = coproduct.apply(alg.multiply(alg.basis(i), alg.basis(j)))
            rhs = tsq.multiply(di, coproduct.apply(alg.basis(j)))
            if lhs != rhs:
                raise StructureError(
                    "coproduct is not multiplicative at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    for k in range(n):
        if _coassoc_defect(qg, k):
            raise StructureError(
                "coproduct is not coassociative at %s" % alg.labels[k])
    return qg


def _coassoc_defect(qg: QGData, k: int) -> bool:
    n = qg.dim
    d = qg.delta(qg.algebra.basis(k))
    left = {}
    right = {}
    for idx in range(n * n):
        c = d[idx]
        if c.is_zero:
            continue
        i, j = divmod(idx, n)
        di = qg.delta(qg.algebra.basis(i))
        for idx2 in range(n * n):
            c2 = di[idx2]
            if not c2.is_zero:
                a, b = divmod(idx2, n)
                key = (a, b, j)
                left[key] = left.get(key, SC_ZERO) + c * c2
        dj = qg.delta(qg.algebra.basis(j))
        for idx2 in range(n * n):
            c2 = dj[idx2]
            if not c2.is_zero:
                a, b = divmod(idx2, n)
                key = (i, a, b)
                right[key] = right.get(key, SC_ZERO) + c * c2
    keys = set(left) | set(right)
    return any(left.get(key, SC_ZERO) != right.get(key, SC_ZERO) for key in keys)


# ---------------------------------------------------------------------------
# T-maps
# ---------------------------------------------------------------------------

TMAP_FORMULAS = ("D(a)(1(x)b)", "(a(x)1)D(b)", "D(a)(b(x)1)", "(1(x)a)D(b)")


@dataclass
class TMapView:
    formula: str
    rank: int
    size: int

    @property
    def bijective(self) -> bool:
        return self.rank == self.size


@dataclass
class TMapReport:
    maps: list
    coproduct_unital: bool

    @property
    def all_bijective(self) -> bool:
        return all(m.bijective for m in self.maps)

    def failures(self) -> list:
        return [m for m in self.maps if not m.bijective]


def _tmap_columns(qg: QGData, which: int) -> list:
    alg, tsq = qg.algebra, qg.tensor_sq
    n = alg.dim
    cols = []
    unit = alg.unit
    for i in range(n):
        ei = alg.basis(i)
        di = qg.delta(ei)
        for j in range(n):
            ej = alg.basis(j)
            if which == 0:
                col = tsq.multiply(di, tensor_vec(unit, ej))
            elif which == 1:
                col = tsq.multiply(tensor_vec(ei, unit), qg.delta(ej))
            elif which == 2:
                col = tsq.multiply(di, tensor_vec(ej, unit))
            else:
                col = tsq.multiply(tensor_vec(unit, ei), qg.delta(ej))
            cols.append(col)
    return [[cols[c][r] for c in range(n * n)] for r in range(n * n)]


def check_tmaps(qg: QGData) -> TMapReport:
    """Exact ranks of the four canonical maps on the tensor square.

    All four bijective is the regularity condition at finite dimension.
    Also records whether the coproduct sends the unit to 1(x)1.
    """
    n2 = qg.dim * qg.dim
    views = []
    for which, formula in enumerate(TMAP_FORMULAS):
        m = _tmap_columns(qg, which)
        views.append(TMapView(formula, _rank(m), n2))
    unital = qg.delta(qg.algebra.unit) == tensor_vec(qg.algebra.unit, qg.algebra.unit)
    return TMapReport(views, unital)


# ---------------------------------------------------------------------------
# counit and antipode
# ---------------------------------------------------------------------------

def derive_counit_antipode(qg: QGData, declared_counit=None,
                           declared_antipode=None) -> QGData:
    """Solve the counit and antipode laws; each solution must be unique.

    Both one-sided laws are stacked into a single linear system, so the
    solved map satisfies the two-sided law by construction.  The solved
    counit is verified multiplicative and the solved antipode is verified
    anti-multiplicative, unital and bijective.  Declared tables, if any,
    must agree exactly with the solved ones.
    """
    alg = qg.algebra
    n = alg.dim
    deltas = [qg.delta(alg.basis(k)) for k in range(n)]

    rows = []
    rhs = []
    for k in range(n):
        dk = deltas[k]
        for t in range(n):
            rows.append([dk[i * n + t] for i in range(n)])
            rhs.append(SC_ONE if t == k else SC_ZERO)
            rows.append([dk[t * n + j] for j in range(n)])
            rhs.append(SC_ONE if t == k else SC_ZERO)
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        raise StructureError("counit laws have no solution")
    if sol.dimension != 0:
        raise StructureError(
            "counit is not unique (solution space dimension %d)" % sol.dimension)
    eps = sol.particular

    for i in range(n):
        for j in range(n):
            lhs = apply_functional(eps, alg.multiply(alg.basis(i), alg.basis(j)))
            if lhs != eps[i] * eps[j]:
                raise StructureError(
                    "solved counit is not multiplicative at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    if apply_functional(eps, alg.unit) != SC_ONE:
        raise StructureError("solved counit does not send the unit to 1")

    rows = []
    rhs = []
    for k in range(n):
        dk = deltas[k]
        for t in range(n):
            row1 = [SC_ZERO] * (n * n)
            row2 = [SC_ZERO] * (n * n)
            for i in range(n):
                for j in range(n):
                    c = dk[i * n + j]
                    if c.is_zero:
                        continue
                    for r in range(n):
                        ent = alg.mul.get((r, j))
                        if ent and t in ent:
                            row1[r * n + i] = row1[r * n + i] + c * ent[t]
                        ent = alg.mul.get((i, r))
                        if ent and t in ent:
                            row2[r * n + j] = row2[r * n + j] + c * ent[t]
            target = eps[k] * alg.unit[t]
            rows.append(row1)
            rhs.append(target)
            rows.append(row2)
            rhs.append(target)
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        raise StructureError("antipode laws have no solution")
    if sol.dimension != 0:
        raise StructureError(
            "antipode is not unique (solution space dimension %d)" % sol.dimension)
    smat = [[sol.particular[r * n + c] for c in range(n)] for r in range(n)]
    antipode = LinMap(smat)

    for i in range(n):
        for j in range(n):
            lhs = antipode.apply(alg.multiply(alg.basis(i), alg.basis(j)))
            rhs_v = alg.multiply(antipode.apply(alg.basis(j)),
                                 antipode.apply(alg.basis(i)))
            if lhs != rhs_v:
                raise StructureError(
                    "solved antipode is not anti-multiplicative at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    if antipode.apply(alg.unit) != alg.unit:
        raise StructureError("solved antipode does not fix the unit")
    if not antipode.is_bijective():
        raise StructureError("solved antipode is not bijective")

    if declared_counit is not None and list(declared_counit) != eps:
        raise CheckFailure("declared-counit",
                           "declared counit disagrees with the solved one")
    if declared_antipode is not None:
        dm = declared_antipode.matrix if isinstance(declared_antipode, LinMap) \
            else declared_antipode
        if dm != smat:
            raise CheckFailure("declared-antipode",
                               "declared antipode disagrees with the solved one")

    qg.counit = eps
    qg.antipode = antipode
    return qg


# ---------------------------------------------------------------------------
# star compatibility
# ---------------------------------------------------------------------------

@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class StarCompatReport:
    items: list

    @property
    def all_ok(self) -> bool:
        return all(it.ok for it in self.items)


def check_star_compat(qg: QGData) -> StarCompatReport:
    """S(S(a)*)* = a, coproduct/star exchange, counit/star exchange."""
    alg = qg.algebra
    n = alg.dim
    if alg.star is None:
        raise StructureError("star compatibility requires a star structure")
    if qg.antipode is None or qg.counit is None:
        raise StructureError("derive the counit and antipode first")
    s, star = qg.antipode, alg.star

    items = []
    bad = [alg.labels[i] for i in range(n)
           if star.apply(s.apply(star.apply(s.apply(alg.basis(i))))) != alg.basis(i)]
    items.append(CheckItem(
        "antipode-star-involutivity",
        not bad,
        "S(S(a)*)* = a on every basis element" if not bad
        else "fails at " + ", ".join(bad)))

    bad = []
    for i in range(n):
        lhs = qg.delta(star.apply(alg.basis(i)))
        d = qg.delta(alg.basis(i))
        rhs = [SC_ZERO] * (n * n)
        for idx in range(n * n):
            c = d[idx]
            if c.is_zero:
                continue
            a, b = divmod(idx, n)
            term = tensor_vec(star.apply(basis_vector(n, a)),
                              star.apply(basis_vector(n, b)))
            cc = c.conjugate()
            rhs = [x + cc * y for x, y in zip(rhs, term)]
        if lhs != rhs:
            bad.append(alg.labels[i])
    items.append(CheckItem(
        "coproduct-star-compatibility",
        not bad,
        "D(a*) = D(a)* on every basis element" if not bad
        else "fails at " + ", ".join(bad)))

    bad = [alg.labels[i] for i in range(n)
           if apply_functional(qg.counit, star.apply(alg.basis(i)))
           != apply_functional(qg.counit, alg.basis(i)).conjugate()]
    items.append(CheckItem(
        "counit-star-compatibility",
        not bad,
        "eps(a*) = conj(eps(a)) on every basis element" if not bad
        else "fails at " + ", ".join(bad)))
    return StarCompatReport(items)


# ---------------------------------------------------------------------------
# grouplike projections
# ---------------------------------------------------------------------------

@dataclass
class GrouplikeProjectionReport:
    items: list

    @property
    def all_ok(self) -> bool:
        return all(it.ok for it in self.items)


def check_grouplike_projection(qg: QGData, p: list) -> GrouplikeProjectionReport:
    """p nonzero, p = p* = p^2, and D(p)(1(x)p) = p(x)p, all exact."""
    alg = qg.algebra
    if alg.star is None:
        raise StructureError("grouplike projection check requires a star structure")
    items = [CheckItem("nonzero", not vec_is_zero(p))]
    items.append(CheckItem("idempotent", alg.multiply(p, p) == p))
    items.append(CheckItem("self-adjoint", alg.apply_star(p) == p))
    lhs = qg.tensor_sq.multiply(qg.delta(p), tensor_vec(alg.unit, p))
    items.append(CheckItem("coproduct-condition", lhs == tensor_vec(p, p),
                           "D(p)(1(x)p) = p(x)p"))
    return GrouplikeProjectionReport(items)


# ---------------------------------------------------------------------------
# sub-quantum-groups
# ---------------------------------------------------------------------------

SUB_MEMBERSHIP_FORMULAS = ("D(a)(1(x)b)", "D(a)(b(x)1)",
                           "(a(x)1)D(b)", "(1(x)a)D(b)")
SUB_COMPAT_FORMULAS = ("D0(a)(1(x)b) = D(a)(1(x)b)",
                       "D0(a)(b(x)1) = D(a)(b(x)1)",
                       "(1(x)b)D0(a) = (1(x)b)D(a)",
                       "(b(x)1)D0(a) = (b(x)1)D(a)")


@dataclass
class SubMHAResult:
    rows: list                      # spanning vectors in big coordinates
    labels: list
    memberships: list               # CheckItems for the four product families
    compat: list                    # CheckItems for the compression equations
    sub_unit: list | None           # in sub coordinates
    induced: QGData | None
    induced_tmaps: TMapReport | None
    notes: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return (all(it.ok for it in self.memberships)
                and all(it.ok for it in self.compat)
                and self.induced_tmaps is not None
                and self.induced_tmaps.all_bijective)


class _SubSpace:
    """Membership solver for span(rows) and its tensor square."""

    def __init__(self, rows, n):
        self.rows = rows
        self.n = n
        self.n0 = len(rows)
        self._cols = [[rows[a][t] for a in range(self.n0)] for t in range(n)]
        tens = [tensor_vec(ra, rb) for ra in rows for rb in rows]
        self._tcols = [[tens[a][t] for a in range(len(tens))]
                       for t in range(n * n)]

    def coords(self, v):
        sol = solve_affine(self._cols, v)
        return None if sol.is_empty else sol.particular

    def tensor_coords(self, t):
        sol = solve_affine(self._tcols, t)
        return None if sol.is_empty else sol.particular


def check_sub_mha(qg: QGData, sub_rows: list, sub_labels=None) -> SubMHAResult:
    """Verify span(sub_rows) is a compatible sub-quantum-group.

    Requires exact closure under multiplication (and star), membership of
    the four product families in the tensor square of the span, and, when
    the span has its own unit, re-derives the full induced structure
    (coproduct compression, T-maps, counit, antipode).
    """
    alg = qg.algebra
    n = alg.dim
    n0 = len(sub_rows)
    if sub_labels is None:
        sub_labels = ["v%d" % a for a in range(n0)]
    if _rank([list(r) for r in sub_rows]) != n0:
        raise StructureError("sub basis vectors are linearly dependent")
    sub = _SubSpace(sub_rows, n)

    mul0 = {}
    for a in range(n0):
        for b in range(n0):
            prod = alg.multiply(sub_rows[a], sub_rows[b])
            coords = sub.coords(prod)
            if coords is None:
                raise StructureError(
                    "not a subalgebra: product of %s and %s leaves the span"
                    % (sub_labels[a], sub_labels[b]))
            ent = {k: c for k, c in enumerate(coords) if not c.is_zero}
            if ent:
                mul0[(a, b)] = ent

    star0 = None
    if alg.star is not None:
        images = []
        for a in range(n0):
            coords = sub.coords(alg.apply_star(sub_rows[a]))
            if coords is None:
                raise StructureError(
                    "span is not star-closed at %s" % sub_labels[a])
            images.append(coords)
        star0 = LinMap.from_images(images)
        star0.conjugate_linear = True

    memberships = []
    witness = None
    for which, formula in enumerate(SUB_MEMBERSHIP_FORMULAS):
        ok = True
        for a in range(n0):
            da = qg.delta(sub_rows[a])
            for b in range(n0):
                db = qg.delta(sub_rows[b])
                if which == 0:
                    t = qg.tensor_sq.multiply(da, tensor_vec(alg.unit, sub_rows[b]))
                elif which == 1:
                    t = qg.tensor_sq.multiply(da, tensor_vec(sub_rows[b], alg.unit))
                elif which == 2:
                    t = qg.tensor_sq.multiply(tensor_vec(sub_rows[a], alg.unit), db)
                else:
                    t = qg.tensor_sq.multiply(tensor_vec(alg.unit, sub_rows[a]), db)
                if sub.tensor_coords(t) is None:
                    ok = False
                    witness = (sub_labels[a], sub_labels[b])
                    break
            if not ok:
                break
        memberships.append(CheckItem(
            "membership " + formula, ok,
            "all products lie in the tensor square of the span" if ok
            else "fails at (%s, %s)" % witness))
    if not all(it.ok for it in memberships):
        bad = next(it for it in memberships if not it.ok)
        raise StructureError("sub-compatibility failure: %s, %s"
                             % (bad.name, bad.detail))

    result = SubMHAResult(sub_rows, sub_labels, memberships, [],
                          None, None, None)

    try:
        alg0 = build_algebra(sub_labels, mul0, unit=None, star=star0,
                             name=(alg.name or "A") + "_sub")
    except StructureError as exc:
        result.notes.append("span has no unit of its own: %s" % exc)
        return result
    result.sub_unit = alg0.unit

    u0_big = _lift(sub_rows, alg0.unit, n)
    uu = tensor_vec(u0_big, u0_big)
    d0_images = []
    compat = []
    compat_fail = None
    for a in range(n0):
        da = qg.delta(sub_rows[a])
        comp = qg.tensor_sq.multiply(uu, qg.tensor_sq.multiply(da, uu))
        coords = sub.tensor_coords(comp)
        if coords is None:
            raise StructureError(
                "compressed coproduct of %s leaves the tensor square of the span"
                % sub_labels[a])
        d0_images.append((coords, comp))
    for which, formula in enumerate(SUB_COMPAT_FORMULAS):
        ok = True
        for a in range(n0):
            comp = d0_images[a][1]
            da = qg.delta(sub_rows[a])
            for b in range(n0):
                one_b = tensor_vec(alg.unit, sub_rows[b])
                b_one = tensor_vec(sub_rows[b], alg.unit)
                if which == 0:
                    lhs = qg.tensor_sq.multiply(comp, one_b)
                    rhs = qg.tensor_sq.multiply(da, one_b)
                elif which == 1:
                    lhs = qg.tensor_sq.multiply(comp, b_one)
                    rhs = qg.tensor_sq.multiply(da, b_one)
                elif which == 2:
                    lhs = qg.tensor_sq.multiply(one_b, comp)
                    rhs = qg.tensor_sq.multiply(one_b, da)
                else:
                    lhs = qg.tensor_sq.multiply(b_one, comp)
                    rhs = qg.tensor_sq.multiply(b_one, da)
                if lhs != rhs:
                    ok = False
                    compat_fail = (sub_labels[a], sub_labels[b])
                    break
            if not ok:
                break
        compat.append(CheckItem(
            "compression " + formula, ok,
            "holds on all pairs" if ok else "fails at (%s, %s)" % compat_fail))
    result.compat = compat
    if not all(it.ok for it in compat):
        bad = next(it for it in compat if not it.ok)
        raise StructureError("sub-compatibility failure: %s, %s"
                             % (bad.name, bad.detail))

    d0 = LinMap.from_images([coords for coords, _comp in d0_images])
    induced = attach_coproduct(alg0, d0)
    tmr = check_tmaps(induced)
    result.induced = induced
    result.induced_tmaps = tmr
    if tmr.all_bijective:
        derive_counit_antipode(induced)
    else:
        result.notes.append("induced structure fails T-map bijectivity")
    return result


def _lift(rows, coords, n):
    out = zero_vector(n)
    for c, row in zip(coords, rows):
        if not c.is_zero:
            out = [x + c * y for x, y in zip(out, row)]
    return out
