"""The dual quantum group, biduality, and sub-object imbeddings.

The dual carries the basis w_i = phi(. e_i).  Its product is dual to the
coproduct, its coproduct evaluates against the flipped product,
D(w)(x (x) y) = w(yx), and its star is w*(x) = conj(w(S(x)*)).  Everything
constructed here is re-verified from scratch: the dual runs the whole
structural suite, the canonical map into the double dual is checked to be an
isomorphism of quantum groups, and sub-object imbeddings are checked
equation by equation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CheckFailure, NotFaithful, StructureError
from .exactla import eigensplit, invert, matmul, matvec, rank, solve_affine
from .finalg import (FinAlgebra, LinMap, apply_functional, basis_vector,
                     build_algebra, tensor_algebra, vec_is_zero, zero_vector)
from .haar_modular import ModularData, modular_element, solve_left_haar
from .mhopf import (CheckItem, QGData, attach_coproduct, check_star_compat,
                    check_tmaps, derive_counit_antipode, tensor_vec)
from .scalars import SC_ONE, SC_ZERO


@dataclass
class DualBuild:
    qg: QGData
    b_matrix: list        # [j][i] = phi(e_j e_i), the value of w_i at e_j
    b_inv: list
    tmaps: object
    star_compat: object | None
    unit_is_counit: bool  # the dual unit is the counit functional


def functional_values(build: DualBuild, coords: list) -> list:
    """Values on the original basis of the functional with dual coordinates."""
    return matvec(build.b_matrix, coords)


def functional_coords(build: DualBuild, values: list) -> list:
    return matvec(build.b_inv, values)


def build_dual(qg: QGData, phi: list, name: str = "") -> DualBuild:
    """Construct the dual on the basis w_i = phi(. e_i) and re-run the whole
    structural suite on it.  phi must be faithful; it need not be normalized."""
    alg = qg.algebra
    n = alg.dim
    b_mat = [[apply_functional(phi, alg.multiply(alg.basis(j), alg.basis(i)))
              for i in range(n)] for j in range(n)]
    b_inv = invert(b_mat)
    if b_inv is None:
        raise NotFaithful(
            "functional is not faithful; the dual basis does not span")
    labels = ["w_" + lab for lab in alg.labels]

    deltas = [qg.delta(alg.basis(k)) for k in range(n)]
    mul = {}
    for i in range(n):
        for j in range(n):
            values = []
            for k in range(n):
                dk = deltas[k]
                acc = SC_ZERO
                for idx in range(n * n):
                    c = dk[idx]
                    if c.is_zero:
                        continue
                    a, b = divmod(idx, n)
                    acc = acc + c * b_mat[a][i] * b_mat[b][j]
                values.append(acc)
            coords = matvec(b_inv, values)
            entry = {k: c for k, c in enumerate(coords) if not c.is_zero}
            if entry:
                mul[(i, j)] = entry

    star_lin = None
    if alg.star is not None:
        cols = []
        for i in range(n):
            values = []
            for j in range(n):
                u = alg.apply_star(qg.antipode.apply(alg.basis(j)))
                values.append(
                    apply_functional(phi, alg.multiply(u, alg.basis(i)))
                    .conjugate())
            cols.append(matvec(b_inv, values))
        star_lin = LinMap(LinMap.from_images(cols).matrix,
                          conjugate_linear=True)

    dual_alg = build_algebra(labels, mul, unit=None, star=star_lin,
                             name=name or ("dual of " + alg.name))

    counit_coords = matvec(b_inv, list(qg.counit))
    unit_is_counit = dual_alg.unit == counit_coords

    cop = [[SC_ZERO] * n for _ in range(n * n)]
    for k in range(n):
        values = []
        for a in range(n):
            for b in range(n):
                prod = alg.multiply(alg.multiply(alg.basis(b), alg.basis(a)),
                                    alg.basis(k))
                values.append(apply_functional(phi, prod))
        for i in range(n):
            for j in range(n):
                acc = SC_ZERO
                for a in range(n):
                    bia = b_inv[i][a]
                    if bia.is_zero:
                        continue
                    for b in range(n):
                        v = values[a * n + b]
                        if not v.is_zero:
                            acc = acc + bia * b_inv[j][b] * v
                if not acc.is_zero:
                    cop[i * n + j][k] = acc

    dual_qg = attach_coproduct(dual_alg, LinMap(cop))
    tmaps = check_tmaps(dual_qg)
    if not tmaps.all_bijective:
        raise CheckFailure(
            "dual-tmaps",
            "translation maps of the dual are not all bijective: "
            + "; ".join("%s has rank %d of %d"
                        % (v.formula, v.rank, v.size)
                        for v in tmaps.failures()))
    derive_counit_antipode(dual_qg)
    star_compat = None
    if dual_alg.star is not None:
        star_compat = check_star_compat(dual_qg)
        if not star_compat.all_ok:
            raise CheckFailure(
                "dual-star",
                "; ".join(it.name + ": " + it.detail
                          for it in star_compat.items if not it.ok))
    return DualBuild(dual_qg, b_mat, b_inv, tmaps, star_compat,
                     unit_is_counit)


# ---------------------------------------------------------------------------
# morphism verification
# ---------------------------------------------------------------------------

@dataclass
class IsoReport:
    items: list

    @property
    def all_ok(self) -> bool:
        return all(it.ok for it in self.items)


def _tensor_apply(m1: LinMap, m2: LinMap, vec: list) -> list:
    n2 = m2.n_in
    cols1 = [m1.apply(basis_vector(m1.n_in, a)) for a in range(m1.n_in)]
    cols2 = [m2.apply(basis_vector(n2, b)) for b in range(n2)]
    out = [SC_ZERO] * (m1.n_out * m2.n_out)
    for idx, c in enumerate(vec):
        if c.is_zero:
            continue
        a, b = divmod(idx, n2)
        t = tensor_vec(cols1[a], cols2[b])
        out = [x + c * y for x, y in zip(out, t)]
    return out


def verify_qg_morphism(src: QGData, dst: QGData, lin: LinMap,
                       require_bijective: bool = True) -> IsoReport:
    """Check that lin respects product, unit, coproduct, counit, antipode
    and star (when both sides have one), and that it is bijective."""
    a, b = src.algebra, dst.algebra
    n = a.dim
    items = []

    bad = [(a.labels[i], a.labels[j])
           for i in range(n) for j in range(n)
           if lin.apply(a.multiply(a.basis(i), a.basis(j)))
           != b.multiply(lin.apply(a.basis(i)), lin.apply(a.basis(j)))]
    items.append(CheckItem("morphism-multiplicative", not bad,
                           "f(xy) = f(x)f(y) on all basis pairs" if not bad
                           else "fails at " + str(bad[:3])))
    items.append(CheckItem("morphism-unit", lin.apply(a.unit) == b.unit,
                           "f(1) = 1"))
    bad = [a.labels[k] for k in range(n)
           if _tensor_apply(lin, lin, src.delta(a.basis(k)))
           != dst.delta(lin.apply(a.basis(k)))]
    items.append(CheckItem("morphism-coproduct", not bad,
                           "(f (x) f) D = D f" if not bad
                           else "fails at " + ", ".join(bad)))
    bad = [a.labels[k] for k in range(n)
           if apply_functional(dst.counit, lin.apply(a.basis(k)))
           != src.counit[k]]
    items.append(CheckItem("morphism-counit", not bad,
                           "counit f = counit" if not bad
                           else "fails at " + ", ".join(bad)))
    bad = [a.labels[k] for k in range(n)
           if lin.apply(src.antipode.apply(a.basis(k)))
           != dst.antipode.apply(lin.apply(a.basis(k)))]
    items.append(CheckItem("morphism-antipode", not bad,
                           "f S = S f" if not bad
                           else "fails at " + ", ".join(bad)))
    if a.star is not None and b.star is not None:
        bad = [a.labels[k] for k in range(n)
               if lin.apply(a.apply_star(a.basis(k)))
               != b.apply_star(lin.apply(a.basis(k)))]
        items.append(CheckItem("morphism-star", not bad,
                               "f(x*) = f(x)*" if not bad
                               else "fails at " + ", ".join(bad)))
    if require_bijective:
        items.append(CheckItem("morphism-bijective", lin.is_bijective(),
                               "dimension %d onto dimension %d"
                               % (lin.n_in, lin.n_out)))
    return IsoReport(items)


# ---------------------------------------------------------------------------
# biduality
# ---------------------------------------------------------------------------

@dataclass
class BidualityResult:
    dual_haar: object            # HaarSolution on the dual
    bidual: DualBuild
    gamma: LinMap
    report: IsoReport


def biduality(qg: QGData, dual_build: DualBuild) -> BidualityResult:
    """The canonical map a -> (w -> w(S^(-1) a)) into the double dual,
    verified to be an isomorphism of quantum groups."""
    haar2 = solve_left_haar(dual_build.qg)
    bidual = build_dual(dual_build.qg, haar2.phi,
                        name="double dual of " + qg.algebra.name)
    alg = qg.algebra
    n = alg.dim
    s_inv = qg.antipode.inverse()
    cols = []
    for k in range(n):
        u = s_inv.apply(alg.basis(k))
        values = [apply_functional(u, [dual_build.b_matrix[t][i]
                                       for t in range(n)])
                  for i in range(n)]
        cols.append(matvec(bidual.b_inv, values))
    gamma = LinMap.from_images(cols)
    report = verify_qg_morphism(qg, bidual.qg, gamma)
    if not report.all_ok:
        raise CheckFailure(
            "biduality",
            "; ".join(it.name + ": " + it.detail
                      for it in report.items if not it.ok))
    return BidualityResult(haar2, bidual, gamma, report)


# ---------------------------------------------------------------------------
# the dual modular element
# ---------------------------------------------------------------------------

def dual_modular_check(qg: QGData, md: ModularData,
                       dual_build: DualBuild) -> list:
    """The modular element of the dual must be the functional counit after
    kappa, in coordinates and against every evaluation pair."""
    dual_qg = dual_build.qg
    haar2 = solve_left_haar(dual_qg)
    delta_hat = modular_element(dual_qg, haar2.phi)
    alg = qg.algebra
    n = alg.dim
    kappa_values = [apply_functional(qg.counit,
                                     md.kappa.apply(alg.basis(j)))
                    for j in range(n)]
    expected = matvec(dual_build.b_inv, kappa_values)
    items = [CheckItem(
        "dual-modular-element", delta_hat == expected,
        "modular element of the dual equals counit after kappa")]
    dalg = dual_qg.algebra
    bad = []
    for i in range(n):
        prod = dalg.multiply(basis_vector(n, i), delta_hat)
        values = matvec(dual_build.b_matrix, prod)
        for j in range(n):
            rhs = apply_functional(
                md.kappa.apply(alg.basis(j)),
                [dual_build.b_matrix[t][i] for t in range(n)])
            if values[j] != rhs:
                bad.append((dalg.labels[i], alg.labels[j]))
    items.append(CheckItem(
        "dual-modular-pairing", not bad,
        "<w delta_hat, x> = <w, kappa(x)> on all pairs" if not bad
        else "fails at " + str(bad[:3])))
    return items


# ---------------------------------------------------------------------------
# recovering a group from a pointwise-idempotent basis
# ---------------------------------------------------------------------------

def find_idempotent_basis(qg: QGData, spec_points) -> list:
    """The basis of primitive idempotents of a commutative function-like
    algebra, found as the joint eigenbasis of all left multiplications."""
    alg = qg.algebra
    n = alg.dim
    blocks = [[basis_vector(n, i) for i in range(n)]]
    for g in range(n):
        lmat = alg.left_mul_matrix(alg.basis(g))
        nxt = []
        for vecs in blocks:
            if len(vecs) == 1:
                nxt.append(vecs)
                continue
            d = len(vecs)
            cols = [[vecs[c][t] for c in range(d)] for t in range(n)]
            sub_cols = []
            for v in vecs:
                sol = solve_affine(cols, matvec(lmat, v))
                if sol.is_empty:
                    raise StructureError(
                        "internal: span is not stable under multiplication")
                sub_cols.append(sol.particular)
            sub = [[sub_cols[c][r] for c in range(d)] for r in range(d)]
            for es in eigensplit(sub, spec_points):
                lifted = []
                for coef in es.basis:
                    w = zero_vector(n)
                    for c, v in zip(coef, vecs):
                        if not c.is_zero:
                            w = [x + c * y for x, y in zip(w, v)]
                    lifted.append(w)
                nxt.append(lifted)
        blocks = nxt
    if any(len(vecs) != 1 for vecs in blocks):
        raise CheckFailure(
            "idempotent-basis",
            "algebra has no basis of joint eigenvectors; it is not a "
            "function algebra over the scalar field")
    idems = []
    for (v,) in blocks:
        sq = alg.multiply(v, v)
        t = next((i for i in range(n) if not v[i].is_zero), None)
        c = sq[t] * v[t].inverse()
        if c.is_zero or sq != [c * x for x in v]:
            raise CheckFailure(
                "idempotent-basis",
                "joint eigenvector does not scale to an idempotent")
        cinv = c.inverse()
        idems.append([cinv * x for x in v])
    for i, p in enumerate(idems):
        for j, q in enumerate(idems):
            want = p if i == j else zero_vector(n)
            if alg.multiply(p, q) != want:
                raise CheckFailure("idempotent-basis",
                                   "products are not pointwise")
    total = zero_vector(n)
    for p in idems:
        total = [x + y for x, y in zip(total, p)]
    if total != alg.unit:
        raise CheckFailure("idempotent-basis",
                           "idempotents do not sum to the unit")
    return idems


def group_table_from_coproduct(qg: QGData, idems: list):
    """Multiplication table of the underlying group, read off the coproduct
    support in the idempotent basis.  Returns (table, identity index)."""
    alg = qg.algebra
    n = alg.dim
    p_cols = [[idems[c][t] for c in range(n)] for t in range(n)]
    p_inv = invert(p_cols)
    if p_inv is None:
        raise CheckFailure("group-recovery", "idempotents do not span")
    table = {}
    for g in range(n):
        d = qg.delta(idems[g])
        coords = [SC_ZERO] * (n * n)
        for i in range(n):
            for j in range(n):
                acc = SC_ZERO
                for a in range(n):
                    pia = p_inv[i][a]
                    if pia.is_zero:
                        continue
                    for b in range(n):
                        v = d[a * n + b]
                        if not v.is_zero:
                            acc = acc + pia * p_inv[j][b] * v
                coords[i * n + j] = acc
        for idx, c in enumerate(coords):
            if c.is_zero:
                continue
            if c != SC_ONE:
                raise CheckFailure(
                    "group-recovery",
                    "coproduct is not group-like on the idempotent basis")
            h, k = divmod(idx, n)
            if (h, k) in table:
                raise CheckFailure("group-recovery",
                                   "coproduct support is not a graph")
            table[(h, k)] = g
    if len(table) != n * n:
        raise CheckFailure("group-recovery",
                           "coproduct support misses some pairs")
    identity = next((e for e in range(n)
                     if all(table[(e, h)] == h and table[(h, e)] == h
                            for h in range(n))), None)
    if identity is None:
        raise CheckFailure("group-recovery", "no identity element")
    return table, identity


def _element_orders(table, identity, n):
    orders = []
    for h in range(n):
        k, acc = 1, h
        while acc != identity:
            acc = table[(acc, h)]
            k += 1
            if k > n:
                raise CheckFailure("group-recovery", "element has no order")
        orders.append(k)
    return orders


@dataclass
class GroupIsoResult:
    bijection: list              # index map on idempotent labels
    lin: LinMap
    report: IsoReport


def find_group_iso(src: QGData, dst: QGData, spec_points) -> GroupIsoResult:
    """Search for an isomorphism of quantum groups between two function-like
    algebras by matching their recovered group laws."""
    idems_s = find_idempotent_basis(src, spec_points)
    idems_d = find_idempotent_basis(dst, spec_points)
    n = len(idems_s)
    if len(idems_d) != n:
        raise CheckFailure("group-iso", "dimensions differ")
    table_s, id_s = group_table_from_coproduct(src, idems_s)
    table_d, id_d = group_table_from_coproduct(dst, idems_d)
    ord_s = _element_orders(table_s, id_s, n)
    ord_d = _element_orders(table_d, id_d, n)
    classes = {}
    for h in range(n):
        classes.setdefault(ord_s[h], ([], []))[0].append(h)
    for h in range(n):
        if ord_d[h] not in classes:
            raise CheckFailure("group-iso", "order profiles differ")
        classes[ord_d[h]][1].append(h)
    if any(len(a) != len(b) for a, b in classes.values()):
        raise CheckFailure("group-iso", "order profiles differ")

    keys = sorted(classes)
    pools = [itertools.permutations(classes[k][1]) for k in keys]
    dst_cols = [[idems_d[c][t] for c in range(n)] for t in range(n)]
    src_cols = [[idems_s[c][t] for c in range(n)] for t in range(n)]
    src_inv = invert(src_cols)
    for choice in itertools.product(*pools):
        beta = [None] * n
        for k, perm in zip(keys, choice):
            for h, img in zip(classes[k][0], perm):
                beta[h] = img
        if any(beta[table_s[(h, k)]] != table_d[(beta[h], beta[k])]
               for h in range(n) for k in range(n)):
            continue
        perm_rows = [[SC_ZERO] * n for _ in range(n)]
        for h in range(n):
            perm_rows[beta[h]][h] = SC_ONE
        lin = LinMap(matmul(dst_cols, matmul(perm_rows, src_inv)))
        report = verify_qg_morphism(src, dst, lin)
        if report.all_ok:
            return GroupIsoResult(beta, lin, report)
    raise CheckFailure("group-iso", "no isomorphism of quantum groups found")


# ---------------------------------------------------------------------------
# imbedding the dual of a sub-object
# ---------------------------------------------------------------------------

@dataclass
class ImbeddingReport:
    j_map: LinMap
    items: list

    @property
    def all_ok(self) -> bool:
        return all(it.ok for it in self.items)


def dual_imbedding(qg: QGData, phi: list, sub, dual_build: DualBuild,
                   spec_points) -> ImbeddingReport:
    """Imbed the dual of a sub-object into the dual.

    The functional on the sub-object is the exact restriction of phi (no
    rescaling; a rescaled restriction would break multiplicativity of the
    imbedding).  j sends the a-th dual basis vector of the sub-object to
    phi(. v_a).  Checked: injectivity, multiplicativity, star, both
    coproduct compatibilities and the counit identity.
    """
    qg0 = sub.induced
    if qg0 is None or qg0.counit is None:
        raise CheckFailure("dual-imbedding",
                           "sub-object did not induce a quantum group")
    rows = sub.rows
    d = len(rows)
    alg = qg.algebra
    n = alg.dim
    items = []

    phi0 = [apply_functional(phi, v) for v in rows]
    nonzero = any(not x.is_zero for x in phi0)
    items.append(CheckItem("restriction-nonzero", nonzero,
                           "phi restricted to the sub-object is nonzero"))
    if not nonzero:
        return ImbeddingReport(LinMap.identity(0), items)

    haar0 = solve_left_haar(qg0)
    pivot = next(i for i in range(d) if not haar0.phi[i].is_zero)
    scale = phi0[pivot] * haar0.phi[pivot].inverse()
    invariant = phi0 == [scale * x for x in haar0.phi]
    items.append(CheckItem(
        "restriction-invariant", invariant,
        "the restriction is a left invariant functional of the sub-object"))
    if not invariant:
        return ImbeddingReport(LinMap.identity(0), items)

    dual0 = build_dual(qg0, phi0, name="dual of " + qg0.algebra.name)

    j_cols = []
    for a in range(d):
        values = [apply_functional(phi, alg.multiply(alg.basis(t), rows[a]))
                  for t in range(n)]
        j_cols.append(matvec(dual_build.b_inv, values))
    j_map = LinMap.from_images(j_cols)
    items.append(CheckItem("imbedding-injective",
                           rank(j_map.matrix) == d,
                           "j has full rank %d" % d))

    d_alg = dual_build.qg.algebra
    d0_alg = dual0.qg.algebra
    bad = [(a, b) for a in range(d) for b in range(d)
           if j_map.apply(d0_alg.multiply(d0_alg.basis(a), d0_alg.basis(b)))
           != d_alg.multiply(j_cols[a], j_cols[b])]
    items.append(CheckItem("imbedding-multiplicative", not bad,
                           "j(w w') = j(w) j(w')" if not bad
                           else "fails at " + str(bad[:3])))

    if d0_alg.star is not None and d_alg.star is not None:
        bad = [a for a in range(d)
               if j_map.apply(d0_alg.apply_star(d0_alg.basis(a)))
               != d_alg.apply_star(j_cols[a])]
        items.append(CheckItem("imbedding-star", not bad,
                               "j(w*) = j(w)*" if not bad
                               else "fails at " + str(bad)))

    t0 = tensor_algebra(d0_alg, d0_alg)
    t1 = tensor_algebra(d_alg, d_alg)
    unit0 = d0_alg.unit
    unit1 = d_alg.unit
    bad1, bad2 = [], []
    for a in range(d):
        cop0 = dual0.qg.delta(d0_alg.basis(a))
        cop1 = dual_build.qg.delta(j_cols[a])
        for b in range(d):
            lhs = _tensor_apply(j_map, j_map,
                                t0.multiply(cop0,
                                            tensor_vec(unit0,
                                                       d0_alg.basis(b))))
            rhs = t1.multiply(cop1, tensor_vec(unit1, j_cols[b]))
            if lhs != rhs:
                bad1.append((a, b))
            lhs = _tensor_apply(j_map, j_map,
                                t0.multiply(tensor_vec(d0_alg.basis(b),
                                                       unit0), cop0))
            rhs = t1.multiply(tensor_vec(j_cols[b], unit1), cop1)
            if lhs != rhs:
                bad2.append((a, b))
    items.append(CheckItem(
        "imbedding-coproduct-right", not bad1,
        "(j (x) j)(D0(w)(1 (x) w')) = D(j w)(1 (x) j w')" if not bad1
        else "fails at " + str(bad1[:3])))
    items.append(CheckItem(
        "imbedding-coproduct-left", not bad2,
        "(j (x) j)((w' (x) 1)D0(w)) = (j w' (x) 1)D(j w)" if not bad2
        else "fails at " + str(bad2[:3])))

    bad = [a for a in range(d)
           if dual0.qg.counit[a]
           != apply_functional(dual_build.qg.counit, j_cols[a])]
    items.append(CheckItem("imbedding-counit", not bad,
                           "counit0 = counit after j" if not bad
                           else "fails at " + str(bad)))
    return ImbeddingReport(j_map, items)
