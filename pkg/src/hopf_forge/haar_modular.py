"""Invariant functionals and modular structure.

Solves the left Haar functional from its invariance law (the solution space
must be one-dimensional), derives the right one as phi after the antipode,
and computes the modular automorphisms, the modular element and its positive
square root, the scaling constant, and the simultaneous eigentable of the
five structure maps.  Every derived object is re-verified against its
defining equations on all basis pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CheckFailure, NotFaithful, StructureError
from .exactla import (eigensplit, invert, kernel_basis, matmul, matvec, rank,
                      rref, solve_affine)
from .finalg import (LinMap, apply_functional, basis_vector, vec_is_zero,
                     zero_vector)
from .mhopf import CheckItem, QGData, tensor_vec
from .scalars import GaussRat, SC_ONE, SC_ZERO, Scalar


@dataclass
class HaarSolution:
    phi: list
    dimension: int          # of the full solution space (must be 1)


@dataclass
class ModularData:
    phi: list
    psi: list
    sigma: LinMap
    sigma_prime: LinMap
    delta: list
    delta_half: list | None
    mu: Scalar
    kappa: LinMap
    rho: LinMap
    haar_dimension: int = 1
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Haar functionals
# ---------------------------------------------------------------------------

def solve_left_haar(qg: QGData) -> HaarSolution:
    """Solve (i(x)phi)(D(a)(b(x)1)) = phi(a) b over all basis pairs.

    The homogeneous solution space must have dimension exactly 1; the
    solution is normalized to phi(1) = 1 when possible, otherwise its first
    nonzero value is set to 1.
    """
    alg = qg.algebra
    n = alg.dim
    rows = []
    for k in range(n):
        dk = qg.delta(alg.basis(k))
        for b in range(n):
            # sum_{i,j} dk[i,j] phi_j (e_i e_b) = phi_k e_b, coordinatewise
            coeff = [[SC_ZERO] * n for _ in range(n)]  # [t][j]
            for idx in range(n * n):
                c = dk[idx]
                if c.is_zero:
                    continue
                i, j = divmod(idx, n)
                ent = alg.mul.get((i, b))
                if not ent:
                    continue
                for t, m in ent.items():
                    coeff[t][j] = coeff[t][j] + c * m
            for t in range(n):
                row = list(coeff[t])
                if t == b:
                    row[k] = row[k] - SC_ONE
                rows.append(row)
    kern = kernel_basis(rows)
    dim = len(kern)
    if dim == 0:
        raise StructureError("left invariance admits no nonzero functional")
    if dim > 1:
        raise StructureError(
            "left Haar functional is not unique (solution space dimension %d)"
            % dim)
    phi = kern[0]
    at_unit = apply_functional(phi, alg.unit)
    if not at_unit.is_zero:
        inv = at_unit.inverse()
    else:
        lead = next(x for x in phi if not x.is_zero)
        inv = lead.inverse()
    phi = [inv * x for x in phi]
    return HaarSolution(phi, dim)


def right_haar(qg: QGData, phi: list) -> list:
    """psi = phi after S, verified right invariant on all basis pairs."""
    alg = qg.algebra
    n = alg.dim
    psi = [apply_functional(phi, qg.antipode.apply(alg.basis(i)))
           for i in range(n)]
    for k in range(n):
        dk = qg.delta(alg.basis(k))
        for b in range(n):
            lhs = zero_vector(n)
            for idx in range(n * n):
                c = dk[idx]
                if c.is_zero:
                    continue
                i, j = divmod(idx, n)
                term = alg.multiply(alg.basis(j), alg.basis(b))
                w = c * psi[i]
                lhs = [x + w * y for x, y in zip(lhs, term)]
            rhs = [psi[k] * x for x in alg.basis(b)]
            if lhs != rhs:
                raise StructureError(
                    "phi after S is not right invariant at (%s, %s)"
                    % (alg.labels[k], alg.labels[b]))
    return psi


# ---------------------------------------------------------------------------
# modular automorphism, element, scaling constant
# ---------------------------------------------------------------------------

def modular_automorphism(qg: QGData, omega: list) -> LinMap:
    """The unique automorphism with omega(ab) = omega(b sigma(a))."""
    alg = qg.algebra
    n = alg.dim
    b_mat = [[apply_functional(omega, alg.multiply(alg.basis(i), alg.basis(j)))
              for j in range(n)] for i in range(n)]
    b_inv = invert(b_mat)
    if b_inv is None:
        raise NotFaithful(
            "functional is not faithful: its multiplication form is singular")
    b_t = [[b_mat[j][i] for j in range(n)] for i in range(n)]
    sigma = LinMap(matmul(b_inv, b_t))
    for i in range(n):
        for j in range(n):
            lhs = apply_functional(omega, alg.multiply(alg.basis(i), alg.basis(j)))
            rhs = apply_functional(
                omega, alg.multiply(alg.basis(j), sigma.apply(alg.basis(i))))
            if lhs != rhs:
                raise StructureError(
                    "modular relation fails at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    if sigma.apply(alg.unit) != alg.unit:
        raise StructureError("modular automorphism does not fix the unit")
    for i in range(n):
        for j in range(n):
            lhs = sigma.apply(alg.multiply(alg.basis(i), alg.basis(j)))
            rhs = alg.multiply(sigma.apply(alg.basis(i)),
                               sigma.apply(alg.basis(j)))
            if lhs != rhs:
                raise StructureError(
                    "modular map is not multiplicative at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    if not sigma.is_bijective():
        raise StructureError("modular map is not bijective")
    return sigma


def _left_action_of_delta(qg, phi, a_idx, b_idx):
    """(phi(x)i)(D(e_a)(1(x)e_b)) as a vector."""
    alg = qg.algebra
    n = alg.dim
    dk = qg.delta(alg.basis(a_idx))
    out = zero_vector(n)
    for idx in range(n * n):
        c = dk[idx]
        if c.is_zero:
            continue
        i, j = divmod(idx, n)
        w = c * phi[i]
        if w.is_zero:
            continue
        term = alg.multiply(alg.basis(j), alg.basis(b_idx))
        out = [x + w * y for x, y in zip(out, term)]
    return out


def _right_action_of_delta(qg, phi, a_idx, b_idx):
    """(phi(x)i)((1(x)e_b)D(e_a)) as a vector."""
    alg = qg.algebra
    n = alg.dim
    dk = qg.delta(alg.basis(a_idx))
    out = zero_vector(n)
    for idx in range(n * n):
        c = dk[idx]
        if c.is_zero:
            continue
        i, j = divmod(idx, n)
        w = c * phi[i]
        if w.is_zero:
            continue
        term = alg.multiply(alg.basis(b_idx), alg.basis(j))
        out = [x + w * y for x, y in zip(out, term)]
    return out


def modular_element(qg: QGData, phi: list) -> list:
    """Solve (phi(x)i)(D(a)(1(x)b)) = phi(a) delta b from one pivot element,
    then verify both defining equations on every basis pair."""
    alg = qg.algebra
    n = alg.dim
    a_idx = next((i for i in range(n) if not phi[i].is_zero), None)
    if a_idx is None:
        raise StructureError("cannot locate a basis element with phi nonzero")
    rows = []
    rhs = []
    fa = phi[a_idx]
    for b in range(n):
        lhs = _left_action_of_delta(qg, phi, a_idx, b)
        for t in range(n):
            rows.append([fa * alg.mul.get((r, b), {}).get(t, SC_ZERO)
                         for r in range(n)])
            rhs.append(lhs[t])
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        raise StructureError("modular element system is inconsistent")
    if sol.dimension != 0:
        raise StructureError(
            "modular element is not unique (solution space dimension %d)"
            % sol.dimension)
    delta = sol.particular
    for a in range(n):
        for b in range(n):
            want = [phi[a] * x for x in
                    alg.multiply(delta, alg.basis(b))]
            if _left_action_of_delta(qg, phi, a, b) != want:
                raise StructureError(
                    "left modular-element law fails at (%s, %s)"
                    % (alg.labels[a], alg.labels[b]))
            want = [phi[a] * x for x in
                    alg.multiply(alg.basis(b), delta)]
            if _right_action_of_delta(qg, phi, a, b) != want:
                raise StructureError(
                    "right modular-element law fails at (%s, %s)"
                    % (alg.labels[a], alg.labels[b]))
    if alg.star is not None and alg.apply_star(delta) != delta:
        raise StructureError("modular element is not self-adjoint")
    return delta


def _monomial_parts(sc: Scalar):
    """(r, k) with sc = r * s^k for a monomial scalar, else None."""
    num, den = sc.num, sc.den
    if not num:
        return None
    if any(not c.is_zero for c in num[:-1]):
        return None
    if any(not c.is_zero for c in den[:-1]):
        return None
    r = num[-1] / den[-1]
    return r, (len(num) - 1) - (len(den) - 1)


def _positive_sqrt(value: Scalar):
    """Exact positive square root r^(1/2) s^(k/2) of a monomial, or None."""
    parts = _monomial_parts(value)
    if parts is None:
        return None
    r, k = parts
    if r.b != 0 or r.a <= 0 or k % 2 != 0:
        return None
    ra = math.isqrt(r.a)
    rd = math.isqrt(r.d)
    if ra * ra != r.a or rd * rd != r.d:
        return None
    return Scalar.const(GaussRat(ra, 0, rd)) * Scalar.s_power(k // 2)


def delta_square_root(qg: QGData, delta: list, sigma: LinMap,
                      spec_points) -> list:
    """The positive square root of delta inside the subalgebra it generates.

    Diagonalize left multiplication by delta, keep the eigenvalues that
    actually carry a component of delta, and evaluate the interpolation
    polynomial sending each eigenvalue to its positive square root on delta
    itself.  Its square is exactly delta because the defect polynomial is a
    multiple of delta's minimal polynomial.
    """
    alg = qg.algebra
    n = alg.dim
    lmat = alg.left_mul_matrix(delta)
    spaces = eigensplit(lmat, spec_points)
    all_vecs = []
    owners = []
    for es in spaces:
        for v in es.basis:
            all_vecs.append(v)
            owners.append(es.value)
    cols = [[all_vecs[c][t] for c in range(len(all_vecs))] for t in range(n)]
    sol = solve_affine(cols, delta)
    if sol.is_empty:
        raise StructureError("internal: eigenbasis does not span")
    present = []
    for es in spaces:
        comp = zero_vector(n)
        for c, v, owner in zip(sol.particular, all_vecs, owners):
            if owner == es.value and not c.is_zero:
                comp = [x + c * y for x, y in zip(comp, v)]
        if not vec_is_zero(comp):
            present.append(es.value)
    roots = {}
    for lam in present:
        rt = _positive_sqrt(lam)
        if rt is None:
            raise CheckFailure(
                "delta-half",
                "eigenvalue %s of the modular element has no positive "
                "square root in the scalar field" % lam)
        roots[lam] = rt
    # Lagrange interpolation p with p(lam) = sqrt(lam) on present eigenvalues
    coeffs = [SC_ZERO] * len(present)
    for lam in present:
        basis_poly = [SC_ONE]
        denom = SC_ONE
        for other in present:
            if other == lam:
                continue
            # multiply basis_poly by (t - other)
            nxt = [SC_ZERO] * (len(basis_poly) + 1)
            for p_i, c in enumerate(basis_poly):
                nxt[p_i] = nxt[p_i] - c * other
                nxt[p_i + 1] = nxt[p_i + 1] + c
            basis_poly = nxt
            denom = denom * (lam - other)
        w = roots[lam] * denom.inverse()
        for p_i, c in enumerate(basis_poly):
            coeffs[p_i] = coeffs[p_i] + w * c
    power = list(alg.unit)
    half = zero_vector(n)
    for c in coeffs:
        if not c.is_zero:
            half = [x + c * y for x, y in zip(half, power)]
        power = alg.multiply(power, delta)
    if alg.multiply(half, half) != delta:
        raise StructureError("internal: square of the interpolant is not delta")
    if sigma.apply(half) != half:
        raise CheckFailure("delta-half",
                           "modular map does not fix the square root of delta")
    return half


def scaling_constant(qg: QGData, phi: list, assert_one: bool) -> Scalar:
    """mu with phi(S^2(a)) = mu phi(a); checked on every basis element."""
    alg = qg.algebra
    n = alg.dim
    s2 = qg.antipode.compose(qg.antipode)
    pivot = next((i for i in range(n) if not phi[i].is_zero), None)
    if pivot is None:
        raise StructureError("zero functional has no scaling constant")
    mu = apply_functional(phi, s2.apply(alg.basis(pivot))) * phi[pivot].inverse()
    for i in range(n):
        if apply_functional(phi, s2.apply(alg.basis(i))) != mu * phi[i]:
            raise StructureError(
                "no scalar satisfies phi(S^2(a)) = mu phi(a) across the basis")
    if assert_one and mu != SC_ONE:
        raise CheckFailure(
            "scaling-constant",
            "positive case requires mu = 1 but mu = %s" % mu)
    return mu


# ---------------------------------------------------------------------------
# orbits and the nonvanishing window
# ---------------------------------------------------------------------------

@dataclass
class OrbitReport:
    span: list                      # basis vectors of the invariant span
    items: list                     # CheckItems for the nonvanishing window

    @property
    def all_ok(self) -> bool:
        return all(it.ok for it in self.items)


def orbit_analysis(qg: QGData, md: ModularData, a: list,
                   window: int = 4) -> OrbitReport:
    """Span of the kappa-orbit of a (kappa and its inverse), plus the
    nonvanishing check b* (sigma'^n S^(2n))(b) != 0 for even |n| <= window."""
    alg = qg.algebra
    n = alg.dim
    kappa = md.kappa
    kappa_inv = kappa.inverse()
    vecs = [list(a)]
    current_rank = rank(vecs)
    changed = True
    while changed and current_rank < n:
        changed = False
        for m in (kappa, kappa_inv):
            for v in list(vecs):
                img = m.apply(v)
                if rank(vecs + [img]) > current_rank:
                    vecs.append(img)
                    current_rank += 1
                    changed = True
    reduced = [list(r) for r in vecs]
    rref(reduced)
    span = [r for r in reduced if not vec_is_zero(r)]

    items = []
    if alg.star is None:
        items.append(CheckItem("nonvanishing-window", True,
                               "skipped: no star structure"))
        return OrbitReport(span, items)
    s2 = qg.antipode.compose(qg.antipode)
    sp = md.sigma_prime
    sp_inv = sp.inverse()
    s2_inv = s2.inverse()
    failures = []
    for even in range(-window, window + 1, 2):
        m = LinMap.identity(n)
        sp_step = sp if even > 0 else sp_inv
        s2_step = s2 if even > 0 else s2_inv
        for _ in range(abs(even)):
            m = sp_step.compose(m)
        for _ in range(abs(even)):
            m = m.compose(s2_step)
        for b in range(n):
            prod = alg.multiply(alg.apply_star(alg.basis(b)),
                                m.apply(alg.basis(b)))
            if vec_is_zero(prod):
                failures.append("b = %s, n = %d" % (alg.labels[b], even))
    items.append(CheckItem(
        "nonvanishing-window", not failures,
        "b*(sigma'^n S^(2n))(b) != 0 for all basis b, even |n| <= %d" % window
        if not failures else "vanishing at " + "; ".join(failures)))
    return OrbitReport(span, items)


# ---------------------------------------------------------------------------
# simultaneous eigentable
# ---------------------------------------------------------------------------

FIVE_MAP_NAMES = ("sigma", "sigma_prime", "antipode-squared",
                  "left-mult-delta", "right-mult-delta")


@dataclass
class EigenRow:
    vector: list
    values: dict                    # map name -> Scalar


@dataclass
class EigentableReport:
    rows: list
    used_maps: list
    skipped: list                   # (name, reason)
    positivity: list                # CheckItems

    @property
    def all_positive(self) -> bool:
        return all(it.ok for it in self.positivity)


def _commutes(a: LinMap, b: LinMap) -> bool:
    return matmul(a.matrix, b.matrix) == matmul(b.matrix, a.matrix)


def _restrict(mat, block):
    """Matrix of the map on span(block) in the block's own coordinates."""
    nrows = len(block[0])
    d = len(block)
    cols = [[block[c][t] for c in range(d)] for t in range(nrows)]
    out_cols = []
    for v in block:
        img = matvec(mat, v)
        sol = solve_affine(cols, img)
        if sol.is_empty:
            raise StructureError("internal: block is not invariant")
        out_cols.append(sol.particular)
    return [[out_cols[c][r] for c in range(d)] for r in range(d)]


def simultaneous_eigenbasis(qg: QGData, md: ModularData, spec_points,
                            positive_mode: bool) -> EigentableReport:
    """Common eigenbasis of sigma, sigma', S^2 and two-sided multiplication
    by delta.

    In the positive case all five maps must commute and every eigenvalue
    must be self-adjoint and positive at every configured point (fatal
    otherwise).  Without positivity the maps are taken greedily in a fixed
    order, each kept only if it commutes with all maps already used, and
    non-positive eigenvalues become recorded obstructions.
    """
    alg = qg.algebra
    n = alg.dim
    s2 = qg.antipode.compose(qg.antipode)
    five = [
        (FIVE_MAP_NAMES[0], md.sigma),
        (FIVE_MAP_NAMES[1], md.sigma_prime),
        (FIVE_MAP_NAMES[2], s2),
        (FIVE_MAP_NAMES[3], LinMap(alg.left_mul_matrix(md.delta))),
        (FIVE_MAP_NAMES[4], LinMap(alg.right_mul_matrix(md.delta))),
    ]
    used = []
    skipped = []
    for name, m in five:
        clash = next((uname for uname, um in used if not _commutes(m, um)), None)
        if clash is None:
            used.append((name, m))
        else:
            if positive_mode:
                raise CheckFailure(
                    "eigentable",
                    "%s does not commute with %s" % (name, clash))
            skipped.append((name, "does not commute with %s" % clash))

    blocks = [([basis_vector(n, i) for i in range(n)], {})]
    for name, m in used:
        nxt = []
        for vecs, values in blocks:
            sub = _restrict(m.matrix, vecs)
            for es in eigensplit(sub, spec_points):
                lifted = []
                for coef in es.basis:
                    w = zero_vector(n)
                    for c, v in zip(coef, vecs):
                        if not c.is_zero:
                            w = [x + c * y for x, y in zip(w, v)]
                    lifted.append(w)
                tagged = dict(values)
                tagged[name] = es.value
                nxt.append((lifted, tagged))
        blocks = nxt

    rows = []
    for vecs, values in blocks:
        for v in vecs:
            rows.append(EigenRow(v, dict(values)))

    positivity = []
    for name, _m in used:
        bad = []
        for vecs, values in blocks:
            lam = values[name]
            ok = lam.is_self_adjoint()
            if ok:
                for p in spec_points:
                    if lam.substitute(p).sign() <= 0:
                        ok = False
                        break
            if not ok:
                bad.append(str(lam))
        item = CheckItem(
            "positivity " + name, not bad,
            "all eigenvalues positive at every spec point" if not bad
            else "non-positive eigenvalue(s): " + ", ".join(sorted(set(bad))))
        positivity.append(item)
        if positive_mode and bad:
            raise CheckFailure("eigentable", item.detail)
    return EigentableReport(rows, [name for name, _ in used], skipped,
                            positivity)


# ---------------------------------------------------------------------------
# psi positivity and the coproduct commutation rule
# ---------------------------------------------------------------------------

def psi_positivity(qg: QGData, md: ModularData, spec_points):
    """psi(a* b) = phi(a* b delta) on all pairs, then the psi-Gram verdict."""
    from .finalg import gram_psd
    alg = qg.algebra
    n = alg.dim
    for i in range(n):
        star_i = alg.apply_star(alg.basis(i))
        for j in range(n):
            prod = alg.multiply(star_i, alg.basis(j))
            lhs = apply_functional(md.psi, prod)
            rhs = apply_functional(md.phi, alg.multiply(prod, md.delta))
            if lhs != rhs:
                raise CheckFailure(
                    "psi-positivity",
                    "psi(a* b) != phi(a* b delta) at (%s, %s)"
                    % (alg.labels[i], alg.labels[j]))
    return gram_psd(alg, md.psi, spec_points)


def check_sigma_coproduct_rule(qg: QGData, md: ModularData) -> CheckItem:
    """D(sigma(a)) = (S^2 (x) sigma)(D(a)) on every basis element."""
    alg = qg.algebra
    n = alg.dim
    s2 = qg.antipode.compose(qg.antipode)
    bad = []
    for k in range(n):
        lhs = qg.delta(md.sigma.apply(alg.basis(k)))
        d = qg.delta(alg.basis(k))
        rhs = [SC_ZERO] * (n * n)
        for idx in range(n * n):
            c = d[idx]
            if c.is_zero:
                continue
            i, j = divmod(idx, n)
            term = tensor_vec(s2.apply(basis_vector(n, i)),
                              md.sigma.apply(basis_vector(n, j)))
            rhs = [x + c * y for x, y in zip(rhs, term)]
        if lhs != rhs:
            bad.append(alg.labels[k])
    return CheckItem(
        "coproduct-modular-rule", not bad,
        "D(sigma(a)) = (S^2 (x) sigma) D(a) on every basis element"
        if not bad else "fails at " + ", ".join(bad))


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def compute_modular_data(qg: QGData, spec_points,
                         positive_mode: bool) -> ModularData:
    """Full modular pipeline; delta_half failures become notes when not in
    positive mode (they are obstructions, not bugs, without positivity)."""
    haar = solve_left_haar(qg)
    phi = haar.phi
    psi = right_haar(qg, phi)
    sigma = modular_automorphism(qg, phi)
    sigma_prime = modular_automorphism(qg, psi)
    delta = modular_element(qg, phi)
    mu = scaling_constant(qg, phi, assert_one=positive_mode)
    s2 = qg.antipode.compose(qg.antipode)
    kappa = sigma.inverse().compose(s2)
    rho = sigma_prime.compose(s2)
    md = ModularData(phi, psi, sigma, sigma_prime, delta, None, mu,
                     kappa, rho, haar_dimension=haar.dimension)
    try:
        md.delta_half = delta_square_root(qg, delta, sigma, spec_points)
    except CheckFailure as exc:
        if positive_mode:
            raise
        md.notes.append(str(exc))
    return md
