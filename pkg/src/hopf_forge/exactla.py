"""Exact linear algebra over the scalar field and its Gaussian rational core.

Row reduction, affine solving, characteristic polynomials, eigenvalue
splitting with the r*s^k ansatz, and Hermitian positivity certificates.
All routines are exact; matrices are dense lists of lists whose entries are
either GaussRat (constant work) or Scalar (s-dependent work).  The generic
routines only use +, -, *, inverse(), is_zero and conjugate(), which both
element types provide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import (GR_ONE, GR_ZERO, SC_ONE, SC_ZERO, GaussRat, Scalar,
                      ScalarError)


class LinearAlgebraError(ScalarError):
    pass


class NotDiagonalizableOverField(LinearAlgebraError):
    """Confirmed eigenspaces do not span; carries what was found."""

    def __init__(self, message, found=None, residual_dimension=0):
        super().__init__(message)
        self.found = found or []
        self.residual_dimension = residual_dimension


def _one_like(x):
    return GR_ONE if isinstance(x, GaussRat) else SC_ONE


def _zero_like(x):
    return GR_ZERO if isinstance(x, GaussRat) else SC_ZERO


def _from_int_like(x, k: int):
    return GaussRat(k) if isinstance(x, GaussRat) else Scalar.from_int(k)


# ---------------------------------------------------------------------------
# dense matrix helpers
# ---------------------------------------------------------------------------

def mat_copy(rows):
    return [list(r) for r in rows]


def identity_matrix(n: int, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m = len(a), len(b[0])
    inner = len(b)
    zero = _zero_like(a[0][0])
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik.is_zero:
                continue
            bk = b[k]
            for j in range(m):
                if not bk[j].is_zero:
                    oi[j] = oi[j] + aik * bk[j]
    return out


def matvec(a, v):
    zero = _zero_like(a[0][0]) if a and a[0] else _zero_like(v[0])
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if not (x.is_zero or y.is_zero):
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(rows):
    """In-place reduced row echelon form; returns the pivot column list."""
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for k in range(r, nrows):
            if not rows[k][c].is_zero:
                pr = k
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(nrows):
            if k != r and not rows[k][c].is_zero:
                f = rows[k][c]
                rowr = rows[r]
                rows[k] = [x - f * y for x, y in zip(rows[k], rowr)]
        pivots.append(c)
        r += 1
    return pivots


def rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(mat_copy(rows)))


@dataclass
class SolutionSpace:
    """Affine solution set {particular + span(kernel)}; empty when particular is None."""
    particular: list | None
    kernel: list

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> int:
        return -1 if self.particular is None else len(self.kernel)


def solve_affine(a_rows, rhs) -> SolutionSpace:
    """Exact solution space of A x = rhs (kernel always that of A)."""
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    sample = a_rows[0][0] if nrows and ncols else rhs[0]
    zero, one = _zero_like(sample), _one_like(sample)
    aug = [list(a_rows[i]) + [rhs[i]] for i in range(nrows)]
    pivots = rref(aug)
    consistent = ncols not in pivots
    pivot_set = set(pivots) - {ncols}
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    kernel = []
    prows = {c: r for r, c in enumerate(p for p in pivots if p != ncols)}
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for c, r in prows.items():
            v[c] = -aug[r][fc]
        kernel.append(v)
    if not consistent:
        return SolutionSpace(None, kernel)
    part = [zero] * ncols
    for c, r in prows.items():
        part[c] = aug[r][ncols]
    return SolutionSpace(part, kernel)


def kernel_basis(a_rows):
    if not a_rows:
        return []
    zero = _zero_like(a_rows[0][0])
    return solve_affine(a_rows, [zero] * len(a_rows)).kernel


def invert(a_rows):
    """Exact inverse, or None when singular."""
    n = len(a_rows)
    if n == 0:
        return []
    one, zero = _one_like(a_rows[0][0]), _zero_like(a_rows[0][0])
    aug = [list(a_rows[i]) + identity_matrix(n, one, zero)[i] for i in range(n)]
    pivots = rref(aug)
    if [p for p in pivots if p < n] != list(range(n)):
        return None
    return [row[n:] for row in aug]


def charpoly(a_rows):
    """Monic characteristic polynomial coefficients, index = power of t.

    Faddeev-LeVerrier; exact over any characteristic-zero field element type.
    """
    n = len(a_rows)
    sample = a_rows[0][0]
    one, zero = _one_like(sample), _zero_like(sample)
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    acc = identity_matrix(n, one, zero)
    for k in range(1, n + 1):
        acc = matmul(a_rows, acc)
        tr = zero
        for i in range(n):
            tr = tr + acc[i][i]
        ck = -(tr * _from_int_like(sample, k).inverse())
        coeffs[n - k] = ck
        for i in range(n):
            acc[i][i] = acc[i][i] + ck
    return coeffs


# ---------------------------------------------------------------------------
# integer and Gaussian-integer factorization (for rational root search)
# ---------------------------------------------------------------------------

_SMALL_PRIME_BOUND = 100000


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 2000):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise LinearAlgebraError("factorization failed for %d" % n)


def factor_int(n: int) -> dict:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n <= 0:
        raise LinearAlgebraError("factor_int expects a positive integer")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n and f < _SMALL_PRIME_BOUND:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


# Gaussian integers as plain (a, b) tuples meaning a + b*i.

def g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def g_norm(x) -> int:
    return x[0] * x[0] + x[1] * x[1]


def g_divmod(x, y):
    """Gaussian division with remainder of norm < norm(y)."""
    ny = g_norm(y)
    if ny == 0:
        raise LinearAlgebraError("Gaussian division by zero")
    zr = x[0] * y[0] + x[1] * y[1]
    zi = x[1] * y[0] - x[0] * y[1]
    qr = (2 * zr + ny) // (2 * ny)
    qi = (2 * zi + ny) // (2 * ny)
    q = (qr, qi)
    r = (x[0] - (q[0] * y[0] - q[1] * y[1]), x[1] - (q[0] * y[1] + q[1] * y[0]))
    return q, r


def g_gcd(x, y):
    while y != (0, 0):
        _, r = g_divmod(x, y)
        x, y = y, r
    return x


def g_exact_div(x, y):
    """x / y when exact, else None."""
    q, r = g_divmod(x, y)
    return q if r == (0, 0) else None


def _sqrt_minus_one_mod(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return pow(a, (p - 1) // 4, p)
    raise LinearAlgebraError("no sqrt(-1) mod %d" % p)


def gaussian_prime_factors(z) -> list:
    """Gaussian prime factorization of z != 0, up to units: [(prime, exp), ...]."""
    if z == (0, 0):
        raise LinearAlgebraError("cannot factor zero")
    out = []
    nz = g_norm(z)
    for p in sorted(factor_int(nz)):
        cands = []
        if p == 2:
            cands = [(1, 1)]
        elif p % 4 == 3:
            cands = [(p, 0)]
        else:
            x = _sqrt_minus_one_mod(p)
            pi = g_gcd((p, 0), (x, 1))
            cands = [pi, (pi[0], -pi[1])]
        for pi in cands:
            e = 0
            w = z
            while True:
                q = g_exact_div(w, pi)
                if q is None:
                    break
                w = q
                e += 1
            if e:
                out.append((pi, e))
    return out


_G_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_DIVISOR_CAP = 200000


def gaussian_divisors(z) -> list:
    """All divisors of z up to units (one associate per class)."""
    divs = [(1, 0)]
    for pi, e in gaussian_prime_factors(z):
        new = []
        power = (1, 0)
        for _ in range(e + 1):
            for d in divs:
                new.append(g_mul(d, power))
            power = g_mul(power, pi)
        divs = new
        if len(divs) > _DIVISOR_CAP:
            raise LinearAlgebraError("divisor enumeration too large for %r" % (z,))
    return divs


def _gauss_rat(p, q) -> GaussRat:
    num = GaussRat(p[0], p[1])
    den = GaussRat(q[0], q[1])
    return num / den


def rational_roots(coeffs: list) -> tuple:
    """Roots of a GaussRat-coefficient polynomial that lie in Q(i).

    Returns ([(root, multiplicity), ...], residual_degree) where residual
    is the degree left unsplit after removing all Q(i) roots.  Deterministic:
    roots sorted by their (real, imaginary) value.
    """
    cs = list(coeffs)
    while cs and cs[-1].is_zero:
        cs.pop()
    if len(cs) <= 1:
        return [], 0
    roots = {}
    while len(cs) > 1 and cs[0].is_zero:
        roots[GR_ZERO] = roots.get(GR_ZERO, 0) + 1
        cs.pop(0)
    if len(cs) > 1:
        den_lcm = 1
        for c in cs:
            den_lcm = den_lcm * c.d // math.gcd(den_lcm, c.d)
        zs = [(c.a * (den_lcm // c.d), c.b * (den_lcm // c.d)) for c in cs]
        g = (0, 0)
        for z in zs:
            if z != (0, 0):
                g = z if g == (0, 0) else g_gcd(g, z)
        zs = [g_exact_div(z, g) for z in zs]
        cands = set()
        for p in gaussian_divisors(zs[0]):
            for u in _G_UNITS:
                pu = g_mul(p, u)
                for q in gaussian_divisors(zs[-1]):
                    cands.add(_gauss_rat(pu, q))
        for r in sorted(cands, key=GaussRat.sort_key):
            while len(cs) > 1:
                val = GR_ZERO
                for c in reversed(cs):
                    val = val * r + c
                if not val.is_zero:
                    break
                quo = [GR_ZERO] * (len(cs) - 1)
                acc = cs[-1]
                for k in range(len(cs) - 2, -1, -1):
                    quo[k] = acc
                    acc = cs[k] + acc * r
                cs = quo
                roots[r] = roots.get(r, 0) + 1
    ordered = sorted(roots.items(), key=lambda kv: kv[0].sort_key())
    return ordered, len(cs) - 1


# ---------------------------------------------------------------------------
# eigensplit
# ---------------------------------------------------------------------------

@dataclass
class EigenSpace:
    value: Scalar
    basis: list  # list of Scalar coordinate vectors

    @property
    def dimension(self) -> int:
        return len(self.basis)


_EXPONENT_WINDOW = 24


def _as_constant_matrix(rows):
    out = []
    for row in rows:
        orow = []
        for x in row:
            c = x.constant_value()
            if c is None:
                return None
            orow.append(c)
        out.append(orow)
    return out


def _specialize_matrix(rows, point: Fraction):
    p = GaussRat.from_fraction(point)
    return [[x.substitute(p) for x in row] for row in rows]


def eigensplit(rows, spec_points) -> list:
    """Split a square Scalar matrix into exact eigenspaces.

    Eigenvalues are hypothesized in the form r*s^k (r in Q(i), k an integer)
    by evaluating at two spec points and interpolating the exponent; each
    candidate is confirmed by an exact kernel computation over the function
    field.  Raises NotDiagonalizableOverField when the confirmed eigenspaces
    do not span.
    """
    n = len(rows)
    if n == 0:
        return []
    const = _as_constant_matrix(rows)
    candidates = []
    if const is not None:
        root_list, _residual = rational_roots(charpoly(const))
        candidates = [Scalar.const(r) for r, _m in root_list]
    else:
        if len(spec_points) < 2:
            raise LinearAlgebraError(
                "eigensplit of an s-dependent matrix needs at least two spec points")
        p1, p2 = spec_points[0], spec_points[1]
        m1 = _specialize_matrix(rows, p1)
        m2 = _specialize_matrix(rows, p2)
        roots1, _ = rational_roots(charpoly(m1))
        roots2 = {r for r, _m in rational_roots(charpoly(m2))[0]}
        seen = set()
        for e1, _mult in roots1:
            for k in range(-_EXPONENT_WINDOW, _EXPONENT_WINDOW + 1):
                p1k = GaussRat(p1.numerator ** abs(k), 0, p1.denominator ** abs(k))
                if k < 0:
                    p1k = p1k.inverse()
                r = e1 / p1k
                p2k = GaussRat(p2.numerator ** abs(k), 0, p2.denominator ** abs(k))
                if k < 0:
                    p2k = p2k.inverse()
                if r * p2k not in roots2:
                    continue
                lam = Scalar.const(r) * Scalar.s_power(k)
                if lam not in seen:
                    seen.add(lam)
                    candidates.append(lam)
    spaces = []
    total = 0
    for lam in sorted(candidates, key=Scalar.sort_key):
        shifted = [[rows[i][j] - lam if i == j else rows[i][j] for j in range(n)]
                   for i in range(n)]
        if const is not None:
            lamc = lam.constant_value()
            cshift = [[const[i][j] - lamc if i == j else const[i][j] for j in range(n)]
                      for i in range(n)]
            kb = kernel_basis(cshift)
            kb = [[Scalar.const(x) for x in v] for v in kb]
        else:
            kb = kernel_basis(shifted)
        if kb:
            spaces.append(EigenSpace(lam, kb))
            total += len(kb)
    spaces.sort(key=lambda es: es.value.sort_key())
    if total != n:
        raise NotDiagonalizableOverField(
            "eigenspaces span %d of %d dimensions (eigenvalues found: %s)"
            % (total, n, [str(es.value) for es in spaces]),
            found=spaces, residual_dimension=n - total)
    return spaces


# ---------------------------------------------------------------------------
# Hermitian positivity certificates
# ---------------------------------------------------------------------------

POSITIVE_DEFINITE = "positive-definite"
POSITIVE_SEMIDEFINITE = "positive-semidefinite"
INDEFINITE = "indefinite"


@dataclass
class GramCertificate:
    verdict: str
    mode: str  # "exact" | "at-specializations"
    pivots: list = field(default_factory=list)          # Scalar diagonal values
    witness: list | None = None                          # Scalar coordinates
    witness_value: Scalar | None = None
    per_point: list = field(default_factory=list)        # [(point literal, verdict)]
    notes: list = field(default_factory=list)


def _quad_form(g_rows, v):
    """v^H G v for GaussRat data."""
    acc = GR_ZERO
    n = len(v)
    for i in range(n):
        vi = v[i].conjugate()
        if vi.is_zero:
            continue
        row = g_rows[i]
        for j in range(n):
            if not (row[j].is_zero or v[j].is_zero):
                acc = acc + vi * row[j] * v[j]
    return acc


def _ldl_hermitian(g_rows) -> GramCertificate:
    """Exact LDL^H with diagonal pivoting on a Hermitian GaussRat matrix.

    Tracks the congruence transform so indefiniteness comes with a witness
    vector in original coordinates, verified before returning.
    """
    n = len(g_rows)
    m = mat_copy(g_rows)
    basis = identity_matrix(n, GR_ONE, GR_ZERO)
    pivots = []

    def finish_indef(row_vec, original):
        # m = C G C^H, so the bad value is v^H G v with v = conj(row of C)
        vec = [x.conjugate() for x in row_vec]
        val = _quad_form(original, vec)
        if val.b == 0 and val.a >= 0:
            raise LinearAlgebraError("internal: indefiniteness witness failed check")
        return GramCertificate(
            INDEFINITE, "exact",
            pivots=[Scalar.const(p) for p in pivots],
            witness=[Scalar.const(x) for x in vec],
            witness_value=Scalar.const(val))

    original = mat_copy(g_rows)
    k = 0
    while k < n:
        pr = None
        for i in range(k, n):
            if not m[i][i].is_zero:
                pr = i
                break
        if pr is None:
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not m[i][j].is_zero:
                        # value of alpha*c_i + c_j is 2*Re(alpha*m[i][j])
                        alpha = -m[i][j].conjugate()
                        vec = [alpha * basis[i][t] + basis[j][t] for t in range(n)]
                        return finish_indef(vec, original)
            return GramCertificate(
                POSITIVE_SEMIDEFINITE, "exact",
                pivots=[Scalar.const(p) for p in pivots],
                notes=["rank %d of %d" % (k, n)])
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            for row in m:
                row[k], row[pr] = row[pr], row[k]
            basis[k], basis[pr] = basis[pr], basis[k]
        piv = m[k][k]
        if piv.b != 0:
            raise LinearAlgebraError("internal: non-real diagonal in Hermitian LDL")
        if piv.a < 0:
            return finish_indef(list(basis[k]), original)
        pivots.append(piv)
        inv = piv.inverse()
        for i in range(k + 1, n):
            if m[i][k].is_zero:
                continue
            f = m[i][k] * inv
            fc = f.conjugate()
            mk = m[k]
            m[i] = [m[i][t] - f * mk[t] for t in range(n)]
            for row in m:
                row[i] = row[i] - row[k] * fc
            basis[i] = [basis[i][t] - f * basis[k][t] for t in range(n)]
        k += 1
    return GramCertificate(POSITIVE_DEFINITE, "exact",
                           pivots=[Scalar.const(p) for p in pivots])


def _is_hermitian_gaussrat(g_rows) -> bool:
    n = len(g_rows)
    return all(g_rows[j][i] == g_rows[i][j].conjugate()
               for i in range(n) for j in range(i, n))


def _non_hermitian_witness(g_rows):
    """A vector with v^H G v not real, for a non-Hermitian GaussRat matrix.

    If G[i][j] != conj(G[j][i]), one of e_i (i=j case), e_i + e_j,
    e_i + i*e_j has a quadratic value with nonzero imaginary part.
    """
    n = len(g_rows)
    for i in range(n):
        for j in range(i, n):
            if g_rows[j][i] == g_rows[i][j].conjugate():
                continue
            cands = []
            if i == j:
                cands.append([GR_ONE if t == i else GR_ZERO for t in range(n)])
            else:
                v1 = [GR_ZERO] * n
                v1[i] = GR_ONE
                v1[j] = GR_ONE
                v2 = [GR_ZERO] * n
                v2[i] = GR_ONE
                v2[j] = GaussRat(0, 1)
                cands.extend([v1, v2])
            for v in cands:
                val = _quad_form(g_rows, v)
                if val.b != 0:
                    return v, val, (i, j)
    return None


def gram_certificate(g_rows, spec_points) -> GramCertificate:
    """Positivity certificate for a matrix of Scalars interpreted as a
    sesquilinear Gram matrix G[i][j] = <e_i, e_j>.

    Constant Hermitian matrices get an exact LDL^H verdict; s-dependent ones
    are certified at every configured spec point ("at-specializations").
    A non-Hermitian matrix is indefinite (the form takes non-real values);
    the witness is constructed and verified.
    """
    n = len(g_rows)
    if n == 0:
        return GramCertificate(POSITIVE_DEFINITE, "exact")
    sym_hermitian = all(g_rows[j][i] == g_rows[i][j].conjugate()
                        for i in range(n) for j in range(i, n))
    const = _as_constant_matrix(g_rows)
    if const is not None:
        if not sym_hermitian:
            hit = _non_hermitian_witness(const)
            if hit is not None:
                v, val, at = hit
                return GramCertificate(
                    INDEFINITE, "exact",
                    witness=[Scalar.const(x) for x in v],
                    witness_value=Scalar.const(val),
                    notes=["not Hermitian at entry pair %r" % (at,),
                           "quadratic form takes non-real values"])
            raise LinearAlgebraError("internal: non-Hermitian matrix without witness")
        return _ldl_hermitian(const)
    # s-dependent: certify per spec point
    notes = []
    if not sym_hermitian:
        notes.append("matrix is not self-adjoint as a function of s; "
                     "verdicts are per specialization point only")
    per_point = []
    worst = POSITIVE_DEFINITE
    first_witness = None
    first_value = None
    order = {POSITIVE_DEFINITE: 0, POSITIVE_SEMIDEFINITE: 1, INDEFINITE: 2}
    for p in spec_points:
        gp = _specialize_matrix(g_rows, p)
        if _is_hermitian_gaussrat(gp):
            cert = _ldl_hermitian(gp)
        else:
            hit = _non_hermitian_witness(gp)
            v, val, at = hit
            cert = GramCertificate(
                INDEFINITE, "exact",
                witness=[Scalar.const(x) for x in v],
                witness_value=Scalar.const(val),
                notes=["not Hermitian at entry pair %r" % (at,)])
        per_point.append((str(Scalar.from_fraction(p)), cert.verdict))
        if order[cert.verdict] > order[worst]:
            worst = cert.verdict
            first_witness = cert.witness
            first_value = cert.witness_value
    return GramCertificate(worst, "at-specializations",
                           witness=first_witness, witness_value=first_value,
                           per_point=per_point, notes=notes)
