"""The paper's two procedures on X -- point propagation phi and the rational
curve C_P -- plus exact point classification (ramification, exceptional
curves, generalized Eckardt) and the U_phi / U_inv membership tests.

All cores are generic over a field adapter so the finite-field oracle can run
the identical procedures mod p; the public API wraps them for Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from .errors import (
    BitangentLine,
    EliminationDegenerate,
    NotVeryGeneral,
    SameImage,
    SingularHit,
    SingularOrigin,
)
from .exactalg import (
    QQ,
    BinForm,
    Poly,
    QuotientField,
    RationalField,
    TernForm,
    content_primitive_ints,
    factor_univariate,
    is_square_binform,
    poly_gcd,
)
from .exactalg.modgcd import quotient_gcd
from .genus1 import (
    LineParam,
    ModelClass,
    classify_model,
    complete_unimodular,
    lin_comb,
    neg_wrt,
    pullback_generic,
    pullback_line,
)
from .surface import PointDP2, PointP2, SurfaceDP2, geiser, kappa, on_ramification, on_surface

# fixed ordering of the |-2K_X| section basis: w, then the degree-2 monomials
SEC_MONOMIALS = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


# ---------------------------------------------------------------------------
# truncated bivariate jets (exact Taylor expansions at a point)


class _Jet:
    """Truncated power series in two local variables, total degree <= N."""

    __slots__ = ("F", "N", "c")

    def __init__(self, F, N, coeffs=None):
        self.F = F
        self.N = N
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                if not F.is_zero(v):
                    self.c[k] = v

    @classmethod
    def const(cls, F, N, v):
        return cls(F, N, {(0, 0): v})

    @classmethod
    def var(cls, F, N, v0, which: int):
        key = (1, 0) if which == 0 else (0, 1)
        return cls(F, N, {(0, 0): v0, key: F.one})

    def coeff(self, i, j):
        return self.c.get((i, j), self.F.zero)

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, self.F.zero) + v
        return _Jet(self.F, self.N, out)

    def __sub__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, self.F.zero) - v
        return _Jet(self.F, self.N, out)

    def __mul__(self, other):
        F = self.F
        out = {}
        for (i1, j1), v1 in self.c.items():
            for (i2, j2), v2 in other.c.items():
                i, j = i1 + i2, j1 + j2
                if i + j > self.N:
                    continue
                out[(i, j)] = out.get((i, j), F.zero) + v1 * v2
        return _Jet(F, self.N, out)

    def scale(self, k):
        return _Jet(self.F, self.N, {key: v * k for key, v in self.c.items()})

    def inverse(self):
        F = self.F
        c0 = self.coeff(0, 0)
        if F.is_zero(c0):
            raise ZeroDivisionError("jet with zero constant term")
        inv0 = F.one / c0
        # geometric series in (1 - self/c0)
        u = _Jet.const(F, self.N, F.one) - self.scale(inv0)
        acc = _Jet.const(F, self.N, F.one)
        term = _Jet.const(F, self.N, F.one)
        for _ in range(self.N):
            term = term * u
            acc = acc + term
        return acc.scale(inv0)

    def sqrt(self, root0):
        """Square root with prescribed constant term root0 (a unit)."""
        F = self.F
        if root0 * root0 != self.coeff(0, 0):
            raise ValueError("root0^2 must match the constant term")
        x = _Jet.const(F, self.N, root0)
        half = F.one / F.from_int(2)
        for _ in range(self.N + 1):
            x = (x + self * x.inverse()).scale(half)
        return x


def _tern_jet(F, form: TernForm, vars_jets) -> _Jet:
    """Expand a ternary form at a point given jets for the coordinates."""
    N = vars_jets[0].N
    acc = _Jet(F, N)
    for (i, j, k), val in form.c.items():
        term = _Jet.const(F, N, val)
        for _ in range(i):
            term = term * vars_jets[0]
        for _ in range(j):
            term = term * vars_jets[1]
        for _ in range(k):
            term = term * vars_jets[2]
        acc = acc + term
    return acc


def _chart_index(F, xyz) -> int:
    """Affine chart at a point: largest coordinate over Q, else first nonzero."""
    if isinstance(F, RationalField):
        absvals = [abs(Fraction(v)) for v in xyz]
        return max(range(3), key=lambda i: (absvals[i], -i))
    for i in range(3):
        if not F.is_zero(xyz[i]):
            return i
    raise ValueError("zero coordinate triple")


def _section_condition_rows(F, f: TernForm, g: TernForm, P4, order: int):
    """Rows of the linear system 'lambda*w + q2 vanishes to order >= `order`
    at P on X', in the basis (lambda, SEC_MONOMIALS).  order = 2 gives 3 rows,
    order = 3 gives 6 rows.  Requires P off the ramification divisor."""
    N = order - 1
    x, y, z, w = P4
    c = _chart_index(F, (x, y, z))
    coord = [x, y, z]
    cc = coord[c]
    if isinstance(cc, int):
        coord = [F.from_int(v) for v in coord]
        w = F.from_int(w)
        cc = coord[c]
    inv = F.one / cc
    aff = [v * inv for v in coord]
    w_aff = w * inv * inv
    others = [i for i in range(3) if i != c]
    jets = [None, None, None]
    jets[c] = _Jet.const(F, N, F.one)
    jets[others[0]] = _Jet.var(F, N, aff[others[0]], 0)
    jets[others[1]] = _Jet.var(F, N, aff[others[1]], 1)
    f_jet = _tern_jet(F, f, jets)
    g_jet = _tern_jet(F, g, jets)
    q_jet = f_jet * f_jet + g_jet.scale(F.from_int(4))
    v0 = w_aff + w_aff + f_jet.coeff(0, 0)
    if F.is_zero(v0):
        raise ZeroDivisionError("point on the ramification divisor")
    v_jet = q_jet.sqrt(v0)
    half = F.one / F.from_int(2)
    w_jet = (v_jet - f_jet).scale(half)
    basis_jets = [w_jet]
    for (i, j, k) in SEC_MONOMIALS:
        mono = TernForm(F, 2, {(i, j, k): F.one})
        basis_jets.append(_tern_jet(F, mono, jets))
    rows = []
    for deg in range(N + 1):
        for i in range(deg, -1, -1):
            j = deg - i
            rows.append([bj.coeff(i, j) for bj in basis_jets])
    return rows


def _kernel(F, rows, ncols):
    """Basis of the kernel of the matrix (list of rows) over F."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for col in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not F.is_zero(mat[i][col]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = F.one / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(mat[i][col]):
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [F.zero] * ncols
        vec[fc] = F.one
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -mat[prow][fc]
        basis.append(vec)
    return basis


def _matrix_rank(F, rows, ncols) -> int:
    return ncols - len(_kernel(F, rows, ncols))


# ---------------------------------------------------------------------------
# sections of |-2K_X|


@dataclass(frozen=True)
class SectionMinus2K:
    """The section lambda*w + q2(x, y, z) of |-2K_X|."""

    lam: int
    q2: TernForm  # degree 2, integer coefficients over Q

    def evaluate(self, P: PointDP2) -> Fraction:
        return Fraction(self.lam) * P.w + self.q2.evaluate(
            Fraction(P.x), Fraction(P.y), Fraction(P.z)
        )

    def vector(self) -> list[Fraction]:
        return [Fraction(self.lam)] + [self.q2.coeff(*m) for m in SEC_MONOMIALS]

    def __str__(self):
        return f"{self.lam}*w + {self.q2.c}"


def _osculating_core(F, f: TernForm, g: TernForm, P4):
    """Primitive generator of the sections vanishing to order >= 3 at P."""
    try:
        rows = _section_condition_rows(F, f, g, P4, order=3)
    except ZeroDivisionError:
        raise NotVeryGeneral("point lies on the ramification divisor")
    ker = _kernel(F, rows, 7)
    if len(ker) != 1:
        raise NotVeryGeneral(f"osculation system has solution dimension {len(ker)}")
    vec = ker[0]
    if F.is_zero(vec[0]):
        raise NotVeryGeneral("osculating section degenerates (lambda = 0)")
    return vec


def osculating_section(S: SurfaceDP2, P: PointDP2) -> SectionMinus2K:
    """The unique (up to scalar) section of |-2K_X| vanishing to order >= 3
    at a very general P; its zero locus on X is the rational curve C_P."""
    vec = _osculating_core(QQ, S.f, S.g, P.coords())
    ints, _ = content_primitive_ints([Fraction(v) for v in vec])
    if ints[0] < 0:
        ints = [-n for n in ints]
    q2 = TernForm(QQ, 2, {m: Fraction(ints[1 + i]) for i, m in enumerate(SEC_MONOMIALS)})
    return SectionMinus2K(lam=ints[0], q2=q2)


# ---------------------------------------------------------------------------
# phi


def _phi_core(F, f: TernForm, g: TernForm, P4, Q4, origin: str = "P"):
    """phi on coordinate tuples; returns an unnormalized 4-tuple over F.

    `origin` picks the group-law origin on E_{P,Q}: "P" uses iota(P), "Q"
    uses iota(Q); the divisor class 2(iota(P)) - (Q) has degree 1, so the
    result is origin-independent."""
    A = P4[:3]
    B = Q4[:3]
    cross = (
        A[1] * B[2] - A[2] * B[1],
        A[2] * B[0] - A[0] * B[2],
        A[0] * B[1] - A[1] * B[0],
    )
    zero = lambda v: v == 0 if isinstance(v, int) else F.is_zero(v)
    if all(zero(v) for v in cross):
        raise SameImage("kappa(P) = kappa(Q)")
    model = pullback_generic(F, f, g, A, B)
    if classify_model(model) is ModelClass.Reducible:
        raise BitangentLine("the line through kappa(P), kappa(Q) is a bitangent")
    fP = f.evaluate(*_as_field(F, A))
    fQ = f.evaluate(*_as_field(F, B))
    wP = F.from_int(P4[3]) if isinstance(P4[3], int) else P4[3]
    wQ = F.from_int(Q4[3]) if isinstance(Q4[3], int) else Q4[3]
    iota_P = model.point(F.one, F.zero, -fP - wP)   # iota(P) at (s:t) = (1:0)
    Qc = model.point(F.zero, F.one, wQ)             # Q at (s:t) = (0:1)
    try:
        if origin == "P":
            R = neg_wrt(model, iota_P, Qc)
        elif origin == "Q":
            iota_Q = model.point(F.zero, F.one, -fQ - wQ)
            R = lin_comb(model, iota_Q, [(2, iota_P), (-1, Qc)])
        else:
            raise ValueError(f"origin must be 'P' or 'Q', got {origin!r}")
    except SingularOrigin as exc:
        raise SingularHit(str(exc)) from exc
    xyz = tuple(R.s * _f(F, A[i]) + R.t * _f(F, B[i]) for i in range(3))
    return xyz + (R.w,)


def _f(F, v):
    return F.from_int(v) if isinstance(v, int) else v


def _as_field(F, triple):
    return tuple(_f(F, v) for v in triple)


def phi(S: SurfaceDP2, P: PointDP2, Q: PointDP2, origin: str = "P") -> PointDP2:
    """The unique point R of E_{P,Q} with (R) ~ 2(iota(P)) - (Q)."""
    x, y, z, w = _phi_core(QQ, S.f, S.g, P.coords(), Q.coords(), origin=origin)
    return on_surface(S, x, y, z, w)


# ---------------------------------------------------------------------------
# C_P via the pencil


def c_p_point(S: SurfaceDP2, P: PointDP2, param: tuple[int, int]) -> PointDP2:
    """The residual point of |-2K - 2 iota(P) ... | on the pencil member:
    R = neg_wrt(E_L, iota(P), P) for the line L through kappa(P) selected by
    `param`.  For very general P these points sweep out C_P."""
    L = LineParam.pencil_member(P.xyz(), param)
    model = pullback_line(S, L)
    if classify_model(model) is ModelClass.Reducible:
        raise BitangentLine("pencil member is a bitangent line")
    iota_P = geiser(S, P)
    O = model.point(QQ.one, QQ.zero, Fraction(iota_P.w))
    Pc = model.point(QQ.one, QQ.zero, Fraction(P.w))
    try:
        R = lin_comb(model, O, [(-1, Pc)])
    except SingularOrigin as exc:
        raise SingularHit(str(exc)) from exc
    A, B = L.spanning()
    x = R.s * A[0] + R.t * B[0]
    y = R.s * A[1] + R.t * B[1]
    z = R.s * A[2] + R.t * B[2]
    return on_surface(S, x, y, z, R.w)


# ---------------------------------------------------------------------------
# bitangent counting through a point


class _PolyRing:
    """Minimal ring adapter so TernForm/BinForm machinery can carry
    polynomial (in t) coefficients during the pencil-discriminant setup."""

    def __init__(self, F):
        self.F = F
        self.zero = Poly.zero(F)
        self.one = Poly.one(F)

    def from_int(self, n):
        return Poly(self.F, [self.F.from_int(n)])

    @staticmethod
    def is_zero(p) -> bool:
        return p.is_zero()


def _pencil_basis(F, p3):
    """Two directions spanning the pencil of lines through p3."""
    if isinstance(F, RationalField):
        e1, e2 = complete_unimodular(tuple(int(v) for v in p3))
        return e1, e2
    # over a finite field: pick two standard vectors making the frame invertible
    idx = _chart_index(F, p3)
    others = [i for i in range(3) if i != idx]
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return e[others[0]], e[others[1]]


def _restrict_disc_pencil(F, Bform: TernForm, p3, e1, e2) -> Poly:
    """disc of B restricted to the line through p3 and e1 + t*e2, as a
    polynomial in t."""
    ring = _PolyRing(F)
    B_ring = Bform.map_coeffs(lambda v: Poly(F, [v]), ring)
    pconst = [Poly(F, [_f(F, v)]) for v in p3]
    moving = [Poly(F, [_f(F, e1[i]), _f(F, e2[i])]) for i in range(3)]
    q = B_ring.restrict_line(pconst, moving)
    a, b, c, d, e = q.c
    I = 12 * (a * e) - 3 * (b * d) + c * c
    J = 72 * (a * c * e) + 9 * (b * c * d) - 27 * (a * d * d) - 27 * (e * b * b) - 2 * (c * c * c)
    disc = 4 * (I * I * I) - J * J
    return disc.scale(F.one / F.from_int(27))


def _restricted_quartic(K, Bform: TernForm, p3, second) -> BinForm:
    """B restricted to the line through p3 and `second`, coefficients in K."""
    BK = Bform.map_coeffs(K.from_base, K)
    pK = tuple(K.from_base(_f(K.base, v)) for v in p3)
    sK = tuple(second)
    return BK.restrict_line(pK, sK)


def _count_bitangents_core(F, Bform: TernForm, p3):
    """Number of distinct lines through p3 (over the algebraic closure) whose
    restriction of B is a square up to scalar; with a certificate listing the
    passing irreducible pencil parameters."""
    e1, e2 = _pencil_basis(F, p3)
    D = _restrict_disc_pencil(F, Bform, p3, e1, e2)
    if D.is_zero():
        raise EliminationDegenerate("pencil discriminant vanishes identically")
    count = 0
    certificate = []
    for d, _mult in factor_univariate(D.monic()):
        if d.degree == 0:
            continue
        K = QuotientField(d)
        alpha = K.gen
        second = tuple(
            K.from_base(_f(F, e1[i])) + alpha * K.from_base(_f(F, e2[i]))
            for i in range(3)
        )
        q = _restricted_quartic(K, Bform, p3, second)
        if is_square_binform(q, up_to_scalar=True):
            count += d.degree
            certificate.append((repr(d), d.degree))
    # the pencil member at t = infinity: line through p3 and e2
    q_inf = Bform.restrict_line(_as_field(F, p3), _as_field(F, e2))
    if is_square_binform(q_inf, up_to_scalar=True):
        count += 1
        certificate.append(("t = infinity", 1))
    return count, certificate


def count_bitangents_through(S: SurfaceDP2, p: PointP2):
    """Number of bitangents of B through p, with a certificate."""
    return _count_bitangents_core(QQ, S.B, p.coords())


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PointClassification:
    on_ramification: bool
    n_exceptional: int
    is_general: bool
    is_very_general: bool
    is_generalized_eckardt: bool

    def as_dict(self):
        return {
            "on_ramification": self.on_ramification,
            "n_exceptional": self.n_exceptional,
            "is_general": self.is_general,
            "is_very_general": self.is_very_general,
            "is_generalized_eckardt": self.is_generalized_eckardt,
        }


def classify_point(S: SurfaceDP2, P: PointDP2) -> PointClassification:
    on_ram = on_ramification(S, P)
    n_exc, _cert = count_bitangents_through(S, kappa(P))
    eckardt = n_exc == 4
    return PointClassification(
        on_ramification=on_ram,
        n_exceptional=n_exc,
        is_general=(not on_ram) and (not eckardt),
        is_very_general=(not on_ram) and n_exc == 0,
        is_generalized_eckardt=eckardt,
    )


# ---------------------------------------------------------------------------
# phi domain verdicts


@dataclass(frozen=True)
class PhiDomainVerdict:
    in_U_phi: bool
    in_U_inv: bool
    failure_reason: str | None  # SameImage | BitangentLine | NonSmoothEndpoint
    #                           | FirstNotInU0 | SecondOnCP

    def as_dict(self):
        return {
            "in_U_phi": self.in_U_phi,
            "in_U_inv": self.in_U_inv,
            "failure_reason": self.failure_reason,
        }


def phi_domain(S: SurfaceDP2, P: PointDP2, Q: PointDP2) -> PhiDomainVerdict:
    if kappa(P) == kappa(Q):
        return PhiDomainVerdict(False, False, "SameImage")
    model = pullback_generic(QQ, S.f, S.g, P.xyz(), Q.xyz())
    if classify_model(model) is ModelClass.Reducible:
        return PhiDomainVerdict(False, False, "BitangentLine")
    iota_P = geiser(S, P)
    O = model.point(QQ.one, QQ.zero, Fraction(iota_P.w))
    Qc = model.point(QQ.zero, QQ.one, Fraction(Q.w))
    if not (model.is_smooth_at(O) and model.is_smooth_at(Qc)):
        return PhiDomainVerdict(False, False, "NonSmoothEndpoint")
    cls = classify_point(S, P)
    if not cls.is_very_general:
        return PhiDomainVerdict(True, False, "FirstNotInU0")
    section = osculating_section(S, P)
    if section.evaluate(Q) == 0:
        return PhiDomainVerdict(True, False, "SecondOnCP")
    return PhiDomainVerdict(True, True, None)


# ---------------------------------------------------------------------------
# all 28 bitangents


def count_all_bitangents(S: SurfaceDP2, attempts: int = 6) -> int:
    """Total number of bitangent lines of B over the algebraic closure,
    computed by elimination in the chart of lines z = u x + v y plus the
    pencil through (0:0:1); must equal 28 for smooth B."""
    rng = random.Random(1729)
    last_exc = None
    for attempt in range(attempts):
        if attempt == 0:
            Bf = S.B
        else:
            from .surface import _random_unimodular, _tern_substitute
            Bf = _tern_substitute(S.B, _random_unimodular(rng))
        try:
            return _count_all_bitangents_frame(Bf)
        except EliminationDegenerate as exc:
            last_exc = exc
    raise EliminationDegenerate(f"all frames degenerate: {last_exc}")


def _count_all_bitangents_frame(Bf: TernForm) -> int:
    u, v, xs, ys = sp.symbols("_u _v _x _y")
    expr = sp.Integer(0)
    for (i, j, k), val in Bf.c.items():
        expr += sp.Rational(val) * xs**i * ys**j * (u * xs + v * ys) ** k
    poly = sp.Poly(sp.expand(expr), xs, ys)
    a = [poly.coeff_monomial(xs ** (4 - i) * ys**i) for i in range(5)]
    a = [sp.expand(t) for t in a]
    c1 = sp.expand(8 * a[4] ** 2 * a[1] - 4 * a[4] * a[2] * a[3] + a[3] ** 3)
    c2 = sp.expand(64 * a[4] ** 3 * a[0] - (4 * a[4] * a[2] - a[3] ** 2) ** 2)
    if c1 == 0 or c2 == 0:
        raise EliminationDegenerate("chart conditions vanish identically")
    R = sp.resultant(sp.Poly(c1, v), sp.Poly(c2, v))
    Rp = sp.Poly(R, u)
    if Rp.is_zero:
        raise EliminationDegenerate("resultant in the dual chart vanishes")
    count = 0
    for d_expr, _mult in Rp.factor_list()[1]:
        if d_expr.degree() == 0:
            continue
        dQ = _poly_from_sympy(d_expr)
        K = QuotientField(dQ)
        c1K = _bivar_eval_u(K, c1, u, v)
        c2K = _bivar_eval_u(K, c2, u, v)
        gK = quotient_gcd(c1K, c2K)
        if gK.degree <= 0:
            continue
        rad = gK // quotient_gcd(gK, gK.derivative())
        count += dQ.degree * rad.degree
    # correction: spurious solutions with a4 = a3 = 0 but the residual
    # quadratic a0 x^2 + a1 x y + a2 y^2 not a perfect square
    a4p = sp.Poly(a[4], v)
    if a4p.is_zero:
        raise EliminationDegenerate("a4 vanishes identically")
    disc2 = sp.expand(a[1] ** 2 - 4 * a[0] * a[2])
    for e_expr, _mult in a4p.factor_list()[1]:
        if e_expr.degree() == 0:
            continue
        eQ = _poly_from_sympy(e_expr)
        Ke = QuotientField(eQ)
        a3K = _bivar_eval_v(Ke, a[3], u, v)
        if a3K.is_zero():
            raise EliminationDegenerate("a3 vanishes along a root of a4")
        if a3K.degree == 0:
            continue
        rad3 = a3K.monic() // poly_gcd(a3K, a3K.derivative())
        d2K = _bivar_eval_v(Ke, disc2, u, v)
        s_common = poly_gcd(rad3, d2K) if not d2K.is_zero() else rad3
        count -= eQ.degree * (rad3.degree - s_common.degree)
    n_e3, _cert = _count_bitangents_core(QQ, Bf, (0, 0, 1))
    return count + n_e3


def _poly_from_sympy(expr_poly) -> Poly:
    coeffs = [Fraction(c.p, c.q) for c in reversed(sp.Poly(expr_poly).all_coeffs())]
    return Poly(QQ, coeffs).monic()


def _bivar_eval_u(K: QuotientField, expr, u, v) -> Poly:
    """expr(u = alpha, v) as a Poly in v over K = Q[u]/(d)."""
    p = sp.Poly(expr, v)
    alpha = K.gen
    out = []
    for c in reversed(p.all_coeffs()):
        cu = sp.Poly(c, u)
        acc = K.zero
        for j, cc in enumerate(reversed(cu.all_coeffs())):
            r = sp.Rational(cc)
            acc = acc + K.from_base(Fraction(r.p, r.q)) * alpha**j
        out.append(acc)
    return Poly(K, out)


def _bivar_eval_v(K: QuotientField, expr, u, v) -> Poly:
    """expr(u, v = beta) as a Poly in u over K = Q[v]/(e)."""
    p = sp.Poly(expr, u)
    beta = K.gen
    out = []
    for c in reversed(p.all_coeffs()):
        cv = sp.Poly(c, v)
        acc = K.zero
        for j, cc in enumerate(reversed(cv.all_coeffs())):
            r = sp.Rational(cc)
            acc = acc + K.from_base(Fraction(r.p, r.q)) * beta**j
        out.append(acc)
    return Poly(K, out)
