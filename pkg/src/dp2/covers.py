"""Unirationality covers f1, f2, f3, f6 and a seeded point-generation engine.

f1 parametrizes the rational curve C_{P0} through a very general base point
P0; f2, f3, f6 compose f1 with the point procedure phi.  generate_points
samples parameter tuples with a named PRNG (random.Random, Mersenne Twister),
evaluates a cover, and returns deduplicated points sorted by height.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from .errors import BadParameter, BitangentLine, DP2Error, NotVeryGeneral, SingularHit
from .exactalg import QQ
from .geometry import (
    SEC_MONOMIALS,
    SectionMinus2K,
    _matrix_rank,
    c_p_point,
    classify_point,
    osculating_section,
    phi,
)
from .genus1 import ModelClass, classify_model, pullback_generic
from .surface import PointDP2, PointP2, SurfaceDP2, geiser, kappa, lift

_RNG_NAME = "python-random-mt19937"


def _normalize_pair(pair: tuple[int, int]) -> tuple[int, int]:
    u, v = int(pair[0]), int(pair[1])
    if u == 0 and v == 0:
        raise BadParameter("parameter (0:0) is not a point of P^1")
    g = igcd(u, v)
    u, v = u // g, v // g
    if u < 0 or (u == 0 and v < 0):
        u, v = -u, -v
    return u, v


@dataclass(frozen=True)
class ParamTuple:
    """A point of Z_n = (P^1)^n with coprime sign-normalized coordinates."""

    components: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, pairs) -> "ParamTuple":
        return cls(tuple(_normalize_pair(p) for p in pairs))

    @property
    def n(self) -> int:
        return len(self.components)

    def __str__(self):
        return ";".join(f"{u}:{v}" for u, v in self.components)


@dataclass(frozen=True)
class GeneratedPoint:
    point: PointDP2
    height: int
    cover: str
    params: ParamTuple


@dataclass(frozen=True)
class CoverContext:
    """A surface with a very general base point and its cached C_{P0} data."""

    surface: SurfaceDP2
    P0: PointDP2
    section: SectionMinus2K  # osculating section cutting out C_{P0}

    @classmethod
    def create(cls, S: SurfaceDP2, P0: PointDP2) -> "CoverContext":
        cls_p = classify_point(S, P0)
        if not cls_p.is_very_general:
            raise NotVeryGeneral(f"base point {P0} is not very general")
        return cls(surface=S, P0=P0, section=osculating_section(S, P0))


def find_very_general_point(S: SurfaceDP2, height_bound: int = 24) -> PointDP2:
    """Bounded search for a very general rational point via small-height
    lifts; the very-general hypothesis is an input requirement, so failure
    is a hard error."""
    for h in range(1, height_bound + 1):
        for x in range(-h, h + 1):
            for y in range(-h, h + 1):
                for z in range(0, h + 1):
                    if max(abs(x), abs(y), z) != h or (x == 0 and y == 0 and z == 0):
                        continue
                    try:
                        p2 = PointP2.make(x, y, z)
                    except ValueError:
                        continue
                    for P in lift(S, p2):
                        if classify_point(S, P).is_very_general:
                            return P
    raise NotVeryGeneral(f"no very general point of height <= {height_bound} found")


def context_for(S: SurfaceDP2, P0: PointDP2 | None = None, search_bound: int = 24) -> CoverContext:
    """Context at P0 if very general, else at the first very general point
    found by bounded search."""
    if P0 is not None:
        if classify_point(S, P0).is_very_general:
            return CoverContext.create(S, P0)
    return CoverContext.create(S, find_very_general_point(S, search_bound))


# ---------------------------------------------------------------------------
# the covers


def f1(ctx: CoverContext, pair: tuple[int, int]) -> PointDP2:
    """P^1 -> C_{P0}: the residual negation point on the selected pencil
    member (pointwise model of the desingularization)."""
    pair = _normalize_pair(pair)
    try:
        return c_p_point(ctx.surface, ctx.P0, pair)
    except (BitangentLine, SingularHit) as exc:
        raise BadParameter(f"bad pencil member {pair[0]}:{pair[1]}: {exc}") from exc


def f2(ctx: CoverContext, pairs) -> PointDP2:
    a, b = pairs
    return phi(ctx.surface, f1(ctx, a), f1(ctx, b))


def f3(ctx: CoverContext, triple) -> PointDP2:
    a, rest = triple[0], triple[1:]
    return phi(ctx.surface, f1(ctx, a), f2(ctx, rest))


def f6(ctx: CoverContext, sextuple) -> PointDP2:
    return phi(ctx.surface, f3(ctx, sextuple[:3]), f3(ctx, sextuple[3:]))


_COVERS = {"f1": (f1, 1), "f2": (f2, 2), "f3": (f3, 3), "f6": (f6, 6)}


def cover_arity(cover: str) -> int:
    if cover not in _COVERS:
        raise BadParameter(f"unknown cover {cover!r}; expected one of {sorted(_COVERS)}")
    return _COVERS[cover][1]


def evaluate_cover(ctx: CoverContext, cover: str, params: ParamTuple) -> PointDP2:
    fn, arity = _COVERS[cover]
    if params.n != arity:
        raise BadParameter(f"{cover} needs {arity} parameters, got {params.n}")
    if arity == 1:
        return fn(ctx, params.components[0])
    return fn(ctx, params.components)


def point_height(P: PointDP2) -> int:
    """Height of the kappa-image of the canonical representative."""
    return max(abs(P.x), abs(P.y), abs(P.z))


def in_u_inv(ctx: CoverContext, Q: PointDP2) -> bool:
    """Whether (P0, Q) lies in U_inv, using the cached classification and
    osculating section of P0."""
    S, P0 = ctx.surface, ctx.P0
    if kappa(P0) == kappa(Q):
        return False
    model = pullback_generic(QQ, S.f, S.g, P0.xyz(), Q.xyz())
    if classify_model(model) is ModelClass.Reducible:
        return False
    iota_P = geiser(S, P0)
    O = model.point(QQ.one, QQ.zero, Fraction(iota_P.w))
    Qc = model.point(QQ.zero, QQ.one, Fraction(Q.w))
    if not (model.is_smooth_at(O) and model.is_smooth_at(Qc)):
        return False
    return ctx.section.evaluate(Q) != 0


# ---------------------------------------------------------------------------
# seeded generation


@dataclass(frozen=True)
class GenerationStats:
    attempted: int
    succeeded: int
    failed: int
    distinct: int
    filtered: int
    rng: str = _RNG_NAME


def _sample_params(rng: random.Random, budget: int, arity: int) -> list[ParamTuple]:
    """Deterministic parameter stream; the coordinate box [-H, H] grows as the
    budget is consumed."""
    out = []
    for i in range(budget):
        H = 2 + i // 64
        pairs = []
        for _ in range(arity):
            u, v = 0, 0
            while u == 0 and v == 0:
                u = rng.randint(-H, H)
                v = rng.randint(-H, H)
            pairs.append((u, v))
        out.append(ParamTuple.make(pairs))
    return out


def generate_points_with_stats(
    ctx: CoverContext,
    cover: str,
    budget: int,
    height_bound: int,
    seed: int,
    jobs: int = 1,
) -> tuple[list[GeneratedPoint], GenerationStats]:
    if budget <= 0 or height_bound <= 0 or seed <= 0:
        raise BadParameter("budget, height_bound and seed must be positive")
    arity = cover_arity(cover)
    params = _sample_params(random.Random(seed), budget, arity)

    def attempt(pt: ParamTuple):
        try:
            return evaluate_cover(ctx, cover, pt)
        except DP2Error:
            return None

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(attempt, params))
    else:
        results = [attempt(pt) for pt in params]

    seen: dict[PointDP2, GeneratedPoint] = {}
    succeeded = filtered = 0
    for pt, P in zip(params, results):
        if P is None:
            continue
        succeeded += 1
        if P in seen:
            continue
        h = point_height(P)
        if h > height_bound:
            filtered += 1
            continue
        seen[P] = GeneratedPoint(point=P, height=h, cover=cover, params=pt)
    out = sorted(seen.values(), key=lambda gp: (gp.height, gp.point.coords()))
    stats = GenerationStats(
        attempted=budget,
        succeeded=succeeded,
        failed=budget - succeeded,
        distinct=len(out),
        filtered=filtered,
    )
    return out, stats


def generate_points(
    ctx: CoverContext,
    cover: str,
    budget: int,
    height_bound: int,
    seed: int,
    jobs: int = 1,
) -> list[GeneratedPoint]:
    """Deterministic function of (ctx, cover, budget, height_bound, seed)."""
    return generate_points_with_stats(ctx, cover, budget, height_bound, seed, jobs)[0]


# ---------------------------------------------------------------------------
# dominance proxies


def rank_minus2K(points) -> int:
    """Rank of the evaluation matrix of the 7 monomial sections of |-2K_X|
    (six degree-2 monomials and w); rank 7 means the points lie on no single
    curve of that linear system."""
    rows = []
    for P in points:
        x, y, z = Fraction(P.x), Fraction(P.y), Fraction(P.z)
        vals = [x * x, y * y, z * z, x * y, x * z, y * z]
        ordered = {m: vals[i] for i, m in enumerate([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)])}
        rows.append([Fraction(P.w)] + [ordered[m] for m in SEC_MONOMIALS])
    return _matrix_rank(QQ, rows, 7)


def rank_minusK(points) -> int:
    """Rank of the evaluation matrix of the |-K_X| sections x, y, z on the
    kappa-images."""
    rows = []
    for P in points:
        q = kappa(P)
        rows.append([Fraction(q.x), Fraction(q.y), Fraction(q.z)])
    return _matrix_rank(QQ, rows, 3)
