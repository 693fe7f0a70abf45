"""Constructive decomposition of 2x2 integer matrices.

Every matrix but the last is taken of the form [[x, y], [z, c - x]] and the
last one is [[0, N], [1, 0]].  Writing the target as [[p, q], [r, s]], the
identity sum(a_i X_i^2) = target is equivalent to

    sum a_i (x_i^2 + y_i z_i) + a_m N = p        (diagonal)
    sum a_i c_i y_i = q
    sum a_i c_i z_i = r
    sum a_i c_i x_i = (p - s + sum a_i c_i^2) / 2

Indices here are positions in a "role order" (see ``choose_roles_and_c``).
The last three equations are linear, so the work is in picking c so that
they are solvable, then adjusting y, z (and in one case x) so that the
residue A = sum a_i (x_i^2 + y_i z_i) - p becomes divisible by a_m.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .decomposition import Decomposition
from .errors import BadInput, ConditionViolated, ZeroCoefficient, check
from .exact import factorize, gcd_list, solve_linear_diophantine
from .matrix import IntMat
from .universality import as_coeffs, decide_universal_m2


@dataclass
class Eq1Params:
    """Working parameters; lists are indexed by role position 0..m-2."""

    case: str
    role_map: list[int]
    c: list[int]
    x: list[int] = field(default_factory=list)
    y: list[int] = field(default_factory=list)
    z: list[int] = field(default_factory=list)
    N: int | None = None


@dataclass
class LiftRecord:
    p: int
    e: int
    u: int
    alpha: int
    beta: int
    P: int = 0
    Q: int = 0
    R: int = 0
    t: int = 0
    k: int = 0


@dataclass
class LiftState:
    modulus: int
    A_resid: int = 0
    plan: list[LiftRecord] = field(default_factory=list)


def _entries(target: IntMat) -> tuple[int, int, int, int]:
    (p, q), (r, s) = target.rows
    return p, q, r, s


def choose_roles_and_c(a, target: IntMat) -> tuple[Eq1Params, LiftState]:
    """Classify the case, assign roles, and fix the c vector and lift plan."""
    a = as_coeffs(a)
    p, q, r, s = _entries(target)
    m = len(a)
    odd = list(a.odd_indices)
    if len(odd) >= 3:
        case = "I"
        first = [odd[0], odd[1]]
        last = odd[2]
    else:
        check(len(odd) == 2, "universal tuple with fewer than two odd coefficients")
        two = next(i for i, v in enumerate(a) if v % 4 == 2)
        if (p - s) % 2 or q % 2 or r % 2:
            case = "II"
            first, last = [odd[0], odd[1]], two
        else:
            case = "III"
            first, last = [two, odd[0]], odd[1]
    rest = [i for i in range(m) if i not in first and i != last]
    roles = first + rest + [last]
    pa = [a[i] for i in roles]
    am = pa[-1]

    if case == "III":
        c1 = am if (am - (p - s) // 2) % 2 == 0 else 2 * am
        c = [c1] + [2 * v for v in pa[1:-1]]
        modulus = am
    else:
        modulus = am if case == "I" else am // 2
        c2 = pa[1] if (pa[1] - (p - s + 1)) % 2 == 0 else 2 * pa[1]
        c = [modulus, c2] + [2 * v for v in pa[2:-1]]

    state = LiftState(modulus)
    for pp in factorize(modulus):
        free = [i for i in range(m - 1) if pa[i] % pp.p]
        check(len(free) >= 2, f"no two role coefficients prime to {pp.p}")
        alpha, beta = free[0], free[1]
        c[alpha] *= pp.p
        state.plan.append(LiftRecord(pp.p, pp.e, modulus // pp.value, alpha, beta))

    params = Eq1Params(case, roles, c)
    _check_c_facts(params, pa, p, s, state)
    return params, state


def _check_c_facts(params: Eq1Params, pa: list[int], p: int, s: int, state: LiftState) -> None:
    w = [ai * ci for ai, ci in zip(pa, params.c)]
    total = p - s + sum(ai * ci * ci for ai, ci in zip(pa, params.c))
    if params.case == "III":
        check(total % 4 == 0, "case III: p - s + sum a_i c_i^2 not divisible by 4")
        check(gcd_list(w) == 2, "case III: gcd(a_i c_i) != 2")
    else:
        check(total % 2 == 0, f"case {params.case}: p - s + sum a_i c_i^2 odd")
        check(gcd_list(w) == 1, f"case {params.case}: gcd(a_i c_i) != 1")
    for rec in state.plan:
        ca, cb = params.c[rec.alpha], params.c[rec.beta]
        check((pa[rec.alpha] * ca * ca + pa[rec.beta] * cb * cb) % rec.p != 0,
              f"prime {rec.p} divides a_alpha c_alpha^2 + a_beta c_beta^2")


def _residue(pa, params: Eq1Params, p: int) -> int:
    return sum(ai * (xi * xi + yi * zi) for ai, xi, yi, zi in zip(pa, params.x, params.y, params.z)) - p


def _check_linear(pa, params: Eq1Params, target: IntMat, audit: Counter | None = None) -> None:
    p, q, r, s = _entries(target)
    w = [ai * ci for ai, ci in zip(pa, params.c)]
    rhs = (p - s + sum(ai * ci * ci for ai, ci in zip(pa, params.c))) // 2
    check(sum(wi * yi for wi, yi in zip(w, params.y)) == q, "off-diagonal equation for q", audit)
    check(sum(wi * zi for wi, zi in zip(w, params.z)) == r, "off-diagonal equation for r", audit)
    check(sum(wi * xi for wi, xi in zip(w, params.x)) == rhs, "trace equation", audit)


def lift_to_eq1a(state: LiftState, params: Eq1Params, a, target: IntMat,
                 audit: Counter | None = None) -> Eq1Params:
    """Adjust y, z prime by prime until the residue A is divisible by ``state.modulus``."""
    a = as_coeffs(a)
    pa = [a[i] for i in params.role_map]
    p = target[0, 0]
    for rec in state.plan:
        al, be, u = rec.alpha, rec.beta, rec.u
        ca, cb = params.c[al], params.c[be]
        pe = rec.p**rec.e
        A = _residue(pa, params, p)
        rec.P = cb * params.y[al] - ca * params.y[be]
        rec.Q = cb * params.z[al] - ca * params.z[be]
        rec.R = u * (pa[al] * ca * ca + pa[be] * cb * cb)
        check(rec.R % rec.p != 0, f"R divisible by {rec.p}", audit)
        rec.t = 0 if rec.Q % rec.p else 1
        w = u * pa[al] * pa[be]
        slope = w * (rec.Q + rec.t * rec.R)
        rec.k = -(A + w * rec.t * rec.P) * pow(slope, -1, pe) % pe
        params.y[al] += rec.k * u * pa[be] * cb
        params.y[be] -= rec.k * u * pa[al] * ca
        params.z[al] += rec.t * u * pa[be] * cb
        params.z[be] -= rec.t * u * pa[al] * ca
        _check_linear(pa, params, target, audit)
        A_new = _residue(pa, params, p)
        check(A_new - A == w * (rec.t * rec.P + rec.k * (rec.Q + rec.t * rec.R)),
              "residue changed by the predicted amount", audit)
        check(A_new % pe == 0, f"{rec.p}^{rec.e} does not divide the residue", audit)
    state.A_resid = _residue(pa, params, p)
    check(state.A_resid % state.modulus == 0, "residue not divisible by the lift modulus", audit)
    return params


def _repair_parity(pa, params: Eq1Params, target: IntMat, audit: Counter | None) -> str | None:
    # shifts are scaled by the odd half of a_m so divisibility by it survives
    p, q, r, s = _entries(target)
    if _residue(pa, params, p) % 2 == 0:
        return None
    h = pa[-1] // 2
    d1, d2 = h * pa[1] * params.c[1], h * pa[0] * params.c[0]
    if (p - s) % 2:
        params.x[0] += d1
        params.x[1] -= d2
        which = "x"
    elif q % 2:
        params.z[0] += d1
        params.z[1] -= d2
        which = "z"
    else:
        check(r % 2 == 1, "case II without an odd entry among p - s, q, r")
        params.y[0] += d1
        params.y[1] -= d2
        which = "y"
    _check_linear(pa, params, target, audit)
    check(_residue(pa, params, p) % 2 == 0, "parity repair left the residue odd", audit)
    return which


def square_roots(params: Eq1Params) -> list[IntMat]:
    """Matrices in role order."""
    out = [IntMat([[x, y], [z, c - x]]) for c, x, y, z in zip(params.c, params.x, params.y, params.z)]
    out.append(IntMat([[0, params.N], [1, 0]]))
    return out


def decompose_m2(a, target: IntMat) -> Decomposition:
    a = as_coeffs(a)
    if target.shape != (2, 2):
        raise BadInput(f"target must be 2x2, got {target.shape}")
    if any(v == 0 for v in a):
        raise ZeroCoefficient("coefficients must be nonzero")
    verdict = decide_universal_m2(a)
    if not verdict.universal:
        raise ConditionViolated(f"form is not universal over 2x2 matrices ({verdict.failed_condition})")

    audit: Counter = Counter()
    params, state = choose_roles_and_c(a, target)
    pa = [a[i] for i in params.role_map]
    p, q, r, s = _entries(target)
    w = [ai * ci for ai, ci in zip(pa, params.c)]
    params.y = solve_linear_diophantine(w, q)
    params.z = solve_linear_diophantine(w, r)
    params.x = solve_linear_diophantine(w, (p - s + sum(ai * ci * ci for ai, ci in zip(pa, params.c))) // 2)
    _check_linear(pa, params, target, audit)

    lift_to_eq1a(state, params, a, target, audit)
    repaired = _repair_parity(pa, params, target, audit) if params.case == "II" else None
    A = _residue(pa, params, p)
    check(A % pa[-1] == 0, "residue not divisible by a_m", audit)
    params.N = -A // pa[-1]

    roots = square_roots(params)
    squares = sorted(zip(params.role_map, roots))
    for c, M in zip(params.c, roots):
        check(M.trace() == c, "square root trace differs from c", audit)
    d = Decomposition(a, target, tuple(squares), audit, {
        "engine": "2x2",
        "case": params.case,
        "roles": params.role_map,
        "c": params.c,
        "lift": [vars(rec) for rec in state.plan],
        "parity_repair": repaired,
        "N": params.N,
    })
    total = IntMat.zeros(2)
    for i, M in squares:
        total = total + a[i] * M.square()
    check(total == target, "2x2 decomposition does not reproduce the target", audit)
    return d
