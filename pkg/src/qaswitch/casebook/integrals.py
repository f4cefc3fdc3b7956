"""First integrals of the center conditions, evaluated in floating point.

The closed forms carry irrational exponents (H_1, H_2, H_3), so they are
checked numerically: the derivative of H along the upper (or lower) vector
field, by central differences, normalized by |grad H| * |field|.
"""

from __future__ import annotations

import math
import random
from typing import Callable, Iterable, Mapping, Sequence

from ..exactpoly import VARIABLES
from .catalog import integral_data, load_condition

STEP = 1e-6
Params = Mapping[str, float]


class SingularPointError(ValueError):
    """Point on a singular locus of H or of the vector field."""


def vector_field(p: Params, x: float, y: float, region: str = "upper") -> tuple[float, float]:
    if region == "lower":
        return -y + p.get("delta", 0.0) * x, x + p.get("delta", 0.0) * y
    f = math.hypot(x, y) ** (p["lambda"] - 1)
    d = p.get("delta", 0.0)
    return (
        d * x - y + (p["a20"] * x * x + p["a11"] * x * y + p["a02"] * y * y) * f,
        x + d * y + (p["b20"] * x * x + p["b11"] * x * y + p["b02"] * y * y) * f,
    )


def _H0(p, x, y):
    return x * x + y * y


def _H1(p, x, y):
    lam = p["lambda"]
    r2 = x * x + y * y
    return 6 * lam * r2 ** ((3 - lam) / 2) + 2 * lam * (lam - 3) * y * (3 * (p["a20"] * x - p["b02"] * y) * x + p["a02"] * y * y)


def _H2(p, x, y):
    return (x * x + y * y) ** (p["lambda"] / 3)


def _gamma_alpha(p):
    b20, b11 = p["b20"], p["b11"]
    g = math.sqrt(b11 * b11 + 8 * b20 * b20)
    return g, 4 * b20 * b20 / (g * (g + b11))


def _H3(p, x, y):
    b20, b11 = p["b20"], p["b11"]
    g, al = _gamma_alpha(p)
    u = b20 * x + 1 + (b11 - g) * y / 2
    v = b20 * x + 1 + (b11 + g) * y / 2
    if u <= 0 or v <= 0:
        raise SingularPointError("H_3 needs both invariant-line factors positive")
    return (b20 * x - 1) * u ** (1 - al) * v**al


def _H3_printed(p, x, y):
    b20, b11 = p["b20"], p["b11"]
    g, al = _gamma_alpha(p)
    u = b20 * x + 1 + 12 * (b11 - g) * y
    v = b20 * x + 1 + 12 * (b11 + g) * y
    # the printed exponents are irrational; read the powers on |.|
    return (b20 * x - 1) * abs(u) ** al * abs(v) ** (1 - al)


def _H4(p, x, y):
    a, b = p["a20"], p["b20"]
    return (2 * b * x - a * y - 2) ** 2 * (4 * (b * x + 1) ** 2 - (4 * a + 12 * a * b * x) * y + (3 * a * a - 8 * b * b) * y * y)


def _H5(p, x, y):
    a, b = p["a20"], p["b20"]
    r2 = x * x + y * y
    w = 4 * b * x - 3 * a * y
    pre = 9 * a * a / (64 * b * b * (9 * a * a + 16 * b * b) * r2**1.5)
    return pre * (
        4096 * b**4
        + w**4 * (8 * b * b * (x * x - y * y) - 3 * a * (8 * b * x - 3 * a * y) * y) * r2**1.5
        + 128 * b * b * y * w * (24 * a * b * x - 9 * a * a * y + 16 * b * b * y) * r2**0.75
    )


INTEGRALS: dict[str, Callable[[Params, float, float], float]] = {
    "H0": _H0,
    "H1": _H1,
    "H2": _H2,
    "H3": _H3,
    "H4": _H4,
    "H5": _H5,
}
PRINTED_VARIANTS = {"H3": _H3_printed}


def _lookup(name: str, printed: bool):
    if printed and name in PRINTED_VARIANTS:
        return PRINTED_VARIANTS[name]
    if name not in INTEGRALS:
        integral_data(name)  # raises UnknownEntryError
    return INTEGRALS[name]


def residual(H, p: Params, x: float, y: float, region: str = "upper", step: float = STEP) -> float:
    if x * x + y * y == 0:
        raise SingularPointError("origin")
    try:
        Hx = (H(p, x + step, y) - H(p, x - step, y)) / (2 * step)
        Hy = (H(p, x, y + step) - H(p, x, y - step)) / (2 * step)
    except (ZeroDivisionError, ValueError) as exc:
        if isinstance(exc, SingularPointError):
            raise
        raise SingularPointError(f"H undefined near ({x}, {y})") from exc
    u, v = vector_field(p, x, y, region)
    g, f = math.hypot(Hx, Hy), math.hypot(u, v)
    if not (math.isfinite(g) and g > 0 and f > 0):
        raise SingularPointError(f"degenerate gradient or field at ({x}, {y})")
    return abs(Hx * u + Hy * v) / (g * f)


def first_integral_residual(
    name: str, points: Iterable[Sequence[float]], params: Params, printed: bool = False
) -> float:
    """max over points of |dH/dt| / (|grad H| |field|)."""
    H = _lookup(name, printed)
    region = integral_data(name)["region"]
    p = {v: 0.0 for v in VARIABLES}
    p["lambda"] = 1.0
    p.update({k: float(v) for k, v in params.items()})
    return max(residual(H, p, float(x), float(y), region) for x, y in points)


def sample_params(condition: str | None, rng: random.Random) -> dict[str, float]:
    """Random float parameters on the variety of a condition.

    Free coefficients are drawn in [-1, 1] (b20 kept away from zero so the
    declared denominators stay nonzero); a free lambda is drawn in [0.5, 3].
    """
    p = {v: rng.uniform(-1, 1) for v in VARIABLES}
    p["delta"] = 0.0
    p["lambda"] = rng.uniform(0.5, 3)
    p["b20"] = math.copysign(rng.uniform(0.3, 1), p["b20"])
    if condition is None:
        return p
    sub = load_condition(condition).substitution
    den = sub.denominator.evalf(p) if sub.denominator is not None else 1.0
    vals = {}
    for k, v in sub.mapping.items():
        vals[k] = v.evalf(p) if k in ("lambda", "delta") else v.evalf(p) / den
    p.update(vals)
    return p


def sample_points(n: int, rng: random.Random, region: str = "upper", radius: float = 0.3) -> list[tuple[float, float]]:
    """Points in the open half-disc of the region, away from the origin."""
    out = []
    while len(out) < n:
        x, y = rng.uniform(-radius, radius), rng.uniform(0.02, radius)
        if math.hypot(x, y) < 0.05:
            continue
        out.append((x, -y) if region == "lower" else (x, y))
    return out


def check_integral(name: str, n_points: int = 20, seed: int = 0, threshold: float = 1e-6) -> dict:
    """Residuals of H at random valid points under its condition."""
    data = integral_data(name)
    rng = random.Random(f"{name}:{seed}")
    worst = 0.0
    for _ in range(n_points):
        p = sample_params(data["condition"], rng)
        (pt,) = sample_points(1, rng, data["region"])
        worst = max(worst, residual(INTEGRALS[name], p, *pt, region=data["region"]))
    return {
        "name": name,
        "condition": data["condition"],
        "citation": data["citation"],
        "max_residual": worst,
        "threshold": threshold,
        "passed": worst < threshold,
    }


__all__ = [
    "INTEGRALS",
    "SingularPointError",
    "check_integral",
    "first_integral_residual",
    "residual",
    "sample_params",
    "sample_points",
    "vector_field",
]
