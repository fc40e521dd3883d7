"""CSV tables and the flat ``key = value`` parameter-file format."""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import ConfigurationError
from .solver import Solution


def fmt(v: float) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{float(v):.11e}"


def solution_rows(sol: Solution, samples: int = 0):
    """Node rows, merged with ``samples`` equispaced rows when that is denser.

    Returns ``(t, values)`` with ``values`` of shape ``(len(t), m)``. Sampled
    times that print identically to a node are dropped in favour of the node.
    """
    nodes = sol.grid.nodes
    rows = {fmt(t): (t, sol.Y[:, j]) for j, t in enumerate(nodes)}
    if samples > sol.grid.n + 1:
        ts = np.linspace(0.0, sol.grid.tau, samples)
        extra = [(fmt(t), t) for t in ts if fmt(t) not in rows]
        if extra:
            vals = sol.evaluate(np.array([t for _, t in extra]))
            for c, (key, t) in enumerate(extra):
                rows[key] = (t, vals[:, c])
    ordered = sorted(rows.values(), key=lambda r: r[0])
    return (np.array([r[0] for r in ordered]),
            np.array([r[1] for r in ordered]))


def solution_csv(sol: Solution, samples: int = 0) -> str:
    m = sol.problem.m
    ts, vals = solution_rows(sol, samples)
    lines = [",".join(["t"] + [f"y{i}" for i in range(1, m + 1)])]
    for t, row in zip(ts, vals):
        lines.append(",".join([fmt(t)] + [fmt(v) for v in row]))
    return "\n".join(lines) + "\n"


def convergence_csv(rows, m: int) -> str:
    head = ["n"]
    for i in range(1, m + 1):
        head += [f"e_{i}", f"rho_{i}"]
    lines = [",".join(head + ["runtime_s"])]
    for row in rows:
        cells = [str(row.n)]
        for i in range(m):
            e = fmt(row.errors[i]) if not row.failed else ""
            r = row.orders[i] if i < len(row.orders) else None
            cells += [e, "" if r is None else f"{r:.4f}"]
        cells.append("" if row.failed else f"{row.runtime_seconds:.6f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_ladder(text: str) -> list[int]:
    """``"a:b"`` doubles from a up to at most b; ``"a,b,c"`` is taken literally."""
    text = text.strip()
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":"))
            if lo < 1 or hi < lo:
                raise ValueError
            out = []
            while lo <= hi:
                out.append(lo)
                lo *= 2
            return out
        out = [int(p) for p in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"cannot parse n list {text!r}") from None
    if not out or min(out) < 1:
        raise ConfigurationError(f"cannot parse n list {text!r}")
    return out


# --------------------------------------------------------------------------
# parameter files
# --------------------------------------------------------------------------

def _nonneg(v):
    return v >= 0.0


def _unit(v):
    return 0.0 <= v <= 1.0


PARAM_KEYS = {
    "mu": (_nonneg, "a non-negative rate"),
    "nu": (_nonneg, "a non-negative rate"),
    "gamma": (_nonneg, "a non-negative rate"),
    "epsilon": (_nonneg, "a non-negative rate"),
    "b0": (_nonneg, "a non-negative rate"),
    "b1": (_unit, "an amplitude in [0, 1]"),
    "c1": (_unit, "an amplitude in [0, 1]"),
    "phi": (math.isfinite, "a finite angle"),
    "alpha": (lambda v: 0.0 < v <= 1.0, "an order in (0, 1]"),
    "S0": (_nonneg, "a non-negative fraction"),
    "E0": (_nonneg, "a non-negative fraction"),
    "I0": (_nonneg, "a non-negative fraction"),
    "R0": (_nonneg, "a non-negative fraction"),
    "tau": (lambda v: v > 0.0, "a positive horizon"),
}

_PI_EXPR = re.compile(
    r"^(?:(?P<coef>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*\*\s*)?"
    r"(?P<sign>[-+])?pi(?:\s*/\s*(?P<den>\d+\.?\d*))?$")


def parse_number(text: str) -> float:
    """Float literal, or a multiple of pi such as ``pi/2`` or ``1.5*pi``."""
    text = text.strip()
    m = _PI_EXPR.match(text)
    if m:
        v = math.pi * float(m.group("coef") or 1.0)
        if m.group("sign") == "-":
            v = -v
        if m.group("den"):
            v /= float(m.group("den"))
        return v
    v = float(text)
    if not math.isfinite(v):
        raise ValueError(text)
    return v


def parse_param_text(text: str, source: str = "<params>", extra_keys=("model",)) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Numeric keys are range-checked here so that errors can name the line.
    Keys listed in ``extra_keys`` are kept as strings.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: {raw.strip()!r}"
        if "=" not in line:
            raise ConfigurationError(f"{where}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        if key in extra_keys:
            out[key] = value
            continue
        if key not in PARAM_KEYS:
            raise ConfigurationError(f"{where}: unknown key {key!r}")
        try:
            v = parse_number(value)
        except ValueError:
            raise ConfigurationError(f"{where}: {value!r} is not a number") from None
        check, what = PARAM_KEYS[key]
        if not check(v):
            raise ConfigurationError(f"{where}: {key} must be {what}")
        if key in out:
            raise ConfigurationError(f"{where}: duplicate key {key!r}")
        out[key] = v
    return out


def read_param_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_param_text(fh.read(), source=str(path))


def seirs_from_params(values: dict):
    """Build ``(SeirsParams, SeirsState, tau)`` from parsed keys over the defaults."""
    from .models import SeirsParams, SeirsState

    names = {"mu": "mu", "nu": "nu", "gamma": "gamma_r", "epsilon": "epsilon",
             "b0": "b0", "b1": "b1", "c1": "c1", "phi": "phi", "alpha": "alpha"}
    p = SeirsParams(**{names[k]: v for k, v in values.items() if k in names})
    s = SeirsState(**{k[0]: v for k, v in values.items() if k in ("S0", "E0", "I0", "R0")})
    return p, s, values.get("tau", 5.0)
