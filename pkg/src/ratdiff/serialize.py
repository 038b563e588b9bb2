"""Run specifications, result envelopes, and artifact emission.

Complex numbers cross the wire as "a+bi" literals printed with Python's
shortest round-trip float repr, so parse(print(z)) is the identity on
doubles (signed zeros included).  JSON is the canonical interchange
format; CSV covers orbit and grid tables (RFC 4180 line endings); SVG
1.1 is written by hand so plots stay dependency-free and diffable.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field, fields

from .scan import ComplexRect

__all__ = [
    "FormatError",
    "parse_complex",
    "format_complex",
    "RunSpec",
    "ResultEnvelope",
    "emit",
]

FORMATS = ("csv", "json", "svg")


class FormatError(ValueError):
    """Requested output format cannot represent the payload."""


_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_FULL = re.compile(rf"^\s*([+-]?{_FLOAT})([+-]{_FLOAT})i\s*$")
_RE_REAL = re.compile(rf"^\s*([+-]?{_FLOAT})\s*$")
_RE_IMAG = re.compile(rf"^\s*([+-]?{_FLOAT})i\s*$")


def parse_complex(text: str) -> complex:
    """Parse an "a+bi" literal (bare reals and pure imaginaries allowed)."""
    m = _RE_FULL.match(text)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _RE_REAL.match(text)
    if m:
        return complex(float(m.group(1)), 0.0)
    m = _RE_IMAG.match(text)
    if m:
        return complex(0.0, float(m.group(1)))
    raise ValueError(f"not a complex literal: {text!r}")


def format_complex(z: complex) -> str:
    """Shortest exact "a+bi" literal for z."""
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _rect_to_list(r: ComplexRect) -> list[float]:
    return [r.re_min, r.re_max, r.im_min, r.im_max]


def _rect_from_list(vals) -> ComplexRect:
    return ComplexRect(*(float(v) for v in vals))


@dataclass(frozen=True)
class RunSpec:
    """One CLI invocation, fully serializable.

    Only fields relevant to the command are set; everything else stays
    None and is omitted from the serialized form.
    """

    command: str
    alpha: complex | None = None
    beta: complex | None = None
    seeds: tuple[tuple[complex, complex], ...] | None = None
    steps: int | None = None
    branch: str | None = None
    alpha_rect: ComplexRect | None = None
    beta_rect: ComplexRect | None = None
    rect: ComplexRect | None = None
    vary: str | None = None
    nx: int | None = None
    ny: int | None = None
    budget: int | None = None
    rng_seed: int | None = None
    n_transient: int | None = None
    n_sample: int | None = None
    out: str | None = None
    format: str = "json"

    def to_dict(self) -> dict:
        out: dict = {"command": self.command, "format": self.format}
        if self.alpha is not None:
            out["alpha"] = format_complex(self.alpha)
        if self.beta is not None:
            out["beta"] = format_complex(self.beta)
        if self.seeds is not None:
            out["seeds"] = [
                [format_complex(a), format_complex(b)] for a, b in self.seeds
            ]
        for name in ("steps", "branch", "vary", "nx", "ny", "budget",
                     "rng_seed", "n_transient", "n_sample", "out"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        for name in ("alpha_rect", "beta_rect", "rect"):
            value = getattr(self, name)
            if value is not None:
                out[name] = _rect_to_list(value)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunSpec":
        kwargs: dict = {}
        known = {f.name for f in fields(cls)}
        for key, value in data.items():
            if key not in known:
                raise ValueError(f"unknown run-spec field {key!r}")
            if key in ("alpha", "beta"):
                value = parse_complex(value)
            elif key == "seeds":
                value = tuple(
                    (parse_complex(a), parse_complex(b)) for a, b in value
                )
            elif key in ("alpha_rect", "beta_rect", "rect"):
                value = _rect_from_list(value)
            kwargs[key] = value
        return cls(**kwargs)


@dataclass(frozen=True)
class ResultEnvelope:
    runspec: RunSpec
    version: str
    wall_time_s: float
    payload: dict = field(default_factory=dict)
    error: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "runspec": self.runspec.to_dict(),
            "version": self.version,
            "wall_time_s": self.wall_time_s,
            "payload": self.payload,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ResultEnvelope":
        return cls(
            runspec=RunSpec.from_dict(data["runspec"]),
            version=data["version"],
            wall_time_s=data["wall_time_s"],
            payload=data["payload"],
            error=data.get("error"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultEnvelope":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# emission

def emit(envelope: ResultEnvelope, format: str, path: str | None = None) -> str:
    """Render the envelope in the requested format, writing path if given.

    Returns the rendered text.  Raises FormatError when the payload kind
    cannot be represented in the requested format (csv: orbit and grid
    payloads; svg: orbit, grid, and scan payloads).
    """
    if format == "json":
        text = envelope.to_json()
    elif format == "csv":
        text = _emit_csv(envelope.payload)
    elif format == "svg":
        text = _emit_svg(envelope.payload)
    else:
        raise FormatError(f"unknown format {format!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _emit_csv(payload: dict) -> str:
    kind = payload.get("kind")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    if kind == "orbit":
        orbits = payload["orbits"]
        if len(orbits) != 1:
            raise FormatError("csv orbit output requires exactly one seed")
        writer.writerow(["n", "re", "im"])
        for n, literal in enumerate(orbits[0]["points"], start=-1):
            z = parse_complex(literal)
            writer.writerow([n, repr(z.real), repr(z.imag)])
    elif kind == "grid":
        writer.writerow(["re", "im", "verdict"])
        rect = _rect_from_list(payload["region"])
        nx, ny = payload["nx"], payload["ny"]
        for iy, row in enumerate(payload["cells"]):
            for ix, verdict in enumerate(row):
                c = rect.center(ix, iy, nx, ny)
                writer.writerow([repr(c.real), repr(c.imag), verdict])
    else:
        raise FormatError(f"no csv form for payload kind {kind!r}")
    return buf.getvalue()


# fixed palettes keep emission deterministic
_SERIES_COLORS = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
_VERDICT_COLORS = {
    "converges": "#1f77b4",
    "periodic": "#2ca02c",
    "unbounded": "#d62728",
    "chaotic": "#9467bd",
    "singular": "#7f7f7f",
    "undetermined": "#c7c7c7",
}

_SVG_SIZE = 480
_SVG_PAD = 40


def _f(v: float) -> str:
    return f"{v:.3f}"


class _Canvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: list[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def rect(self, x, y, w, h, fill, stroke="none"):
        self.parts.append(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def circle(self, x, y, r, fill):
        self.parts.append(
            f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="{fill}"/>'
        )

    def polyline(self, points, stroke):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="1"/>'
        )

    def text(self, x, y, content, size=12):
        self.parts.append(
            f'<text x="{_f(x)}" y="{_f(y)}" font-family="sans-serif" '
            f'font-size="{size}">{content}</text>'
        )

    def frame(self):
        self.rect(_SVG_PAD, _SVG_PAD, self.width - 2 * _SVG_PAD,
                  self.height - 2 * _SVG_PAD, "none", stroke="black")

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


class _PlaneMap:
    """Affine map from a complex-plane window onto the padded canvas."""

    def __init__(self, points: list[complex], width: int, height: int):
        res = [z.real for z in points] or [0.0]
        ims = [z.imag for z in points] or [0.0]
        lo_r, hi_r = min(res), max(res)
        lo_i, hi_i = min(ims), max(ims)
        pad_r = 0.05 * (hi_r - lo_r) or 1.0
        pad_i = 0.05 * (hi_i - lo_i) or 1.0
        self.lo_r, self.hi_r = lo_r - pad_r, hi_r + pad_r
        self.lo_i, self.hi_i = lo_i - pad_i, hi_i + pad_i
        self.w = width - 2 * _SVG_PAD
        self.h = height - 2 * _SVG_PAD

    def xy(self, z: complex) -> tuple[float, float]:
        u = (z.real - self.lo_r) / (self.hi_r - self.lo_r)
        v = (z.imag - self.lo_i) / (self.hi_i - self.lo_i)
        return _SVG_PAD + u * self.w, _SVG_PAD + (1 - v) * self.h


def _emit_svg(payload: dict) -> str:
    kind = payload.get("kind")
    if kind == "orbit":
        return _svg_orbit(payload)
    if kind == "grid":
        return _svg_grid(payload)
    if kind == "scan":
        return _svg_scan(payload)
    raise FormatError(f"no svg form for payload kind {kind!r}")


def _svg_orbit(payload: dict) -> str:
    canvas = _Canvas(_SVG_SIZE, _SVG_SIZE)
    orbits = [
        [parse_complex(p) for p in orbit["points"]] for orbit in payload["orbits"]
    ]
    plane = _PlaneMap([z for pts in orbits for z in pts], _SVG_SIZE, _SVG_SIZE)
    for idx, pts in enumerate(orbits):
        color = _SERIES_COLORS[idx % len(_SERIES_COLORS)]
        coords = [plane.xy(z) for z in pts]
        canvas.polyline(coords, color)
        for x, y in coords:
            canvas.circle(x, y, 2.0, color)
    canvas.frame()
    canvas.text(_SVG_PAD, _SVG_PAD - 10,
                f"orbit plot ({len(orbits)} seed(s)), re vs im")
    canvas.text(_SVG_PAD, _SVG_SIZE - 10,
                f"re in [{_f(plane.lo_r)}, {_f(plane.hi_r)}], "
                f"im in [{_f(plane.lo_i)}, {_f(plane.hi_i)}]", size=10)
    return canvas.render()


def _svg_grid(payload: dict) -> str:
    canvas = _Canvas(_SVG_SIZE, _SVG_SIZE)
    nx, ny = payload["nx"], payload["ny"]
    span_x = (_SVG_SIZE - 2 * _SVG_PAD) / nx
    span_y = (_SVG_SIZE - 2 * _SVG_PAD) / ny
    for iy, row in enumerate(payload["cells"]):
        for ix, verdict in enumerate(row):
            color = _VERDICT_COLORS.get(verdict, "#000000")
            # im axis grows upward: row 0 sits at the bottom
            canvas.rect(
                _SVG_PAD + ix * span_x,
                _SVG_PAD + (ny - 1 - iy) * span_y,
                span_x, span_y, color,
            )
    canvas.frame()
    canvas.text(_SVG_PAD, _SVG_PAD - 10,
                f"classification grid {nx}x{ny}, vary={payload['vary']}")
    legend = " ".join(f"{k}:{v}" for k, v in sorted(payload["counts"].items()))
    canvas.text(_SVG_PAD, _SVG_SIZE - 10, legend, size=10)
    return canvas.render()


def _svg_scan(payload: dict) -> str:
    width = 2 * _SVG_SIZE
    canvas = _Canvas(width, _SVG_SIZE)
    alpha_max, beta_max = (parse_complex(s) for s in payload["argmax"])
    alpha_min, beta_min = (parse_complex(s) for s in payload["argmin"])

    half = _SVG_SIZE
    for offset, pts, title in (
        (0, (alpha_max, alpha_min), "alpha plane"),
        (half, (beta_max, beta_min), "beta plane"),
    ):
        plane = _PlaneMap(list(pts), half, _SVG_SIZE)
        for z, color, label in zip(pts, ("#d62728", "#1f77b4"), ("max", "min")):
            x, y = plane.xy(z)
            canvas.circle(offset + x, y, 4.0, color)
            canvas.text(offset + x + 6, y, label, size=10)
        canvas.rect(offset + _SVG_PAD, _SVG_PAD, half - 2 * _SVG_PAD,
                    _SVG_SIZE - 2 * _SVG_PAD, "none", stroke="black")
        canvas.text(offset + _SVG_PAD, _SVG_PAD - 10, title)
    canvas.text(_SVG_PAD, _SVG_SIZE - 10,
                f"max={payload['max_value']!r} min={payload['min_value']!r}",
                size=10)
    return canvas.render()
