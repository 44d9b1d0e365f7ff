"""Deterministic DOT and TikZ emitters for the three diagram kinds.

Vertices sit on the unit circle at angles 2*pi*(k-1)/n; chords are drawn as
straight segments with a mid-arrow (plain diagrams), multiplicity labels
(multiplicity diagrams) or filled/hollow vertices (coloured diagrams).
TikZ output compiles standalone.
"""

from __future__ import annotations

import math
from typing import Union

from .diagrams import Diagram
from .errors import DomainError
from .uncross import AmaExtDiagram, TamaDiagram

Renderable = Union[Diagram, TamaDiagram, AmaExtDiagram]


def _coords(n: int, k: int, radius: float = 1.0):
    angle = 2 * math.pi * (k - 1) / n
    return round(radius * math.cos(angle), 4), round(radius * math.sin(angle), 4)


def emit_dot(obj: Renderable) -> str:
    lines = ["graph diagram {", "  layout=neato;", "  node [shape=circle, fontsize=10];"]
    n = obj.n
    black = getattr(obj, "black", frozenset())
    for k in range(1, n + 1):
        x, y = _coords(n, k)
        style = ' style=filled fillcolor=black fontcolor=white' if k in black else ""
        lines.append(f'  v{k} [pos="{x},{y}!"{style}];')
    if isinstance(obj, Diagram):
        for i, j in obj.chords:
            lines.append(f"  v{i} -- v{j} [dir=forward];")
    else:
        for (i, j), m in obj.chords:
            label = f' [label="{m}"]' if m != 1 else ""
            lines.append(f"  v{i} -- v{j}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TIKZ_PREAMBLE = r"""\documentclass[tikz]{standalone}
\usetikzlibrary{decorations.markings}
\begin{document}
\begin{tikzpicture}[
  scale=1.2,
  every node/.style={circle, fill=black, inner sep=1pt},
  midarrow/.style={
    thick,
    postaction={decorate},
    decoration={markings, mark=at position 0.5 with {\arrow{>}}}
  }
]
"""


def emit_tikz(obj: Renderable) -> str:
    n = obj.n
    out = [_TIKZ_PREAMBLE]
    for k in range(1, n + 1):
        out.append(
            f"  \\node (v{k}) at ({{360/{n} * ({k} - 1)}}:1) {{}};\n"
            f"  \\node[draw=none, fill=none] at ({{360/{n} * ({k} - 1)}}:1.2) {{$v_{{{k}}}$}};\n"
        )
    if isinstance(obj, Diagram):
        for i, j in obj.chords:
            out.append(f"  \\draw[midarrow] (v{i}) -- (v{j});\n")
    else:
        for (i, j), m in obj.chords:
            label = f" node[draw=none,fill=none,midway,above] {{${m}$}}" if m != 1 else ""
            out.append(f"  \\draw[midarrow] (v{i}) -- (v{j}){label};\n")
        black = getattr(obj, "black", None)
        if black is not None:
            for k in range(1, n + 1):
                fill = "black" if k in black else "white"
                out.append(
                    f"  \\filldraw[color=black, fill={fill}] "
                    f"({{360/{n} * ({k} - 1)}}:1) circle (2pt);\n"
                )
    out.append("\\end{tikzpicture}\n\\end{document}\n")
    return "".join(out)


def emit_diagram(obj: Renderable, fmt: str) -> str:
    if fmt == "dot":
        return emit_dot(obj)
    if fmt == "tikz":
        return emit_tikz(obj)
    raise DomainError(f"unknown diagram format {fmt!r}")


def parse_any_diagram(text: str) -> Renderable:
    """Dispatch on the text-form prefix: D[...], T[...] or AE[...]."""
    from .diagrams import parse_diagram
    from .uncross import parse_ama_ext_diagram, parse_tama_diagram

    stripped = text.lstrip()
    if stripped.startswith("D["):
        return parse_diagram(text)
    if stripped.startswith("T["):
        return parse_tama_diagram(text)
    if stripped.startswith("AE["):
        return parse_ama_ext_diagram(text)
    raise DomainError("diagram text must start with D[, T[ or AE[")
