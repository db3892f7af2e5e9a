"""Compact textual graph specifiers such as ``path:4`` or ``product:star:3∘path:7``."""

from __future__ import annotations

from pathlib import Path

from .errors import BadParams, MalformedInput
from .graph import Format, Graph, generate_family, paw, parse_graph
from .product import ProductGraph, lex_product

FAMILY_ALIASES = {
    "path": "path",
    "cycle": "cycle",
    "complete": "complete",
    "star": "star",
    "cbip": "complete_bipartite",
    "complete_bipartite": "complete_bipartite",
}
PRODUCT_SEPARATORS = ("∘", " o ", "*")


def diamond() -> Graph:
    """K_4 minus an edge; vertices 0 and 1 dominate."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


NAMED = {"paw": paw, "diamond": diamond}


def build(spec: str) -> Graph | ProductGraph:
    """Graph or product described by ``spec``.

    Accepted forms: ``path:n``, ``cycle:n``, ``complete:n``, ``star:k``,
    ``cbip:a,b``, ``paw``, ``diamond``, ``file:PATH[,format]`` and
    ``product:A∘B`` (also ``A*B``).
    """
    spec = spec.strip()
    if spec.startswith("product:"):
        body = spec[len("product:"):]
        for sep in PRODUCT_SEPARATORS:
            if sep in body:
                left, right = body.split(sep, 1)
                return lex_product(build_graph(left), build_graph(right))
        raise MalformedInput(f"product specifier needs two factors: {spec!r}")
    if spec in NAMED:
        return NAMED[spec]()
    if spec.startswith("file:"):
        rest = spec[len("file:"):]
        path, _, fmt = rest.partition(",")
        fmt = fmt or _guess_format(path)
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise MalformedInput(f"cannot read {path!r}: {exc}") from exc
        return parse_graph(data, fmt)
    family, _, params = spec.partition(":")
    if family not in FAMILY_ALIASES:
        raise MalformedInput(f"unknown graph specifier {spec!r}")
    args = [p for p in params.split(",") if p] if params else []
    try:
        return generate_family(FAMILY_ALIASES[family], *[int(a) for a in args])
    except ValueError as exc:
        raise BadParams(f"bad parameters in {spec!r}") from exc


def build_graph(spec: str) -> Graph:
    """Like :func:`build` but always returns a plain :class:`Graph`."""
    g = build(spec)
    return g.base if isinstance(g, ProductGraph) else g


def product_spec(g: str, h: str) -> str:
    return f"product:{g}∘{h}"


def _guess_format(path: str) -> Format:
    if path.endswith(".json"):
        return Format.JSON
    if path.endswith((".g6", ".graph6")):
        return Format.GRAPH6
    return Format.EDGELIST
