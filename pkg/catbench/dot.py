# catbench/dot.py

"""Graphviz DOT text for categories, extensions, collages and weighted cones.

Base morphisms are solid edges; virtual arrows and heteromorphisms are
dashed; the extra object of an extension (and the tip of a cone drawn as a
virtual object) is a point node. Identities are not drawn. Nodes and edges are
emitted sorted, so the same input always gives the same text.
"""

import json
from typing import Iterable, List, Optional, Tuple, Union

from .fincat import Extension, FinCategory, FunctorData, WeightedCone, WeightedDiagram, render
from .profunctors import Collage

Edge = Tuple[str, str, str, bool]

TEMPLATE = """digraph %s {
  rankdir = "LR" ;
  node [fontname="Helvetica", fontsize=10, shape=oval] ;

  // objects
%s

  // morphisms
%s
}
"""


def _quote(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def graph_to_dot(
    nodes: Iterable[str], edges: Iterable[Edge], points: Iterable[str] = (), name: str = "G"
) -> str:
    """`edges` are (source, target, label, dashed) tuples."""
    points = set(points)
    node_lines = []
    for n in sorted(set(nodes)):
        shape = ", shape=point" if n in points else ""
        node_lines.append(f"  {_quote(n)} [label={_quote(n)}{shape}] ;")
    edge_lines = []
    for src, dst, label, dashed in sorted(set(edges)):
        style = ", style=dashed" if dashed else ""
        edge_lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(label)}{style}] ;")
    return TEMPLATE % (_quote(name), "\n".join(node_lines), "\n".join(edge_lines))


def _base_edges(c: FinCategory, skip: Iterable[str] = ()) -> List[Edge]:
    skip = set(skip)
    return [(m.dom, m.cod, m.name, False) for m in c.morphisms if m.name not in skip and not c.is_identity(m.name)]


def category_to_dot(c: FinCategory) -> str:
    return graph_to_dot(c.objects, _base_edges(c), name=c.label)


def extension_to_dot(ext: Extension) -> str:
    c = ext.category
    edges = _base_edges(c, ext.virtual)
    edges += [(src, dst, render(x), True) for name, (src, dst, x) in ext.virtual.items() if not c.is_identity(name)]
    return graph_to_dot(c.objects, edges, points=[ext.extra], name=c.label)


def collage_to_dot(col: Collage) -> str:
    c = col.category
    edges = _base_edges(c, col.heteromorphisms)
    for name, (d, s, x) in col.heteromorphisms.items():
        edges.append((c.dom(name), c.cod(name), render(x), True))
    return graph_to_dot(c.objects, edges, name=c.label)


def cone_to_dot(wd: WeightedDiagram, cone: WeightedCone, tip: Optional[str] = None) -> str:
    """The image of a C-valued diagram with the cone legs drawn as virtual arrows from the tip."""
    d = wd.diagram
    if not isinstance(d, FunctorData):
        raise TypeError("cone_to_dot draws diagrams into a finite category")
    c = d.target
    apex = tip or f"{cone.tip}*"
    nodes = [d.ob(j) for j in d.source.objects] + [apex]
    edges = [
        (d.ob(g.dom), d.ob(g.cod), d.mor(g.name), False)
        for g in d.source.morphisms
        if not c.is_identity(d.mor(g.name))
    ]
    for (j, w), leg in cone.legs.items():
        edges.append((apex, d.ob(j), f"{leg} @ ({j},{render(w)})", True))
    return graph_to_dot(nodes, edges, points=[apex], name=d.label)


def emit_dot(value: Union[FinCategory, Extension, Collage]) -> str:
    if isinstance(value, Extension):
        return extension_to_dot(value)
    if isinstance(value, Collage):
        return collage_to_dot(value)
    return category_to_dot(value)
