# catbench/serialization.py

"""Workspace documents: parsing into typed values and canonical serialization.

Documents are UTF-8 JSON. Identity morphisms may be left out of composition
tables, functor maps and actions; they are filled in on parsing and never
written. The canonical layout puts one top-level key per line, nested
documents indented below their key, and one member per line for tables.
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Union

from pydantic import TypeAdapter, ValidationError

from .errors import (
    BaseMismatch,
    CategoryLawError,
    DocumentSyntaxError,
    FunctorLawError,
    UnresolvedReference,
    ValidationFailed,
)
from .fincat import (
    Element,
    FinCategory,
    FinFunction,
    FinSet,
    FunctorData,
    SetFunctor,
    WeightedDiagram,
    render,
    validate_category,
)
from .profunctors import Profunctor, StrictMonoidalStructure
from .schemas import (
    CategoryDocument,
    Document,
    DocumentKind,
    FunctorDocument,
    MonoidalDocument,
    ProfunctorDocument,
    SetFunctorDocument,
    WeightedDiagramDocument,
)

logger = logging.getLogger(__name__)

Parsed = Union[FinCategory, FunctorData, SetFunctor, Profunctor, StrictMonoidalStructure, WeightedDiagram]

_document_adapter = TypeAdapter(Document)
_NESTED = {"category", "source", "target", "diagram", "weight"}


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse(text: str) -> Parsed:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    return load_document(raw)


def parse_file(path: Union[str, Path]) -> Parsed:
    logger.debug(f"reading {path}")
    return parse(Path(path).read_text(encoding="utf-8"))


def load_document(raw: Any) -> Parsed:
    """Validate a decoded JSON value against the document schemas and build it."""
    try:
        doc = _document_adapter.validate_python(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise ValidationFailed("schema", *first["loc"], detail=first["msg"]) from None
    return _build(doc)


def _build(doc) -> Parsed:
    if isinstance(doc, CategoryDocument):
        return _category(doc)
    if isinstance(doc, FunctorDocument):
        return _functor(doc)
    if isinstance(doc, SetFunctorDocument):
        return _set_functor(doc)
    if isinstance(doc, ProfunctorDocument):
        return _profunctor(doc)
    if isinstance(doc, MonoidalDocument):
        return _monoidal(doc)
    return _weighted_diagram(doc)


@contextmanager
def _laws(what: str) -> Iterator[None]:
    """Report law violations of a freshly built value as ValidationFailed."""
    try:
        yield
    except (FunctorLawError, BaseMismatch, CategoryLawError) as e:
        raise ValidationFailed(what, *e.witness, detail=str(e)) from None


def _element(raw: Any) -> Element:
    if isinstance(raw, list):
        return tuple(_element(x) for x in raw)
    if isinstance(raw, (str, int)) and not isinstance(raw, bool):
        return raw
    raise ValidationFailed("schema", repr(raw), detail="elements are strings, integers or lists")


def _category(doc: CategoryDocument) -> FinCategory:
    objects = set(doc.objects)
    if len(objects) != len(doc.objects):
        raise ValidationFailed("schema", *doc.objects, detail="repeated object")
    names = {name for name, _, _ in doc.morphisms}
    for name, dom, cod in doc.morphisms:
        for obj in (dom, cod):
            if obj not in objects:
                raise UnresolvedReference(obj, f"morphism {name}")
    for obj, ident in doc.identities.items():
        if obj not in objects:
            raise UnresolvedReference(obj, "identities")
        if ident not in names:
            raise UnresolvedReference(ident, f"identity of {obj}")
    comp = {}
    for g, f, gf in doc.composition:
        for name in (g, f, gf):
            if name not in names:
                raise UnresolvedReference(name, "composition")
        comp[(g, f)] = gf
    ends = {name: (dom, cod) for name, dom, cod in doc.morphisms}
    for obj, ident in doc.identities.items():
        for name, (dom, cod) in ends.items():
            if dom == obj:
                comp.setdefault((name, ident), name)
            if cod == obj:
                comp.setdefault((ident, name), name)
    c = FinCategory.build(doc.objects, doc.morphisms, doc.identities, comp, doc.name)
    report = validate_category(c)
    if not report.ok:
        raise ValidationFailed(report.law, *report.witness, detail=report.message)
    return c


def _lookup(s: FinSet) -> Dict[str, Element]:
    """Elements by their spelling, which must be unique within a set."""
    by_name: Dict[str, Element] = {}
    for x in s:
        name = render(x)
        if name in by_name:
            clash = f"{by_name[name]!r} and {x!r} in {s.label} have the same spelling"
            raise ValidationFailed("schema", name, detail=clash)
        by_name[name] = x
    return by_name


def _finset(elements: Iterable[Element], label: str) -> FinSet:
    s = FinSet.of(elements, label)
    _lookup(s)
    return s


def _function(dom: FinSet, cod: FinSet, table: Mapping[str, Any], where: str) -> FinFunction:
    by_name = _lookup(dom)
    for key in table:
        if key not in by_name:
            raise UnresolvedReference(key, where)
    members = cod.members
    mapping = {}
    for x in dom:
        if render(x) not in table:
            raise ValidationFailed("totality", where, render(x), detail="element has no image")
        image = _element(table[render(x)])
        if image not in members:
            raise UnresolvedReference(render(image), where)
        mapping[x] = image
    return FinFunction(dom, cod, mapping)


def _set_functor(doc: SetFunctorDocument) -> SetFunctor:
    base = _category(doc.category)
    for obj in doc.sets:
        if not base.has_object(obj):
            raise UnresolvedReference(obj, "sets")
    for name in doc.actions:
        if not base.has_morphism(name):
            raise UnresolvedReference(name, "actions")
    missing = [o for o in base.objects if o not in doc.sets]
    if missing:
        raise ValidationFailed("schema", *missing, detail="no set given")
    sets = {o: _finset([_element(x) for x in doc.sets[o]], o) for o in base.objects}
    covariant = doc.variance.value == "covariant"
    actions = {}
    for m in base.morphisms:
        src, dst = (m.dom, m.cod) if covariant else (m.cod, m.dom)
        if base.is_identity(m.name) and m.name not in doc.actions:
            actions[m.name] = FinFunction.identity(sets[src])
            continue
        if m.name not in doc.actions:
            raise ValidationFailed("schema", m.name, detail="no action given")
        actions[m.name] = _function(sets[src], sets[dst], doc.actions[m.name], f"action of {m.name}")
    s = SetFunctor(base, doc.variance, sets, actions, doc.name)
    with _laws("functoriality"):
        s.validate()
    return s


def _functor(doc: FunctorDocument) -> FunctorData:
    source, target = _category(doc.source), _category(doc.target)
    for obj, image in doc.objects.items():
        if not source.has_object(obj):
            raise UnresolvedReference(obj, "objects")
        if not target.has_object(image):
            raise UnresolvedReference(image, f"image of {obj}")
    for name, image in doc.morphisms.items():
        if not source.has_morphism(name):
            raise UnresolvedReference(name, "morphisms")
        if not target.has_morphism(image):
            raise UnresolvedReference(image, f"image of {name}")
    mor_map = dict(doc.morphisms)
    for obj, ident in source.identities.items():
        if obj in doc.objects:
            mor_map.setdefault(ident, target.identities[doc.objects[obj]])
    f = FunctorData(source, target, dict(doc.objects), mor_map, doc.name)
    with _laws("functoriality"):
        f.validate()
    return f


def _profunctor(doc: ProfunctorDocument) -> Profunctor:
    source, target = _category(doc.source), _category(doc.target)
    raw_sets = {}
    for d, c, elements in doc.sets:
        if not target.has_object(d):
            raise UnresolvedReference(d, "sets")
        if not source.has_object(c):
            raise UnresolvedReference(c, "sets")
        raw_sets[(d, c)] = [_element(x) for x in elements]
    sets = {(d, c): _finset(raw_sets.get((d, c), ()), f"({d},{c})") for d in target.objects for c in source.objects}
    left_tables = {}
    for k, c, table in doc.left:
        if not target.has_morphism(k):
            raise UnresolvedReference(k, "left")
        if not source.has_object(c):
            raise UnresolvedReference(c, "left")
        left_tables[(k, c)] = table
    right_tables = {}
    for g, d, table in doc.right:
        if not source.has_morphism(g):
            raise UnresolvedReference(g, "right")
        if not target.has_object(d):
            raise UnresolvedReference(d, "right")
        right_tables[(g, d)] = table
    left, right = {}, {}
    for k in target.morphisms:
        for c in source.objects:
            dom, cod = sets[(k.cod, c)], sets[(k.dom, c)]
            if target.is_identity(k.name) and (k.name, c) not in left_tables:
                left[(k.name, c)] = FinFunction.identity(dom)
            else:
                left[(k.name, c)] = _function(dom, cod, left_tables.get((k.name, c), {}), f"left action of {k.name}")
    for g in source.morphisms:
        for d in target.objects:
            dom, cod = sets[(d, g.dom)], sets[(d, g.cod)]
            if source.is_identity(g.name) and (g.name, d) not in right_tables:
                right[(g.name, d)] = FinFunction.identity(dom)
            else:
                right[(g.name, d)] = _function(dom, cod, right_tables.get((g.name, d), {}), f"right action of {g.name}")
    phi = Profunctor(target, source, sets, left, right, doc.name)
    with _laws("functoriality"):
        phi.validate()
    return phi


def _monoidal(doc: MonoidalDocument) -> StrictMonoidalStructure:
    c = _category(doc.category)
    if not c.has_object(doc.unit):
        raise UnresolvedReference(doc.unit, "unit")
    for a, b, x in doc.tensor_objects:
        for obj in (a, b, x):
            if not c.has_object(obj):
                raise UnresolvedReference(obj, "tensor_objects")
    for f, g, h in doc.tensor_morphisms:
        for name in (f, g, h):
            if not c.has_morphism(name):
                raise UnresolvedReference(name, "tensor_morphisms")
    tensor_obj = {(a, b): x for a, b, x in doc.tensor_objects}
    tensor_mor = {(f, g): h for f, g, h in doc.tensor_morphisms}
    missing = [f"{a}⊗{b}" for a in c.objects for b in c.objects if (a, b) not in tensor_obj]
    missing += [f"{f.name}⊗{g.name}" for f in c.morphisms for g in c.morphisms if (f.name, g.name) not in tensor_mor]
    if missing:
        raise ValidationFailed("schema", *missing[:3], detail="tensor table is incomplete")
    m = StrictMonoidalStructure(c, tensor_obj, tensor_mor, doc.unit, doc.name)
    m.validate()
    return m


def _weighted_diagram(doc: WeightedDiagramDocument) -> WeightedDiagram:
    diagram = _functor(doc.diagram) if isinstance(doc.diagram, FunctorDocument) else _set_functor(doc.diagram)
    wd = WeightedDiagram(diagram, _set_functor(doc.weight), doc.name)
    with _laws("weighted diagram"):
        wd.validate()
    return wd


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _raw(x: Element) -> Any:
    if isinstance(x, tuple):
        return [_raw(y) for y in x]
    return x


def _table(fn: FinFunction) -> Dict[str, Any]:
    return {name: _raw(fn(x)) for name, x in _lookup(fn.dom).items()}


def kind_of(value: Parsed) -> DocumentKind:
    if isinstance(value, FinCategory):
        return DocumentKind.CATEGORY
    if isinstance(value, FunctorData):
        return DocumentKind.FUNCTOR
    if isinstance(value, SetFunctor):
        return DocumentKind.SETFUNCTOR
    if isinstance(value, Profunctor):
        return DocumentKind.PROFUNCTOR
    if isinstance(value, StrictMonoidalStructure):
        return DocumentKind.MONOIDAL
    if isinstance(value, WeightedDiagram):
        return DocumentKind.WEIGHTED_DIAGRAM
    raise TypeError(f"{type(value).__name__} has no document form")


def to_document(value: Parsed) -> Dict[str, Any]:
    kind = kind_of(value)
    if kind is DocumentKind.CATEGORY:
        c = value
        return {
            "kind": kind.value,
            "name": c.name,
            "objects": list(c.objects),
            "morphisms": [[m.name, m.dom, m.cod] for m in c.morphisms],
            "identities": dict(c.identities),
            "composition": [
                [g, f, gf] for (g, f), gf in c.comp.items() if not c.is_identity(g) and not c.is_identity(f)
            ],
        }
    if kind is DocumentKind.FUNCTOR:
        f = value
        return {
            "kind": kind.value,
            "name": f.name,
            "source": to_document(f.source),
            "target": to_document(f.target),
            "objects": {o: f.ob(o) for o in f.source.objects},
            "morphisms": {m.name: f.mor(m.name) for m in f.source.morphisms if not f.source.is_identity(m.name)},
        }
    if kind is DocumentKind.SETFUNCTOR:
        s = value
        return {
            "kind": kind.value,
            "name": s.name,
            "variance": s.variance.value,
            "category": to_document(s.base),
            "sets": {o: [_raw(x) for x in s.sets[o]] for o in s.base.objects},
            "actions": {
                m.name: _table(s.actions[m.name]) for m in s.base.morphisms if not s.base.is_identity(m.name)
            },
        }
    if kind is DocumentKind.PROFUNCTOR:
        p = value
        return {
            "kind": kind.value,
            "name": p.name,
            "source": to_document(p.source),
            "target": to_document(p.target),
            "sets": [[d, c, [_raw(x) for x in p.sets[(d, c)]]] for d in p.contra.objects for c in p.co.objects],
            "left": [
                [k.name, c, _table(p.left[(k.name, c)])]
                for k in p.contra.morphisms
                if not p.contra.is_identity(k.name)
                for c in p.co.objects
            ],
            "right": [
                [g.name, d, _table(p.right[(g.name, d)])]
                for g in p.co.morphisms
                if not p.co.is_identity(g.name)
                for d in p.contra.objects
            ],
        }
    if kind is DocumentKind.MONOIDAL:
        m = value
        return {
            "kind": kind.value,
            "name": m.name,
            "category": to_document(m.base),
            "unit": m.unit,
            "tensor_objects": [[a, b, m.tensor_obj[(a, b)]] for a in m.base.objects for b in m.base.objects],
            "tensor_morphisms": [
                [f.name, g.name, m.tensor_mor[(f.name, g.name)]] for f in m.base.morphisms for g in m.base.morphisms
            ],
        }
    wd = value
    return {
        "kind": kind.value,
        "name": wd.name,
        "diagram": to_document(wd.diagram),
        "weight": to_document(wd.weight),
    }


def _dump(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False)


def _flat(value: Any) -> bool:
    if isinstance(value, dict):
        return all(not isinstance(v, (list, dict)) for v in value.values())
    if isinstance(value, list):
        return all(not isinstance(v, (list, dict)) for v in value)
    return True


def _render(doc: Dict[str, Any], depth: int) -> str:
    pad, inner = "  " * (depth + 1), "  " * (depth + 2)
    lines: List[str] = []
    for key, value in doc.items():
        if key in _NESTED and isinstance(value, dict):
            body = _render(value, depth + 1)
        elif _flat(value):
            body = _dump(value)
        elif isinstance(value, list):
            body = "[\n" + ",\n".join(inner + _dump(v) for v in value) + "\n" + pad + "]"
        else:
            members = [f"{inner}{_dump(k)}: {_dump(v)}" for k, v in value.items()]
            body = "{\n" + ",\n".join(members) + "\n" + pad + "}"
        lines.append(f"{pad}{_dump(key)}: {body}")
    return "{\n" + ",\n".join(lines) + "\n" + "  " * depth + "}"


def serialize(value: Parsed) -> str:
    """The canonical text of a value; parse(serialize(v)) rebuilds v."""
    return _render(to_document(value), 0) + "\n"


def canonical_text(text: str) -> str:
    return serialize(parse(text))
