# catbench/commands.py

"""One handler per subcommand, shared by the command line and the HTTP service.

A handler receives already-parsed inputs keyed by role and returns a Report:
the canonical text printed to the user, a JSON-ready `data` mapping and
whether the mathematical answer was "some" or "none". Handlers only call the
core modules; they do no mathematics of their own.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from . import cauchy, elements, ends, kan, profunctors
from .catalog import random_category
from .dot import cone_to_dot, emit_dot
from .errors import BaseMismatch, UnknownCommand, UnresolvedReference
from .fincat import (
    FinCategory,
    FunctorData,
    SetFunctor,
    Variance,
    WeightedDiagram,
    extend,
    hom_functor,
    identity_functor,
    opposite,
    render,
    validate_category,
)
from .search import is_fully_faithful
from .serialization import Parsed, kind_of, serialize, to_document

logger = logging.getLogger(__name__)


@dataclass
class Report:
    text: str
    data: Dict[str, Any] = field(default_factory=dict)
    found: bool = True


@dataclass
class Request:
    inputs: Dict[str, Parsed] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    cap: Optional[int] = None

    def get(self, role: str) -> Parsed:
        try:
            return self.inputs[role]
        except KeyError:
            raise UnresolvedReference(role, "command inputs") from None

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name, default)
        if value is None:
            raise UnresolvedReference(name, "command options")
        return value

    def category(self) -> FinCategory:
        value = self.get("category")
        if isinstance(value, FinCategory):
            return value
        raise BaseMismatch(f"expected a category, got a {kind_of(value).value}", "category")

    def variance(self) -> Variance:
        return Variance(self.options.get("variance") or "covariant")

    def functor(self, role: str = "functor") -> SetFunctor:
        """A set functor input, or hom(X, −) / hom(−, X) built from `--hom`."""
        hom_option = "hom" if role == "functor" else f"hom_{role}"
        if self.options.get(hom_option) is not None and role not in self.inputs:
            variance = Variance.CONTRAVARIANT if role == "presheaf" else self.variance()
            return hom_functor(self.category(), self.options[hom_option], variance)
        value = self.get(role)
        if isinstance(value, SetFunctor):
            return value
        raise BaseMismatch(f"{role} must be a set functor, got a {kind_of(value).value}", role)

    def idempotent(self) -> cauchy.Idempotent:
        return cauchy.idempotent(self.category(), self.option("idempotent"))


Handler = Callable[[Request], Report]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    run: Handler


COMMANDS: Dict[str, Command] = {}


def command(name: str, help: str):
    def register(fn: Handler) -> Handler:
        COMMANDS[name] = Command(name, help, fn)
        return fn

    return register


def run(name: str, request: Request) -> Report:
    try:
        cmd = COMMANDS[name]
    except KeyError:
        raise UnknownCommand(f"unknown command {name!r}", name) from None
    logger.info(f"running {name}")
    return cmd.run(request)


def render_report(name: str, report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        payload = {"command": name, "found": report.found, "data": report.data, "text": report.text}
        return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    return report.text if report.text.endswith("\n") else report.text + "\n"


def _sizes(s: SetFunctor) -> str:
    return ", ".join(f"{o}:{len(s.sets[o])}" for o in s.base.objects)


def _classes(names) -> str:
    return ", ".join(f"[{render(n)}]" for n in names)


# ---------------------------------------------------------------------------
# fincat-core
# ---------------------------------------------------------------------------


@command("validate", "check a document against its laws")
def validate(req: Request) -> Report:
    value = req.get("document")
    if isinstance(value, FinCategory):
        report = validate_category(value)
        return Report(report.message, {"ok": report.ok, "law": report.law}, report.ok)
    kind = kind_of(value).value
    if isinstance(value, SetFunctor):
        return Report(f"ok: {value.variance.value} {kind} on {value.base.label} ({_sizes(value)})", {"ok": True})
    return Report(f"ok: {kind}", {"ok": True})


@command("opposite", "the opposite category")
def opposite_cmd(req: Request) -> Report:
    op = opposite(req.category())
    return Report(serialize(op), to_document(op))


@command("hom", "the hom functor hom(X,-) or presheaf hom(-,X)")
def hom_cmd(req: Request) -> Report:
    s = hom_functor(req.category(), req.option("object"), req.variance())
    return Report(serialize(s), to_document(s))


@command("extend", "add a virtual object for a set functor or presheaf")
def extend_cmd(req: Request) -> Report:
    ext = extend(req.category(), req.functor())
    lines = [f"extended: {ext.category.summary()}, {len(ext.virtual)} virtual arrows"]
    lines += [f"  {src} -> {dst}: {render(x)}" for src, dst, x in ext.virtual.values()]
    return Report("\n".join(lines), {"objects": list(ext.category.objects), "virtual": sorted(ext.virtual)})


@command("nat", "natural transformations between two set functors")
def nat_cmd(req: Request) -> Report:
    f, g = req.functor(), req.functor("functor2")
    check = ends.nat_oracle_check(f, g, req.cap)
    direct, agree = check.direct, check.agree
    lines = [f"{len(direct)} transformations (end agrees: {'yes' if agree else 'no'})"]
    lines += ["  " + "; ".join(f"{o}: {render(a.components[o].as_tuple())}" for o in f.base.objects) for a in direct]
    return Report("\n".join(lines), {"count": len(direct), "end_agrees": agree}, bool(direct))


# ---------------------------------------------------------------------------
# elements-limits
# ---------------------------------------------------------------------------


@command("elements", "the category of elements of a set functor")
def elements_cmd(req: Request) -> Report:
    el = elements.category_of_elements(req.functor(), req.cap)
    text = f"El: {el.category.summary()}\n" + "\n".join(f"  {o}" for o in el.category.objects)
    return Report(text, {"objects": list(el.category.objects), "morphisms": len(el.category.morphisms)})


def _set_limit_report(kind: str, result: elements.LimitResult) -> Report:
    names = [render(x) for x in result.carrier]
    text = f"{kind}: {len(names)} elements" + "".join(f"\n  {n}" for n in names)
    return Report(text, {"size": len(names), "elements": names}, True)


@command("limit", "limit of a Set-valued diagram")
def limit_cmd(req: Request) -> Report:
    return _set_limit_report("limit", elements.limit_set(req.functor(), req.cap))


@command("colimit", "colimit of a Set-valued diagram")
def colimit_cmd(req: Request) -> Report:
    return _set_limit_report("colimit", elements.colimit_set(req.functor(), req.cap))


def _weighted(req: Request) -> WeightedDiagram:
    value = req.get("diagram")
    if not isinstance(value, WeightedDiagram):
        raise BaseMismatch(f"expected a weighted diagram, got a {kind_of(value).value}", "diagram")
    return value


def _c_limit_report(kind: str, wd: WeightedDiagram, result: Optional[elements.LimitResult]) -> Report:
    if result is None:
        return Report(f"no weighted {kind}", {"object": None}, False)
    legs = [f"  ({j},{render(w)}): {result.leg(j, w)}" for j, w in result.positions]
    return Report(f"weighted {kind}: {result.carrier}\n" + "\n".join(legs), {"object": result.carrier})


@command("wlimit", "weighted limit, in Set or in a finite category")
def wlimit_cmd(req: Request) -> Report:
    wd = _weighted(req)
    if wd.set_valued:
        return _set_limit_report("weighted limit", elements.weighted_limit_set(wd, req.cap))
    return _c_limit_report("limit", wd, elements.weighted_limit_in_C(wd, req.cap))


@command("wcolimit", "weighted colimit, in Set or in a finite category")
def wcolimit_cmd(req: Request) -> Report:
    wd = _weighted(req)
    if wd.set_valued:
        return _set_limit_report("weighted colimit", elements.weighted_colimit_set(wd, req.cap))
    return _c_limit_report("colimit", wd, elements.weighted_colimit_in_C(wd, req.cap))


# ---------------------------------------------------------------------------
# ends-coends
# ---------------------------------------------------------------------------


def _bifunctor(req: Request) -> ends.Bifunctor:
    source = req.option("bifunctor", "hom")
    if source == "hom":
        return ends.hom_bifunctor(req.category())
    value = req.get("bifunctor")
    if isinstance(value, ends.Bifunctor):
        return value
    raise BaseMismatch(f"expected a bifunctor, got a {kind_of(value).value}", "bifunctor")


@command("end", "end of a bifunctor (hom, or a profunctor on one category)")
def end_cmd(req: Request) -> Report:
    result = ends.end_of(_bifunctor(req), req.cap)
    names = [render(t) for t in result.carrier]
    text = f"{len(names)} elements" + "".join(f"\n  {n}" for n in names)
    return Report(text, {"size": len(names), "elements": names}, bool(names))


def _coend_name(c: FinCategory, cls) -> str:
    j, x = cls
    return render(x) if len(c.objects) == 1 else f"{j}:{render(x)}"


@command("coend", "coend of a bifunctor (hom, or a profunctor on one category)")
def coend_cmd(req: Request) -> Report:
    b = _bifunctor(req)
    result = ends.coend_of(b, req.cap)
    names = [_coend_name(b.base, cls) for cls in result.carrier]
    text = f"{len(names)} classes: " + ", ".join(f"[{n}]" for n in names)
    return Report(text, {"size": len(names), "classes": names}, bool(names))


@command("pairing", "the pairing ⟨P,F⟩ of a presheaf and a functor")
def pairing_cmd(req: Request) -> Report:
    result = ends.pairing(req.functor("presheaf"), req.functor(), req.cap)
    text = f"{len(result)} classes: " + _classes(result.carrier)
    return Report(text, {"size": len(result), "classes": [render(c) for c in result.carrier]}, bool(len(result)))


# ---------------------------------------------------------------------------
# kan
# ---------------------------------------------------------------------------


def _kan(req: Request, right: bool) -> Report:
    along = req.get("along")
    if not isinstance(along, FunctorData):
        raise BaseMismatch("--along must be a functor", "along")
    diagram = req.get("diagram")
    if isinstance(diagram, WeightedDiagram):
        diagram = diagram.diagram
    result = (kan.right_kan_pointwise if right else kan.left_kan_pointwise)(diagram, along, req.cap)
    lines = [f"{result.kind} Kan extension along {along.label}: {'total' if result.total else 'partial'}"]
    values = {}
    for k in along.target.objects:
        value = result.values[k]
        if value is None:
            shown = "none"
        elif isinstance(value.carrier, str):
            shown = value.carrier
        else:
            shown = f"{len(value.carrier)} elements"
        values[k] = shown
        lines.append(f"  {k}: {shown}")
    if result.total:
        lines.append(f"unit invertible: {'yes' if kan.unit_is_invertible(result) else 'no'}")
    return Report("\n".join(lines), {"values": values, "missing": list(result.missing)}, result.total)


@command("kan-right", "pointwise right Kan extension")
def kan_right(req: Request) -> Report:
    return _kan(req, right=True)


@command("kan-left", "pointwise left Kan extension")
def kan_left(req: Request) -> Report:
    return _kan(req, right=False)


# ---------------------------------------------------------------------------
# cauchy
# ---------------------------------------------------------------------------


@command("split", "split an idempotent")
def split_cmd(req: Request) -> Report:
    e = req.idempotent()
    s = cauchy.split_idempotent(e)
    if s is None:
        return Report(f"{e.morphism} is not split", {"split": False}, False)
    text = f"{e.morphism} splits through {s.through}: section {s.section}, retraction {s.retraction}"
    return Report(text, {"split": True, "through": s.through, "section": s.section, "retraction": s.retraction})


@command("karoubi", "the Karoubi envelope")
def karoubi_cmd(req: Request) -> Report:
    k = cauchy.karoubi_envelope(req.category(), req.cap)
    kc = k.category
    lines = [f"K({req.category().label}): {kc.summary()}"]
    lines += [f"  {a} -> {b}: {len(kc.hom(a, b))}" for a in kc.objects for b in kc.objects]
    return Report("\n".join(lines), {"objects": list(kc.objects), "morphisms": len(kc.morphisms)})


@command("cauchy-complete", "whether every idempotent splits")
def cauchy_complete_cmd(req: Request) -> Report:
    report = cauchy.is_cauchy_complete(req.category())
    if report.complete:
        return Report("Cauchy complete", {"complete": True, "unsplit": []})
    names = [e.morphism for e in report.unsplit]
    return Report("not Cauchy complete: " + ", ".join(names), {"complete": False, "unsplit": names}, False)


@command("cauchy-point", "the Cauchy point of an idempotent")
def cauchy_point_cmd(req: Request) -> Report:
    pt = cauchy.cauchy_point_from_idempotent(req.idempotent(), req.cap)
    lines = [
        f"point {pt.name}",
        f"  F: {_sizes(pt.functor)}",
        f"  P: {_sizes(pt.presheaf)}",
        f"  ⟨P,F⟩: {len(pt.classes)} classes",
        f"  identity: [{render(pt.identity_class)}]",
    ]
    return Report("\n".join(lines), {"pairing": len(pt.classes), "identity": render(pt.identity_class)})


@command("cauchy-extend", "the extension category of a Cauchy point")
def cauchy_extend_cmd(req: Request) -> Report:
    ext = cauchy.cauchy_extension(cauchy.cauchy_point_from_idempotent(req.idempotent(), req.cap), req.cap)
    lines = [f"extended: {ext.category.summary()}, {len(ext.virtual)} virtual arrows"]
    lines += [f"  {src} -> {dst}: {render(x)}" for src, dst, x in ext.virtual.values()]
    return Report("\n".join(lines), {"objects": list(ext.category.objects), "morphisms": len(ext.category.morphisms)})


@command("realize", "find an object of C standing for a Cauchy point")
def realize_cmd(req: Request) -> Report:
    r = cauchy.realize_cauchy_point(cauchy.cauchy_point_from_idempotent(req.idempotent(), req.cap), req.cap)
    if r.obj is None:
        return Report("not realized", {"object": None}, False)
    return Report(f"realized by {r.obj}", {"object": r.obj})


@command("retract", "exhibit a set functor as a retract of a representable")
def retract_cmd(req: Request) -> Report:
    s = req.functor()
    w = cauchy.retract_of_representable(s, req.cap)
    if w is None:
        return Report("not a retract of a representable", {"retract": False}, False)
    hom = f"hom({w.obj},-)" if s.covariant else f"hom(-,{w.obj})"
    text = f"retract of {hom} via {render(w.element)}, idempotent {w.idempotent.morphism}"
    return Report(text, {"retract": True, "object": w.obj, "idempotent": w.idempotent.morphism})


@command("absolute-weight", "whether a weight is absolute")
def absolute_weight_cmd(req: Request) -> Report:
    if cauchy.is_absolute_weight(req.functor(), req.cap):
        return Report("absolute", {"absolute": True})
    return Report("not absolute", {"absolute": False}, False)


# ---------------------------------------------------------------------------
# profunctor-day
# ---------------------------------------------------------------------------


def _profunctor(req: Request, role: str = "profunctor") -> profunctors.Profunctor:
    value = req.get(role)
    if isinstance(value, profunctors.Profunctor):
        return value
    if isinstance(value, SetFunctor):
        if value.covariant:
            return profunctors.profunctor_from_set_functor(value)
        return profunctors.profunctor_from_presheaf(value)
    raise BaseMismatch(f"{role} must be a profunctor, got a {kind_of(value).value}", role)


@command("collage", "the collage of a profunctor")
def collage_cmd(req: Request) -> Report:
    col = profunctors.collage(_profunctor(req), req.cap)
    lines = [f"collage: {col.category.summary()}, {len(col.heteromorphisms)} heteromorphisms"]
    lines += [f"  {d} -> {c}: {render(x)}" for d, c, x in col.heteromorphisms.values()]
    return Report("\n".join(lines), {"objects": len(col.category.objects), "morphisms": len(col.category.morphisms)})


@command("profcompose", "compose two profunctors")
def profcompose_cmd(req: Request) -> Report:
    composite = profunctors.compose_profunctors(_profunctor(req), _profunctor(req, "profunctor2"), req.cap)
    return Report(serialize(composite), to_document(composite), bool(composite.total_size()))


def _monoidal(req: Request) -> profunctors.StrictMonoidalStructure:
    value = req.get("monoidal")
    if isinstance(value, profunctors.StrictMonoidalStructure):
        return value
    raise BaseMismatch(f"expected a monoidal structure, got a {kind_of(value).value}", "monoidal")


@command("day", "Day convolution of two set functors")
def day_cmd(req: Request) -> Report:
    m = _monoidal(req)
    req.inputs.setdefault("category", m.base)
    result = profunctors.day_convolve(req.functor(), req.functor("functor2"), m, req.cap)
    return Report(f"{result.label}: {_sizes(result)}", {"sizes": dict(zip(m.base.objects, result.size_profile()))})


@command("strong-monoidal", "check that Yoneda is strong monoidal for Day convolution")
def strong_monoidal_cmd(req: Request) -> Report:
    m = _monoidal(req)
    report = profunctors.check_yoneda_strong_monoidal(m, req.variance(), req.cap)
    lines = [f"Yon({a})⊗Yon({b}) ≅ Yon({m.obj(a, b)}): {'yes' if ok else 'no'}" for (a, b), ok in report.pairs]
    lines += [f"unit at {a}: {'yes' if ok else 'no'}" for a, ok in report.units]
    failed = [t for t, ok in report.triples if not ok]
    lines.append(f"associativity: {len(report.triples) - len(failed)}/{len(report.triples)} triples")
    lines.append("strong monoidal" if report.ok else "not strong monoidal")
    return Report("\n".join(lines), {"ok": report.ok, "pairs": len(report.pairs)}, report.ok)


# ---------------------------------------------------------------------------
# DOT and cross-checks
# ---------------------------------------------------------------------------


@command("dot", "DOT text for a category, an extension, a collage or a limit cone")
def dot_cmd(req: Request) -> Report:
    if "profunctor" in req.inputs:
        return Report(emit_dot(profunctors.collage(_profunctor(req), req.cap)))
    if "diagram" in req.inputs:
        wd = _weighted(req)
        result = elements.weighted_limit_in_C(wd, req.cap)
        if result is None:
            return Report("no weighted limit", {}, False)
        return Report(cone_to_dot(wd, result.universal_cone))
    if req.options.get("idempotent") is not None:
        pt = cauchy.cauchy_point_from_idempotent(req.idempotent(), req.cap)
        return Report(emit_dot(cauchy.cauchy_extension(pt, req.cap)))
    if "functor" in req.inputs or req.options.get("hom") is not None:
        return Report(emit_dot(extend(req.category(), req.functor())))
    return Report(emit_dot(req.category()))


def _crosscheck_one(c: FinCategory, cap: Optional[int]) -> Tuple[bool, bool, bool]:
    yoneda = True
    for j in c.objects:
        wd = WeightedDiagram(identity_functor(c), hom_functor(c, j))
        result = elements.weighted_limit_in_C(wd, cap)
        yoneda &= result is not None and c.isomorphic_objects(result.carrier, j)
    x, y = c.objects[0], c.objects[-1]
    f, g = hom_functor(c, x), hom_functor(c, y)
    nat = ends.nat_oracle_check(f, g, cap).agree
    k = cauchy.karoubi_envelope(c, cap)
    karoubi = (
        validate_category(k.category).ok
        and is_fully_faithful(k.embedding())
        and cauchy.is_cauchy_complete(k.category).complete
    )
    return yoneda, nat, karoubi

@command("crosscheck", "run property cross-checks over seeded random categories")
def crosscheck_cmd(req: Request) -> Report:
    seed, count = int(req.option("seed", 0)), int(req.option("count", 10))
    lines, all_ok = [], True
    for s in range(seed, seed + count):
        c = random_category(s)
        yoneda, nat, karoubi = _crosscheck_one(c, req.cap)
        all_ok &= yoneda and nat and karoubi
        checks = (("yoneda", yoneda), ("nat", nat), ("karoubi", karoubi))
        flags = ", ".join(f"{n} {'ok' if ok else 'FAILED'}" for n, ok in checks)
        lines.append(f"seed {s}: {c.summary()}: {flags}")
    return Report("\n".join(lines), {"ok": all_ok, "count": count}, all_ok)


def command_names() -> List[str]:
    return sorted(COMMANDS)


def describe() -> Mapping[str, str]:
    return {name: COMMANDS[name].help for name in command_names()}

