"""Loading and validating fixture files.

A fixture is one JSON document::

    schema_version   int, currently 1
    name, description
    field            {"p": prime}
    algebra          structure constants and declared modules   (or)
    category         spectroid, shift and cone kind             (or neither: zero category)
    xi               name -> proper class spec
    subcategories    name -> list of indecomposable labels
    hovey_triples    optional list of {"xi", "C", "F", "W"} naming subcategories
    bounds           {"B": int, "budget": int}
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .addcat import CategoryPresentation
from .cotorsion import Subcategory
from .errors import ValidationError
from .frobenius import AlgebraPresentation, SemisimpleBackend, StableModuleBackend
from .proper import ProperClass, make_class
from .tricat import TriangulatedBackend

SCHEMA_VERSION = 1
FIXTURE_DIR_ENV = "TRIMODEL_FIXTURES"


@dataclass
class Fixture:
    name: str
    backend: TriangulatedBackend
    xi_specs: dict
    subcategories: dict[str, Subcategory]
    hovey_triples: list[dict] = field(default_factory=list)
    bound: int = 2
    budget: int = 1 << 20
    source: str = ""
    _classes: dict = field(default_factory=dict)

    def xi(self, name: str) -> ProperClass:
        if name not in self.xi_specs:
            raise ValidationError(f"fixture {self.name} has no proper class named {name!r}")
        if name not in self._classes:
            self._classes[name] = make_class(self.backend, self.xi_specs[name], name)
        return self._classes[name]

    def subcategory(self, name: str) -> Subcategory:
        if name not in self.subcategories:
            raise ValidationError(f"fixture {self.name} has no subcategory named {name!r}")
        return self.subcategories[name]

    def subcategory_name(self, s: Subcategory) -> str:
        for k, v in self.subcategories.items():
            if v == s:
                return k
        return "{" + ",".join(s.labels(self.backend.cat)) + "}"


def resolve_path(path: str | os.PathLike) -> Path:
    """Plain paths win; bare names fall back to the env directory, then the shipped fixtures."""
    p = Path(path)
    if p.is_file():
        return p
    names = [p.name] if p.suffix else [p.name, p.name + ".json", p.name.lower() + ".json"]
    dirs = []
    if os.environ.get(FIXTURE_DIR_ENV):
        dirs.append(Path(os.environ[FIXTURE_DIR_ENV]))
    dirs.append(Path(str(resources.files("trimodel") / "fixtures")))
    for d in dirs:
        for n in names:
            if (d / n).is_file():
                return d / n
    raise FileNotFoundError(f"fixture {path} not found")


def load_fixture(path: str | os.PathLike) -> Fixture:
    real = resolve_path(path)
    try:
        doc = json.loads(real.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"fixture is not valid JSON: {exc}") from exc
    fx = fixture_from_dict(doc)
    fx.source = real.name
    return fx


def fixture_from_dict(doc: dict) -> Fixture:
    if not isinstance(doc, dict):
        raise ValidationError("fixture must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {version}")
    p = int(doc.get("field", {}).get("p", 2))
    bounds = doc.get("bounds", {})
    bound = int(bounds.get("B", 2))
    budget = int(bounds.get("budget", 1 << 20))
    if "algebra" in doc and "category" in doc:
        raise ValidationError("fixture must have an algebra block or a category block, not both")
    if "algebra" in doc:
        be = _algebra_backend(p, doc["algebra"], bound, budget)
    elif "category" in doc:
        be = _category_backend(p, doc["category"], bound, budget)
    else:
        be = SemisimpleBackend(p, [], bound=bound, budget=budget)
    cat = be.cat
    subs = {}
    for name, labels in doc.get("subcategories", {}).items():
        try:
            subs[name] = Subcategory.of(cat.index_of(lab) for lab in labels)
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"subcategory {name} names an unknown indecomposable: {exc}") from exc
    xi_specs = dict(doc.get("xi", {}))
    for name, spec in xi_specs.items():
        if spec.get("kind") not in ("all", "split", "cohomological", "explicit"):
            raise ValidationError(f"proper class {name} has unknown kind {spec.get('kind')!r}")
    triples = list(doc.get("hovey_triples", []))
    for t in triples:
        for key in ("C", "F", "W"):
            if t.get(key) not in subs:
                raise ValidationError(f"Hovey triple refers to unknown subcategory {t.get(key)!r}")
        if t.get("xi") not in xi_specs:
            raise ValidationError(f"Hovey triple refers to unknown proper class {t.get('xi')!r}")
    return Fixture(doc.get("name", "unnamed"), be, xi_specs, subs, triples, bound, budget)


def _algebra_backend(p: int, block: dict, bound: int, budget: int) -> StableModuleBackend:
    try:
        alg = AlgebraPresentation(
            p,
            block["mult"],
            block["unit"],
            [(m["label"], m["actions"]) for m in block["modules"]],
            block.get("generators"),
            block.get("basis"),
        )
    except KeyError as exc:
        raise ValidationError(f"algebra block is missing {exc}") from exc
    return StableModuleBackend(alg, bound, budget)


def _category_backend(p: int, block: dict, bound: int, budget: int) -> SemisimpleBackend:
    try:
        labels = block["indecomposables"]
        comp = {tuple(c["triple"]): c["constants"] for c in block.get("composition", [])}
        cat = CategoryPresentation(p, labels, block["hom_dim"], comp, block["identities"])
        shift = block.get("shift", {})
        hom_maps = {tuple(m["pair"]): m["matrix"] for m in shift.get("hom_maps", [])}
        perm = shift.get("perm")
    except KeyError as exc:
        raise ValidationError(f"category block is missing {exc}") from exc
    kind = block.get("cone", "semisimple")
    if kind != "semisimple":
        raise ValidationError(f"unsupported cone kind {kind!r}")
    return SemisimpleBackend(p, labels, perm, bound, budget, cat=cat, hom_maps=hom_maps)
