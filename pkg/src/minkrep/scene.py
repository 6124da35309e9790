"""JSON scene files: states built from framed rectangles, and named group elements.

Schema::

    {
      "n_components": N,
      "config": {"h_hat": 1.0, "p_hat": 0.5},
      "states": [
        {"name": "v",
         "terms": [{"name": "sq",                        # optional
                    "origin": [4], "span_u": [4], "span_v": [4],
                    "polygon": [[s, t], ...],            # optional, default unit square
                    "frame": {"f0": [4], "f1": [4]} | "standard",
                    "fields": ["expr", ...]}]}           # N strings
      ],
      "transforms": [
        {"name": "g", "translation": [4],                # translation optional
         "sl2c": [[re, im], [re, im], [re, im], [re, im]]   # a, b, c, d
         | "boost": {"axis": k, "zeta": z}
         | "rotation": {"axis": k, "theta": t}}
      ]
    }

Terms are addressed by their ``name`` or as ``state/index``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .fields import FieldSection, FieldSyntaxError
from .geometry import ConvexRegion, Chart, Frame, GeometryError, RectSurface, standard_frame
from .hilbert import StateVector, Term
from .lorentz import SL2C, InhomogeneousElement, LorentzError, four_vector, spinor_boost, spinor_rotation
from .representation import RepConfig

UNIT_SQUARE = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]


class SceneError(ValueError):
    pass


@dataclass
class RawTerm:
    label: str
    origin: np.ndarray
    span_u: np.ndarray
    span_v: np.ndarray
    polygon: list
    frame: object
    fields: list

    def surface(self):
        rect = RectSurface(self.origin, self.span_u, self.span_v)
        if self.polygon == UNIT_SQUARE:
            return rect
        return ConvexRegion(rect.chart, np.asarray(self.polygon, dtype=float))

    def build(self, n: int) -> Term:
        try:
            surface = self.surface()
            if self.frame == "standard":
                frame = standard_frame(RectSurface(self.origin, self.span_u, self.span_v))
            else:
                frame = Frame(self.frame["f0"], self.frame["f1"])
            if len(self.fields) != n:
                raise SceneError(f"term {self.label}: expected {n} fields, got {len(self.fields)}")
            return Term(surface, FieldSection(tuple(self.fields)), frame)
        except (GeometryError, LorentzError, FieldSyntaxError) as err:
            raise SceneError(f"term {self.label}: {err}") from err


@dataclass
class Scene:
    n: int
    config: RepConfig
    raw_states: dict = field(default_factory=dict)
    transforms: dict = field(default_factory=dict)

    def term(self, name: str) -> RawTerm:
        for state, terms in self.raw_states.items():
            for idx, t in enumerate(terms):
                if name in (t.label, f"{state}/{idx}"):
                    return t
        raise KeyError(name)

    def state(self, name: str) -> StateVector:
        if name not in self.raw_states:
            raise KeyError(name)
        terms = [t.build(self.n) for t in self.raw_states[name]]
        if not terms:
            return StateVector.zero(self.n)
        try:
            return StateVector.from_terms(terms, self.n)
        except GeometryError as err:
            raise SceneError(f"state {name}: {err}") from err

    def transform(self, name: str) -> InhomogeneousElement:
        return self.transforms[name]


def _vec(x, what):
    try:
        return four_vector(x)
    except (LorentzError, TypeError, ValueError) as err:
        raise SceneError(f"{what}: {err}") from err


def _transform(doc: dict) -> InhomogeneousElement:
    kinds = [k for k in ("sl2c", "boost", "rotation") if k in doc]
    if len(kinds) > 1:
        raise SceneError(f"transform {doc.get('name')}: give only one of sl2c/boost/rotation")
    a = _vec(doc.get("translation", [0, 0, 0, 0]), f"transform {doc.get('name')} translation")
    try:
        if not kinds:
            A = SL2C.identity()
        elif kinds[0] == "sl2c":
            entries = [complex(re, im) for re, im in doc["sl2c"]]
            if len(entries) != 4:
                raise SceneError("sl2c needs 4 entries")
            A = SL2C(*entries)
        elif kinds[0] == "boost":
            A = spinor_boost(int(doc["boost"]["axis"]), float(doc["boost"]["zeta"]))
        else:
            A = spinor_rotation(int(doc["rotation"]["axis"]), float(doc["rotation"]["theta"]))
    except (LorentzError, KeyError, TypeError, ValueError) as err:
        raise SceneError(f"transform {doc.get('name')}: {err}") from err
    return InhomogeneousElement(a, A)


def parse_scene(doc: dict) -> Scene:
    try:
        n = int(doc["n_components"])
    except (KeyError, TypeError, ValueError):
        raise SceneError("scene needs an integer n_components") from None
    if n < 1:
        raise SceneError("n_components must be positive")
    cfg_doc = doc.get("config", {})
    config = RepConfig(float(cfg_doc.get("h_hat", 1.0)), float(cfg_doc.get("p_hat", 0.5)))
    scene = Scene(n, config)
    labels = set()
    for s in doc.get("states", []):
        name = s.get("name")
        if not name or name in scene.raw_states:
            raise SceneError(f"state names must be present and unique ({name!r})")
        terms = []
        for idx, t in enumerate(s.get("terms", [])):
            label = t.get("name", f"{name}/{idx}")
            if label in labels:
                raise SceneError(f"duplicate term name {label!r}")
            labels.add(label)
            terms.append(RawTerm(
                label,
                _vec(t.get("origin"), f"{label} origin"),
                _vec(t.get("span_u"), f"{label} span_u"),
                _vec(t.get("span_v"), f"{label} span_v"),
                [list(map(float, p)) for p in t.get("polygon", UNIT_SQUARE)],
                t.get("frame", "standard"),
                list(t.get("fields", [])),
            ))
            # also addressable as state/index
            labels.add(f"{name}/{idx}")
        scene.raw_states[name] = terms
    for tdoc in doc.get("transforms", []):
        name = tdoc.get("name")
        if not name or name in scene.transforms:
            raise SceneError(f"transform names must be present and unique ({name!r})")
        scene.transforms[name] = _transform(tdoc)
    return scene


def load_scene(path) -> Scene:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise SceneError(f"invalid JSON: {err}") from err
    return parse_scene(doc)


def term_to_doc(term: Term, name: str | None = None) -> dict:
    chart: Chart = term.piece.chart
    doc = {}
    if name:
        doc["name"] = name
    doc.update({
        "origin": chart.origin.tolist(),
        "span_u": chart.u.tolist(),
        "span_v": chart.v.tolist(),
    })
    polygon = np.asarray(term.piece.polygon).tolist()
    if polygon != UNIT_SQUARE:
        doc["polygon"] = polygon
    doc["frame"] = {"f0": term.frame.f0.tolist(), "f1": term.frame.f1.tolist()}
    doc["fields"] = term.section.texts()
    return doc


def state_to_doc(name: str, v: StateVector) -> dict:
    return {"name": name, "terms": [term_to_doc(t) for t in v.terms]}
