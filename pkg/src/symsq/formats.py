"""JSON readers and writers for complexes, chains and simplicial maps."""
from __future__ import annotations

import json
from pathlib import Path

from .chains import Chain, Ring
from .complex import (SimplicialComplex, SimplicialMap, Subcomplex, build_complex, canonical_simplex,
                      permutation_sign)
from .errors import MalformedInputError


def _read(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path} is not valid JSON: {exc}") from None


def _facet_list(value, what: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise MalformedInputError(f"{what} must be a list of vertex lists")
    out = []
    for f in value:
        if not isinstance(f, list) or not f or not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise MalformedInputError(f"{what} entry {f!r} is not a non-empty list of integers")
        out.append(f)
    return out


def complex_from_json(data) -> tuple[SimplicialComplex, dict[str, Subcomplex]]:
    if not isinstance(data, dict) or "facets" not in data:
        raise MalformedInputError("a complex needs a 'facets' field")
    K = build_complex(_facet_list(data["facets"], "facets"), str(data.get("name", "")))
    subs = {}
    raw = data.get("subcomplexes", {}) or {}
    if not isinstance(raw, dict):
        raise MalformedInputError("'subcomplexes' must map labels to facet lists")
    for label, facets in raw.items():
        subs[label] = Subcomplex.from_facets(K, _facet_list(facets, f"subcomplex {label!r}"))
    return K, subs


def load_complex(path) -> tuple[SimplicialComplex, dict[str, Subcomplex]]:
    return complex_from_json(_read(path))


def complex_to_json(K: SimplicialComplex, subcomplexes: dict[str, Subcomplex] | None = None) -> dict:
    out = {"name": K.name, "facets": [list(f) for f in K.facets()]}
    if subcomplexes:
        out["subcomplexes"] = {k: [list(f) for f in S.as_complex().facets()] for k, S in subcomplexes.items()}
    return out


def chain_from_json(data) -> Chain:
    if not isinstance(data, dict) or not {"degree", "terms"} <= data.keys():
        raise MalformedInputError("a chain needs 'degree' and 'terms' fields")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 0:
        raise MalformedInputError(f"degree must be a non-negative integer, got {degree!r}")
    ring = Ring.parse(data.get("ring", "Z"))
    terms: dict = {}
    if not isinstance(data["terms"], list):
        raise MalformedInputError("'terms' must be a list of [coefficient, simplex] pairs")
    for entry in data["terms"]:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int)
                and isinstance(entry[1], list)):
            raise MalformedInputError(f"term {entry!r} is not [coefficient, [vertices]]")
        coef, verts = entry
        s = canonical_simplex(verts)
        if len(s) - 1 != degree:
            raise MalformedInputError(f"simplex {verts} does not have degree {degree}")
        # an unsorted vertex list denotes the simplex with its permutation sign
        terms[s] = terms.get(s, 0) + coef * permutation_sign(verts)
    return Chain(degree, terms, ring)


def load_chain(path) -> Chain:
    return chain_from_json(_read(path))


def chain_to_json(chain: Chain) -> dict:
    terms = []
    for cell, c in chain:
        terms.append([c, cell_json(cell)])
    return {"degree": chain.degree, "ring": chain.ring.value, "terms": terms}


def map_from_json(data) -> tuple[SimplicialMap, Subcomplex | None, Subcomplex | None]:
    """A map file holds both complexes inline plus the vertex assignment.

    ``{"domain": complex, "codomain": complex, "vertex_map": {"0": 3, ...},
    "domain_sub": label, "codomain_sub": label}``; the labels are optional.
    """
    if not isinstance(data, dict) or not {"domain", "codomain", "vertex_map"} <= data.keys():
        raise MalformedInputError("a map needs 'domain', 'codomain' and 'vertex_map' fields")
    dom, dom_subs = complex_from_json(data["domain"])
    cod, cod_subs = complex_from_json(data["codomain"])
    raw = data["vertex_map"]
    try:
        vmap = {int(k): int(v) for k, v in (raw.items() if isinstance(raw, dict) else raw)}
    except (TypeError, ValueError):
        raise MalformedInputError("'vertex_map' must map vertex ids to vertex ids") from None
    f = SimplicialMap(dom, cod, vmap)
    return f, _label(dom_subs, data.get("domain_sub")), _label(cod_subs, data.get("codomain_sub"))


def _label(subs: dict, label):
    if label is None:
        return None
    if label not in subs:
        raise MalformedInputError(f"unknown subcomplex label {label!r}")
    return subs[label]


def load_map(path):
    return map_from_json(_read(path))


def map_to_json(f: SimplicialMap) -> dict:
    return {"domain": complex_to_json(f.domain), "codomain": complex_to_json(f.codomain),
            "vertex_map": {str(k): v for k, v in sorted(f.vertex_map.items())}}


def cell_json(cell):
    """Simplex as a vertex list; tensor cell as a list of vertex lists."""
    if cell and isinstance(cell[0], tuple):
        return [list(s) for s in cell]
    return list(cell)
