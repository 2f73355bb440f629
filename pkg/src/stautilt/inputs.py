"""Parsers for the JSON input files: fields, algebras, groups and verification instances."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import structure as st
from .algebra.core import FinDimAlgebra, from_structure_constants, tensor_algebra
from .algebra.quiver import (
    BrauerTreeSpec,
    QuiverPresentation,
    brauer_line,
    brauer_star,
    brauer_tree_algebra,
    from_quiver,
    linear_quiver,
    truncated_polynomial,
)
from .errors import InvalidInput
from .exactla.field import GF
from .grouprep import groups as gr
from .grouprep.modules import block_of, group_module, kG, regular_group_module, trivial_module
from .grouprep.verify import Instance
from .modrep.presentation import projective, simple

DEFAULT_NILPOTENCY_CAP = 64


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InvalidInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def _resolve(obj, base: Path | None):
    """Nested specs may be given inline or as a path to another file."""
    if isinstance(obj, str):
        p = Path(obj)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p), p.parent
    return obj, base


def _require(spec: dict, key: str, what: str):
    if not isinstance(spec, dict) or key not in spec:
        raise InvalidInput(f"{what} needs a {key!r} entry")
    return spec[key]


# ----------------------------------------------------------------------
# fields


def parse_field(spec, extend: int | None = None) -> GF:
    """Field spec, optionally replaced by the extension of the given absolute degree."""
    if isinstance(spec, int):
        spec = {"p": spec}
    F = GF.from_spec(spec)
    if extend is None or extend == F.m:
        return F
    if extend % F.m:
        raise InvalidInput(f"degree {extend} is not a multiple of the base degree {F.m}")
    if F.m != 1:
        raise InvalidInput("only prime base fields can be extended from the command line")
    return GF(F.p, extend)


# ----------------------------------------------------------------------
# groups


def parse_group(spec, base: Path | None = None) -> gr.FiniteGroup:
    spec, base = _resolve(spec, base)
    kind = _require(spec, "kind", "group spec")
    if kind == "permutation":
        return gr.group_from_permutations(_require(spec, "generators", "permutation group"))
    if kind == "table":
        return gr.group_from_table(_require(spec, "table", "table group"))
    if kind == "cyclic":
        return gr.cyclic(int(_require(spec, "n", "cyclic group")))
    if kind == "dihedral":
        return gr.dihedral(int(_require(spec, "n", "dihedral group")))
    if kind == "symmetric":
        return gr.symmetric(int(_require(spec, "n", "symmetric group")))
    if kind == "direct":
        factors = _require(spec, "factors", "direct product")
        if len(factors) != 2:
            raise InvalidInput("direct products take exactly two factors")
        return gr.direct_product(parse_group(factors[0], base), parse_group(factors[1], base))
    if kind == "semidirect":
        b = parse_group(_require(spec, "base", "semidirect product"), base)
        q = parse_group(_require(spec, "acting", "semidirect product"), base)
        action = []
        for img in _require(spec, "action", "semidirect product"):
            if isinstance(img, dict) and "inner" in img:
                action.append(gr.inner_automorphism(b, int(img["inner"])))
            else:
                action.append([int(x) for x in img])
        return gr.semidirect(b, q, action)
    raise InvalidInput(f"unknown group kind {kind!r}")


def parse_subgroup(spec, G: gr.FiniteGroup) -> gr.Subgroup:
    """{"part": name} | {"generators": [...]} | {"elements": [...]} | {"order": n} (the cyclic subgroup of an element of order n)."""
    if not isinstance(spec, dict):
        raise InvalidInput("subgroup spec must be an object")
    if "part" in spec:
        try:
            return G.parts[spec["part"]]
        except KeyError:
            raise InvalidInput(f"group has no part {spec['part']!r}; known: {sorted(G.parts)}") from None
    if "generators" in spec:
        return G.subgroup([int(x) for x in spec["generators"]])
    if "elements" in spec:
        return G.subgroup_from_elements([int(x) for x in spec["elements"]])
    if "order" in spec:
        n = int(spec["order"])
        for x in range(G.order):
            if G.element_order(x) == n:
                return G.subgroup([x])
        raise InvalidInput(f"no element of order {n}")
    raise InvalidInput("subgroup spec needs 'part', 'generators', 'elements' or 'order'")


# ----------------------------------------------------------------------
# algebras


def _brauer_spec(spec: dict) -> BrauerTreeSpec:
    mult = int(spec.get("multiplicity", 1))
    shape = spec.get("shape")
    if shape == "line":
        return brauer_line(int(_require(spec, "e", "Brauer line")), mult, spec.get("exceptional"))
    if shape == "star":
        return brauer_star(int(_require(spec, "e", "Brauer star")), mult, bool(spec.get("exceptional_center", True)))
    edges = _require(spec, "edges", "Brauer tree")
    return BrauerTreeSpec(
        tuple(tuple(e) for e in edges),
        {str(k): list(v) for k, v in spec.get("orders", {}).items()},
        spec.get("exceptional_vertex"),
        mult,
    )


def parse_algebra(spec, extend: int | None = None, base: Path | None = None) -> FinDimAlgebra:
    """Build an algebra from its file spec; group algebras are cut to a block and condensed."""
    spec, base = _resolve(spec, base)
    kind = _require(spec, "kind", "algebra spec")
    F = parse_field(_require(spec, "field", "algebra spec"), extend)
    if kind == "quiver":
        q = QuiverPresentation(
            tuple(_require(spec, "vertices", "quiver")),
            tuple(tuple(a) for a in spec.get("arrows", [])),
            tuple(tuple((int(c), tuple(path)) for c, path in rel) for rel in spec.get("relations", [])),
        )
        return from_quiver(q, F, int(spec.get("nilpotency_cap", DEFAULT_NILPOTENCY_CAP)))
    if kind == "brauer_tree":
        return brauer_tree_algebra(_brauer_spec(spec), F)
    if kind == "truncated_polynomial":
        return truncated_polynomial(F, int(_require(spec, "m", "truncated polynomial")))
    if kind == "linear":
        return linear_quiver(F, int(_require(spec, "n", "linear quiver")))
    if kind == "structure_constants":
        if extend is not None and F.m != 1:
            raise InvalidInput("structure constants over an extension field cannot be re-extended")
        return from_structure_constants(F, _require(spec, "mult", "structure constants"), _require(spec, "unit", "structure constants"), spec.get("labels"))
    if kind == "group":
        G = parse_group(_require(spec, "group", "group algebra"), base)
        A = kG(G, F)
        if spec.get("block") is None and not spec.get("whole", False):
            return st.condense_basic(A).basic if spec.get("basic", True) else A
        if spec.get("whole", False):
            B = A
        else:
            blocks = st.central_blocks(A)
            i = int(spec["block"])
            if not 0 <= i < len(blocks):
                raise InvalidInput(f"block index {i} out of range 0..{len(blocks) - 1}")
            B = block_of(A, blocks[i])
        return st.condense_basic(B).basic if spec.get("basic", True) else B
    if kind == "tensor":
        factors = _require(spec, "factors", "tensor algebra")
        if len(factors) != 2:
            raise InvalidInput("tensor algebras take exactly two factors")
        a = parse_algebra(_with_field(factors[0], spec), extend, base)
        b = parse_algebra(_with_field(factors[1], spec), extend, base)
        T = tensor_algebra(a, b)
        return st.condense_basic(T).basic if spec.get("basic", True) else T
    raise InvalidInput(f"unknown algebra kind {kind!r}")


def _with_field(factor, parent: dict):
    if isinstance(factor, dict) and "field" not in factor:
        return {**factor, "field": parent["field"]}
    return factor


# ----------------------------------------------------------------------
# verification instances


def parse_module(spec, grp: gr.FiniteGroup, F: GF):
    """"trivial" | "regular" | {"simple": i} | {"projective": i} | {"generators": [matrices]} (labels 1-based)."""
    A = kG(grp, F)
    if spec == "trivial":
        return trivial_module(grp, F)
    if spec == "regular":
        return regular_group_module(grp, F)
    if isinstance(spec, dict):
        if "simple" in spec:
            return simple(A, _label(spec["simple"], A))
        if "projective" in spec:
            return projective(A, _label(spec["projective"], A))
        if "generators" in spec:
            return group_module(grp, F, np.array(spec["generators"], dtype=np.int64))
    raise InvalidInput(f"unknown module spec {spec!r}")


def _label(i, A) -> int:
    n = st.num_simples(A)
    i = int(i)
    if not 1 <= i <= n:
        raise InvalidInput(f"module label {i} out of range 1..{n}")
    return i - 1


def parse_instance(spec, extend: int | None = None, base: Path | None = None, budget: int | None = None, threads: int = 1) -> Instance:
    spec, base = _resolve(spec, base)
    G = parse_group(_require(spec, "group", "instance"), base)
    F = parse_field(_require(spec, "field", "instance"), extend)
    H = parse_subgroup(spec["subgroup"], G) if "subgroup" in spec else None
    K = parse_subgroup(spec["other"], G) if "other" in spec else None
    P = parse_group(spec["p_group"], base) if "p_group" in spec else None
    where = spec.get("modules_over", "subgroup")
    if where == "subgroup" and H is not None:
        grp = H.as_group()[0]
    elif where == "other" and K is not None:
        grp = K.as_group()[0]
    else:
        grp = G
    mods = [parse_module(m, grp, F) for m in spec.get("modules", [])]
    inst = Instance(G, F, H, K, mods, spec.get("block"), P, threads=threads)
    if budget is not None:
        inst.budget = budget
    return inst
