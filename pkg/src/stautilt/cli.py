"""Command-line entry point.

Exit codes: 0 success, 1 property violated, 2 enumeration budget exceeded,
3 invalid input, 4 base field does not split the algebra.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import seeding
from .algebra import structure as st
from .errors import InvalidInput, NotSplitField, PossiblyInfinite, TauTiltError
from .grouprep.verify import CHECKS, verify
from .inputs import load_json, parse_algebra, parse_instance
from .tautilt.poset import TauPoset, enumerate_pairs, poset_isomorphic

EXIT_OK, EXIT_VIOLATED, EXIT_BUDGET, EXIT_INVALID, EXIT_NOT_SPLIT = 0, 1, 2, 3, 4

log = logging.getLogger("stautilt")


def _plain(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_plain) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _node_label(info: dict) -> str:
    parts = list(info.get("m_summands", [])) + list(info.get("p_summands", []))
    return " + ".join(parts) if parts else "0"


def emit_dot(poset: TauPoset, name: str = "stautilt") -> str:
    """Hasse quiver as DOT: nodes n0..n{k-1} in canonical order, one edge per covering relation."""
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for i in range(poset.size):
        info = poset.info[i] if i < len(poset.info) else {}
        label = _node_label(info).replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in poset.hasse_edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# verbs


def cmd_algebra_info(args) -> int:
    A = parse_algebra(load_json(args.input), args.field_extend, Path(args.input).parent)
    split, witness = st.is_split(A)
    info = {
        "dim": A.dim,
        "field": A.field.spec(),
        "fingerprint": A.fingerprint(),
        "radical_dim": int(st.radical(A).shape[0]),
        "split": split,
        "split_witness": witness,
    }
    if split:
        basic = st.condense_basic(A)
        Q = st.gabriel_quiver(basic.basic)
        info.update(
            {
                "num_simples": st.num_simples(A),
                "simple_dims": st.simple_dimensions(A),
                "projective_multiplicities": list(basic.mults),
                "is_basic": st.is_basic(A),
                "cartan": st.cartan_matrix(A).tolist(),
                "blocks": len(st.central_blocks(A)),
                "symmetric": st.is_symmetric(A) is not None,
                "gabriel_quiver": {"vertices": list(Q.vertices), "arrows": [list(a) for a in Q.arrows]},
            }
        )
    _write(dumps(info), args.json)
    return EXIT_OK


def _enumerate(args, with_complexes: bool):
    A = parse_algebra(load_json(args.input), args.field_extend, Path(args.input).parent)
    try:
        poset = enumerate_pairs(A, budget=args.budget, threads=args.threads)
    except PossiblyInfinite as exc:
        partial = getattr(exc, "partial", None)
        if partial is not None and args.json:
            _write(dumps({**partial.to_json(with_complexes), "complete": False}), args.json)
        raise
    _write(dumps(poset.to_json(with_complexes)), args.json)
    if args.dot:
        _write(emit_dot(poset), args.dot)
    return A, poset


def cmd_stautilt(args) -> int:
    _enumerate(args, args.with_complexes)
    return EXIT_OK


def cmd_twosilt(args) -> int:
    from .twosilt.square import verify_square

    A, _ = _enumerate(args, True)
    if args.square:
        rep = verify_square(A, budget=args.budget)
        _write(dumps(rep.as_dict()), args.report)
        return EXIT_OK if rep.ok else EXIT_VIOLATED
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(load_json(args.input), args.field_extend, Path(args.input).parent, args.budget, args.threads)
    rep = verify(args.check, inst)
    _write(dumps(rep.as_dict()), args.json)
    return EXIT_OK if rep.passed else EXIT_VIOLATED


def _load_poset(path: str) -> TauPoset:
    try:
        return TauPoset.from_json(load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"{path}: not a poset file ({exc})") from exc


def cmd_poset_compare(args) -> int:
    p1, p2 = _load_poset(args.first), _load_poset(args.second)
    iso = poset_isomorphic(p1, p2)
    _write(dumps({"isomorphic": iso is not None, "bijection": iso, "sizes": [p1.size, p2.size]}), args.json)
    return EXIT_OK if iso is not None else EXIT_VIOLATED


# ----------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=10**6, help="maximum number of enumerated nodes")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads for enumeration")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized splitting")
    common.add_argument("--json", metavar="PATH", default=None, help="write the JSON result here (default stdout)")
    common.add_argument("--field-extend", metavar="DEGREE", type=_positive, default=None, help="work over F_(p^DEGREE)")

    p = argparse.ArgumentParser(prog="stautilt", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("algebra-info", parents=[common], help="structure of an algebra")
    s.add_argument("input")
    s.set_defaults(run=cmd_algebra_info)

    for verb, fn, helptext in (
        ("stautilt", cmd_stautilt, "enumerate support tau-tilting pairs"),
        ("twosilt", cmd_twosilt, "enumerate two-term silting complexes"),
    ):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("input")
        s.add_argument("--dot", metavar="PATH", default=None, help="write the Hasse quiver as DOT")
        s.add_argument("--with-complexes", action="store_true", help="include complexes in the JSON output")
        if verb == "twosilt":
            s.add_argument("--square", action="store_true", help="cross-check pairs against complexes")
            s.add_argument("--report", metavar="PATH", default=None, help="where to write the cross-check report")
        s.set_defaults(run=fn)

    s = sub.add_parser("verify", parents=[common], help="run a verification check on a group instance")
    s.add_argument("check", choices=sorted(CHECKS))
    s.add_argument("input")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("poset-compare", parents=[common], help="test two poset files for isomorphism")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(run=cmd_poset_compare)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("TTB_LOG", "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    seeding.set_default_seed(args.seed)
    try:
        return args.run(args)
    except PossiblyInfinite as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotSplitField as exc:
        deg = getattr(exc, "suggested_degree", None)
        hint = f"; retry with --field-extend {deg}" if deg else ""
        print(f"field does not split: {exc}{hint}", file=sys.stderr)
        return EXIT_NOT_SPLIT
    except (InvalidInput, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TauTiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    finally:
        seeding.set_default_seed(None)


if __name__ == "__main__":
    sys.exit(main())
