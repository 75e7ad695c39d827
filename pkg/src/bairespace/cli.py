"""Command-line front end: every operation with JSON input and output.

Exit codes: 0 success, 1 domain error, 2 fuel exhausted, 3 parse error.
Each run prints exactly one newline-terminated JSON document.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Sequence

from . import functional as fn
from . import namedsets as ns
from . import reductions as R
from . import seqcode as sc
from . import stump as st
from . import suites
from . import trees as tr
from .errors import BaireError, DomainError, FuelExhausted, ParseError

NAME = re.compile(r"^[A-Za-z0-9_*\-]+$")


# ---------------------------------------------------------------- input

def load(arg: str):
    """Inline JSON, a path to a JSON file, or a bare name such as ``empty``."""
    if os.path.isfile(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError) as exc:
            raise ParseError("cannot read JSON file", path=arg, detail=str(exc)) from exc
    try:
        return json.loads(arg)
    except ValueError:
        if NAME.match(arg):
            return arg
        raise ParseError("argument is neither JSON nor a file", arg=arg) from None


def load_seq(arg: str) -> tuple[int, ...]:
    doc = load(arg)
    if isinstance(doc, int) and not isinstance(doc, bool) and doc >= 0:
        return sc.decode(doc)
    if isinstance(doc, list) and all(isinstance(x, int) and not isinstance(x, bool) and x >= 0
                                     for x in doc):
        return tuple(doc)
    raise ParseError("sequence must be a code or an array of naturals", arg=arg)


def load_code(arg: str) -> int:
    doc = load(arg)
    if isinstance(doc, list):
        return sc.encode(load_seq(arg))
    if isinstance(doc, int) and not isinstance(doc, bool) and doc >= 0:
        return doc
    raise ParseError("expected a natural number or an array", arg=arg)


def load_stump(arg: str) -> st.Stump:
    return st.from_json(load(arg))


def load_tree(arg: str) -> tr.RegularTree:
    return tr.from_json(load(arg))


def load_stream(arg: str) -> fn.StreamSpec:
    doc = load(arg)
    if isinstance(doc, dict) and "states" in doc:
        return fn.TreeChar(tr.from_json(doc))
    return fn.from_json(doc)


def _is_nat_list(x) -> bool:
    return isinstance(x, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in x)


def to_value(doc):
    """Parse a witness or parameter document: objects become streams or trees."""
    if isinstance(doc, dict):
        if "states" in doc:
            return tr.from_json(doc)
        if len(doc) == 1:
            try:
                return fn.from_json(doc)
            except ParseError:
                pass
        return {k: to_value(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [to_value(v) for v in doc]
    return doc


TABLE_KEYS = ("apart", "preimages", "embedding", "partners")


def witness_value(key: str, doc):
    """Witness data: arrays of naturals are points, except for nodes and tables."""
    if key == "node":
        return tuple(doc)
    if key in TABLE_KEYS and isinstance(doc, list):
        table = [fn.from_json(v) if isinstance(v, (list, dict)) else v for v in doc]
        return table if key == "partners" else table.__getitem__
    if _is_nat_list(doc):
        return fn.from_json(doc)
    return to_value(doc)


def check_params(name: str, doc) -> dict:
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ParseError("checker parameters must be an object")
    out = {}
    for k, v in doc.items():
        if k == "tree":
            out[k] = tr.from_json(v)
        elif k in ("code", "target"):
            out[k] = fn.TreeChar(tr.from_json(v)) if isinstance(v, dict) and "states" in v \
                else fn.from_json(v)
        elif _is_nat_list(v) and k in ("witness", "counter"):
            out[k] = tuple(v)
        else:
            out[k] = to_value(v)
    # Callable witnesses are given as finite tables.
    w = out.get("witness")
    if name == "E2bang" and isinstance(w, (list, tuple)) and len(w) == 2 and isinstance(w[1], list):
        table = list(w[1])
        out["witness"] = (w[0], table.__getitem__)
    elif name in ("A2", "Inf") and isinstance(w, list):
        out["witness"] = list(w).__getitem__
    return out


# ---------------------------------------------------------------- output

def plain(x, sample: int = 16):
    """A JSON value for any result object."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, fn.Lazy):
        return {"lazy": x.label, "sample": [x.at(n) for n in range(sample)]}
    if isinstance(x, fn.StreamSpec):
        return x.to_json()
    if isinstance(x, st.Stump):
        return st.to_json(x)
    if isinstance(x, tr.RegularTree):
        return tr.to_json(x)
    if isinstance(x, ns.Verdict):
        return x.to_json()
    if isinstance(x, sc.Order):
        return x.name.lower()
    if isinstance(x, dict):
        return {str(list(k)) if isinstance(k, tuple) else str(k): plain(v, sample) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v, sample) for v in x]
    if callable(x):
        return {"function": [plain(x(n), sample) for n in range(4)]}
    return repr(x)


def emit(doc) -> None:
    text = json.dumps(doc, sort_keys=True, ensure_ascii=False)
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------- subcommands

def cmd_seq(a):
    op = a.op
    if op == "encode":
        return sc.encode(load_seq(a.args[0]))
    if op == "decode":
        return list(sc.decode(load_code(a.args[0])))
    if op == "kb":
        return sc.kb_compare(load_code(a.args[0]), load_code(a.args[1]))
    if op == "le-star":
        return sc.pointwise_le(load_code(a.args[0]), load_code(a.args[1]))
    if op == "parts":
        i, ii = sc.interleave_parts(load_code(a.args[0]))
        return {"I": list(sc.decode(i)), "II": list(sc.decode(ii))}
    raise DomainError("unknown seq operation", op=op)


def cmd_stump(a):
    s = [load_stump(x) for x in a.args]
    op = a.op
    unary = {"normalize": st.normalize, "succ": st.successor, "hull": st.hull,
             "predicates": st.predicates}
    binary = {"leq": st.leq, "lt": st.lt, "sum": st.natural_sum, "union": st.tree_union}
    if op in unary:
        return unary[op](s[0])
    if op in binary:
        return binary[op](s[0], s[1])
    if op == "embed":
        table = st.embeds(s[0], s[1])
        return None if table is None else [[list(k), list(v)] for k, v in table.items()]
    if op == "critical":
        return {"extension": st.critical_extension(s[0], a.depth),
                "sequence": st.critical_sequence(s[0], a.depth)}
    raise DomainError("unknown stump operation", op=op)


def cmd_tree(a):
    op = a.op
    if op == "bar01":
        return [list(x) for x in tr.bar01_seqs(int(load(a.args[0])))]
    if op == "cb":
        sigma = load_stump(a.args[0])
        closure = tr.closure_tree(a.family, sigma)
        points = [tr.enumerate_family(a.family, sigma, i) for i in range(a.limit)]
        return {"closure": closure,
                "points": [None if p is None else {"prefix": list(p), "cycle": [0]} for p in points]}
    t = load_tree(a.args[0])
    if op == "prune":
        return tr.prune(t)
    if op == "member":
        doc = load(a.args[1])
        if isinstance(doc, dict):
            return tr.point_member(t, doc.get("prefix", []), doc.get("cycle", [0]))
        return tr.node_member_seq(t, load_seq(a.args[1]))
    if op == "is-fan":
        return tr.is_fan(t)
    if op == "intersect":
        return tr.intersect_all([t] + [load_tree(x) for x in a.args[1:]])
    if op == "derived":
        return tr.derived(t)
    if op == "der":
        if a.stump is None:
            raise DomainError("der needs --stump")
        return tr.der(load_stump(a.stump), t)
    if op == "paths":
        return {"root": t.root, "counts": tr.path_count(t), "path": _path_doc(tr.find_infinite_path(t))}
    if op == "bar-extract":
        k = a.min_length
        return [list(x) for x in tr.bar_extract_seqs(t, lambda s: len(s) >= k, a.limit)]
    raise DomainError("unknown tree operation", op=op)


def _path_doc(found):
    return None if found is None else {"prefix": list(found[0]), "cycle": list(found[1])}


def _params(a) -> dict:
    if a.params is None:
        return {}
    doc = load(a.params)
    if not isinstance(doc, dict):
        raise ParseError("reduction parameters must be an object")
    return doc


def cmd_reduce(a):
    r = R.build(a.name, _params(a))
    if a.op == "build":
        return r.to_json()
    if a.op == "apply":
        if a.point is None:
            raise DomainError("apply needs --point")
        image = R.apply_reduction(r, load_stream(a.point), a.fuel)
        return {"name": r.name, "image": [image.at(n) for n in range(a.length)]}
    if a.op == "witness":
        if a.data is None:
            raise DomainError("witness needs --data")
        data = load(a.data)
        if not isinstance(data, dict):
            raise ParseError("witness data must be an object")
        out = R.transport_witness(r, a.dir, {k: witness_value(k, v) for k, v in data.items()}, a.fuel)
        return {"name": r.name, "direction": a.dir, "witness": plain(out, a.length)}
    raise DomainError("unknown reduce operation", op=a.op)


def cmd_check(a):
    if a.point is None:
        raise DomainError("check needs --point")
    params = check_params(a.set, None if a.params is None else load(a.params))
    return ns.check_membership(a.set, load_stream(a.point), a.fuel, **params)


def cmd_suite(a):
    results = suites.run_suite(a.name, a.seed)
    return {"passed": all(r.passed for r in results), "seed": a.seed,
            "results": [r.to_json() for r in results]}


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError("bad command line", detail=message)


def parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bairespace", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    q = sub.add_parser("seq", help="sequence codes")
    q.add_argument("op", choices=["encode", "decode", "kb", "le-star", "parts"])
    q.add_argument("args", nargs="+")
    q.set_defaults(run=cmd_seq)

    q = sub.add_parser("stump", help="stumps and their order")
    q.add_argument("op", choices=["normalize", "leq", "lt", "succ", "sum", "union", "hull",
                                  "predicates", "embed", "critical"])
    q.add_argument("args", nargs="+")
    q.add_argument("--depth", type=int, default=2)
    q.set_defaults(run=cmd_stump)

    q = sub.add_parser("tree", help="regular trees")
    q.add_argument("op", choices=["prune", "member", "is-fan", "intersect", "derived", "der",
                                  "paths", "bar-extract", "cb", "bar01"])
    q.add_argument("args", nargs="+")
    q.add_argument("--stump")
    q.add_argument("--family", choices=list(tr.FAMILIES), default="cb")
    q.add_argument("--limit", type=int, default=64)
    q.add_argument("--min-length", type=int, default=1, help="bar: nodes of at least this length")
    q.set_defaults(run=cmd_tree)

    q = sub.add_parser("reduce", help="catalog reductions")
    q.add_argument("op", choices=["build", "apply", "witness"])
    q.add_argument("name")
    q.add_argument("params", nargs="?")
    q.add_argument("--point")
    q.add_argument("--data")
    q.add_argument("--dir", choices=["fwd", "bwd"], default="fwd")
    q.add_argument("--fuel", type=int, default=fn.DEFAULT_FUEL)
    q.add_argument("--length", type=int, default=16, help="how many values of a point to print")
    q.set_defaults(run=cmd_reduce)

    q = sub.add_parser("check", help="named-set membership")
    q.add_argument("set")
    q.add_argument("--point")
    q.add_argument("--params")
    q.add_argument("--fuel", type=int, default=fn.DEFAULT_FUEL)
    q.set_defaults(run=cmd_check)

    q = sub.add_parser("suite", help="run a named acceptance suite")
    q.add_argument("name")
    q.set_defaults(run=cmd_suite)
    return p


def run(argv: Sequence[str]) -> tuple[int, object]:
    try:
        a = parser().parse_args(list(argv))
        result = plain(a.run(a))
    except BaireError as exc:
        return exc.exit_code, exc.as_json()
    except IndexError:
        return 3, ParseError("missing positional argument").as_json()
    except ValueError as exc:
        return 3, ParseError("malformed argument", detail=str(exc)).as_json()
    except RecursionError:
        return 1, {"error": "domain", "message": "input too deeply nested"}
    if a.cmd == "suite" and not result["passed"]:
        return 1, result
    if a.cmd == "check" and result["status"] == ns.EXHAUSTED:
        return FuelExhausted.exit_code, result
    return 0, result


def main(argv: Sequence[str] | None = None) -> int:
    code, doc = run(sys.argv[1:] if argv is None else argv)
    emit(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
