"""Readers and writers: APX and ICCMA'23 frameworks, preorder files, JSON results."""

from __future__ import annotations

import enum
import json
import re
import sys
from dataclasses import dataclass
from functools import singledispatch
from pathlib import Path

import numpy as np

from .af_core import AF, ArgumentSet, Semantics, StatusReport, max_args
from .errors import CapacityError, ParseError
from .ext_ranking import ComparisonOutcome, ExtensionPreorder, RankTable
from .social_ranking import ArgumentRanking

LABEL = r"[A-Za-z0-9_]+"
_APX_FACT = re.compile(rf"(\w+)\s*\(\s*({LABEL})\s*(?:,\s*({LABEL})\s*)?\)\s*\.")
_WS = re.compile(r"\s*")


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_apx(text: str) -> AF:
    """Parse ``arg(x).`` / ``att(x,y).`` facts; ids follow first declaration order."""
    names: list[str] = []
    declared: dict[str, int] = {}
    attacks: list[tuple[str, str, int]] = []
    pos = _WS.match(text, 0).end()
    while pos < len(text):
        m = _APX_FACT.match(text, pos)
        if m is None:
            raise ParseError("expected arg(<label>). or att(<label>,<label>).", *_position(text, pos))
        pred, first, second = m.groups()
        if pred == "arg":
            if second is not None:
                raise ParseError("arg/1 takes a single label", *_position(text, pos))
            if first in declared:
                raise ParseError(f"duplicate declaration of argument {first!r}", *_position(text, pos))
            declared[first] = len(names)
            names.append(first)
        elif pred == "att":
            if second is None:
                raise ParseError("att/2 takes two labels", *_position(text, pos))
            attacks.append((first, second, pos))
        else:
            raise ParseError(f"unknown predicate {pred!r}", *_position(text, pos))
        pos = _WS.match(text, m.end()).end()

    pairs = set()
    for a, b, at in attacks:
        for label in (a, b):
            if label not in declared:
                raise ParseError(f"undeclared argument {label!r}", *_position(text, at))
        pairs.add((declared[a], declared[b]))
    if not names:
        raise ParseError("no arguments declared")
    if len(names) > max_args():
        raise CapacityError(f"{len(names)} arguments exceed the cap of {max_args()}")
    return AF.from_index_pairs(names, sorted(pairs))


def parse_iccma(text: str) -> AF:
    """Parse the ICCMA'23 ``p af <n>`` format; arguments are named ``a1..an``."""
    n = None
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 3 or tokens[0] != "p" or tokens[1] != "af":
                raise ParseError("expected header 'p af <n>'", lineno, 1)
            try:
                n = int(tokens[2])
            except ValueError:
                raise ParseError(f"bad argument count {tokens[2]!r}", lineno, raw.index(tokens[2]) + 1) from None
            if n < 0:
                raise ParseError("argument count must be nonnegative", lineno)
            if n > max_args():
                raise CapacityError(f"{n} arguments exceed the cap of {max_args()}")
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected '<i> <j>', got {line!r}", lineno, 1)
        ids = []
        for tok in tokens:
            if not tok.isdigit():
                raise ParseError(f"bad argument index {tok!r}", lineno, raw.index(tok) + 1)
            i = int(tok)
            if not 1 <= i <= n:
                raise ParseError(f"argument index {i} outside 1..{n}", lineno, raw.index(tok) + 1)
            ids.append(i - 1)
        pairs.add((ids[0], ids[1]))
    if n is None:
        raise ParseError("missing header 'p af <n>'")
    if n == 0:
        raise ParseError("empty framework: at least one argument is required")
    return AF.from_index_pairs([f"a{i + 1}" for i in range(n)], sorted(pairs))


def write_apx(af: AF) -> str:
    lines = [f"arg({name})." for name in af.names]
    lines += [f"att({af.names[a]},{af.names[b]})." for a, b in af.attacks]
    return "\n".join(lines) + "\n"


def write_iccma(af: AF) -> str:
    lines = [f"p af {af.n}"] + [f"{a + 1} {b + 1}" for a, b in af.attacks]
    return "\n".join(lines) + "\n"


def detect_format(path: str, text: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".apx":
        return "apx"
    if suffix in (".af", ".i23"):
        return "iccma"
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return "iccma" if line.startswith("p ") else "apx"
    return "apx"


def read_af(path: str, input_format: str = "auto") -> AF:
    """Load a framework from ``path`` (``-`` reads stdin)."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    fmt = detect_format(path, text) if input_format == "auto" else input_format
    if fmt == "apx":
        return parse_apx(text)
    if fmt == "iccma":
        return parse_iccma(text)
    raise ValueError(f"unknown input format {input_format!r}")


# ---------------------------------------------------------------------------
# Preorder files: "SET >= SET", "SET > SET", "SET == SET"

_RELATION = re.compile(r"^\s*(\{[^}]*\}|[^<>=]*?)\s*(>=|==|>)\s*(\{[^}]*\}|[^<>=]*?)\s*$")


@dataclass(frozen=True)
class PreorderStatement:
    left: frozenset
    op: str  # ">=", ">" or "=="
    right: frozenset


def _parse_set(token: str, lineno: int) -> frozenset:
    body = token.strip()
    if body.startswith("{"):
        if not body.endswith("}"):
            raise ParseError(f"unbalanced braces in {token!r}", lineno)
        body = body[1:-1]
    labels = [x.strip() for x in body.split(",")] if body.strip() else []
    for label in labels:
        if not re.fullmatch(LABEL, label):
            raise ParseError(f"bad label {label!r}", lineno)
    return frozenset(labels)


def parse_preorder(text: str) -> list[PreorderStatement]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RELATION.match(line)
        if m is None:
            raise ParseError(f"expected 'SET >= SET', 'SET > SET' or 'SET == SET', got {line!r}", lineno, 1)
        left, op, right = m.groups()
        out.append(PreorderStatement(_parse_set(left, lineno), op, _parse_set(right, lineno)))
    if not out:
        raise ParseError("preorder file has no statements")
    return out


# ---------------------------------------------------------------------------
# JSON


@dataclass(frozen=True)
class ExtensionList:
    af: AF
    semantics: Semantics
    sets: tuple[ArgumentSet, ...]


def _sets(af_or_labels, sets) -> list[list[str]]:
    if isinstance(af_or_labels, AF):
        return [af_or_labels.labels(s) for s in sets]
    return [sorted(af_or_labels[i] for i in range(len(af_or_labels)) if s >> i & 1) for s in sets]


@singledispatch
def to_jsonable(obj):
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@to_jsonable.register(dict)
def _(obj):
    return {str(k): to_jsonable(v) for k, v in obj.items()}


@to_jsonable.register(list)
@to_jsonable.register(tuple)
def _(obj):
    return [to_jsonable(v) for v in obj]


@to_jsonable.register(str)
@to_jsonable.register(int)
@to_jsonable.register(float)
@to_jsonable.register(bool)
@to_jsonable.register(type(None))
def _(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


@to_jsonable.register(ComparisonOutcome)
def _(obj):
    return obj.symbol


@to_jsonable.register(np.integer)
def _(obj):
    return int(obj)


@to_jsonable.register(np.bool_)
def _(obj):
    return bool(obj)


@to_jsonable.register(AF)
def _(af):
    return {
        "arguments": list(af.names),
        "attacks": [[af.names[a], af.names[b]] for a, b in af.attacks],
    }


@to_jsonable.register(ExtensionList)
def _(res):
    return {
        "semantics": Semantics(res.semantics).value,
        "arguments": list(res.af.names),
        "extensions": _sets(res.af, res.sets),
    }


@to_jsonable.register(StatusReport)
def _(rep):
    return {
        "semantics": rep.semantics.value,
        "vacuous": rep.vacuous,
        "status": {name: rep.of(i).value for i, name in enumerate(rep.af.names)},
        "skeptical": rep.af.labels(rep.skeptical),
        "credulous": rep.af.labels(rep.credulous),
        "rejected": rep.af.labels(rep.rejected),
    }


@to_jsonable.register(RankTable)
def _(rt):
    pre = rt.preorder
    tau = pre.tau.value if isinstance(pre, ExtensionPreorder) else None
    return {
        "extension_ranking": tau,
        "arguments": list(pre.labels),
        "width": rt.w,
        "strata": [_sets(list(pre.labels), stratum) for stratum in rt.strata],
    }


@to_jsonable.register(ArgumentRanking)
def _(r):
    return {
        "social_ranking": r.social.value if r.social else None,
        "extension_ranking": r.extension.value if r.extension else None,
        "arguments": list(r.labels),
        "total_preorder": r.is_total_preorder(),
        "strata": r.label_strata(),
        "matrix": {
            r.labels[a]: {r.labels[b]: r.outcome(a, b).symbol for b in range(r.n)} for a in range(r.n)
        },
    }


def write_json(result) -> str:
    """Canonical JSON text for any result object (byte-stable for equal inputs)."""
    return json.dumps(to_jsonable(result), ensure_ascii=False, indent=2) + "\n"
