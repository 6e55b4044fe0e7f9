"""Scenario files: exact JSON in, one canonical JSON form out.

A scenario names its agents and their valuations, and may carry a strategy
profile or a ready-made allocation to audit.  Every number travels as an
exact token: a "p/q" string, an integer, or a decimal string like "0.4"
(converted exactly, so "0.1" means one tenth, not the nearest float).  Bare
JSON decimals are converted from their literal text for the same reason;
a float never exists at any point.

Parsing is strict and failures carry position where the decoder knows it:
syntax errors report line and column, structural errors name the offending
path.  Serializing normalizes pieces and reorders keys, after which the
text is a fixpoint: serialize(parse(text)) == text for canonical files.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from fairslice.audit import Allocation
from fairslice.intervals import IntervalSet
from fairslice.uniform import Profile
from fairslice.valuation import Valuation


class ParseError(ValueError):
    """Bad scenario text, with line/column when the decoder has them."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "line %d column %d: %s" % (line, column, message)
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Scenario:
    """A parsed scenario: agents plus optional profile and allocation."""

    version: str
    ids: tuple
    valuations: tuple
    profile: object = None
    allocation: object = None

    def __len__(self):
        return len(self.valuations)


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
        raise ParseError("%s: expected an exact number token, got %r" % (path, value))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError("%s: cannot read %r as a rational" % (path, value))


def _field(mapping, key, path):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError("%s: missing field %r" % (path, key))
    return mapping[key]


def _region(value, path):
    if not isinstance(value, list):
        raise ParseError("%s: expected a list of [lo, hi] pairs" % path)
    pairs = []
    for k, span in enumerate(value):
        if not isinstance(span, list) or len(span) != 2:
            raise ParseError("%s[%d]: expected a [lo, hi] pair" % (path, k))
        pairs.append((_number(span[0], path), _number(span[1], path)))
    try:
        return IntervalSet(pairs)
    except ValueError as error:
        raise ParseError("%s: %s" % (path, error))


def _valuation(spec, path):
    kind = _field(spec, "type", path)
    pieces = _field(spec, "pieces", path)
    if not isinstance(pieces, list) or not pieces:
        raise ParseError("%s.pieces: expected a non-empty list" % path)
    rows = []
    for k, piece in enumerate(pieces):
        where = "%s.pieces[%d]" % (path, k)
        lo = _number(_field(piece, "lo", where), where)
        hi = _number(_field(piece, "hi", where), where)
        rows.append((piece, where, lo, hi))
    try:
        if kind == "uniform":
            return Valuation.uniform_on([(lo, hi) for _, _, lo, hi in rows])
        if kind == "constant":
            return Valuation.piecewise_constant(
                [
                    ((lo, hi), _number(_field(piece, "value", where), where))
                    for piece, where, lo, hi in rows
                ]
            )
        if kind == "linear":
            return Valuation.piecewise_linear(
                [
                    (
                        (lo, hi),
                        _number(_field(piece, "slope", where), where),
                        _number(_field(piece, "intercept", where), where),
                    )
                    for piece, where, lo, hi in rows
                ]
            )
    except ParseError:
        raise
    except ValueError as error:
        raise ParseError("%s: %s" % (path, error))
    raise ParseError("%s.type: unknown valuation type %r" % (path, kind))


def parse_scenario(text):
    """Parse scenario text; raises ParseError on any defect."""
    try:
        data = json.loads(text, parse_float=Fraction, parse_int=int)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno, error.colno)
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")

    agents = _field(data, "agents", "top level")
    if not isinstance(agents, list) or not agents:
        raise ParseError("agents: expected a non-empty list")
    ids = []
    valuations = []
    for k, agent in enumerate(agents):
        path = "agents[%d]" % k
        ids.append(_field(agent, "id", path))
        valuations.append(_valuation(_field(agent, "valuation", path), path))
    if len(set(ids)) != len(ids):
        raise ParseError("agents: ids are not unique")

    profile = None
    if "profile" in data:
        rows = data["profile"]
        if not isinstance(rows, list) or len(rows) != len(agents):
            raise ParseError("profile: expected one strategy per agent")
        profile = Profile([_region(row, "profile[%d]" % k) for k, row in enumerate(rows)])

    allocation = None
    if "allocation" in data:
        rows = data["allocation"]
        if not isinstance(rows, list) or len(rows) != len(agents):
            raise ParseError("allocation: expected one portion per agent")
        portions = [_region(row, "allocation[%d]" % k) for k, row in enumerate(rows)]
        try:
            allocation = Allocation(portions)
        except ValueError as error:
            raise ParseError("allocation: %s" % error)

    version = data.get("version", "1")
    return Scenario(str(version), tuple(ids), tuple(valuations), profile, allocation)


def region_pairs(region):
    """An IntervalSet as [[lo, hi], ...] with exact string endpoints."""
    return [[str(iv.lo), str(iv.hi)] for iv in region]


def _valuation_spec(valuation):
    if valuation.is_piecewise_uniform():
        return {
            "type": "uniform",
            "pieces": [
                {"lo": str(p.interval.lo), "hi": str(p.interval.hi)}
                for p in valuation.pieces
            ],
        }
    if valuation.is_piecewise_constant():
        return {
            "type": "constant",
            "pieces": [
                {
                    "lo": str(p.interval.lo),
                    "hi": str(p.interval.hi),
                    "value": str(p.intercept),
                }
                for p in valuation.pieces
            ],
        }
    return {
        "type": "linear",
        "pieces": [
            {
                "lo": str(p.interval.lo),
                "hi": str(p.interval.hi),
                "slope": str(p.slope),
                "intercept": str(p.intercept),
            }
            for p in valuation.pieces
        ],
    }


def serialize_scenario(scenario):
    """Render a Scenario as canonical text: sorted keys, exact strings."""
    data = {
        "version": scenario.version,
        "agents": [
            {"id": agent_id, "valuation": _valuation_spec(valuation)}
            for agent_id, valuation in zip(scenario.ids, scenario.valuations)
        ],
    }
    if scenario.profile is not None:
        data["profile"] = [region_pairs(s) for s in scenario.profile]
    if scenario.allocation is not None:
        data["allocation"] = [region_pairs(p) for p in scenario.allocation]
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
