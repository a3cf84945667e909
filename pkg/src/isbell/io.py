"""Reading the JSON file formats.

A reference is a path, or ``corpus:NAME`` for a packaged data file.  A
functor's ``"base"`` may be an inline category or a reference, resolved
relative to the functor file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .envelope import EnvelopeObject
from .fincat import FinCat
from .metric import CostVector, GenMetric, MetricError
from .order import FinPoset
from .setfun import SetFunctor

PREFIX = "corpus:"


class InputError(Exception):
    """Unreadable file, malformed JSON, or data of the wrong shape."""


def resolve(ref: str, relative_to: Path | None = None) -> Path:
    if ref.startswith(PREFIX):
        from .corpus import path_of

        path = path_of(ref[len(PREFIX):])
        if not path.exists():
            raise InputError(f"no corpus entry {ref[len(PREFIX):]!r}")
        return path
    path = Path(ref)
    if not path.is_absolute() and relative_to is not None:
        path = relative_to / path
    return path


def read_json(ref: str, relative_to: Path | None = None) -> tuple[dict, Path]:
    path = resolve(ref, relative_to)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: malformed JSON ({err.msg} at line {err.lineno})") from err
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data, path.parent


def kind_of(data: Mapping) -> str:
    if "chi" in data:
        return "envelope"
    if "objects" in data:
        return "category"
    if "sets" in data:
        return "functor"
    if "elements" in data:
        return "poset"
    if "points" in data:
        return "metric"
    if "f" in data:
        return "cost"
    raise InputError("unrecognised file: expected a category, functor, poset, metric, cost vector or envelope")


def _category(data: object, where: Path | None) -> FinCat:
    if isinstance(data, str):
        data, where = read_json(data, where)
    if not isinstance(data, Mapping):
        raise InputError("category must be an object or a reference")
    return FinCat.from_json(data)


def parse(data: Mapping, where: Path | None = None) -> object:
    """Build the object a file describes; validation is left to the caller."""
    kind = kind_of(data)
    try:
        if kind == "category":
            return FinCat.from_json(data)
        if kind == "functor":
            return SetFunctor.from_json(data, _category(data["base"], where))
        if kind == "poset":
            return FinPoset.from_json(data)
        if kind == "metric":
            return GenMetric.from_json(data)
        if kind == "envelope":
            inline = dict(data)
            inline["base"] = _category(data["base"], where).to_json()
            return EnvelopeObject.from_json(inline)
        return dict(data)
    except (KeyError, TypeError, AttributeError) as err:
        raise InputError(f"{kind} file is missing or misusing field {err}") from err
    except MetricError as err:
        raise InputError(str(err)) from err


def load(ref: str, relative_to: Path | None = None) -> object:
    data, where = read_json(ref, relative_to)
    return parse(data, where)


def load_cost(ref: str, space: GenMetric) -> CostVector:
    data, _ = read_json(ref)
    if kind_of(data) != "cost":
        raise InputError(f"{ref} is not a cost vector file")
    try:
        return CostVector.from_json(data, space)
    except KeyError as err:
        raise InputError(f"cost vector has no value for point {err}") from err
    except MetricError as err:
        raise InputError(str(err)) from err
