"""Canonical JSON for fans, building sets, weight vectors and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import Fan, FanError, Label, canonical, fan_power, simplex_fan
from .moduli import WeightVector
from .nesto import OVER_POLYTOPE, PLAIN, BuildingSet, label_key, members_key


def label_to_str(label: Label | None) -> str:
    if label is None:
        return ""
    if isinstance(label, int):
        return str(label)
    i, j = label
    return f"{i}:{j}"


def label_from_str(text: str) -> Label | None:
    text = str(text).strip()
    if not text:
        return None
    try:
        if ":" in text:
            i, j = text.split(":")
            return (int(i), int(j))
        return int(text)
    except ValueError:
        raise ValueError(f"malformed label {text!r}") from None


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(text: str | int) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {text!r}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


# fans


def fan_to_json(fan: Fan) -> dict:
    rays, cones, labels = canonical(fan)
    return {
        "rank": fan.rank,
        "rays": [list(r) for r in rays],
        "max_cones": [list(c) for c in cones],
        "labels": [label_to_str(x) for x in labels] if fan.labels is not None else [],
    }


def fan_from_json(obj: dict) -> Fan:
    try:
        rank = int(obj["rank"])
        rays = tuple(tuple(int(x) for x in r) for r in obj["rays"])
        cones = frozenset(tuple(int(i) for i in c) for c in obj["max_cones"])
        raw = obj.get("labels") or []
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed fan JSON: {exc}") from None
    labels = tuple(label_from_str(x) for x in raw) if raw else None
    try:
        return Fan(rank, rays, cones, labels)
    except FanError as exc:
        raise ValueError(f"malformed fan JSON: {exc}") from None


def dumps_fan(fan: Fan) -> str:
    return dumps(fan_to_json(fan))


def loads_fan(text: str) -> Fan:
    return fan_from_json(_loads(text))


# building sets


def building_set_to_json(b: BuildingSet) -> dict:
    members = sorted(b.members, key=lambda m: (len(m), members_key(m)))
    return {
        "ground": [label_to_str(g) for g in b.ground],
        "members": [[label_to_str(x) for x in sorted(m, key=label_key)] for m in members],
        "mode": b.mode,
    }


def _infer_base(ground: tuple[Label, ...]) -> Fan:
    """Reference fan for an over_polytope set: a simplex, or a power of one for i:j labels."""
    if all(isinstance(g, int) for g in ground):
        return simplex_fan(ground)
    if not all(isinstance(g, tuple) for g in ground):
        raise ValueError("ground mixes plain and pair labels")
    factors = sorted({k for _, k in ground})
    d = len(factors)
    if factors != list(range(1, d + 1)):
        raise ValueError("pair labels i:j need factors j = 1..d")
    labels = [i for i, k in ground if k == 1]
    base = fan_power(simplex_fan(labels), d)
    if tuple(base.labels) != ground:
        raise ValueError("pair-labelled ground must list i:1 for all i, then i:2, ...")
    return base


def building_set_from_json(obj: dict) -> BuildingSet:
    try:
        ground = tuple(label_from_str(g) for g in obj["ground"])
        members = frozenset(frozenset(label_from_str(x) for x in m) for m in obj["members"])
        mode = obj.get("mode", PLAIN)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed building set JSON: {exc}") from None
    if None in ground or any(None in m for m in members):
        raise ValueError("empty label in building set")
    base = _infer_base(ground) if mode == OVER_POLYTOPE else None
    return BuildingSet(ground, members, mode, base)


def dumps_building_set(b: BuildingSet) -> str:
    return dumps(building_set_to_json(b))


def loads_building_set(text: str) -> BuildingSet:
    return building_set_from_json(_loads(text))


# weight vectors


def weight_to_json(a: WeightVector) -> dict:
    return {"d": a.d, "n": a.n, "a": [fraction_to_str(x) for x in a.a]}


def weight_from_json(obj: dict) -> WeightVector:
    try:
        return WeightVector(int(obj["d"]), int(obj["n"]), tuple(fraction_from_str(x) for x in obj["a"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed weight JSON: {exc}") from None


def dumps_weight(a: WeightVector) -> str:
    return dumps(weight_to_json(a))


def loads_weight(text: str) -> WeightVector:
    return weight_from_json(_loads(text))


# reports


def make_report(instance: Any, checks: list[dict]) -> dict:
    return {
        "instance": instance,
        "checks": [{"name": c["name"], "pass": bool(c["pass"]), "detail": str(c.get("detail", ""))} for c in checks],
    }


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None
