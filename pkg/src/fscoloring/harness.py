"""Reproducibility surface: configs, searches, reports and re-verification.

Fixture catalogs load from JSON configuration files; every run that
claims something writes a JSON report embedding its own configuration,
and verify_report recomputes each claimed equality or inequality from
scratch.  All integers in files are encoded as decimal strings (bit
positions routinely exceed native widths) and payloads are serialized
with sorted keys, so identical configuration and seed produce
byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from . import apartness, delta3, pi3
from .dyadic import finite_sums, low_bit
from .errors import FixtureError, GuardError, VerificationError, WitnessSearchError
from .families import (
    Delta3Family,
    MonotoneFamily,
    MonotoneSchedule,
    SetSpec,
    validate_family,
)
from .treecolor import default_request, popcount_coloring, random_request


@dataclass(frozen=True)
class Guards:
    """Numeric resource bounds, overridable from configs and the CLI."""

    block_exponent: int = 20
    tree_exponent: int = 16
    request_exponent: int = 8
    chain_bits: int = 64
    blind_bound: int = 65536
    horizon: int = 24
    search_combinations: int = 5_000_000

    @classmethod
    def from_payload(cls, payload: Optional[dict], **overrides) -> "Guards":
        values = {}
        for name in cls.__dataclass_fields__:
            if payload and name in payload:
                values[name] = int(payload[name])
        for name, value in overrides.items():
            if value is not None:
                values[name] = int(value)
        return cls(**values)

    def to_payload(self) -> dict:
        return {name: str(getattr(self, name)) for name in self.__dataclass_fields__}


# ---------------------------------------------------------------------------
# Fixture configuration


class _IndexedDelay:
    """Per-index affine delay in k; index 0 of the pair list is family 0."""

    def __init__(self, pairs):
        self.pairs = tuple((int(b), int(p)) for b, p in pairs)

    def __call__(self, i, x, k):
        if not (0 <= i < len(self.pairs)):
            return 0
        base, per_k = self.pairs[i]
        return base + per_k * k


class _IndexedCeiling:
    def __init__(self, values):
        self.values = tuple(int(v) for v in values)

    def __call__(self, i, x, y):
        if not (0 <= i < len(self.values)):
            return 0
        return self.values[i]


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def save_config(path, payload) -> None:
    write_report(path, payload)


def build_family(config: dict):
    """Realize a configuration as a membership or counting family.

    Family entries must be densely indexed from zero and of one
    category: membership kinds (instant/delayed) or the counting kind
    (monotone); mixing categories has no semantics and is rejected.
    """
    catalog = config.get("catalog")
    entries = config.get("families")
    if catalog not in ("delta3", "pi3"):
        raise FixtureError("config catalog must be 'delta3' or 'pi3', got %r" % (catalog,))
    if not entries:
        raise FixtureError("config declares no families")
    for position, entry in enumerate(entries):
        if int(entry.get("index", position)) != position:
            raise FixtureError("family indices must be dense from 0")
    sets = [SetSpec.from_payload(entry["set"]) for entry in entries]
    kinds = [entry.get("kind", "instant") for entry in entries]
    if catalog == "delta3":
        if any(kind not in ("instant", "delayed") for kind in kinds):
            raise FixtureError("delta3 catalogs allow kinds 'instant' and 'delayed' only")
        delay = _IndexedDelay(
            [
                (entry.get("delay_base", "0"), entry.get("delay_per_k", "0"))
                for entry in entries
            ]
        )
        return Delta3Family(sets=sets, delay=delay, description="config:delta3")
    if any(kind != "monotone" for kind in kinds):
        raise FixtureError("pi3 catalogs allow the kind 'monotone' only")
    schedule = MonotoneSchedule(
        ceiling=_IndexedCeiling([entry.get("ceiling", "0") for entry in entries]),
        ramp_lag=int(config.get("ramp_lag", "0")),
    )
    from .families import monotone_from_sets

    return monotone_from_sets(sets, schedule, description="config:pi3")


def default_config(catalog: str, variant: str = "instant") -> dict:
    """The standard four-fixture catalog as a serializable configuration."""
    from .families import CATALOG_SETS

    entries = []
    for position, spec in enumerate(CATALOG_SETS):
        entry = {"index": str(position), "set": spec.to_payload()}
        if catalog == "delta3":
            if variant == "instant":
                entry["kind"] = "instant"
            elif variant == "delayed":
                entry.update(kind="delayed", delay_base="5")
            elif variant == "growing":
                entry.update(kind="delayed", delay_base="3", delay_per_k="1")
            else:
                raise FixtureError("unknown delta3 variant %r" % (variant,))
        else:
            entry["kind"] = "monotone"
            if variant == "delayed":
                entry["ceiling"] = "2"
        entries.append(entry)
    payload = {"catalog": catalog, "families": entries}
    if catalog == "pi3" and variant == "delayed":
        payload["ramp_lag"] = "6"
    return payload


# ---------------------------------------------------------------------------
# Colorings


def build_coloring(spec: dict, guards: Guards = Guards()):
    """Realize a serializable coloring description as a callable.

    Returns (color, arity); color maps a positive integer to an int or a
    tuple of ints.
    """
    kind = spec["id"]
    if kind == "popcount":
        return popcount_coloring, 1
    if kind == "tree-default":
        request = default_request()
        return (lambda w: _tree_color(request, w, spec)), 1
    if kind == "tree-random":
        request = random_request(int(spec.get("seed", "0")))
        return (lambda w: _tree_color(request, w, spec)), 1
    if kind == "killer":
        return apartness.weak_apartness_killer, 2
    if kind in ("delta3", "delta3-product", "pi3", "pi3-product"):
        family = build_family(spec["config"])
        if kind.startswith("delta3"):
            base = delta3.coloring(family, max_exponent=guards.block_exponent)
        else:
            base = pi3.coloring(family)
        if kind.endswith("product"):
            color = apartness.product([base, apartness.weak_apartness_killer])
            return color, 3
        return base, 1
    raise FixtureError("unknown coloring id %r" % (kind,))


def _tree_color(request, w, spec):
    from .treecolor import color_mod

    return color_mod(request, w, int(spec.get("modulus", "2")))


def color_tuple(value) -> tuple:
    return value if isinstance(value, tuple) else (value,)


# ---------------------------------------------------------------------------
# Exhaustive monochromatic search


@dataclass
class SearchResult:
    coloring_spec: dict
    max_terms: Optional[int]
    bound: int
    size: int
    found: Optional[tuple]
    colors: dict = field(default_factory=dict)

    @property
    def exhausted(self) -> bool:
        return self.found is None


def search_mono(color: Callable, max_terms: Optional[int], bound: int, size: int,
                *, subset_filter=None, coloring_spec=None,
                max_combinations: int = 5_000_000) -> SearchResult:
    """First size-element subset of [1, bound] with monochromatic sums.

    Enumerates subsets in lexicographic order, pruning any partial set
    whose bounded-term subset sums already carry two colors.  max_terms
    of None means sums of any number of terms.  Exhaustion is reported
    as a result, never silently.
    """
    if size < 2:
        raise ValueError("size must be at least 2")
    total = comb(bound, size)
    if total > max_combinations:
        raise GuardError("search_combinations", max_combinations, total)
    limit = size if max_terms is None else min(max_terms, size)
    found = None

    def dfs(chosen, sums_by_terms, anchor, start):
        nonlocal found
        if found is not None:
            return
        if len(chosen) == size:
            if subset_filter is None or subset_filter(tuple(chosen)):
                found = tuple(chosen)
            return
        for x in range(start, bound + 1):
            if found is not None:
                return
            a = color(x) if anchor is None else anchor
            if color(x) != a:
                continue
            new_sums = {1: [x]}
            ok = True
            for terms in range(2, limit + 1):
                fresh = []
                for value in sums_by_terms.get(terms - 1, ()):
                    candidate = value + x
                    if color(candidate) != a:
                        ok = False
                        break
                    fresh.append(candidate)
                if not ok:
                    break
                if fresh:
                    new_sums[terms] = fresh
            if not ok:
                continue
            merged = {
                terms: list(sums_by_terms.get(terms, ())) + new_sums.get(terms, [])
                for terms in range(1, limit + 1)
            }
            dfs(chosen + [x], merged, a, x + 1)

    dfs([], {}, None, 1)
    colors = {}
    if found is not None:
        colors = {s: color_tuple(color(s)) for s in finite_sums(found, limit)}
        if len(set(colors.values())) != 1:
            raise VerificationError("search returned a non-monochromatic set %r" % (found,))
    return SearchResult(
        coloring_spec=coloring_spec or {}, max_terms=max_terms,
        bound=bound, size=size, found=found, colors=colors,
    )


# ---------------------------------------------------------------------------
# Reports


def write_report(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_report(payload))


def render_report(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_report(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _enc(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_enc(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _enc(v) for k, v in value.items()}
    if value is None:
        return None
    return str(value)


def delta3_report(config: dict, witness: delta3.Delta3Witness) -> dict:
    terms = sorted((witness.x, witness.w1, witness.w2))
    return {
        "report": "delta3-witness",
        "claim": (
            "three pairwise-apart members x << w1 << w2 of the fixture whose sums "
            "w1+w2 and x+w1+w2 receive different colors"
        ),
        "config": config,
        "index": str(witness.index),
        "mode": witness.mode,
        "x": str(witness.x),
        "w1": str(witness.w1),
        "w2": str(witness.w2),
        "sum": str(witness.sum),
        "sum_with_x": str(witness.sum_with_x),
        "color_sum": str(witness.color_sum),
        "color_sum_with_x": str(witness.color_sum_with_x),
        "certificates": {
            "sum": [str(witness.w1), str(witness.w2)],
            "sum_with_x": [str(t) for t in terms],
        },
        "bookkeeping": _enc(witness.bookkeeping),
    }


def pi3_report(config: dict, witness: pi3.Pi3Witness) -> dict:
    start = witness.sums.index(witness.w)
    w_terms = witness.chain[start:]
    return {
        "report": "pi3-witness",
        "claim": (
            "a sum w of fixture members whose request value is the fixture's own "
            "block member x, so w and w+x receive different colors"
        ),
        "config": config,
        "index": str(witness.index),
        "mode": witness.mode,
        "block_exponent": str(witness.block_exponent),
        "x": str(witness.x),
        "w": str(witness.w),
        "color_w": str(witness.color_w),
        "color_w_plus_x": str(witness.color_w_plus_x),
        "chain": [str(x) for x in witness.chain],
        "sums": [str(w) for w in witness.sums],
        "requests": [str(r) for r in witness.requests],
        "certificates": {
            "w": [str(t) for t in w_terms],
            "w_plus_x": [str(t) for t in sorted((witness.x,) + w_terms)],
        },
        "bookkeeping": _enc(witness.bookkeeping),
    }


def run_delta3(config: dict, index: int, *, mode: str = "oracle",
               guards: Guards = Guards(), out: Optional[str] = None) -> dict:
    family = build_family(config)
    if not isinstance(family, Delta3Family):
        raise FixtureError("delta3 runs need a delta3 catalog")
    _check_family(family)
    witness = delta3.find_witness(
        family, index, mode=mode, bound=guards.blind_bound,
        horizon=guards.horizon, max_exponent=guards.block_exponent,
    )
    payload = delta3_report(config, witness)
    if out:
        write_report(out, payload)
    return payload


def run_pi3(config: dict, index: int, *, mode: str = "oracle",
            guards: Guards = Guards(), out: Optional[str] = None) -> dict:
    family = build_family(config)
    if not isinstance(family, MonotoneFamily):
        raise FixtureError("pi3 runs need a pi3 catalog")
    _check_family(family)
    witness = pi3.find_witness(
        family, index, mode=mode,
        max_request_exponent=guards.request_exponent,
        chain_bits=guards.chain_bits, horizon=guards.horizon,
    )
    payload = pi3_report(config, witness)
    if out:
        write_report(out, payload)
    return payload


def _check_family(family) -> None:
    report = validate_family(family)
    if not report.ok:
        raise FixtureError("fixture validation failed:\n%s" % report)


def run_product_kill(config: dict, index: int, *, mode: str = "oracle",
                     guards: Guards = Guards(), out: Optional[str] = None) -> dict:
    """Kill a fixture under the product of construction and pair colorings.

    Weakly apart fixtures are killed through the construction component;
    fixtures failing weak apartness through the bit-parity components.
    """
    family = build_family(config)
    _check_family(family)
    is_delta3 = isinstance(family, Delta3Family)
    ok, certificate = family.weak_apart_on(index, guards.horizon)
    if ok:
        if is_delta3:
            witness = delta3.find_witness(
                family, index, mode=mode, bound=guards.blind_bound,
                horizon=guards.horizon, max_exponent=guards.block_exponent,
            )
            u, v = witness.sum, witness.sum_with_x
            embedded = delta3_report(config, witness)
        else:
            witness = pi3.find_witness(
                family, index, mode=mode,
                max_request_exponent=guards.request_exponent,
                chain_bits=guards.chain_bits, horizon=guards.horizon,
            )
            u, v = witness.w, witness.w + witness.x
            embedded = pi3_report(config, witness)
        branch = "construction"
        u_terms = [int(t) for t in embedded["certificates"]["sum" if is_delta3 else "w"]]
        v_terms = [int(t) for t in embedded["certificates"]["sum_with_x" if is_delta3 else "w_plus_x"]]
    else:
        branch = "killer"
        embedded = None
        u, v, u_terms, v_terms = _killer_kill(certificate)
    base = (
        delta3.coloring(family, max_exponent=guards.block_exponent)
        if is_delta3
        else pi3.coloring(family)
    )
    prod = apartness.product([base, apartness.weak_apartness_killer])
    cu, cv = prod(u), prod(v)
    if cu == cv:
        raise VerificationError("product colors of %d and %d agree" % (u, v))
    payload = {
        "report": "product-kill",
        "claim": "two finite sums of the fixture with different product colors",
        "config": config,
        "index": str(index),
        "branch": branch,
        "u": str(u),
        "v": str(v),
        "color_u": [str(c) for c in cu],
        "color_v": [str(c) for c in cv],
        "certificates": {"u": [str(t) for t in u_terms], "v": [str(t) for t in v_terms]},
    }
    if embedded is not None:
        payload["witness"] = embedded
    if out:
        write_report(out, payload)
    return payload


def _killer_kill(certificate):
    if len(certificate) == 2:
        x1, x2 = certificate
        return x1, x1 + x2, [x1], [x1, x2]
    x1, x2, x3 = certificate
    l = low_bit(x1)
    for a, b in ((x1, x2), (x1, x3), (x2, x3)):
        if (a - b) % (1 << (l + 2)) == 0:
            return x1, a + b, [x1], sorted((a, b))
    raise VerificationError(
        "no pair of %r shares a residue two bits above the common low bit" % (certificate,)
    )


def run_extraction(stream_spec: dict, count: int, *, out: Optional[str] = None) -> dict:
    outputs = []
    stream = build_stream(stream_spec)
    for certificate in apartness.extract_apart(stream):
        outputs.append(certificate)
        if len(outputs) == count:
            break
    payload = {
        "report": "extraction",
        "claim": (
            "an apart subsequence whose elements are sums of disjoint blocks of "
            "the input stream"
        ),
        "stream": stream_spec,
        "count": str(count),
        "outputs": [
            {
                "value": str(c.value),
                "block": [str(b) for b in c.block],
                "first_index": str(c.first_index),
            }
            for c in outputs
        ],
    }
    if out:
        write_report(out, payload)
    return payload


def build_stream(spec: dict):
    kind = spec.get("kind", "naturals")
    if kind == "naturals":
        def naturals():
            x = 1
            while True:
                yield x
                x += 1
        return naturals()
    if kind == "arithmetic":
        start, step = int(spec.get("start", "1")), int(spec.get("step", "1"))
        if start < 1 or step < 1:
            raise FixtureError("arithmetic streams need positive start and step")
        def arithmetic():
            x = start
            while True:
                yield x
                x += step
        return arithmetic()
    if kind == "explicit":
        return iter([int(x) for x in spec["elements"]])
    raise FixtureError("unknown stream kind %r" % (kind,))


def eval_table(coloring_spec: dict, start: int, end: int, *,
               guards: Guards = Guards(), out: Optional[str] = None) -> dict:
    color, arity = build_coloring(coloring_spec, guards)
    payload = {
        "report": "eval-table",
        "coloring": coloring_spec,
        "arity": str(arity),
        "start": str(start),
        "end": str(end),
        "values": [
            {"w": str(w), "color": [str(c) for c in color_tuple(color(w))]}
            for w in range(start, end + 1)
        ],
    }
    if out:
        write_report(out, payload)
    return payload


def search_report(coloring_spec: dict, max_terms, bound, size, *,
                  guards: Guards = Guards(), out: Optional[str] = None) -> dict:
    color, _arity = build_coloring(coloring_spec, guards)
    result = search_mono(
        color, max_terms, bound, size, coloring_spec=coloring_spec,
        max_combinations=guards.search_combinations,
    )
    payload = {
        "report": "search-mono",
        "claim": "outcome of an exhaustive bounded monochromatic-set search",
        "coloring": coloring_spec,
        "max_terms": "unbounded" if max_terms is None else str(max_terms),
        "bound": str(bound),
        "size": str(size),
        "outcome": "exhausted" if result.exhausted else "found",
    }
    if result.found is not None:
        payload["found"] = [str(x) for x in result.found]
        payload["colors"] = {
            str(s): [str(c) for c in value] for s, value in sorted(result.colors.items())
        }
    if out:
        write_report(out, payload)
    return payload


def tree_check_report(max_exponent: int, functions: int, seed: int, moduli,
                      *, contract: bool = True, guards: Guards = Guards(),
                      out: Optional[str] = None) -> dict:
    """Validate tree structure (and optionally the increment contract) for
    seeded random request functions on every block up to max_exponent."""
    from .treecolor import color_mod, tree_edges

    results = []
    for s in range(1, max_exponent + 1):
        edge_failures = 0
        contract_failures = 0
        for j in range(functions):
            request = random_request(seed + j)
            tree = tree_edges(s, request, max_exponent=guards.tree_exponent)
            if tree.problems():
                edge_failures += 1
        if contract:
            request = random_request(seed)
            for w in range(1 << s, 1 << (s + 1)):
                for n in range(low_bit(w)):
                    target = w + request(n, w)
                    for modulus in moduli:
                        expected = (color_mod(request, w, modulus) + 1) % modulus
                        if color_mod(request, target, modulus) != expected:
                            contract_failures += 1
        results.append(
            {
                "exponent": str(s),
                "edge_failures": str(edge_failures),
                "contract_failures": str(contract_failures),
            }
        )
    payload = {
        "report": "tree-check",
        "claim": "request trees are spanning trees and colorings step by one per request",
        "max_exponent": str(max_exponent),
        "functions": str(functions),
        "seed": str(seed),
        "moduli": [str(m) for m in moduli],
        "contract": contract,
        "results": results,
        "ok": all(
            r["edge_failures"] == "0" and r["contract_failures"] == "0" for r in results
        ),
    }
    if out:
        write_report(out, payload)
    return payload


# ---------------------------------------------------------------------------
# Verification of report files


def verify_report(payload: dict, guards: Guards = Guards()):
    """Recompute every claim in a report; returns (ok, detail lines)."""
    kind = payload.get("report")
    verifier = {
        "delta3-witness": _verify_delta3,
        "pi3-witness": _verify_pi3,
        "product-kill": _verify_product_kill,
        "extraction": _verify_extraction,
        "search-mono": _verify_search,
        "eval-table": _verify_eval,
        "tree-check": _verify_tree_check,
    }.get(kind)
    if verifier is None:
        return False, ["unknown report kind %r" % (kind,)]
    try:
        details = verifier(payload, guards)
    except (VerificationError, FixtureError, WitnessSearchError, GuardError,
            KeyError, ValueError) as failure:
        return False, ["verification failed: %s" % failure]
    return True, details


def _verify_delta3(payload, guards):
    family = build_family(payload["config"])
    if not isinstance(family, Delta3Family):
        raise VerificationError("report kind does not match the embedded catalog")
    witness = delta3.Delta3Witness(
        index=int(payload["index"]),
        x=int(payload["x"]), w1=int(payload["w1"]), w2=int(payload["w2"]),
        color_sum=int(payload["color_sum"]),
        color_sum_with_x=int(payload["color_sum_with_x"]),
        mode=payload["mode"],
    )
    if witness.sum != int(payload["sum"]) or witness.sum_with_x != int(payload["sum_with_x"]):
        raise VerificationError("claimed sums are inconsistent with x, w1, w2")
    _check_certificate(family, witness.index, payload["certificates"]["sum"], witness.sum)
    _check_certificate(
        family, witness.index, payload["certificates"]["sum_with_x"], witness.sum_with_x
    )
    delta3.verify_witness(family, witness, max_exponent=guards.block_exponent)
    return ["witness (%d, %d, %d) re-verified" % (witness.x, witness.w1, witness.w2)]


def _verify_pi3(payload, guards):
    family = build_family(payload["config"])
    if not isinstance(family, MonotoneFamily):
        raise VerificationError("report kind does not match the embedded catalog")
    witness = pi3.Pi3Witness(
        index=int(payload["index"]),
        block_exponent=int(payload["block_exponent"]),
        x=int(payload["x"]), w=int(payload["w"]),
        color_w=int(payload["color_w"]),
        color_w_plus_x=int(payload["color_w_plus_x"]),
        chain=tuple(int(x) for x in payload["chain"]),
        sums=tuple(int(x) for x in payload["sums"]),
        requests=tuple(int(x) for x in payload["requests"]),
        mode=payload["mode"],
    )
    _check_certificate(family, witness.index, payload["certificates"]["w"], witness.w)
    _check_certificate(
        family, witness.index, payload["certificates"]["w_plus_x"], witness.w + witness.x
    )
    pi3.verify_witness(family, witness)
    return ["witness (n=%d, x=%d, w=%d) re-verified" % (witness.block_exponent, witness.x, witness.w)]


def _check_certificate(family, index, terms, total) -> None:
    values = [int(t) for t in terms]
    if sum(values) != total:
        raise VerificationError("certificate terms sum to %d, not %d" % (sum(values), total))
    if len(set(values)) != len(values):
        raise VerificationError("certificate terms repeat")
    for value in values:
        if family.has_truth and not family.truth(index, value):
            raise VerificationError("certificate term %d outside fixture %d" % (value, index))


def _verify_product_kill(payload, guards):
    family = build_family(payload["config"])
    index = int(payload["index"])
    u, v = int(payload["u"]), int(payload["v"])
    base = (
        delta3.coloring(family, max_exponent=guards.block_exponent)
        if isinstance(family, Delta3Family)
        else pi3.coloring(family)
    )
    prod = apartness.product([base, apartness.weak_apartness_killer])
    cu, cv = prod(u), prod(v)
    if [str(c) for c in cu] != payload["color_u"] or [str(c) for c in cv] != payload["color_v"]:
        raise VerificationError("recomputed product colors differ from report")
    if cu == cv:
        raise VerificationError("product colors agree")
    _check_certificate(family, index, payload["certificates"]["u"], u)
    _check_certificate(family, index, payload["certificates"]["v"], v)
    details = ["product kill of fixture %d via %s branch re-verified" % (index, payload["branch"])]
    if "witness" in payload:
        ok, inner = verify_report(payload["witness"], guards)
        if not ok:
            raise VerificationError("embedded witness failed: %s" % "; ".join(inner))
        details += inner
    return details


def _verify_extraction(payload, guards):
    recomputed = run_extraction(payload["stream"], int(payload["count"]))
    if recomputed["outputs"] != payload["outputs"]:
        raise VerificationError("re-running the extraction produced different outputs")
    values = [int(entry["value"]) for entry in payload["outputs"]]
    from .dyadic import has_apartness

    if not has_apartness(values):
        raise VerificationError("outputs are not pairwise apart")
    previous_end = -1
    for entry in payload["outputs"]:
        block = [int(b) for b in entry["block"]]
        first = int(entry["first_index"])
        if sum(block) != int(entry["value"]):
            raise VerificationError("block does not sum to its output value")
        if first <= previous_end:
            raise VerificationError("blocks overlap")
        previous_end = first + len(block) - 1
    return ["%d extraction outputs re-verified" % len(values)]


def _verify_search(payload, guards):
    spec = payload["coloring"]
    max_terms = None if payload["max_terms"] == "unbounded" else int(payload["max_terms"])
    recomputed = search_report(
        spec, max_terms, int(payload["bound"]), int(payload["size"]), guards=guards
    )
    for key in ("outcome", "found", "colors"):
        if recomputed.get(key) != payload.get(key):
            raise VerificationError("recomputed search %s differs" % key)
    return ["search outcome %r re-verified" % payload["outcome"]]


def _verify_eval(payload, guards):
    recomputed = eval_table(
        payload["coloring"], int(payload["start"]), int(payload["end"]), guards=guards
    )
    if recomputed["values"] != payload["values"]:
        raise VerificationError("recomputed table differs")
    return ["%d table entries re-verified" % len(payload["values"])]


def _verify_tree_check(payload, guards):
    recomputed = tree_check_report(
        int(payload["max_exponent"]), int(payload["functions"]), int(payload["seed"]),
        [int(m) for m in payload["moduli"]], contract=payload["contract"],
        guards=guards,
    )
    if recomputed["results"] != payload["results"] or recomputed["ok"] != payload["ok"]:
        raise VerificationError("recomputed tree check differs")
    return ["tree check re-verified (ok=%s)" % payload["ok"]]
