"""JSON-ready dictionaries and text tables for results, with 1-based node labels."""

from __future__ import annotations

from .core import MaxMatrix, MaxVector
from .extremals import BasisResult, ExtremalityVerdict
from .generators import Generator, GeneratingSet
from .io import format_scalar
from .oracle import Decomposition, VerifyReport
from .strategy import Strategy, classify


def _labels(labels, n):
    return list(range(1, n + 1)) if labels is None else list(labels)


def vector_strs(x: MaxVector) -> list[str]:
    return [format_scalar(v) for v in x]


def vector_text(x: MaxVector) -> str:
    return "(" + ", ".join(vector_strs(x)) + ")"


def strategy_pairs(tau: Strategy, labels) -> list[list]:
    return [[labels[i], labels[j]] for i, j in tau.pairs]


def strategy_text(tau: Strategy, labels) -> str:
    return " ".join(f"{labels[i]}->{labels[j]}" for i, j in tau.pairs) or "(empty)"


def _node(v, labels):
    if isinstance(v, tuple):
        return [_node(u, labels) for u in v]
    return labels[v]


def cycle_dict(A: MaxMatrix, tau: Strategy, labels=None) -> dict:
    labels = _labels(labels, A.n)
    c = classify(A, tau)
    return {
        "strategy": strategy_pairs(tau, labels),
        "class": c.kind.value,
        "weight": format_scalar(c.cycle_weight),
    }


def germ_dict(A: MaxMatrix, tau: Strategy, labels=None) -> dict:
    labels = _labels(labels, A.n)
    c = classify(A, tau)
    g = c.germ
    return {
        "strategy": strategy_pairs(tau, labels),
        "class": c.kind.value,
        "origin": labels[g.origin],
        "cycle_origin": labels[g.cycle_origin],
        "walk": [labels[v] for v in g.walk_nodes],
        "cycle": [labels[v] for v in g.cycle_nodes],
        "cycle_weight": format_scalar(g.cycle_weight),
    }


def generator_dict(g: Generator, labels) -> dict:
    return {
        "vector": vector_strs(g.vector),
        "strategy": strategy_pairs(g.strategy, labels),
        "anchor": labels[g.anchor],
        "class": g.kind.value,
        "cycle_weight": format_scalar(g.cycle_weight),
    }


def verdict_dict(v: ExtremalityVerdict, labels) -> dict:
    out = {"extremal": v.extremal, "rule": v.rule}
    if v.witness:
        if v.rule == "oracle":
            out["witness"] = [
                {"coordinate": labels[i], "vector": vector_strs(y.vector if isinstance(y, Generator) else y)}
                for i, y in v.witness
            ]
        else:
            out["witness"] = _node(v.witness, labels)
    if v.near_ties:
        out["near_ties"] = _node(tuple(v.near_ties), labels)
    return out


def generating_set_dict(S: GeneratingSet, labels=None) -> dict:
    labels = _labels(labels, S.matrix.n)
    return {"n": S.matrix.n, "generators": [generator_dict(g, labels) for g in S]}


def basis_dict(result: BasisResult, labels=None) -> dict:
    S = result.generating_set
    labels = _labels(labels, S.matrix.n)
    return {
        "n": S.matrix.n,
        "generators": len(S),
        "basis": [generator_dict(b, labels) for b in result.basis],
        "rejected": [
            dict(generator_dict(g, labels), verdict=verdict_dict(v, labels)) for g, v in result.rejected
        ],
    }


def decomposition_dict(d: Decomposition) -> dict:
    return {
        "coefficients": [format_scalar(c) for c in d.coefficients],
        "combination": vector_strs(d.combination),
        "residual_equal": d.residual_equal,
    }


def verify_dict(rep: VerifyReport, labels=None) -> dict:
    labels = _labels(labels, rep.n)
    checks = []
    for c in rep.checks:
        item = {"property": c.name, "passed": c.passed, "checked": c.checked}
        if not c.passed:
            item["detail"] = c.detail
            item["counterexample"] = {k: repr(v) for k, v in (c.counterexample or {}).items()}
        checks.append(item)
    return {
        "passed": rep.passed,
        "generators": rep.generators,
        "extremals": rep.extremals,
        "checks": checks,
        "rejected": [
            dict(generator_dict(g, labels), verdict=verdict_dict(v, labels), decomposition=decomposition_dict(d))
            for g, v, d in rep.rejected
        ],
    }


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[c]) for r in rows)) if rows else len(h) for c, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers).rstrip()]
    lines += [fmt.format(*r).rstrip() for r in rows]
    return "\n".join(lines)


def generators_text(gens, labels) -> str:
    rows = [
        [str(t + 1), vector_text(g.vector), g.kind.value, str(labels[g.anchor]), strategy_text(g.strategy, labels)]
        for t, g in enumerate(gens)
    ]
    return _table(["#", "vector", "class", "anchor", "strategy"], rows)


def basis_text(result: BasisResult, labels=None) -> str:
    S = result.generating_set
    labels = _labels(labels, S.matrix.n)
    lines = [f"scaled basis: {len(result.basis)} extremals from {len(S)} generators"]
    if result.basis:
        lines.append(generators_text(result.basis, labels))
    if result.rejected:
        lines.append("")
        lines.append(f"rejected: {len(result.rejected)}")
        rows = []
        for g, v in result.rejected:
            rows.append(
                [
                    vector_text(g.vector),
                    g.kind.value,
                    str(labels[g.anchor]),
                    strategy_text(g.strategy, labels),
                    f"{v.rule} {_node(v.witness, labels)}",
                ]
            )
        lines.append(_table(["vector", "class", "anchor", "strategy", "reason"], rows))
    return "\n".join(lines) + "\n"


def verify_text(rep: VerifyReport, labels=None) -> str:
    labels = _labels(labels, rep.n)
    lines = [f"generators: {rep.generators}  extremals: {rep.extremals}"]
    for c in rep.checks:
        mark = "PASS" if c.passed else "FAIL"
        line = f"{mark}  {c.name} ({c.checked} checked)"
        if not c.passed:
            line += f": {c.detail}"
        lines.append(line)
    for g, v, d in rep.rejected:
        lines.append(
            f"non-extremal {vector_text(g.vector)} [{g.kind.value}, {v.rule}] = "
            f"max combination {vector_text(d.combination)} of other generators"
            f" ({'exact' if d.residual_equal else 'NOT exact'})"
        )
    lines.append("all properties pass" if rep.passed else "verification FAILED")
    return "\n".join(lines) + "\n"
