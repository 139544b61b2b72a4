"""Plain-text renderings used in reports and demos."""

from __future__ import annotations

from .propquot import Prop, Raw


def show_presheaf(X):
    parts = [f"{o}:[{', '.join(xs)}]" for o, xs in X.carrier.items()]
    ids = set(X.base.identity.values())
    for m, a, b in X.base.morphisms:
        if m in ids or not X.restrict[m]:
            continue
        pairs = ", ".join(f"{x}->{y}" for x, y in X.restrict[m].items())
        parts.append(f"{m}{{{pairs}}}")
    return " ".join(parts)


def show_nat(f):
    return " ".join(
        f"{o}{{{', '.join(f'{x}->{y}' for x, y in c.items())}}}"
        for o, c in f.components.items())


def show_sub(P):
    return " ".join(f"{o}:[{', '.join(xs)}]" for o, xs in P.subsets.items())


def show_type(A):
    return "\n".join([
        f"context  {show_presheaf(A.ctx)}",
        f"V        {show_presheaf(A.base_obj)}",
        f"E        {show_presheaf(A.total)}",
        f"p: E->V  {show_nat(A.proj)}",
        f"f: G->V  {show_nat(A.anchor)}",
    ])


def show_canon(c):
    if isinstance(c, Prop):
        return f"Prop {show_sub(c.sub)}"
    assert isinstance(c, Raw)
    return "Raw\n" + "\n".join("  " + line for line in show_type(c.type).splitlines())
