import numpy as np

import driftmem.models.dam3 as dam3_module
from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import euclidean_distance
from driftmem.core.types import Label, LabeledInstance


def make_instance(features, label=Label.NEGATIVE, t=0, synthetic_id=0) -> LabeledInstance:
    return LabeledInstance(np.asarray(features, dtype=float), label, t, synthetic_id)


def make_buffer(points, labels, start=0, max_size=None) -> MemoryBuffer:
    return MemoryBuffer(
        [make_instance(p, l, start + i) for i, (p, l) in enumerate(zip(points, labels))],
        max_size=max_size,
    )


def gaussian_stream(n, rng, flip_at=None, positive_rate=0.5, separation=4.0, dim=2):
    """Two well-separated Gaussian classes; the class means swap at ``flip_at``."""
    out = []
    for t in range(n):
        label = Label.POSITIVE if rng.random() < positive_rate else Label.NEGATIVE
        sign = 1.0 if label is Label.POSITIVE else -1.0
        if flip_at is not None and t >= flip_at:
            sign = -sign
        out.append(LabeledInstance(rng.normal(sign * separation / 2, 1.0, dim), label, t))
    return out


def record_exchange_violations(monkeypatch):
    """Wrap the DAM3 cleaning step and collect every broken exchange rule.

    Returns (violations, counts); counts tallies exchanges and LTM -> WM moves.

    Checked per exchange: |LTM| + |WM| is unchanged, the memories stay
    disjoint, and every LTM -> WM move lies within theta of the incoming
    instance and carries the other label.
    """
    violations = []
    pending = {}
    counts = {"exchanges": 0, "ltm_to_wm": 0}
    real_inconsistent = dam3_module.inconsistent_set_ltm
    real_exchange = dam3_module.exchange

    def inconsistent_set_ltm(ltm, anchor, theta, k):
        positions = real_inconsistent(ltm, anchor, theta, k)
        keys = ltm.keys()
        for pos in positions:
            if ltm.labels[pos] == int(anchor.label):
                violations.append(("same label moved", anchor.arrival_index, keys[pos]))
            if euclidean_distance(ltm.features[pos], anchor.features) > theta + 1e-12:
                violations.append(("beyond theta", anchor.arrival_index, keys[pos]))
        pending["inconsistent"] = {keys[pos] for pos in positions}
        pending["t"] = anchor.arrival_index
        return positions

    def exchange(ltm, wm, inconsistent, consistent):
        before = len(ltm) + len(wm)
        moved_to_wm, moved_to_ltm = real_exchange(ltm, wm, inconsistent, consistent)
        t = pending.get("t")
        counts["exchanges"] += 1
        counts["ltm_to_wm"] += len(moved_to_wm)
        if len(ltm) + len(wm) != before:
            violations.append(("size changed", t, before, len(ltm) + len(wm)))
        if set(ltm.keys()) & set(wm.keys()):
            violations.append(("memories overlap", t))
        if set(moved_to_wm.keys()) != pending.get("inconsistent", set()):
            violations.append(("moved set differs from inconsistent set", t))
        return moved_to_wm, moved_to_ltm

    monkeypatch.setattr(dam3_module, "inconsistent_set_ltm", inconsistent_set_ltm)
    monkeypatch.setattr(dam3_module, "exchange", exchange)
    return violations, counts
