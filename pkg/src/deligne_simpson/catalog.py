"""Enumeration of diagonal Jordan form tuples by index of rigidity.

Rigid tuples (index 2, terminal size one) are generated bottom-up: starting
from the size-one tuple, every tuple is extended by all inverse reduction
steps, i.e. all ways to re-grow the multiplicity of a chosen (possibly
fresh) eigenvalue per form so that one forward step maps the extension back
to the source.  The base lists for index zero and the scaled series behind
the negative-index machinery are spelled out explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .jnf import JnfTuple, JordanForm, Partition, as_partition
from .reduction import ConditionReport, condition_report, psi_step


class UnsupportedIndexError(ValueError):
    """Base lists exist for index zero and negative even indices only."""


@dataclass(frozen=True)
class MvTuple:
    """Tuple of multiplicity vectors (one partition of n per form)."""

    mvs: tuple[Partition, ...]

    @property
    def n(self) -> int:
        return sum(self.mvs[0])

    @property
    def p(self) -> int:
        return len(self.mvs) - 1

    def canonical(self) -> "MvTuple":
        return MvTuple(tuple(sorted(self.mvs, reverse=True)))

    def to_jnf_tuple(self) -> JnfTuple:
        return JnfTuple([JordanForm.diagonal(mv) for mv in self.mvs])

    def report(self) -> ConditionReport:
        return condition_report(self.to_jnf_tuple())

    def to_dict(self) -> dict:
        return {"n": self.n, "mvs": [list(mv) for mv in self.mvs],
                "report": self.report().to_dict()}

    @staticmethod
    def of(*mvs: Iterable[int]) -> "MvTuple":
        return MvTuple(tuple(as_partition(mv) for mv in mvs))


def _forward_reduces_to(ext: MvTuple, src: MvTuple) -> bool:
    t = ext.to_jnf_tuple()
    rep = condition_report(t)
    if rep.omega_holds or not rep.beta_holds or t.n <= 1:
        return False
    smaller, _ = psi_step(t)
    got = MvTuple(tuple(f.mv() for f in smaller.forms)).canonical()
    return got == src.canonical()


def inverse_psi_extensions(t: MvTuple) -> list[MvTuple]:
    """All one-step predecessors of t under the reduction map.

    Per form one chooses the multiplicity mu' that the shrunk eigenvalue
    kept in t (an existing component or a fresh zero); the predecessor size
    is n = p * n1 - sum of the mu', the chosen eigenvalue regains n - n1,
    and a forward step must map the result back to t.
    """
    n1 = t.n
    p = t.p
    per_form_choices = []
    for mv in t.mvs:
        choices = sorted(set(mv)) + [0]
        per_form_choices.append(choices)

    out: dict[tuple, MvTuple] = {}

    def rec(idx: int, picked: list[int]):
        if idx == len(t.mvs):
            n = p * n1 - sum(picked)
            if n <= n1:
                return
            grow = n - n1
            new_mvs = []
            for mv, mu in zip(t.mvs, picked):
                parts = list(mv)
                if mu > 0:
                    parts.remove(mu)
                new_mult = mu + grow
                parts.append(new_mult)
                if new_mult != max(parts):
                    return
                new_mvs.append(as_partition(parts))
            cand = MvTuple(tuple(new_mvs)).canonical()
            key = cand.mvs
            if key not in out and _forward_reduces_to(cand, t):
                out[key] = cand
            return
        for mu in per_form_choices[idx]:
            rec(idx + 1, picked + [mu])

    rec(0, [])
    return sorted(out.values(), key=lambda m: (m.n, m.mvs))


def enumerate_rigid(n_max: int, p: int) -> list[MvTuple]:
    """All diagonal tuples of size <= n_max whose chain ends at size one.

    Generated as the closure of the inverse reduction steps from the
    size-one tuple, deduplicated up to reordering of eigenvalues and forms.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    seed = MvTuple(tuple([(1,)] * (p + 1)))
    seen = {seed.mvs: seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for item in frontier:
            for ext in inverse_psi_extensions(item):
                if ext.n > n_max or ext.mvs in seen:
                    continue
                seen[ext.mvs] = ext
                nxt.append(ext)
        frontier = nxt
    return sorted(seen.values(), key=lambda m: (m.n, m.mvs))


_L0 = [
    MvTuple.of([1, 1], [1, 1], [1, 1], [1, 1]),
    MvTuple.of([1, 1, 1], [1, 1, 1], [1, 1, 1]),
    MvTuple.of([1, 1, 1, 1], [1, 1, 1, 1], [2, 2]),
    MvTuple.of([1, 1, 1, 1, 1, 1], [2, 2, 2], [3, 3]),
]


def _series(d: int) -> list[MvTuple]:
    return [
        MvTuple.of([d, d], [d, d], [d, d], [d, d]),
        MvTuple.of([d] * 3, [d] * 3, [d] * 3),
        MvTuple.of([d] * 4, [d] * 4, [2 * d, 2 * d]),
        MvTuple.of([d] * 6, [2 * d] * 3, [3 * d] * 2),
    ]


def base_list(h: int, n_max: Optional[int] = None) -> list[MvTuple]:
    """Starting tuples of the rigidity-index machinery.

    h = 0 returns the four base tuples; negative even h returns the four
    scaled series over all scale factors with size at most n_max.  Every
    returned tuple satisfies the rank inequality with equality.
    """
    if h == 0:
        return list(_L0)
    if h > 0 or h % 2:
        raise UnsupportedIndexError("base lists exist for h = 0 or even h < 0")
    if n_max is None:
        raise ValueError("n_max is required for the scaled series")
    out = []
    d = 1
    while 2 * d <= n_max:
        for item in _series(d):
            if item.n <= n_max:
                out.append(item)
        d += 1
    return sorted(out, key=lambda m: (m.n, m.mvs))
