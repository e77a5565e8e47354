"""Deciders for the counting CSP dichotomies over finite signature sets.

Each variant has a fixed list of tractable classes; a set is tractable when
one class contains every member, and #P-hard otherwise.  Verdicts carry the
per-signature membership table and can be re-verified from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .classification import classify
from .errors import DBelowThree, PreconditionViolated
from .signature import Signature

CLASS_ORDER = ("A", "P", "M_hat", "MP_hat")

VARIANT_CLASSES = {
    "CSP": ("A", "P"),
    "RD_CSP": ("A", "P"),
    "PL_CSP": ("A", "P", "M_hat"),
    "PL_RD_CSP": ("A", "P", "M_hat"),
    "CSP_PL": ("A", "P", "MP_hat"),
    "RD_CSP_PL": ("A", "P", "MP_hat"),
}


@dataclass(frozen=True)
class ProblemVariant:
    kind: str
    D: int | None = None

    def __post_init__(self):
        if self.kind not in VARIANT_CLASSES:
            raise PreconditionViolated(f"unknown variant {self.kind!r}")
        if self.kind.startswith(("RD", "PL_RD")):
            if self.D is None or self.D < 3:
                raise DBelowThree("bounded-occurrence variants need D >= 3")
        elif self.D is not None:
            raise PreconditionViolated(f"variant {self.kind} takes no occurrence bound")

    @classmethod
    def parse(cls, text: str, D: int | None = None) -> ProblemVariant:
        """Accepts ``pl-csp``, ``PL_CSP``, ``rd-csp`` and so on."""
        return cls(text.strip().upper().replace("-", "_"), D)

    @property
    def classes(self) -> tuple:
        return VARIANT_CLASSES[self.kind]


@dataclass
class DichotomyVerdict:
    outcome: str  # "poly" or "sharp_p_hard"
    cls: str | None
    variant: ProblemVariant
    membership: list = field(default_factory=list)  # one {class: bool} per signature
    counterexamples: dict = field(default_factory=dict)  # class -> signature index

    def to_json(self) -> dict:
        out = {"format": 1, "outcome": self.outcome, "variant": self.variant.kind}
        if self.variant.D is not None:
            out["D"] = self.variant.D
        if self.cls is not None:
            out["class"] = self.cls
        out["membership"] = [{c: m[c] for c in self.variant.classes} for m in self.membership]
        if self.counterexamples:
            out["counterexamples"] = {c: self.counterexamples[c] for c in self.variant.classes}
        return out


def membership_table(F) -> list:
    return [classify(f).flags() for f in F]


def decide(F, variant: ProblemVariant) -> DichotomyVerdict:
    F = list(F)
    table = membership_table(F)
    for c in variant.classes:
        if all(m[c] for m in table):
            return DichotomyVerdict("poly", c, variant, table)
    counter = {c: next(j for j, m in enumerate(table) if not m[c]) for c in variant.classes}
    return DichotomyVerdict("sharp_p_hard", None, variant, table, counter)


def verify(F, verdict: DichotomyVerdict) -> bool:
    """Recompute every membership the verdict relies on."""
    F = list(F)
    fresh = membership_table(F)
    classes = verdict.variant.classes
    if verdict.outcome == "poly":
        if not all(m[verdict.cls] for m in fresh):
            return False
        earlier = classes[: classes.index(verdict.cls)]
        return all(not all(m[c] for m in fresh) for c in earlier)
    return all(not fresh[j][c] for c, j in verdict.counterexamples.items()) and set(
        verdict.counterexamples
    ) == set(classes)


def permutation_closure(F) -> list:
    """Every variable permutation of every member, without duplicates."""
    from itertools import permutations

    from .signature import permute

    out: list[Signature] = []
    for f in F:
        for p in permutations(range(1, f.arity + 1)):
            g = permute(f, list(p))
            if g not in out:
                out.append(g)
    return out


__all__ = [
    "CLASS_ORDER",
    "VARIANT_CLASSES",
    "ProblemVariant",
    "DichotomyVerdict",
    "membership_table",
    "decide",
    "verify",
    "permutation_closure",
]
