"""Conjugacy and twinning: 216 maps, 36 conjugacy classes, 21 final classes."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Perm3, TripTriple, all_triples
from .language_analysis import LanguageSample, relabel, reverse_language, reverse_word

P12 = Perm3.parse("(12)")
P13 = Perm3.parse("(13)")
E = Perm3.identity()

VERDICTS = {
    "(e,e,e)": "3n class",
    "(e,23,23)": "2n+1 class",
    "(e,12,e)": "degenerate",
    "(e,12,13)": "degenerate",
    "(e,132,e)": "degenerate",
    "(e,13,e)": "hidden-R2",
    "(e,23,e)": "open",
}
COUNTEREXAMPLE = ">3n counterexample"


def twin(t: TripTriple) -> TripTriple:
    """(sigma (13), (12) tau_1, (12) tau_0)."""
    return TripTriple(t.sigma * P13, P12 * t.tau1, P12 * t.tau0)


def conjugate(t: TripTriple, rho: Perm3) -> TripTriple:
    """Relabeling a (sigma,tau0,tau1) language by rho gives a (rho sigma, tau0 rho^-1, tau1 rho^-1) one."""
    inv = rho.inverse()
    return TripTriple(rho * t.sigma, t.tau0 * inv, t.tau1 * inv)


def conjugacy_rep(t: TripTriple) -> TripTriple:
    """The (e, tau0 sigma, tau1 sigma) member of the conjugacy class."""
    return conjugate(t, t.sigma.inverse())


@dataclass(frozen=True)
class EquivClass:
    representative: TripTriple
    members: tuple[TripTriple, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def starred(self) -> bool:
        return self.size == 6

    @property
    def verdict(self) -> str:
        return VERDICTS.get(str(self.representative), COUNTEREXAMPLE)

    def to_json(self) -> dict:
        return {"representative": str(self.representative), "size": self.size,
                "starred": self.starred, "verdict": self.verdict,
                "members": [str(m) for m in self.members]}


# representatives in the customary listing order
REPRESENTATIVES = [
    "(e,e,e)", "(e,12,e)", "(e,13,e)", "(e,23,e)", "(e,123,e)", "(e,132,e)",
    "(e,e,12)", "(e,12,12)", "(e,13,12)", "(e,23,12)", "(e,123,12)",
    "(e,e,13)", "(e,12,13)", "(e,23,13)", "(e,123,13)",
    "(e,e,23)", "(e,23,23)", "(e,123,23)",
    "(e,e,123)", "(e,123,123)", "(e,e,132)",
]


def enumerate_classes() -> list[EquivClass]:
    rank = {r: i for i, r in enumerate(REPRESENTATIVES)}
    groups: dict[frozenset, set] = {}
    for t in all_triples():
        reps = frozenset({str(conjugacy_rep(t)), str(conjugacy_rep(twin(t)))})
        groups.setdefault(reps, set()).add(t)
    out = []
    for reps, members in groups.items():
        named = [r for r in reps if r in rank]
        if len(named) != 1:
            raise RuntimeError(f"class {sorted(reps)} does not contain exactly one listed representative")
        rep = TripTriple.parse(named[0])
        out.append(EquivClass(rep, tuple(sorted(members, key=str))))
    out.sort(key=lambda c: rank[str(c.representative)])
    if len(out) != 21 or sum(c.size for c in out) != 216:
        raise RuntimeError("class partition mismatch")
    return out


def class_of(t: TripTriple) -> EquivClass:
    for c in enumerate_classes():
        if t in c.members:
            return c
    raise KeyError(str(t))  # unreachable: every triple lies in a class


__all__ = [
    "EquivClass", "enumerate_classes", "class_of", "twin", "conjugate", "conjugacy_rep",
    "relabel", "reverse_word", "reverse_language", "LanguageSample",
]
