"""Particles for the p-adic Poincare group P = V x' SO(V).

Dual points are identified with V through the form, so the mass of a dual
point chi is Q(chi).  Nonzero masses give massive orbits whose little group
is SO of the orthogonal complement; nonzero null points give one massless
orbit whose little group is the Poincare group of the null reduction; the
origin is the trivial orbit.  Little groups are described by invariant
tuples (dim, disc class, hasse, witt index).

Dimensional reduction peels off hyperbolic planes; whether a reduction step
is massive or massless is a choice of representation, so it is an input to
``conformal_verdict`` rather than something computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import linalg as la
from .padic import PAdic, PrecisionError, square_class_reps
from .quadform import (
    AnisotropicError,
    QuadSpace,
    invariants,
    invariants_json,
    is_isotropic,
    isotropic_vector,
    null_reduction,
    orthogonal_complement,
    represents,
    vector_of_norm,
    witt_decompose,
)

MASSIVE, MASSLESS, TRIVIAL = "massive", "massless", "trivial"
ANISOTROPIC_STOP, MASSIVE_STOP = "anisotropic-stop", "massive-stop"

ISOTROPY_MESSAGE = (
    "particle classification needs an isotropic space; this form has no "
    "nonzero null vector"
)


class InconsistentStepsError(ValueError):
    pass


class LittleGroup(NamedTuple):
    kind: str  # "SO", "Poincare" or "G"
    space: QuadSpace

    def descriptor(self) -> dict:
        inv = invariants(self.space)
        out = invariants_json(inv)
        out["witt_index"] = witt_decompose(self.space).witt_index
        out["group"] = self.kind
        return out


@dataclass(frozen=True)
class ParticleClass:
    kind: str
    little_group: LittleGroup
    mass: PAdic | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "little_group": self.little_group.descriptor()}
        if self.mass is not None:
            out["mass"] = self.mass.to_json()
            out["mass_fraction"] = str(self.mass.to_fraction())
        return out


def _require_isotropic(V: QuadSpace):
    if not is_isotropic(V):
        raise AnisotropicError(ISOTROPY_MESSAGE)


def classify_dual(V: QuadSpace, chi) -> ParticleClass:
    _require_isotropic(V)
    chi = tuple(chi)
    if len(chi) != V.dim:
        raise ValueError("dual point has the wrong dimension")
    if all(c.is_zero() for c in chi):
        return ParticleClass(TRIVIAL, LittleGroup("G", V))
    m = V.Q(chi)
    if not m.is_zero():
        return ParticleClass(MASSIVE, LittleGroup("SO", orthogonal_complement(V, chi)), m)
    if m.absprec <= 2 * la.min_valuation(chi):
        raise PrecisionError("mass cannot be told apart from zero at this precision")
    return ParticleClass(MASSLESS, LittleGroup("Poincare", null_reduction(V, chi)))


def orbit_census(V: QuadSpace) -> dict:
    _require_isotropic(V)
    p = V.prime
    prec = max(a.prec for a in V.diag)
    rows = []
    for rep in square_class_reps(p):
        m = PAdic.from_rational(p, rep, 1, prec)
        x = vector_of_norm(V, m)
        if not (V.Q(x) == m):
            raise PrecisionError("norm witness lost to precision")
        cls = classify_dual(V, x)
        rows.append(
            {
                "mass_class": rep,
                "represented": represents(V, m),
                "witness": [c.to_json() for c in x],
                "little_group": cls.little_group.descriptor(),
            }
        )
    r = isotropic_vector(V).vector
    massless = classify_dual(V, r)
    zero = classify_dual(V, la.zeros(p, V.dim))
    return {
        "form": invariants_json(invariants(V)),
        "massive": rows,
        "massless": {"witness": [c.to_json() for c in r], "little_group": massless.little_group.descriptor()},
        "trivial": {"little_group": zero.little_group.descriptor()},
    }


@dataclass(frozen=True)
class ReductionChain:
    spaces: tuple
    terminal: str

    def dims(self) -> list:
        return [W.dim for W in self.spaces]

    def to_json(self) -> dict:
        out = []
        for W in self.spaces:
            row = invariants_json(invariants(W))
            row["diag"] = [a.to_json() for a in W.diag]
            row["isotropic"] = is_isotropic(W)
            out.append(row)
        return {"spaces": out, "dims": self.dims(), "terminal": self.terminal}


def reduction_chain(V: QuadSpace) -> ReductionChain:
    spaces = [V]
    cur = V
    while is_isotropic(cur):
        cur = null_reduction(cur, isotropic_vector(cur).vector)
        spaces.append(cur)
    return ReductionChain(tuple(spaces), ANISOTROPIC_STOP)


class Verdict(NamedTuple):
    conformal: str  # "No" or "Unknown"
    reason: str
    chain: ReductionChain

    def to_json(self) -> dict:
        return {"verdict": self.conformal, "reason": self.reason, "chain": self.chain.to_json()}


def conformal_verdict(chain: ReductionChain, step_kinds) -> Verdict:
    """Verdict on conformal symmetry for a particle reduced along ``chain``.

    Step i says whether the representation at level i is massive or
    massless.  A massive step ends the process and needs an isotropic
    space at that level; an all-massless list has to run down to the
    anisotropic end of the chain.
    """
    steps = list(step_kinds)
    n = len(chain.spaces)
    if not steps:
        raise InconsistentStepsError("step list is empty")
    for i, s in enumerate(steps):
        if s not in (MASSIVE, MASSLESS):
            raise InconsistentStepsError(f"unknown step kind {s!r}")
        if s == MASSIVE and i != len(steps) - 1:
            raise InconsistentStepsError("a massive step ends the reduction; nothing may follow it")
    if steps[-1] == MASSIVE:
        if len(steps) > n - 1:
            raise InconsistentStepsError(
                "massive step at a level whose space is anisotropic"
            )
        cut = ReductionChain(chain.spaces[: len(steps)], MASSIVE_STOP)
        reason = "massive" if len(steps) == 1 else "eventually-massive"
        return Verdict("No", reason, cut)
    if len(steps) != n - 1:
        raise InconsistentStepsError(
            f"{len(steps)} massless steps given but the chain admits {n - 1}"
        )
    return Verdict("Unknown", "all-massless", chain)
