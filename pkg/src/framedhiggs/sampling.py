"""Seed-deterministic random rational data for models and tests.

Numerators and denominators are bounded by a configured height so exact
arithmetic stays fast and runs are reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .deformation import FramedHiggsModel, framed_higgs_model
from .liealg import AlgebraElement, AlgebraModel


def random_fraction(rng: random.Random, height: int = 10) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_algebra_element(model: AlgebraModel, rng: random.Random, height: int = 10,
                           subspace: Sequence[Sequence[Fraction]] | None = None) -> AlgebraElement:
    """Random element, optionally inside the span of given coordinate vectors."""
    if subspace is None:
        coords = [random_fraction(rng, height) for _ in range(model.group.dim)]
        return model.from_coords(coords)
    acc = [Fraction(0)] * model.group.dim
    for vec in subspace:
        c = random_fraction(rng, height)
        acc = [a + c * v for a, v in zip(acc, vec)]
    return model.from_coords(acc)


def random_residue_tuple(model: AlgebraModel, rng: random.Random, n: int,
                         height: int = 10,
                         subspaces: Sequence[Sequence[Sequence[Fraction]]] | None = None,
                         zero_sum: bool = True) -> list[AlgebraElement]:
    """n random residues, the last balancing the sum to zero when requested."""
    count = n - 1 if zero_sum else n
    out = [random_algebra_element(model, rng, height,
                                  None if subspaces is None else subspaces[i])
           for i in range(count)]
    if zero_sum:
        total = out[0] if out else model.zero()
        for el in out[1:]:
            total = total + el
        out.append(total.scale(-1))
    return out


def seeded_model(group_id: str, points: Sequence, framing: str, seed: int,
                 height: int = 10) -> FramedHiggsModel:
    """Reproducible random framed model; the balancing residue must itself be
    framing-compatible, which holds whenever the framing type is uniform."""
    rng = random.Random(seed)
    algebra = AlgebraModel(group_id)
    from .liealg import torus_framing, trivial_framing, trace_form
    form = trace_form(group_id)
    if framing == "trivial":
        fr = trivial_framing(algebra, form)
    elif framing == "torus":
        fr = torus_framing(algebra, form)
    else:
        raise ValueError(f"unknown framing selector {framing!r}")
    perp_coords = [algebra.coords(p) for p in fr.perp]
    n = len(points)
    residues = random_residue_tuple(algebra, rng, n, height,
                                    [perp_coords] * n)
    return framed_higgs_model(group_id, points, residues, framing)
