"""Coprime two-way splitting of Z_m driven by one distinguished element.

Z_m factors as Z_m1 x Z_m2 where m2 collects exactly the prime powers of m
whose prime divides b, and m1 the rest. Modulo m1 the element b is a unit;
modulo m2 it is nilpotent. b == 0 sends everything to the m2 side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modring import Factorization, ModulusMismatch, Residue


@dataclass(frozen=True)
class SplitModuli:
    """m == m1 * m2 with gcd(m1, m2) == 1."""

    m: int
    m1: int
    m2: int
    fact_m1: Factorization
    fact_m2: Factorization


def split_modulus(fact_m: Factorization, b: int) -> SplitModuli:
    """Partition the prime powers of m by whether their prime divides b."""
    coprime: list[tuple[int, int]] = []
    shared: list[tuple[int, int]] = []
    for p, k in fact_m.factors:
        (shared if b % p == 0 else coprime).append((p, k))
    m1 = math.prod(p**k for p, k in coprime)
    m2 = math.prod(p**k for p, k in shared)
    return SplitModuli(
        fact_m.n, m1, m2, Factorization(m1, tuple(coprime)), Factorization(m2, tuple(shared))
    )


@dataclass(frozen=True)
class CrtIso:
    """Recombination data for the split: e1 = inverse of m2 mod m1, e2 = inverse of m1 mod m2.

    Either helper is 0 when its side is the null ring; combine degenerates to the
    identity embedding then.
    """

    split: SplitModuli
    e1: int
    e2: int


def crt_iso(split: SplitModuli) -> CrtIso:
    e1 = Residue(split.m2, split.m1).inverse().value if split.m1 != 1 else 0
    e2 = Residue(split.m1, split.m2).inverse().value if split.m2 != 1 else 0
    return CrtIso(split, e1, e2)


def project(x: Residue, target: int, split: SplitModuli) -> Residue:
    """Image of x mod m in component 1 or 2 of the split."""
    if x.modulus != split.m:
        raise ModulusMismatch(f"expected a residue mod {split.m}, got {x}")
    if target == 1:
        return Residue(x.value, split.m1)
    if target == 2:
        return Residue(x.value, split.m2)
    raise ValueError(f"target component must be 1 or 2, got {target}")


def combine(iso: CrtIso, t1: Residue, t2: Residue) -> Residue:
    """The unique x mod m with x == t1 (mod m1) and x == t2 (mod m2)."""
    sp = iso.split
    if t1.modulus != sp.m1 or t2.modulus != sp.m2:
        raise ModulusMismatch(
            f"expected residues mod {sp.m1} and mod {sp.m2}, got {t1} and {t2}"
        )
    if sp.m1 == 1:
        return Residue(t2.value, sp.m)
    if sp.m2 == 1:
        return Residue(t1.value, sp.m)
    return Residue(t1.value * iso.e1 * sp.m2 + t2.value * iso.e2 * sp.m1, sp.m)
