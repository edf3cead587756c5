"""Problem data for b*x[n+1] = a*x[n] + f[n] (mod m).

A forcing sequence is a finite prefix plus an optional eventual period;
with a period the sequence is totally defined, without one any question
about unseen indices is only decidable "on the provided support".
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .modring import InvalidModulus, ModulusMismatch, Residue, gcd3


class InsufficientData(LookupError):
    """A forcing term beyond the provided support was requested."""

    def __init__(self, index: int):
        super().__init__(f"forcing term at index {index} is beyond the provided support")
        self.index = index


class NonDivisibleForcing(ValueError):
    """gcd reduction requires d | f[n]; some term fails."""

    def __init__(self, witness: int):
        super().__init__(f"forcing term at index {witness} is not divisible by the gcd")
        self.witness = witness


class InvalidLiftDigit(ValueError):
    """A lift digit fell outside {0, ..., d-1}."""


@dataclass(frozen=True)
class SequenceSpec:
    """Forcing terms f[0..N-1]; if period p is set, f[n+p] == f[n] for n >= N-p."""

    terms: tuple[Residue, ...]
    period: int | None = None

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a forcing sequence needs at least one term")
        m = self.terms[0].modulus
        for t in self.terms:
            if t.modulus != m:
                raise ModulusMismatch(f"forcing terms mix moduli {m} and {t.modulus}")
        if self.period is not None and not 1 <= self.period <= len(self.terms):
            raise ValueError(f"period must lie in [1, {len(self.terms)}], got {self.period}")

    @classmethod
    def from_ints(cls, values: Sequence[int], modulus: int, period: int | None = None) -> SequenceSpec:
        return cls(tuple(Residue(v, modulus) for v in values), period)

    @property
    def modulus(self) -> int:
        return self.terms[0].modulus

    def term(self, n: int) -> Residue:
        if n < 0:
            raise ValueError(f"forcing index must be non-negative, got {n}")
        if n < len(self.terms):
            return self.terms[n]
        if self.period is None:
            raise InsufficientData(n)
        # fold n into the final period window of the prefix
        start = len(self.terms) - self.period
        return self.terms[start + (n - start) % self.period]


@dataclass(frozen=True)
class ProblemSpec:
    """One equation b*x[n+1] = a*x[n] + f[n] over Z_m; a, b stored canonically."""

    m: int
    a: int
    b: int
    forcing: SequenceSpec

    def __post_init__(self) -> None:
        if self.m < 2:
            raise InvalidModulus(f"equation modulus must be >= 2, got {self.m}")
        if self.forcing.modulus != self.m:
            raise ModulusMismatch(
                f"forcing lives mod {self.forcing.modulus}, equation mod {self.m}"
            )
        object.__setattr__(self, "a", self.a % self.m)
        object.__setattr__(self, "b", self.b % self.m)

    @property
    def A(self) -> Residue:
        return Residue(self.a, self.m)

    @property
    def B(self) -> Residue:
        return Residue(self.b, self.m)

    @property
    def d(self) -> int:
        return gcd3(self.a, self.b, self.m)


@dataclass(frozen=True)
class ReducedSpec:
    """The gcd-reduced equation over Z_{m/d}: (b/d)*x[n+1] = (a/d)*x[n] + f[n]/d.

    The reduced modulus may be 1 (the null ring) when d == m; as_problem()
    is only available for a reduced modulus >= 2.
    """

    d: int
    m: int
    a: int
    b: int
    forcing: SequenceSpec
    y0: Residue | None = None

    def as_problem(self) -> ProblemSpec:
        return ProblemSpec(self.m, self.a, self.b, self.forcing)


def first_nondivisible_index(forcing: SequenceSpec, d: int) -> int | None:
    """First prefix index whose term is not a multiple of d.

    Scanning the prefix decides all indices when the sequence is periodic,
    since extension values repeat prefix values.
    """
    if d == 1:
        return None
    for n, t in enumerate(forcing.terms):
        if t.value % d != 0:
            return n
    return None


def reduce_by_gcd(spec: ProblemSpec, y0: Residue | None = None) -> ReducedSpec:
    """Divide the whole equation by d = gcd(a, b, m).

    Requires d | f[n] on the decidable support; raises NonDivisibleForcing
    with the first failing index otherwise. For d == 1 this is an isomorphic
    restatement of the input.
    """
    if y0 is not None and y0.modulus != spec.m:
        raise ModulusMismatch(f"initial value {y0} is not a residue mod {spec.m}")
    d = spec.d
    witness = first_nondivisible_index(spec.forcing, d)
    if witness is not None:
        raise NonDivisibleForcing(witness)
    mp = spec.m // d
    reduced_terms = tuple(Residue(t.value // d, mp) for t in spec.forcing.terms)
    forcing = SequenceSpec(reduced_terms, spec.forcing.period)
    reduced_y0 = Residue(y0.value, mp) if y0 is not None else None
    return ReducedSpec(d, mp, spec.a // d, spec.b // d, forcing, reduced_y0)


def lift_solution(xprime: Sequence[Residue], alpha: Sequence[int], d: int, m: int) -> list[Residue]:
    """Recombine a reduced solution with lift digits: x[n] = x'[n] + alpha[n]*(m/d) mod m.

    Every residue mod m decomposes uniquely this way, so distinct digit
    choices give distinct lifted values.
    """
    if d < 1 or m % d != 0:
        raise ValueError(f"d must be a positive divisor of m, got d={d}, m={m}")
    if len(xprime) != len(alpha):
        raise ValueError(f"got {len(xprime)} values but {len(alpha)} digits")
    mp = m // d
    out: list[Residue] = []
    for x, digit in zip(xprime, alpha):
        if x.modulus != mp:
            raise ModulusMismatch(f"expected residues mod {mp}, got {x}")
        if not 0 <= digit < d:
            raise InvalidLiftDigit(f"lift digit {digit} not in [0, {d})")
        out.append(Residue(x.value + digit * mp, m))
    return out
