"""Classification and closed-form solution of b*x[n+1] = a*x[n] + f[n] over Z_m.

The split of Z_m by b separates the equation into an invertible-b part
(solvable forward and backward from any start value) and a nilpotent-b part
(one forced value per index, read off a finite window of future forcing
terms). Everything else is bookkeeping: a gcd reduction handles the
non-coprime case by recursing exactly once into the coprime machinery and
re-attaching the lost information as per-index lift digits.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .crt import CrtIso, crt_iso, project, combine, split_modulus
from .modring import ModulusMismatch, Residue, factorize, nilpotency_index
from .problem import (
    InsufficientData,
    InvalidLiftDigit,
    NonDivisibleForcing,
    ProblemSpec,
    SequenceSpec,
    first_nondivisible_index,
    reduce_by_gcd,
)


class InsufficientLookahead(LookupError):
    """The nilpotent part at index n needs forcing terms past the support."""

    def __init__(self, index: int, window: int):
        super().__init__(
            f"value at index {index} needs forcing terms {index}..{index + window - 1}, "
            "which run past the provided support"
        )
        self.index = index
        self.window = window


@dataclass(frozen=True)
class SplitProblem:
    """The two component equations of a problem under the split of m by b."""

    iso: CrtIso
    a1: Residue
    b1: Residue
    f1: SequenceSpec
    a2: Residue
    b2: Residue
    f2: SequenceSpec
    ind_b2: int | None  # nilpotency index of b2; None when the m2 side is trivial


def split_problem(spec: ProblemSpec) -> SplitProblem:
    split = split_modulus(factorize(spec.m), spec.b)
    iso = crt_iso(split)

    def component(i: int) -> tuple[Residue, Residue, SequenceSpec]:
        a_i = project(spec.A, i, split)
        b_i = project(spec.B, i, split)
        f_i = SequenceSpec(
            tuple(project(t, i, split) for t in spec.forcing.terms), spec.forcing.period
        )
        return a_i, b_i, f_i

    a1, b1, f1 = component(1)
    a2, b2, f2 = component(2)
    ind_b2 = nilpotency_index(b2) if split.m2 != 1 else None
    return SplitProblem(iso, a1, b1, f1, a2, b2, f2, ind_b2)


def explicit_solution(a1: Residue, b1: Residue, x10: Residue, f1: SequenceSpec, n: int) -> Residue:
    """Index-n value of the invertible-b recursion started at x10.

    x[n] = (b1^-1 a1)^n x10 + sum_{s=0}^{n-1} a1^s b1^-(s+1) f1[n-1-s];
    at n == 0 this is x10 itself.
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    binv = b1.inverse()
    acc = (binv**n) * (a1**n) * x10
    for s in range(n):
        acc = acc + (a1**s) * (binv ** (s + 1)) * f1.term(n - 1 - s)
    return acc


def nilpotent_solution(a2: Residue, b2: Residue, f2: SequenceSpec, n: int) -> Residue:
    """The single index-n value the nilpotent-b recursion admits.

    x[n] = -sum_{s=0}^{ind-1} a2^-(s+1) b2^s f2[n+s]; the whole sequence is
    forced, no initial value participates.
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    ind = nilpotency_index(b2)
    ainv = a2.inverse()
    acc = Residue(0, a2.modulus)
    for s in range(ind):
        try:
            t = f2.term(n + s)
        except InsufficientData:
            raise InsufficientLookahead(n, ind) from None
        acc = acc + (ainv ** (s + 1)) * (b2**s) * t
    return -acc


def compatibility_residue(sp: SplitProblem) -> Residue:
    """The only start value (mod m2) consistent with the nilpotent part."""
    if sp.iso.split.m2 == 1:
        raise ValueError("the nilpotent side is trivial; every start value is consistent")
    return nilpotent_solution(sp.a2, sp.b2, sp.f2, 0)


@dataclass(frozen=True)
class Classification:
    """Solution-set verdict for the free equation (no pinned start).

    kind is "none" (witness_index set), "finite" (count == m1 distinct
    solutions) or "infinite" (d, m1_prime set). support_qualified marks a
    divisibility check that rested on a finite aperiodic prefix.
    """

    kind: str
    count: int | None = None
    d: int | None = None
    m1_prime: int | None = None
    witness_index: int | None = None
    support_qualified: bool = False


@dataclass(frozen=True)
class InitialClassification:
    """Verdict for the pinned problem x[0] = y0.

    kind is "unique", "infinitely_many" or "none"; for "none", reason is
    "divisibility" (witness_index set) or "compatibility" (required/actual
    set, both over the relevant nilpotent-side modulus).
    """

    kind: str
    reason: str | None = None
    witness_index: int | None = None
    required: Residue | None = None
    actual: Residue | None = None


def classify_equation(spec: ProblemSpec) -> Classification:
    d = spec.d
    if d == 1:
        split = split_modulus(factorize(spec.m), spec.b)
        return Classification("finite", count=split.m1)
    witness = first_nondivisible_index(spec.forcing, d)
    if witness is not None:
        return Classification("none", witness_index=witness)
    mp = spec.m // d
    psplit = split_modulus(factorize(mp), spec.b // d)
    return Classification(
        "infinite",
        d=d,
        m1_prime=psplit.m1,
        support_qualified=spec.forcing.period is None,
    )


def classify_initial_problem(spec: ProblemSpec, y0: Residue) -> InitialClassification:
    if y0.modulus != spec.m:
        raise ModulusMismatch(f"initial value {y0} is not a residue mod {spec.m}")
    if spec.d == 1:
        sp = split_problem(spec)
        if sp.iso.split.m2 == 1:
            return InitialClassification("unique")
        required = compatibility_residue(sp)
        actual = project(y0, 2, sp.iso.split)
        if actual == required:
            return InitialClassification("unique")
        return InitialClassification(
            "none", reason="compatibility", required=required, actual=actual
        )
    try:
        red = reduce_by_gcd(spec, y0)
    except NonDivisibleForcing as exc:
        return InitialClassification("none", reason="divisibility", witness_index=exc.witness)
    if red.m == 1:
        return InitialClassification("infinitely_many")
    sp = split_problem(red.as_problem())
    if sp.iso.split.m2 == 1:
        return InitialClassification("infinitely_many")
    required = compatibility_residue(sp)
    actual = project(red.y0, 2, sp.iso.split)
    if actual == required:
        return InitialClassification("infinitely_many")
    return InitialClassification("none", reason="compatibility", required=required, actual=actual)


DigitLookup = Callable[[int], int]


@dataclass(frozen=True)
class GeneralSolution:
    """Every solution of a (solvable) problem, as an evaluator over free parameters.

    value(n, x10, alpha) returns x[n] mod modulus, where x10 ranges over
    [0, free_initial_modulus) and alpha[i] supplies the lift digit for index
    i (missing digits default to 0; digits pinned by an initial condition
    override the caller's). Evaluating index n consumes forcing terms up
    through n + lookahead.
    """

    kind: str  # "explicit" | "nilpotent" | "mixed" | "lifted"
    modulus: int
    free_initial_modulus: int
    lift_digit_bound: int
    lookahead: int
    fixed_digits: tuple[tuple[int, int], ...]
    _value_fn: Callable[[int, int, DigitLookup], Residue] = field(repr=False)

    def value(self, n: int, x10: int = 0, alpha: Sequence[int] = ()) -> Residue:
        if n < 0:
            raise ValueError(f"index must be non-negative, got {n}")
        if not 0 <= x10 < self.free_initial_modulus:
            raise ValueError(
                f"free initial residue {x10} not in [0, {self.free_initial_modulus})"
            )
        pinned = dict(self.fixed_digits)
        bound = self.lift_digit_bound

        def digit_at(i: int) -> int:
            if i in pinned:
                return pinned[i]
            digit = alpha[i] if i < len(alpha) else 0
            if not 0 <= digit < bound:
                raise InvalidLiftDigit(f"lift digit {digit} at index {i} not in [0, {bound})")
            return digit

        return self._value_fn(n, x10, digit_at)

    def sequence(self, length: int, x10: int = 0, alpha: Sequence[int] = ()) -> list[Residue]:
        return [self.value(n, x10, alpha) for n in range(length)]


def _free_solution_coprime(spec: ProblemSpec) -> GeneralSolution:
    """General solution when gcd(a, b, m) == 1, in its three shapes."""
    sp = split_problem(spec)
    split = sp.iso.split
    if split.m2 == 1:
        # b invertible mod m: any start value extends uniquely both ways
        def explicit_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
            return explicit_solution(spec.A, spec.B, Residue(x10, spec.m), spec.forcing, n)

        return GeneralSolution("explicit", spec.m, spec.m, 1, 0, (), explicit_fn)
    if split.m1 == 1:
        # b nilpotent mod m: the whole sequence is forced
        def nilpotent_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
            return nilpotent_solution(spec.A, spec.B, spec.forcing, n)

        return GeneralSolution("nilpotent", spec.m, 1, 1, sp.ind_b2 - 1, (), nilpotent_fn)

    def mixed_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
        part1 = explicit_solution(sp.a1, sp.b1, Residue(x10, split.m1), sp.f1, n)
        part2 = nilpotent_solution(sp.a2, sp.b2, sp.f2, n)
        return combine(sp.iso, part1, part2)

    return GeneralSolution("mixed", spec.m, split.m1, 1, sp.ind_b2 - 1, (), mixed_fn)


def general_solution(spec: ProblemSpec) -> GeneralSolution:
    """Every solution of the free equation; raises ValueError if there are none."""
    cls = classify_equation(spec)
    if cls.kind == "none":
        raise ValueError(
            f"equation has no solutions: forcing term {cls.witness_index} "
            f"is not divisible by d={spec.d}"
        )
    if cls.kind == "finite":
        return _free_solution_coprime(spec)
    red = reduce_by_gcd(spec)
    mp = red.m
    if mp == 1:
        # d == m: the reduced equation lives in the null ring, every digit choice solves
        def digits_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
            return Residue(digit_at(n), spec.m)

        return GeneralSolution("lifted", spec.m, 1, red.d, 0, (), digits_fn)
    inner = _free_solution_coprime(red.as_problem())

    def lifted_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
        xp = inner._value_fn(n, x10, digit_at)
        return Residue(xp.value + digit_at(n) * mp, spec.m)

    return GeneralSolution(
        "lifted", spec.m, inner.free_initial_modulus, red.d, inner.lookahead, (), lifted_fn
    )


def solve_initial_problem(spec: ProblemSpec, y0: Residue) -> GeneralSolution:
    """Every solution pinned at x[0] = y0; raises ValueError when there are none."""
    cls = classify_initial_problem(spec, y0)
    if cls.kind == "none":
        if cls.reason == "divisibility":
            raise ValueError(
                f"no solution: forcing term {cls.witness_index} is not divisible by d={spec.d}"
            )
        raise ValueError(
            f"no solution: start value must satisfy x[0] = {cls.required.value} "
            f"(mod {cls.required.modulus}), got {cls.actual.value}"
        )
    if cls.kind == "unique":
        inner = _free_solution_coprime(spec)
        pin = y0.value % inner.free_initial_modulus

        def pinned_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
            return inner._value_fn(n, pin, digit_at)

        return GeneralSolution(inner.kind, spec.m, 1, 1, inner.lookahead, (), pinned_fn)
    red = reduce_by_gcd(spec, y0)
    mp = red.m
    alpha0 = y0.value // mp  # the digit index 0 must take so that x[0] == y0
    if mp == 1:
        def digits_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
            return Residue(digit_at(n), spec.m)

        return GeneralSolution("lifted", spec.m, 1, red.d, 0, ((0, alpha0),), digits_fn)
    inner = solve_initial_problem(red.as_problem(), red.y0)

    def lifted_fn(n: int, x10: int, digit_at: DigitLookup) -> Residue:
        xp = inner._value_fn(n, 0, digit_at)
        return Residue(xp.value + digit_at(n) * mp, spec.m)

    return GeneralSolution(
        "lifted", spec.m, 1, red.d, inner.lookahead, ((0, alpha0),), lifted_fn
    )


def truncation_depth(spec: ProblemSpec) -> int:
    """Trailing positions of a length-N constrained prefix left unpinned.

    Constraints n = 0..N-2 force the nilpotent-side value at position n only
    when the whole window n..n+ind-1 fits, so the last ind positions stay
    partially free; with a trivial nilpotent side nothing is free. This is
    the right amount to cut before comparing prefix counts against the
    solution-set cardinalities of the infinite problem.
    """
    d = spec.d
    if d == 1:
        split = split_modulus(factorize(spec.m), spec.b)
        if split.m2 == 1:
            return 0
        return nilpotency_index(Residue(spec.b, split.m2))
    mp = spec.m // d
    if mp == 1:
        return 0
    psplit = split_modulus(factorize(mp), (spec.b // d) % mp)
    if psplit.m2 == 1:
        return 0
    return nilpotency_index(Residue(spec.b // d, psplit.m2))
