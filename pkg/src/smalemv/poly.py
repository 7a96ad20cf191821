"""Dense complex polynomials of exact degree.

Coefficients are stored in ascending power order (c_0, c_1, ..., c_d), the
leading coefficient is nonzero by construction, and every value is immutable,
so the degree of a ``ComplexPolynomial`` is always ``len(coeffs) - 1``.
Evaluation uses Horner's scheme with a fixed association order, which keeps
results reproducible across runs.

Besides the basic calculus this module builds polynomials from prescribed
critical points (the monic antiderivative of ``d*prod(z - zeta_j)`` vanishing
at 0) and applies affine conjugations ``A*P(a*z + b) + B``, the symmetry that
leaves mean-value quotients unchanged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Largest degree accepted at construction. Coefficient expansion conditioning
#: and the double-precision headroom of the 4**d bound interpretation degrade
#: well below this for desk-scale work.
MAX_DEGREE = 64


def _finite(value: complex | float, what: str) -> complex:
    z = complex(value)
    if not cmath.isfinite(z):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class ComplexPolynomial:
    """Complex polynomial ``c_0 + c_1 z + ... + c_d z**d`` with ``c_d != 0``.

    The leading coefficient must be nonzero exactly; a zero there would make
    the represented degree ambiguous. Degree-0 values can arise as derivatives
    of linear polynomials and are allowed, but operations that need critical
    points insist on higher degree themselves.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(_finite(c, "coefficient") for c in self.coeffs)
        if not coeffs:
            raise ValueError("coefficient sequence must not be empty")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError(
                f"degree {len(coeffs) - 1} exceeds supported maximum {MAX_DEGREE}"
            )
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def coefficient_scale(self) -> float:
        """max_k |c_k|; the reference scale for relative thresholds."""
        return max(abs(c) for c in self.coeffs)

    def evaluate(self, z: complex) -> complex:
        """P(z) by Horner's scheme."""
        z = _finite(z, "evaluation point")
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    __call__ = evaluate

    def derivative(self) -> "ComplexPolynomial":
        """P' with degree exactly one less; rejects degree-0 input."""
        if self.degree < 1:
            raise ValueError("derivative requires degree >= 1")
        return ComplexPolynomial(
            tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1)
        )

    def is_normal_form(self) -> bool:
        """True when monic with zero constant term, both held exactly."""
        return self.coeffs[-1] == 1 and self.coeffs[0] == 0


@dataclass(frozen=True)
class AffineMaps:
    """The two affine changes of variable of a conjugation.

    ``domain_scale``/``domain_shift`` act on the argument (z = a*w + b) and
    ``range_scale``/``range_shift`` on the value; both scales must be nonzero
    or the conjugation would collapse the degree.
    """

    domain_scale: complex
    domain_shift: complex
    range_scale: complex
    range_shift: complex

    def __post_init__(self) -> None:
        for name in ("domain_scale", "domain_shift", "range_scale", "range_shift"):
            object.__setattr__(self, name, _finite(getattr(self, name), name))
        if self.domain_scale == 0 or self.range_scale == 0:
            raise ValueError("affine scales must be nonzero")


IDENTITY_MAPS = AffineMaps(1.0, 0.0, 1.0, 0.0)


def from_critical_points(
    zetas: Sequence[complex], degree: int
) -> ComplexPolynomial:
    """Monic degree-d polynomial with P(0) = 0 and the given critical points.

    Expands ``prod(z - zeta_j)`` by sequential convolution (elementary
    symmetric functions), scales by ``degree`` to get P', and integrates term
    by term. Exactly ``degree - 1`` critical points are required.
    """
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    zetas = tuple(_finite(z, "critical point") for z in zetas)
    if len(zetas) != degree - 1:
        raise ValueError(
            f"need exactly {degree - 1} critical points for degree {degree}, "
            f"got {len(zetas)}"
        )
    prod: list[complex] = [1.0 + 0j]
    for zeta in zetas:
        nxt = [0j] * (len(prod) + 1)
        for k, c in enumerate(prod):
            nxt[k] += -zeta * c
            nxt[k + 1] += c
        prod = nxt
    # Integrate degree*prod; the leading term degree/degree is exactly 1.
    coeffs = [0j] + [degree * c / (k + 1) for k, c in enumerate(prod)]
    coeffs[-1] = 1.0 + 0j
    return ComplexPolynomial(tuple(coeffs))


def _compose_linear(
    coeffs: Sequence[complex], a: complex, b: complex
) -> list[complex]:
    """Coefficients of P(a*z + b); Horner-style synthetic substitution."""
    acc: list[complex] = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        nxt = [0j] * (len(acc) + 1)
        for k, v in enumerate(acc):
            nxt[k] += b * v
            nxt[k + 1] += a * v
        nxt[0] += c
        acc = nxt
    return acc


def affine_conjugate(P: ComplexPolynomial, maps: AffineMaps) -> ComplexPolynomial:
    """Coefficients of ``range_scale * P(domain_scale*z + domain_shift) + range_shift``.

    The degree is unchanged because both scales are nonzero.
    """
    out = _compose_linear(P.coeffs, maps.domain_scale, maps.domain_shift)
    out = [maps.range_scale * c for c in out]
    out[0] += maps.range_shift
    return ComplexPolynomial(tuple(out))


def normalize_for_theorem(
    P: ComplexPolynomial, z0: complex
) -> tuple[ComplexPolynomial, AffineMaps]:
    """Shift z0 to the origin and rescale to a monic polynomial vanishing there.

    Returns ``(Q, maps)`` with ``Q(w) = (P(w + z0) - P(z0)) / c_d`` and the
    maps that realize it. The mean-value quotients of (Q, 0, zeta - z0) equal
    those of (P, z0, zeta). Leading coefficient 1 and constant term 0 are
    assigned literally so downstream exact-form checks never see rounding
    residue.
    """
    z0 = _finite(z0, "normalization point")
    lead = P.coeffs[-1]
    shifted = _compose_linear(P.coeffs, 1.0, z0)
    value_at_z0 = shifted[0]
    out = [c / lead for c in shifted]
    out[0] = 0j
    out[-1] = 1.0 + 0j
    maps = AffineMaps(1.0, z0, 1.0 / lead, -value_at_z0 / lead)
    return ComplexPolynomial(tuple(out)), maps


def p0(degree: int) -> ComplexPolynomial:
    """The extremal example z**d - d*z (all mean-value quotients 1 - 1/d at 0)."""
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    coeffs = [0j] * (degree + 1)
    coeffs[1] = complex(-degree)
    coeffs[degree] = 1.0 + 0j
    return ComplexPolynomial(tuple(coeffs))


def pstar(degree: int) -> ComplexPolynomial:
    """The extremal example (z + 1)**d - 1 (single quotient 1/d at 0)."""
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    coeffs = [complex(math.comb(degree, k)) for k in range(degree + 1)]
    coeffs[0] = 0j
    return ComplexPolynomial(tuple(coeffs))


EXAMPLE_GENERATORS = {"p0": p0, "pstar": pstar}
