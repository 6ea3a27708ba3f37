"""Multivariable Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` has exponent 1.  Coefficients are
Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exp = Tuple[int, ...]


@dataclass(frozen=True)
class LaurentPoly:
    nvars: int
    terms: Mapping[Exp, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(e): c for e, c in self.terms.items() if c}
        for e in clean:
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} does not have {self.nvars} entries")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, doubled: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(len(doubled), {tuple(doubled): c})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[Exp, int] = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: Dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        out = LaurentPoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def equals_up_to_sign(self, other: "LaurentPoly") -> bool:
        return self == other or self == -other

    def substitute_equal(self) -> "LaurentPoly":
        """Set every variable equal to a single one."""
        out: Dict[Exp, int] = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(1, out)

    def to_json(self) -> list:
        return [{"exponent": list(e), "coefficient": c} for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, items: Iterable[dict], nvars: int) -> "LaurentPoly":
        return cls(nvars, {tuple(d["exponent"]): d["coefficient"] for d in items})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = []
            for i, d in enumerate(e):
                if d:
                    ex = Fraction(d, 2)
                    name = f"t{i + 1}" if self.nvars > 1 else "t"
                    mono.append(name if ex == 1 else f"{name}^{ex}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def t_var(i: int, nvars: int, half_steps: int = 2) -> LaurentPoly:
    """``t_i`` raised to ``half_steps/2``."""
    e = [0] * nvars
    e[i] = half_steps
    return LaurentPoly.monomial(e)


def v_factor(i: int, nvars: int) -> LaurentPoly:
    """t_i - 2 + t_i^-1."""
    one = LaurentPoly.constant(1, nvars)
    return t_var(i, nvars) - one * 2 + t_var(i, nvars, -2)
