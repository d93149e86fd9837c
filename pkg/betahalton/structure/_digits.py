from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

CaseTag = Literal[
    "UniformCase",
    "SandwichCase",
    "BAdicEquivalentCase",
    "CompositeCase",
    "NotUnitIntervalOrNotDense",
]


@dataclass(frozen=True, eq=False)
class DigitString:
    """
    A finite little-endian digit vector ``eps_0, eps_1, ...``.

    Index ``j`` carries the weight ``G_j`` in a G-expansion and
    ``beta^(-j-1)`` under the Monna map. Trailing zeros are kept as
    given (e.g. a pseudo-inverse of fixed depth) but are ignored for
    equality and hashing.

    Parameters
    ----------
    digits
        The digits, lowest index first.
    """

    digits: tuple[int, ...] = ()

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)

        if any(d < 0 for d in digits):
            raise ValueError(f"Digits must be non-negative, got {digits}.")

        object.__setattr__(self, "digits", digits)

    def stripped(self) -> tuple[int, ...]:
        """
        Return the digits with trailing zeros removed.
        """
        digits = self.digits
        end = len(digits)
        while end > 0 and digits[end - 1] == 0:
            end -= 1
        return digits[:end]

    def padded(self, length: int) -> DigitString:
        """
        Return a copy zero-padded (or stripped) to exactly ``length`` digits.
        """
        core = self.stripped()
        if len(core) > length:
            raise ValueError(
                f"Cannot pad {self!r} to {length} digits, it has "
                f"{len(core)} significant digits."
            )
        return DigitString(core + (0,) * (length - len(core)))

    def __eq__(self, other) -> bool:
        if isinstance(other, DigitString):
            return self.stripped() == other.stripped()
        if isinstance(other, (tuple, list)):
            return self.stripped() == DigitString(other).stripped()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.stripped())

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, index):
        return self.digits[index]

    def __repr__(self) -> str:
        return f"DigitString({self.digits})"


def as_digit_string(digits: DigitString | Sequence[int]) -> DigitString:
    """
    Accept either a ``DigitString`` or a plain sequence of ints.
    """
    if isinstance(digits, DigitString):
        return digits
    return DigitString(tuple(digits))


@dataclass(frozen=True)
class CompositeDetail:
    """
    Decomposition ``a = (a', ..., a', a'')`` of a composite coefficient vector.
    """

    a_prime: tuple[int, ...]
    a_double_prime: tuple[int, ...]
    repetitions: int


@dataclass(frozen=True)
class Classification:
    """
    Which of the unit-interval case forms a coefficient vector takes.

    ``detail`` is only set for ``"CompositeCase"`` and ``equivalent_base``
    only for ``"BAdicEquivalentCase"``.
    """

    tag: CaseTag
    detail: CompositeDetail | None = None
    equivalent_base: int | None = None

    @property
    def maps_into_unit_interval(self) -> bool:
        return self.tag != "NotUnitIntervalOrNotDense"

    @property
    def equivalent_coeffs(self) -> tuple[int, ...] | None:
        """
        The simpler coefficient vector generating the same base sequence,
        if the case form has one.
        """
        if self.detail is not None:
            return self.detail.a_double_prime
        if self.equivalent_base is not None:
            return (self.equivalent_base,)
        return None

    def describe(self) -> str:
        """
        One line, human readable description used by the CLI.
        """
        if self.tag == "CompositeCase":
            assert self.detail is not None, "CompositeCase must carry its detail."
            a1 = "(" + ",".join(str(a) for a in self.detail.a_prime) + ")"
            a2 = "(" + ",".join(str(a) for a in self.detail.a_double_prime) + ")"
            return f"CompositeCase a'={a1} a''={a2} equivalent to {a2}"

        if self.tag == "BAdicEquivalentCase":
            return (
                f"BAdicEquivalentCase equivalent to base {self.equivalent_base} "
                f"(classical {self.equivalent_base}-adic numeration)"
            )

        return self.tag
