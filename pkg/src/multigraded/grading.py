"""Multidegrees in Z2^k x Z^l and the Koszul sign kernel.

Two sign conventions are supported:

* Bernstein-Leites: the exchange exponent is ``tot(a) * tot(b)`` where
  ``tot`` sums every slot (Z2 and Z alike) mod 2.
* Deligne: the exchange exponent is the slot-wise scalar product.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = [
    "SignConvention",
    "BL",
    "DELIGNE",
    "SlotSignature",
    "MultiDegree",
    "SignatureMismatch",
    "par",
    "gh",
    "koszul_exponent",
    "koszul_sign",
    "is_odd",
]


class SignatureMismatch(ValueError):
    """Two degrees (or contexts) do not share a slot signature."""


class SignConvention(enum.Enum):
    BERNSTEIN_LEITES = "bl"
    DELIGNE = "deligne"

    @classmethod
    def parse(cls, text: str) -> "SignConvention":
        key = text.strip().lower()
        for conv in cls:
            if conv.value == key:
                return conv
        raise ValueError(f"unknown sign convention {text!r}")


BL = SignConvention.BERNSTEIN_LEITES
DELIGNE = SignConvention.DELIGNE


@dataclass(frozen=True)
class SlotSignature:
    """Number and names of the Z2 slots followed by the Z slots."""

    z2_count: int
    z_count: int
    slot_names: tuple = ()

    def __post_init__(self):
        if self.z2_count < 0 or self.z_count < 0:
            raise ValueError("slot counts must be non-negative")
        names = tuple(self.slot_names)
        if not names:
            names = tuple(f"p{i + 1}" for i in range(self.z2_count)) + tuple(
                f"gh{i + 1}" for i in range(self.z_count)
            )
        object.__setattr__(self, "slot_names", names)
        if len(names) != self.z2_count + self.z_count:
            raise ValueError("slot_names must name every slot")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate slot names in {names}")

    @property
    def z2_names(self) -> tuple:
        return self.slot_names[: self.z2_count]

    @property
    def z_names(self) -> tuple:
        return self.slot_names[self.z2_count:]

    def slot_kind(self, name: str) -> str:
        if name in self.z2_names:
            return "z2"
        if name in self.z_names:
            return "z"
        raise KeyError(f"no slot named {name!r}")

    def slot_index(self, name: str) -> int:
        """Index of a slot inside its own (Z2 or Z) block."""
        if name in self.z2_names:
            return self.z2_names.index(name)
        if name in self.z_names:
            return self.z_names.index(name)
        raise KeyError(f"no slot named {name!r}")

    def add_slot(self, kind: str, name: str) -> "SlotSignature":
        if name in self.slot_names:
            raise ValueError(f"slot {name!r} already exists")
        if kind == "z2":
            return SlotSignature(
                self.z2_count + 1, self.z_count, self.z2_names + (name,) + self.z_names
            )
        if kind == "z":
            return SlotSignature(self.z2_count, self.z_count + 1, self.slot_names + (name,))
        raise ValueError(f"slot kind must be 'z2' or 'z', got {kind!r}")

    def zero(self) -> "MultiDegree":
        return MultiDegree((0,) * self.z2_count, (0,) * self.z_count)

    def unit(self, name: str) -> "MultiDegree":
        """The degree with a single 1 in the named slot."""
        kind = self.slot_kind(name)
        i = self.slot_index(name)
        z2 = [0] * self.z2_count
        z = [0] * self.z_count
        (z2 if kind == "z2" else z)[i] = 1
        return MultiDegree(tuple(z2), tuple(z))

    def conforms(self, d: "MultiDegree") -> bool:
        return len(d.z2) == self.z2_count and len(d.z) == self.z_count


@dataclass(frozen=True, order=True)
class MultiDegree:
    """A degree vector: Z2 bits followed by integer entries."""

    z2: tuple = ()
    z: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "z2", tuple(int(b) % 2 for b in self.z2))
        object.__setattr__(self, "z", tuple(int(n) for n in self.z))

    def _check(self, other: "MultiDegree"):
        if len(self.z2) != len(other.z2) or len(self.z) != len(other.z):
            raise SignatureMismatch(f"degrees {self} and {other} have different shapes")

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        self._check(other)
        return MultiDegree(
            tuple(a + b for a, b in zip(self.z2, other.z2)),
            tuple(a + b for a, b in zip(self.z, other.z)),
        )

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(self.z2, tuple(-a for a in self.z))

    def __sub__(self, other: "MultiDegree") -> "MultiDegree":
        return self + (-other)

    def scale(self, k: int) -> "MultiDegree":
        return MultiDegree(tuple(k * a for a in self.z2), tuple(k * a for a in self.z))

    def pad(self, signature_from: SlotSignature, signature_to: SlotSignature) -> "MultiDegree":
        """Re-express this degree on a signature with more slots (new slots get 0)."""
        z2 = dict(zip(signature_from.z2_names, self.z2))
        z = dict(zip(signature_from.z_names, self.z))
        return MultiDegree(
            tuple(z2.get(n, 0) for n in signature_to.z2_names),
            tuple(z.get(n, 0) for n in signature_to.z_names),
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.z2) and not any(self.z)

    def __str__(self):
        return "(" + ",".join(map(str, self.z2)) + "|" + ",".join(map(str, self.z)) + ")"

    @classmethod
    def parse(cls, text: str) -> "MultiDegree":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or "|" not in body:
            raise ValueError(f"degree must look like '(z2...|z...)', got {text!r}")
        left, right = body[1:-1].split("|", 1)

        def ints(part):
            part = part.strip()
            return tuple(int(t) for t in part.split(",")) if part else ()

        return cls(ints(left), ints(right))


def par(d: MultiDegree) -> int:
    """Total parity: the sum of every slot entry mod 2."""
    return (sum(d.z2) + sum(d.z)) % 2


def gh(d: MultiDegree) -> int:
    """Ghost number: the sum of the Z-slot entries."""
    return sum(d.z)


def koszul_exponent(a: MultiDegree, b: MultiDegree, convention: SignConvention) -> int:
    a._check(b)
    if convention is BL:
        return (par(a) * par(b)) % 2
    s = sum(x * y for x, y in zip(a.z2, b.z2)) + sum(x * y for x, y in zip(a.z, b.z))
    return s % 2


def koszul_sign(a: MultiDegree, b: MultiDegree, convention: SignConvention) -> int:
    """Sign picked up when an element of degree ``a`` moves past one of degree ``b``."""
    return -1 if koszul_exponent(a, b, convention) else 1


def is_odd(d: MultiDegree, convention: SignConvention) -> bool:
    """An element is odd (squares to zero) iff it anticommutes with itself."""
    return koszul_sign(d, d, convention) == -1
