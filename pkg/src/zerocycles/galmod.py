"""Galois orbits of special-fiber components and the evaluation map.

The residue Galois group enters only through orbit sizes: the module of
invariant homomorphisms ``Hom_k(F, Z)`` is identified with ``Z^n`` through
its canonical basis ``(f_Y)``, one vector per orbit ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intlat import IntMatrix


@dataclass(frozen=True)
class ComponentOrbit:
    name: str
    multiplicity: int = 1
    orbit_size: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"orbit {self.name!r}: multiplicity must be >= 1")
        if self.orbit_size < 1:
            raise ValueError(f"orbit {self.name!r}: orbit_size must be >= 1")


@dataclass(frozen=True)
class SpecialFiber:
    orbits: tuple[ComponentOrbit, ...]

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if not self.orbits:
            raise ValueError("a special fiber needs at least one orbit")
        names = [o.name for o in self.orbits]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate orbit names in {names}")

    def __len__(self):
        return len(self.orbits)

    @property
    def names(self) -> list[str]:
        return [o.name for o in self.orbits]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, name: str) -> "InvariantHom":
        """The canonical basis element ``f_Y``."""
        coeffs = [0] * len(self)
        coeffs[self.index(name)] = 1
        return InvariantHom(tuple(coeffs))

    def to_json_obj(self) -> dict:
        return {
            "orbits": [
                {"name": o.name, "multiplicity": o.multiplicity, "orbit_size": o.orbit_size}
                for o in self.orbits
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SpecialFiber":
        try:
            orbits = [
                ComponentOrbit(
                    name=str(o["name"]),
                    multiplicity=int(o.get("multiplicity", 1)),
                    orbit_size=int(o.get("orbit_size", 1)),
                )
                for o in obj["orbits"]
            ]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed fiber JSON: {exc}") from None
        return cls(tuple(orbits))


@dataclass(frozen=True)
class InvariantHom:
    """An element of ``Hom_k(F, Z)`` in coordinates w.r.t. ``(f_Y)``."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "InvariantHom") -> "InvariantHom":
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("dimension mismatch")
        return InvariantHom(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "InvariantHom":
        return InvariantHom(tuple(k * a for a in self.coeffs))

    def __neg__(self) -> "InvariantHom":
        return InvariantHom(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "InvariantHom") -> "InvariantHom":
        return self + (-other)


def xi_weights(fiber: SpecialFiber) -> tuple[int, ...]:
    """Values ``xi(f_Y) = multiplicity(Y) * orbit_size(Y)``.

    The special fiber, viewed in ``F``, is the sum of all geometric
    components with their multiplicities; ``f_Y`` takes value 1 on each of
    the ``orbit_size`` conjugates in the orbit ``Y``.
    """
    return tuple(o.multiplicity * o.orbit_size for o in fiber.orbits)


def evaluate_xi(h: InvariantHom | Sequence[int], fiber: SpecialFiber) -> int:
    coeffs = h.coeffs if isinstance(h, InvariantHom) else tuple(h)
    weights = xi_weights(fiber)
    if len(coeffs) != len(weights):
        raise ValueError(
            f"vector of length {len(coeffs)} does not match {len(weights)} orbits"
        )
    return sum(c * w for c, w in zip(coeffs, weights))


@dataclass(frozen=True)
class DegreeCheck:
    column: int
    value: int

    @property
    def passed(self) -> bool:
        return self.value == 0


def degree_zero_check(columns: IntMatrix, fiber: SpecialFiber) -> list[DegreeCheck]:
    """Evaluate ``xi`` on every column; a column passes iff its value is 0."""
    if columns.rows != len(fiber):
        raise ValueError(
            f"matrix has {columns.rows} rows but the fiber has {len(fiber)} orbits"
        )
    return [DegreeCheck(j, evaluate_xi(columns.column(j), fiber)) for j in range(columns.cols)]
