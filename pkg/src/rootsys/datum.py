"""Exact root-datum algebra.

A ``RootDatum`` holds simple roots, positive roots with multiplicities and a
Weyl-invariant inner product on the ambient space E = X*(S) ⊗ R. All
arithmetic is exact (``fractions.Fraction``); linear systems are solved with
sympy over the rationals.

Conventions:
- Simple roots are addressed by 1-based index (``α_1 … α_r``).
- Characters (``CharVec``) live in E; the inner product is ``uᵀ G v``.
- Cocharacters (``CochVec``) are given in dual coordinates, so the natural
  pairing is the plain dot product. The coroot β∨ = 2β/(β,β) seen as a
  cocharacter has dual coordinates ``2Gβ/(β,β)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import sympy

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class RootDatumError(ValueError):
    """Raised when root data violates one of the datum invariants.

    Attributes:
        invariant: short name of the failed invariant.
    """

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"invariant '{invariant}' violated: {detail}")
        self.invariant = invariant
        self.detail = detail


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"Dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _to_sympy(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]
    )


def _from_sympy(value: sympy.Basic) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class CharVec:
    """A character in E, optionally with its fundamental-weight coordinates."""

    coords: Vector
    fw_coords: Vector | None = None

    def __add__(self, other: "CharVec") -> "CharVec":
        return CharVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CharVec") -> "CharVec":
        return CharVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CharVec":
        return CharVec(tuple(-a for a in self.coords))

    def scaled(self, q: Fraction | int) -> "CharVec":
        q = Fraction(q)
        fw = tuple(q * c for c in self.fw_coords) if self.fw_coords else None
        return CharVec(tuple(q * a for a in self.coords), fw)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True)
class CochVec:
    """A cocharacter in dual coordinates (θ, log a)."""

    coords: Vector

    def scaled(self, q: Fraction | int) -> "CochVec":
        q = Fraction(q)
        return CochVec(tuple(q * a for a in self.coords))

    def __neg__(self) -> "CochVec":
        return CochVec(tuple(-a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True)
class ParabolicIndex:
    """A subset E ⊆ Δ of simple-root indices (1-based)."""

    subset: frozenset[int] = field(default_factory=frozenset)

    def __contains__(self, index: int) -> bool:
        return index in self.subset

    def __iter__(self):
        return iter(sorted(self.subset))

    def __len__(self) -> int:
        return len(self.subset)

    def __le__(self, other: "ParabolicIndex") -> bool:
        return self.subset <= other.subset

    def union(self, indices: Iterable[int]) -> "ParabolicIndex":
        return ParabolicIndex(self.subset | frozenset(indices))

    def label(self) -> str:
        return "{" + ",".join(f"a{i}" for i in self) + "}"


def pair(chi: CharVec, theta: CochVec) -> Fraction:
    """Natural pairing ⟨χ, θ⟩ between a character and a cocharacter."""
    return dot(chi.coords, theta.coords)


@dataclass(frozen=True)
class PositiveRoot:
    vector: Vector
    mult: int = 1


class RootDatum:
    """Validated (split or relative) root datum.

    Args:
        simple_roots: Δ as vectors in the ambient space.
        positive_roots: Φ⁺ with multiplicities; must contain Δ.
        gram: symmetric positive-definite inner-product matrix.
        duality_ratios: per simple root, the factor in (λ_α, β∨) = r_α δ_αβ.
        name: display name, e.g. ``"A2"``.
        split: whether the datum came from a split construction.
        fundamental_weights: optional supplied weights; checked, not trusted.

    Raises:
        RootDatumError: naming the first invariant that fails.
    """

    def __init__(
        self,
        simple_roots: Sequence[Sequence],
        positive_roots: Sequence[PositiveRoot],
        gram: Sequence[Sequence],
        duality_ratios: Sequence | None = None,
        *,
        name: str = "custom",
        split: bool = False,
        fundamental_weights: Sequence[Sequence] | None = None,
    ):
        self.name = name
        self._coords_cache: dict[Vector, Vector] = {}
        self.split = split
        self.simple_roots: tuple[Vector, ...] = tuple(as_vector(a) for a in simple_roots)
        self.positive_roots: tuple[PositiveRoot, ...] = tuple(
            PositiveRoot(as_vector(p.vector), int(p.mult)) for p in positive_roots
        )
        self.gram: Matrix = tuple(as_vector(row) for row in gram)
        ratios = duality_ratios if duality_ratios is not None else [1] * self.rank
        self.duality_ratios: Vector = as_vector(ratios)
        self._validate_shapes()
        self._validate_gram()
        self._validate_roots()
        self.fundamental_weights: tuple[CharVec, ...] = self._solve_fundamental_weights()
        if fundamental_weights is not None:
            self._check_supplied_weights(fundamental_weights)
        self._validate_reflections()

    # -------------
    # Shape checks
    # -------------

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def ambient_dim(self) -> int:
        return len(self.gram)

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def _validate_shapes(self) -> None:
        if self.rank < 1:
            raise RootDatumError("rank", "at least one simple root is required")
        n = self.ambient_dim
        if any(len(row) != n for row in self.gram):
            raise RootDatumError("gram", "gram matrix must be square")
        for vec in self.simple_roots + tuple(p.vector for p in self.positive_roots):
            if len(vec) != n:
                raise RootDatumError(
                    "ambient_dim", f"root {vec} does not live in dimension {n}"
                )
        if len(self.duality_ratios) != self.rank:
            raise RootDatumError("duality_ratios", "one ratio per simple root required")
        if any(r <= 0 for r in self.duality_ratios):
            raise RootDatumError("duality_ratios", "ratios must be positive")
        if any(p.mult < 1 for p in self.positive_roots):
            raise RootDatumError("multiplicity", "multiplicities must be positive")

    def _validate_gram(self) -> None:
        g = _to_sympy(self.gram)
        if g != g.T:
            raise RootDatumError("gram", "gram matrix must be symmetric")
        if not g.is_positive_definite:
            raise RootDatumError("gram", "gram matrix must be positive definite")

    def _validate_roots(self) -> None:
        for vec in self.simple_roots + tuple(p.vector for p in self.positive_roots):
            if self.inner(vec, vec) <= 0:
                raise RootDatumError("root_norm", f"(α, α) must be positive for {vec}")
        if self._simple_gram_inverse is None:
            raise RootDatumError("simple_roots", "simple roots are linearly dependent")
        positives = {p.vector for p in self.positive_roots}
        for i, alpha in enumerate(self.simple_roots, start=1):
            if alpha not in positives:
                raise RootDatumError("positive_roots", f"simple root a{i} missing from Φ⁺")
        for p in self.positive_roots:
            try:
                coeffs = self.simple_coords(p.vector)
            except ValueError as e:
                raise RootDatumError("positive_roots", str(e)) from e
            if any(c < 0 or c.denominator != 1 for c in coeffs):
                raise RootDatumError(
                    "positive_roots",
                    f"{p.vector} is not a non-negative integer combination of Δ",
                )

    def _validate_reflections(self) -> None:
        table = {p.vector: p.mult for p in self.positive_roots}
        for i, beta in enumerate(self.simple_roots, start=1):
            for p in self.positive_roots:
                if self._is_multiple_of(p.vector, beta):
                    continue
                image = self.reflect_vector(p.vector, i)
                if table.get(image) != p.mult:
                    raise RootDatumError(
                        "reflection",
                        f"σ_a{i} maps {p.vector} to {image}, not a positive root "
                        "of the same multiplicity",
                    )

    def _is_multiple_of(self, vec: Vector, beta: Vector) -> bool:
        coeffs = self.simple_coords(vec)
        nonzero = [c for c in coeffs if c != 0]
        beta_coeffs = self.simple_coords(beta)
        j = next(k for k, c in enumerate(beta_coeffs) if c != 0)
        return len(nonzero) == 1 and coeffs[j] != 0

    # -------------
    # Inner product
    # -------------

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        """Weyl-invariant inner product (u, v) = uᵀ G v."""
        return dot(u, tuple(dot(row, v) for row in self.gram))

    def simple_root(self, index: int) -> Vector:
        self._check_index(index)
        return self.simple_roots[index - 1]

    def _check_index(self, index: int) -> None:
        if index not in self.indices:
            raise ValueError(f"Simple root index {index} out of range 1..{self.rank}")

    def coroot_pairing(self, w: Sequence[Fraction], index: int) -> Fraction:
        """(w, β∨) with β∨ = 2β/(β, β)."""
        beta = self.simple_root(index)
        return 2 * self.inner(w, beta) / self.inner(beta, beta)

    def coroot(self, index: int) -> CochVec:
        """β∨ as a cocharacter, i.e. in dual coordinates ``2Gβ/(β, β)``."""
        beta = self.simple_root(index)
        norm = self.inner(beta, beta)
        return CochVec(tuple(2 * dot(row, beta) / norm for row in self.gram))

    def root_as_cochar(self, vec: Sequence[Fraction]) -> CochVec:
        """Identify a vector of E with a cocharacter through the gram matrix."""
        return CochVec(tuple(dot(row, vec) for row in self.gram))

    def root_pairing(self, index: int, theta: CochVec) -> Fraction:
        """(α, θ): the simple root α_index evaluated on θ."""
        return dot(self.simple_root(index), theta.coords)

    # -------------------
    # Coordinates on Δ
    # -------------------

    @cached_property
    def _simple_gram_inverse(self) -> sympy.Matrix | None:
        s = _to_sympy(self.simple_roots)
        m = s * _to_sympy(self.gram) * s.T
        if m.det() == 0:
            return None
        return m.inv()

    def simple_coords(self, vec: Sequence[Fraction]) -> Vector:
        """Coefficients of ``vec`` in the simple-root basis.

        Raises:
            ValueError: if ``vec`` is not in the span of Δ.
        """
        key = tuple(vec)
        cached = self._coords_cache.get(key)
        if cached is not None:
            return cached
        rhs = _to_sympy([[self.inner(alpha, vec)] for alpha in self.simple_roots])
        sol = self._simple_gram_inverse * rhs
        coeffs = tuple(_from_sympy(c) for c in sol)
        recon = tuple(
            sum((c * alpha[k] for c, alpha in zip(coeffs, self.simple_roots)), Fraction(0))
            for k in range(self.ambient_dim)
        )
        if recon != tuple(vec):
            raise ValueError(f"{key} is not in the span of the simple roots")
        self._coords_cache[key] = coeffs
        return coeffs

    def support(self, vec: Sequence[Fraction]) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.simple_coords(vec), start=1) if c)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Entries ⟨α_j, α_i∨⟩, row i, column j."""
        return tuple(
            tuple(self.coroot_pairing(alpha, i) for alpha in self.simple_roots)
            for i in self.indices
        )

    # -------------------
    # Fundamental weights
    # -------------------

    def _solve_fundamental_weights(self) -> tuple[CharVec, ...]:
        cartan = _to_sympy(self.cartan_matrix)
        if cartan.det() == 0:
            raise RootDatumError("fundamental_weights", "singular Cartan system")
        solution = cartan.inv() * sympy.diag(
            *[sympy.Rational(r.numerator, r.denominator) for r in self.duality_ratios]
        )
        weights = []
        for col, _ in enumerate(self.simple_roots):
            coeffs = [_from_sympy(solution[row, col]) for row in range(self.rank)]
            coords = tuple(
                sum((c * alpha[k] for c, alpha in zip(coeffs, self.simple_roots)), Fraction(0))
                for k in range(self.ambient_dim)
            )
            fw = tuple(Fraction(int(j == col)) for j in range(self.rank))
            weights.append(CharVec(coords, fw))
        return tuple(weights)

    def _check_supplied_weights(self, supplied: Sequence[Sequence]) -> None:
        if len(supplied) != self.rank:
            raise RootDatumError("duality", "one fundamental weight per simple root")
        for a, lam in enumerate(supplied, start=1):
            lam = as_vector(lam)
            for b in self.indices:
                expected = self.duality_ratios[a - 1] if a == b else 0
                got = self.coroot_pairing(lam, b)
                if got != expected:
                    raise RootDatumError(
                        "duality",
                        f"(λ_a{a}, a{b}∨) = {got}, expected {expected}",
                    )

    def fundamental_weight(self, index: int) -> CharVec:
        self._check_index(index)
        return self.fundamental_weights[index - 1]

    def pairing_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """((λ_α, β∨)) with rows α, columns β; equals diag(duality_ratios)."""
        return tuple(
            tuple(self.coroot_pairing(lam.coords, b) for b in self.indices)
            for lam in self.fundamental_weights
        )

    def char_from_fw(self, fw_coords: Sequence) -> CharVec:
        """Build Σ c_α λ_α with its fundamental-weight coordinates attached."""
        fw = as_vector(fw_coords)
        if len(fw) != self.rank:
            raise ValueError(f"Expected {self.rank} coefficients, got {len(fw)}")
        coords = tuple(
            sum((c * lam.coords[k] for c, lam in zip(fw, self.fundamental_weights)), Fraction(0))
            for k in range(self.ambient_dim)
        )
        return CharVec(coords, fw)

    def fw_expand(self, chi: CharVec) -> Vector:
        """Coefficients of χ in the fundamental-weight basis."""
        return tuple(
            self.coroot_pairing(chi.coords, i) / self.duality_ratios[i - 1]
            for i in self.indices
        )

    # -------------
    # Reflections
    # -------------

    def reflect_vector(self, w: Sequence[Fraction], index: int) -> Vector:
        beta = self.simple_root(index)
        c = self.coroot_pairing(w, index)
        return tuple(x - c * b for x, b in zip(w, beta))

    def reflect(self, w: CharVec, index: int) -> CharVec:
        """σ_β(w) = w − (w, β∨)β."""
        return CharVec(self.reflect_vector(w.coords, index))

    # -------------
    # Parabolics
    # -------------

    def parabolic(self, indices: Iterable[int] = ()) -> ParabolicIndex:
        subset = frozenset(int(i) for i in indices)
        for i in subset:
            self._check_index(i)
        return ParabolicIndex(subset)

    @property
    def delta(self) -> ParabolicIndex:
        return ParabolicIndex(frozenset(self.indices))

    def complement(self, subset: ParabolicIndex) -> ParabolicIndex:
        return ParabolicIndex(frozenset(self.indices) - subset.subset)

    def all_parabolics(self) -> list[ParabolicIndex]:
        out = []
        for k in range(self.rank + 1):
            out.extend(ParabolicIndex(frozenset(c)) for c in combinations(self.indices, k))
        return out

    def roots_outside(self, subset: ParabolicIndex) -> list[PositiveRoot]:
        """Φ_F: positive roots not in the span of F."""
        return [p for p in self.positive_roots if not self.support(p.vector) <= subset.subset]

    def roots_inside(self, subset: ParabolicIndex) -> list[PositiveRoot]:
        return [p for p in self.positive_roots if self.support(p.vector) <= subset.subset]

    def rho_prime(self, subset: ParabolicIndex) -> CharVec:
        """ρ'_F = Σ mult(φ)·φ over Φ_F, expanded in fundamental weights.

        Raises:
            RootDatumError: if a coefficient on α ∉ F is not a positive
                integer, or a coefficient on α ∈ F is nonzero.
        """
        coords = [Fraction(0)] * self.ambient_dim
        for p in self.roots_outside(subset):
            for k, x in enumerate(p.vector):
                coords[k] += p.mult * x
        chi = CharVec(tuple(coords))
        fw = self.fw_expand(chi)
        for i, m in zip(self.indices, fw):
            if i in subset and m != 0:
                raise RootDatumError(
                    "rho_positive_cone", f"ρ'_{subset.label()} has coefficient {m} on a{i} ∈ F"
                )
            if i not in subset and (m <= 0 or m.denominator != 1):
                raise RootDatumError(
                    "rho_positive_cone",
                    f"ρ'_{subset.label()} has coefficient {m} on a{i}, not a positive integer",
                )
        return CharVec(chi.coords, fw)

    def k_alpha(self, index: int) -> int:
        """The integer k_α with ρ'_{Δ∖{α}} = k_α λ_α."""
        self._check_index(index)
        rho = self.rho_prime(self.complement(ParabolicIndex(frozenset({index}))))
        k = rho.fw_coords[index - 1]
        if k.denominator != 1:
            raise RootDatumError("k_alpha", f"k_a{index} = {k} is not an integer")
        return int(k)

    def rho_norm(self) -> float:
        """‖ρ_Δ‖ for ρ_Δ = ρ'_∅ under the datum metric."""
        rho = self.rho_prime(ParabolicIndex())
        return float(self.inner(rho.coords, rho.coords)) ** 0.5

    def components(self, subset: ParabolicIndex) -> list[ParabolicIndex]:
        """Connected components of the Dynkin subdiagram on ``subset``."""
        remaining = set(subset.subset)
        out = []
        while remaining:
            stack = [remaining.pop()]
            comp = set(stack)
            while stack:
                i = stack.pop()
                for j in list(remaining):
                    if self.inner(self.simple_root(i), self.simple_root(j)) != 0:
                        remaining.discard(j)
                        comp.add(j)
                        stack.append(j)
            out.append(ParabolicIndex(frozenset(comp)))
        return sorted(out, key=lambda c: min(c.subset))

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r}, rank={self.rank}, ambient_dim={self.ambient_dim})"
