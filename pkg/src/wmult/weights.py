"""Weight arithmetic: dominance, p-restrictedness, p-adic layers, duals,
polynomial degree and restriction along the trailing-block embeddings."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidInput
from .rootsys import (GroupId, check_weight, eps_dim, eps_to_fw, fw_to_eps)


@dataclass(frozen=True)
class Weight:
    group: GroupId
    fw: tuple

    def __post_init__(self):
        object.__setattr__(self, "fw", check_weight(self.group, self.fw))

    @property
    def eps(self) -> tuple:
        return fw_to_eps(self.group, self.fw)

    @property
    def dominant(self) -> bool:
        return all(a >= 0 for a in self.fw)

    def __str__(self):
        return format_weight(self.fw)


def parse_weight(text: str) -> tuple[int, ...]:
    """Parse "[a1,...,an]"."""
    try:
        v = json.loads(text)
    except (TypeError, ValueError):
        raise InvalidInput(f"cannot parse weight {text!r}; expected [a1,...,an]")
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InvalidInput(f"weight {text!r} must be a list of integers")
    return tuple(v)


def format_weight(lam) -> str:
    return "[" + ",".join(str(a) for a in lam) + "]"


def omega(n: int, i: int, c: int = 1) -> tuple[int, ...]:
    """c*omega_i of rank n; omega_0 and omega_{n+1} are zero."""
    v = [0] * n
    if 1 <= i <= n:
        v[i - 1] = c
    return tuple(v)


def wsum(*ws) -> tuple[int, ...]:
    return tuple(sum(x) for x in zip(*ws))


def wscale(c: int, w) -> tuple[int, ...]:
    return tuple(c * a for a in w)


def _require_dominant(lam):
    if any(a < 0 for a in lam):
        raise InvalidInput(f"weight {format_weight(lam)} is not dominant")


def is_dominant(lam) -> bool:
    return all(a >= 0 for a in lam)


def is_p_restricted(lam, p: int) -> bool:
    _require_dominant(lam)
    return all(a < p for a in lam)


@dataclass(frozen=True)
class SteinbergDecomposition:
    layers: tuple
    p: int

    def reassemble(self) -> tuple[int, ...]:
        n = len(self.layers[0])
        out = [0] * n
        for j, lay in enumerate(self.layers):
            for i, a in enumerate(lay):
                out[i] += self.p ** j * a
        return tuple(out)

    def __len__(self):
        return len(self.layers)


def steinberg_decompose(lam, p: int) -> SteinbergDecomposition:
    lam = tuple(lam)
    _require_dominant(lam)
    rest = list(lam)
    layers = []
    while True:
        layers.append(tuple(a % p for a in rest))
        rest = [a // p for a in rest]
        if not any(rest):
            break
    return SteinbergDecomposition(tuple(layers), p)


def _require_a(g: GroupId):
    if g.family != "A":
        raise InvalidInput(f"operation defined for type A only, not {g.family}")


def dual_weight(g: GroupId, lam) -> tuple[int, ...]:
    _require_a(g)
    lam = check_weight(g, lam)
    _require_dominant(lam)
    return tuple(reversed(lam))


def pdeg(g: GroupId, lam) -> int:
    _require_a(g)
    lam = check_weight(g, lam)
    _require_dominant(lam)
    return sum((k + 1) * a for k, a in enumerate(lam))


def min_pdeg(g: GroupId, lam) -> int:
    return min(pdeg(g, lam), pdeg(g, dual_weight(g, lam)))


def support(lam) -> list[int]:
    """1-based indices of nonzero coefficients."""
    return [i + 1 for i, a in enumerate(lam) if a]


def check_target_rank(g: GroupId, k: int) -> GroupId:
    if not isinstance(k, int) or k >= g.rank:
        raise InvalidInput(f"target rank {k} must be below {g.rank}")
    return g.with_rank(k)   # GroupId enforces the family guard


def restrict_weight(g: GroupId, lam, k: int) -> tuple[int, ...]:
    """Weight of the torus of G_{n,k}, the subgroup on the trailing k simple roots."""
    h = check_target_rank(g, k)
    lam = check_weight(g, lam)
    if g.family == "A":
        return lam[g.rank - k:]
    v = fw_to_eps(g, lam)
    return eps_to_fw(h, v[g.rank - k:])


def restrict_eps(g: GroupId, v, k: int) -> tuple[int, ...]:
    """Same projection on doubled epsilon vectors."""
    m = eps_dim(g.family, k)
    out = tuple(v[len(v) - m:])
    if g.family == "A":
        lo = min(out)
        out = tuple(x - lo for x in out)
    return out
