"""Elementary birational surgeries on cycle configurations.

Blowing up a node inserts a (-1)-component between its two branches,
blowing up a smooth point drops one self-intersection by one, and blowing
down removes a (-1)-component while raising its neighbours.  On real
configurations every surgery operates on conjugate pairs of points so the
real structure survives; passing ``drop_reality=True`` performs the single
surgery instead and forgets the real structure (surface-only experiments).

Node blow-ups transport the coefficient list of the nef part: when the
input has P != 0 and P^2 = 0, the inserted component receives l_i + l_j
from its two neighbours, and the transported list equals the recomputed
m0*P of the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import CycleConfig, zariski_decompose

__all__ = [
    "SurgeryInputError",
    "SurgeryStep",
    "SurgeryResult",
    "blow_up_node",
    "blow_up_smooth",
    "blow_down",
    "contract_to_nef_model",
]


class SurgeryInputError(ValueError):
    """A surgery was requested on a point or component it cannot apply to."""


@dataclass(frozen=True)
class SurgeryStep:
    """One recorded surgery: what was done, where, and on which config."""

    kind: str
    indices: tuple[int, ...]
    before: CycleConfig
    after: CycleConfig


@dataclass(frozen=True)
class SurgeryResult:
    """Outcome of a surgery call.

    ``transported_l`` is only set by node blow-ups on inputs with P != 0,
    P^2 = 0; ``inserted`` gives the indices of the new components in the
    result's labeling (useful for round-trips).
    """

    config: CycleConfig
    steps: tuple[SurgeryStep, ...]
    transported_l: tuple[int, ...] | None = None
    inserted: tuple[int, ...] = ()


def _transport_source(config: CycleConfig) -> tuple[int, ...] | None:
    """The coefficient list m0*P when P != 0 and P^2 = 0, else None."""
    z = zariski_decompose(config)
    if z.l is not None and z.d == 0:
        return z.l
    return None


def blow_up_node(
    config: CycleConfig, node: int, *, drop_reality: bool = False
) -> SurgeryResult:
    """Blow up the node between components ``node`` and ``node + 1``.

    A real configuration gets the conjugate node blown up simultaneously
    (cycle grows by two, n by one) unless reality is dropped.  For m = 1
    the single node joins the component to itself: the strict transform
    loses 4 (the node is a double point) and the result is a 2-cycle.
    """
    m = config.m
    if not 0 <= node < m:
        raise SurgeryInputError(f"node index {node} out of range for m={m}")
    source_l = _transport_source(config)

    if config.is_real and not drop_reality:
        k = config.real_k
        assert k is not None
        conj = config.conjugate_index(node)
        selfs = list(config.self_ints)
        for nd in (node, conj):
            selfs[nd] -= 1
            selfs[(nd + 1) % m] -= 1
        l_out = list(source_l) if source_l is not None else None
        positions = sorted((node + 1, conj + 1), reverse=True)
        for pos in positions:
            selfs.insert(pos, -1)
            if l_out is not None and source_l is not None:
                nd = pos - 1
                l_out.insert(pos, source_l[nd] + source_l[(nd + 1) % m])
        low, high = sorted((node + 1, conj + 1))
        inserted = (low, high + 1)
        new_n = config.n + 1 if config.n is not None else None
        result = CycleConfig(tuple(selfs), real_k=k + 1, n=new_n)
    else:
        if m == 1:
            selfs_t: tuple[int, ...] = (config.self_ints[0] - 4, -1)
            l_out = [source_l[0], 2 * source_l[0]] if source_l is not None else None
            inserted = (1,)
        else:
            j = (node + 1) % m
            mutable = list(config.self_ints)
            mutable[node] -= 1
            mutable[j] -= 1
            mutable.insert(node + 1, -1)
            selfs_t = tuple(mutable)
            if source_l is not None:
                l_list = list(source_l)
                l_list.insert(node + 1, source_l[node] + source_l[j])
                l_out = l_list
            else:
                l_out = None
            inserted = (node + 1,)
        result = CycleConfig(selfs_t)

    step = SurgeryStep("blow_up_node", (node,), config, result)
    transported = tuple(l_out) if l_out is not None else None
    return SurgeryResult(result, (step,), transported, inserted)


def blow_up_smooth(
    config: CycleConfig, component: int, *, drop_reality: bool = False
) -> SurgeryResult:
    """Blow up a smooth point of the given component (conjugate pair if real)."""
    m = config.m
    if not 0 <= component < m:
        raise SurgeryInputError(f"component index {component} out of range for m={m}")
    selfs = list(config.self_ints)
    if config.is_real and not drop_reality:
        conj = config.conjugate_index(component)
        selfs[component] -= 1
        selfs[conj] -= 1
        new_n = config.n + 1 if config.n is not None else None
        result = CycleConfig(tuple(selfs), real_k=config.real_k, n=new_n)
    else:
        selfs[component] -= 1
        result = CycleConfig(tuple(selfs))
    step = SurgeryStep("blow_up_smooth", (component,), config, result)
    return SurgeryResult(result, (step,))


def _contract_once(selfs: list[int], component: int) -> list[int]:
    m = len(selfs)
    if selfs[component] != -1:
        raise SurgeryInputError(
            f"component {component} has self-intersection {selfs[component]}, not -1"
        )
    if m < 2:
        raise SurgeryInputError("cannot contract the only component")
    if m == 2:
        return [selfs[1 - component] + 4]
    out = list(selfs)
    out[(component - 1) % m] += 1
    out[(component + 1) % m] += 1
    del out[component]
    return out


def blow_down(
    config: CycleConfig, component: int, *, drop_reality: bool = False
) -> SurgeryResult:
    """Contract a (-1)-component (and its conjugate, when real).

    Neighbours gain one; for m = 2 the survivor becomes a nodal curve and
    gains four (the two intersection points with the contracted curve merge
    into the node).
    """
    m = config.m
    if not 0 <= component < m:
        raise SurgeryInputError(f"component index {component} out of range for m={m}")
    if config.is_real and not drop_reality:
        k = config.real_k
        assert k is not None
        if k == 1:
            raise SurgeryInputError(
                "contracting a conjugate pair would empty the 2-cycle; "
                "drop reality to contract a single component"
            )
        conj = config.conjugate_index(component)
        first, second = max(component, conj), min(component, conj)
        selfs = _contract_once(list(config.self_ints), first)
        selfs = _contract_once(selfs, second)
        new_n = config.n - 1 if config.n is not None else None
        result = CycleConfig(tuple(selfs), real_k=k - 1, n=new_n)
    else:
        selfs = _contract_once(list(config.self_ints), component)
        result = CycleConfig(tuple(selfs))
    step = SurgeryStep("blow_down", (component,), config, result)
    return SurgeryResult(result, (step,))


def contract_to_nef_model(
    config: CycleConfig,
) -> tuple[CycleConfig, tuple[SurgeryStep, ...]] | None:
    """Contract (-1)-components until the full cycle itself is nef.

    Repeatedly blows down the least-index (-1)-component while the negative
    part is non-zero.  Returns the final configuration and the recorded
    steps when a nef model is reached, and ``None`` when the nef part
    vanishes (no model exists) or the supply of (-1)-components runs out.
    """
    if zariski_decompose(config).p.is_zero:
        return None
    steps: list[SurgeryStep] = []
    current = config
    while True:
        if zariski_decompose(current).n_part.is_zero:
            return current, tuple(steps)
        target = next(
            (i for i, s in enumerate(current.self_ints) if s == -1), None
        )
        if target is None:
            return None
        try:
            result = blow_down(current, target)
        except SurgeryInputError:
            return None
        steps.extend(result.steps)
        current = result.config
