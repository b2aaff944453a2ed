"""Line-oriented configuration files and deterministic fixture generation.

The on-disk format is deliberately small: one ``key = value`` assignment
per line, ``#`` starting a comment.  Recognized keys:

    base        "cycle" (default) or "elliptic"
    n           number of plane summands (real configurations)
    k           half-length of a real cycle
    self        bracketed self-intersections of one real half, e.g. [-1, -4]
    selfints    bracketed self-intersections of a full non-real cycle
    family      "const unity p/q" | "const modulus a/b angle p/q" | "nonconstant"
    resolution  bracketed resolution bits, one per node, e.g. [0, 0]

Exactly one of ``self``/``selfints`` must appear; unknown or duplicate
keys are rejected with the offending line number.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .birational import blow_up_node
from .cycles import CycleConfig
from .pic0 import PicZeroElement, PicZeroFamily
from .twistor import EllipticBase, TwistorPencil

_KNOWN_KEYS = ("base", "n", "k", "self", "selfints", "family", "resolution")


class ConfigError(ValueError):
    """A config file could not be parsed or assembled."""


@dataclass(frozen=True)
class ConfigData:
    """Raw parsed contents of a config file."""

    base: str | None = None
    n: int | None = None
    k: int | None = None
    half_self_ints: tuple[int, ...] | None = None
    self_ints: tuple[int, ...] | None = None
    family: PicZeroFamily | None = None
    resolution: tuple[int, ...] | None = None


def _parse_int_list(raw: str, line_no: int) -> tuple[int, ...]:
    raw = raw.strip()
    if not (raw.startswith("[") and raw.endswith("]")):
        raise ConfigError(f"line {line_no}: expected a bracketed list, got {raw!r}")
    inner = raw[1:-1].strip()
    if not inner:
        raise ConfigError(f"line {line_no}: empty list")
    try:
        return tuple(int(part.strip()) for part in inner.split(","))
    except ValueError as exc:
        raise ConfigError(f"line {line_no}: bad integer in list: {exc}") from None


def _parse_fraction(raw: str, line_no: int) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"line {line_no}: bad rational {raw!r}") from None


def _parse_family(raw: str, line_no: int) -> PicZeroFamily:
    words = raw.split()
    if words == ["nonconstant"]:
        return PicZeroFamily.nonconstant()
    if len(words) == 3 and words[:2] == ["const", "unity"]:
        angle = _parse_fraction(words[2], line_no)
        return PicZeroFamily.constant(PicZeroElement(Fraction(1), angle))
    if len(words) == 5 and words[0] == "const" and words[1] == "modulus" and words[3] == "angle":
        modulus = _parse_fraction(words[2], line_no)
        angle = _parse_fraction(words[4], line_no)
        if modulus <= 0:
            raise ConfigError(f"line {line_no}: modulus must be positive")
        return PicZeroFamily.constant(PicZeroElement(modulus, angle))
    raise ConfigError(f"line {line_no}: unrecognized family {raw!r}")


def parse_config(text: str) -> ConfigData:
    """Parse config text, rejecting unknown or duplicate keys by line."""
    seen: dict[str, object] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"line {line_no}: expected 'key = value'")
        key, _, raw = content.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        if key in ("n", "k"):
            try:
                seen[key] = int(raw)
            except ValueError:
                raise ConfigError(f"line {line_no}: {key} must be an integer") from None
        elif key in ("self", "selfints", "resolution"):
            seen[key] = _parse_int_list(raw, line_no)
        elif key == "family":
            seen[key] = _parse_family(raw, line_no)
        else:
            if raw not in ("cycle", "elliptic"):
                raise ConfigError(f"line {line_no}: base must be 'cycle' or 'elliptic'")
            seen[key] = raw
    if "self" in seen and "selfints" in seen:
        raise ConfigError("exactly one of 'self' and 'selfints' may be given")
    if seen.get("base") != "elliptic" and "self" not in seen and "selfints" not in seen:
        raise ConfigError("one of 'self' and 'selfints' is required")
    return ConfigData(
        base=seen.get("base"),  # type: ignore[arg-type]
        n=seen.get("n"),  # type: ignore[arg-type]
        k=seen.get("k"),  # type: ignore[arg-type]
        half_self_ints=seen.get("self"),  # type: ignore[arg-type]
        self_ints=seen.get("selfints"),  # type: ignore[arg-type]
        family=seen.get("family"),  # type: ignore[arg-type]
        resolution=seen.get("resolution"),  # type: ignore[arg-type]
    )


def render_config(data: ConfigData) -> str:
    """Canonical text for a config; ``parse_config`` inverts this exactly."""
    lines = []
    if data.base is not None:
        lines.append(f"base = {data.base}")
    if data.n is not None:
        lines.append(f"n = {data.n}")
    if data.k is not None:
        lines.append(f"k = {data.k}")
    if data.half_self_ints is not None:
        lines.append(f"self = [{', '.join(str(s) for s in data.half_self_ints)}]")
    if data.self_ints is not None:
        lines.append(f"selfints = [{', '.join(str(s) for s in data.self_ints)}]")
    if data.family is not None:
        lines.append(f"family = {render_family(data.family)}")
    if data.resolution is not None:
        lines.append(f"resolution = [{', '.join(str(b) for b in data.resolution)}]")
    return "\n".join(lines) + "\n"


def render_family(family: PicZeroFamily) -> str:
    if not family.is_constant:
        return "nonconstant"
    element = family.element
    assert element is not None
    if element.modulus == 1:
        return f"const unity {element.angle}"
    return f"const modulus {element.modulus} angle {element.angle}"


def build_cycle(data: ConfigData) -> CycleConfig:
    """Assemble the cycle configuration described by the parsed data."""
    if data.base == "elliptic":
        raise ConfigError("an elliptic base carries no cycle configuration")
    if data.half_self_ints is not None:
        if data.k is not None and data.k != len(data.half_self_ints):
            raise ConfigError(
                f"k = {data.k} disagrees with the {len(data.half_self_ints)} "
                "listed self-intersections"
            )
        half = data.half_self_ints
        return CycleConfig(half + half, real_k=len(half), n=data.n)
    if data.self_ints is None:
        raise ConfigError("config carries no cycle")
    if data.k is not None:
        raise ConfigError("k only applies to real configs given via 'self'")
    config = CycleConfig.plain(data.self_ints)
    if data.n is not None:
        config = CycleConfig(config.self_ints, n=data.n)
    return config


def build_pencil(data: ConfigData, *, default_family: bool = False) -> TwistorPencil:
    """Assemble the pencil; ``default_family`` substitutes a nonconstant
    placeholder for subcommands that never consult the family."""
    family = data.family
    if family is None:
        if not default_family:
            raise ConfigError("a 'family' line is required for this operation")
        family = PicZeroFamily.nonconstant()
    if data.base == "elliptic":
        if data.n is None:
            raise ConfigError("an elliptic base requires n")
        if not family.is_constant or family.element is None:
            raise ConfigError("an elliptic base requires a constant family")
        return TwistorPencil(data.n, EllipticBase(family.element), family, None)
    config = build_cycle(data)
    if data.n is None:
        raise ConfigError("a pencil over a cycle requires n")
    return TwistorPencil(data.n, config, family, data.resolution)


def config_to_data(config: CycleConfig) -> ConfigData:
    """The canonical file contents describing a bare cycle configuration."""
    if config.is_real:
        assert config.real_k is not None
        return ConfigData(
            n=config.n,
            k=config.real_k,
            half_self_ints=config.self_ints[: config.real_k],
        )
    return ConfigData(self_ints=config.self_ints)


def random_cycle_walk(rng: random.Random, *, real: bool, blowups: int) -> CycleConfig:
    """Random node blow-ups applied to the all-(-2) four-cycle.

    Every configuration reachable this way is valid and keeps a non-zero
    nef part of degree zero (node blow-ups preserve both).
    """
    config = (
        CycleConfig.real((-2, -2), 4) if real else CycleConfig.plain((-2, -2, -2, -2))
    )
    for _ in range(blowups):
        node = rng.randrange(config.m)
        config = blow_up_node(config, node).config
    return config


def generate_fixtures(seed: int, count: int) -> list[ConfigData]:
    """Deterministic batch of valid configurations for a given seed.

    Each walk blows up at most six nodes; a surgery on a real cycle blows
    up a conjugate node pair, so real walks draw at most three surgeries.
    The resulting cycles have at most ten components, which keeps every
    generated configuration inside the support oracle's domain.
    """
    rng = random.Random(seed)
    batch = []
    for _ in range(count):
        config = random_small_config(rng)
        batch.append(config_to_data(config))
    return batch


def random_small_config(rng: random.Random) -> CycleConfig:
    """One random walk from the all-(-2) four-cycle (at most six nodes blown up)."""
    real = rng.random() < 0.5
    blowups = rng.randint(0, 3) if real else rng.randint(0, 6)
    return random_cycle_walk(rng, real=real, blowups=blowups)
