import hashlib
import json
import logging
from typing import Tuple

from pydantic import ValidationError

from ..core.config import settings
from ..core.exceptions import LatticeError, ParseError
from ..groupring.base_ring import BaseRing
from ..groupring.cyclic import CyclicGroup
from ..lattice.constructors import (
    augmentation_ideal,
    permutation_lattice,
    regular_lattice,
    sign_lattice,
    trivial_lattice,
    zeta_twist,
)
from ..lattice.lattice import GroupLattice
from ..lattice.sampling import random_lattice
from ..schemas.schemas import LatticeDocument

logger = logging.getLogger(__name__)

BUILTINS = ("regular", "trivial", "augmentation", "zeta-twist", "permutation", "random", "sign")


def _seed(seed: int = None) -> int:
    return settings.DEFAULT_SEED if seed is None else seed


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _positive(text: str, spec: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"Expected an integer in builtin '{spec}', got '{text}'")
    if value < 1:
        raise ParseError(f"Expected a positive integer in builtin '{spec}', got {value}")
    return value


def builtin_lattice(spec: str, seed: int = None) -> GroupLattice:
    """Parse name:args, e.g. regular:4, permutation:6:1,2,3 or random:4:5"""
    name, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    base = BaseRing.integers()
    expected = {"permutation": 2, "random": 2}.get(name, 1)
    if name not in BUILTINS:
        raise ParseError(f"Unknown builtin '{name}', expected one of {', '.join(BUILTINS)}")
    if len(args) != expected:
        raise ParseError(f"Builtin '{name}' takes {expected} argument(s), got '{spec}'")
    n = _positive(args[0], spec)
    try:
        if name == "regular":
            return regular_lattice(base, CyclicGroup(n))
        if name == "trivial":
            return trivial_lattice(base, CyclicGroup(n))
        if name == "augmentation":
            return augmentation_ideal(base, CyclicGroup(n))
        if name == "zeta-twist":
            return zeta_twist(n)
        if name == "sign":
            if n != 2:
                raise ParseError(f"The sign lattice lives over C_2, got '{spec}'")
            return sign_lattice()
        if name == "permutation":
            orbits = [_positive(part, spec) for part in args[1].split(",") if part]
            return permutation_lattice(base, CyclicGroup(n), orbits)
        try:
            rank = int(args[1])
        except ValueError:
            raise ParseError(f"Expected an integer rank in builtin '{spec}'")
        return random_lattice(CyclicGroup(n), rank, _seed(seed))
    except ParseError:
        raise
    except LatticeError as e:
        logger.error(f"Builtin '{spec}' is invalid: {e}")
        raise ParseError(f"Builtin '{spec}' is invalid: {e}")


def parse_document(text: str) -> LatticeDocument:
    try:
        return LatticeDocument.parse_obj(json.loads(text))
    except (json.JSONDecodeError, ValidationError, TypeError) as e:
        logger.error(f"Could not parse lattice document: {e}")
        raise ParseError(f"Malformed lattice document: {e}")


def emit_document(m: GroupLattice) -> str:
    return LatticeDocument.from_lattice(m).json(sort_keys=True)


def load_lattice(path: str = None, builtin: str = None, seed: int = None) -> Tuple[GroupLattice, str]:
    """The lattice named on the command line and the digest of its source"""
    if (path is None) == (builtin is None):
        raise ParseError("Give exactly one of a lattice file or --builtin")
    if builtin is not None:
        source = f"{builtin}@{_seed(seed)}" if builtin.startswith("random:") else builtin
        return builtin_lattice(builtin, seed), digest(source)
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        logger.error(f"Could not read {path}: {e}")
        raise ParseError(f"Could not read {path}: {e}")
    document = parse_document(text)
    return document.to_lattice(), digest(document.json(sort_keys=True))
