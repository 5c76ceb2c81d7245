import os
from typing import Tuple
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _int_tuple(raw: str) -> Tuple[int, ...]:
    return tuple(sorted({int(part) for part in raw.split(",") if part.strip()}))


def _flag(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


# Cyclotomic indices d for which Z[zeta_d] has class number one
DEFAULT_STEINITZ_ALLOWLIST = (
    "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,"
    "24,25,26,27,28,30,32,33,34,35,36,38,40,42,44,45,48,50,54,60,66,70,84,90"
)


class Settings:
    """
    Library and command-line configuration
    """
    # Project details
    PROJECT_NAME: str = "Cyclic Group Lattices"

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    # Class-number-one allowlist used for Steinitz data
    STEINITZ_ALLOWLIST: Tuple[int, ...] = _int_tuple(
        os.getenv("STEINITZ_ALLOWLIST", DEFAULT_STEINITZ_ALLOWLIST)
    )

    # Seed for the random builtin generator
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", 0))

    # Permutation cover used by flabby resolutions: fixed_basis | greedy
    RESOLUTION_COVER: str = os.getenv("RESOLUTION_COVER", "fixed_basis")

    # Cross-check H^1 against the periodic resolution
    CROSS_CHECK_COHOMOLOGY: bool = _flag(os.getenv("CROSS_CHECK_COHOMOLOGY", "true"))

    # Largest odd prime accepted by the non-invertibility example
    MAX_EXAMPLE_PRIME: int = int(os.getenv("MAX_EXAMPLE_PRIME", 7))

    # Lattice document format
    DOCUMENT_FORMAT_VERSION: int = 1


# Create a singleton settings object
settings = Settings()
