import sys
import warnings
from pathlib import Path

warnings.filterwarnings("ignore", message=".*httpx.*")

GOLDEN = Path(__file__).parent / "golden"


def golden_path(name: str) -> Path:
    return GOLDEN / name
