import json
import os
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from errors import InvalidPoset
from finite_oracle import FinitePoset

POSET_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "posets")  # Built-in poset files


class PosetFile(BaseModel):
    """On-disk form of a finite poset.

    ``leq`` lists generating pairs ``[a, b]`` meaning ``a ≤ b``; reflexive
    pairs are optional and the transitive closure is computed on load.
    """
    name: Optional[str] = None
    elements: List[str] = Field(min_length=1)
    leq: List[Tuple[str, str]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _known_labels(self) -> 'PosetFile':
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element labels must be distinct")
        known = set(self.elements)
        for a, b in self.leq:
            if a not in known or b not in known:
                raise ValueError(f"pair [{a}, {b}] mentions an unknown element")
        return self

    def to_poset(self, default_name: str = "") -> FinitePoset:
        return FinitePoset.from_pairs(self.elements, self.leq, name=self.name or default_name)


def resolve_poset_path(path: str) -> str:
    """Accept a file path, or the name of a file in ``posets/``.

    A path that does not exist falls back to the built-in file with the same
    base name, so ``somewhere/pP.json`` and ``pP`` both find ``posets/pP.json``.
    """
    if os.path.exists(path):
        return path
    name = os.path.basename(path)
    for candidate in (os.path.join(POSET_FOLDER, name), os.path.join(POSET_FOLDER, f"{name}.json")):
        if os.path.isfile(candidate):
            return candidate
    raise InvalidPoset(f"No poset file at {path!r}")


def load_poset(path: str) -> FinitePoset:
    """Load and validate a finite poset from JSON.

    Args:
        path: a JSON file, or the name of a built-in poset (e.g. ``"pP"``)

    Returns:
        FinitePoset: the closure of the listed pairs, validated as a partial order

    Raises:
        InvalidPoset: if the file is missing, malformed, or not a partial order

    Example:
        >>> load_poset("pP").labels
        ('bot', '0', '1')
    """
    resolved = resolve_poset_path(path)
    try:
        with open(resolved, "r", encoding="utf-8") as f:
            data = json.load(f)
        spec = PosetFile.model_validate(data)
    except (json.JSONDecodeError, OSError) as e:
        raise InvalidPoset(f"Cannot read {resolved}: {e}") from e
    except ValidationError as e:
        raise InvalidPoset(f"Invalid poset file {resolved}: {e}") from e
    default_name = os.path.splitext(os.path.basename(resolved))[0]
    return spec.to_poset(default_name)


def save_poset(poset: FinitePoset, path: str) -> None:
    """Write ``poset`` in the same JSON format ``load_poset`` reads."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(poset.to_dict(), f, indent=2, ensure_ascii=False)


def builtin_posets() -> Dict[str, str]:
    """Names and paths of the poset files shipped in ``posets/``."""
    if not os.path.isdir(POSET_FOLDER):
        return {}
    return {os.path.splitext(name)[0]: os.path.join(POSET_FOLDER, name)
            for name in sorted(os.listdir(POSET_FOLDER)) if name.endswith(".json")}
