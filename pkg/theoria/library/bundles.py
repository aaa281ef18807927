"""
Bundled ontologies shipped inside the package.

    bdi       BDI bridge vocabulary
    auditor   Auditor Decision-Making ontology (imports bdi)
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple

from theoria.dsl import parse_program
from theoria.kernel import Ontology
from theoria.utils.validation import UnknownBundleError

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"

BUNDLES: Dict[str, str] = {
    "bdi": "bdi.onto",
    "auditor": "auditor.onto",
}
IMPORTS: Dict[str, Tuple[str, ...]] = {
    "bdi": (),
    "auditor": ("bdi",),
}


def bundle_names() -> List[str]:
    return sorted(BUNDLES)


def bundle_path(name: str) -> Path:
    """
    Location of a bundle file.

    Raises:
        UnknownBundleError: name is not a shipped bundle
    """
    if name not in BUNDLES:
        raise UnknownBundleError(
            f"unknown bundle '{name}' (available: {', '.join(bundle_names())})"
        )
    return DATA_DIR / BUNDLES[name]


def export_builtin(name: str) -> str:
    """Verbatim text of a bundle, for users to copy and modify."""
    return bundle_path(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_builtin(name: str) -> Ontology:
    """
    Parse and validate a bundle, merged over the bundles it imports.

    Raises:
        UnknownBundleError: name is not a shipped bundle
        ParseError: the bundle text is invalid
    """
    path = bundle_path(name)
    base = Ontology()
    for imported in IMPORTS[name]:
        base = base.merge(load_builtin(imported))
    program = parse_program(export_builtin(name), path=path.name, known=base)
    ontology = program.to_ontology(base)
    logger.debug(
        f"Loaded bundle {name}: {len(ontology.declarations)} declarations, "
        f"{len(ontology.axioms)} axioms, {len(ontology.queries)} queries"
    )
    return ontology
