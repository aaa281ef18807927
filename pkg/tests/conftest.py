"""Pytest configuration and fixtures."""

import pytest
from pathlib import Path
import tempfile
import shutil

from theoria.core import TheoriaConfig
from theoria.dsl import parse_program
from theoria.library import Scenario, build_scenario, load_builtin

AUDITED = "do__audits_auditor1_client1__sc"

TOY_PROGRAM = """
decl parent/2.
decl ancestor/2.
decl person/1 kind rigid.
decl moves/1 kind action.
decl home/2.

axiom base_case: forall X, Y, S:
    holds(parent(X, Y), S) -> holds(ancestor(X, Y), S).

axiom step: forall X, Y, Z, S:
    holds(parent(X, Y), S) & holds(ancestor(Y, Z), S) -> holds(ancestor(X, Z), S).
"""


@pytest.fixture
def temp_data_dir():
    """Create temporary data directory."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture
def test_config():
    """Create test configuration."""
    config = TheoriaConfig()
    config.debug_mode = True
    config.log_level = "DEBUG"
    config.output.color = False
    return config


@pytest.fixture(scope="session")
def auditor_ontology():
    """Auditor bundle merged over the BDI vocabulary."""
    return load_builtin("auditor")


@pytest.fixture(scope="session")
def bdi_ontology():
    return load_builtin("bdi")


@pytest.fixture
def h1b_store(auditor_ontology):
    """Principles-based standard, principles-oriented auditor, opportunistic client."""
    return build_scenario(Scenario.of("principles_based", "principles_oriented"), auditor_ontology)


@pytest.fixture
def rules_based_store(auditor_ontology):
    return build_scenario(Scenario.of("rules_based", "principles_oriented"), auditor_ontology)


@pytest.fixture
def toy_ontology():
    """Transitive closure over parent/2, plus a rigid and an action predicate."""
    return parse_program(TOY_PROGRAM, path="toy.onto").to_ontology()


@pytest.fixture
def auditor_files(temp_data_dir):
    """The two bundles exported to disk, as a user would edit them."""
    from theoria.library import export_builtin

    paths = {}
    for name in ("auditor", "bdi"):
        path = temp_data_dir / f"{name}.onto"
        path.write_text(export_builtin(name), encoding="utf-8")
        paths[name] = path
    return paths
