"""Bundled content: the BDI and auditor ontologies and the scenario harness.

Usage:
    from theoria.library import load_builtin, run_design

    ontology = load_builtin("auditor")
    for row in run_design(ontology):
        print(row.scenario.name, row.enforces_nonopportunistic)
"""

from theoria.library.bundles import (
    BUNDLES,
    bundle_names,
    bundle_path,
    export_builtin,
    load_builtin,
)
from theoria.library.scenarios import (
    AUDITOR_ORIENTATIONS,
    CLIENT_PREFERENCES,
    STANDARD_TYPES,
    DesignRow,
    Scenario,
    audit_action,
    audited_situation,
    build_scenario,
    design_cells,
    enforcement_fact,
    run_design,
    run_design_async,
    scenario_terminology,
)

__all__ = [
    # Bundles
    "BUNDLES",
    "bundle_names",
    "bundle_path",
    "export_builtin",
    "load_builtin",

    # Scenarios
    "STANDARD_TYPES",
    "AUDITOR_ORIENTATIONS",
    "CLIENT_PREFERENCES",
    "Scenario",
    "DesignRow",
    "audit_action",
    "audited_situation",
    "build_scenario",
    "design_cells",
    "enforcement_fact",
    "run_design",
    "run_design_async",
    "scenario_terminology",
]
