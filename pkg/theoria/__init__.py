"""Theoria: a situation-calculus ontology engine.

Terms, fluents and actions are written in the .onto language; axioms are
saturated forward per situation with inertia across do(action, sigma)
transitions, and every derived fact carries a checkable proof tree.

Usage:
    from theoria.library import load_builtin, build_scenario, Scenario
    from theoria.engine import query

    ontology = load_builtin("auditor")
    store = build_scenario(Scenario.of("principles_based", "principles_oriented"))
    answers = query(store, ontology, "holds(enforces_preferred_treatment(A, P), S)")
"""

__version__ = "1.0.0"
