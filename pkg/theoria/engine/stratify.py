"""
Stratification over negation.

Predicates are layered so that whenever p depends negatively on q,
stratum(p) > stratum(q). The least such layering is returned; a negative
edge inside a strongly connected component makes the program
unstratifiable.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Set, Tuple

from theoria.kernel import Holds, Occurs
from theoria.utils.validation import StratificationError

logger = logging.getLogger(__name__)

Edge = Tuple[str, str, bool]  # (head predicate, body predicate, negative)


def dependency_edges(rules: Iterable) -> List[Edge]:
    edges: List[Edge] = []
    for rule in rules:
        head = rule.head.predicate
        for literal in rule.body:
            if isinstance(literal, (Holds, Occurs)):
                edges.append((head, literal.predicate, literal.negated))
    return edges


def strongly_connected_components(nodes: Iterable[str], edges: Iterable[Edge]) -> Dict[str, int]:
    """Tarjan's algorithm, iterative; returns node -> component number."""
    graph: Dict[str, List[str]] = defaultdict(list)
    for head, body, _ in edges:
        graph[head].append(body)

    index: Dict[str, int] = {}
    lowlink: Dict[str, int] = {}
    on_stack: Set[str] = set()
    stack: List[str] = []
    component: Dict[str, int] = {}
    counter = 0
    components = 0

    for root in sorted(set(nodes)):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_pos = work.pop()
            if child_pos == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            children = graph[node]
            recurse = False
            while child_pos < len(children):
                child = children[child_pos]
                child_pos += 1
                if child not in index:
                    work.append((node, child_pos))
                    work.append((child, 0))
                    recurse = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if recurse:
                continue
            if lowlink[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component[member] = components
                    if member == node:
                        break
                components += 1
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
    return component


def predicate_strata(rules: Iterable) -> Dict[str, int]:
    """
    Least stratum number for every predicate mentioned by the rules.

    Raises:
        StratificationError: naming the predicates of a negative cycle
    """
    rules = list(rules)
    edges = dependency_edges(rules)
    nodes = {r.head.predicate for r in rules} | {b for _, b, _ in edges}
    component = strongly_connected_components(nodes, edges)

    for head, body, negative in edges:
        if negative and component[head] == component[body]:
            cycle = [p for p in nodes if component[p] == component[head]]
            raise StratificationError(cycle)

    strata = {p: 0 for p in nodes}
    changed = True
    while changed:
        changed = False
        for head, body, negative in edges:
            needed = strata[body] + (1 if negative else 0)
            if strata[head] < needed:
                strata[head] = needed
                changed = True
    return strata


def stratify(rules: Iterable) -> List[List]:
    """
    Partition rules into ordered strata by head-predicate stratum.

    Returns:
        List of strata (lowest first), each a list of rules in input order;
        empty strata are dropped
    """
    rules = list(rules)
    if not rules:
        return []
    strata = predicate_strata(rules)
    top = max(strata[r.head.predicate] for r in rules)
    layers: List[List] = [[] for _ in range(top + 1)]
    for rule in rules:
        layers[strata[rule.head.predicate]].append(rule)
    result = [layer for layer in layers if layer]
    logger.debug(f"Stratified {len(rules)} rules into {len(result)} strata")
    return result
