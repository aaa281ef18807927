"""
Tabular ingestion: relational rows become populated predicates.

Mapping file format, one table per line ('#' or '%' start a comment):

    table:predicate:col1,col2[:sitcol]

Each row yields one ground holds fact, asserted in the row's situation
(sitcol when given, else the mapping's default situation).
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from theoria.kernel import Atom, Constant, Holds, PredicateKind
from theoria.store.fact_store import FactStore
from theoria.utils.validation import (
    IngestionError,
    ValidationError,
    is_constant_symbol,
    normalize_cell,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestionMapping:
    table: str
    predicate: str
    columns: Tuple[str, ...]
    situation_column: Optional[str] = None
    default_situation: str = "sigma0"


def _cell_constant(raw: str, row: int, column: str) -> Constant:
    symbol = normalize_cell(raw)
    if not is_constant_symbol(symbol):
        raise IngestionError(
            f"cell '{raw}' does not normalize to a constant (got '{symbol}')", row, column
        )
    return Constant(symbol)


def ingest_table(
    store: FactStore,
    rows: Iterable[Sequence[str]],
    mapping: IngestionMapping,
) -> int:
    """
    Assert one holds fact per data row.

    Args:
        store: target store
        rows: header row followed by data rows (csv.reader shape)
        mapping: column -> argument mapping

    Returns:
        Number of distinct facts the table contributes (duplicate rows collapse)

    Raises:
        IngestionError: missing column, bad cell, unknown situation
        ValidationError: predicate undeclared, wrong arity or not a fluent
    """
    decl = store.ontology.declaration(mapping.predicate)
    if decl is None:
        raise ValidationError(f"undeclared predicate {mapping.predicate}")
    if decl.kind == PredicateKind.ACTION:
        raise ValidationError(f"action {mapping.predicate} cannot be ingested as a holds fact")
    if len(mapping.columns) != decl.arity:
        raise ValidationError(
            f"mapping for {mapping.predicate} lists {len(mapping.columns)} columns, "
            f"predicate arity is {decl.arity}"
        )

    iterator = iter(rows)
    header = next(iterator, None)
    if header is None:
        return 0
    header = [h.strip() for h in header]
    index: Dict[str, int] = {name: i for i, name in enumerate(header)}
    wanted = list(mapping.columns)
    if mapping.situation_column:
        wanted.append(mapping.situation_column)
    for column in wanted:
        if column not in index:
            raise IngestionError(f"missing column '{column}' in table {mapping.table}", 0, column)

    # Validate every row before asserting anything.
    staged: List[Tuple[Holds, str]] = []
    for row_number, row in enumerate(iterator, start=1):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise IngestionError(
                f"expected {len(header)} cells, found {len(row)}", row_number
            )
        args = tuple(
            _cell_constant(row[index[col]], row_number, col) for col in mapping.columns
        )
        situation = mapping.default_situation
        if mapping.situation_column:
            raw = row[index[mapping.situation_column]].strip()
            if not store.has_situation(raw):
                raise IngestionError(
                    f"unknown situation '{raw}'", row_number, mapping.situation_column
                )
            situation = raw
        staged.append((Holds(Atom(mapping.predicate, args), Constant(situation)), situation))

    if not mapping.situation_column or any(s == mapping.default_situation for _, s in staged):
        store.add_situation(mapping.default_situation)

    distinct: Set[Tuple[Holds, str]] = set(staged)
    if len(distinct) < len(staged):
        logger.warning(
            f"Table {mapping.table}: {len(staged) - len(distinct)} duplicate rows collapsed"
        )
    for literal, situation in sorted(distinct, key=lambda p: (p[1], str(p[0]))):
        store.assert_fact(literal, situation)

    logger.info(f"Ingested {len(distinct)} {mapping.predicate} facts from table {mapping.table}")
    return len(distinct)


def ingest_csv(store: FactStore, path: Path, mapping: IngestionMapping, encoding: str = "utf-8") -> int:
    """Read a CSV file (first row is the header) and ingest it."""
    with open(path, newline="", encoding=encoding) as f:
        return ingest_table(store, list(csv.reader(f)), mapping)


def parse_mapping_line(line: str, default_situation: str = "sigma0") -> IngestionMapping:
    """
    Parse 'table:predicate:col1,col2[:sitcol]'.

    Raises:
        ValidationError: wrong number of fields or empty column list
    """
    parts = [p.strip() for p in line.strip().split(":")]
    if len(parts) not in (3, 4) or not all(parts):
        raise ValidationError(
            f"mapping line '{line.strip()}' must look like table:predicate:col1,col2[:sitcol]"
        )
    columns = tuple(c.strip() for c in parts[2].split(","))
    if not all(columns):
        raise ValidationError(f"mapping line '{line.strip()}' has an empty column name")
    return IngestionMapping(
        table=parts[0],
        predicate=parts[1],
        columns=columns,
        situation_column=parts[3] if len(parts) == 4 else None,
        default_situation=default_situation,
    )


def load_mapping_file(path: Path, default_situation: str = "sigma0") -> Dict[str, IngestionMapping]:
    """Mappings keyed by table name."""
    mappings: Dict[str, IngestionMapping] = {}
    with open(path, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] in "#%":
                continue
            try:
                mapping = parse_mapping_line(stripped, default_situation)
            except ValidationError as e:
                raise ValidationError(f"{path}:{number}: {e}") from e
            mappings[mapping.table] = mapping
    return mappings
