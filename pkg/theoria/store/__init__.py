"""Populated model: per-situation fact sets, the situation forest, ingestion."""

from theoria.store.fact_store import FactStore, StoreSnapshot, situation_pairs
from theoria.store.ingestion import (
    IngestionMapping,
    ingest_csv,
    ingest_table,
    load_mapping_file,
    parse_mapping_line,
)

__all__ = [
    "FactStore",
    "StoreSnapshot",
    "situation_pairs",
    "IngestionMapping",
    "ingest_table",
    "ingest_csv",
    "load_mapping_file",
    "parse_mapping_line",
]
