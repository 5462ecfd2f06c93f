"""KGB obstruction: closed-form predicates and the witness search."""

from src.kgb.models import KgbRow, KgbVerdict, SearchBounds, kgb_table
from src.kgb.predicates import check_zpzp_jumps, kgb_metacyclic, kgb_zpzp
from src.kgb.search import WitnessSearch, kgb_search_verdict, kgb_witness_search

__all__ = [
    "KgbRow",
    "KgbVerdict",
    "SearchBounds",
    "kgb_table",
    "check_zpzp_jumps",
    "kgb_zpzp",
    "kgb_metacyclic",
    "WitnessSearch",
    "kgb_witness_search",
    "kgb_search_verdict",
]
