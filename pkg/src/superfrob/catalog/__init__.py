from .conjecture import check_conjecture_instances, closed_form_verdict
from .entries import CatalogEntry, get_entry, instantiate, load_catalog
from .examples import verify_examples
from .filiform import check_family, family_cases, filiform_form, make_filiform
from .verify import verify_catalog, verify_entry

__all__ = [
    "check_conjecture_instances", "closed_form_verdict", "CatalogEntry", "get_entry", "instantiate",
    "load_catalog", "verify_examples", "check_family", "family_cases", "filiform_form", "make_filiform",
    "verify_catalog", "verify_entry",
]
