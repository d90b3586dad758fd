"""Concrete schemes and a lookup by scheme id."""

from __future__ import annotations

from ..sigma import Scheme, SchemeId
from .coloring import ColoringKeyPair, ColoringScheme, ColoringStatement
from .graph_iso import GraphIsoKeyPair, GraphIsoScheme, GraphIsoStatement
from .modexp import ModExpKeyPair, ModExpScheme, ModExpStatement
from .subgraph_iso import (
    SubgraphIsoKeyPair,
    SubgraphIsoScheme,
    SubgraphIsoStatement,
    SubgraphResponse,
    SubgraphWitness,
)

_SCHEMES = {
    SchemeId.GRAPH_ISO: GraphIsoScheme,
    SchemeId.SUBGRAPH_ISO: SubgraphIsoScheme,
    SchemeId.COLORING: ColoringScheme,
    SchemeId.MODEXP: ModExpScheme,
}


def get_scheme(scheme_id: SchemeId | int | str, **options) -> Scheme:
    """Instantiate a scheme by id, numeric tag or CLI name (e.g. ``"graph-iso"``)."""
    if isinstance(scheme_id, str):
        scheme_id = SchemeId.from_cli_name(scheme_id)
    return _SCHEMES[SchemeId(scheme_id)](**options)


def scheme_for(obj) -> SchemeId:
    """Scheme id of a key pair or statement object."""
    for sid, types in _TYPES.items():
        if isinstance(obj, types):
            return sid
    raise TypeError(f"not a key pair or statement: {type(obj).__name__}")


_TYPES = {
    SchemeId.GRAPH_ISO: (GraphIsoKeyPair, GraphIsoStatement),
    SchemeId.SUBGRAPH_ISO: (SubgraphIsoKeyPair, SubgraphIsoStatement),
    SchemeId.COLORING: (ColoringKeyPair, ColoringStatement),
    SchemeId.MODEXP: (ModExpKeyPair, ModExpStatement),
}

__all__ = [
    "ColoringKeyPair",
    "ColoringScheme",
    "ColoringStatement",
    "GraphIsoKeyPair",
    "GraphIsoScheme",
    "GraphIsoStatement",
    "ModExpKeyPair",
    "ModExpScheme",
    "ModExpStatement",
    "SubgraphIsoKeyPair",
    "SubgraphIsoScheme",
    "SubgraphIsoStatement",
    "SubgraphResponse",
    "SubgraphWitness",
    "get_scheme",
    "scheme_for",
]
