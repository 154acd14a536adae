"""Mean dimension and capacity computations on finite diagonal systems."""

import json

from ._ahmd import (
    Complex,
    Cover,
    Description,
    InvariantViolation,
    OpenSet,
    ValidationError,
    commands,
    goodearl_description,
    join,
    load_description,
    nerve_dimension,
    open_star,
    ord,
    parse_description,
    refinement_dimension,
    refines,
    run_json,
)


def run(command, description, **options):
    """Run one report command and return the report as a dict.

    `description` is a Description or a path to a JSON description.
    Options override the description's config, e.g. level=0, epsilon=0.2.
    """
    if not isinstance(description, Description):
        description = load_description(str(description))
    return json.loads(run_json(command, description, **options))


__all__ = [
    "Complex",
    "Cover",
    "Description",
    "InvariantViolation",
    "OpenSet",
    "ValidationError",
    "commands",
    "goodearl_description",
    "join",
    "load_description",
    "nerve_dimension",
    "open_star",
    "ord",
    "parse_description",
    "refinement_dimension",
    "refines",
    "run",
]
