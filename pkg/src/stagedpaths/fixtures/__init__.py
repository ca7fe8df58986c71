"""Bundled example graphs with their distinguished paths and families."""

from importlib import resources

from .. import dsl

FIXTURE_NAMES = ("ladder2", "alt23", "fork", "loop1", "exp2")


def fixture_text(name):
    return resources.files(__package__).joinpath(f"{name}.ggd").read_text()


def load(name):
    """Parse a bundled fixture into a Document."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return dsl.parse_document(fixture_text(name))


def ladderk_text(k):
    """The k-rung ladder: like ladder2 but with k parallel within edges."""
    if k < 1:
        raise ValueError("ladderk needs k >= 1")
    rungs = "\n".join(
        f"      edge f{i} range v source w;" for i in range(1, k + 1))
    return (
        f"graph ladder{k} {{\n"
        "  repeat {\n"
        "    block A {\n"
        "      vertex v, w;\n"
        f"{rungs}\n"
        "      ray t attach w;\n"
        "    }\n"
        "  }\n"
        "  cross A -> A {\n"
        "    edge spine range v source v;\n"
        "  }\n"
        "}\n"
        "path z { prefix ; tail descent [spine] from stage 1 ; }\n"
        "family xs { descend z to n ; pivot f1 ; tail ray t at stage n ; min 1 ; }\n"
    )


def ladderk(k):
    return dsl.parse_document(ladderk_text(k))
